"""The three verifier machines, their sanitizers, and instance encodings."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .tm import (ACCEPT, BLANK, CIRCLED, DIGITS, REJECT, TRUTH, MachineSpec,
                 StateId, Transition, circled, circled_value, is_circled,
                 is_digit, tokenize)

KINDS = ("sat-id", "sat-fixed", "subset-sum")

R, L = +1, -1

# Rows are (state, read, next, write, move) in the order of the source tables.
SAT_ID_ROWS = [
    ("Check", "_", "Check", "_", R),
    ("Check", "-", "Not", "-", R),
    ("Check", "D", "Inc.D", "?", R),
    ("Not", "D", "Inc.D", "!", R),
    ("Skip", "&", "Check", "_", R),
    ("Skip", "#", ACCEPT, "_", R),
    ("Skip", "*", "Skip", "_", R),
    ("Check", "&", REJECT, "_", R),
    ("Check", "#", REJECT, "_", R),
    ("Inc.N", "_", "Forward.N", "_", R),
    ("Inc.N", "&", "Forward.N", "&", R),
    ("Inc.N", "#", "Dec.(N-1)", "#", R),
    ("Inc.N", "D", "Inc.(10N+D)", "_", R),
    ("Forward.N", "*", "Forward.N", "*", R),
    ("Forward.N", "#", "Dec.(N-1)", "#", R),
    ("Dec.N", "T", "Dec.(N-1)", "T", R),
    ("Dec.N", "F", "Dec.(N-1)", "F", R),
    ("Dec.0", "T", "Backward.T", "T", L),
    ("Dec.0", "F", "Backward.F", "F", L),
    ("Backward.T", "*", "Backward.T", "*", L),
    ("Backward.F", "*", "Backward.F", "*", L),
    ("Backward.T", "?", "Skip", "_", R),
    ("Backward.F", "?", "Check", "_", R),
    ("Backward.T", "!", "Check", "_", R),
    ("Backward.F", "!", "Skip", "_", R),
]

SAT_FIXED_ROWS = [
    ("Check.S", "_", "Check.S", "_", R),
    ("Check.S", "-", "CheckNot.S", "-", R),
    ("Check.S", "0", "Unknown.S", "_", R),
    ("Check.S", "D", "UnknownTerm.S", "D", R),
    ("Check.S", "T", "Skip.S", "T", R),
    ("Check.S", "F", "Check.S", "F", R),
    ("Check.S", "&", REJECT, "_", R),
    ("Check.S", "#", REJECT, "_", R),
    ("CheckNot.S", "_", "CheckNot.S", "_", R),
    ("CheckNot.S", "T", "Check.S", "T", R),
    ("CheckNot.S", "F", "Skip.S", "F", R),
    ("CheckNot.S", "D", "UnknownTerm.S", "D", R),
    ("CheckNot.S", "0", "Unknown.S", "_", R),
    ("Unknown.S", "_", "Unknown.S", "_", R),
    ("Unknown.S", "0", "Unknown.S", "_", R),
    ("Unknown.S", "D", "UnknownTerm.S", "D", R),
    ("Unknown.S", "T", "Skip.S", "T", R),
    ("Unknown.S", "F", "Unknown.S", "F", R),
    ("Unknown.S", "-", "UnknownNot.S", "-", R),
    ("Unknown.S", "&", "Check.Free", "&", R),
    ("Unknown.S", "#", "Fetch", "#", R),
    ("UnknownNot.S", "_", "UnknownNot.S", "_", R),
    ("UnknownNot.S", "T", "Unknown.S", "T", R),
    ("UnknownNot.S", "F", "Skip.S", "F", R),
    ("UnknownNot.S", "D", "UnknownTerm.S", "D", R),
    ("UnknownNot.S", "0", "Unknown.S", "_", R),
    ("UnknownTerm.S", "D", "UnknownTerm.S", "D", R),
    ("UnknownTerm.S", "_", "Unknown.S", "_", R),
    ("UnknownTerm.S", "&", "Check.Free", "&", R),
    ("UnknownTerm.S", "#", "Fetch", "#", R),
    ("Skip.S", "*", "Skip.S", "_", R),
    ("Skip.Free", "&", "Check.Free", "&", R),
    ("Skip.Free", "#", "Fetch", "#", R),
    ("Skip.Forwarded", "&", "Check.Forwarded", "&", R),
    ("Skip.Forwarded", "#", ACCEPT, "#", R),
    ("Fetch", "_", "Fetch", "_", R),
    ("Fetch", "T", "Backward.B", "_", L),
    ("Fetch", "F", "Backward.B", "_", L),
    ("Backward.B", "*", "Backward.B", "*", L),
    ("Backward.B", "1", "BackwardFrom1.B", "0", L),
    ("Backward.B", "0", "Borrow.B", "9", L),
    ("Backward.B", "D", "BackwardInTerm.B", "D-1", L),
    ("Backward.B", BLANK, "Check.Forwarded", BLANK, R),
    ("Borrow.B", "0", "Borrow.B", "9", L),
    ("Borrow.B", "D", "BackwardInTerm.B", "D-1", L),
    ("BackwardInTerm.B", "D", "BackwardInTerm.B", "D", L),
    ("BackwardInTerm.B", "_", "Backward.B", "_", L),
    ("BackwardInTerm.B", "&", "Backward.B", "&", L),
    ("BackwardInTerm.B", "-", "Backward.B", "-", L),
    ("BackwardInTerm.B", BLANK, "Check.Forwarded", BLANK, R),
    ("BackwardFrom1.B", "D", "BackwardInTerm.B", "D", L),
    ("BackwardFrom1.B", "_", "Assign.B", "_", R),
    ("BackwardFrom1.B", "-", "Assign.B", "-", R),
    ("BackwardFrom1.B", "&", "Assign.B", "&", R),
    ("BackwardFrom1.B", BLANK, "Assign.B", BLANK, R),
    ("Assign.B", "0", "Backward.B", "B", L),
]

SUBSET_SUM_ROWS = [
    ("Forward", "#", "FindDigitToMatch", "#", R),
    ("Forward", "*", "Forward", "*", R),
    ("FindDigitToMatch", "~", "FindDigitToMatch", "~", R),
    ("FindDigitToMatch", "M", "BackwardToMatch.M", "~", L),
    ("FindDigitToMatch", "(D)", "FindDigitToMatch", "(D)", R),
    ("FindDigitToMatch", "_", "BackwardToCheckMatch", "~", L),
    ("FindDigitToMatch", ";", "BackwardToCheckSum", ";", L),
    ("BackwardToMatch.M", "D", "BackwardToMatch.M", "D", L),
    ("BackwardToMatch.M", "|", "BackwardToMatch.M", "|", L),
    ("BackwardToMatch.M", "_", "MatchPosition.M", "|", R),
    ("BackwardToMatch.M", "~", "BackwardToMatch.M", "~", L),
    ("BackwardToMatch.M", "#", "BackwardToMatch.M", "#", L),
    ("BackwardToMatch.M", "(D)", "MatchPosition.M", "D", R),
    ("MatchPosition.M", "|", "BackwardToMatch.M", "|", L),
    ("MatchPosition.M", "~", "BackwardToMatch.M", "~", L),
    ("MatchPosition.M", "M", "BackwardToMatch.M", "(M)", L),
    ("MatchPosition.M", "D", "BackwardToMatch.M", "D", L),
    ("BackwardToMatch.M", "@", "CheckForward", "@", L),
    ("CheckForward", "(D)", "Forward", "(D)", R),
    ("CheckForward", "*", "CheckForward", "*", R),
    ("CheckForward", "#", REJECT, "_", L),
    ("BackwardToCheckMatch", "#", "MatchedDigits", "#", L),
    ("BackwardToCheckMatch", "|", "MatchedDigits", "_", L),
    ("BackwardToCheckMatch", "(D)", "BackwardToCheckMatch", "D", L),
    ("BackwardToCheckMatch", "*", "BackwardToCheckMatch", "*", L),
    ("BackwardToCheckMatch", "@", REJECT, "_", L),
    ("MatchedDigits", "(M)", "BackwardToSubtract.M", "$", L),
    ("MatchedDigits", "D", "BackwardToCheckMatch", "D", L),
    ("MatchedDigits", "~", "BackwardToCheckMatch", "~", L),
    ("BackwardToSubtract.M", "@", "SumArea.M", "@", L),
    ("BackwardToSubtract.M", "*", "BackwardToSubtract.M", "*", L),
    ("SumArea.M", "D", "SumArea.M", "D", L),
    ("SumArea.M", "|", "SumArea.M", "|", L),
    ("SumArea.M", "_", "Subtract.M", "|", L),
    ("SumArea.M", "(D)", "Subtract.M", "D", L),
    ("Subtract.M", "D", "Borrow.B", "(D)-(M)", L),
    ("Borrow.0", "*", "Forward", "*", R),
    ("Borrow.1", "0", "Borrow.1", "9", L),
    ("Borrow.1", "D", "Forward", "D-1", R),
    ("Borrow.1", BLANK, REJECT, "_", L),
    ("BackwardToCheckSum", "@", "CheckSum", "@", L),
    ("BackwardToCheckSum", "(D)", REJECT, "(D)", L),
    ("BackwardToCheckSum", "*", "BackwardToCheckSum", "*", L),
    ("CheckSum", "_", "CheckSum", "_", L),
    ("CheckSum", "0", "CheckSum", "0", L),
    ("CheckSum", BLANK, ACCEPT, "_", L),
    ("CheckSum", "*", REJECT, "_", L),
]

# Rows the printed table lacks. Without them an element is never matched
# twice and only the last digit of a matched element is ever subtracted.
SUBSET_SUM_EXTRA_ROWS = [
    # after one digit is subtracted, step to the next more significant one
    ("Forward", "$", "NextDigitToSubtract", "~", L),
    ("NextDigitToSubtract", "M", "BackwardToSubtract.M", "$", L),
    ("NextDigitToSubtract", "|", "RestoreMarks", "_", L),
    ("NextDigitToSubtract", "_", "RestoreMarks", "_", L),
    # element used up: clear the bookkeeping in the sum area
    ("RestoreMarks", "@", "RestoreSum", "@", L),
    ("RestoreMarks", "*", "RestoreMarks", "*", L),
    ("RestoreSum", "(D)", "RestoreSum", "D", L),
    ("RestoreSum", "|", "RestoreSum", "_", L),
    ("RestoreSum", BLANK, "Forward", BLANK, R),
    ("RestoreSum", "*", "RestoreSum", "*", L),
    # stale candidate marks left of the matched element
    ("BackwardToSubtract.M", "(D)", "BackwardToSubtract.M", "D", L),
    ("BackwardToSubtract.M", "|", "BackwardToSubtract.M", "_", L),
    # a fully matched last element, and the optional "_" before "#"
    ("MatchPosition.M", "#", "BackwardToMatch.M", "#", L),
    ("MatchedDigits", "|", "MatchedDigits", "_", L),
    ("MatchedDigits", "_", "MatchedDigits", "_", L),
]


def sat_sanitizer_rows(entry: str) -> list:
    return [
        ("InputCheck", "#", "CertificateCheck", "#", R),
        ("InputCheck", "*", "InputCheck", "*", R),
        ("CertificateCheck", "T", "CertificateCheck", "T", R),
        ("CertificateCheck", "F", "CertificateCheck", "F", R),
        ("CertificateCheck", BLANK, "BackToBeginning", BLANK, L),
        ("CertificateCheck", "*", REJECT, "_", R),
        ("BackToBeginning", "*", "BackToBeginning", "*", L),
        ("BackToBeginning", BLANK, entry, BLANK, R),
    ]


SUBSET_SUM_SANITIZER_ROWS = [
    ("InputCheck", "#", "CertificateCheck", "#", R),
    ("InputCheck", "*", "InputCheck", "*", R),
    ("CertificateCheck", "D", "CertificateCheck", "D", R),
    ("CertificateCheck", "_", "CertificateCheck", "_", R),
    ("CertificateCheck", ";", "BackToBeginning", ";", L),
    ("CertificateCheck", "*", REJECT, "_", R),
    ("BackToBeginning", "*", "BackToBeginning", "*", L),
    ("BackToBeginning", BLANK, "Forward", BLANK, R),
]

SANITIZER_STATES = frozenset({"InputCheck", "CertificateCheck", "BackToBeginning"})


def _table(rows) -> dict:
    table = {}
    for state, read, nxt, write, move in rows:
        key = (state, read)
        if key in table:
            raise ValueError(f"duplicate rule for {key}")
        table[key] = (nxt, write, move)
    return table


# -- resolvers ---------------------------------------------------------------

_SAT_ID_FIXED = frozenset({"Check", "Not", "Skip", "Backward.T", "Backward.F",
                           ACCEPT, REJECT}) | SANITIZER_STATES
_SAT_ID_FAMILIES = frozenset({"Inc", "Forward", "Dec"})


def _sat_id_valid(spec: MachineSpec, state: str) -> bool:
    if state in _SAT_ID_FIXED:
        return True
    sid = StateId.parse(state)
    if sid.base in _SAT_ID_FAMILIES and sid.param is not None:
        try:
            n = int(sid.param)
        except ValueError:
            return False
        return 0 <= n <= spec.bound
    return False


def resolve_sat_id(spec: MachineSpec, state: str, sym: str) -> Transition:
    rules = spec.rules
    sid = StateId.parse(state)
    alt = sid.base + ".N" if sid.param is not None else None
    classes = [sym, "D", "*"] if is_digit(sym) else [sym, "*"]
    for s in classes:
        for st in (state, alt):
            if st is None or (st, s) not in rules:
                continue
            nxt, write, move = rules[(st, s)]
            base, _, tmpl = nxt.partition(".")
            if tmpl == "D":
                nxt = f"{base}.{sym}"
            elif st == alt:
                n = int(sid.param)
                if tmpl == "N":
                    nxt = f"{base}.{n}"
                elif tmpl == "(N-1)":
                    nxt = f"{base}.{n - 1}"
                elif tmpl == "(10N+D)":
                    nxt = f"{base}.{10 * n + int(sym)}"
            if write == "*":
                write = sym
            if not _sat_id_valid(spec, nxt):
                return Transition(REJECT, "_", +1)
            return Transition(nxt, write, move)
    return Transition(REJECT, "_", -1)


def resolve_sat_fixed(spec: MachineSpec, state: str, sym: str) -> Transition:
    rules = spec.rules
    sid = StateId.parse(state)
    sub = sid.param
    alt = None
    if sub is not None:
        if is_digit(sub):
            alt = sid.base + ".D"
        elif sub in TRUTH:
            alt = sid.base + ".B"
        else:
            alt = sid.base + ".S"
    classes = [sym]
    if is_digit(sym):
        classes.append("D")
    elif sym in TRUTH:
        classes.append("B")
    classes.append("*")
    for s in classes:
        for st in (state, alt):
            if st is None or (st, s) not in rules:
                continue
            nxt, write, move = rules[(st, s)]
            base, _, tmpl = nxt.partition(".")
            if st == alt:
                # the state's own parameter carries over to .S and .B successors
                if tmpl in ("S", "B"):
                    nxt = f"{base}.{sub}"
                if write == "B" and sub in TRUTH:
                    write = sub
            elif tmpl == "B" and sym in TRUTH:
                # Fetch: the certificate symbol just read becomes the parameter
                nxt = f"{base}.{sym}"
            if write == "D":
                write = sym
            elif write == "D-1":
                write = str(int(sym) - 1)
            elif write == "*":
                write = sym
            return Transition(nxt, write, move)
    return Transition(REJECT, "_", -1)


def resolve_subset_sum(spec: MachineSpec, state: str, sym: str) -> Transition:
    rules = spec.rules
    sid = StateId.parse(state)
    addr = sid.param
    alt = sid.base + ".M" if addr is not None and is_digit(addr) else None
    if is_digit(sym):
        classes = [sym, "M", "D", "*"]
    elif is_circled(sym):
        classes = [sym, "(M)", "(D)", "*"]
    else:
        classes = [sym, "*"]
    for s in classes:
        for st in (state, alt):
            if st is None or (st, s) not in rules:
                continue
            if st == alt and s in ("M", "(M)"):
                # M only matches the digit the state is carrying
                value = int(sym) if s == "M" else circled_value(sym)
                if value != int(addr):
                    continue
            nxt, write, move = rules[(st, s)]
            m = int(addr) if st == alt else None
            d = None
            if s == "M":
                m = int(sym)
            elif s == "(M)":
                m = circled_value(sym)
            elif s == "D":
                d = int(sym)
            elif s == "(D)":
                d = circled_value(sym)
            base, _, tmpl = nxt.partition(".")
            if tmpl == "M" and m is not None:
                nxt = f"{base}.{m}"
            if write == "(D)-(M)":
                diff = d - m
                write = circled(diff % 10)
                if tmpl == "B":
                    nxt = f"{base}.{1 if diff < 0 else 0}"
            elif write == "(M)":
                write = circled(m)
            elif write == "(D)":
                write = circled(d)
            elif write == "D":
                write = str(d)
            elif write == "D-1":
                write = str(d - 1)
            elif write == "*":
                write = sym
            return Transition(nxt, write, move)
    return Transition(REJECT, "_", -1)


# -- instances and certificates ----------------------------------------------

@dataclass(frozen=True)
class ProblemInstance:
    kind: str  # "sat" or "subset-sum"
    clauses: tuple = ()
    k: int = 0
    target: int = 0
    elements: tuple = ()

    @property
    def problem(self) -> str:
        return self.kind


@dataclass(frozen=True)
class CertificateSchema:
    kind: str
    region_start: int
    max_length: int
    terminator: str | None = None

    def allowed(self, pos: int, prefix=()) -> frozenset:
        return certificate_alphabet(self, pos, prefix)

    def in_region(self, index: int) -> bool:
        return self.region_start <= index < self.region_start + self.max_length


@dataclass
class EncodedTape:
    tokens: list
    instance_len: int
    cert_len: int = 0

    def text(self) -> str:
        return "".join(t for t in self.tokens)


_TF = frozenset(TRUTH)
_DIGITS_ONLY = frozenset(DIGITS)


def certificate_alphabet(schema: CertificateSchema, pos: int, prefix=()) -> frozenset:
    """Symbols allowed at certificate position ``pos``.

    ``prefix`` is the certificate so far; only its last symbol matters.
    Pass None when the preceding symbol is unknown.
    """
    if pos < 0 or pos >= schema.max_length:
        return frozenset()
    if schema.kind == "sat":
        return _TF
    last = prefix[-1] if prefix else ("" if prefix is not None else None)
    if last == ";":
        return frozenset({BLANK})
    room = schema.max_length - pos
    out = set()
    if last is None:
        # unknown context: anything well-formed somewhere
        if room >= 3:
            out |= _DIGITS_ONLY
        if room >= 2:
            out.add("_")
        out.add(";")
        return frozenset(out)
    if room >= 3 and (last == "" or last == "_" or is_digit(last)):
        out |= _DIGITS_ONLY
    if room >= 2 and is_digit(last):
        out.add("_")
    if last in ("", "_"):
        out.add(";")
    return frozenset(out)


_SAT_INSTANCE = re.compile(r"^(-?[0-9]+)([_&](-?[0-9]+))*_?$")
_SS_INSTANCE = re.compile(r"^([0-9]+)_@((_[0-9]+)*)_?$")


def parse_tape(text: str):
    """Split a raw tape string into (instance, certificate text)."""
    if "#" not in text:
        raise ValueError("missing '#' end marker")
    head, _, cert = text.partition("#")
    if "@" in head:
        m = _SS_INSTANCE.match(head)
        if not m:
            raise ValueError(f"malformed subset-sum instance: {head!r}")
        items = tuple(int(x) for x in m.group(2).split("_") if x)
        inst = ProblemInstance("subset-sum", target=int(m.group(1)), elements=items)
        if cert and not re.fullmatch(r"([0-9]+_)*;", cert):
            raise ValueError(f"malformed subset-sum certificate: {cert!r}")
        return inst, cert
    if not _SAT_INSTANCE.match(head):
        raise ValueError(f"malformed CNF instance: {head!r}")
    clauses = []
    for chunk in head.split("&"):
        lits = tuple(int(x) for x in chunk.split("_") if x)
        if not lits or 0 in lits:
            raise ValueError(f"bad clause {chunk!r}")
        clauses.append(lits)
    k = max(abs(x) for c in clauses for x in c)
    if cert and not re.fullmatch(r"[TF]*", cert):
        raise ValueError(f"malformed assignment: {cert!r}")
    return ProblemInstance("sat", clauses=tuple(clauses), k=k), cert


def parse_instance(text: str) -> ProblemInstance:
    return parse_tape(text)[0]


def render_instance(inst: ProblemInstance) -> str:
    if inst.kind == "sat":
        return "&".join("_".join(str(x) for x in c) for c in inst.clauses) + "_#"
    return f"{inst.target}_@" + "".join(f"_{a}" for a in inst.elements) + "#"


def render_certificate(inst: ProblemInstance, cert) -> str:
    """Assignment (sequence of bools or T/F string) or sub-multiset to text."""
    if inst.kind == "sat":
        if isinstance(cert, str):
            return cert
        return "".join("T" if v else "F" for v in cert)
    if isinstance(cert, str):
        return cert
    return "".join(f"{c}_" for c in cert) + ";"


def encode_instance(inst: ProblemInstance, certificate=None,
                    instance_text: str | None = None) -> EncodedTape:
    text = instance_text if instance_text is not None else render_instance(inst)
    tokens = tokenize(text)
    n = len(tokens)
    cert = [] if certificate is None else tokenize(render_certificate(inst, certificate))
    return EncodedTape(tokens + cert, n, len(cert))


def certificate_length(inst: ProblemInstance, instance_text: str | None = None) -> int:
    """Length of the certificate region the simulator may fill."""
    if inst.kind == "sat":
        return inst.k
    # one separator per element plus the terminator: room for every element once
    return len("_".join(str(a) for a in inst.elements)) + 2


def make_schema(inst: ProblemInstance, instance_len: int) -> CertificateSchema:
    if inst.kind == "sat":
        return CertificateSchema("sat", instance_len, inst.k)
    return CertificateSchema("subset-sum", instance_len, certificate_length(inst), ";")


# -- construction ------------------------------------------------------------

_RESOLVERS = {
    "sat-id": resolve_sat_id,
    "sat-fixed": resolve_sat_fixed,
    "subset-sum": resolve_subset_sum,
}


def machine_rows(kind: str, sanitize: bool = False) -> list:
    """(row, is_extra) pairs, in table order."""
    if kind == "sat-id":
        main = [(r, False) for r in SAT_ID_ROWS]
        san = sat_sanitizer_rows("Check")
    elif kind == "sat-fixed":
        main = [(r, False) for r in SAT_FIXED_ROWS]
        san = sat_sanitizer_rows("Check.Forwarded")
    elif kind == "subset-sum":
        main = [(r, False) for r in SUBSET_SUM_ROWS]
        main += [(r, True) for r in SUBSET_SUM_EXTRA_ROWS]
        san = SUBSET_SUM_SANITIZER_ROWS
    else:
        raise ValueError(f"unknown machine {kind!r}")
    if sanitize:
        return [(r, False) for r in san] + main
    return main


_ENTRY = {"sat-id": "Check", "sat-fixed": "Check.Forwarded", "subset-sum": "Forward"}

_BASE_ALPHABET = frozenset(DIGITS) | frozenset(CIRCLED) | frozenset(
    ["_", "#", "&", "-", ";", "@", "T", "F", "~", "|", "$", "?", "!", BLANK])


def build_machine(kind: str, instance: ProblemInstance | None = None,
                  sanitize: bool = False, instance_len: int | None = None) -> MachineSpec:
    if kind not in _RESOLVERS:
        raise ValueError(f"unknown machine {kind!r}")
    expected = "subset-sum" if kind == "subset-sum" else "sat"
    if instance is not None and instance.kind != expected:
        raise ValueError(f"{kind} needs a {expected} instance")
    bound = 0
    if kind == "sat-id":
        bound = instance.k if instance is not None else 0
        if bound <= 0:
            raise ValueError("sat-id needs a positive variable count")
    rows = machine_rows(kind, sanitize)
    schema = None
    if instance is not None:
        if instance_len is None:
            instance_len = len(tokenize(render_instance(instance)))
        schema = make_schema(instance, instance_len)
    return MachineSpec(
        variant=kind,
        rules=_table(r for r, _ in rows),
        resolver=_RESOLVERS[kind],
        q_init="InputCheck" if sanitize else _ENTRY[kind],
        alphabet=_BASE_ALPHABET,
        states=frozenset(r[0] for r, _ in rows) | {ACCEPT, REJECT},
        bound=bound,
        schema=schema,
        supplement=frozenset((r[0], r[1]) for r, extra in rows if extra),
        sanitized=sanitize,
    )


def format_row(row, extra: bool = False) -> str:
    state, read, nxt, write, move = row
    line = f"{state} | {read} | {nxt} | {write} | {'R' if move > 0 else 'L'}"
    return line + ("  [supplement]" if extra else "")


def dump_rows(kind: str, sanitize: bool = True) -> list:
    """Symbolic rule table, one formatted line per row."""
    return [format_row(r, extra) for r, extra in machine_rows(kind, sanitize)]


def dump_instantiated(spec: MachineSpec, states) -> list:
    """Every concrete (state, symbol) resolution for the given states."""
    from .tm import resolve_transition
    lines = []
    for state in states:
        for sym in sorted(spec.alphabet):
            t = resolve_transition(spec, state, sym)
            lines.append(format_row((state, sym, t.next, t.write, t.move)))
    return lines
