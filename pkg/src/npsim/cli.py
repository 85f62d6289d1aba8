"""Command-line harness: run, batch, oracle and dump-tm."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .extension import RunMetrics, Simulator
from .machines import (KINDS, build_machine, dump_instantiated, dump_rows,
                       parse_tape)
from .oracle import analytic, exhaustive_tm_decide, witness_ok
from .tm import run_direct, tokenize

EXIT_ACCEPT, EXIT_REJECT, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2, 3


class InstanceError(ValueError):
    pass


def load_instance(kind: str, path):
    path = Path(path)
    if not path.is_file():
        raise InstanceError(f"input file not found: {path}")
    text = path.read_text().strip()
    try:
        inst, cert = parse_tape(text)
    except ValueError as ex:
        raise InstanceError(f"cannot parse {path}: {ex}") from None
    if cert:
        raise InstanceError(f"{path}: instance file carries a certificate")
    want = "subset-sum" if kind == "subset-sum" else "sat"
    if inst.kind != want:
        raise InstanceError(f"{path}: {kind} needs a {want} instance, got {inst.kind}")
    return text, inst


def simulate(kind: str, text: str, inst, sanitize=False, max_steps=None) -> Simulator:
    tokens = tokenize(text)
    spec = build_machine(kind, inst, sanitize=sanitize, instance_len=len(tokens))
    sim = Simulator(spec, tokens, spec.schema, max_steps=max_steps)
    sim.run()
    return sim


def replay(sim: Simulator, witness: str) -> str:
    """Run the plain machine on instance + certificate; returns its decision."""
    tape = list(sim.u.tape) + tokenize(witness)
    return run_direct(sim.u.spec, tape, keep_trace=False).decision


def check_rejected(sim: Simulator) -> tuple:
    """(count, all replay to reject)."""
    ws = sim.rejected_witnesses()
    return len(ws), all(replay(sim, w) == "reject" for w in ws)


def _decision_exit(decision: str) -> int:
    return {"accept": EXIT_ACCEPT, "reject": EXIT_REJECT}.get(decision, EXIT_ERROR)


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_run(a) -> int:
    try:
        text, inst = load_instance(a.machine, a.input)
        sim = simulate(a.machine, text, inst, a.sanitize, a.max_steps)
    except (InstanceError, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_ERROR
    m = sim.metrics
    if m.decision == "budget":
        print("error: step or edge budget exhausted before a decision", file=sys.stderr)
    doc = json.dumps(m.as_dict(), indent=2) + "\n" if a.json else m.to_text()
    _write(a.metrics or "-", doc)
    if a.witness and m.decision == "accept":
        _write(a.witness, m.witness + "\n")
    if a.trace and m.decision == "accept":
        res = run_direct(sim.u.spec, list(sim.u.tape) + tokenize(m.witness))
        _write(a.trace, "".join(f"{s.state} {s.head} {s.read} {s.write} {s.move:+d}\n"
                                for s in res.trace))
    if a.graph_dump:
        _write(a.graph_dump, "\n".join(sim.H.dump()) + "\n")
    code = _decision_exit(m.decision)
    if a.oracle and code != EXIT_ERROR:
        ref = analytic(inst)
        agree = (m.decision == "accept") == ref.yes
        if m.decision == "accept" and not witness_ok(inst, m.witness):
            agree = False
        print(f"oracle={ref.decision} simulator={m.decision} agree={str(agree).lower()}")
        if not agree:
            return EXIT_MISMATCH
    return code


COLUMNS = ("instance",) + tuple(f for f in RunMetrics.FIELDS if f != "elapsed")


def _batch_one(job):
    kind, path, sanitize, max_steps = job
    try:
        text, inst = load_instance(kind, path)
        sim = simulate(kind, text, inst, sanitize, max_steps)
    except Exception as ex:  # recorded per file, batch continues
        return {"instance": Path(path).name, "decision": "error", "error": str(ex)}
    row = {"instance": Path(path).name, **sim.metrics.as_dict()}
    row["rejected_witnesses"], row["rejected_replay_ok"] = check_rejected(sim)
    if row["decision"] == "accept":
        row["witness_ok"] = witness_ok(inst, row["witness"])
    return row


def batch_rows(kind, directory, sanitize=False, max_steps=None, jobs=1) -> list:
    files = sorted(p for p in Path(directory).iterdir() if p.is_file() and p.suffix == ".txt")
    work = [(kind, str(p), sanitize, max_steps) for p in files]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_batch_one, work))
    return [_batch_one(w) for w in work]


def format_table(rows, timing=False) -> str:
    cols = list(COLUMNS) + (["elapsed"] if timing else [])
    lines = ["\t".join(cols)]
    for r in rows:
        cells = []
        for c in cols:
            v = r.get(c, "")
            if isinstance(v, float):
                v = f"{v:.3f}" if c == "elapsed" else f"{v:.2f}"
            cells.append(str(v))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def cmd_batch(a) -> int:
    d = Path(a.dir)
    if not d.is_dir():
        print(f"error: not a directory: {d}", file=sys.stderr)
        return EXIT_ERROR
    rows = batch_rows(a.machine, d, a.sanitize, a.max_steps, a.jobs)
    if a.json:
        if not a.timing:
            for r in rows:
                r.pop("elapsed", None)
        out = json.dumps(rows, indent=2) + "\n"
    else:
        out = format_table(rows, a.timing)
    _write(a.output or "-", out)
    for r in rows:
        if r["decision"] == "error":
            print(f"error: {r['instance']}: {r['error']}", file=sys.stderr)
    return EXIT_ERROR if any(r["decision"] == "error" for r in rows) else 0


def cmd_oracle(a) -> int:
    try:
        text, inst = load_instance(a.machine, a.input)
    except InstanceError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_ERROR
    ref = analytic(inst)
    print(f"analytic={ref.decision}")
    if ref.witness is not None:
        w = ref.witness if isinstance(ref.witness, str) else "_".join(map(str, ref.witness))
        print(f"analytic_witness={w}")
    if a.exhaustive:
        ex = exhaustive_tm_decide(a.machine, inst, instance_text=text)
        print(f"exhaustive={ex.decision}")
        if ex.decision == "budget":
            return EXIT_ERROR
    return EXIT_ACCEPT if ref.yes else EXIT_REJECT


SAMPLE_TAPES = {"sat-id": "1_-2&2_#", "sat-fixed": "1_-2&2_#", "subset-sum": "3_@_1_2#"}


def expanded_rows(kind: str, sanitize: bool) -> list:
    """Concrete rows for every state reached on a small sample instance."""
    from .oracle import schema_certificates
    text = SAMPLE_TAPES[kind]
    inst, _ = parse_tape(text)
    tokens = tokenize(text)
    spec = build_machine(kind, inst, sanitize=sanitize, instance_len=len(tokens))
    states = {}
    for cert in schema_certificates(spec.schema):
        for s in run_direct(spec, tokens + cert).trace:
            states[s.state] = None
    return dump_instantiated(spec, sorted(states))


def cmd_dump(a) -> int:
    lines = dump_rows(a.machine, sanitize=not a.no_sanitize)
    if a.expand:
        lines = expanded_rows(a.machine, not a.no_sanitize)
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="npsim", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--machine", "-m", required=True, choices=KINDS)
        sp.add_argument("--sanitize", action="store_true", help="prepend input-check states")
        sp.add_argument("--max-steps", type=int, default=None,
                        help="per-branch step budget (default 64*n^2, env NPSIM_MAX_STEPS)")
        sp.add_argument("--json", action="store_true", help="structured output")

    r = sub.add_parser("run", help="simulate one instance")
    common(r)
    r.add_argument("--input", "-i", required=True)
    r.add_argument("--oracle", action="store_true", help="cross-check against the analytic oracle")
    r.add_argument("--metrics", help="metrics file (default stdout)")
    r.add_argument("--witness")
    r.add_argument("--trace", help="direct-run trace of the witness")
    r.add_argument("--graph-dump", help="edge list of the final graph")
    r.set_defaults(fn=cmd_run)

    b = sub.add_parser("batch", help="simulate every *.txt instance in a directory")
    common(b)
    b.add_argument("dir")
    b.add_argument("--output", "-o")
    b.add_argument("--jobs", "-j", type=int, default=1)
    b.add_argument("--timing", action="store_true", help="include wall-clock column")
    b.set_defaults(fn=cmd_batch)

    o = sub.add_parser("oracle", help="decide an instance without the simulator")
    o.add_argument("--machine", "-m", required=True, choices=KINDS)
    o.add_argument("--input", "-i", required=True)
    o.add_argument("--exhaustive", action="store_true", help="also enumerate certificates through the machine")
    o.set_defaults(fn=cmd_oracle)

    d = sub.add_parser("dump-tm", help="print a machine's transition table")
    d.add_argument("--machine", "-m", required=True, choices=KINDS)
    d.add_argument("--no-sanitize", action="store_true")
    d.add_argument("--expand", action="store_true", help="resolve every (state, symbol) pair")
    d.set_defaults(fn=cmd_dump)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
