"""Independent deciders: CNF evaluation, subset-sum DP, exhaustive TM runs."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .machines import (ProblemInstance, build_machine, certificate_alphabet,
                       make_schema, render_instance)
from .tm import BLANK, run_direct, tokenize


@dataclass(frozen=True)
class OracleResult:
    decision: str  # "yes" / "no" / "budget"
    witness: object = None

    @property
    def yes(self) -> bool:
        return self.decision == "yes"


def eval_cnf(clauses, assignment) -> bool:
    """``assignment[i]`` is the value of variable i+1 (bool or "T"/"F")."""
    vals = [v == "T" if isinstance(v, str) else bool(v) for v in assignment]
    return all(any(vals[abs(x) - 1] == (x > 0) for x in clause) for clause in clauses)


def brute_force_sat(clauses, k: int) -> OracleResult:
    if k > 24:
        raise ValueError("too many variables for exhaustive search")
    for bits in itertools.product("TF", repeat=k):
        if eval_cnf(clauses, bits):
            return OracleResult("yes", "".join(bits))
    return OracleResult("no")


def subset_sum_solve(target: int, elements) -> OracleResult:
    """Reachable-sum DP over the multiset; keeps one witness per sum."""
    if target < 0:
        return OracleResult("no")
    best = {0: ()}
    for a in elements:
        for s, picked in list(best.items()):
            t = s + a
            if t <= target and t not in best:
                best[t] = picked + (a,)
    if target in best:
        return OracleResult("yes", best[target])
    return OracleResult("no")


def is_valid_subset(target: int, elements, chosen) -> bool:
    return not (Counter(chosen) - Counter(elements)) and sum(chosen) == target


def analytic(instance: ProblemInstance) -> OracleResult:
    if instance.kind == "sat":
        return brute_force_sat(instance.clauses, instance.k)
    return subset_sum_solve(instance.target, instance.elements)


def witness_ok(instance: ProblemInstance, witness: str) -> bool:
    """Check a raw certificate string against the instance semantics."""
    if witness is None:
        return False
    if instance.kind == "sat":
        return len(witness) >= instance.k and eval_cnf(instance.clauses, witness[:instance.k])
    body, _, _ = witness.partition(";")
    nums = [int(x) for x in body.split("_") if x]
    return is_valid_subset(instance.target, instance.elements, nums)


def schema_certificates(schema):
    """Every certificate the schema admits, as token lists."""
    if schema.kind == "sat":
        for bits in itertools.product("TF", repeat=schema.max_length):
            yield list(bits)
        return

    def grow(prefix):
        if prefix and prefix[-1] == ";":
            yield list(prefix)
            return
        for sym in sorted(certificate_alphabet(schema, len(prefix), prefix)):
            if sym == BLANK:
                continue
            prefix.append(sym)
            yield from grow(prefix)
            prefix.pop()

    yield from grow([])


def exhaustive_tm_decide(machine_kind: str, instance: ProblemInstance,
                         cert_bound: int = 1 << 20, instance_text: str | None = None) -> OracleResult:
    text = instance_text if instance_text is not None else render_instance(instance)
    tokens = tokenize(text)
    spec = build_machine(machine_kind, instance, instance_len=len(tokens))
    schema = make_schema(instance, len(tokens))
    runs = 0
    for cert in schema_certificates(schema):
        runs += 1
        if runs > cert_bound:
            return OracleResult("budget")
        if run_direct(spec, tokens + cert, keep_trace=False).decision == "accept":
            return OracleResult("yes", "".join(cert))
    return OracleResult("no")
