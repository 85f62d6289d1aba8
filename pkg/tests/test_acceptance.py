"""One check per headline requirement; each prints a PASS/FAIL line in the summary."""
import itertools
import random
import shutil
import time
from collections import Counter

import pytest

from npsim.cli import main
from npsim.feasible import compute_feasible_graph
from npsim.machines import (ProblemInstance, build_machine, dump_rows, render_certificate,
                            render_instance)
from npsim.oracle import eval_cnf
from npsim.tm import run_direct, tokenize

from conftest import (ACCEPTANCE, FIXTURES, SAT_EXPECTED, SUBSET_SUM_EXPECTED, random_cnf,
                      random_subset_sum)
from fixture_runs import LONG, fixture_run, is_long
from test_extension import tri_oracle
from test_feasible import fixpoint, is_pendant, random_case
from test_machines import reference_rows, subset_sum_certificates

KINDS = ("sat-id", "sat-fixed", "subset-sum")


@pytest.fixture
def report(request):
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def emit(label, ok, detail=""):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
        print(lines[-1])
        assert ok, detail
    return emit


def test_transition_table_fidelity(report):
    t0 = time.perf_counter()
    missing = 0
    total = 0
    for kind in KINDS:
        dumped = {r.replace("  [supplement]", "") for r in dump_rows(kind, sanitize=True)}
        ref = reference_rows()[kind]
        total += len(ref)
        missing += sum(r not in dumped for r in ref)
    dt = time.perf_counter() - t0
    report("transition-table fidelity", missing == 0 and dt < 1,
           f"{total - missing}/{total} reference rows present, {dt:.2f}s")


def test_verifiers_on_random_instances(report):
    t0 = time.perf_counter()
    bad = 0
    rng = random.Random(31)
    for _ in range(200):
        inst = random_cnf(rng, max_vars=5, max_clauses=4)
        base = tokenize(render_instance(inst))
        for kind in ("sat-id", "sat-fixed"):
            spec = build_machine(kind, inst)
            for bits in itertools.product("TF", repeat=inst.k):
                got = run_direct(spec, base + list(bits), keep_trace=False).decision
                bad += (got == "accept") != eval_cnf(inst.clauses, bits)
    spec = build_machine("subset-sum")
    for _ in range(200):
        elems = tuple(rng.randint(1, 99) for _ in range(rng.randint(1, 5)))
        certs = subset_sum_certificates(rng, elems)
        target = sum(rng.choice(certs[: 2 ** len(elems)]))
        inst = ProblemInstance("subset-sum", target=target, elements=elems)
        base = tokenize(render_instance(inst))
        for c in certs:
            ok = not (Counter(c) - Counter(elems)) and sum(c) == target
            got = run_direct(spec, base + tokenize(render_certificate(inst, c)),
                             keep_trace=False).decision
            bad += (got == "accept") != ok
    dt = time.perf_counter() - t0
    report("verifier correctness", bad == 0 and dt < 60, f"{bad} counterexamples, {dt:.1f}s")


def decision_cases():
    for kind in ("sat-id", "sat-fixed"):
        for name, yes in SAT_EXPECTED.items():
            yield kind, name, yes
    for name, yes in SUBSET_SUM_EXPECTED.items():
        yield "subset-sum", name, yes


def test_decision_reproduction(report):
    wrong, skipped, slow = [], [], []
    for kind, name, yes in decision_cases():
        if is_long(kind, name) and not LONG:
            skipped.append(f"{kind}/{name}")
            continue
        r = fixture_run(kind, name)
        if r["decision"] != ("accept" if yes else "reject") or not r["witness_ok"]:
            wrong.append(f"{kind}/{name}={r['decision']}")
        limit = {"sat-fixed": 600, "subset-sum": 120}.get(kind)
        if limit and not is_long(kind, name) and r["elapsed"] >= limit:
            slow.append(f"{kind}/{name} {r['elapsed']:.0f}s")
    detail = f"wrong={wrong} slow={slow}"
    if skipped:
        detail += f" skipped long runs={skipped}"
    report("decision reproduction", not wrong and not slow, detail)


def test_tri_oracle(report):
    t0 = time.perf_counter()
    bad = 0
    rng = random.Random(707)
    for i in range(100):
        try:
            tri_oracle("sat-id" if i % 2 else "sat-fixed", random_cnf(rng, max_vars=3, max_clauses=3))
        except AssertionError:
            bad += 1
    for _ in range(100):
        try:
            tri_oracle("subset-sum", random_subset_sum(rng, max_elems=2, max_value=9, max_target=12))
        except AssertionError:
            bad += 1
    dt = time.perf_counter() - t0
    report("tri-oracle equivalence", bad == 0 and dt < 600, f"{bad} mismatches over 200, {dt:.1f}s")


def test_feasible_graph_invariants(report):
    t0 = time.perf_counter()
    failures = Counter()
    checked = 0
    for seed in range(150):
        rng, u, g, walks = random_case(seed)
        pool = list(g.edges())
        if not pool or len(g) > 300:
            continue
        checked += 1
        V0 = [u.start_node()]
        finals = rng.sample(pool, rng.randint(1, 2))
        fg = compute_feasible_graph(g, V0, finals)
        h = fg.graph
        if any(is_pendant(h, e, fg.cover, set(V0), set(fg.Ef)) for e in h.edges()):
            failures["a"] += 1
        for w in walks:
            if all(g.has_edge(e) for e in w):
                if not set(w) <= compute_feasible_graph(g, V0, [w[-1]]).graph.edge_set():
                    failures["b"] += 1
        if h.edge_set() != fixpoint(g, V0, finals):
            failures["c"] += 1
        if compute_feasible_graph(g, V0, []).graph:
            failures["d"] += 1
    dt = time.perf_counter() - t0
    report("feasible-graph invariants", not failures and dt < 30,
           f"{checked} graphs, failures={dict(failures)}, {dt:.1f}s")


def test_witness_accounting(report):
    bad = []
    for kind, name, _ in decision_cases():
        if is_long(kind, name) and not LONG:
            continue
        r = fixture_run(kind, name)
        if not (r["witness_ok"] and r["witness_replays"] and r["rejected_replay_ok"]
                and r["rejected_witnesses"] == r["rejecting_edges"]):
            bad.append(f"{kind}/{name}")
    report("witness and rejected-witness accounting", not bad, f"bad={bad}")


# fixtures that finish in well under a second each
FAST = {"sat-id": ["I4"], "sat-fixed": ["I1", "I4", "I5"], "subset-sum": ["I5"]}


def test_batch_determinism(report, tmp_path):
    same = True
    for kind, names in FAST.items():
        d = tmp_path / kind
        d.mkdir()
        family = "subset-sum" if kind == "subset-sum" else "sat"
        for n in names:
            shutil.copy(FIXTURES / family / f"{n}.txt", d / f"{n}.txt")
        outs = []
        for k in range(2):
            out = tmp_path / f"{kind}-{k}.tsv"
            main(["batch", "-m", kind, str(d), "-o", str(out)])
            outs.append(out.read_bytes())
        same &= outs[0] == outs[1]
    report("batch determinism", same, "byte-identical" if same else "outputs differ")
