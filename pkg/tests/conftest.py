import random
from pathlib import Path

import pytest

from npsim.graph import DynamicGraph, Universe
from npsim.machines import ProblemInstance, build_machine, parse_tape, render_instance
from npsim.tm import tokenize

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
DATA = Path(__file__).resolve().parent / "data"

SAT_EXPECTED = {"I1": True, "I2": True, "I3": True, "I4": False, "I5": True, "I6": False}
SUBSET_SUM_EXPECTED = {"I1": True, "I2": True, "I3": False, "I4": False, "I5": True}

# lines collected by the acceptance checks, shown in the terminal summary
ACCEPTANCE = pytest.StashKey[list]()


def random_cnf(rng: random.Random, max_vars=5, max_clauses=4, max_width=3):
    k = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        width = rng.randint(1, max_width)
        clauses.append(tuple(rng.choice((1, -1)) * rng.randint(1, k) for _ in range(width)))
    # the tape only names variables that occur, so renumber to 1..k'
    used = sorted({abs(x) for c in clauses for x in c})
    ren = {v: i + 1 for i, v in enumerate(used)}
    clauses = tuple(tuple(ren[abs(x)] * (1 if x > 0 else -1) for x in c) for c in clauses)
    return ProblemInstance("sat", clauses=clauses, k=len(used))


def random_subset_sum(rng: random.Random, max_elems=5, max_value=99, max_target=None):
    elems = tuple(rng.randint(1, max_value) for _ in range(rng.randint(1, max_elems)))
    top = max_target if max_target is not None else sum(elems) + 5
    if rng.random() < 0.5:
        # bias towards yes-instances
        pick = [a for a in elems if rng.random() < 0.5] or [elems[0]]
        target = sum(pick)
    else:
        target = rng.randint(1, max(1, top))
    return ProblemInstance("subset-sum", target=target, elements=elems)


def machine_for(kind, inst):
    text = render_instance(inst)
    tokens = tokenize(text)
    return build_machine(kind, inst, instance_len=len(tokens)), tokens


def universe_for(kind, text):
    inst, _ = parse_tape(text)
    tokens = tokenize(text)
    spec = build_machine(kind, inst, instance_len=len(tokens))
    return Universe(spec, tokens, spec.schema), inst


def graph_of(u, edges):
    g = DynamicGraph(u)
    for e in edges:
        g.add_edge(e)
    return g


def fixture_text(family, name):
    return (FIXTURES / family / f"{name}.txt").read_text().strip()


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
