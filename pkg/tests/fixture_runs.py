"""Simulator runs on the bundled fixtures, cached so several test modules share them."""
import functools
import os
import time

from npsim.cli import check_rejected, load_instance, replay, simulate
from npsim.oracle import witness_ok

from conftest import FIXTURES

FAMILY = {"sat-id": "sat", "sat-fixed": "sat", "subset-sum": "subset-sum"}

# long runs are opt-in: set NPSIM_LONG=1 to include them
LONG = os.environ.get("NPSIM_LONG") == "1"
LONG_RUNS = {("subset-sum", name) for name in ("I1", "I2", "I3", "I4")}


def is_long(kind, name) -> bool:
    return (kind, name) in LONG_RUNS


@functools.lru_cache(maxsize=None)
def fixture_run(kind: str, name: str) -> dict:
    text, inst = load_instance(kind, FIXTURES / FAMILY[kind] / f"{name}.txt")
    t0 = time.perf_counter()
    sim = simulate(kind, text, inst)
    elapsed = time.perf_counter() - t0
    m = sim.metrics
    count, replay_ok = check_rejected(sim)
    rejecting = sum(1 for e in sim.halting if not sim.u.is_accepting(e[1]))
    return {
        "decision": m.decision,
        "witness": m.witness,
        "witness_ok": m.decision != "accept" or witness_ok(inst, m.witness),
        "witness_replays": m.decision != "accept" or replay(sim, m.witness) == "accept",
        "rejected_witnesses": count,
        "rejecting_edges": rejecting,
        "rejected_replay_ok": replay_ok,
        "total_edges": m.total_edges,
        "elapsed": elapsed,
    }
