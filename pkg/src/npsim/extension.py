"""Walk-first verification, direct extension and the acceptance driver."""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from .feasible import compute_feasible_graph, prune_walk
from .graph import (DynamicGraph, Universe, edge_index,
                    filter_with_path_backward, filter_with_path_forward,
                    forward_weak_ceiling_adjacent)
from .machines import build_machine, parse_tape
from .tm import BLANK, default_max_steps, tokenize


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class RunMetrics:
    tape_len: int = 0
    cert_len: int = 0
    total_edges: int = 0
    direct_ext: int = 0
    verified_ext: int = 0
    candidates_verified: int = 0
    disjoint_edges: int = 0
    pruned_walks: int = 0
    halting_edges: int = 0
    max_walks: int = 0
    avg_walk_len: float = 0.0
    decision: str = ""
    witness: str = ""
    elapsed: float = 0.0

    FIELDS = ("tape_len", "cert_len", "total_edges", "direct_ext", "verified_ext",
              "candidates_verified", "disjoint_edges", "pruned_walks", "halting_edges",
              "max_walks", "avg_walk_len", "decision", "witness", "elapsed")

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}

    def to_text(self, with_elapsed: bool = True) -> str:
        lines = []
        for k, v in self.as_dict().items():
            if k == "elapsed" and not with_elapsed:
                continue
            if isinstance(v, float):
                v = f"{v:.3f}" if k == "elapsed" else f"{v:.2f}"
            lines.append(f"{k}={v}")
        return "\n".join(lines) + "\n"


@dataclass
class _Counters:
    candidates: int = 0
    disjoint: int = 0
    pruned: int = 0


# -- verification --------------------------------------------------------------

def take_arbitrary_walk(g: DynamicGraph, V0) -> list:
    """Greedy maximal walk that stays consistent with its own surface."""
    starts = [e for v in V0 for e in g.out_edges(v)]
    if not starts:
        return []
    e = min(starts)
    surface = {}
    walk = []
    while e is not None:
        u, v = e
        surface[u[0]] = u[:4]
        walk.append(e)
        best = None
        for f in g.out_edges(v):
            w = f[1]
            last = surface.get(w[0])
            if last is None:
                ok = w[1] == 0
            else:
                ok = w[1] > 0 and (w[0], w[1] - 1, w[4], w[5]) == last
            if ok and (best is None or f < best):
                best = f
        e = best
    return walk


def find_feasible_or_disjoint_edge(gu: DynamicGraph, V0, ef, counters: _Counters | None = None):
    counters = counters or _Counters()
    g = gu
    finals = (ef,)
    attempted = set()
    while g:
        walk = take_arbitrary_walk(g, V0)
        if not walk:
            break
        if ef in walk:
            return ef, walk[:walk.index(ef) + 1]
        if attempted:
            for e in walk:
                if e not in attempted:
                    return e, walk
            return None, walk
        counters.pruned += 1
        h = prune_walk(gu, g, V0, finals, walk, False).graph
        if not h:
            attempted.update(walk)
            counters.pruned += 1
            g = prune_walk(gu, g, V0, finals, walk, True).graph
        else:
            g = h
    return None, None


def verify_existence_of_walk(g: DynamicGraph, V0, ef, counters: _Counters | None = None):
    """A walk from V0 whose last edge is ``ef``, or None."""
    counters = counters or _Counters()
    fg = compute_feasible_graph(g, V0, [ef]).graph
    while fg.has_edge(ef):
        e, walk = find_feasible_or_disjoint_edge(fg, V0, ef, counters)
        if e == ef:
            return walk
        if e is None:
            return None
        counters.disjoint += 1
        nxt = fg.copy()
        nxt.remove_edge(e)
        fg = compute_feasible_graph(nxt, V0, [ef]).graph
    return None


# -- the simulator -------------------------------------------------------------

class Simulator:
    """Grows the footmarks graph H of one machine on one instance tape."""

    def __init__(self, spec, tape, schema, max_steps: int | None = None,
                 edge_budget: int | None = None):
        self.u = Universe(spec, tape, schema)
        self.H = DynamicGraph(self.u)
        self.v0 = self.u.start_node()
        self.V0 = (self.v0,)
        n = len(self.u.tape) + (schema.max_length if schema else 0)
        self.max_steps = max_steps or default_max_steps(n)
        self.edge_budget = edge_budget or 16 * max(n, 1) ** 3
        self.metrics = RunMetrics(tape_len=n, cert_len=schema.max_length if schema else 0)
        self.counters = _Counters()
        self.rejected = []      # (halting edge, witness array)
        self.halting = []
        self._walk_total = 0

    # witness arrays map cell index -> tier-0 certificate symbol
    def _record(self, R: dict, e):
        sch = self.u.schema
        if sch is None:
            return
        for n in e:
            if n[1] == 0 and sch.in_region(n[0]):
                R[n[0]] = n[3]

    def witness_text(self, R: dict) -> str:
        sch = self.u.schema
        cells = range(sch.region_start, sch.region_start + sch.max_length)
        if sch.kind == "sat":
            return "".join(R.get(i, "T") for i in cells)
        out = []
        for i in cells:
            s = R.get(i)
            if s is None or s == BLANK:
                break
            out.append(s)
            if s == sch.terminator:
                break
        return "".join(out)

    def _add(self, e, verified: bool) -> bool:
        if not self.H.add_edge(e):
            return False
        if verified:
            self.metrics.verified_ext += 1
        else:
            self.metrics.direct_ext += 1
        if self.H.n_edges > self.edge_budget:
            raise BudgetExceeded(f"edge budget {self.edge_budget} exhausted")
        return True

    def add_extendable_edge_on_ceiling_edges(self, S: dict, Ev: dict):
        H, u_ = self.H, self.u
        for e in list(S.values()):
            u, v = e
            if not H.is_branch_point(e):
                continue
            seen = set()
            queue = deque(H.isucc_nodes(v))
            seen.update(queue)
            while queue:
                w = queue.popleft()
                if u_.is_halting(w):
                    continue
                if H.is_folding(w):
                    for s in H.isucc_nodes(w):
                        if s not in seen:
                            seen.add(s)
                            queue.append(s)
                elif u_.next_index(w) == u[0]:
                    # H only grows here, so a pair found once stays valid
                    todo = [c for c in H.in_edges(w) if (e, c) not in Ev]
                    if todo:
                        for ec in filter_with_path_forward(H, e, todo):
                            Ev[(e, ec)] = None

    def extend_edge_directly_with_walk(self, walk, Ev: dict):
        H, u_ = self.H, self.u
        S, R = {}, {}
        start = None
        for e in walk:
            if not H.has_edge(e):
                start = e
                break
            S[edge_index(e)] = e
            self._record(R, e)
        if start is None:
            return None
        stack = [(start, S, R)]
        first = True
        while stack:
            e, S, R = stack.pop()
            if H.has_edge(e):
                continue
            length = 0
            while True:
                is_new = self._add(e, verified=first)
                first = False
                u, v = e
                S[edge_index(e)] = e
                self._record(R, e)
                length += 1
                if length > self.max_steps:
                    raise BudgetExceeded(f"walk exceeded {self.max_steps} steps")
                if is_new and H.is_merging(e):
                    self.add_extendable_edge_on_ceiling_edges(S, Ev)
                if u_.is_halting(v):
                    self.metrics.max_walks += 1
                    self._walk_total += length
                    if is_new:
                        self.halting.append(e)
                        if not u_.is_accepting(v):
                            self.rejected.append((e, dict(R)))
                    break
                a, b = v[0], u_.next_index(v)
                ep = S.get(a if a < b else b)
                if is_new and ep is not None and a != b and H.is_branch_point(ep):
                    Ev[(None, e)] = None
                nxt = sorted(u_.next_edges_above_ipreds(v, [ep]))
                e = nxt[0]
                for f in nxt[1:]:
                    if not H.has_edge(f):
                        stack.append((f, dict(S), dict(R)))
            if u_.is_accepting(v):
                return R
        return None

    def collect_restricted_boundary_edges(self, Ev: dict) -> list:
        H, u_ = self.H, self.u
        found = {}
        for ep, e in Ev:
            u, v = e
            if u_.is_halting(v) or u[0] == u_.next_index(v):
                continue
            if ep is None:
                Ep = forward_weak_ceiling_adjacent(H, e)
                Ep = filter_with_path_backward(H, e, Ep)
            else:
                Ep = [ep]
            for f in u_.next_edges_above_ipreds(v, Ep):
                if not H.has_edge(f):
                    found[f] = None
        return list(found)

    def extend_by_verifiable_edges(self, queue, Ev: dict):
        for e in queue:
            if self.H.has_edge(e):
                continue
            self.counters.candidates += 1
            trial = self.H.copy()
            trial.add_edge(e)
            walk = verify_existence_of_walk(trial, self.V0, e, self.counters)
            if walk is None:
                continue
            R = self.extend_edge_directly_with_walk(walk, Ev)
            if R is not None:
                return R
        return None

    def run(self):
        """Decide acceptance. Returns (decision, witness text or None)."""
        t0 = time.perf_counter()
        decision, witness = "reject", None
        try:
            queue = self.u.floor_next_edges(self.v0)
            while queue:
                Ev = {}
                R = self.extend_by_verifiable_edges(queue, Ev)
                if R is not None:
                    decision, witness = "accept", self.witness_text(R)
                    break
                if not Ev:
                    break
                queue = self.collect_restricted_boundary_edges(Ev)
        except BudgetExceeded:
            decision = "budget"
        m = self.metrics
        m.total_edges = self.H.n_edges
        m.candidates_verified = self.counters.candidates
        m.disjoint_edges = self.counters.disjoint
        m.pruned_walks = self.counters.pruned
        m.halting_edges = len(self.halting)
        m.avg_walk_len = self._walk_total / m.max_walks if m.max_walks else 0.0
        m.decision = decision
        m.witness = witness or ""
        m.elapsed = time.perf_counter() - t0
        return decision, witness

    def rejected_witnesses(self) -> list:
        return [self.witness_text(R) for _, R in self.rejected]


def is_accepted_on_footmarks(spec, tape, schema, **kw):
    sim = Simulator(spec, tape, schema, **kw)
    decision, witness = sim.run()
    return decision, witness, sim.metrics


def simulate_text(kind: str, text: str, sanitize: bool = False, **kw) -> Simulator:
    """Build the machine for a raw instance tape and run the simulator on it."""
    inst, cert = parse_tape(text)
    if cert:
        raise ValueError("instance file must not carry a certificate")
    tokens = tokenize(text)
    spec = build_machine(kind, inst, sanitize=sanitize, instance_len=len(tokens))
    sim = Simulator(spec, tokens, spec.schema, **kw)
    sim.run()
    return sim
