"""Lazily materialized computation graphs.

A node is a flat tuple ``(index, tier, state, symbol, prev_state, prev_symbol)``.
The first four fields are its transition case; the last two name the case of
the previous visit to the same cell (empty strings at tier 0). An edge is a
``(tail, head)`` pair of nodes. Tuple order is the canonical order.
"""
from __future__ import annotations

from collections import deque

from .tm import BLANK, MachineSpec, resolve_transition

NO_PRED = ""
MARKER = None  # the boundary marker in precedent sets


# -- node and edge helpers -----------------------------------------------------

def case(n):
    return n[:4]


def ipred_case(n):
    if n[1] == 0:
        return None
    return (n[0], n[1] - 1, n[4], n[5])


def edge_index(e) -> int:
    a, b = e[0][0], e[1][0]
    return a if a < b else b


def edge_dir(e) -> int:
    return 1 if e[1][0] > e[0][0] else -1


def format_node(n) -> str:
    pred = f"{n[4]},{n[5]}" if n[1] else "-"
    return f"({n[0]},{n[1]},{n[2]},{n[3]}|{pred})"


def format_edge(e) -> str:
    return f"{format_node(e[0])} -> {format_node(e[1])}"


class CellArray:
    """List that grows in both directions; index ``i`` lives at ``i - base``."""

    def __init__(self, factory):
        self.items = []
        self.base = 0
        self.factory = factory

    def __getitem__(self, i: int):
        if not self.items:
            self.base = i
            self.items.append(self.factory())
        elif i < self.base:
            pad = [self.factory() for _ in range(self.base - i)]
            self.items[:0] = pad
            self.base = i
        elif i >= self.base + len(self.items):
            self.items.extend(self.factory() for _ in range(i - self.base - len(self.items) + 1))
        return self.items[i - self.base]

    def __len__(self):
        return len(self.items)

    def __contains__(self, i: int):
        return self.base <= i < self.base + len(self.items)


class Universe:
    """The machine, the instance tape and the node table shared by every graph copy."""

    def __init__(self, spec: MachineSpec, tape, schema=None):
        self.spec = spec
        self.tape = list(tape)
        self.schema = schema
        # index -> [tier] -> {state: {symbol: {ipred: node}}}
        self.table = CellArray(list)
        self.materialized = 0

    # transition-case attributes
    def delta(self, n):
        return resolve_transition(self.spec, n[2], n[3])

    def next_state(self, n) -> str:
        return resolve_transition(self.spec, n[2], n[3]).next

    def output(self, n) -> str:
        return resolve_transition(self.spec, n[2], n[3]).write

    def move(self, n) -> int:
        return resolve_transition(self.spec, n[2], n[3]).move

    def next_index(self, n) -> int:
        return n[0] + resolve_transition(self.spec, n[2], n[3]).move

    def is_halting(self, n) -> bool:
        return self.spec.is_halting(n[2])

    def is_accepting(self, n) -> bool:
        return n[2] == self.spec.q_acc

    def materialize_node(self, index, tier, state, symbol, pred=None):
        if symbol not in self.spec.alphabet:
            return None
        if (tier == 0) != (pred is None):
            raise ValueError("tier-0 nodes have no precedent, others need one")
        tiers = self.table[index]
        while len(tiers) <= tier:
            tiers.append({})
        by_symbol = tiers[tier].setdefault(state, {})
        by_pred = by_symbol.setdefault(symbol, {})
        key = pred[2:4] if pred is not None else (NO_PRED, NO_PRED)
        node = by_pred.get(key)
        if node is None:
            node = (index, tier, state, symbol) + tuple(key)
            by_pred[key] = node
            self.materialized += 1
        return node

    def start_node(self):
        sym = self.tape[0] if self.tape else BLANK
        return self.materialize_node(0, 0, self.spec.q_init, sym)

    def fresh_symbols(self, v) -> list:
        """Symbols a never-visited cell next to ``v`` may hold, in canonical order."""
        j = self.next_index(v)
        if 0 <= j < len(self.tape):
            return [self.tape[j]]
        sch = self.schema
        if sch is None or not sch.in_region(j):
            return [BLANK]
        pos = j - sch.region_start
        if pos == 0:
            prefix = ()
        elif v[0] == j - 1 and v[1] == 0:
            prefix = (v[3],)
        elif v[0] == j - 1 and v[1] == 1:
            prefix = (v[5],)
        else:
            prefix = None
        return sorted(sch.allowed(pos, prefix))

    def floor_next_edges(self, v) -> list:
        j = self.next_index(v)
        q = self.next_state(v)
        out = []
        for s in self.fresh_symbols(v):
            w = self.materialize_node(j, 0, q, s)
            if w is not None:
                out.append((v, w))
        return out

    def next_edges_above_ipreds(self, u, precedents) -> list:
        """Continuations of ``u`` given candidate ceiling edges at its next boundary.

        MARKER means the next cell is fresh. A precedent edge must leave the
        cell ``u`` moves into; others are skipped.
        """
        j = self.next_index(u)
        q = self.next_state(u)
        out = []
        seen = set()
        for p in precedents:
            if p is MARKER:
                cand = self.floor_next_edges(u)
            else:
                v = p[0]
                if v[0] != j:
                    continue
                z = self.materialize_node(v[0], v[1] + 1, q, self.output(v), v)
                assert abs(u[0] - z[0]) == 1
                cand = [(u, z)]
            for e in cand:
                if e not in seen:
                    seen.add(e)
                    out.append(e)
        return out

    def trace_walk(self, certificate=(), max_steps: int = 1 << 20) -> list:
        """The walk a direct run on instance + ``certificate`` follows, as edges."""
        cells = self.tape + list(certificate)
        surface = {}
        v = self.start_node()
        walk = []
        while not self.is_halting(v):
            if len(walk) >= max_steps:
                raise RuntimeError("direct run did not halt")
            surface[v[0]] = v
            j = self.next_index(v)
            q = self.next_state(v)
            p = surface.get(j)
            if p is None:
                sym = cells[j] if 0 <= j < len(cells) else BLANK
                w = self.materialize_node(j, 0, q, sym)
            else:
                w = self.materialize_node(j, p[1] + 1, q, self.output(p), p)
            walk.append((v, w))
            v = w
        return walk


class DynamicGraph:
    """Edge set over a Universe with adjacency and same-cell indexes."""

    __slots__ = ("u", "out", "inc", "by_case", "by_ipred", "n_edges")

    def __init__(self, universe: Universe):
        self.u = universe
        self.out = {}
        self.inc = {}
        self.by_case = {}
        self.by_ipred = {}
        self.n_edges = 0

    # -- mutation --
    def _register(self, n):
        self.by_case.setdefault(n[:4], {})[n] = None
        if n[1]:
            self.by_ipred.setdefault((n[0], n[1] - 1, n[4], n[5]), {})[n] = None

    def _unregister(self, n):
        c = n[:4]
        d = self.by_case[c]
        del d[n]
        if not d:
            del self.by_case[c]
        if n[1]:
            p = (n[0], n[1] - 1, n[4], n[5])
            d = self.by_ipred[p]
            del d[n]
            if not d:
                del self.by_ipred[p]

    def add_edge(self, e) -> bool:
        t, h = e
        outs = self.out.get(t)
        if outs is not None and h in outs:
            return False
        if t not in self.out and t not in self.inc:
            self._register(t)
        if outs is None:
            outs = self.out[t] = {}
        outs[h] = None
        if h not in self.out and h not in self.inc:
            self._register(h)
        ins = self.inc.get(h)
        if ins is None:
            ins = self.inc[h] = {}
        ins[t] = None
        self.n_edges += 1
        return True

    def remove_edge(self, e) -> bool:
        t, h = e
        outs = self.out.get(t)
        if outs is None or h not in outs:
            return False
        del outs[h]
        if not outs:
            del self.out[t]
            if t not in self.inc:
                self._unregister(t)
        ins = self.inc[h]
        del ins[t]
        if not ins:
            del self.inc[h]
            if h not in self.out:
                self._unregister(h)
        self.n_edges -= 1
        return True

    def has_edge(self, e) -> bool:
        outs = self.out.get(e[0])
        return outs is not None and e[1] in outs

    __contains__ = has_edge

    def copy(self) -> "DynamicGraph":
        g = DynamicGraph(self.u)
        g.out = {n: dict(d) for n, d in self.out.items()}
        g.inc = {n: dict(d) for n, d in self.inc.items()}
        g.by_case = {c: dict(d) for c, d in self.by_case.items()}
        g.by_ipred = {c: dict(d) for c, d in self.by_ipred.items()}
        g.n_edges = self.n_edges
        return g

    def subgraph(self, edges) -> "DynamicGraph":
        g = DynamicGraph(self.u)
        for e in edges:
            g.add_edge(e)
        return g

    # -- queries --
    def __len__(self):
        return self.n_edges

    def __bool__(self):
        return self.n_edges > 0

    def edges(self):
        for t, outs in self.out.items():
            for h in outs:
                yield (t, h)

    def edge_set(self) -> set:
        return set(self.edges())

    def nodes(self):
        seen = dict.fromkeys(self.out)
        seen.update(dict.fromkeys(self.inc))
        return list(seen)

    def has_node(self, n) -> bool:
        return n in self.out or n in self.inc

    def out_edges(self, n) -> list:
        return [(n, h) for h in self.out.get(n, ())]

    def in_edges(self, n) -> list:
        return [(t, n) for t in self.inc.get(n, ())]

    def out_degree(self, n) -> int:
        return len(self.out.get(n, ()))

    def in_degree(self, n) -> int:
        return len(self.inc.get(n, ()))

    def prev_edges(self, e) -> list:
        return self.in_edges(e[0])

    def next_edges(self, e) -> list:
        return self.out_edges(e[1])

    def edges_at(self, i: int) -> list:
        """The slice of edges whose edge index is ``i``."""
        found = []
        for n in self.nodes():
            if n[0] == i or n[0] == i + 1:
                for h in self.out.get(n, ()):
                    if min(n[0], h[0]) == i:
                        found.append((n, h))
        return sorted(found)

    def iprec_nodes(self, v) -> list:
        if v[1] == 0:
            return []
        return list(self.by_case.get((v[0], v[1] - 1, v[4], v[5]), ()))

    def isucc_nodes(self, v) -> list:
        return list(self.by_ipred.get(v[:4], ()))

    def iprec_edges(self, e) -> list:
        """Earlier crossings of the same boundary that ``e`` may follow."""
        return list(self._iprec(e))

    def isucc_edges(self, e) -> list:
        """Later crossings of the same boundary that may follow ``e``."""
        return list(self._isucc(e))

    def _iprec(self, e):
        u, v = e
        if not v[1]:
            return
        ui, ut = u[0], u[1]
        ucase = (ui, ut - 1, u[4], u[5]) if ut else None
        out = self.out
        for p in self.by_case.get((v[0], v[1] - 1, v[4], v[5]), ()):
            for w in out.get(p, ()):
                if w[0] == ui and (w == u or w[1] < ut - 1 or w[:4] == ucase):
                    yield (p, w)

    def _isucc(self, e):
        u, v = e
        vi, vt = v[0], v[1]
        vcase = v[:4]
        inc = self.inc
        for s in self.by_ipred.get(u[:4], ()):
            for t in inc.get(s, ()):
                if t[0] == vi and (t == v or t[1] > vt + 1
                                   or (t[1] and (vi, t[1] - 1, t[4], t[5]) == vcase)):
                    yield (t, s)

    def has_iprec(self, e) -> bool:
        return next(self._iprec(e), None) is not None

    def has_isucc(self, e) -> bool:
        return next(self._isucc(e), None) is not None

    def single_iprec(self, e) -> bool:
        it = self._iprec(e)
        return next(it, None) is not None and next(it, None) is None

    def single_isucc(self, e) -> bool:
        it = self._isucc(e)
        return next(it, None) is not None and next(it, None) is None

    def count_precedents(self, e) -> int:
        return len(self.iprec_edges(e))

    def count_succedents(self, e) -> int:
        return len(self.isucc_edges(e))

    # -- structural classes --
    def is_folding(self, n) -> bool:
        outs = self.out.get(n)
        if not outs:
            return False
        ins = self.inc.get(n)
        if not ins:
            return False
        side = next(iter(outs))[0]
        return any(t[0] == side for t in ins)

    def is_merging(self, e) -> bool:
        return len(self.inc.get(e[1], ())) >= 2

    def is_splitting(self, e) -> bool:
        return len(self.out.get(e[0], ())) >= 2

    def is_combined_merging(self, e) -> bool:
        u, v = e
        c = u[:4]
        return any(t != u and t[:4] == c for t in self.inc.get(v, ()))

    def is_combining(self, e) -> bool:
        u, v = e
        vcase, ucase = v[:4], u[:4]
        for w in self.by_case.get(vcase, ()):
            if w == v:
                continue
            if any(t[:4] != ucase for t in self.inc.get(w, ())):
                return True
            if any(h[:4] != vcase for h in self.out.get(u, ())):
                return True
            if self.is_folding(u) != self.is_folding(v):
                return True
        return False

    def is_pseudo_combining(self, e) -> bool:
        v = e[1]
        if self.is_folding(v):
            return False
        return any(self.is_folding(s) for s in self.by_ipred.get(v[:4], ()))

    def is_branch_point(self, e) -> bool:
        """Merging, combining or pseudo-combining: where new walks can join."""
        return self.is_merging(e) or self.is_combining(e) or self.is_pseudo_combining(e)

    def classify(self, e) -> dict:
        return {
            "floor": e[1][1] == 0,
            "merging": self.is_merging(e),
            "splitting": self.is_splitting(e),
            "combined_merging": self.is_combined_merging(e),
            "combining": self.is_combining(e),
            "pseudo_combining": self.is_pseudo_combining(e),
            "folding_at_head": self.is_folding(e[1]),
            "folding_at_tail": self.is_folding(e[0]),
        }

    def dump(self) -> list:
        return [format_edge(e) for e in sorted(self.edges())]


# -- traversal helpers ---------------------------------------------------------

def forward_weak_ceiling_adjacent(g: DynamicGraph, e0) -> list:
    """Candidate ceiling edges at the boundary the head of ``e0`` crosses next."""
    v0 = e0[1]
    if g.u.is_halting(v0):
        return []
    found = {}
    seen = {v0}
    queue = deque([v0])
    while queue:
        n = queue.popleft()
        if n == v0 or g.is_folding(n):
            preds = g.iprec_nodes(n)
            if not preds:
                found[MARKER] = None
            for p in preds:
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        else:
            for e in g.in_edges(n):
                found[e] = None
    return list(found)


def filter_with_path_backward(g: DynamicGraph, anchor, candidates) -> list:
    """Candidates reachable backwards from ``anchor`` without crossing its next boundary."""
    v0 = anchor[1]
    a, b = v0[0], g.u.next_index(v0)
    stop = a if a < b else b
    wanted = set(candidates)
    kept = {MARKER: None} if MARKER in wanted else {}
    seen = {anchor}
    queue = deque([anchor])
    while queue:
        e = queue.popleft()
        if e in wanted:
            kept[e] = None
        if edge_index(e) == stop:
            continue
        for f in g.in_edges(e[0]):
            if f not in seen:
                seen.add(f)
                queue.append(f)
    return [c for c in candidates if c in kept]


def filter_with_path_forward(g: DynamicGraph, anchor, candidates) -> list:
    """Candidates reachable forwards from ``anchor`` before it recrosses its boundary."""
    stop = edge_index(anchor)
    # an edge is reached exactly when its tail is expanded, so search nodes
    tails = {c[0] for c in candidates if c != anchor}
    out = g.out
    start = anchor[1]
    expanded = {start}
    queue = deque([start])
    left = len(tails - expanded)
    while queue and left:
        x = queue.popleft()
        xi = x[0]
        for w in out.get(x, ()):
            if w in expanded or (xi if xi < w[0] else w[0]) == stop:
                continue
            expanded.add(w)
            if w in tails:
                left -= 1
            queue.append(w)
    return [c for c in candidates if c == anchor or c[0] in expanded]
