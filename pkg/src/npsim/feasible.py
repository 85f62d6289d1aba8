"""Cover edges, step-pendant elimination and walk pruning."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import DynamicGraph, edge_index


class CoverIndexMap:
    """Cover edges bucketed by edge index, remembering insertion order."""

    def __init__(self):
        self.by_index = {}
        self.order = {}

    def add(self, e) -> bool:
        if e in self.order:
            return False
        self.order[e] = None
        self.by_index.setdefault(edge_index(e), {})[e] = None
        return True

    def __contains__(self, e) -> bool:
        return e in self.order

    def __iter__(self):
        return iter(self.order)

    def __len__(self):
        return len(self.order)

    def at(self, i: int) -> list:
        return list(self.by_index.get(i, ()))


@dataclass
class FeasibleGraph:
    graph: DynamicGraph
    V0: tuple
    Ef: tuple
    cover: CoverIndexMap = field(default_factory=CoverIndexMap)

    def __bool__(self):
        return bool(self.graph)

    def __contains__(self, e):
        return self.graph.has_edge(e)

    def __len__(self):
        return len(self.graph)


def weakly_ceiling_adjacent(g: DynamicGraph, e, finals) -> list:
    """Edges that can be the last crossing of a boundary next to ``e``'s tail or head."""
    v, w = e
    i = edge_index(e)
    found = {}
    # the edge that brought the walk into v from the side e does not return to
    for f in g.in_edges(v):
        if edge_index(f) != i:
            found[f] = None
    starts = []
    if g.is_folding(v):
        starts.append(v)
    if e in finals:
        starts.append(w)
    for s in starts:
        seen = {s}
        queue = deque(g.iprec_nodes(s))
        seen.update(queue)
        while queue:
            n = queue.popleft()
            if g.is_folding(n):
                for p in g.iprec_nodes(n):
                    if p not in seen:
                        seen.add(p)
                        queue.append(p)
            else:
                for f in g.in_edges(n):
                    found[f] = None
    return list(found)


def collect_edges_with_path(g: DynamicGraph, candidates: CoverIndexMap, finals) -> CoverIndexMap:
    out = CoverIndexMap()
    seen = set()
    queue = deque(e for e in finals if g.has_edge(e))
    while queue:
        e = queue.popleft()
        if e in seen:
            continue
        seen.add(e)
        if e in candidates:
            out.add(e)
        queue.extend(g.in_edges(e[0]))
    return out


def compute_cover_edges(g: DynamicGraph, finals) -> CoverIndexMap:
    finals = [e for e in finals if g.has_edge(e)]
    closure = CoverIndexMap()
    for e in finals:
        closure.add(e)
    final_set = set(finals)
    queue = deque(finals)
    while queue:
        f = queue.popleft()
        for e in weakly_ceiling_adjacent(g, f, final_set):
            if closure.add(e):
                queue.append(e)
    return collect_edges_with_path(g, closure, finals)


def step_pendant_edges_with_reachable_graph(g: DynamicGraph, cover, V0, finals):
    """Return (pendant edges, subgraph reachable from V0 by Prev/Next moves).

    Pendant conditions are judged inside the reachable subgraph, so an index
    successor that can never be reached does not keep an edge alive.
    """
    V0 = set(V0)
    final_set = set(finals)
    out, inc = g.out, g.inc
    reached = {}
    queue = deque()
    for v in sorted(V0):
        queue.extend((v, w) for w in out.get(v, ()))
    while queue:
        e = queue.popleft()
        if e in reached:
            continue
        reached[e] = None
        u, v = e
        if e not in final_set:
            queue.extend((v, w) for w in out.get(v, ()))
        if u not in V0:
            queue.extend((t, u) for t in inc.get(u, ()))
    h = _restrict(g, reached)
    pendant = []
    for e in reached:
        u, v = e
        if ((e not in cover and not h.has_isucc(e))
                or (v[1] > 0 and not h.has_iprec(e))
                or (e not in final_set and v not in h.out)
                or (u not in V0 and u not in h.inc)):
            pendant.append(e)
    return pendant, h


def _restrict(g: DynamicGraph, keep) -> DynamicGraph:
    """Copy of ``g`` holding only the edges in ``keep``, in ``g``'s order."""
    if len(keep) == g.n_edges:
        return g.copy()
    h = DynamicGraph(g.u)
    for e in g.edges():
        if e in keep:
            h.add_edge(e)
    return h


def compute_feasible_graph(g: DynamicGraph, V0, finals, removal_seed=()) -> FeasibleGraph:
    V0 = tuple(V0)
    finals = [e for e in dict.fromkeys(finals) if g.has_edge(e)]
    cover = compute_cover_edges(g, finals)
    pendant, h = step_pendant_edges_with_reachable_graph(g, cover, V0, finals)
    live = {e: None for e in finals if h.has_edge(e)}
    if not live:
        return FeasibleGraph(DynamicGraph(g.u), V0, (), cover)
    queue = deque(pendant)
    queue.extend(removal_seed)
    while queue:
        e = queue.popleft()
        if not h.has_edge(e):
            continue
        if not h.is_merging(e):
            queue.extend(h.out_edges(e[1]))
        for f in h.isucc_edges(e):
            if h.single_iprec(f):
                queue.append(f)
        for f in h.iprec_edges(e):
            if f not in cover and h.single_isucc(f):
                queue.append(f)
        if not h.is_splitting(e):
            queue.extend(f for f in h.in_edges(e[0]) if f not in live)
        h.remove_edge(e)
        if e in live:
            del live[e]
            if not live:
                return FeasibleGraph(DynamicGraph(g.u), V0, (), cover)
    return FeasibleGraph(h, V0, tuple(live), cover)


def first_merging_or_final_edge(g: DynamicGraph, walk) -> tuple:
    for e in walk[:-1]:
        if g.has_edge(e) and g.is_merging(e):
            return e
    return walk[-1]


def add_final_edges_of_obsolete_walks(gu: DynamicGraph, g: DynamicGraph, V0) -> list:
    """Protect the first pruned edge on each branch leaving ``g`` (mutates ``g``)."""
    added = []
    seen = set()
    queue = deque()
    for v in sorted(V0):
        queue.extend(gu.out_edges(v))
    while queue:
        e = queue.popleft()
        if e in seen:
            continue
        seen.add(e)
        if g.has_edge(e):
            queue.extend(gu.out_edges(e[1]))
        elif e[1][1] > 0 and g.iprec_nodes(e[1]):
            g.add_edge(e)
            added.append(e)
    return added


def prune_walk(gu: DynamicGraph, g: DynamicGraph, V0, finals, walk,
               preserve_obsolete: bool) -> FeasibleGraph:
    cut = first_merging_or_final_edge(g, walk)
    work = g.copy()
    obsolete = []
    if preserve_obsolete:
        obsolete = add_final_edges_of_obsolete_walks(gu, work, V0)
    work.remove_edge(cut)
    result = compute_feasible_graph(work, V0, list(finals) + obsolete)
    for e in obsolete:
        result.graph.remove_edge(e)
    result.Ef = tuple(e for e in result.Ef if e not in set(obsolete))
    return result
