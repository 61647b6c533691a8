"""Exact treewidth via elimination orderings.

Branch and bound over elimination prefixes with memoization on the set of
eliminated vertices (the fill graph at any point only depends on that set).
Upper bound from min-fill, lower bound from minor-min-width, simplicial
vertices eliminated greedily.  Exponential; guarded by a vertex cap.
"""

from __future__ import annotations

from .graphs import Graph, bits, component_masks, induced_subgraph


class TreewidthCapError(ValueError):
    """Graph exceeds the configured exact-treewidth cap."""


def treewidth_exact(g: Graph, cap: int = 16) -> int:
    """Exact treewidth.  Raises TreewidthCapError when g.n > cap."""
    if g.n > cap:
        raise TreewidthCapError(f"n={g.n} exceeds treewidth cap {cap}")
    if g.n == 0:
        return -1
    best = 0
    for comp in component_masks(g):
        sub, _ = induced_subgraph(g, bits(comp))
        best = max(best, _tw_connected(sub))
    return best


def _tw_connected(g: Graph) -> int:
    n = g.n
    if n == 1:
        return 0
    adj = list(g.adj)
    lb = _minor_min_width(adj[:])
    ub, _ = _min_fill_order(adj[:])
    if lb >= ub:
        return ub
    solver = _Solver(adj, ub)
    solver.search(adj, 0, 0, lb)
    return solver.best


def _eliminate(adj: list[int], v: int) -> None:
    """Turn v's neighborhood into a clique and drop v (in place)."""
    nb = adj[v]
    for u in bits(nb):
        adj[u] = (adj[u] | nb) & ~(1 << u) & ~(1 << v)
    adj[v] = 0


def _min_fill_order(adj: list[int]) -> tuple[int, list[int]]:
    """Greedy elimination order by fewest fill edges; returns (width, order)."""
    n = len(adj)
    alive = [v for v in range(n) if True]
    width = 0
    order = []
    remaining = set(range(n))
    while remaining:
        best_v, best_fill, best_deg = -1, None, None
        for v in sorted(remaining):
            nb = adj[v]
            deg = nb.bit_count()
            fill = 0
            for u in bits(nb):
                fill += (nb & ~adj[u] & ~(1 << u)).bit_count()
            fill //= 2
            if best_fill is None or (fill, deg) < (best_fill, best_deg):
                best_v, best_fill, best_deg = v, fill, deg
        width = max(width, adj[best_v].bit_count())
        _eliminate(adj, best_v)
        order.append(best_v)
        remaining.discard(best_v)
    return width, order


def _minor_min_width(adj: list[int]) -> int:
    """Lower bound: repeatedly contract a min-degree vertex into its
    least-connected neighbor, tracking the largest min-degree seen."""
    remaining = {v for v in range(len(adj)) if True}
    lb = 0
    while remaining:
        v = min(remaining, key=lambda x: (adj[x].bit_count(), x))
        d = adj[v].bit_count()
        lb = max(lb, d)
        if d == 0:
            remaining.discard(v)
            adj[v] = 0
            continue
        u = min(bits(adj[v]), key=lambda x: ((adj[x] & adj[v]).bit_count(), x))
        # contract v into u
        merged = (adj[u] | adj[v]) & ~(1 << u) & ~(1 << v)
        for w in bits(adj[v]):
            adj[w] &= ~(1 << v)
        for w in bits(merged):
            adj[w] |= 1 << u
        adj[u] = merged
        adj[v] = 0
        remaining.discard(v)
    return lb


class _Solver:
    def __init__(self, adj0: list[int], ub: int):
        self.n = len(adj0)
        self.best = ub
        self.memo: dict[int, int] = {}

    def search(self, adj: list[int], eliminated: int, width: int, lb: int) -> None:
        if width >= self.best:
            return
        seen = self.memo.get(eliminated)
        if seen is not None and seen <= width:
            return
        self.memo[eliminated] = width
        alive = [v for v in range(self.n) if not eliminated >> v & 1]
        if len(alive) <= 1:
            self.best = min(self.best, width)
            return
        # forced moves: a simplicial vertex can always go first
        for v in alive:
            nb = adj[v]
            if all(nb & ~adj[u] & ~(1 << u) == 0 for u in bits(nb)):
                w = max(width, nb.bit_count())
                if w >= self.best:
                    return
                nxt = adj[:]
                _eliminate(nxt, v)
                self.search(nxt, eliminated | 1 << v, w, lb)
                return
        if max(width, _minor_min_width(adj[:])) >= self.best:
            return
        order = sorted(alive, key=lambda v: (adj[v].bit_count(), v))
        for v in order:
            w = max(width, adj[v].bit_count())
            if w >= self.best:
                continue
            nxt = adj[:]
            _eliminate(nxt, v)
            self.search(nxt, eliminated | 1 << v, w, lb)
