"""Vertex-disjoint path systems and minimum vertex separators.

``menger(g, a, b)`` computes a maximum family of fully vertex-disjoint
a-b paths (paths share no vertices at all, endpoints included; vertices
in a & b count as length-0 paths) together with a minimum separator of
equal size, via max flow on the vertex-split network.

``internal=True`` switches to internally-disjoint paths: vertices of
a | b are uncapacitated and every edge may carry one path.  In that
variant a vertex separator of matching size need not exist (e.g. when a
and b are adjacent), so the separator field may be None.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, bits


@dataclass(frozen=True)
class PathsAndSeparator:
    paths: tuple[tuple[int, ...], ...]
    separator: frozenset[int] | None

    @property
    def count(self) -> int:
        return len(self.paths)


class _FlowNet:
    def __init__(self, size: int):
        self.head: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int) -> int:
        i = len(self.to)
        self.to.append(v)
        self.cap.append(c)
        self.head[u].append(i)
        self.to.append(u)
        self.cap.append(0)
        self.head[v].append(i + 1)
        return i

    def bfs_augment(self, s: int, t: int) -> bool:
        prev_arc = {s: -1}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for i in self.head[u]:
                    if self.cap[i] <= 0:
                        continue
                    v = self.to[i]
                    if v in prev_arc:
                        continue
                    prev_arc[v] = i
                    if v == t:
                        while v != s:
                            i = prev_arc[v]
                            self.cap[i] -= 1
                            self.cap[i ^ 1] += 1
                            v = self.to[i ^ 1]
                        return True
                    nxt.append(v)
            frontier = nxt
        return False

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while self.bfs_augment(s, t):
            flow += 1
        return flow

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for i in self.head[u]:
                    v = self.to[i]
                    if self.cap[i] > 0 and v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return seen


def menger(g: Graph, a: frozenset[int] | set[int], b: frozenset[int] | set[int],
           internal: bool = False) -> PathsAndSeparator:
    """Maximum disjoint a-b path family plus a minimum separator.

    a and b must be nonempty subsets of V(g).
    """
    if not a or not b:
        raise ValueError("a and b must be nonempty")
    for v in set(a) | set(b):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
    a = frozenset(a)
    b = frozenset(b)
    n = g.n
    s, t = 2 * n, 2 * n + 1
    inf = n + 1
    net = _FlowNet(2 * n + 2)
    split = {}
    for v in range(n):
        c = inf if internal and (v in a or v in b) else 1
        split[v] = net.add(2 * v, 2 * v + 1, c)
    edge_cap = 1 if internal else inf
    for u, v in g.edges():
        net.add(2 * u + 1, 2 * v, edge_cap)
        net.add(2 * v + 1, 2 * u, edge_cap)
    for v in sorted(a):
        net.add(s, 2 * v, inf)
    for v in sorted(b):
        net.add(2 * v + 1, t, inf)
    flow = net.max_flow(s, t)
    paths = _decompose(net, g, a, b, s, t, flow)
    separator: frozenset[int] | None
    if internal:
        reach = net.reachable(s)
        cut = frozenset(v for v in range(n)
                        if 2 * v in reach and 2 * v + 1 not in reach)
        separator = cut if len(cut) == flow else None
    else:
        reach = net.reachable(s)
        separator = frozenset(v for v in range(n)
                              if 2 * v in reach and 2 * v + 1 not in reach)
        assert len(separator) == flow, "flow/cut mismatch"
    return PathsAndSeparator(tuple(paths), separator)


def _decompose(net: _FlowNet, g: Graph, a, b, s: int, t: int,
               flow: int) -> list[tuple[int, ...]]:
    # residual cap of a forward arc i is cap[i]; used iff cap[i^1] > 0
    used = [net.cap[i ^ 1] for i in range(len(net.to))]
    paths = []
    for _ in range(flow):
        # find a source arc with remaining flow
        cur = None
        for i in net.head[s]:
            if i % 2 == 0 and used[i] > 0:
                used[i] -= 1
                cur = net.to[i]
                break
        assert cur is not None
        path = []
        while cur != t:
            if cur % 2 == 0:
                path.append(cur // 2)
            nxt = None
            for i in net.head[cur]:
                if i % 2 == 0 and used[i] > 0:
                    used[i] -= 1
                    nxt = net.to[i]
                    break
            assert nxt is not None, "broken flow decomposition"
            cur = nxt
        paths.append(tuple(path))
    paths.sort()
    return paths


def separates(g: Graph, a, b, cut: frozenset[int]) -> bool:
    """True iff removing ``cut`` leaves no a-b path (shared a/b vertices
    must be inside the cut)."""
    a_left = set(a) - cut
    b_left = set(b) - cut
    if set(a) & set(b) - cut:
        return False
    if not a_left or not b_left:
        return True
    blocked = 0
    for v in cut:
        blocked |= 1 << v
    mask = g.full_mask() & ~blocked
    frontier = 0
    for v in a_left:
        frontier |= 1 << v
    seen = frontier
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= mask & ~seen
        for v in b_left:
            if nxt >> v & 1:
                return False
        seen |= nxt
        frontier = nxt
    return True
