"""Simple undirected graphs on dense integer vertex ids.

The representation is a tuple of adjacency bitmasks, one Python int per
vertex.  All workloads here are desk scale (n <= ~40), where bitmask
adjacency makes subset-indexed memoization (treewidth, model search)
cheap.  Graphs are immutable; every operation returns a new Graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

VertexSet = frozenset  # vertex sets are plain frozensets of ints

INF = math.inf


class GraphFormatError(ValueError):
    """Malformed graph6 / edge-list input."""


class GraphOpError(ValueError):
    """A graph operation referenced a missing vertex or edge."""


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of ``mask`` in ascending order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n != len(self.adj):
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, a in enumerate(self.adj):
            if a & (1 << v):
                raise ValueError(f"loop at vertex {v}")
            if a & ~full:
                raise ValueError(f"adjacency of {v} references vertices >= n")
        for v, a in enumerate(self.adj):
            for u in bits(a):
                if not self.adj[u] & (1 << v):
                    raise ValueError(f"asymmetric adjacency at {u},{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphOpError(f"vertex index out of range: {u},{v}")
            if u == v:
                raise GraphOpError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighborhood_mask(self, vertex_mask: int) -> int:
        """Union of neighbors of every vertex in ``vertex_mask``, minus the set itself."""
        out = 0
        for v in bits(vertex_mask):
            out |= self.adj[v]
        return out & ~vertex_mask

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# parsing / serialization
# ---------------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _g6_read_n(data: bytes) -> tuple[int, int]:
    """Decode the graph6 vertex-count prefix, returning (n, bytes consumed)."""
    if not data:
        raise GraphFormatError("empty graph6 string")
    b0 = data[0]
    if b0 == 126:
        if len(data) >= 2 and data[1] == 126:
            if len(data) < 8:
                raise GraphFormatError("truncated graph6 size field")
            vals = [c - 63 for c in data[2:8]]
            if any(not 0 <= x <= 63 for x in vals):
                raise GraphFormatError("graph6 size byte out of range")
            n = 0
            for x in vals:
                n = (n << 6) | x
            return n, 8
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 size field")
        vals = [c - 63 for c in data[1:4]]
        if any(not 0 <= x <= 63 for x in vals):
            raise GraphFormatError("graph6 size byte out of range")
        n = 0
        for x in vals:
            n = (n << 6) | x
        return n, 4
    if not 63 <= b0 <= 125:
        raise GraphFormatError(f"bad graph6 size byte {b0}")
    return b0 - 63, 1


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (optional >>graph6<< header), bit-exact."""
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    data = s.encode("ascii", errors="strict") if s else b""
    n, off = _g6_read_n(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[off:]
    if len(body) != nbytes:
        raise GraphFormatError(f"graph6 body has {len(body)} bytes, expected {nbytes}")
    bitstream = 0
    for c in body:
        if not 63 <= c <= 126:
            raise GraphFormatError(f"graph6 byte {c} out of range")
        bitstream = (bitstream << 6) | (c - 63)
    pad = 6 * nbytes - nbits
    if pad and bitstream & ((1 << pad) - 1):
        raise GraphFormatError("nonzero padding bits in graph6 body")
    bitstream >>= pad
    adj = [0] * n
    # bits run over the upper triangle in column order: (0,1),(0,2),(1,2),...
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bitstream >> pos & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            pos -= 1
    return Graph(n, tuple(adj))


def to_graph6(g: Graph) -> str:
    """Encode in canonical graph6 (no header), inverse of parse_graph6."""
    n = g.n
    if n <= 62:
        head = bytes([n + 63])
    elif n <= 258047:
        head = bytes([126, (n >> 12) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    else:
        head = bytes([126, 126] + [(n >> (6 * k) & 63) + 63 for k in range(5, -1, -1)])
    bitstream = 0
    nbits = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            bitstream = (bitstream << 1) | (g.adj[i] >> j & 1)
    pad = (6 - nbits % 6) % 6
    bitstream <<= pad
    body = bytearray()
    for k in range((nbits + pad) // 6 - 1, -1, -1):
        body.append((bitstream >> (6 * k) & 63) + 63)
    return (head + bytes(body)).decode("ascii")


def parse_edgelist(text: str) -> Graph:
    """Whitespace-separated "u v" lines, 0-based ids, '#' comments.

    Duplicate edges are merged; loops are rejected.  n is one plus the
    largest vertex id seen.
    """
    edges = []
    maxv = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex id in {raw!r}")
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: vertex index out of range")
        if u == v:
            raise GraphFormatError(f"line {lineno}: loop at vertex {u}")
        maxv = max(maxv, u, v)
        edges.append((u, v))
    return Graph.from_edges(maxv + 1, edges)


def parse_graph(text: str, format: str) -> Graph:
    if format == "graph6":
        return parse_graph6(text)
    if format == "edgelist":
        return parse_edgelist(text)
    raise GraphFormatError(f"unknown format {format!r}")


# ---------------------------------------------------------------------------
# elementary minor operations
# ---------------------------------------------------------------------------

def _renumber(n: int, adj: list[int], dropped: int) -> Graph:
    """Remove vertex ``dropped`` and shift higher ids down by one."""
    low = (1 << dropped) - 1
    out = []
    for v in range(n):
        if v == dropped:
            continue
        a = adj[v]
        out.append((a & low) | ((a >> 1) & ~low))
    return Graph(n - 1, tuple(out))


def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise GraphOpError(f"no vertex {v}")
    adj = [a & ~(1 << v) for a in g.adj]
    return _renumber(g.n, adj, v)


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise GraphOpError(f"no edge {u},{v}")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph(g.n, tuple(adj))


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Contract uv into min(u,v); loops and parallel edges are dropped."""
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise GraphOpError(f"no edge {u},{v}")
    keep, drop = min(u, v), max(u, v)
    adj = list(g.adj)
    merged = (adj[keep] | adj[drop]) & ~(1 << keep) & ~(1 << drop)
    adj[keep] = merged
    for w in bits(adj[drop]):
        adj[w] &= ~(1 << drop)
    for w in bits(merged):
        adj[w] |= 1 << keep
    adj[drop] = 0
    return _renumber(g.n, adj, drop)


def minor_op(g: Graph, op: tuple) -> Graph:
    """Apply one elementary minor operation.

    ``op`` is ("delete_vertex", v), ("delete_edge", u, v) or
    ("contract_edge", u, v).
    """
    kind = op[0]
    if kind == "delete_vertex":
        return delete_vertex(g, op[1])
    if kind == "delete_edge":
        return delete_edge(g, op[1], op[2])
    if kind == "contract_edge":
        return contract_edge(g, op[1], op[2])
    raise GraphOpError(f"unknown minor op {kind!r}")


def all_minor_ops(g: Graph) -> list[tuple]:
    """Every single minor operation, in the fixed order used by the minimizer:
    vertex deletions, edge deletions, edge contractions, each ascending."""
    ops: list[tuple] = [("delete_vertex", v) for v in range(g.n)]
    ops += [("delete_edge", u, v) for u, v in g.edges()]
    ops += [("contract_edge", u, v) for u, v in g.edges()]
    return ops


# ---------------------------------------------------------------------------
# classical subroutines
# ---------------------------------------------------------------------------

def components(g: Graph, within: int | None = None) -> list[frozenset[int]]:
    """Connected components (as vertex sets), ordered by smallest member.

    ``within`` restricts to an induced vertex mask.
    """
    todo = g.full_mask() if within is None else within
    out = []
    while todo:
        start = todo & -todo
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= todo & ~comp
            comp |= nxt
            frontier = nxt
        out.append(frozenset(bits(comp)))
        todo &= ~comp
    return out


def component_masks(g: Graph, within: int | None = None) -> list[int]:
    return [mask_of(c) for c in components(g, within)]


def is_connected_mask(g: Graph, mask: int) -> bool:
    if mask == 0:
        return False
    start = mask & -mask
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= mask & ~comp
        comp |= nxt
        frontier = nxt
    return comp == mask


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph plus the sorted list mapping new ids to old ids."""
    order = sorted(set(vertices))
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for i, v in enumerate(order):
        for u in bits(g.adj[v]):
            j = index.get(u)
            if j is not None:
                adj[i] |= 1 << j
    return Graph(len(order), tuple(adj)), order


def disjoint_union(graphs: Iterable[Graph]) -> Graph:
    adj: list[int] = []
    off = 0
    for g in graphs:
        adj.extend(a << off for a in g.adj)
        off += g.n
    return Graph(off, tuple(adj))


def girth(g: Graph, within: int | None = None) -> int | float:
    """Length of a shortest cycle; math.inf for forests."""
    cyc = shortest_cycle(g, within)
    return len(cyc) if cyc is not None else INF


def shortest_cycle(g: Graph, within: int | None = None) -> list[int] | None:
    """Some shortest cycle as a vertex list, or None if acyclic.

    For every edge uv, a shortest u-v path avoiding that edge plus uv is a
    candidate; the global minimum over edges is exact.
    """
    mask = g.full_mask() if within is None else within
    best: list[int] | None = None
    for u in bits(mask):
        for v in bits(g.adj[u] & mask):
            if v < u:
                continue
            cap = None if best is None else len(best) - 1
            path = _shortest_path_avoiding(g, mask, u, v, cap)
            if path is not None and (best is None or len(path) < len(best)):
                best = path
                if len(best) == 3:
                    return best
    return best


def _shortest_path_avoiding(g: Graph, mask: int, u: int, v: int,
                            cap: int | None) -> list[int] | None:
    """Shortest u-v path within ``mask`` not using the edge uv; None if no
    path shorter than ``cap`` edges exists."""
    parent = {u: -1}
    frontier = [u]
    depth = 0
    while frontier:
        depth += 1
        if cap is not None and depth > cap:
            return None
        nxt = []
        for w in frontier:
            forbidden = (1 << v) if w == u else 0
            for x in bits(g.adj[w] & mask & ~forbidden):
                if x in parent:
                    continue
                parent[x] = w
                if x == v:
                    path = [x]
                    while path[-1] != u:
                        path.append(parent[path[-1]])
                    return path[::-1]
                nxt.append(x)
        frontier = nxt
    return None
