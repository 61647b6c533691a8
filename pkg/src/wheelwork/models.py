"""Minor models (branch-set certificates) and exact model finders.

A model of a pattern H in a host G assigns to every H-vertex a nonempty
connected branch set in G, pairwise disjoint, with a G-edge between the
branch sets of every H-edge.

Two independent finders are provided and kept algorithmically separate on
purpose, so they can serve as mutual oracles:

* ``find_minor_model``    generic recursive branch-set assignment with
                          connectivity/linkage pruning, exact for any H;
* ``find_wheel_model``    wheel-specific search that enumerates rim cycles
                          and hub attachments instead of generic branch
                          sets (a wheel minor exists iff some cycle C
                          leaves a component with >= t neighbors on C).

``has_k4_minor`` is a linear-time decision (series-parallel reduction)
used by the wheel finder as an absence shortcut for t = 3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

from .deadline import Deadline, NO_DEADLINE
from .graphs import (Graph, bits, component_masks, induced_subgraph,
                     is_connected_mask, mask_of)


# ---------------------------------------------------------------------------
# patterns
# ---------------------------------------------------------------------------

def wheel_pattern(t: int) -> Graph:
    """The wheel with t spokes: rim cycle 0..t-1 plus hub t; t+1 vertices,
    2t edges.  t >= 3."""
    if t < 3:
        raise ValueError(f"wheel needs t >= 3, got {t}")
    edges = [(i, (i + 1) % t) for i in range(t)] + [(i, t) for i in range(t)]
    return Graph.from_edges(t + 1, edges)


def as_wheel(h: Graph) -> int | None:
    """Return t if h is (isomorphic to) the wheel with t spokes, else None."""
    t = h.n - 1
    if t < 3 or h.m != 2 * t:
        return None
    hubs = [v for v in range(h.n) if h.degree(v) == t]
    for hub in hubs:
        rim = [v for v in range(h.n) if v != hub]
        if any(h.degree(v) != 3 for v in rim):
            continue
        # rim must induce a single cycle
        sub, _ = induced_subgraph(h, rim)
        if all(sub.degree(v) == 2 for v in range(sub.n)) and \
                is_connected_mask(sub, sub.full_mask()):
            return t
    return None


def cycle_rank(g: Graph, mask: int | None = None) -> int:
    """First Betti number m - n + c of the induced submask; minor-monotone,
    so a pattern of rank r cannot live in a component of smaller rank."""
    if mask is None:
        mask = g.full_mask()
    n = mask.bit_count()
    m = sum((g.adj[v] & mask).bit_count() for v in bits(mask)) // 2
    return m - n + len(component_masks(g, mask))


# ---------------------------------------------------------------------------
# model certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Model:
    host: Graph
    pattern: Graph
    branch_sets: dict[int, frozenset[int]]

    def vertex_set(self) -> frozenset[int]:
        out: set[int] = set()
        for s in self.branch_sets.values():
            out |= s
        return frozenset(out)

    @property
    def size(self) -> int:
        return len(self.vertex_set())

    def vertex_mask(self) -> int:
        return mask_of(self.vertex_set())

    def to_json(self) -> str:
        return json.dumps({str(x): sorted(s) for x, s in
                           sorted(self.branch_sets.items())})

    @classmethod
    def from_json(cls, host: Graph, pattern: Graph, text: str) -> "Model":
        raw = json.loads(text)
        return cls(host, pattern,
                   {int(x): frozenset(vs) for x, vs in raw.items()})


class ModelCheck:
    """Boolean verification result carrying a falsifying witness."""

    def __init__(self, ok: bool, witness: str | None = None):
        self.ok = ok
        self.witness = witness

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self):
        return "ModelCheck(ok)" if self.ok else f"ModelCheck({self.witness})"


def verify_model(g: Graph, h: Graph, m: Model) -> ModelCheck:
    """Re-check all three model invariants by direct set/edge inspection."""
    if set(m.branch_sets) != set(range(h.n)):
        return ModelCheck(False, "branch sets do not cover the pattern vertices")
    masks = {}
    for x, s in m.branch_sets.items():
        if not s:
            return ModelCheck(False, f"empty branch set for pattern vertex {x}")
        if any(not 0 <= v < g.n for v in s):
            return ModelCheck(False, f"branch set of {x} leaves the host")
        masks[x] = mask_of(s)
    items = sorted(masks.items())
    for i, (x, mx) in enumerate(items):
        for y, my in items[i + 1:]:
            if mx & my:
                ov = sorted(bits(mx & my))
                return ModelCheck(False, f"branch sets {x} and {y} overlap on {ov}")
    for x, mx in items:
        if not is_connected_mask(g, mx):
            return ModelCheck(False, f"branch set of {x} is disconnected")
    for x, y in h.edges():
        if not g.neighborhood_mask(masks[x]) & masks[y]:
            return ModelCheck(False, f"no host edge for pattern edge {x}{y}")
    return ModelCheck(True)


# ---------------------------------------------------------------------------
# K4 decision by series-parallel reduction
# ---------------------------------------------------------------------------

def has_k4_minor(g: Graph, within: int | None = None) -> bool:
    """True iff the induced submask has a K4 minor.

    Repeatedly delete degree<=1 vertices and bypass degree-2 vertices;
    a nonempty remainder has minimum degree 3 and therefore a K4 minor,
    an empty remainder means the graph is series-parallel.
    """
    mask = g.full_mask() if within is None else within
    adj = {v: g.adj[v] & mask for v in bits(mask)}
    stack = sorted(adj)
    while stack:
        v = stack.pop()
        if v not in adj or adj[v].bit_count() > 2:
            continue
        nb = [u for u in bits(adj[v])]
        del adj[v]
        for u in nb:
            adj[u] &= ~(1 << v)
        if len(nb) == 2:
            a, b = nb
            if not adj[a] >> b & 1:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
            else:
                stack += [a, b]
        else:
            stack += nb
    return bool(adj)


# ---------------------------------------------------------------------------
# generic exact finder
# ---------------------------------------------------------------------------

def _transposition_is_automorphism(h: Graph, a: int, b: int) -> bool:
    def p(v):
        return b if v == a else a if v == b else v
    return all(h.adj[p(u)] >> p(v) & 1 for u, v in h.edges())


class _GenericFinder:
    """Recursive branch-set assignment over pattern vertices in descending
    degree order, with forward checking, size budgets, and symmetry
    breaking over transposition automorphisms of the pattern."""

    def __init__(self, g: Graph, h: Graph, budget: int | None,
                 deadline: Deadline):
        self.g = g
        self.h = h
        self.budget = budget
        self.deadline = deadline
        self.order = sorted(range(h.n), key=lambda x: (-h.degree(x), x))
        pos = {x: j for j, x in enumerate(self.order)}
        self.earlier = [[pos[y] for y in bits(h.adj[x]) if pos[y] < j]
                        for j, x in enumerate(self.order)]
        self.later_count = [sum(1 for y in bits(h.adj[x]) if pos[y] > j)
                            for j, x in enumerate(self.order)]
        self.sym_prev = []
        for j, x in enumerate(self.order):
            prev = -1
            for i in range(j):
                if _transposition_is_automorphism(h, self.order[i], x):
                    prev = i
            self.sym_prev.append(prev)
        self.sets: list[int] = [0] * h.n
        self.nbm: list[int] = [0] * h.n
        self.roots: list[int] = [0] * h.n
        self.found: dict[int, frozenset[int]] | None = None

    def run(self, allowed: int) -> dict[int, frozenset[int]] | None:
        self.found = None
        self._level(0, allowed, 0)
        return self.found

    def _level(self, j: int, free: int, used: int) -> bool:
        if j == self.h.n:
            self.found = {self.order[i]: frozenset(bits(self.sets[i]))
                          for i in range(self.h.n)}
            return True
        rem = self.h.n - j - 1
        max_size = free.bit_count() - rem
        if self.budget is not None:
            max_size = min(max_size, self.budget - used - rem)
        if max_size <= 0:
            return False
        minroot = 0
        if self.sym_prev[j] >= 0:
            minroot = self.roots[self.sym_prev[j]] + 1
        req = [self.nbm[i] for i in self.earlier[j]]
        if minroot >= self.g.n:
            return False
        for root in bits(free & -(1 << minroot)):
            if self._grow(j, free, used, root, 1 << root,
                          self.g.adj[root] & free & -(1 << (root + 1)),
                          req, max_size):
                return True
        return False

    def _grow(self, j: int, free: int, used: int, root: int, s_mask: int,
              ext: int, req: list[int], max_size: int) -> bool:
        self.deadline.check()
        nbm = self.g.neighborhood_mask(s_mask)
        if all(nbm_i & s_mask for nbm_i in req):
            if self._accept(j, free, used, root, s_mask, nbm):
                return True
        if s_mask.bit_count() >= max_size:
            return False
        above = -(1 << (root + 1))
        cover = s_mask | nbm
        rest = ext
        while rest:
            wbit = rest & -rest
            rest ^= wbit
            w = wbit.bit_length() - 1
            new_ext = rest | (self.g.adj[w] & free & above & ~cover)
            if self._grow(j, free, used, root, s_mask | wbit, new_ext,
                          req, max_size):
                return True
        return False

    def _accept(self, j: int, free: int, used: int, root: int,
                s_mask: int, nbm: int) -> bool:
        self.sets[j] = s_mask
        self.nbm[j] = nbm
        self.roots[j] = root
        free2 = free & ~s_mask
        # forward check: every already-assigned neighbor of a future vertex
        # must still have free vertices next to it
        for k in range(j + 1, self.h.n):
            for i in self.earlier[k]:
                if i <= j and not self.nbm[i] & free2:
                    return False
        return self._level(j + 1, free2, used + s_mask.bit_count())


def find_minor_model(g: Graph, h: Graph, budget: int | None = None,
                     deadline: Deadline = NO_DEADLINE,
                     within: int | None = None) -> Model | None:
    """Exact generic minor test; returns a verified branch-set model or
    None when h is not a minor of (the induced submask of) g."""
    mask = g.full_mask() if within is None else within
    if h.n == 0:
        return Model(g, h, {})
    if budget is not None and budget < h.n:
        return None
    hrank = h.m - h.n + len(component_masks(h))
    n_allowed = mask.bit_count()
    if n_allowed < h.n:
        return None
    h_conn = len(component_masks(h)) == 1
    comps = component_masks(g, mask)
    if h_conn:
        for comp in comps:
            if comp.bit_count() < h.n or cycle_rank(g, comp) < hrank:
                continue
            finder = _GenericFinder(g, h, budget, deadline)
            res = finder.run(comp)
            if res is not None:
                return Model(g, h, res)
        return None
    if cycle_rank(g, mask) < hrank:
        return None
    finder = _GenericFinder(g, h, budget, deadline)
    res = finder.run(mask)
    return Model(g, h, res) if res is not None else None


# ---------------------------------------------------------------------------
# cycle enumeration (canonical: rooted at the cycle minimum, direction with
# second vertex < last vertex)
# ---------------------------------------------------------------------------

def iter_cycles(g: Graph, mask: int, lo: int = 3, hi: int | None = None,
                deadline: Deadline = NO_DEADLINE,
                shortest_first: bool = False) -> Iterator[list[int]]:
    """All cycles within ``mask`` with lo <= length <= hi, each exactly once.

    With shortest_first=True, runs iterative deepening so short cycles come
    out before long ones (worth it when the consumer exits early).
    """
    if hi is None:
        hi = mask.bit_count()
    if hi < max(lo, 3):
        return
    if shortest_first:
        for length in range(max(lo, 3), hi + 1):
            yield from _cycles_len(g, mask, length, length, deadline)
    else:
        yield from _cycles_len(g, mask, max(lo, 3), hi, deadline)


def _cycles_len(g: Graph, mask: int, lo: int, hi: int,
                deadline: Deadline) -> Iterator[list[int]]:
    path: list[int] = []

    def dfs(root: int, v: int, used: int) -> Iterator[list[int]]:
        deadline.check()
        for u in bits(g.adj[v] & mask & -(1 << root << 1)):
            if used >> u & 1:
                continue
            path.append(u)
            if len(path) >= lo and g.adj[u] >> root & 1 and path[1] < u:
                yield path.copy()
            if len(path) < hi:
                yield from dfs(root, u, used | 1 << u)
            path.pop()

    for root in bits(mask):
        path.clear()
        path.append(root)
        yield from dfs(root, root, 1 << root)


# ---------------------------------------------------------------------------
# wheel-specific finder
# ---------------------------------------------------------------------------

def _attachments(g: Graph, hub_mask: int, cyc_mask: int) -> int:
    return g.neighborhood_mask(hub_mask) & cyc_mask


def _shrink_hub(g: Graph, hub_mask: int, cyc_mask: int, t: int) -> int:
    """Drop vertices (ascending) while the hub stays connected with >= t
    attachment vertices on the cycle."""
    changed = True
    while changed:
        changed = False
        for v in bits(hub_mask):
            cand = hub_mask & ~(1 << v)
            if not cand:
                continue
            if is_connected_mask(g, cand) and \
                    _attachments(g, cand, cyc_mask).bit_count() >= t:
                hub_mask = cand
                changed = True
    return hub_mask


def _hub_within(g: Graph, comp: int, cyc_mask: int, t: int,
                cap: int, deadline: Deadline) -> int | None:
    """Some connected S in ``comp`` with >= t attachments and |S| <= cap,
    or None; exact (exhaustive connected-subset enumeration with size cap)."""
    if cap <= 0:
        return None
    for root in bits(comp):
        res = _hub_grow(g, comp, cyc_mask, t, cap, root,
                        1 << root, g.adj[root] & comp & -(1 << root << 1),
                        deadline)
        if res is not None:
            return res
    return None


def _hub_grow(g: Graph, comp: int, cyc_mask: int, t: int, cap: int,
              root: int, s_mask: int, ext: int, deadline: Deadline) -> int | None:
    deadline.check()
    if _attachments(g, s_mask, cyc_mask).bit_count() >= t:
        return s_mask
    if s_mask.bit_count() >= cap:
        return None
    cover = s_mask | (g.neighborhood_mask(s_mask) & comp)
    rest = ext
    while rest:
        wbit = rest & -rest
        rest ^= wbit
        w = wbit.bit_length() - 1
        new_ext = rest | (g.adj[w] & comp & -(1 << (root + 1)) & ~cover)
        res = _hub_grow(g, comp, cyc_mask, t, cap, root, s_mask | wbit,
                        new_ext, deadline)
        if res is not None:
            return res
    return None


def _model_from_cycle_hub(g: Graph, t: int, cycle: list[int],
                          hub_mask: int) -> Model:
    cyc_mask = mask_of(cycle)
    att = _attachments(g, hub_mask, cyc_mask)
    positions = [i for i, c in enumerate(cycle) if att >> c & 1]
    assert len(positions) >= t, "hub lost attachments"
    chosen = positions[:t]
    sets: dict[int, frozenset[int]] = {t: frozenset(bits(hub_mask))}
    for i in range(t):
        start = chosen[i]
        stop = chosen[(i + 1) % t]
        arc = []
        k = start
        while k != stop:
            arc.append(cycle[k])
            k = (k + 1) % len(cycle)
        sets[i] = frozenset(arc)
    return Model(g, wheel_pattern(t), sets)


def find_wheel_model(g: Graph, t: int, budget: int | None = None,
                     deadline: Deadline = NO_DEADLINE,
                     within: int | None = None) -> Model | None:
    """Wheel-minor search by rim-cycle / hub-attachment enumeration.

    Decision-equivalent to ``find_minor_model(g, wheel_pattern(t))``; with a
    budget only models on at most ``budget`` vertices are admissible and the
    answer is exact for that size bound.
    """
    if t < 3:
        raise ValueError(f"wheel needs t >= 3, got {t}")
    mask = g.full_mask() if within is None else within
    if mask.bit_count() < t + 1:
        return None
    if budget is not None and budget < t + 1:
        return None
    if t == 3 and not has_k4_minor(g, mask):
        return None
    for comp in component_masks(g, mask):
        if comp.bit_count() < t + 1 or cycle_rank(g, comp) < t:
            continue
        res = _wheel_in_component(g, comp, t, budget, deadline)
        if res is not None:
            return res
    return None


def _wheel_in_component(g: Graph, comp: int, t: int, budget: int | None,
                        deadline: Deadline) -> Model | None:
    hi = comp.bit_count() if budget is None else min(comp.bit_count(),
                                                     budget - 1)
    for cycle in iter_cycles(g, comp, lo=max(3, t), hi=hi, deadline=deadline,
                             shortest_first=True):
        cyc_mask = mask_of(cycle)
        for sub in component_masks(g, comp & ~cyc_mask):
            att = 0
            for v in bits(sub):
                att |= g.adj[v]
            att &= cyc_mask
            if att.bit_count() < t:
                continue
            if budget is None:
                hub = _shrink_hub(g, sub, cyc_mask, t)
                return _model_from_cycle_hub(g, t, cycle, hub)
            cap = budget - len(cycle)
            hub = _hub_within(g, sub, cyc_mask, t, cap, deadline)
            if hub is not None:
                hub = _shrink_hub(g, hub, cyc_mask, t)
                return _model_from_cycle_hub(g, t, cycle, hub)
    return None


# ---------------------------------------------------------------------------
# small clique models (best effort)
# ---------------------------------------------------------------------------

def _greedy_clique(g: Graph, t: int, node_cap: int = 50000) -> list[int] | None:
    """Bounded search for a K_t subgraph, densest vertices first."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    nodes = [0]

    def extend(clique: list[int], cand: int) -> list[int] | None:
        if len(clique) == t:
            return clique
        if len(clique) + cand.bit_count() < t or nodes[0] > node_cap:
            return None
        for v in sorted(bits(cand), key=lambda u: (-(g.adj[u] & cand).bit_count(), u)):
            nodes[0] += 1
            res = extend(clique + [v], cand & g.adj[v])
            if res is not None:
                return res
            cand &= ~(1 << v)
        return None

    for v in order:
        res = extend([v], g.adj[v])
        if res is not None:
            return res
    return None


def _max_core_mask(g: Graph) -> int:
    """Vertex mask of the maximum k-core (densest region by degeneracy)."""
    alive = g.full_mask()
    best = alive
    while alive:
        degs = {v: (g.adj[v] & alive).bit_count() for v in bits(alive)}
        k = min(degs.values())
        best = alive
        drop = [v for v, d in degs.items() if d == k]
        for v in drop:
            alive &= ~(1 << v)
    return best


def small_clique_model(g: Graph, t: int) -> Model | None:
    """Best-effort K_t model biased toward few vertices.

    Greedy densest-region descent (clique subgraph inside the max core,
    then repeated contraction of the densest adjacent pair), with BFS-style
    trimming of the branch sets.  Output is always verified; None only
    means the internal search failed, not that no K_t minor exists.
    """
    pattern = Graph.from_edges(t, [(i, j) for i in range(t)
                                   for j in range(i + 1, t)])
    if t <= 0 or g.n < t:
        return None
    clique = _greedy_clique(g, t)
    if clique is not None:
        model = Model(g, pattern, {i: frozenset([v])
                                   for i, v in enumerate(sorted(clique))})
        if verify_model(g, pattern, model):
            return model
    core = _max_core_mask(g)
    if core.bit_count() >= t:
        model = _contraction_clique(g, core, t, pattern)
        if model is not None and verify_model(g, pattern, model):
            return model
    model = _contraction_clique(g, g.full_mask(), t, pattern)
    if model is not None and verify_model(g, pattern, model):
        return model
    return None


def _contraction_clique(g: Graph, mask: int, t: int,
                        pattern: Graph) -> Model | None:
    """Contract adjacent supernode pairs, densest first, until t mutually
    adjacent supernodes appear."""
    supers: dict[int, int] = {v: 1 << v for v in bits(mask)}

    def adjacent(a: int, b: int) -> bool:
        return bool(g.neighborhood_mask(supers[a]) & supers[b])

    while len(supers) >= t:
        found = _clique_in_quotient(g, supers, t)
        if found is not None:
            sets = {}
            for i, rep in enumerate(sorted(found)):
                sets[i] = frozenset(bits(_trim_branch(g, supers, found, rep)))
            return Model(g, pattern, sets)
        best = None
        for a in sorted(supers):
            nmask = g.neighborhood_mask(supers[a])
            for b in sorted(supers):
                if b <= a or not nmask & supers[b]:
                    continue
                merged = supers[a] | supers[b]
                score = g.neighborhood_mask(merged).bit_count()
                key = (-score, merged.bit_count(), a, b)
                if best is None or key < best[0]:
                    best = (key, a, b)
        if best is None:
            return None
        _, a, b = best
        supers[a] |= supers[b]
        del supers[b]
    return None


def _clique_in_quotient(g: Graph, supers: dict[int, int], t: int) -> list[int] | None:
    reps = sorted(supers)
    nb = {a: mask_of(b for b in reps if b != a and
                     g.neighborhood_mask(supers[a]) & supers[b]) for a in reps}

    def extend(cur: list[int], cand: int) -> list[int] | None:
        if len(cur) == t:
            return cur
        if len(cur) + cand.bit_count() < t:
            return None
        for v in bits(cand):
            res = extend(cur + [v], cand & nb[v])
            if res is not None:
                return res
            cand &= ~(1 << v)
        return None

    return extend([], mask_of(reps))


def _trim_branch(g: Graph, supers: dict[int, int], chosen: list[int],
                 rep: int) -> int:
    """Drop vertices of one branch set while it stays connected and adjacent
    to all other chosen branch sets."""
    others = [supers[r] for r in chosen if r != rep]
    s = supers[rep]
    changed = True
    while changed:
        changed = False
        for v in bits(s):
            cand = s & ~(1 << v)
            if not cand or not is_connected_mask(g, cand):
                continue
            nm = g.neighborhood_mask(cand)
            if all(nm & o for o in others):
                s = cand
                changed = True
    return s
