"""Weighted intersection graphs, spanning forests and vertex orderings.

Vertex weights are ranks of the subspaces, edge weights are ranks of pairwise
intersections, and the weighted Euler characteristic of a subgraph is

    chi_w = sum(vertex weights) - sum(edge weights).

A spanning forest has maximal edge weight exactly when its chi_w is minimal,
so Prim's algorithm (run once per connected component) finds the minimum.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterator

from . import exactq


@dataclass(frozen=True)
class WeightedGraph:
    vertex_weights: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    _weight: dict = field(init=False, repr=False, compare=False)
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.vertex_weights)
        weight = {}
        adj = [[] for _ in range(n)]
        for i, j, w in self.edges:
            if not 0 <= i < j < n:
                raise ValueError(f"bad edge ({i}, {j}) for {n} vertices")
            if w < 1:
                raise ValueError(f"edge ({i}, {j}) has weight {w} < 1")
            weight[(i, j)] = w
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        object.__setattr__(self, "_weight", weight)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @property
    def n(self) -> int:
        return len(self.vertex_weights)

    def weight(self, i: int, j: int) -> int | None:
        if i > j:
            i, j = j, i
        return self._weight.get((i, j))

    def has_edge(self, i: int, j: int) -> bool:
        return self.weight(i, j) is not None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, listed by smallest vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [s], [s]
            while stack:
                v = stack.pop()
                for u in self._adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        comp.append(u)
                        stack.append(u)
            out.append(sorted(comp))
        return out

    def to_json(self) -> dict:
        return {
            "vertex_weights": list(self.vertex_weights),
            "edges": [list(e) for e in self.edges],
        }


def _norm(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Forest:
    """An acyclic edge set; vertices are implicit (all vertices of the graph)."""

    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(_norm(i, j) for i, j in self.edges))

    def neighbors(self, n: int) -> list[list[int]]:
        adj = [[] for _ in range(n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        for a in adj:
            a.sort()
        return adj

    def is_acyclic(self, n: int) -> bool:
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.edges:
            a, b = find(i), find(j)
            if a == b:
                return False
            parent[a] = b
        return True

    def trees(self, n: int) -> list[list[int]]:
        """Vertex sets of the trees (isolated vertices are one-vertex trees)."""
        return WeightedGraph((1,) * n, tuple((i, j, 1) for i, j in self.edges)).components()

    def to_json(self) -> list[list[int]]:
        return [list(e) for e in sorted(self.edges)]


@dataclass(frozen=True)
class Ordering:
    sequence: tuple[int, ...]
    forest: Forest | None = None

    def to_json(self) -> list[int]:
        return list(self.sequence)


def is_spanning_forest(g: WeightedGraph, f: Forest) -> bool:
    if any(not g.has_edge(i, j) for i, j in f.edges):
        return False
    if not f.is_acyclic(g.n):
        return False
    return len(f.edges) == g.n - len(g.components())


def chi_w(g: WeightedGraph, f: Forest) -> int:
    """Weighted Euler characteristic of the spanning subgraph with edge set ``f``."""
    total = sum(g.vertex_weights)
    for i, j in f.edges:
        w = g.weight(i, j)
        if w is None:
            raise ValueError(f"forest edge ({i}, {j}) is not an edge of the graph")
        total -= w
    return total


def max_weight_spanning_forest(g: WeightedGraph) -> Forest:
    """Prim's algorithm on each component, started at its smallest vertex.

    Among crossing edges of equal weight the lexicographically smallest
    ``(i, j)`` is taken, so the result is deterministic.
    """
    in_tree = [False] * g.n
    chosen = []
    for start in range(g.n):
        if in_tree[start]:
            continue
        in_tree[start] = True
        heap = []
        for u in g.neighbors(start):
            i, j = _norm(start, u)
            heapq.heappush(heap, (-g.weight(i, j), i, j))
        while heap:
            _, i, j = heapq.heappop(heap)
            if in_tree[i] and in_tree[j]:
                continue
            new = j if in_tree[i] else i
            in_tree[new] = True
            chosen.append((i, j))
            for u in g.neighbors(new):
                if not in_tree[u]:
                    a, b = _norm(new, u)
                    heapq.heappush(heap, (-g.weight(a, b), a, b))
    return Forest(frozenset(chosen))


def is_compatible(sequence, f: Forest, n: int | None = None) -> bool:
    """Check that ``sequence`` is compatible with the forest ``f``.

    The first vertex of each tree has no forest neighbour before it; every
    later vertex of that tree has exactly one.  Equivalently, along every
    path leaving the tree's first vertex the order is increasing.
    """
    n = len(sequence) if n is None else n
    if sorted(sequence) != list(range(n)):
        return False
    adj = f.neighbors(n)
    placed = [False] * n
    starts = 0
    for v in sequence:
        k = sum(placed[u] for u in adj[v])
        if k > 1:
            return False
        starts += k == 0
        placed[v] = True
    # every tree has at least one start (its first vertex), so equality means exactly one each
    return starts == len(f.trees(n))


def compatible_ordering(g: WeightedGraph, f: Forest) -> Ordering:
    """One ordering compatible with ``f``.

    Trees are taken in order of their smallest vertex; each is rooted at its
    lowest-index leaf and traversed breadth-first with neighbours by index.
    """
    adj = f.neighbors(g.n)
    seq = []
    for tree in f.trees(g.n):
        root = next(v for v in tree if len(adj[v]) <= 1)
        seen = {root}
        queue = [root]
        for v in queue:
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        seq.extend(queue)
    return Ordering(tuple(seq), f)


def iter_compatible_orderings(g: WeightedGraph, f: Forest) -> Iterator[Ordering]:
    """All orderings compatible with ``f``, in lexicographic order."""
    n = g.n
    adj = f.neighbors(n)
    tree_of = [0] * n
    for t, tree in enumerate(f.trees(n)):
        for v in tree:
            tree_of[v] = t
    placed = [False] * n
    started = set()
    seq: list[int] = []

    def rec():
        if len(seq) == n:
            yield Ordering(tuple(seq), f)
            return
        for v in range(n):
            if placed[v]:
                continue
            k = sum(placed[u] for u in adj[v])
            if k == 1 or (k == 0 and tree_of[v] not in started):
                fresh = k == 0
                placed[v] = True
                seq.append(v)
                if fresh:
                    started.add(tree_of[v])
                yield from rec()
                if fresh:
                    started.discard(tree_of[v])
                seq.pop()
                placed[v] = False

    yield from rec()


def enumerate_compatible_orderings(g: WeightedGraph, f: Forest, limit: int | None = None) -> list[Ordering]:
    out = []
    for o in iter_compatible_orderings(g, f):
        if limit is not None and len(out) >= limit:
            break
        out.append(o)
    return out


def mcs_ordering(g: WeightedGraph) -> Ordering:
    """Maximum cardinality search: repeatedly take the vertex with the most
    already-selected neighbours (edge weights ignored), ties by index."""
    count = [0] * g.n
    selected = [False] * g.n
    seq = []
    for _ in range(g.n):
        best = max((v for v in range(g.n) if not selected[v]), key=lambda v: (count[v], -v))
        selected[best] = True
        seq.append(best)
        for u in g.neighbors(best):
            if not selected[u]:
                count[u] += 1
    return Ordering(tuple(seq))


def clique_intersection_holds(arr, f: Forest) -> tuple[bool, list[int] | None]:
    """Check ``L_a ∩ L_b = L_a ∩ ... ∩ L_b`` along every path of ``f``.

    ``arr`` is an :class:`~smallarr.arrangement.Arrangement`.  Returns the
    first violating path (by start vertex, then depth-first by index).
    """
    n = len(arr.components)
    adj = f.neighbors(n)
    bases = [c.basis for c in arr.components]
    for a in range(n):
        # (vertex, path so far, running intersection)
        stack = [(u, [a, u], exactq.row_space_intersect(bases[a], bases[u])) for u in reversed(adj[a])]
        while stack:
            v, path, running = stack.pop()
            if len(path) >= 3:
                if arr.pair_rank(a, v) != len(running):
                    return False, path
            for u in reversed(adj[v]):
                if u != path[-2]:
                    stack.append((u, path + [u], exactq.row_space_intersect(running, bases[u])))
    return True, None


def essential_edges(g: WeightedGraph) -> list[tuple[int, int, int]]:
    """Edges lying in at least one maximum-weight spanning forest.

    ``(u, v, w)`` qualifies iff ``u`` and ``v`` are disconnected by the edges
    of weight strictly greater than ``w``.
    """
    out = []
    for u, v, w in g.edges:
        heavy = WeightedGraph(g.vertex_weights, tuple(e for e in g.edges if e[2] > w))
        comp = {x: k for k, c in enumerate(heavy.components()) for x in c}
        if comp[u] != comp[v]:
            out.append((u, v, w))
    return out
