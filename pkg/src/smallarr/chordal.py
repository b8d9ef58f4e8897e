"""Clique complexes, coordinate arrangements and chordality.

A graph ``G`` on ``n`` vertices gives the coordinate arrangement whose
components are ``span{e_v : v in K}`` for the maximal cliques ``K``.  Its
ideal is the Stanley–Reisner ideal of the clique complex, generated by the
monomials ``x_u x_v`` over non-edges, and it is small exactly when ``G`` is
chordal.  :func:`froberg_check` tests that equivalence on one graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from . import exactq
from .arrangement import Arrangement, Subspace, intersection_graph, is_small, verify_linearly_joined
from .forest import mcs_ordering
from .ideals import LinearForm, QuadricProduct, degree_piece, monomials


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e} has an endpoint outside range({self.n})")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))
        adj = [set() for _ in range(self.n)]
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_json(cls, document) -> "SimpleGraph":
        if isinstance(document, (str, bytes)):
            document = json.loads(document)
        try:
            n = document["n"]
            edges = document.get("edges", [])
        except (KeyError, AttributeError, TypeError):
            raise GraphError("graph document must be an object with 'n' and 'edges'") from None
        if not isinstance(n, int) or n < 0:
            raise GraphError("'n' must be a non-negative integer")
        for e in edges:
            if not (isinstance(e, list) and len(e) == 2):
                raise GraphError(f"edge {e!r} must be a pair")
        if len({tuple(sorted(e)) for e in edges}) != len(edges):
            raise GraphError("duplicate edges")
        return cls(n, frozenset(tuple(e) for e in edges))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    def adj(self, v: int) -> frozenset:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "SimpleGraph":
        """Graph whose edge set is the bitmask over ``combinations(range(n), 2)``."""
        pairs = list(combinations(range(n), 2))
        return cls(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for u in self._adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n


@dataclass(frozen=True)
class CliqueComplex:
    facets: tuple[tuple[int, ...], ...]


def maximal_cliques(g: SimpleGraph) -> CliqueComplex:
    """Bron–Kerbosch with pivoting; facets as sorted tuples in sorted order."""
    out = []

    def bk(r, p, x):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: (len(p & g.adj(u)), -u))
        for v in sorted(p - g.adj(pivot)):
            bk(r | {v}, p & g.adj(v), x & g.adj(v))
            p = p - {v}
            x = x | {v}

    bk(frozenset(), frozenset(range(g.n)), frozenset())
    return CliqueComplex(tuple(sorted(out)))


def coordinate_arrangement(g: SimpleGraph) -> Arrangement:
    comps = []
    for facet in maximal_cliques(g).facets:
        rows = [exactq.unit_vector(g.n, v) for v in facet]
        comps.append(Subspace.from_rows("K" + "_".join(map(str, facet)), rows, g.n))
    return Arrangement(g.n, tuple(comps))


def mcs_vertex_order(g: SimpleGraph) -> list[int]:
    """Maximum cardinality search on the vertices of ``g``, ties by index."""
    count = [0] * g.n
    done = [False] * g.n
    order = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not done[u]), key=lambda u: (count[u], -u))
        done[v] = True
        order.append(v)
        for u in g.adj(v):
            if not done[u]:
                count[u] += 1
    return order


def is_perfect_elimination_ordering(g: SimpleGraph, peo) -> bool:
    pos = {v: k for k, v in enumerate(peo)}
    for v in peo:
        later = [u for u in g.adj(v) if pos[u] > pos[v]]
        if any(not g.has_edge(a, b) for a, b in combinations(later, 2)):
            return False
    return True


def find_chordless_cycle(g: SimpleGraph) -> list[int] | None:
    """Brute-force search for an induced cycle of length >= 4.

    Cycles are grown from their smallest vertex as induced paths.
    """
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend():
            last = path[-1]
            for w in sorted(g.adj(last)):
                if w <= s or w in on_path:
                    continue
                # w may touch only `last` among interior path vertices
                if any(g.has_edge(w, u) for u in path[1:-1]):
                    continue
                if len(path) > 1 and g.has_edge(w, s):
                    if len(path) >= 3:
                        return path + [w]
                    continue
                path.append(w)
                on_path.add(w)
                found = extend()
                if found:
                    return found
                path.pop()
                on_path.discard(w)
            return None

        found = extend()
        if found:
            return found
    return None


@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    peo: tuple[int, ...] | None
    cycle: tuple[int, ...] | None
    mcs_order: tuple[int, ...]

    def __iter__(self):
        return iter((self.chordal, self.peo if self.chordal else self.cycle))

    def to_json(self) -> dict:
        return {
            "chordal": self.chordal,
            "peo": list(self.peo) if self.peo is not None else None,
            "chordless_cycle": list(self.cycle) if self.cycle is not None else None,
        }


def is_chordal(g: SimpleGraph) -> ChordalityResult:
    """Chordality via maximum cardinality search.

    The reverse of an MCS order is a perfect elimination ordering exactly when
    ``g`` is chordal.  For non-chordal graphs the certificate is a chordless
    cycle found by exhaustive search.
    """
    order = mcs_vertex_order(g)
    peo = tuple(reversed(order))
    if is_perfect_elimination_ordering(g, peo):
        return ChordalityResult(True, peo, None, tuple(order))
    cycle = find_chordless_cycle(g)
    return ChordalityResult(False, None, tuple(cycle) if cycle else None, tuple(order))


def stanley_reisner_quadrics(g: SimpleGraph) -> list[QuadricProduct]:
    out = []
    for u, v in combinations(range(g.n), 2):
        if not g.has_edge(u, v):
            out.append(QuadricProduct(LinearForm(exactq.unit_vector(g.n, u)),
                                      LinearForm(exactq.unit_vector(g.n, v))))
    return out


def facet_order_from_mcs(arr: Arrangement, vertex_order) -> list[int]:
    """Order facets by the latest MCS position among their vertices, ties by
    facet index."""
    pos = {v: k for k, v in enumerate(vertex_order)}
    keyed = []
    for i, c in enumerate(arr.components):
        support = [next(k for k, x in enumerate(row) if x) for row in c.basis.rows]
        keyed.append((max(pos[v] for v in support), i))
    return [i for _, i in sorted(keyed)]


@dataclass
class FrobergReport:
    consistent: bool
    chordal: bool
    small: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"consistent": self.consistent, "chordal": self.chordal, "small": self.small,
                "details": self.details}


def froberg_check(g: SimpleGraph, full: bool = True) -> FrobergReport:
    """Check that ``g`` is chordal iff its coordinate arrangement is small.

    The MCS-based answer must agree with the brute-force chordless-cycle
    search.  With ``full`` the non-edge monomials must span the degree-2 piece
    of the ideal and, for chordal graphs, the facet order induced by vertex
    MCS must be linearly joined.  Whether MCS on the arrangement's own
    intersection graph gives a linearly joined order is recorded in
    ``details["arrangement_mcs_joined"]``.
    """
    details: dict = {}
    res = is_chordal(g)
    brute = find_chordless_cycle(g) is None
    details["mcs_agrees_with_bruteforce"] = res.chordal == brute
    arr = coordinate_arrangement(g)
    report = is_small(arr)
    details["chi_w_min"] = report.chi_w_min
    details["span_rank"] = report.span_rank
    consistent = details["mcs_agrees_with_bruteforce"] and res.chordal == report.small
    if full:
        sr = [q.vector() for q in stanley_reisner_quadrics(g)]
        r2, piece = degree_piece(arr, 2)
        n2 = len(monomials(g.n, 2))
        sr_rank = exactq.rank_of_rows(sr, n2) if sr else 0
        joint = exactq.rank_of_rows(list(piece.rows) + sr, n2)
        details["sr_span_matches"] = sr_rank == r2 == joint
        consistent = consistent and details["sr_span_matches"]
        if res.chordal:
            facet_order = facet_order_from_mcs(arr, res.mcs_order)
            details["facet_order"] = facet_order
            details["facet_order_joined"] = verify_linearly_joined(arr, facet_order).ok
            arr_mcs = mcs_ordering(intersection_graph(arr)).sequence
            details["arrangement_mcs"] = list(arr_mcs)
            details["arrangement_mcs_joined"] = verify_linearly_joined(arr, arr_mcs).ok
            # unweighted MCS on the intersection graph can fail here (e.g. facets
            # {0,1,4}, {0,2,3}, {0,2,4}); it is reported, not folded into the verdict
            consistent = consistent and details["facet_order_joined"]
    return FrobergReport(consistent, res.chordal, report.small, details)
