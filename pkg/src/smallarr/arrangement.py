"""Subspace arrangements in projective space.

An arrangement is a finite set of pairwise incomparable linear subspaces of
``P^r``.  Everything is expressed through ranks of the affine cones
(rank = projective dimension + 1), so the ambient space has rank ``r + 1``.

The smallness test is the spanning-forest criterion: the arrangement is small
iff a maximum-weight spanning forest of its intersection graph has weighted
Euler characteristic equal to the rank of the span of the arrangement.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import exactq
from .exactq import Matrix
from .forest import (
    Forest,
    Ordering,
    WeightedGraph,
    chi_w,
    compatible_ordering,
    max_weight_spanning_forest,
)

FINITE_RETRIES = 20


class ArrangementError(ValueError):
    """Invalid arrangement data (schema, rank or incomparability)."""


class OrderingError(ValueError):
    """An ordering is not a permutation of the components."""


@dataclass(frozen=True)
class Subspace:
    name: str
    basis: Matrix  # canonical rref, rank >= 1

    @classmethod
    def from_rows(cls, name: str, rows, ambient_rank: int) -> "Subspace":
        try:
            m = Matrix(rows, ambient_rank)
        except exactq.DimensionError as exc:
            raise ArrangementError(f"component {name!r}: {exc}") from None
        basis, r = exactq.rref(m)
        if r == 0:
            raise ArrangementError(f"component {name!r} has rank 0 (empty projective subspace)")
        return cls(name, basis)

    @property
    def rank(self) -> int:
        return self.basis.nrows

    @property
    def projective_dim(self) -> int:
        return self.rank - 1

    def to_json(self) -> dict:
        return {"name": self.name, "basis": self.basis.to_json()}


@dataclass(frozen=True)
class Arrangement:
    ambient_rank: int
    components: tuple[Subspace, ...]
    metadata: dict = field(default_factory=dict, compare=False, repr=False)
    _pair_ranks: dict = field(init=False, default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.ambient_rank < 1:
            raise ArrangementError("ambient_rank must be >= 1")
        names = set()
        for c in self.components:
            if c.basis.ncols != self.ambient_rank:
                raise ArrangementError(
                    f"component {c.name!r} has {c.basis.ncols} columns, expected {self.ambient_rank}"
                )
            if c.rank < 1:
                raise ArrangementError(f"component {c.name!r} has rank 0")
            if c.name in names:
                raise ArrangementError(f"duplicate component name {c.name!r}")
            names.add(c.name)
        comps = self.components
        pair_ranks = {}
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                a, b = comps[i], comps[j]
                w = a.rank + b.rank - exactq.rank(a.basis.stack(b.basis))
                if w == min(a.rank, b.rank):
                    raise ArrangementError(f"containment between components {a.name!r} and {b.name!r}")
                pair_ranks[(i, j)] = w
        object.__setattr__(self, "_pair_ranks", pair_ranks)

    @classmethod
    def from_bases(cls, ambient_rank: int, bases: dict | Sequence) -> "Arrangement":
        """Build from ``{name: rows}`` or a list of rows (named ``L0, L1, ...``)."""
        items = bases.items() if isinstance(bases, dict) else ((f"L{i}", b) for i, b in enumerate(bases))
        return cls(ambient_rank, tuple(Subspace.from_rows(n, b, ambient_rank) for n, b in items))

    def __len__(self):
        return len(self.components)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.components]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def bases(self) -> list[Matrix]:
        return [c.basis for c in self.components]

    def sub(self, indices: Sequence[int]) -> "Arrangement":
        return Arrangement(self.ambient_rank, tuple(self.components[i] for i in indices))

    def pair_rank(self, i: int, j: int) -> int:
        """Rank of ``L_i ∩ L_j``."""
        if i == j:
            return self.components[i].rank
        return self._pair_ranks[(i, j) if i < j else (j, i)]

    def span(self, indices: Sequence[int] | None = None) -> Matrix:
        idx = range(len(self.components)) if indices is None else indices
        rows = tuple(r for i in idx for r in self.components[i].basis.rows)
        return exactq.canonical(Matrix._raw(rows, self.ambient_rank))

    def span_rank(self, indices: Sequence[int] | None = None) -> int:
        idx = range(len(self.components)) if indices is None else indices
        rows = [r for i in idx for r in self.components[i].basis.int_rows()]
        return exactq.rank_of_int_rows(rows, self.ambient_rank)

    def to_json(self) -> dict:
        doc = {
            "ambient_rank": self.ambient_rank,
            "subspaces": [c.to_json() for c in self.components],
        }
        if self.metadata:
            doc["metadata"] = self.metadata
        return doc


def load_arrangement(document) -> Arrangement:
    """Parse an arrangement document (a JSON string or an already-decoded dict)."""
    if isinstance(document, (str, bytes)):
        document = json.loads(document)
    if not isinstance(document, dict):
        raise ArrangementError("arrangement document must be an object")
    try:
        ambient = document["ambient_rank"]
        subspaces = document["subspaces"]
    except KeyError as exc:
        raise ArrangementError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(ambient, int) or isinstance(ambient, bool) or ambient < 1:
        raise ArrangementError("ambient_rank must be an integer >= 1")
    comps = []
    for k, item in enumerate(subspaces):
        if not isinstance(item, dict) or "basis" not in item:
            raise ArrangementError(f"subspace #{k} must be an object with a 'basis'")
        name = str(item.get("name", f"L{k}"))
        basis = item["basis"]
        if not isinstance(basis, list) or not all(isinstance(r, list) for r in basis):
            raise ArrangementError(f"component {name!r}: basis must be a list of rows")
        try:
            comps.append(Subspace.from_rows(name, basis, ambient))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ArrangementError):
                raise
            raise ArrangementError(f"component {name!r}: {exc}") from None
    return Arrangement(ambient, tuple(comps))


def intersection_graph(arr: Arrangement) -> WeightedGraph:
    n = len(arr.components)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            w = arr.pair_rank(i, j)
            if w >= 1:
                edges.append((i, j, w))
    return WeightedGraph(tuple(c.rank for c in arr.components), tuple(edges))


@dataclass(frozen=True)
class JoinCheck:
    """Result of checking an ordering for the linearly joined property.

    ``first_failure`` is the position in the ordering of the component whose
    addition fails.  ``certificate`` has one entry per step from the second
    component on: the rank of ``span(previous) ∩ L_new`` and the earlier
    component containing it (``None`` when the rank is 0 or nothing does).
    """

    ok: bool
    first_failure: int | None
    certificate: tuple[tuple[int, int | None], ...]

    def __iter__(self):
        return iter((self.ok, self.first_failure))

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "first_failure": self.first_failure,
            "certificate": [{"intersection_rank": r, "contained_in": j} for r, j in self.certificate],
        }


def _check_permutation(n: int, order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(int(i) for i in order)
    if sorted(order) != list(range(n)):
        raise OrderingError(f"{list(order)} is not a permutation of range({n})")
    return order


def verify_linearly_joined(arr: Arrangement, order: Sequence[int]) -> JoinCheck:
    """Check whether the components, taken in ``order``, are linearly joined.

    For linear components, step ``i`` passes iff ``M = span(L_1..L_i) ∩ L_{i+1}``
    is zero or lies inside a single earlier ``L_j``.  Since ``L_j ∩ L_{i+1} ⊆ M``
    always, containment is the rank equality ``rank(L_j ∩ L_{i+1}) = rank(M)``.
    """
    order = _check_permutation(len(arr.components), order)
    if not order:
        return JoinCheck(True, None, ())
    comps = arr.components
    span_rows = list(comps[order[0]].basis.int_rows())
    span_rank = comps[order[0]].rank
    cert = []
    for pos in range(1, len(order)):
        new = order[pos]
        merged = span_rows + comps[new].basis.int_rows()
        merged_rank = exactq.rank_of_int_rows(merged, arr.ambient_rank)
        m_rank = span_rank + comps[new].rank - merged_rank
        holder = None
        if m_rank > 0:
            holder = next((j for j in order[:pos] if arr.pair_rank(j, new) == m_rank), None)
        cert.append((m_rank, holder))
        if m_rank > 0 and holder is None:
            return JoinCheck(False, pos, tuple(cert))
        span_rows, span_rank = merged, merged_rank
    return JoinCheck(True, None, tuple(cert))


def linearly_joined_orderings(arr: Arrangement) -> list[tuple[int, ...]]:
    """Every permutation that verifies, by depth-first search over prefixes.

    The property is prefix-closed, so failing prefixes are pruned.
    """
    n = len(arr.components)
    out = []

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(n):
            if v in prefix:
                continue
            trial = prefix + [v]
            if _prefix_ok(arr, trial):
                rec(trial)

    rec([])
    return out


def _prefix_ok(arr: Arrangement, prefix: list[int]) -> bool:
    comps = arr.components
    new = prefix[-1]
    if len(prefix) == 1:
        return True
    prev = prefix[:-1]
    span_rank = arr.span_rank(prev)
    merged_rank = arr.span_rank(prefix)
    m_rank = span_rank + comps[new].rank - merged_rank
    return m_rank == 0 or any(arr.pair_rank(j, new) == m_rank for j in prev)


@dataclass(frozen=True)
class SmallnessReport:
    small: bool
    chi_w_min: int
    span_rank: int
    witness_forest: Forest
    ordering: Ordering | None
    check: JoinCheck | None = None

    def to_json(self) -> dict:
        return {
            "small": self.small,
            "chi_w_min": self.chi_w_min,
            "span_rank": self.span_rank,
            "forest": self.witness_forest.to_json(),
            "ordering": self.ordering.to_json() if self.ordering else None,
            "certificate": self.check.to_json()["certificate"] if self.check else None,
        }


class InternalInconsistency(AssertionError):
    """A computed certificate contradicts the forest criterion."""


def is_small(arr: Arrangement) -> SmallnessReport:
    if not arr.components:
        return SmallnessReport(True, 0, 0, Forest(), Ordering(()), JoinCheck(True, None, ()))
    g = intersection_graph(arr)
    forest = max_weight_spanning_forest(g)
    chi = chi_w(g, forest)
    span_rank = arr.span_rank()
    if chi < span_rank:
        raise InternalInconsistency(f"chi_w {chi} below span rank {span_rank}")
    if chi != span_rank:
        return SmallnessReport(False, chi, span_rank, forest, None, None)
    ordering = compatible_ordering(g, forest)
    check = verify_linearly_joined(arr, ordering.sequence)
    if not check.ok:
        raise InternalInconsistency(f"compatible ordering {ordering.sequence} is not linearly joined")
    return SmallnessReport(True, chi, span_rank, forest, ordering, check)


def direct_sum_components(arr: Arrangement) -> tuple[list[list[int]], bool]:
    """Connected components of the intersection graph, and whether the span of
    the arrangement is the direct sum of the spans of those components."""
    parts = intersection_graph(arr).components()
    total = sum(arr.span_rank(p) for p in parts)
    return parts, total == arr.span_rank()


def _quotient_map(point: Sequence, ambient_rank: int):
    """Linear map ``V -> V/<p>`` in coordinates: eliminate along the first
    nonzero coordinate of ``p`` and drop that coordinate."""
    p = [exactq.parse_entry(x) for x in point]
    c0 = next(i for i, x in enumerate(p) if x)

    def apply(v):
        t = v[c0] / p[c0]
        return tuple(v[k] - t * p[k] for k in range(ambient_rank) if k != c0)

    return apply


def project_from_point(arr: Arrangement, component: int, point: Sequence) -> Arrangement:
    """Image of the arrangement under linear projection from ``point``.

    ``point`` must lie on ``L_component`` and outside the span of the other
    components.  Images that vanish or fall inside another image are dropped;
    the drops are listed under ``metadata["merged"]``.
    """
    n = len(arr.components)
    if not 0 <= component < n:
        raise ArrangementError(f"component index {component} out of range")
    if len(point) != arr.ambient_rank:
        raise ArrangementError(f"point must have {arr.ambient_rank} coordinates")
    p = Matrix([point], arr.ambient_rank)
    if exactq.rank(p) == 0:
        raise ArrangementError("point must be nonzero")
    if not exactq.contains(arr.components[component].basis, p):
        raise ArrangementError(f"point is not on component {arr.components[component].name!r}")
    others = [i for i in range(n) if i != component]
    if others and exactq.contains(arr.span(others), p):
        raise ArrangementError("point lies in the span of the other components")
    if arr.ambient_rank == 1:
        raise ArrangementError("cannot project P^0 from a point")
    q = _quotient_map(point, arr.ambient_rank)
    images = []
    for c in arr.components:
        m, r = exactq.rref(Matrix([q(row) for row in c.basis.rows], arr.ambient_rank - 1))
        images.append((c.name, m, r))
    kept, merged = [], []
    for i, (name, m, r) in enumerate(images):
        if r == 0:
            merged.append({"name": name, "into": None})
            continue
        host = next(
            (
                other
                for j, (other, m2, r2) in enumerate(images)
                if j != i and r2 > 0 and exactq.contains(m2, m) and (r2 > r or j < i)
            ),
            None,
        )
        if host is not None:
            merged.append({"name": name, "into": host})
        else:
            kept.append(Subspace(name, m))
    meta = {"projected_from": {"component": arr.components[component].name,
                               "point": [exactq.format_entry(exactq.parse_entry(x)) for x in point]}}
    if merged:
        meta["merged"] = merged
    return Arrangement(arr.ambient_rank - 1, tuple(kept), meta)


@dataclass(frozen=True)
class SecantWitness:
    """A linear space meeting the arrangement in more points than its rank allows."""

    plane: Matrix
    points: tuple[Matrix, ...]
    source: str

    @property
    def count(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "plane": self.plane.to_json(),
            "rank": self.plane.nrows,
            "points": [pt.to_json()[0] for pt in self.points],
            "source": self.source,
        }


@dataclass(frozen=True)
class SampleReport:
    violations: tuple[SecantWitness, ...]
    trials: int
    exhausted: int  # trials whose retry budget ran out

    def to_json(self) -> dict:
        return {
            "violations": [v.to_json() for v in self.violations],
            "trials": self.trials,
            "exhausted": self.exhausted,
        }


def section_points(arr: Arrangement, plane: Matrix) -> tuple[Matrix, ...] | None:
    """Distinct points of ``plane ∩ arrangement``, or ``None`` when infinite."""
    pts = []
    for c in arr.components:
        m = exactq.row_space_intersect(plane, c.basis)
        if m.nrows > 1:
            return None
        if m.nrows == 1 and m not in pts:
            pts.append(m)
    return tuple(pts)


def _check_plane(arr: Arrangement, plane: Matrix, source: str) -> SecantWitness | None:
    pts = section_points(arr, plane)
    if pts is not None and len(pts) > plane.nrows:
        return SecantWitness(plane, pts, source)
    return None


def builtin_secant_candidates(arr: Arrangement) -> list[Matrix]:
    """Lines the arrangement itself singles out as potential multisecants.

    * transversals: for distinct ``a, b, c`` with ``q = span(L_a, L_b) ∩ L_c`` a
      point and ``s = span(q, L_a) ∩ L_b`` a point, the line ``qs`` meets
      ``L_a``, ``L_b`` and ``L_c``;
    * joins of two distinct pairwise intersection points.
    """
    comps = arr.components
    n = len(comps)
    out: list[Matrix] = []

    def add(m):
        if m.nrows == 2 and m not in out:
            out.append(m)

    for a in range(n):
        for b in range(n):
            if b == a:
                continue
            ab = exactq.row_space_sum(comps[a].basis, comps[b].basis)
            for c in range(n):
                if c in (a, b):
                    continue
                q = exactq.row_space_intersect(ab, comps[c].basis)
                if q.nrows != 1:
                    continue
                s = exactq.row_space_intersect(exactq.row_space_sum(q, comps[a].basis), comps[b].basis)
                if s.nrows != 1:
                    continue
                add(exactq.row_space_sum(q, s))
    pair_points = []
    for i in range(n):
        for j in range(i + 1, n):
            if arr.pair_rank(i, j) == 1:
                pt = exactq.row_space_intersect(comps[i].basis, comps[j].basis)
                if pt not in pair_points:
                    pair_points.append(pt)
    for i in range(len(pair_points)):
        for j in range(i + 1, len(pair_points)):
            add(exactq.row_space_sum(pair_points[i], pair_points[j]))
    return out


def small_char_sample(arr: Arrangement, plane_rank: int, trials: int, seed: int,
                      bound: int = 100, builtin: bool = True) -> SampleReport:
    """Randomized multisecant search.

    Each trial draws a rank-``plane_rank`` space spanned by random points of
    random components (or of the ambient space), redrawing up to
    ``FINITE_RETRIES`` times until it meets every component in at most a
    point.  A violation is a draw meeting the arrangement in more distinct
    points than its rank.  The built-in candidate lines are checked as well.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 1 <= plane_rank <= arr.ambient_rank:
        raise ValueError(f"plane_rank must be in [1, {arr.ambient_rank}]")
    rng = random.Random(seed)
    n = len(arr.components)
    ambient = Matrix.identity(arr.ambient_rank)
    violations: list[SecantWitness] = []
    exhausted = 0
    for _ in range(trials):
        for _attempt in range(FINITE_RETRIES):
            vecs = []
            for _k in range(plane_rank):
                pick = rng.randrange(n + 1)
                source = arr.components[pick].basis if pick < n else ambient
                vecs.append(exactq.random_point(source, rng, bound))
            plane, r = exactq.rref(Matrix(vecs, arr.ambient_rank))
            if r != plane_rank:
                continue
            pts = section_points(arr, plane)
            if pts is None:
                continue
            if len(pts) > plane_rank:
                violations.append(SecantWitness(plane, pts, "random"))
            break
        else:
            exhausted += 1
    if builtin:
        for cand in builtin_secant_candidates(arr):
            w = _check_plane(arr, cand, "builtin")
            if w is not None:
                violations.append(w)
    return SampleReport(tuple(violations), trials, exhausted)

