"""Quadratic generators for ideals of small unions of linear spaces.

Given a linearly joined ordering ``L_1, ..., L_n``, with ``L'_i`` a complement
in ``L_i`` of ``span(L_1..L_{i-1}) ∩ L_i``, the ideal of the union is

    sum over j = 2..n of  I(span(L_j, L'_{j+1}, ..., L'_n)) * I(span(L_1, ..., L_{j-1}, L'_{j+1}, ..., L'_n))

so it is generated by products of two linear forms.  Everything is computed
inside ``span(Y)``; when that span is a proper subspace, the linear forms
cutting it out are multiplied by every variable and appended.

The graded pieces ``(∩ I(L_i))_d`` for ``d = 2, 3`` are computed independently
by substituting a parametrization of each ``L_i`` into a generic form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

from . import exactq
from .arrangement import Arrangement, Subspace, verify_linearly_joined
from .exactq import Matrix


class NotLinearlyJoined(ValueError):
    """The requested ordering is not linearly joined."""


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        if not any(self.coefficients):
            raise ValueError("linear form must be nonzero")

    def __call__(self, v: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.coefficients, v)), Fraction(0))

    def to_json(self) -> list:
        return [exactq.format_entry(c) for c in self.coefficients]


@dataclass(frozen=True)
class QuadricProduct:
    """The quadric ``left * right``.

    ``summand`` is the index ``j`` of the term that produced it; 0 marks the
    products appended for a degenerate span, ``None`` marks products built
    elsewhere (e.g. Stanley–Reisner monomials).
    """

    left: LinearForm
    right: LinearForm
    summand: int | None = None

    def vector(self) -> tuple[Fraction, ...]:
        return product_vector(self.left.coefficients, self.right.coefficients)

    def to_json(self) -> dict:
        return {"left": self.left.to_json(), "right": self.right.to_json(), "summand": self.summand}


@dataclass(frozen=True)
class GeneratorSet:
    quadrics: tuple[QuadricProduct, ...]
    degree2_rank: int
    mu_predicted: int
    order: tuple[int, ...] = ()
    ambient_rank: int = 0

    @property
    def core(self) -> tuple[QuadricProduct, ...]:
        """Quadrics from the sum formula, without the degenerate-span products."""
        return tuple(q for q in self.quadrics if q.summand != 0)

    def to_json(self) -> dict:
        return {
            "quadrics": [q.to_json() for q in self.quadrics],
            "mu": self.mu_predicted,
            "degree2_rank": self.degree2_rank,
        }


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent-free monomial list: sorted variable-index tuples of length ``degree``."""
    return tuple(combinations_with_replacement(range(nvars), degree))


@lru_cache(maxsize=None)
def _monomial_index(nvars: int, degree: int) -> dict:
    return {m: k for k, m in enumerate(monomials(nvars, degree))}


def product_vector(*forms: Sequence) -> tuple[Fraction, ...]:
    """Coefficient vector (over :func:`monomials`) of a product of linear forms."""
    nvars = len(forms[0])
    poly = {(): Fraction(1)}
    for f in forms:
        nxt: dict = {}
        for mono, c in poly.items():
            for v, a in enumerate(f):
                if a:
                    key = tuple(sorted(mono + (v,)))
                    nxt[key] = nxt.get(key, 0) + c * a
        poly = nxt
    idx = _monomial_index(nvars, len(forms))
    vec = [Fraction(0)] * len(idx)
    for mono, c in poly.items():
        vec[idx[mono]] += c
    return tuple(vec)


def vanishing_forms(l: Subspace | Matrix) -> list[LinearForm]:
    """Canonical basis of the linear forms vanishing on ``l``."""
    basis = l.basis if isinstance(l, Subspace) else l
    return [LinearForm(row) for row in exactq.kernel(basis).rows]


def restriction_matrix(basis: Matrix, degree: int) -> Matrix:
    """Matrix of ``F -> F(sum_a t_a b_a)``: degree-``degree`` forms on the
    ambient space to forms in the parameters ``t`` of ``rowspace(basis)``.

    Column ``k`` holds the coefficients of the substituted ``k``-th monomial.
    """
    nvars = basis.ncols
    k = basis.nrows
    tmono = _monomial_index(k, degree)
    cols = []
    for mono in monomials(nvars, degree):
        # each variable x_v becomes the linear form sum_a basis[a][v] t_a
        forms = [[basis.rows[a][v] for a in range(k)] for v in mono]
        if any(not any(f) for f in forms):
            cols.append([Fraction(0)] * len(tmono))
            continue
        cols.append(list(product_vector(*forms)) if k else [])
    return Matrix._raw(tuple(tuple(col[r] for col in cols) for r in range(len(tmono))), len(cols))


def degree_piece(arr: Arrangement, d: int) -> tuple[int, Matrix]:
    """Rank and canonical basis of the degree-``d`` part of ``∩ I(L_i)``.

    Basis rows are coefficient vectors over ``monomials(ambient_rank, d)``.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    ncols = len(monomials(arr.ambient_rank, d))
    rows: tuple = ()
    for c in arr.components:
        rows += restriction_matrix(c.basis, d).rows
    basis = exactq.kernel(Matrix._raw(rows, ncols))
    return basis.nrows, basis


def vanishes_on(vector: Sequence, basis: Matrix, degree: int) -> bool:
    return not any(restriction_matrix(basis, degree).apply(vector))


def _lift(form: Sequence, pivots: Sequence[int], ambient_rank: int) -> LinearForm:
    coeffs = [Fraction(0)] * ambient_rank
    for p, c in zip(pivots, form):
        coeffs[p] = Fraction(c)
    return LinearForm(coeffs)


def _require_joined(arr: Arrangement, order: Sequence[int]) -> tuple[int, ...]:
    check = verify_linearly_joined(arr, order)
    if not check.ok:
        raise NotLinearlyJoined(f"ordering {list(order)} fails at position {check.first_failure}")
    return tuple(int(i) for i in order)


def mu_count(arr: Arrangement, order: Sequence[int]) -> int:
    """Predicted minimal number of generators of the ideal inside ``span(Y)``.

    Adding ``L_i`` to ``X' = L_1 ∪ ... ∪ L_{i-1}`` contributes ``c' * c''``,
    the codimensions of ``span(X')`` and of ``L_i`` inside ``span(L_1..L_i)``.
    """
    order = _require_joined(arr, order)
    mu = 0
    prev = arr.span_rank(order[:1]) if order else 0
    for i in range(1, len(order)):
        cur = arr.span_rank(order[: i + 1])
        mu += (cur - prev) * (cur - arr.components[order[i]].rank)
        prev = cur
    return mu


def _span(mats: Sequence[Matrix], ncols: int) -> Matrix:
    rows = tuple(r for m in mats for r in m.rows)
    return exactq.canonical(Matrix._raw(rows, ncols))


def equations_for_ordered_arrangement(arr: Arrangement, order: Sequence[int]) -> GeneratorSet:
    order = _require_joined(arr, order)
    n_amb = arr.ambient_rank
    quadrics: list[QuadricProduct] = []
    if order:
        span_y = arr.span()
        pivots = exactq.pivot_columns(span_y)
        s = len(pivots)
        # coordinates on span(Y): the pivot entries of a vector in it
        ls = [exactq.canonical(arr.components[i].basis.select_columns(pivots)) for i in order]
        n = len(ls)
        comp = [None] * n
        comp[0] = ls[0]
        for i in range(1, n):
            prefix = _span(ls[:i], s)
            m = exactq.row_space_intersect(prefix, ls[i])
            if m.nrows == 0:
                comp[i] = ls[i]
            else:
                # least r with L_r ∩ L_i = M; any valid choice gives the same ideal
                r = next(j for j in range(i) if exactq.row_space_intersect(ls[j], ls[i]) == m)
                comp[i] = exactq.complement_within(ls[i], exactq.row_space_intersect(ls[r], ls[i]))
        for j in range(1, n):
            tail = comp[j + 1:]
            left = vanishing_forms(_span([ls[j], *tail], s))
            right = vanishing_forms(_span([*ls[:j], *tail], s))
            for f in left:
                lf = _lift(f.coefficients, pivots, n_amb)
                for g in right:
                    quadrics.append(QuadricProduct(lf, _lift(g.coefficients, pivots, n_amb), j + 1))
        for f in vanishing_forms(span_y):
            for t in range(n_amb):
                quadrics.append(QuadricProduct(f, LinearForm(exactq.unit_vector(n_amb, t)), 0))
    vecs = [q.vector() for q in quadrics]
    d2 = exactq.rank_of_rows(vecs, len(monomials(n_amb, 2))) if vecs else 0
    return GeneratorSet(tuple(quadrics), d2, mu_count(arr, order), order, n_amb)


@dataclass
class GenerationReport:
    span_matches: bool
    degree3_surjective: bool
    all_vanish: bool
    count_matches: bool
    degree2_rank: int
    degree3_rank: int
    core_rank: int
    mu_predicted: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.span_matches and self.degree3_surjective and self.all_vanish and self.count_matches

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "span_matches": self.span_matches,
            "degree3_surjective": self.degree3_surjective,
            "all_vanish": self.all_vanish,
            "count_matches": self.count_matches,
            "degree2_rank": self.degree2_rank,
            "degree3_rank": self.degree3_rank,
            "core_rank": self.core_rank,
            "mu_predicted": self.mu_predicted,
            "failures": self.failures,
        }


def verify_generation(arr: Arrangement, gens: GeneratorSet) -> GenerationReport:
    """Compare emitted quadrics with the exact graded pieces of the ideal.

    (i) the quadrics span the degree-2 piece; (ii) the degree-2 piece times
    the variables spans the degree-3 piece; (iii) each quadric vanishes on
    each component; (iv) the rank of the non-degenerate quadrics equals the
    predicted number of minimal generators.
    """
    n = arr.ambient_rank
    n2 = len(monomials(n, 2))
    n3 = len(monomials(n, 3))
    failures = []
    r2, piece2 = degree_piece(arr, 2)
    r3, piece3 = degree_piece(arr, 3)
    vecs = [q.vector() for q in gens.quadrics]

    restr = [restriction_matrix(c.basis, 2) for c in arr.components]
    all_vanish = True
    for k, v in enumerate(vecs):
        for c, rm in zip(arr.components, restr):
            if any(rm.apply(v)):
                all_vanish = False
                failures.append(f"quadric {k} does not vanish on {c.name}")
                break

    q_rank = exactq.rank_of_rows(vecs, n2) if vecs else 0
    joint = exactq.rank_of_rows(list(piece2.rows) + vecs, n2)
    span_matches = q_rank == r2 and joint == r2
    if not span_matches:
        failures.append(f"quadric span rank {q_rank} (joint {joint}) vs degree-2 piece rank {r2}")

    idx3 = _monomial_index(n, 3)
    mono2 = monomials(n, 2)
    multiples = []
    for row in piece2.rows:
        for t in range(n):
            vec = [Fraction(0)] * n3
            for m, c in zip(mono2, row):
                if c:
                    vec[idx3[tuple(sorted(m + (t,)))]] += c
            multiples.append(vec)
    m_rank = exactq.rank_of_rows(multiples, n3) if multiples else 0
    joint3 = exactq.rank_of_rows(list(piece3.rows) + multiples, n3) if multiples else r3
    degree3_surjective = m_rank == r3 and joint3 == r3
    if not degree3_surjective:
        failures.append(f"linear multiples of degree-2 piece have rank {m_rank}, degree-3 piece {r3}")

    core = [q.vector() for q in gens.core]
    core_rank = exactq.rank_of_rows(core, n2) if core else 0
    count_matches = core_rank == gens.mu_predicted
    if not count_matches:
        failures.append(f"rank-reduced generator count {core_rank} != predicted {gens.mu_predicted}")

    return GenerationReport(span_matches, degree3_surjective, all_vanish, count_matches,
                            r2, r3, core_rank, gens.mu_predicted, failures)
