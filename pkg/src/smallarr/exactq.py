"""Exact linear algebra over the rationals.

Subspaces are represented by the row space of a :class:`Matrix`; the reduced
row echelon form with zero rows removed is the canonical representative, so
two subspaces are equal exactly when their canonical matrices compare equal.

Elimination runs fraction-free on integer rows (each row scaled to primitive
integers) and only converts to :class:`fractions.Fraction` when a canonical
form is returned.  Rank-only queries never leave the integers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Matrices with incompatible column counts were combined."""


class ContainmentError(ValueError):
    """A subspace was expected to contain another one and does not."""


def parse_entry(value) -> Fraction:
    """Parse a matrix literal entry: an int or a string ``"p/q"``."""
    if isinstance(value, bool):
        raise TypeError(f"boolean is not a matrix entry: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"matrix entries must be int or 'p/q' strings, got {value!r}")


def format_entry(value: Fraction):
    return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


class Matrix:
    """Immutable dense matrix of rationals, stored row-major."""

    __slots__ = ("rows", "ncols", "_hash", "_ints")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(parse_entry(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("column count required for a matrix with no rows")
            ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise DimensionError(f"ragged row: expected {ncols} entries, got {len(row)}")
        self.rows = rows
        self.ncols = ncols
        self._hash = None
        self._ints = None

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Matrix":
        # trusted path: rows is already a tuple of tuples of Fraction
        m = cls.__new__(cls)
        m.rows = rows
        m.ncols = ncols
        m._hash = None
        m._ints = None
        return m

    @classmethod
    def zero_space(cls, ncols: int) -> "Matrix":
        return cls((), ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), n)

    @classmethod
    def from_json(cls, data, ncols: int | None = None) -> "Matrix":
        return cls(data, ncols)

    def to_json(self) -> list[list]:
        return [[format_entry(x) for x in row] for row in self.rows]

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)
        return f"Matrix([{body}], ncols={self.ncols})"

    def __getitem__(self, idx):
        return self.rows[idx]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def int_rows(self) -> list[list[int]]:
        """Nonzero rows scaled to primitive integer vectors (cached; copy before mutating)."""
        if self._ints is None:
            self._ints = _integer_rows(self.rows)
        return self._ints

    def stack(self, other: "Matrix") -> "Matrix":
        _check_cols(self, other)
        m = Matrix._raw(self.rows + other.rows, self.ncols)
        if self._ints is not None and other._ints is not None:
            m._ints = self._ints + other._ints
        return m

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows), len(self.rows)) if self.rows else Matrix((), 0)

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        """Return ``M @ v``."""
        return tuple(sum((a * b for a, b in zip(row, vector)), Fraction(0)) for row in self.rows)

    def select_columns(self, cols: Sequence[int]) -> "Matrix":
        return Matrix(([row[c] for c in cols] for row in self.rows), len(cols))


def _check_cols(a: Matrix, b: Matrix) -> None:
    if a.ncols != b.ncols:
        raise DimensionError(f"column mismatch: {a.ncols} vs {b.ncols}")


def _primitive(row: list[int]) -> list[int]:
    g = reduce(gcd, row, 0)
    if g > 1:
        return [x // g for x in row]
    return row


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        den = reduce(lcm, (x.denominator for x in row), 1)
        if den == 1:
            ints = [x.numerator for x in row]
        else:
            ints = [x.numerator * (den // x.denominator) for x in row]
        if any(ints):
            out.append(_primitive(ints))
    return out


def _eliminate(rows: list[list[int]], ncols: int, reduced: bool) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gaussian elimination in place; returns (rows, pivot columns)."""
    pivots = []
    r = 0
    n = len(rows)
    for c in range(ncols):
        if r == n:
            break
        for i in range(r, n):
            if rows[i][c]:
                break
        else:
            continue
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        pc = prow[c]
        start = 0 if reduced else r + 1
        for i in range(start, n):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                g = gcd(pc, f)
                a, b = pc // g, f // g
                rows[i] = _primitive([a * x - b * y for x, y in zip(rows[i], prow)])
        pivots.append(c)
        r += 1
    del rows[r:]
    return rows, pivots


def rank(m: Matrix) -> int:
    """Rank of ``m``."""
    rows, _ = _eliminate(list(m.int_rows()), m.ncols, reduced=False)
    return len(rows)


def rank_of_int_rows(rows: Iterable[list[int]], ncols: int) -> int:
    """Rank of integer rows (not mutated)."""
    rows, _ = _eliminate(list(rows), ncols, reduced=False)
    return len(rows)


def rank_of_rows(rows: Iterable[Sequence], ncols: int) -> int:
    rows, _ = _eliminate(_integer_rows(rows), ncols, reduced=False)
    return len(rows)


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form of ``m`` with zero rows dropped, and the rank.

    >>> rref(Matrix([[2, 4], [1, 2]]))
    (Matrix([[1, 2]], ncols=2), 1)
    """
    rows, pivots = _eliminate(list(m.int_rows()), m.ncols, reduced=True)
    out = []
    for row, c in zip(rows, pivots):
        p = row[c]
        out.append(tuple(Fraction(x, p) for x in row))
    return Matrix._raw(tuple(out), m.ncols), len(out)


def canonical(m: Matrix) -> Matrix:
    return rref(m)[0]


def pivot_columns(m: Matrix) -> list[int]:
    """Pivot columns of the echelon form of ``m``."""
    _, pivots = _eliminate(list(m.int_rows()), m.ncols, reduced=False)
    return pivots


def row_space_sum(a: Matrix, b: Matrix) -> Matrix:
    """Canonical basis of ``rowspace(a) + rowspace(b)``."""
    _check_cols(a, b)
    return canonical(a.stack(b))


def kernel(m: Matrix) -> Matrix:
    """Canonical basis of the right null space ``{v : m v = 0}``."""
    red, _ = rref(m)
    pivots = [next(c for c, x in enumerate(row) if x) for row in red.rows]
    pivot_set = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, p in zip(red.rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return canonical(Matrix(basis, m.ncols))


def row_space_intersect(a: Matrix, b: Matrix) -> Matrix:
    """Canonical basis of ``rowspace(a) ∩ rowspace(b)``.

    Computed as the common zero set of the forms annihilating ``a`` and ``b``.
    """
    _check_cols(a, b)
    dual = kernel(a).stack(kernel(b))
    return kernel(dual)


def contains(big: Matrix, small: Matrix) -> bool:
    """True when ``rowspace(small) ⊆ rowspace(big)``."""
    _check_cols(big, small)
    return rank(big.stack(small)) == rank(big)


def intersection_rank(a: Matrix, b: Matrix) -> int:
    """``dim(a ∩ b)`` via the modular law, without building a basis."""
    _check_cols(a, b)
    return rank(a) + rank(b) - rank(a.stack(b))


def complement_within(l: Matrix, m: Matrix) -> Matrix:
    """A complement ``C`` of ``m`` inside ``l``: ``C ⊕ m = l``.

    Rows of the canonical basis of ``l`` are added first-fit whenever they
    raise the rank of ``m`` plus the rows already chosen.
    """
    _check_cols(l, m)
    if not contains(l, m):
        raise ContainmentError("complement_within requires rowspace(m) ⊆ rowspace(l)")
    base, target = rref(l)
    chosen: list = []
    current = list(m.rows)
    r = rank(m)
    for row in base.rows:
        if r == target:
            break
        trial = current + [row]
        tr = rank_of_rows(trial, l.ncols)
        if tr > r:
            chosen.append(row)
            current = trial
            r = tr
    return canonical(Matrix(chosen, l.ncols))


def random_coefficient(rng: random.Random, bound: int = 100) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_point(l: Matrix, seed, bound: int = 100) -> tuple[Fraction, ...]:
    """A nonzero random vector in the row space of ``l``.

    ``seed`` may be an int or a :class:`random.Random` instance; with an int
    the result is a pure function of ``(l, seed, bound)``.
    """
    base, r = rref(l)
    if r == 0:
        raise ValueError("random_point on the zero space")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    while True:
        coeffs = [random_coefficient(rng, bound) for _ in range(r)]
        if any(coeffs):
            break
    return tuple(
        sum((c * row[j] for c, row in zip(coeffs, base.rows)), Fraction(0))
        for j in range(l.ncols)
    )


def random_subspace(container: Matrix, dim: int, rng: random.Random, bound: int = 100) -> Matrix:
    """A random ``dim``-dimensional subspace of ``rowspace(container)``."""
    r = rank(container)
    if not 0 <= dim <= r:
        raise ValueError(f"cannot draw a rank-{dim} subspace of a rank-{r} space")
    if dim == 0:
        return Matrix.zero_space(container.ncols)
    while True:
        pts = [random_point(container, rng, bound) for _ in range(dim)]
        m = Matrix(pts, container.ncols)
        red, got = rref(m)
        if got == dim:
            return red


def unit_vector(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(j == i)) for j in range(n))
