"""Seeded random arrangements for tests and the ``random`` command."""

from __future__ import annotations

import random

from . import exactq
from .arrangement import Arrangement, ArrangementError, Subspace, is_small
from .exactq import Matrix


def _fresh_directions(span: Matrix, k: int, ambient_rank: int, rng: random.Random) -> Matrix:
    """``k`` random vectors whose span meets ``span`` only in 0."""
    whole = Matrix.identity(ambient_rank)
    base = exactq.rank(span) if span.nrows else 0
    while True:
        vecs = Matrix([exactq.random_point(whole, rng, bound=9) for _ in range(k)], ambient_rank)
        if exactq.rank(span.stack(vecs)) == base + k:
            return exactq.canonical(vecs)


def random_small_arrangement(components: int, ambient_rank: int, seed: int,
                             max_fresh: int = 3) -> Arrangement:
    """A random small arrangement, built as a linearly joined sequence.

    Each new component is a glue space plus at least one direction outside
    the current span.  The glue is a random proper subspace of one earlier
    component (possibly zero) or, usually when one exists, a random
    nonzero subspace of an intersection of two earlier components.  The result is re-checked with :func:`is_small`.
    """
    if components < 1:
        raise ArrangementError("components must be >= 1")
    if ambient_rank < components:
        raise ArrangementError(f"ambient rank {ambient_rank} too small for {components} components")
    rng = random.Random(seed)
    room = ambient_rank
    bases: list[Matrix] = []
    pair_meets: list[Matrix] = []
    span = Matrix.zero_space(ambient_rank)
    for k in range(components):
        left = components - k - 1  # each later component needs one fresh direction
        fresh = rng.randint(1, max(1, min(max_fresh, room - left)))
        if bases:
            meets = [m for m in pair_meets if m.nrows]
            if meets and rng.random() < 0.7:
                # glue inside L_a ∩ L_b gives edges to both, so G_Y gets cycles
                host = meets[rng.randrange(len(meets))]
                glue = exactq.random_subspace(host, rng.randint(1, host.nrows), rng, bound=9)
            else:
                host = bases[rng.randrange(len(bases))]
                glue = exactq.random_subspace(host, rng.randint(0, host.nrows - 1), rng, bound=9)
        else:
            glue = Matrix.zero_space(ambient_rank)
        new = exactq.canonical(glue.stack(_fresh_directions(span, fresh, ambient_rank, rng)))
        pair_meets.extend(exactq.row_space_intersect(b, new) for b in bases)
        bases.append(new)
        span = exactq.row_space_sum(span, new)
        room -= fresh
    arr = Arrangement(ambient_rank, tuple(Subspace(f"L{i}", b) for i, b in enumerate(bases)))
    if not is_small(arr).small:
        raise AssertionError(f"generated arrangement (seed {seed}) is not small")
    return arr


def random_arrangement(components: int, ambient_rank: int, seed: int) -> Arrangement:
    """A random arrangement that may or may not be small.

    Components are spans of random subsets of a small pool of random vectors,
    which forces nontrivial intersections; comparable draws are discarded.
    """
    rng = random.Random(seed)
    whole = Matrix.identity(ambient_rank)
    pool_size = rng.randint(ambient_rank, ambient_rank + 2)
    pool = [exactq.random_point(whole, rng, bound=5) for _ in range(pool_size)]
    if rng.random() < 0.5:
        pool[:ambient_rank] = [exactq.unit_vector(ambient_rank, i) for i in range(ambient_rank)]
    chosen: list[Matrix] = []
    for _ in range(40 * components):
        if len(chosen) == components:
            break
        size = rng.randint(1, min(3, ambient_rank - 1) if ambient_rank > 1 else 1)
        m = exactq.canonical(Matrix(rng.sample(pool, size), ambient_rank))
        if m.nrows == ambient_rank and ambient_rank > 1:
            continue
        if any(exactq.contains(m, c) or exactq.contains(c, m) for c in chosen):
            continue
        chosen.append(m)
    return Arrangement(ambient_rank, tuple(Subspace(f"L{i}", b) for i, b in enumerate(chosen)))
