"""Deciding whether a linear family of square matrices contains a nonsingular one.

For a pencil ``P(t) = sum_l t_l M_l`` of ``n x n`` matrices, ``det P(t)`` is a
polynomial of total degree at most ``n``.  A polynomial of total degree ``d``
that vanishes on the simplex lattice

    {(s_{j_1}, ..., s_{j_m}) : j_1 + ... + j_m <= d}

for distinct field elements ``s_0, ..., s_d`` is identically zero (induct on
``m`` after splitting off the factor ``t_m - s_0``).  So evaluating on that
lattice either produces a nonsingular member or certifies that none exists
over any extension field.

Over a finite field with at most ``d`` elements the lattice does not fit.
Then the search either enumerates every point of the base field (an exact
answer for base-field points) or, when the caller knows the answer is stable
under field extension, runs the lattice in ``GF(p^k)`` and afterwards looks
for a base-field witness.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .fields import Field, embed, grid_field
from .linalg import dense_rank


def simplex_points(nvars: int, degree: int) -> Iterator[tuple[int, ...]]:
    """Index tuples with coordinate sum <= degree, in lexicographic order."""
    if nvars == 0:
        yield ()
        return
    for first in range(degree + 1):
        for rest in simplex_points(nvars - 1, degree - first):
            yield (first,) + rest


def combine(field: Field, pencil: Sequence[Sequence[Sequence]], coeffs: Sequence, size: int | None = None) -> list[list]:
    """Dense ``sum_l coeffs[l] * pencil[l]`` (pencil entries must lie in ``field``)."""
    n = size if size is not None else (len(pencil[0]) if pencil else 0)
    add, mul, zero = field.add, field.mul, field.zero
    out = [[zero] * n for _ in range(n)]
    for c, M in zip(coeffs, pencil):
        if c == zero:
            continue
        for i, row in enumerate(M):
            orow = out[i]
            for j, v in enumerate(row):
                if v != zero:
                    orow[j] = add(orow[j], mul(c, v))
    return out


@dataclass
class GridEvidence:
    """Record of an all-zero determinant search; :meth:`recheck` replays it."""

    kind: str  # "simplex" or "exhaustive"
    base_field: Field
    grid_field: Field
    nvars: int
    degree: int
    points: int
    pencil: list  # dense matrices over base_field
    max_rank: int = 0
    size: int | None = None

    @property
    def matrix_size(self) -> int:
        if self.size is not None:
            return self.size
        return len(self.pencil[0]) if self.pencil else 0

    def iter_points(self) -> Iterator[tuple]:
        if self.kind == "simplex":
            values = self.grid_field.elements_by_index(self.degree + 1)
            for idx in simplex_points(self.nvars, self.degree):
                yield tuple(values[i] for i in idx)
        else:
            values = self.base_field.elements_by_index(self.base_field.size)
            yield from itertools.product(values, repeat=self.nvars)

    def recheck(self) -> bool:
        """True iff every determinant on the recorded grid is zero."""
        pencil = _embed_pencil(self.base_field, self.grid_field, self.pencil)
        size = self.matrix_size
        n = 0
        for point in self.iter_points():
            n += 1
            if dense_rank(self.grid_field, combine(self.grid_field, pencil, point, size)) == size:
                return False
        return n == self.points

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "field": self.grid_field.name,
            "nvars": self.nvars,
            "degree": self.degree,
            "points_evaluated": self.points,
            "max_rank": self.max_rank,
            "matrix_size": self.matrix_size,
            "all_determinants_zero": True,
        }


@dataclass
class PencilResult:
    """Outcome of :func:`find_nonsingular`.

    ``point`` holds base-field coefficients of a nonsingular member, or is
    None with ``evidence`` describing the exhausted grid.
    """

    point: tuple | None
    evidence: GridEvidence | None
    matrix: list | None = None

    @property
    def found(self) -> bool:
        return self.point is not None


def _embed_pencil(base: Field, target: Field, pencil):
    if base == target:
        return pencil
    return [[[embed(base, target, v) for v in row] for row in M] for M in pencil]


def _first_nonsingular(field: Field, pencil, points, size: int) -> tuple[tuple | None, int, int]:
    """Returns (first nonsingular point or None, points evaluated, max rank seen)."""
    count = 0
    best = 0
    for point in points:
        count += 1
        r = dense_rank(field, combine(field, pencil, point, size))
        if r == size:
            return tuple(point), count, r
        best = max(best, r)
    return None, count, best


def find_nonsingular(
    field: Field,
    pencil: Sequence[Sequence[Sequence]],
    degree: int | None = None,
    *,
    random_tries: int = 0,
    seed: int = 0,
    extension_ok: bool = False,
    size: int | None = None,
) -> PencilResult:
    """Search the span of ``pencil`` for a nonsingular matrix.

    Args:
        field: field of the pencil entries.
        pencil: dense square matrices spanning the family.
        degree: bound on the total degree of the determinant; defaults to the
            matrix size.
        random_tries: number of seeded random base-field points tried before
            the deterministic grid.
        extension_ok: if the base field is too small for the lattice, decide
            over an extension (valid only when existence is extension-stable)
            and then search exhaustively for a base-field witness.
        size: matrix size, needed when ``pencil`` is empty (the family {0}).
    """
    pencil = [list(map(list, M)) for M in pencil]
    n = size if size is not None else (len(pencil[0]) if pencil else 0)
    if degree is None:
        degree = n
    m = len(pencil)
    if n == 0:
        return PencilResult((), None, [])

    if random_tries and m:
        rng = random.Random(seed)
        hi = max(degree, 3) * 4
        for _ in range(random_tries):
            point = tuple(field(rng.randint(-hi, hi)) for _ in range(m))
            M = combine(field, pencil, point, n)
            if dense_rank(field, M) == n:
                return PencilResult(point, None, M)

    if field.size is None or field.size > degree:
        values = field.elements_by_index(degree + 1)
        points = (tuple(values[i] for i in idx) for idx in simplex_points(m, degree))
        point, count, best = _first_nonsingular(field, pencil, points, n)
        if point is not None:
            return PencilResult(point, None, combine(field, pencil, point, n))
        return PencilResult(None, GridEvidence("simplex", field, field, m, degree, count, pencil, best, n))

    base_values = field.elements_by_index(field.size)
    exhaustive = itertools.product(base_values, repeat=m)
    if not extension_ok:
        point, count, best = _first_nonsingular(field, pencil, exhaustive, n)
        if point is not None:
            return PencilResult(point, None, combine(field, pencil, point, n))
        return PencilResult(None, GridEvidence("exhaustive", field, field, m, degree, count, pencil, best, n))

    big = grid_field(field, degree + 1)
    big_pencil = _embed_pencil(field, big, pencil)
    values = big.elements_by_index(degree + 1)
    points = (tuple(values[i] for i in idx) for idx in simplex_points(m, degree))
    point, count, best = _first_nonsingular(big, big_pencil, points, n)
    if point is None:
        return PencilResult(None, GridEvidence("simplex", field, big, m, degree, count, pencil, best, n))
    point, _, _ = _first_nonsingular(field, pencil, exhaustive, n)
    if point is None:
        raise RuntimeError("nonsingular over the extension but not over the base field")
    return PencilResult(point, None, combine(field, pencil, point, n))
