"""Hochschild chain and cochain complexes in positional tensor bases.

The basis of A^{(x) r} is the set of multi-indices ``(i_1, ..., i_r)`` in
lexicographic order (first factor most significant), i.e. the order of
``itertools.product(range(n), repeat=r)``.  A cochain in Hom(A^{(x) r}, M) has
coordinates indexed by ``(multi-index, target)`` with position
``pos(multi-index) * dim M + target``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .algebra import Algebra, Bimodule, NotACocycleError, dual_bimodule, regular_bimodule
from .fields import Field
from .linalg import Matrix, homology_representatives, kernel_basis, rank

MAX_DEGREE = 4


class DegreeCapError(ValueError):
    """Raised when a requested degree exceeds the configured cap."""


def check_cap(n: int, cap: int | None) -> None:
    cap = MAX_DEGREE if cap is None else cap
    if n > cap:
        raise DegreeCapError(f"degree {n} exceeds the cap {cap}")


def encode(idx: Sequence[int], n: int) -> int:
    pos = 0
    for i in idx:
        pos = pos * n + i
    return pos


def decode(pos: int, n: int, length: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        out.append(pos % n)
        pos //= n
    return tuple(reversed(out))


def tensor_basis(n: int, length: int):
    return itertools.product(range(n), repeat=length)


# -- coordinate vectors ---------------------------------------------------


@dataclass(frozen=True)
class ChainVector:
    """An element of C_degree(A) = A^{(x) degree+1}, stored sparsely."""

    field: Field
    degree: int
    algebra_dim: int
    coords: Mapping[tuple[int, ...], object] = dc_field(default_factory=dict)

    def __post_init__(self):
        for idx in self.coords:
            if len(idx) != self.degree + 1 or any(not 0 <= i < self.algebra_dim for i in idx):
                raise IndexError(f"bad multi-index {idx} for degree {self.degree}")

    def to_dense(self) -> list:
        n = self.algebra_dim
        out = [self.field.zero] * n ** (self.degree + 1)
        for idx, v in self.coords.items():
            out[encode(idx, n)] = v
        return out

    @classmethod
    def from_dense(cls, field: Field, degree: int, n: int, vec: Sequence) -> "ChainVector":
        coords = {decode(p, n, degree + 1): v for p, v in enumerate(vec) if v != field.zero}
        return cls(field, degree, n, coords)


@dataclass(frozen=True)
class CochainVector:
    """An element of Hom(A^{(x) degree}, M) keyed by ``(multi-index, target)``."""

    field: Field
    degree: int
    algebra_dim: int
    coefficient_dim: int
    coords: Mapping[tuple, object] = dc_field(default_factory=dict)

    def __post_init__(self):
        by_index: dict = {}
        for key, v in self.coords.items():
            idx, t = key
            if len(idx) != self.degree or any(not 0 <= i < self.algebra_dim for i in idx):
                raise IndexError(f"bad multi-index {idx} for degree {self.degree}")
            if not 0 <= t < self.coefficient_dim:
                raise IndexError(f"target {t} out of range")
            if v != self.field.zero:
                by_index.setdefault(tuple(idx), []).append((t, v))
        object.__setattr__(self, "_by_index", {k: tuple(sorted(v)) for k, v in by_index.items()})

    def value(self, *idx: int) -> tuple:
        """Sparse value on the basis tensor ``e_idx[0] (x) ...``."""
        return self._by_index.get(tuple(idx), ())

    def to_dense(self) -> list:
        m = self.coefficient_dim
        out = [self.field.zero] * (self.algebra_dim**self.degree * m)
        for (idx, t), v in self.coords.items():
            out[encode(idx, self.algebra_dim) * m + t] = v
        return out

    @classmethod
    def from_dense(cls, field: Field, degree: int, n: int, m: int, vec: Sequence) -> "CochainVector":
        coords = {}
        for p, v in enumerate(vec):
            if v != field.zero:
                coords[(decode(p // m, n, degree), p % m)] = v
        return cls(field, degree, n, m, coords)

    def __add__(self, other: "CochainVector") -> "CochainVector":
        F = self.field
        return CochainVector.from_dense(
            F, self.degree, self.algebra_dim, self.coefficient_dim,
            [F.add(a, b) for a, b in zip(self.to_dense(), other.to_dense())],
        )

    def scale(self, s) -> "CochainVector":
        F = self.field
        return CochainVector.from_dense(
            F, self.degree, self.algebra_dim, self.coefficient_dim, [F.mul(s, a) for a in self.to_dense()]
        )

    def is_zero(self) -> bool:
        return not self._by_index


def cochain2(field: Field, n: int, coords: Mapping | None = None) -> CochainVector:
    """A 2-cochain A (x) A -> A*: keys ``((j, k), i)`` mean alpha(e_j, e_k)(e_i)."""
    return CochainVector(field, 2, n, n, dict(coords or {}))


def zero_cochain2(A: Algebra) -> CochainVector:
    return cochain2(A.field, A.dim)


@dataclass(frozen=True)
class TildeForm:
    """A functional on A^{(x) 3}: keys ``(i, j, k)``."""

    field: Field
    algebra_dim: int
    coords: Mapping[tuple[int, int, int], object] = dc_field(default_factory=dict)

    def to_dense(self) -> list:
        n = self.algebra_dim
        out = [self.field.zero] * n**3
        for idx, v in self.coords.items():
            out[encode(idx, n)] = v
        return out

    @classmethod
    def from_dense(cls, field: Field, n: int, vec: Sequence) -> "TildeForm":
        return cls(field, n, {decode(p, n, 3): v for p, v in enumerate(vec) if v != field.zero})


def to_tilde(alpha: CochainVector) -> TildeForm:
    """alpha~(a (x) b (x) c) = alpha(b (x) c)(a)."""
    coords = {(i, j, k): v for ((j, k), i), v in alpha.coords.items() if v != alpha.field.zero}
    return TildeForm(alpha.field, alpha.algebra_dim, coords)


def from_tilde(t: TildeForm) -> CochainVector:
    coords = {((j, k), i): v for (i, j, k), v in t.coords.items() if v != t.field.zero}
    return cochain2(t.field, t.algebra_dim, coords)


# -- Hochschild chain complex --------------------------------------------


def _products(A: Algebra) -> list:
    return [[A.table[i][j] for j in range(A.dim)] for i in range(A.dim)]


def boundary_matrix(A: Algebra, n: int, max_degree: int | None = None) -> Matrix:
    """Matrix of b_n : A^{(x) n+1} -> A^{(x) n}, including the wrap-around term."""
    if n < 1:
        raise ValueError("b_n is defined for n >= 1")
    check_cap(n, max_degree)
    F = A.field
    d = A.dim
    prods = _products(A)
    one, minus = F.one, F.neg(F.one)
    columns = []
    for idx in tensor_basis(d, n + 1):
        col: dict = {}
        for i in range(n):
            sign = one if i % 2 == 0 else minus
            pre, post = idx[:i], idx[i + 2:]
            for k, c in prods[idx[i]][idx[i + 1]]:
                p = encode(pre + (k,) + post, d)
                col[p] = F.add(col.get(p, F.zero), F.mul(sign, c))
        sign = one if n % 2 == 0 else minus
        mid = idx[1:n]
        for k, c in prods[idx[n]][idx[0]]:
            p = encode((k,) + mid, d)
            col[p] = F.add(col.get(p, F.zero), F.mul(sign, c))
        columns.append(col)
    return Matrix.from_columns(F, d**n, columns)


def chain_differential(A: Algebra, n: int, max_degree: int | None = None) -> Matrix:
    """b_n for n >= 1 and the zero map C_0 -> 0 for n = 0."""
    if n == 0:
        return Matrix.zeros(A.field, 0, A.dim)
    return boundary_matrix(A, n, max_degree)


@dataclass
class HomologyResult:
    dim: int
    representatives: list = dc_field(default_factory=list)


def hochschild_homology(A: Algebra, n: int, max_degree: int | None = None) -> HomologyResult:
    """HH_n(A) = ker b_n / im b_{n+1}; representatives are reduced modulo the image."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    b_out = chain_differential(A, n, max_degree)
    b_in = boundary_matrix(A, n + 1, max_degree)
    reps = homology_representatives(b_out, b_in)
    dim = b_out.ncols - rank(b_out) - rank(b_in)
    if dim != len(reps):
        raise ArithmeticError("homology dimension and representative count disagree")
    return HomologyResult(dim, reps)


# -- Hochschild cochain complex ------------------------------------------


def _by_target(field: Field, table, outer: int, inner: int):
    """Regroup Sparse action vectors table[x][s] into out[x][t] = [(s, v)]."""
    out = [[[] for _ in range(inner)] for _ in range(outer)]
    for x in range(outer):
        for s, vec in enumerate(table[x]):
            for t, v in vec:
                out[x][t].append((s, v))
    return out


def coboundary_matrix(A: Algebra, M: Bimodule, n: int, max_degree: int | None = None) -> Matrix:
    """Matrix of delta^n : Hom(A^{(x) n}, M) -> Hom(A^{(x) n+1}, M)."""
    if n < 0:
        raise ValueError("delta^n is defined for n >= 0")
    check_cap(n, max_degree)
    F = A.field
    d, m = A.dim, M.dim
    prods = _products(A)
    one, minus = F.one, F.neg(F.one)
    # left_t[a][t] = [(s, coeff of e_t in a . m_s)]
    left_t = _by_target(F, M.left, d, m)
    # right_t[a][t] = [(s, coeff of e_t in m_s . a)]
    right_by_a = [[M.right[s][a] for s in range(m)] for a in range(d)]
    right_t = _by_target(F, right_by_a, d, m)
    rows = []
    last_sign = one if (n + 1) % 2 == 0 else minus
    for idx in tensor_basis(d, n + 1):
        for t in range(m):
            row: dict = {}
            base = encode(idx[1:], d) * m
            for s, v in left_t[idx[0]][t]:
                row[base + s] = F.add(row.get(base + s, F.zero), v)
            for i in range(1, n + 1):
                sign = one if i % 2 == 0 else minus
                pre, post = idx[: i - 1], idx[i + 1:]
                for k, c in prods[idx[i - 1]][idx[i]]:
                    p = encode(pre + (k,) + post, d) * m + t
                    row[p] = F.add(row.get(p, F.zero), F.mul(sign, c))
            base = encode(idx[:n], d) * m
            for s, v in right_t[idx[n]][t]:
                row[base + s] = F.add(row.get(base + s, F.zero), F.mul(last_sign, v))
            rows.append(row)
    return Matrix(F, d ** (n + 1) * m, d**n * m, rows)


def hochschild_cohomology(A: Algebra, M: Bimodule, n: int, max_degree: int | None = None) -> HomologyResult:
    """HH^n(A, M) = ker delta^n / im delta^{n-1}."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    d_out = coboundary_matrix(A, M, n, max_degree)
    if n == 0:
        d_in = Matrix.zeros(A.field, M.dim, 0)
    else:
        d_in = coboundary_matrix(A, M, n - 1, max_degree)
    reps = homology_representatives(d_out, d_in)
    dim = d_out.ncols - rank(d_out) - rank(d_in)
    if dim != len(reps):
        raise ArithmeticError("cohomology dimension and representative count disagree")
    return HomologyResult(dim, reps)


def coboundary(A: Algebra, M: Bimodule, phi: CochainVector) -> CochainVector:
    D = coboundary_matrix(A, M, phi.degree)
    return CochainVector.from_dense(A.field, phi.degree + 1, A.dim, M.dim, D.apply(phi.to_dense()))


def check_cocycle2(A: Algebra, M: Bimodule, alpha: CochainVector) -> tuple[int, int, int] | None:
    """First basis triple violating a alpha(b,c) - alpha(ab,c) + alpha(a,bc) - alpha(a,b) c = 0."""
    if alpha.degree != 2 or alpha.algebra_dim != A.dim or alpha.coefficient_dim != M.dim:
        raise ValueError("alpha must be a 2-cochain with values in M")
    D = coboundary_matrix(A, M, 2)
    out = D.apply(alpha.to_dense())
    m = M.dim
    for p, v in enumerate(out):
        if v != A.field.zero:
            return decode(p // m, A.dim, 3)
    return None


def is_cocycle2(A: Algebra, M: Bimodule, alpha: CochainVector) -> bool:
    return check_cocycle2(A, M, alpha) is None


def require_cocycle2(A: Algebra, alpha: CochainVector, M: Bimodule | None = None) -> Bimodule:
    M = dual_bimodule(A) if M is None else M
    bad = check_cocycle2(A, M, alpha)
    if bad is not None:
        raise NotACocycleError(bad, tuple(A.labels[i] for i in bad))
    return M


def cocycle_space(A: Algebra, M: Bimodule | None = None) -> list[CochainVector]:
    """Basis of ker delta^2 (free-column order)."""
    M = dual_bimodule(A) if M is None else M
    D = coboundary_matrix(A, M, 2)
    return [CochainVector.from_dense(A.field, 2, A.dim, M.dim, v) for v in kernel_basis(D)]


def coboundary_generators(A: Algebra, M: Bimodule | None = None) -> list[CochainVector]:
    """Nonzero delta^1 of the basis 1-cochains, in basis order."""
    M = dual_bimodule(A) if M is None else M
    D = coboundary_matrix(A, M, 1)
    out = []
    for j in range(D.ncols):
        col = D.column(j)
        if any(v != A.field.zero for v in col):
            out.append(CochainVector.from_dense(A.field, 2, A.dim, M.dim, col))
    return out


def cohomology_representatives2(A: Algebra, M: Bimodule | None = None) -> list[CochainVector]:
    M = dual_bimodule(A) if M is None else M
    res = hochschild_cohomology(A, M, 2)
    return [CochainVector.from_dense(A.field, 2, A.dim, M.dim, v) for v in res.representatives]


# -- contraction ----------------------------------------------------------


def contraction_matrix(A: Algebra, alpha: CochainVector, n: int) -> Matrix:
    """Matrix of i_alpha : C_n -> C_{n-m} for an A-valued m-cochain alpha.

    i_alpha(a_0 (x) ... (x) a_n) = a_0 alpha(a_1, ..., a_m) (x) a_{m+1} (x) ... (x) a_n
    """
    m = alpha.degree
    if alpha.coefficient_dim != A.dim:
        raise ValueError("contraction needs an A-valued cochain")
    if n < m:
        raise ValueError(f"cannot contract an {m}-cochain with a degree-{n} chain")
    F = A.field
    d = A.dim
    prods = _products(A)
    columns = []
    for idx in tensor_basis(d, n + 1):
        col: dict = {}
        value = alpha.value(*idx[1:m + 1])
        rest = idx[m + 1:]
        for s, v in value:
            for k, c in prods[idx[0]][s]:
                p = encode((k,) + rest, d)
                col[p] = F.add(col.get(p, F.zero), F.mul(v, c))
        columns.append(col)
    return Matrix.from_columns(F, d ** (n - m + 1), columns)


def central_contraction_matrix(A: Algebra, c: Sequence, n: int) -> Matrix:
    """i_c(a_0 (x) ...) = a_0 c (x) ... for c in A (a 0-cochain)."""
    coords = {((), s): v for s, v in enumerate(c) if v != A.field.zero}
    return contraction_matrix(A, CochainVector(A.field, 0, A.dim, A.dim, coords), n)


def contraction(A: Algebra, alpha: CochainVector, x: ChainVector) -> ChainVector:
    M = contraction_matrix(A, alpha, x.degree)
    return ChainVector.from_dense(A.field, x.degree - alpha.degree, A.dim, M.apply(x.to_dense()))


@dataclass
class ContractionCheck:
    """Outcome of :func:`contraction_identity` on C_n for an m-cochain.

    ``verbatim`` is ``b i_alpha - i_alpha b == i_{delta alpha}``; ``graded`` is
    ``b i_alpha - (-1)^m i_alpha b == (-1)^(m+1) i_{delta alpha}``.
    """

    m: int
    n: int
    verbatim: bool
    graded: bool


GRADED_CONVENTION = "b i_alpha - (-1)^m i_alpha b = (-1)^(m+1) i_{delta alpha}"


def contraction_identity(A: Algebra, alpha: CochainVector, n: int) -> ContractionCheck:
    """Compare b i_alpha - i_alpha b with i_{delta alpha} as maps out of C_n."""
    m = alpha.degree
    if n < m + 1:
        raise ValueError("need n >= m + 1 for a nontrivial identity")
    F = A.field
    b_i = chain_differential(A, n - m) @ contraction_matrix(A, alpha, n)
    if n - 1 >= m:
        i_b = contraction_matrix(A, alpha, n - 1) @ boundary_matrix(A, n)
    else:
        i_b = Matrix.zeros(F, b_i.nrows, b_i.ncols)
    i_d = contraction_matrix(A, coboundary(A, regular_bimodule(A), alpha), n)
    verbatim = b_i - i_b == i_d
    sign = 1 if m % 2 == 0 else -1
    graded = (b_i - (i_b if sign == 1 else -i_b)) == (-i_d if sign == 1 else i_d)
    return ContractionCheck(m, n, verbatim, graded)
