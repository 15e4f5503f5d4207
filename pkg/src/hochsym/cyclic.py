"""Connes boundary, the cyclic bicomplex and the degree-2 lifting test.

The total complex in degree n is ``Tot_n = C_n + C_{n-2} + C_{n-4} + ...``
(component p holds ``C_{n-2p}``) with differential

    d(x)_p = b x_p + B x_{p+1}.

On unnormalized chains the displayed Connes formula anticommutes with b but
does not square to zero (``B_1 B_0 (a) = 2 (a 1 1 - 1 a 1)``), so the total
complex built from it is a complex only up to degree 3.  Flipping the sign of
the unit-insertion terms gives ``(1 - t) s N``, which satisfies both
identities.  :func:`resolve_total_signs` tries the candidates in a fixed
order and reports the first whose total differential squares to zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra
from .complexes import TildeForm, boundary_matrix, check_cap, encode, tensor_basis
from .linalg import AffineSolution, Matrix, block_matrix, hstack, rank, solve_affine

CYCLIC_MAX_DEGREE = 3


class NotACocycleFormError(ValueError):
    """Raised when a tilde form is not killed by the dual of b_3."""


def connes_matrix(A: Algebra, n: int, unit_sign: int = -1) -> Matrix:
    """Matrix of B_n : A^{(x) n+1} -> A^{(x) n+2}.

    B_n(a_0..a_n) = sum_i (-1)^{ni} (1 (x) a_i..a_n (x) a_0..a_{i-1}
                                     + s a_i (x) 1 (x) a_{i+1}..a_n (x) a_0..a_{i-1})

    with ``s = unit_sign``.  The default s = -1 is the displayed formula;
    s = +1 is (1 - t) s N, the operator with B B = 0 on unnormalized chains.
    """
    if unit_sign not in (1, -1):
        raise ValueError("unit_sign must be +1 or -1")
    if n < 0:
        raise ValueError("B_n is defined for n >= 0")
    F = A.field
    d = A.dim
    unit = [(k, v) for k, v in enumerate(A.unit) if v != F.zero]
    columns = []
    for idx in tensor_basis(d, n + 1):
        col: dict = {}
        for i in range(n + 1):
            sign = F.one if (n * i) % 2 == 0 else F.neg(F.one)
            rotated = idx[i:] + idx[:i]
            for k, u in unit:
                p = encode((k,) + rotated, d)
                col[p] = F.add(col.get(p, F.zero), F.mul(sign, u))
                p = encode((rotated[0], k) + rotated[1:], d)
                term = F.mul(sign, u)
                col[p] = F.add(col.get(p, F.zero), term if unit_sign == 1 else F.neg(term))
        columns.append(col)
    return Matrix.from_columns(F, d ** (n + 2), columns)


# -- total complex --------------------------------------------------------


@dataclass(frozen=True)
class SignConvention:
    name: str
    twisted: bool
    unit_sign: int
    description: str


VERBATIM = SignConvention(
    "verbatim", False, -1, "d = b + B with B as displayed (unit terms negative), no column twist")
TWISTED = SignConvention(
    "column-twist", True, -1, "d = (-1)^p b + B on column p, B as displayed")
UNIT_FLIP = SignConvention(
    "unit-flip", False, 1, "d = b + B with B = (1 - t) s N (unit terms positive), no column twist")
CANDIDATES = (VERBATIM, TWISTED, UNIT_FLIP)


def total_dims(A: Algebra, n: int) -> list[int]:
    """Dimensions of the components C_n, C_{n-2}, ... of Tot_n."""
    if n < 0:
        return []
    return [A.dim ** (n - 2 * p + 1) for p in range(n // 2 + 1)]


def total_differential(A: Algebra, n: int, convention: SignConvention = VERBATIM) -> Matrix:
    """d_n : Tot_n -> Tot_{n-1}; for n = 0 the zero map to the zero space."""
    F = A.field
    src = total_dims(A, n)
    dst = total_dims(A, n - 1)
    if n == 0:
        return Matrix.zeros(F, 0, sum(src))
    blocks = {}
    for p in range(len(src)):
        deg = n - 2 * p
        if deg >= 1 and p < len(dst):
            b = boundary_matrix(A, deg)
            if convention.twisted and p % 2 == 1:
                b = -b
            blocks[(p, p)] = b
        if p >= 1:
            blocks[(p - 1, p)] = connes_matrix(A, deg, convention.unit_sign)
    return block_matrix(F, dst, src, blocks)


def anticommutator(A: Algebra, n: int, unit_sign: int = -1) -> Matrix:
    """b_{n+1} B_n + B_{n-1} b_n as a map C_n -> C_n."""
    left = boundary_matrix(A, n + 1) @ connes_matrix(A, n, unit_sign)
    if n == 0:
        return left
    return left + connes_matrix(A, n - 1, unit_sign) @ boundary_matrix(A, n)


def connes_square(A: Algebra, n: int, unit_sign: int = -1) -> Matrix:
    """B_{n+1} B_n as a map C_n -> C_{n+2}."""
    return connes_matrix(A, n + 1, unit_sign) @ connes_matrix(A, n, unit_sign)


def total_square_vanishes(A: Algebra, convention: SignConvention,
                          max_degree: int = CYCLIC_MAX_DEGREE + 1) -> bool:
    return all(
        (total_differential(A, n - 1, convention) @ total_differential(A, n, convention)).is_zero()
        for n in range(2, max_degree + 1)
    )


def resolve_total_signs(A: Algebra, max_degree: int = CYCLIC_MAX_DEGREE + 1) -> SignConvention:
    """First convention in :data:`CANDIDATES` whose total differential squares to zero."""
    for convention in CANDIDATES:
        if total_square_vanishes(A, convention, max_degree):
            return convention
    raise ArithmeticError("no sign convention makes the total differential square to zero")


def cyclic_homology(A: Algebra, n: int, max_degree: int | None = None,
                    convention: SignConvention | None = None) -> int:
    """dim HC_n(A) from ranks of the total complex.

    ``convention`` defaults to :func:`resolve_total_signs` of ``A``.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    check_cap(n, CYCLIC_MAX_DEGREE if max_degree is None else max_degree)
    if convention is None:
        convention = resolve_total_signs(A)
    d_out = total_differential(A, n, convention)
    d_in = total_differential(A, n + 1, convention)
    return d_out.ncols - rank(d_out) - rank(d_in)


def cyclic_cohomology(A: Algebra, n: int, max_degree: int | None = None,
                      convention: SignConvention | None = None) -> int:
    """dim HC^n(A) from the dual total complex (transposed differentials).

    ``convention`` defaults to :func:`resolve_total_signs` of ``A``.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    check_cap(n, CYCLIC_MAX_DEGREE if max_degree is None else max_degree)
    if convention is None:
        convention = resolve_total_signs(A)
    d_out = total_differential(A, n + 1, convention).T
    d_in = total_differential(A, n, convention).T
    return d_out.ncols - rank(d_out) - rank(d_in)


# -- degree-2 cyclic cocycles ---------------------------------------------


@dataclass(frozen=True)
class CyclicClass2:
    """A cyclic 2-cocycle (beta, gamma) in (A^{(x) 3})* + A*, as dense vectors."""

    beta: tuple
    gamma: tuple

    def violations(self, A: Algebra, unit_sign: int = -1) -> list[str]:
        """Names of the cocycle equations that fail (empty when valid)."""
        out = []
        b3 = boundary_matrix(A, 3)
        if any(v != A.field.zero for v in b3.T.apply(list(self.beta))):
            out.append("b3* beta != 0")
        lhs = connes_matrix(A, 1, unit_sign).T.apply(list(self.beta))
        rhs = boundary_matrix(A, 1).T.apply(list(self.gamma))
        if any(A.field.add(x, y) != A.field.zero for x, y in zip(lhs, rhs)):
            out.append("B1* beta + b1* gamma != 0")
        return out


@dataclass
class LiftResult:
    """Outcome of :func:`lift_along_I2`; ``solution`` carries the certificate when infeasible."""

    lift: CyclicClass2 | None
    eta: list | None
    solution: AffineSolution

    @property
    def found(self) -> bool:
        return self.lift is not None


def _dense_beta(A: Algebra, beta) -> list:
    if isinstance(beta, TildeForm):
        return beta.to_dense()
    vec = list(beta)
    if len(vec) != A.dim**3:
        raise ValueError(f"expected a form on A^(x)3 of length {A.dim ** 3}")
    return vec


def lift_system(A: Algebra, unit_sign: int = -1) -> Matrix:
    """The matrix [-(b_2 B_1)^T | b_1^T] acting on the unknown (eta, gamma)."""
    b1, b2, B1 = boundary_matrix(A, 1), boundary_matrix(A, 2), connes_matrix(A, 1, unit_sign)
    return hstack([-(b2 @ B1).T, b1.T])


def lift_along_I2(A: Algebra, beta, unit_sign: int = -1) -> LiftResult:
    """Find eta, gamma with B_1*(beta - b_2* eta) + b_1*(gamma) = 0.

    Returns the cyclic cocycle (beta - b_2* eta, gamma), or the infeasibility
    certificate of the linear system.  B_1 is the displayed operator unless
    ``unit_sign = 1``; the two differ on a Hochschild 2-cocycle by an image of
    b_1*, so feasibility does not depend on the choice.
    """
    F = A.field
    beta = _dense_beta(A, beta)
    if any(v != F.zero for v in boundary_matrix(A, 3).T.apply(beta)):
        raise NotACocycleFormError("beta is not killed by b_3*")
    target = [F.neg(v) for v in connes_matrix(A, 1, unit_sign).T.apply(beta)]
    sol = solve_affine(lift_system(A, unit_sign), target)
    if not sol.feasible:
        return LiftResult(None, None, sol)
    n2 = A.dim**2
    eta, gamma = sol.particular[:n2], sol.particular[n2:]
    shift = boundary_matrix(A, 2).T.apply(eta)
    lifted = CyclicClass2(tuple(F.sub(x, y) for x, y in zip(beta, shift)), tuple(gamma))
    bad = lifted.violations(A, unit_sign)
    if bad:
        raise ArithmeticError(f"lift failed verification: {bad}")
    return LiftResult(lifted, eta, sol)

