"""Deciding whether a Hochschild extension T(A, alpha) = A + A* is symmetric.

Three independent procedures are implemented and cross-checked by
:func:`decide`:

* ``cond1``: build T(A, alpha) and search for a nondegenerate trace form.
* ``cond2``: find a central unit c of A and h in A* with
  ``alpha(a, b)(c) - alpha(b, a)(c) + h(ab - ba) = 0`` for all a, b.
* ``cond3``: find a central unit c such that the Hochschild class of
  ``i_c^*(alpha~)`` lifts to a cyclic 2-cocycle.

``itagaki`` (cond2 with h = 0) and ``oty`` (h = 0 and c = 1) are sufficient
tests only; when they fail the verdict is ``inconclusive``.

A 2-cochain alpha : A (x) A -> A* is handled through its tilde form
``t(i, j, k) = alpha(e_j, e_k)(e_i)``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .algebra import (
    Algebra,
    dual_bimodule,
    form_to_bimodule_iso,
    hochschild_extension,
    is_bimodule_morphism_to_dual,
    is_central,
    is_symmetric_algebra,
    multiply,
    try_invert,
)
from .complexes import (
    CochainVector,
    boundary_matrix,
    central_contraction_matrix,
    coboundary,
    encode,
    require_cocycle2,
    to_tilde,
)
from .cyclic import CyclicClass2, connes_matrix, lift_along_I2, lift_system
from .linalg import Matrix, hstack, kernel_basis, rank, solve_affine, span_basis, vstack
from .pencil import GridEvidence, find_nonsingular

METHODS = ("cond1", "cond2", "cond3", "itagaki", "oty")
EQUIVALENT = ("cond1", "cond2", "cond3")

SYMMETRIC = "symmetric"
NOT_SYMMETRIC = "not-symmetric"
INCONCLUSIVE = "inconclusive"


class InvalidWitnessError(ValueError):
    """A proposed (c, h) violates one of the witness conditions."""


class CriteriaDisagreement(RuntimeError):
    """Verdicts that must coincide do not; carries a dump of all systems."""

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump


@dataclass
class SymmetryCertificate:
    """Verdict of one method plus the data needed to re-verify it.

    ``solution_space`` spans the candidate c's (or, for cond1, the trace forms
    of T); for negative verdicts ``evidence`` records the exhausted
    determinant grid.
    """

    method: str
    verdict: str
    c: list | None = None
    h: list | None = None
    lift: CyclicClass2 | None = None
    form: list | None = None
    solution_space: list = dc_field(default_factory=list)
    evidence: GridEvidence | None = None
    failing_pair: tuple[int, int] | None = None

    @property
    def symmetric(self) -> bool:
        return self.verdict == SYMMETRIC

    @property
    def witness(self) -> tuple[list, list] | None:
        if self.c is None or self.h is None:
            return None
        return self.c, self.h

    def to_dict(self, A: Algebra) -> dict:
        fmt = A.field.format
        out: dict = {"method": self.method, "verdict": self.verdict}
        if self.c is not None:
            out["c"] = [fmt(v) for v in self.c]
        if self.h is not None:
            out["h"] = [fmt(v) for v in self.h]
        if self.lift is not None:
            out["lift"] = {
                "beta": [fmt(v) for v in self.lift.beta],
                "gamma": [fmt(v) for v in self.lift.gamma],
            }
        if self.form is not None:
            out["form"] = [fmt(v) for v in self.form]
        out["solution_space"] = [[fmt(v) for v in vec] for vec in self.solution_space]
        if self.evidence is not None:
            out["evidence"] = self.evidence.summary()
        if self.failing_pair is not None:
            out["failing_pair"] = [A.labels[i] for i in self.failing_pair]
        return out


# -- small helpers --------------------------------------------------------


def tilde_vector(alpha: CochainVector) -> list:
    """Dense alpha~ on A^(x)3."""
    return to_tilde(alpha).to_dense()


def _t(A: Algebra, t: Sequence, i: int, j: int, k: int):
    return t[encode((i, j, k), A.dim)]


def alpha_at_unit(A: Algebra, alpha: CochainVector) -> list:
    """alpha(1 (x) 1) as a vector in A*."""
    F = A.field
    out = [F.zero] * A.dim
    u = A.unit
    for j, uj in enumerate(u):
        if uj == F.zero:
            continue
        for k, uk in enumerate(u):
            if uk == F.zero:
                continue
            for i, v in alpha.value(j, k):
                out[i] = F.add(out[i], F.mul(F.mul(uj, uk), v))
    return out


def act_right(A: Algebra, f: Sequence, c: Sequence) -> list:
    """(f c)(x) = f(c x) for f in A*, c in A."""
    F = A.field
    out = []
    for x in range(A.dim):
        cx = multiply(A, list(c), A.basis_vector(x))
        acc = F.zero
        for fv, v in zip(f, cx):
            acc = F.add(acc, F.mul(fv, v))
        out.append(acc)
    return out


def _combination(F, coeffs: Sequence, basis: Sequence[Sequence], n: int) -> list:
    out = [F.zero] * n
    for t, vec in zip(coeffs, basis):
        if t == F.zero:
            continue
        for k, v in enumerate(vec):
            out[k] = F.add(out[k], F.mul(t, v))
    return out


def _centrality_rows(A: Algebra) -> list[dict]:
    """Rows in the c-unknowns for c e_j - e_j c = 0."""
    F = A.field
    n = A.dim
    return [
        {k: F.sub(A.constant(k, j, l), A.constant(j, k, l)) for k in range(n)}
        for j in range(n)
        for l in range(n)
    ]


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


def condition2_matrix(A: Algebra, alpha: CochainVector, with_h: bool = True) -> Matrix:
    """Homogeneous system in (c, h) (or c alone): one row per pair a < b, then centrality."""
    F = A.field
    n = A.dim
    t = tilde_vector(alpha)
    rows = []
    for a, b in _pairs(n):
        row = {k: F.sub(_t(A, t, k, a, b), _t(A, t, k, b, a)) for k in range(n)}
        if with_h:
            for k in range(n):
                row[n + k] = F.sub(A.constant(a, b, k), A.constant(b, a, k))
        rows.append(row)
    rows.extend(_centrality_rows(A))
    return Matrix(F, len(rows), 2 * n if with_h else n, rows)


def check_witness(A: Algebra, alpha: CochainVector, c: Sequence, h: Sequence) -> str | None:
    """None if (c, h) satisfies the central-unit condition, else a description of the failure."""
    F = A.field
    n = A.dim
    c, h = [F(v) for v in c], [F(v) for v in h]
    if len(c) != n or len(h) != n:
        raise ValueError(f"c and h must have length {n}")
    for j in range(n):
        e = A.basis_vector(j)
        if multiply(A, c, e) != multiply(A, e, c):
            return f"c is not central: it does not commute with {A.labels[j]}"
    if try_invert(A, c) is None:
        return "c is not a unit"
    bad = _failing_pair(A, alpha, c, h)
    if bad is not None:
        a, b = bad
        return f"condition fails on the basis pair ({A.labels[a]}, {A.labels[b]})"
    return None


def _failing_pair(A: Algebra, alpha: CochainVector, c: Sequence, h: Sequence) -> tuple[int, int] | None:
    F = A.field
    n = A.dim
    t = tilde_vector(alpha)
    for a, b in _pairs(n):
        acc = F.zero
        for k in range(n):
            acc = F.add(acc, F.mul(c[k], F.sub(_t(A, t, k, a, b), _t(A, t, k, b, a))))
            acc = F.add(acc, F.mul(h[k], F.sub(A.constant(a, b, k), A.constant(b, a, k))))
        if acc != F.zero:
            return a, b
    return None


def _unit_in_span(A: Algebra, basis: Sequence[Sequence]):
    """Search span(basis) for a unit of A; deterministic, lexicographically first grid point."""
    pencil = [A.left_matrix(v).to_dense() for v in basis]
    return find_nonsingular(A.field, pencil, A.dim, size=A.dim)


def _c_projection(A: Algebra, kernel: Iterable[Sequence]) -> list:
    return span_basis(A.field, (v[: A.dim] for v in kernel), A.dim)


# -- the deciders ---------------------------------------------------------


def witness_condition2(A: Algebra, alpha: CochainVector) -> SymmetryCertificate:
    """Decide the central-unit condition by linear algebra plus a unit search in the c-projection."""
    require_cocycle2(A, alpha)
    F = A.field
    n = A.dim
    M = condition2_matrix(A, alpha)
    space = _c_projection(A, kernel_basis(M))
    found = _unit_in_span(A, space)
    if not found.found:
        return SymmetryCertificate("cond2", NOT_SYMMETRIC, solution_space=space, evidence=found.evidence)
    c = _combination(F, found.point, space, n)
    h_cols = M.select_columns(range(n, 2 * n))
    target = [F.neg(v) for v in M.select_columns(range(n)).apply(c)]
    sol = solve_affine(h_cols, target)
    if not sol.feasible:
        raise ArithmeticError("c lies in the projection but no h completes it")
    h = sol.particular
    problem = check_witness(A, alpha, c, h)
    if problem:
        raise ArithmeticError(f"computed witness failed verification: {problem}")
    return SymmetryCertificate("cond2", SYMMETRIC, c=c, h=h, solution_space=space)


def check_itagaki(A: Algebra, alpha: CochainVector) -> SymmetryCertificate:
    """The central-unit condition restricted to h = 0; a failure is inconclusive."""
    require_cocycle2(A, alpha)
    F = A.field
    space = span_basis(F, kernel_basis(condition2_matrix(A, alpha, with_h=False)), A.dim)
    found = _unit_in_span(A, space)
    if not found.found:
        return SymmetryCertificate("itagaki", INCONCLUSIVE, solution_space=space, evidence=found.evidence)
    c = _combination(F, found.point, space, A.dim)
    h = [F.zero] * A.dim
    problem = check_witness(A, alpha, c, h)
    if problem:
        raise ArithmeticError(f"computed witness failed verification: {problem}")
    return SymmetryCertificate("itagaki", SYMMETRIC, c=c, h=h, solution_space=space)


def check_oty(A: Algebra, alpha: CochainVector) -> SymmetryCertificate:
    """The central-unit condition with h = 0 and c = 1: alpha(a, b)(1) = alpha(b, a)(1)."""
    require_cocycle2(A, alpha)
    F = A.field
    c = list(A.unit)
    h = [F.zero] * A.dim
    bad = _failing_pair(A, alpha, c, h)
    if bad is not None:
        return SymmetryCertificate("oty", INCONCLUSIVE, failing_pair=bad)
    return SymmetryCertificate("oty", SYMMETRIC, c=c, h=h)


def condition3_matrix(A: Algebra, alpha: CochainVector) -> Matrix:
    """Homogeneous system in (c, eta, gamma).

    Rows: B_1*(i_c*(alpha~) - b_2* eta) + b_1* gamma = 0 (one per basis
    element of A (x) A), then centrality of c.
    """
    F = A.field
    n = A.dim
    t = tilde_vector(alpha)
    B1t = connes_matrix(A, 1).T
    c_cols = []
    for k in range(n):
        ic = central_contraction_matrix(A, A.basis_vector(k), 2)
        c_cols.append({r: v for r, v in enumerate(B1t.apply(ic.T.apply(t))) if v != F.zero})
    top = hstack([Matrix.from_columns(F, n * n, c_cols), lift_system(A)])
    cent = _centrality_rows(A)
    bottom = Matrix(F, len(cent), top.ncols, cent)
    return vstack([top, bottom])


def contracted_form(A: Algebra, alpha: CochainVector, c: Sequence) -> list:
    """i_c^*(alpha~) = alpha~ o i_c on A^(x)3."""
    return central_contraction_matrix(A, list(c), 2).T.apply(tilde_vector(alpha))


def witness_condition3(A: Algebra, alpha: CochainVector) -> SymmetryCertificate:
    """Decide the lifting condition: a central unit c whose contracted class lifts along I^2."""
    require_cocycle2(A, alpha)
    F = A.field
    space = _c_projection(A, kernel_basis(condition3_matrix(A, alpha)))
    found = _unit_in_span(A, space)
    if not found.found:
        return SymmetryCertificate("cond3", NOT_SYMMETRIC, solution_space=space, evidence=found.evidence)
    c = _combination(F, found.point, space, A.dim)
    result = lift_along_I2(A, contracted_form(A, alpha, c))
    if not result.found:
        raise ArithmeticError("c lies in the projection but the lift is infeasible")
    h = witness3_to_witness2(A, alpha, c, result.lift, result.eta)
    return SymmetryCertificate("cond3", SYMMETRIC, c=c, h=h, lift=result.lift, solution_space=space)


def oracle_condition1(A: Algebra, alpha: CochainVector) -> SymmetryCertificate:
    """Build T(A, alpha) and decide symmetry directly from its trace forms."""
    require_cocycle2(A, alpha)
    T = hochschild_extension(A, dual_bimodule(A), alpha)
    test = is_symmetric_algebra(T)
    if not test.symmetric:
        return SymmetryCertificate("cond1", NOT_SYMMETRIC, solution_space=test.trace_space, evidence=test.evidence)
    n = A.dim
    # the form is phi(1_T) = (h, c): its A-part is h, its A*-part evaluates g at c
    form = test.form
    return SymmetryCertificate("cond1", SYMMETRIC, c=form[n:], h=form[:n], form=form, solution_space=test.trace_space)


# -- conversions between witnesses ---------------------------------------


def witness2_to_lift(A: Algebra, alpha: CochainVector, c: Sequence, h: Sequence) -> CyclicClass2:
    """(c, h) from the central-unit condition gives the cyclic cocycle (i_c^* alpha~, h - alpha(1,1) c)."""
    F = A.field
    shift = act_right(A, alpha_at_unit(A, alpha), c)
    h_prime = [F.sub(x, y) for x, y in zip(h, shift)]
    lift = CyclicClass2(tuple(contracted_form(A, alpha, c)), tuple(h_prime))
    bad = lift.violations(A)
    if bad:
        raise ArithmeticError(f"the central-unit condition witness does not produce a cyclic cocycle: {bad}")
    return lift


def witness3_to_witness2(A: Algebra, alpha: CochainVector, c: Sequence, lift: CyclicClass2, eta: Sequence) -> list:
    """h = gamma + eta o B_0 + alpha(1,1) c, where i_c^* alpha~ = beta + b_2^* eta."""
    F = A.field
    via_eta = connes_matrix(A, 0).T.apply(list(eta))
    shift = act_right(A, alpha_at_unit(A, alpha), c)
    h = [F.add(F.add(g, e), s) for g, e, s in zip(lift.gamma, via_eta, shift)]
    problem = check_witness(A, alpha, c, h)
    if problem:
        raise ArithmeticError(f"lift does not produce a central-unit condition witness: {problem}")
    return h


# -- explicit bimodule isomorphism ---------------------------------------


@dataclass
class BimoduleIso:
    """phi : T -> T*; column x holds phi(e_x) in the dual basis of T = A + A*."""

    phi: Matrix
    extension: Algebra

    @property
    def rank(self) -> int:
        return rank(self.phi)


def build_bimodule_iso(A: Algebra, alpha: CochainVector, c: Sequence, h: Sequence) -> BimoduleIso:
    """phi(a, f)((b, g)) = (h, c)((a, f)(b, g)); verified nonsingular and bilinear-compatible."""
    require_cocycle2(A, alpha)
    problem = check_witness(A, alpha, c, h)
    if problem:
        raise InvalidWitnessError(problem)
    F = A.field
    T = hochschild_extension(A, dual_bimodule(A), alpha)
    form = [F(v) for v in h] + [F(v) for v in c]
    phi = form_to_bimodule_iso(T, form)
    iso = BimoduleIso(phi, T)
    if iso.rank != T.dim:
        raise ArithmeticError("phi is singular for a valid witness")
    bad = is_bimodule_morphism_to_dual(T, phi)
    if bad is not None:
        raise ArithmeticError(f"phi is not a bimodule morphism on basis triple {bad}")
    return iso


def certificate_iso(A: Algebra, alpha: CochainVector, cert: SymmetryCertificate) -> BimoduleIso | None:
    """Turn a positive certificate into a verified isomorphism T -> T*."""
    if not cert.symmetric:
        return None
    if cert.form is not None:
        T = hochschild_extension(A, dual_bimodule(A), alpha)
        phi = form_to_bimodule_iso(T, cert.form)
        if rank(phi) != T.dim or is_bimodule_morphism_to_dual(T, phi) is not None:
            raise ArithmeticError("trace form does not give a bimodule isomorphism")
        return BimoduleIso(phi, T)
    return build_bimodule_iso(A, alpha, cert.c, cert.h)


# -- coboundary shifts ----------------------------------------------------


def shift_by_coboundary(A: Algebra, alpha: CochainVector, f: CochainVector) -> CochainVector:
    """alpha + delta^1 f for a 1-cochain f : A -> A*."""
    return alpha + coboundary(A, dual_bimodule(A), f)


# -- consolidated decision ------------------------------------------------


DECIDERS = {
    "cond1": oracle_condition1,
    "cond2": witness_condition2,
    "cond3": witness_condition3,
    "itagaki": check_itagaki,
    "oty": check_oty,
}


@dataclass
class DecisionReport:
    certificates: dict[str, SymmetryCertificate]
    timings: dict[str, float]

    @property
    def verdict(self) -> str:
        """Joint verdict: from the equivalent methods if any ran, else from the sufficient tests."""
        for m in EQUIVALENT:
            if m in self.certificates:
                return self.certificates[m].verdict
        if any(cert.symmetric for cert in self.certificates.values()):
            return SYMMETRIC
        return INCONCLUSIVE

    def to_dict(self, A: Algebra) -> dict:
        return {
            "verdict": self.verdict,
            "methods": {m: cert.to_dict(A) for m, cert in self.certificates.items()},
        }


def system_dump(A: Algebra, alpha: CochainVector) -> dict:
    """Dense condition systems, for diagnosing a disagreement."""
    fmt = A.field.format
    return {
        "condition2": [[fmt(v) for v in row] for row in condition2_matrix(A, alpha).to_dense()],
        "condition3": [[fmt(v) for v in row] for row in condition3_matrix(A, alpha).to_dense()],
        "tilde": [fmt(v) for v in tilde_vector(alpha)],
    }


def decide(A: Algebra, alpha: CochainVector, methods: Iterable[str] = METHODS) -> DecisionReport:
    """Run the requested methods and enforce their logical relations.

    cond1, cond2 and cond3 must agree; a symmetric oty implies a symmetric
    itagaki, which implies a symmetric cond2.  Any violation raises
    :class:`CriteriaDisagreement`.
    """
    wanted = set(methods)
    unknown = wanted - set(METHODS)
    if unknown:
        raise ValueError(f"unknown methods: {sorted(unknown)}")
    require_cocycle2(A, alpha)
    certs: dict[str, SymmetryCertificate] = {}
    timings: dict[str, float] = {}
    for m in METHODS:
        if m in wanted:
            start = time.perf_counter()
            certs[m] = DECIDERS[m](A, alpha)
            timings[m] = time.perf_counter() - start
    report = DecisionReport(certs, timings)

    problems = []
    main = {m: certs[m].verdict for m in EQUIVALENT if m in certs}
    if len(set(main.values())) > 1:
        problems.append(f"equivalent criteria disagree: {main}")
    chain = [m for m in ("oty", "itagaki", "cond2") if m in certs]
    for weak, strong in zip(chain, chain[1:]):
        if certs[weak].symmetric and not certs[strong].symmetric:
            problems.append(f"{weak} is symmetric but {strong} is not")
    if problems:
        dump = {"report": report.to_dict(A), "systems": system_dump(A, alpha)}
        raise CriteriaDisagreement("; ".join(problems), dump)
    return report
