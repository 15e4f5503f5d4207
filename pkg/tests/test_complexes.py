import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from hochsym.algebra import dual_bimodule, regular_bimodule
from hochsym.complexes import (
    GRADED_CONVENTION,
    ChainVector,
    CochainVector,
    DegreeCapError,
    boundary_matrix,
    central_contraction_matrix,
    check_cocycle2,
    coboundary,
    coboundary_generators,
    coboundary_matrix,
    cocycle_space,
    cohomology_representatives2,
    contraction,
    contraction_identity,
    decode,
    encode,
    from_tilde,
    hochschild_cohomology,
    hochschild_homology,
    to_tilde,
)
from hochsym.algebra import center_basis
from hochsym.corpus import standard_corpus
from hochsym.fields import GF, QQ

FIELDS = [QQ, GF(5)]

# [DERIVED] dims HH_n(A), HH^n(A, A*), HH^n(A, A) for n = 0, 1, 2, from the
# sympy reference in oracle.py (identical over QQ and GF(5)).
FROZEN = {
    "k": ([1, 0, 0], [1, 0, 0], [1, 0, 0]),
    "dual_numbers": ([2, 1, 1], [2, 1, 1], [2, 1, 1]),
    "truncated_x3": ([3, 2, 2], [3, 2, 2], [3, 2, 2]),
    "kA2": ([2, 0, 0], [2, 0, 0], [1, 0, 0]),
    "upper_triangular_2": ([2, 0, 0], [2, 0, 0], [1, 0, 0]),
    "matrix_2": ([1, 0, 0], [1, 0, 0], [1, 0, 0]),
    "kxy_squares": ([4, 4, 5], [4, 4, 5], [4, 4, 5]),
}
# [DERIVED] in characteristic 2 the dual numbers and k[x,y]/(x^2,y^2) gain classes.
FROZEN_GF2 = {"dual_numbers": [2, 2, 2], "kxy_squares": [4, 8, 12]}


def cases():
    return [pytest.param(F, name, id=f"{F.name}-{name}") for F in FIELDS for name in FROZEN]


@pytest.mark.parametrize("F, name", cases())
def test_frozen_dimensions(F, name):
    A = standard_corpus(F)[name]
    hom, dual, reg = FROZEN[name]
    assert [hochschild_homology(A, n).dim for n in range(3)] == hom
    assert [hochschild_cohomology(A, dual_bimodule(A), n).dim for n in range(3)] == dual
    assert [hochschild_cohomology(A, regular_bimodule(A), n).dim for n in range(3)] == reg


@pytest.mark.parametrize("name", sorted(FROZEN_GF2))
def test_characteristic_two(name):
    A = standard_corpus(GF(2))[name]
    assert [hochschild_homology(A, n).dim for n in range(3)] == FROZEN_GF2[name]


@pytest.mark.parametrize("F, name", cases())
def test_against_reference_implementation(F, name):
    A = standard_corpus(F)[name]
    for n in (1, 2):
        assert boundary_matrix(A, n).to_dense() == [[F(x) for x in row] for row in oracle.boundary(A, n)]
    assert hochschild_homology(A, 2).dim == oracle.homology(A, 2)
    assert hochschild_cohomology(A, regular_bimodule(A), 1).dim == oracle.regular_cohomology(A, 1)


@pytest.mark.parametrize("F, name", cases())
def test_squares_vanish(F, name):
    A = standard_corpus(F)[name]
    top = 4 if A.dim <= 3 else 3
    for n in range(2, top + 1):
        assert (boundary_matrix(A, n - 1) @ boundary_matrix(A, n)).is_zero()
    for M in (dual_bimodule(A), regular_bimodule(A)):
        for n in range(0, 3):
            assert (coboundary_matrix(A, M, n + 1) @ coboundary_matrix(A, M, n)).is_zero()


def test_homology_representatives_are_cycles():
    A = standard_corpus(QQ)["kxy_squares"]
    res = hochschild_homology(A, 2)
    b = boundary_matrix(A, 2)
    assert len(res.representatives) == res.dim
    for v in res.representatives:
        assert all(x == 0 for x in b.apply(v))


def test_degree_cap():
    A = standard_corpus(QQ)["dual_numbers"]
    with pytest.raises(DegreeCapError):
        hochschild_homology(A, 5, max_degree=4)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5), st.integers(1, 4).flatmap(lambda L: st.lists(st.integers(0, 4), min_size=L, max_size=L)))
def test_encode_decode_roundtrip(n, idx):
    idx = tuple(i % n for i in idx)
    assert decode(encode(idx, n), n, len(idx)) == idx


@pytest.mark.parametrize("name", ["dual_numbers", "kA2", "kxy_squares"])
def test_tilde_roundtrip_and_cocycles(name):
    A = standard_corpus(QQ)[name]
    M = dual_bimodule(A)
    for alpha in cocycle_space(A):
        assert from_tilde(to_tilde(alpha)) == alpha
        assert check_cocycle2(A, M, alpha) is None
    for alpha in coboundary_generators(A) + cohomology_representatives2(A):
        assert check_cocycle2(A, M, alpha) is None


def test_non_cocycle_is_detected():
    A = standard_corpus(QQ)["kA2"]
    alpha = CochainVector(QQ, 2, 3, 3, {((0, 0), 2): QQ(1)})
    assert check_cocycle2(A, dual_bimodule(A), alpha) is not None


def _random_cochain(A, m, rng):
    coords = {}
    for _ in range(rng.randint(1, 4)):
        idx = tuple(rng.randrange(A.dim) for _ in range(m))
        coords[(idx, rng.randrange(A.dim))] = A.field(rng.randint(-3, 3))
    return CochainVector(A.field, m, A.dim, A.dim, coords)


def _random_chain(A, n, rng):
    size = A.dim ** (n + 1)
    vec = [A.field.zero] * size
    for _ in range(rng.randint(1, 5)):
        vec[rng.randrange(size)] = A.field(rng.randint(-3, 3))
    return ChainVector.from_dense(A.field, n, A.dim, vec)


@pytest.mark.parametrize("F, name", cases())
def test_graded_contraction_on_random_pairs(F, name):
    A = standard_corpus(F)[name]
    rng = random.Random(f"{F.name}-{name}")
    R = regular_bimodule(A)
    for trial in range(30):
        m = trial % 3
        n = m + 1 + rng.randrange(2)
        alpha = _random_cochain(A, m, rng)
        x = _random_chain(A, n, rng)
        b_i = boundary_matrix(A, n - m).apply(contraction(A, alpha, x).to_dense()) if n > m else None
        i_b = contraction(A, alpha, ChainVector.from_dense(F, n - 1, A.dim, boundary_matrix(A, n).apply(x.to_dense()))) \
            if n - 1 >= m else None
        i_d = contraction(A, coboundary(A, R, alpha), x).to_dense()
        sign = 1 if m % 2 == 0 else -1
        lhs = [F.sub(p, q if sign == 1 else F.neg(q)) for p, q in zip(b_i, i_b.to_dense())]
        assert lhs == [v if sign == -1 else F.neg(v) for v in i_d], GRADED_CONVENTION


@pytest.mark.parametrize("F, name", cases())
def test_central_contraction_commutes_with_b(F, name):
    A = standard_corpus(F)[name]
    top = 4 if A.dim <= 3 else 3
    for c in center_basis(A):
        for n in range(1, top + 1):
            lhs = boundary_matrix(A, n) @ central_contraction_matrix(A, c, n)
            rhs = central_contraction_matrix(A, c, n - 1) @ boundary_matrix(A, n)
            assert lhs == rhs


def test_contraction_identity_reports_both_forms():
    A = standard_corpus(QQ)["matrix_2"]
    alpha = CochainVector(QQ, 1, 4, 4, {((1,), 2): QQ(1)})
    check = contraction_identity(A, alpha, 2)
    assert check.graded
    assert not check.verbatim
