import pytest

import oracle
from hochsym.complexes import boundary_matrix, coboundary_generators, cohomology_representatives2, to_tilde
from hochsym.corpus import standard_corpus
from hochsym.cyclic import (
    UNIT_FLIP,
    VERBATIM,
    CyclicClass2,
    NotACocycleFormError,
    anticommutator,
    connes_matrix,
    connes_square,
    cyclic_cohomology,
    cyclic_homology,
    lift_along_I2,
    lift_system,
    resolve_total_signs,
    total_differential,
    total_square_vanishes,
)
from hochsym.fields import GF, QQ
from hochsym.linalg import verify_certificate

QQ_CORPUS = standard_corpus(QQ)

# [DERIVED] HC_0..HC_3 over QQ (HC_0..HC_2 for the 4-dimensional algebras),
# cross-checked against the cyclic-cochain complex in oracle.py.
FROZEN_HC = {
    "k": [1, 0, 1, 0],
    "dual_numbers": [2, 0, 2, 0],
    "truncated_x3": [3, 0, 3, 0],
    "kA2": [2, 0, 2, 0],
    "upper_triangular_2": [2, 0, 2, 0],
    "matrix_2": [1, 0, 1],
    "kxy_squares": [4, 1, 5],
}


@pytest.mark.parametrize("name", sorted(FROZEN_HC))
def test_frozen_cyclic_homology(name):
    A = QQ_CORPUS[name]
    expected = FROZEN_HC[name]
    assert [cyclic_homology(A, n) for n in range(len(expected))] == expected


@pytest.mark.parametrize("name", ["dual_numbers", "kA2", "matrix_2"])
def test_against_cyclic_cochains(name):
    A = QQ_CORPUS[name]
    assert [cyclic_cohomology(A, n) for n in range(3)] == [oracle.connes_cyclic_cohomology(A, n) for n in range(3)]


@pytest.mark.parametrize("F", [QQ, GF(5)], ids=lambda F: F.name)
@pytest.mark.parametrize("name", sorted(FROZEN_HC))
def test_homology_equals_cohomology(F, name):
    A = standard_corpus(F)[name]
    for n in range(3):
        assert cyclic_homology(A, n) == cyclic_cohomology(A, n)


@pytest.mark.parametrize("name", sorted(FROZEN_HC))
@pytest.mark.parametrize("unit_sign", [-1, 1])
def test_b_and_B_anticommute(name, unit_sign):
    A = QQ_CORPUS[name]
    for n in range(0, 3):
        assert anticommutator(A, n, unit_sign).is_zero()


@pytest.mark.parametrize("name", sorted(FROZEN_HC))
def test_unit_flip_B_squares_to_zero(name):
    A = QQ_CORPUS[name]
    for n in range(0, 2):
        assert connes_square(A, n, 1).is_zero()


def test_displayed_B_does_not_square_to_zero():
    A = QQ_CORPUS["dual_numbers"]
    assert not connes_square(A, 0, -1).is_zero()
    assert not total_square_vanishes(A, VERBATIM)


def test_B_zero_on_a_single_tensor_of_k():
    A = QQ_CORPUS["k"]
    assert connes_matrix(A, 0).to_dense() == [[0]]
    assert connes_matrix(A, 0, 1).to_dense() == [[2]]


@pytest.mark.parametrize("F", [QQ, GF(2), GF(5)], ids=lambda F: F.name)
def test_resolution(F):
    corpus = standard_corpus(F)
    assert resolve_total_signs(corpus["k"]) == VERBATIM
    expected = VERBATIM if F.characteristic == 2 else UNIT_FLIP
    assert resolve_total_signs(corpus["dual_numbers"]) == expected
    for A in corpus.values():
        conv = resolve_total_signs(A, 3)
        assert total_square_vanishes(A, conv, 3)


def test_total_differential_shape():
    A = QQ_CORPUS["dual_numbers"]
    d = total_differential(A, 2, UNIT_FLIP)
    assert d.shape == (4, 8 + 2)


@pytest.mark.parametrize("name", ["dual_numbers", "kA2", "upper_triangular_2", "kxy_squares"])
def test_lift_results_are_cyclic_cocycles(name):
    A = QQ_CORPUS[name]
    for alpha in coboundary_generators(A) + cohomology_representatives2(A):
        feasible = set()
        for unit_sign in (-1, 1):
            res = lift_along_I2(A, to_tilde(alpha), unit_sign)
            feasible.add(res.found)
            if res.found:
                assert res.lift.violations(A, unit_sign) == []
            else:
                beta = to_tilde(alpha).to_dense()
                target = [-v for v in connes_matrix(A, 1, unit_sign).T.apply(beta)]
                assert verify_certificate(lift_system(A, unit_sign), target, res.solution.certificate)
        assert len(feasible) == 1


def test_lift_rejects_non_cocycle_form():
    A = QQ_CORPUS["kA2"]
    b3 = boundary_matrix(A, 3)
    beta = [QQ(0)] * 27
    beta[next(i for i, row in enumerate(b3.to_dense()) if any(row))] = QQ(1)
    assert any(v != 0 for v in boundary_matrix(A, 3).T.apply(beta))
    with pytest.raises(NotACocycleFormError):
        lift_along_I2(A, beta)


def test_cyclic_class_violations():
    A = QQ_CORPUS["k"]
    assert CyclicClass2((QQ(0),), (QQ(0),)).violations(A) == []
