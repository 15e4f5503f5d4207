from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hochsym.algebra import (
    Algebra,
    Bimodule,
    center_basis,
    commutator_subspace,
    dual_bimodule,
    find_unit,
    form_to_bimodule_iso,
    hochschild_extension,
    is_bimodule_morphism_to_dual,
    is_symmetric_algebra,
    multiply,
    regular_bimodule,
    try_invert,
    validate_algebra,
    validate_bimodule,
)
from hochsym.complexes import cohomology_representatives2, coboundary_generators, zero_cochain2
from hochsym.corpus import standard_corpus
from hochsym.fields import GF, QQ
from hochsym.linalg import rank
from hochsym.pencil import find_nonsingular, simplex_points

CORPUS = standard_corpus(QQ)


def vectors(A, lo=-3, hi=3):
    return st.lists(st.integers(lo, hi), min_size=A.dim, max_size=A.dim).map(lambda v: [A.field(x) for x in v])


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_algebras_validate(name):
    A = CORPUS[name]
    assert validate_algebra(A) is None
    assert validate_bimodule(A, dual_bimodule(A)) is None
    assert validate_bimodule(A, regular_bimodule(A)) is None


@pytest.mark.parametrize("name", sorted(CORPUS))
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_random_elements_associate(name, data):
    A = CORPUS[name]
    a, b, c = (data.draw(vectors(A)) for _ in range(3))
    assert multiply(A, multiply(A, a, b), c) == multiply(A, a, multiply(A, b, c))
    assert multiply(A, list(A.unit), a) == a


def test_non_associative_table_names_the_triple():
    A = Algebra.from_products(QQ, ["e1", "e2"], {(0, 0): {1: 1}, (1, 1): {0: 1}}, [1, 0])
    bad = validate_algebra(A)
    assert bad is not None and bad.kind == "associativity"
    assert len(bad.labels) == 3


def test_find_unit_of_matrix_units():
    A = CORPUS["matrix_2"]
    products = {(i, j): dict(A.table[i][j]) for i in range(4) for j in range(4) if A.table[i][j]}
    assert find_unit(QQ, A.labels, products) == list(A.unit)
    assert find_unit(QQ, ["x"], {}) is None


def test_center_and_commutator_dimensions():
    dims = {name: (len(center_basis(A)), len(commutator_subspace(A))) for name, A in CORPUS.items()}
    assert dims == {
        "k": (1, 0), "dual_numbers": (2, 0), "truncated_x3": (3, 0), "kA2": (1, 1),
        "upper_triangular_2": (1, 1), "matrix_2": (1, 3), "kxy_squares": (4, 0),
    }


def test_try_invert():
    A = CORPUS["dual_numbers"]
    inv = try_invert(A, [QQ(2), QQ(1)])
    assert multiply(A, inv, [QQ(2), QQ(1)]) == list(A.unit)
    assert try_invert(A, [QQ(0), QQ(1)]) is None


@pytest.mark.parametrize("name, expected", [
    ("k", True), ("dual_numbers", True), ("truncated_x3", True), ("kA2", False),
    ("upper_triangular_2", False), ("matrix_2", True), ("kxy_squares", True),
])
@pytest.mark.parametrize("F", [QQ, GF(2), GF(5)], ids=lambda F: F.name)
def test_symmetric_algebras(name, expected, F):
    A = standard_corpus(F)[name]
    result = is_symmetric_algebra(A)
    assert result.symmetric == expected
    if expected:
        phi = form_to_bimodule_iso(A, result.form)
        assert rank(phi) == A.dim
        assert is_bimodule_morphism_to_dual(A, phi) is None
    else:
        assert result.evidence.recheck()


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_trivial_extension_is_symmetric(name):
    A = CORPUS[name]
    T = hochschild_extension(A, dual_bimodule(A), zero_cochain2(A))
    assert validate_algebra(T) is None
    assert T.dim == 2 * A.dim
    assert is_symmetric_algebra(T).symmetric


@pytest.mark.parametrize("name", ["dual_numbers", "kA2", "upper_triangular_2"])
def test_extensions_are_associative(name):
    A = CORPUS[name]
    for alpha in coboundary_generators(A) + cohomology_representatives2(A):
        T = hochschild_extension(A, dual_bimodule(A), alpha)
        assert validate_algebra(T) is None


def test_bimodule_from_actions_rejects_bad_action():
    A = CORPUS["dual_numbers"]
    # x acting as the identity on a one-dimensional module is not compatible with x^2 = 0
    M = Bimodule.from_actions(QQ, ["m"], 2, {(0, 0): [1], (1, 0): [1]}, {(0, 0): [1]})
    assert validate_bimodule(A, M) is not None


def test_simplex_points_count():
    from math import comb
    assert sum(1 for _ in simplex_points(3, 4)) == comb(7, 3)


def test_pencil_finds_nonsingular_member():
    F = QQ
    # span{E11, E22} contains the identity
    pencil = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    res = find_nonsingular(F, [[[Fraction(x) for x in r] for r in M] for M in pencil])
    assert res.found


def test_pencil_singular_evidence_rechecks():
    F = GF(3)
    pencil = [[[1, 0], [0, 0]], [[0, 1], [0, 0]]]
    res = find_nonsingular(F, pencil)
    assert not res.found
    assert res.evidence.recheck()
    assert res.evidence.max_rank == 1
