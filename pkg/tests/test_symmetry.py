import random

import pytest
from hypothesis import given, settings, strategies as st

from hochsym.algebra import dual_bimodule, is_bimodule_morphism_to_dual
from hochsym.complexes import (
    CochainVector,
    coboundary_generators,
    cocycle_space,
    cohomology_representatives2,
    zero_cochain2,
)
from hochsym.corpus import standard_corpus
from hochsym.fields import GF, QQ
from hochsym.symmetry import (
    DECIDERS,
    INCONCLUSIVE,
    METHODS,
    NOT_SYMMETRIC,
    SYMMETRIC,
    InvalidWitnessError,
    CriteriaDisagreement,
    SymmetryCertificate,
    build_bimodule_iso,
    check_itagaki,
    check_oty,
    check_witness,
    decide,
    shift_by_coboundary,
    witness2_to_lift,
    witness_condition2,
    witness_condition3,
)

QQ_CORPUS = standard_corpus(QQ)
SMALL = ["k", "dual_numbers", "truncated_x3", "kA2", "upper_triangular_2"]


def skew_cocycle(A):
    """alpha(y, x) = 1* on k[x,y]/(x^2, y^2)."""
    return CochainVector(A.field, 2, 4, 4, {((2, 1), 0): A.field.one})


def gap_cocycle(A):
    """alpha(a, e1) = e1*, alpha(a, e2) = -e1* on kA2."""
    F = A.field
    return CochainVector(F, 2, 3, 3, {((2, 0), 0): F.one, ((2, 1), 0): F.neg(F.one)})


@pytest.mark.parametrize("name", sorted(QQ_CORPUS))
def test_zero_cocycle_gives_unit_witness(name):
    A = QQ_CORPUS[name]
    alpha = zero_cochain2(A)
    for decider in (witness_condition2, witness_condition3, check_itagaki, check_oty):
        cert = decider(A, alpha)
        assert cert.verdict == SYMMETRIC
        assert cert.c == list(A.unit)
        assert cert.h == [QQ(0)] * A.dim


@pytest.mark.parametrize("F", [QQ, GF(5)], ids=lambda F: F.name)
def test_not_symmetric_instance(F):
    A = standard_corpus(F)["kxy_squares"]
    report = decide(A, skew_cocycle(A))
    verdicts = {m: c.verdict for m, c in report.certificates.items()}
    assert verdicts == {"cond1": NOT_SYMMETRIC, "cond2": NOT_SYMMETRIC, "cond3": NOT_SYMMETRIC,
                        "itagaki": INCONCLUSIVE, "oty": INCONCLUSIVE}
    for m in ("cond1", "cond2", "cond3"):
        assert report.certificates[m].evidence.recheck()


@pytest.mark.parametrize("F", [QQ, GF(5)], ids=lambda F: F.name)
def test_gap_instance(F):
    A = standard_corpus(F)["kA2"]
    report = decide(A, gap_cocycle(A))
    verdicts = {m: c.verdict for m, c in report.certificates.items()}
    assert verdicts == {"cond1": SYMMETRIC, "cond2": SYMMETRIC, "cond3": SYMMETRIC,
                        "itagaki": INCONCLUSIVE, "oty": INCONCLUSIVE}
    assert report.verdict == SYMMETRIC


def test_witness_checks():
    A = QQ_CORPUS["kA2"]
    alpha = zero_cochain2(A)
    zero = [QQ(0)] * 3
    assert "central" in check_witness(A, alpha, [1, 0, 0], zero)
    assert "unit" in check_witness(A, alpha, [0, 0, 0], zero)
    assert check_witness(A, alpha, [2, 2, 0], zero) is None
    with pytest.raises(InvalidWitnessError):
        build_bimodule_iso(A, alpha, [1, 0, 0], zero)


def test_wrong_h_names_a_pair():
    A = QQ_CORPUS["kA2"]
    message = check_witness(A, gap_cocycle(A), list(A.unit), [0, 0, 0])
    assert "(e1, a)" in message


@pytest.mark.parametrize("name", SMALL)
def test_witnesses_convert_and_give_isomorphisms(name):
    A = QQ_CORPUS[name]
    for alpha in coboundary_generators(A) + cohomology_representatives2(A):
        cert = witness_condition2(A, alpha)
        if not cert.symmetric:
            continue
        lift = witness2_to_lift(A, alpha, cert.c, cert.h)
        assert lift.violations(A) == []
        iso = build_bimodule_iso(A, alpha, cert.c, cert.h)
        assert iso.rank == 2 * A.dim
        assert is_bimodule_morphism_to_dual(iso.extension, iso.phi) is None
        cert3 = witness_condition3(A, alpha)
        assert check_witness(A, alpha, cert3.c, cert3.h) is None


@pytest.mark.parametrize("name", SMALL)
@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_verdict_is_coboundary_invariant(name, seed):
    A = QQ_CORPUS[name]
    rng = random.Random(seed)
    basis = cocycle_space(A)
    alpha = zero_cochain2(A)
    for z in basis:
        alpha = alpha + z.scale(QQ(rng.randint(-2, 2)))
    f = CochainVector(QQ, 1, A.dim, A.dim, {((rng.randrange(A.dim),), rng.randrange(A.dim)): QQ(rng.randint(-3, 3))})
    shifted = shift_by_coboundary(A, alpha, f)
    assert witness_condition2(A, alpha).verdict == witness_condition2(A, shifted).verdict


def test_disagreement_raises_with_dump(monkeypatch):
    A = QQ_CORPUS["dual_numbers"]
    monkeypatch.setitem(DECIDERS, "cond3", lambda A, alpha: SymmetryCertificate("cond3", NOT_SYMMETRIC))
    with pytest.raises(CriteriaDisagreement) as info:
        decide(A, zero_cochain2(A), ("cond2", "cond3"))
    assert "condition2" in info.value.dump["systems"]


def test_decide_rejects_unknown_method():
    A = QQ_CORPUS["k"]
    with pytest.raises(ValueError):
        decide(A, zero_cochain2(A), ("cond4",))


def test_certificate_serialisation():
    A = QQ_CORPUS["kxy_squares"]
    data = decide(A, skew_cocycle(A), ("cond2",)).to_dict(A)
    assert data["verdict"] == NOT_SYMMETRIC
    cond2 = data["methods"]["cond2"]
    assert cond2["evidence"]["all_determinants_zero"] is True
    assert all(isinstance(x, str) for vec in cond2["solution_space"] for x in vec)
    assert set(METHODS) >= set(data["methods"])
