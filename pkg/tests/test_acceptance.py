"""Acceptance suite: one recorded PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in the
terminal summary under "acceptance criteria".
"""

import json
import random
import time
from importlib import resources

import pytest

from acceptance_log import record
from hochsym.algebra import center_basis, dual_bimodule, is_bimodule_morphism_to_dual, regular_bimodule
from hochsym.cli import run
from hochsym.complexes import (
    GRADED_CONVENTION,
    CochainVector,
    boundary_matrix,
    central_contraction_matrix,
    coboundary_generators,
    coboundary_matrix,
    cocycle_space,
    cohomology_representatives2,
    contraction_matrix,
    coboundary,
    hochschild_cohomology,
    hochschild_homology,
    zero_cochain2,
)
from hochsym.corpus import standard_corpus
from hochsym.cyclic import (
    CYCLIC_MAX_DEGREE,
    anticommutator,
    connes_square,
    cyclic_cohomology,
    cyclic_homology,
    resolve_total_signs,
    total_differential,
)
from hochsym.fields import GF, QQ
from hochsym.fileformat import emit_algebra, parse_input
from hochsym.quiver import (
    bound_quiver_algebra,
    relative_hochschild_cohomology,
    relative_hochschild_homology,
    standard_quivers,
)
from hochsym.symmetry import (
    INCONCLUSIVE,
    NOT_SYMMETRIC,
    SYMMETRIC,
    build_bimodule_iso,
    check_itagaki,
    check_oty,
    decide,
    oracle_condition1,
    shift_by_coboundary,
    witness_condition2,
    witness_condition3,
)

FIELDS = (QQ, GF(5))
SIX = ("k", "dual_numbers", "truncated_x3", "kA2", "upper_triangular_2", "matrix_2")
EXAMPLES = resources.files("hochsym").joinpath("examples")


def spanning_cocycles(A):
    return [("cob", i, a) for i, a in enumerate(coboundary_generators(A))] + \
        [("rep", i, a) for i, a in enumerate(cohomology_representatives2(A))]


def degree_caps(A):
    """(Hochschild cap, cyclic cap); the corpus has dim A <= 4."""
    return 4, CYCLIC_MAX_DEGREE


@pytest.fixture(scope="module")
def equivalence_run():
    """Criterion 1 sweep, shared with criterion 3."""
    start = time.perf_counter()
    rows = []
    for F in FIELDS:
        for name, A in standard_corpus(F).items():
            for kind, i, alpha in spanning_cocycles(A):
                certs = {
                    "cond1": oracle_condition1(A, alpha),
                    "cond2": witness_condition2(A, alpha),
                    "cond3": witness_condition3(A, alpha),
                }
                rows.append((F, name, kind, i, A, alpha, certs))
    return rows, time.perf_counter() - start


def test_criterion_1_theorem_equivalence(equivalence_run):
    rows, elapsed = equivalence_run
    disagreements = [(F.name, name, kind, i, {m: c.verdict for m, c in certs.items()})
                     for F, name, kind, i, A, alpha, certs in rows
                     if len({c.verdict for c in certs.values()}) != 1]
    positives = sum(1 for *_, certs in rows if certs["cond2"].symmetric)
    algebras = len({(F.name, name) for F, name, *_ in rows})
    ok = not disagreements and elapsed < 120
    record(1, ok, f"{algebras} algebra/field pairs, {len(rows)} cocycles, {positives} symmetric, "
                  f"{len(disagreements)} disagreements, {elapsed:.1f}s (limit 120s)")
    assert not disagreements, disagreements
    assert elapsed < 120


def _cli_zero_check(tmp_path, F, name, A):
    path = tmp_path / f"{F.name}_{name}.alg"
    path.write_text(emit_algebra(A) + "\n[cocycle zero]\n")
    out, err, code = run(["--emit", "machine", "check", str(path), "--cocycle", "zero", "--criterion", "all"])
    data = json.loads(out)
    methods = data["decision"]["methods"]
    one = [F.format(v) for v in A.unit]
    zero = [F.format(F.zero)] * A.dim
    ok = (code == 0 and {m["verdict"] for m in methods.values()} == {SYMMETRIC}
          and all(methods[m]["c"] == one and methods[m]["h"] == zero for m in ("cond2", "cond3", "itagaki", "oty")))
    return ok


def test_criterion_2_trivial_extension(tmp_path):
    failures = []
    total = 0
    for F in FIELDS:
        for name, A in standard_corpus(F).items():
            total += 1
            if not _cli_zero_check(tmp_path, F, name, A):
                failures.append(f"{F.name}/{name}")
    record(2, not failures, f"check --cocycle zero --criterion all symmetric with witness (1_A, 0) "
                            f"on {total - len(failures)}/{total} corpus algebras")
    assert not failures, failures


def test_criterion_3_witness_constructivity(equivalence_run):
    rows, _ = equivalence_run
    checked, bad = 0, []
    for F, name, kind, i, A, alpha, certs in rows:
        for method in ("cond2", "cond3"):
            cert = certs[method]
            if not cert.symmetric:
                continue
            iso = build_bimodule_iso(A, alpha, cert.c, cert.h)
            checked += 1
            if iso.rank != 2 * A.dim or is_bimodule_morphism_to_dual(iso.extension, iso.phi) is not None:
                bad.append((F.name, name, kind, i, method))
    record(3, not bad and checked > 0,
           f"{checked} positive witnesses gave full-rank bimodule isomorphisms T -> T*, {len(bad)} failures")
    assert checked > 0
    assert not bad, bad


def test_criterion_4_complex_identities():
    problems = []
    notes = set()
    conventions = {}
    for F in FIELDS:
        for name, A in standard_corpus(F).items():
            hh_cap, hc_cap = degree_caps(A)
            for n in range(2, hh_cap + 1):
                if not (boundary_matrix(A, n - 1) @ boundary_matrix(A, n)).is_zero():
                    problems.append(f"{F.name}/{name}: b b != 0 at {n}")
            for M in (dual_bimodule(A), regular_bimodule(A)):
                for n in range(0, hh_cap - 1):
                    if not (coboundary_matrix(A, M, n + 1) @ coboundary_matrix(A, M, n)).is_zero():
                        problems.append(f"{F.name}/{name}: delta delta != 0 at {n}")
            conv = resolve_total_signs(A)
            conventions.setdefault(conv.name, []).append(f"{F.name}/{name}")
            for n in range(0, hc_cap):
                if not anticommutator(A, n, conv.unit_sign).is_zero():
                    problems.append(f"{F.name}/{name}: bB + Bb != 0 at {n}")
                if not connes_square(A, n, conv.unit_sign).is_zero():
                    problems.append(f"{F.name}/{name}: B B != 0 at {n}")
                if not connes_square(A, n, -1).is_zero():
                    notes.add(f"{F.name}/{name}")
            for n in range(2, hc_cap + 2):
                if not (total_differential(A, n - 1, conv) @ total_differential(A, n, conv)).is_zero():
                    problems.append(f"{F.name}/{name}: d d != 0 at {n}")
    detail = (f"b b, delta delta, bB + Bb, B B, d d vanish to the caps; conventions {sorted(conventions)}; "
              f"note: the displayed B (unit terms negative) has B B != 0 on {len(notes)} algebra/field pairs, "
              f"so B B and d d are checked with the resolved convention")
    record(4, not problems, detail if not problems else "; ".join(problems[:5]))
    assert not problems, problems


def _random_cochain(A, m, rng):
    coords = {}
    for _ in range(rng.randint(1, 4)):
        idx = tuple(rng.randrange(A.dim) for _ in range(m))
        coords[(idx, rng.randrange(A.dim))] = A.field(rng.randint(-3, 3))
    return CochainVector(A.field, m, A.dim, A.dim, coords)


def _random_chain(A, n, rng):
    size = A.dim ** (n + 1)
    vec = [A.field.zero] * size
    for _ in range(rng.randint(1, 6)):
        vec[rng.randrange(size)] = A.field(rng.randint(-3, 3))
    return vec


def test_criterion_5_contraction_identities():
    central_bad = []
    graded_bad = []
    verbatim_fail = {}
    pairs = 0
    for F in FIELDS:
        for name, A in standard_corpus(F).items():
            hh_cap, _ = degree_caps(A)
            for c in center_basis(A):
                for n in range(1, 5):
                    lhs = boundary_matrix(A, n) @ central_contraction_matrix(A, c, n)
                    rhs = central_contraction_matrix(A, c, n - 1) @ boundary_matrix(A, n)
                    if lhs != rhs:
                        central_bad.append((F.name, name, n))
            rng = random.Random(f"contraction-{F.name}-{name}")
            R = regular_bimodule(A)
            for trial in range(102):
                m = trial % 3
                n = m + 1 + rng.randrange(max(1, min(2, hh_cap - m)))
                alpha = _random_cochain(A, m, rng)
                x = _random_chain(A, n, rng)
                b_i = boundary_matrix(A, n - m).apply(contraction_matrix(A, alpha, n).apply(x))
                if n - 1 >= m:
                    i_b = contraction_matrix(A, alpha, n - 1).apply(boundary_matrix(A, n).apply(x))
                else:
                    i_b = [F.zero] * len(b_i)
                i_d = contraction_matrix(A, coboundary(A, R, alpha), n).apply(x)
                pairs += 1
                if [F.sub(p, q) for p, q in zip(b_i, i_b)] != i_d:
                    verbatim_fail.setdefault((m, n), set()).add(f"{F.name}/{name}")
                s = 1 if m % 2 == 0 else -1
                graded_lhs = [F.sub(p, q) if s == 1 else F.add(p, q) for p, q in zip(b_i, i_b)]
                graded_rhs = [F.neg(v) if s == 1 else v for v in i_d]
                if graded_lhs != graded_rhs:
                    graded_bad.append((F.name, name, m, n))
    listing = "; ".join(f"(m={m}, n={n}) on {len(v)} algebra/field pairs" for (m, n), v in sorted(verbatim_fail.items()))
    detail = (f"b i_c = i_c b exact for all central c, n <= 4; {pairs} random (cochain, chain) pairs; "
              f"verbatim b i_a - i_a b = i_(delta a) fails for {listing or 'no pairs'}; "
              f"convention note: {GRADED_CONVENTION} holds on all pairs" if not graded_bad
              else f"graded identity fails on {graded_bad[:5]}")
    record(5, not central_bad and not graded_bad, detail)
    assert not central_bad, central_bad
    assert not graded_bad, graded_bad


def test_criterion_6_duality_dimensions():
    bad = []
    for F in FIELDS:
        for name, A in standard_corpus(F).items():
            conv = resolve_total_signs(A)
            for n in range(3):
                if hochschild_cohomology(A, dual_bimodule(A), n).dim != hochschild_homology(A, n).dim:
                    bad.append((F.name, name, "HH", n))
                if cyclic_cohomology(A, n, convention=conv) != cyclic_homology(A, n, convention=conv):
                    bad.append((F.name, name, "HC", n))
    record(6, not bad, f"dim HH^n(A, A*) = dim HH_n(A) and dim HC^n = dim HC_n for n <= 2 on "
                       f"{2 * len(standard_corpus(QQ))} algebra/field pairs, {len(bad)} mismatches")
    assert not bad, bad


def test_criterion_7_relative_absolute():
    start = time.perf_counter()
    bad = []
    for name in ("A2", "loop_x2", "loop_x3", "two_cycle"):
        B = bound_quiver_algebra(standard_quivers()[name])
        A = B.algebra
        for n in range(3):
            if relative_hochschild_homology(B, n) != hochschild_homology(A, n).dim:
                bad.append((name, "HH_n", n))
            if relative_hochschild_cohomology(B, n) != hochschild_cohomology(A, dual_bimodule(A), n).dim:
                bad.append((name, "HH^n", n))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    record(7, ok, f"relative = absolute HH_n and HH^n(A, A*) for kA2 and the loop quivers, n <= 2; "
                  f"{elapsed:.1f}s (limit 30s)")
    assert not bad, bad
    assert elapsed < 30


def test_criterion_8_specialization_gap():
    gaps, negatives = [], []
    for name, A in standard_corpus(QQ).items():
        for kind, i, alpha in spanning_cocycles(A):
            cond2 = witness_condition2(A, alpha)
            if cond2.verdict == NOT_SYMMETRIC:
                negatives.append((name, alpha))
            elif INCONCLUSIVE in (check_itagaki(A, alpha).verdict, check_oty(A, alpha).verdict):
                gaps.append((name, alpha))
    # the committed fixtures must be instances of what the search finds
    gap_doc = parse_input(EXAMPLES.joinpath("kA2_gap.alg"))
    gap = decide(gap_doc.algebra, gap_doc.cocycles["gap"])
    neg_doc = parse_input(EXAMPLES.joinpath("kxy_not_symmetric.alg"))
    neg = decide(neg_doc.algebra, neg_doc.cocycles["skew"])
    gap_ok = (gap.certificates["cond2"].symmetric
              and INCONCLUSIVE in (gap.certificates["itagaki"].verdict, gap.certificates["oty"].verdict))
    neg_ok = neg.verdict == NOT_SYMMETRIC
    gap_in_search = ("kA2", gap_doc.cocycles["gap"]) in gaps
    neg_in_search = ("kxy_squares", neg_doc.cocycles["skew"]) in negatives
    ok = bool(gaps) and bool(negatives) and gap_ok and neg_ok and gap_in_search and neg_in_search
    record(8, ok, f"search found {len(gaps)} gap cases (cond2 symmetric, itagaki/oty inconclusive) and "
                  f"{len(negatives)} not-symmetric cases; fixtures kA2_gap.alg and kxy_not_symmetric.alg confirmed")
    assert ok


def test_criterion_9_coboundary_invariance():
    rng = random.Random("coboundary-invariance")
    pairs = 0
    bad = []
    cases = [(F, name) for F in FIELDS for name in SIX]
    while pairs < 52:
        F, name = cases[pairs % len(cases)]
        A = standard_corpus(F)[name]
        alpha = zero_cochain2(A)
        for z in cocycle_space(A):
            alpha = alpha + z.scale(F(rng.randint(-2, 2)))
        coords = {((rng.randrange(A.dim),), rng.randrange(A.dim)): F(rng.randint(-3, 3)) for _ in range(3)}
        f = CochainVector(F, 1, A.dim, A.dim, coords)
        methods = ("cond1", "cond2", "cond3")
        before = decide(A, alpha, methods).verdict
        after = decide(A, shift_by_coboundary(A, alpha, f), methods).verdict
        pairs += 1
        if before != after:
            bad.append((F.name, name))
    record(9, not bad, f"{pairs} random (cocycle, 1-cochain) pairs: verdict unchanged by adding delta f in "
                       f"{pairs - len(bad)} cases")
    assert not bad, bad
