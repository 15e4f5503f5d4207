"""Command-line interface.

Exit codes: 0 computed, 2 computed with a not-symmetric or inconclusive
verdict, 1 error, 3 the equivalent criteria disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from .algebra import (
    Algebra,
    NotACocycleError,
    NoUnitError,
    center_basis,
    commutator_subspace,
    dual_bimodule,
    hochschild_extension,
    is_symmetric_algebra,
    regular_bimodule,
)
from .complexes import (
    MAX_DEGREE,
    DegreeCapError,
    check_cap,
    check_cocycle2,
    hochschild_cohomology,
    hochschild_homology,
)
from .cyclic import CYCLIC_MAX_DEGREE, cyclic_cohomology, cyclic_homology, resolve_total_signs
from .fields import GF, Field
from .fileformat import InputDocument, ParseError, emit_algebra, format_combination, parse_input
from .quiver import relative_hochschild_cohomology, relative_hochschild_homology
from .symmetry import (
    INCONCLUSIVE,
    NOT_SYMMETRIC,
    SYMMETRIC,
    CriteriaDisagreement,
    certificate_iso,
    decide,
)

CRITERIA = {
    "1": ("cond1",),
    "2": ("cond2",),
    "3": ("cond3",),
    "itagaki": ("itagaki",),
    "oty": ("oty",),
    "all": ("cond1", "cond2", "cond3", "itagaki", "oty"),
}

EXIT_OK, EXIT_ERROR, EXIT_VERDICT, EXIT_DISAGREE = 0, 1, 2, 3


class CommandError(Exception):
    pass


class Report:
    """Collects a command's results for human or machine output."""

    def __init__(self, argv: list[str], doc: InputDocument):
        self.data: dict = {"command": argv, "field": doc.field.name, "algebra": algebra_summary(doc.algebra)}
        if doc.quiver is not None:
            self.data["algebra"]["quiver_basis"] = [doc.algebra.labels[i] for i in range(doc.algebra.dim)]
        self.lines: list[str] = [f"field: {doc.field.name}", describe_algebra(doc.algebra)]
        self.exit_code = EXIT_OK

    def set(self, key: str, value) -> None:
        self.data[key] = value

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def render(self, mode: str) -> str:
        self.data["exit_status"] = self.exit_code
        if mode == "machine":
            return json.dumps(self.data, sort_keys=True, indent=2) + "\n"
        return "\n".join(self.lines) + "\n"


def algebra_summary(A: Algebra) -> dict:
    return {
        "dim": A.dim,
        "basis": list(A.labels),
        "unit": format_combination(A.field, A.labels, A.unit),
        "center_dim": len(center_basis(A)),
        "commutator_dim": len(commutator_subspace(A)),
    }


def describe_algebra(A: Algebra) -> str:
    s = algebra_summary(A)
    return (f"algebra: dim {s['dim']}, basis {' '.join(s['basis'])}, unit {s['unit']}, "
            f"center dim {s['center_dim']}, commutator dim {s['commutator_dim']}")


def _coefficients(doc: InputDocument, name: str):
    A = doc.algebra
    if name == "self":
        return regular_bimodule(A)
    if name == "dual":
        return dual_bimodule(A)
    if name in doc.bimodules:
        return doc.bimodules[name]
    raise CommandError(f"unknown coefficient bimodule {name!r}; use self, dual or a [bimodule] name")


def _cocycle(doc: InputDocument, name: str):
    if name not in doc.cocycles:
        known = ", ".join(sorted(doc.cocycles)) or "none"
        raise CommandError(f"unknown cocycle {name!r} (file defines: {known})")
    alpha = doc.cocycles[name]
    bad = check_cocycle2(doc.algebra, dual_bimodule(doc.algebra), alpha)
    if bad is not None:
        labels = ", ".join(doc.algebra.labels[i] for i in bad)
        raise CommandError(f"cocycle {name!r} fails the cocycle identity at ({labels})")
    return alpha


def _fmt_vec(F: Field, vec) -> list[str]:
    return [F.format(v) for v in vec]


# -- commands --------------------------------------------------------------


def cmd_validate(args, doc: InputDocument, rep: Report) -> None:
    A = doc.algebra
    status = {}
    for name in sorted(doc.cocycles):
        bad = check_cocycle2(A, dual_bimodule(A), doc.cocycles[name])
        status[name] = "cocycle" if bad is None else "not a cocycle at (" + ", ".join(A.labels[i] for i in bad) + ")"
        rep.say(f"cocycle {name}: {status[name]}")
    rep.set("cocycles", status)
    rep.set("bimodules", {name: M.dim for name, M in sorted(doc.bimodules.items())})
    for name, M in sorted(doc.bimodules.items()):
        rep.say(f"bimodule {name}: dim {M.dim}")
    if any(v != "cocycle" for v in status.values()):
        rep.exit_code = EXIT_ERROR
    else:
        rep.say("valid")


def cmd_hh(args, doc: InputDocument, rep: Report) -> None:
    A = doc.algebra
    check_cap(args.max_degree, MAX_DEGREE)
    M = _coefficients(doc, args.coeffs)
    homology = [hochschild_homology(A, n, MAX_DEGREE).dim for n in range(args.max_degree + 1)]
    cohomology = [hochschild_cohomology(A, M, n, MAX_DEGREE).dim for n in range(args.max_degree + 1)]
    rep.set("coefficients", args.coeffs)
    rep.set("homology", homology)
    rep.set("cohomology", cohomology)
    for n, (h, c) in enumerate(zip(homology, cohomology)):
        rep.say(f"HH_{n}(A) = {h}    HH^{n}(A, {args.coeffs}) = {c}")


def cmd_hc(args, doc: InputDocument, rep: Report) -> None:
    A = doc.algebra
    check_cap(args.max_degree, CYCLIC_MAX_DEGREE)
    convention = resolve_total_signs(A)
    homology = [cyclic_homology(A, n, convention=convention) for n in range(args.max_degree + 1)]
    cohomology = [cyclic_cohomology(A, n, convention=convention) for n in range(args.max_degree + 1)]
    rep.set("convention", {"name": convention.name, "description": convention.description})
    rep.set("homology", homology)
    rep.set("cohomology", cohomology)
    rep.say(f"total complex sign convention: {convention.name} ({convention.description})")
    for n, (h, c) in enumerate(zip(homology, cohomology)):
        rep.say(f"HC_{n}(A) = {h}    HC^{n}(A) = {c}")


def cmd_cohomology(args, doc: InputDocument, rep: Report) -> None:
    A = doc.algebra
    check_cap(args.degree, MAX_DEGREE)
    M = _coefficients(doc, args.coeffs)
    res = hochschild_cohomology(A, M, args.degree, MAX_DEGREE)
    reps = [_fmt_vec(A.field, r) for r in res.representatives]
    rep.set("degree", args.degree)
    rep.set("coefficients", args.coeffs)
    rep.set("dim", res.dim)
    rep.set("representatives", reps)
    rep.say(f"HH^{args.degree}(A, {args.coeffs}) = {res.dim}")
    for i, r in enumerate(reps):
        rep.say(f"  [{i}] {' '.join(r)}")


def cmd_extend(args, doc: InputDocument, rep: Report) -> None:
    A = doc.algebra
    alpha = _cocycle(doc, args.cocycle)
    T = hochschild_extension(A, dual_bimodule(A), alpha)
    text = emit_algebra(T, f"Hochschild extension of a {A.dim}-dimensional algebra by cocycle {args.cocycle}")
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    rep.set("extension", algebra_summary(T))
    rep.set("out", args.out)
    rep.say(f"wrote extension ({describe_algebra(T)}) to {args.out}")


def cmd_symmetric(args, doc: InputDocument, rep: Report) -> None:
    A = doc.algebra
    test = is_symmetric_algebra(A)
    verdict = SYMMETRIC if test.symmetric else NOT_SYMMETRIC
    out: dict = {"verdict": verdict, "trace_space_dim": len(test.trace_space)}
    rep.say(f"verdict: {verdict}")
    if test.form is not None:
        out["form"] = _fmt_vec(A.field, test.form)
        rep.say("symmetrizing form: " + " ".join(out["form"]))
    if test.evidence is not None:
        out["evidence"] = test.evidence.summary()
        rep.say(f"certificate: all Gram determinants vanish on the grid ({test.evidence.points} points, "
                f"max rank {test.evidence.max_rank})")
    rep.set("symmetric", out)
    if not test.symmetric:
        rep.exit_code = EXIT_VERDICT


def cmd_check(args, doc: InputDocument, rep: Report) -> None:
    A = doc.algebra
    alpha = _cocycle(doc, args.cocycle)
    report = decide(A, alpha, CRITERIA[args.criterion])
    data = report.to_dict(A)
    labels = A.labels
    for method, cert in report.certificates.items():
        rep.say(f"{method}: {cert.verdict}")
        if cert.c is not None:
            rep.say(f"  c = {format_combination(A.field, labels, cert.c)}")
        if cert.h is not None:
            rep.say(f"  h = {format_combination(A.field, [l + '*' for l in labels], cert.h)}")
        if cert.failing_pair is not None:
            rep.say("  failing pair: (" + ", ".join(labels[i] for i in cert.failing_pair) + ")")
        if cert.evidence is not None:
            ev = cert.evidence
            what = ("all Gram determinants of trace forms vanish" if method == "cond1"
                    else "no unit in the solution space")
            rep.say(f"  certificate: {what} (dim {len(cert.solution_space)}), "
                    f"{ev.points} grid points, max rank {ev.max_rank}")
        if cert.symmetric and cert.method in ("cond2", "cond3"):
            iso = certificate_iso(A, alpha, cert)
            if iso is not None:
                data["methods"][method]["iso_rank"] = iso.rank
                rep.say(f"  bimodule isomorphism T -> T*: rank {iso.rank} of {2 * A.dim}")
    rep.set("cocycle", args.cocycle)
    rep.set("criterion", args.criterion)
    rep.set("decision", data)
    rep.say(f"verdict: {report.verdict}")
    if any(c.verdict in (NOT_SYMMETRIC, INCONCLUSIVE) for c in report.certificates.values()):
        rep.exit_code = EXIT_VERDICT


def cmd_relative_hh(args, doc: InputDocument, rep: Report) -> None:
    if doc.quiver is None:
        raise CommandError("relative-hh needs a [quiver] input")
    B = doc.quiver
    check_cap(args.max_degree, MAX_DEGREE)
    homology = [relative_hochschild_homology(B, n, MAX_DEGREE) for n in range(args.max_degree + 1)]
    cohomology = [relative_hochschild_cohomology(B, n, MAX_DEGREE) for n in range(args.max_degree + 1)]
    rep.set("relative_homology", homology)
    rep.set("relative_cohomology", cohomology)
    for n, (h, c) in enumerate(zip(homology, cohomology)):
        rep.say(f"HH_{n}(A) = {h}    HH^{n}(A, dual) = {c}    (over the vertex algebra)")


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "hh": cmd_hh,
    "hc": cmd_hc,
    "cohomology": cmd_cohomology,
    "extend": cmd_extend,
    "symmetric": cmd_symmetric,
    "check": cmd_check,
    "relative-hh": cmd_relative_hh,
}


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--field", type=int, default=argparse.SUPPRESS, metavar="P",
                        help="work over F_P instead of the file's field")
    shared.add_argument("--emit", choices=("human", "machine"), default=argparse.SUPPRESS,
                        help="human text (default) or JSON")

    parser = argparse.ArgumentParser(prog="hochsym", description="Hochschild (co)homology and symmetry of extensions")
    parser.add_argument("--field", type=int, default=None, metavar="P", help="work over F_P instead of the file's field")
    parser.add_argument("--emit", choices=("human", "machine"), default="human", help="human text (default) or JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, parents=[shared], help=help_text)
        p.add_argument("input", help="algebra or quiver file")
        return p

    add("validate", "parse the file and check every cocycle")
    p = add("hh", "Hochschild homology and cohomology dimensions")
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--coeffs", default="dual", help="self, dual or a bimodule name (cohomology coefficients)")
    p = add("hc", "cyclic homology and cohomology dimensions")
    p.add_argument("--max-degree", type=int, default=2)
    p = add("cohomology", "one Hochschild cohomology group with representatives")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--coeffs", default="dual")
    p = add("extend", "write the extension by a cocycle as an algebra file")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--out", required=True)
    add("symmetric", "decide whether the algebra is symmetric")
    p = add("check", "decide whether the extension by a cocycle is symmetric")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--criterion", choices=tuple(CRITERIA), default="all")
    p = add("relative-hh", "Hochschild dimensions relative to the vertices of a quiver")
    p.add_argument("--max-degree", type=int, default=2)
    return parser


def run(argv: list[str]) -> tuple[str, str, int]:
    """Run one command; returns (stdout, stderr, exit code)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        field = None if args.field is None else GF(args.field)
    except ValueError as exc:
        return "", f"error: {exc}\n", EXIT_ERROR
    try:
        doc = parse_input(args.input, field)
    except OSError as exc:
        return "", f"error: cannot read {args.input}: {exc.strerror}\n", EXIT_ERROR
    except ParseError as exc:
        return "", f"error: {exc}\n", EXIT_ERROR
    rep = Report(list(argv), doc)
    try:
        COMMANDS[args.command](args, doc, rep)
    except CriteriaDisagreement as exc:
        rep.set("disagreement", {"message": str(exc), "dump": exc.dump})
        rep.exit_code = EXIT_DISAGREE
        rep.say(f"internal disagreement: {exc}")
        return rep.render(args.emit), f"error: criteria disagree: {exc}\n", EXIT_DISAGREE
    except (CommandError, DegreeCapError, NotACocycleError, NoUnitError, OSError) as exc:
        return "", f"error: {exc}\n", EXIT_ERROR
    return rep.render(args.emit), "", rep.exit_code


def main(argv: list[str] | None = None) -> int:
    out, err, code = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
