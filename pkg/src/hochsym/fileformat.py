"""Line-oriented input files for algebras, quivers, bimodules and cocycles.

Example::

    # k[x]/(x^2)
    [field]
    rationals

    [algebra]
    dim 2
    basis 1 x
    product 1 1 = 1
    product 1 x = x
    product x 1 = x

    [cocycle zero]

    [cocycle omega]
    alpha(x, x) = 1*

Sections:

``[field]``
    ``rationals`` or ``prime p``.
``[algebra]``
    ``dim n``, ``basis l1 ... ln`` and ``product a b = <combination>`` lines;
    unlisted products are zero.
``[unit]``
    one combination of basis labels; solved for when the section is absent.
``[quiver]``
    ``vertex v``, ``arrow name source target`` and ``relation <combination
    of paths>``; paths are arrow names joined by dots and compose left to
    right.  Used instead of ``[algebra]``.
``[bimodule NAME]``
    ``basis m1 ... mk``, ``left a m = <combination>``, ``right m a = <combination>``.
``[cocycle NAME]``
    ``alpha(a, b) = <combination of dual labels such as 2 x*>`` and/or
    ``tilde(a, b, c) = scalar`` meaning alpha(b, c)(a); an empty section is
    the zero cochain.  Cochains take values in A*.

A combination is a sum of terms ``[scalar] label`` separated by ``+`` or
``-`` (tokens separated by spaces); ``0`` is the empty sum.  A lone token
that is a label is read as that label, so ``1`` means the basis element
named 1 when one exists.  Scalars are integers or fractions ``p/q``.
Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Sequence

from .algebra import Algebra, Bimodule, find_unit, validate_algebra, validate_bimodule
from .complexes import CochainVector
from .fields import Field, QQ, field_from_tag, parse_scalar
from .quiver import BoundQuiverAlgebra, QuiverError, QuiverPresentation, bound_quiver_algebra

_SCALAR = re.compile(r"^[+-]?\d+(/\d+)?$")
_SECTION = re.compile(r"^\[\s*([a-z]+)(?:\s+(\S+))?\s*\]$")
_CALL = re.compile(r"^(alpha|tilde)\s*\(([^)]*)\)\s*=\s*(.*)$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.message = message


@dataclass
class InputDocument:
    field: Field
    algebra: Algebra
    quiver: BoundQuiverAlgebra | None = None
    cocycles: dict[str, CochainVector] = dc_field(default_factory=dict)
    bimodules: dict[str, Bimodule] = dc_field(default_factory=dict)
    source: str | None = None


@dataclass
class _Section:
    kind: str
    name: str | None
    line: int
    body: list[tuple[int, str]] = dc_field(default_factory=list)


def _split_sections(text: str, path: str | None) -> list[_Section]:
    sections: list[_Section] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION.match(line)
        if m:
            sections.append(_Section(m.group(1), m.group(2), lineno))
            continue
        if line.startswith("["):
            raise ParseError(f"bad section header {line!r}", lineno, path)
        if not sections:
            raise ParseError("content before the first section", lineno, path)
        sections[-1].body.append((lineno, line))
    return sections


def parse_combination(text: str, labels: Sequence[str], field: Field, line: int | None = None) -> list:
    """Dense coordinates of a combination of ``labels``."""
    index = {l: i for i, l in enumerate(labels)}
    out = [field.zero] * len(labels)
    tokens = text.split()
    if tokens == ["0"] and "0" not in index:
        return out
    if not tokens:
        raise ParseError("empty combination (write 0 for zero)", line)
    pos = 0
    sign = Fraction(1)
    expect_term = True
    while pos < len(tokens):
        tok = tokens[pos]
        if tok in ("+", "-"):
            if not expect_term and tok in ("+", "-"):
                sign = Fraction(1) if tok == "+" else Fraction(-1)
                expect_term = True
                pos += 1
                continue
            if tok == "-":
                sign = -sign
            pos += 1
            continue
        if not expect_term:
            raise ParseError(f"expected + or - before {tok!r}", line)
        coeff = Fraction(1)
        nxt = tokens[pos + 1] if pos + 1 < len(tokens) else None
        if _SCALAR.match(tok) and nxt is not None and nxt not in ("+", "-") and (tok not in index or nxt in index):
            try:
                coeff = parse_scalar(tok)
            except ValueError as exc:
                raise ParseError(str(exc), line) from exc
            pos += 1
            tok = tokens[pos]
        if tok.startswith("-") and tok[1:] in index and tok not in index:
            coeff, tok = -coeff, tok[1:]
        if tok not in index:
            if _SCALAR.match(tok):
                raise ParseError(f"scalar {tok!r} is not attached to a basis element", line)
            raise ParseError(f"unknown label {tok!r}", line)
        try:
            value = field(sign * coeff)
        except (ZeroDivisionError, ValueError) as exc:
            raise ParseError(f"scalar not defined in {field}: {exc}", line) from exc
        i = index[tok]
        out[i] = field.add(out[i], value)
        sign = Fraction(1)
        expect_term = False
        pos += 1
    if expect_term:
        raise ParseError("combination ends with a sign", line)
    return out


def _parse_field(sec: _Section, path) -> Field:
    if len(sec.body) != 1:
        raise ParseError("[field] takes exactly one line", sec.line, path)
    lineno, line = sec.body[0]
    words = line.split()
    if words == ["rationals"]:
        return QQ
    if len(words) == 2 and words[0] == "prime":
        try:
            return field_from_tag(int(words[1]))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, path) from exc
    raise ParseError(f"unknown field {line!r}; use 'rationals' or 'prime p'", lineno, path)


def _parse_algebra(sec: _Section, F: Field, unit_sec: _Section | None, path) -> Algebra:
    dim = None
    labels: list[str] | None = None
    products: dict = {}
    for lineno, line in sec.body:
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "dim":
            try:
                dim = int(rest)
            except ValueError as exc:
                raise ParseError(f"bad dimension {rest!r}", lineno, path) from exc
        elif word == "basis":
            labels = rest.split()
            if len(set(labels)) != len(labels):
                raise ParseError("repeated basis label", lineno, path)
        elif word == "product":
            if labels is None:
                raise ParseError("product before basis", lineno, path)
            lhs, eq, rhs = rest.partition("=")
            names = lhs.split()
            if not eq or len(names) != 2:
                raise ParseError("expected 'product a b = <combination>'", lineno, path)
            try:
                key = (labels.index(names[0]), labels.index(names[1]))
            except ValueError as exc:
                raise ParseError(f"unknown label in {lhs.strip()!r}", lineno, path) from exc
            if key in products:
                raise ParseError(f"product {lhs.strip()} given twice", lineno, path)
            products[key] = _combo(rhs, labels, F, lineno, path)
        else:
            raise ParseError(f"unknown [algebra] line {line!r}", lineno, path)
    if labels is None:
        raise ParseError("[algebra] needs a basis line", sec.line, path)
    if dim is not None and dim != len(labels):
        raise ParseError(f"dim {dim} but {len(labels)} basis labels", sec.line, path)
    if unit_sec is not None:
        unit = _parse_unit(unit_sec, labels, F, path)
    else:
        unit = find_unit(F, labels, products)
        if unit is None:
            raise ParseError("the multiplication table has no unit", sec.line, path)
    A = Algebra.from_products(F, labels, products, unit)
    bad = validate_algebra(A)
    if bad is not None:
        raise ParseError(f"not an algebra: {bad}", sec.line, path)
    return A


def _combo(text, labels, F, lineno, path) -> list:
    try:
        return parse_combination(text, labels, F, lineno)
    except ParseError as exc:
        raise ParseError(exc.message, lineno, path) from exc


def _parse_unit(sec: _Section, labels, F, path) -> list:
    if len(sec.body) != 1:
        raise ParseError("[unit] takes exactly one line", sec.line, path)
    lineno, line = sec.body[0]
    return _combo(line, labels, F, lineno, path)


def _parse_quiver(sec: _Section, F: Field, path) -> BoundQuiverAlgebra:
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    relation_lines: list[tuple[int, str]] = []
    for lineno, line in sec.body:
        words = line.split()
        if words[0] == "vertex" and len(words) == 2:
            vertices.append(words[1])
        elif words[0] == "arrow" and len(words) == 4:
            arrows.append((words[1], words[2], words[3]))
        elif words[0] == "relation" and len(words) >= 2:
            relation_lines.append((lineno, line[len("relation"):].strip()))
        else:
            raise ParseError(f"unknown [quiver] line {line!r}", lineno, path)
    relations = []
    for lineno, text in relation_lines:
        labels = sorted({t.lstrip("-") for t in _labels_in(text)})
        coeffs = _combo(text, labels, QQ, lineno, path)
        rel = {}
        for label, c in zip(labels, coeffs):
            if c != 0:
                rel[tuple(label.split("."))] = c
        if not rel:
            raise ParseError("relation is zero", lineno, path)
        relations.append(rel)
    try:
        Q = QuiverPresentation.build(vertices, arrows, relations)
        return bound_quiver_algebra(Q, F)
    except QuiverError as exc:
        raise ParseError(str(exc), sec.line, path) from exc


def _labels_in(text: str) -> list[str]:
    return [t for t in text.split() if t not in ("+", "-") and not _SCALAR.match(t)]


def _parse_bimodule(sec: _Section, A: Algebra, path) -> Bimodule:
    F = A.field
    labels: list[str] | None = None
    left: dict = {}
    right: dict = {}
    for lineno, line in sec.body:
        word, _, rest = line.partition(" ")
        if word == "basis":
            labels = rest.split()
            continue
        if labels is None:
            raise ParseError("bimodule action before basis", lineno, path)
        lhs, eq, rhs = rest.partition("=")
        names = lhs.split()
        if word not in ("left", "right") or not eq or len(names) != 2:
            raise ParseError(f"unknown [bimodule] line {line!r}", lineno, path)
        try:
            if word == "left":
                key = (A.labels.index(names[0]), labels.index(names[1]))
                left[key] = _combo(rhs, labels, F, lineno, path)
            else:
                key = (labels.index(names[0]), A.labels.index(names[1]))
                right[key] = _combo(rhs, labels, F, lineno, path)
        except ValueError as exc:
            raise ParseError(f"unknown label in {lhs.strip()!r}", lineno, path) from exc
    if labels is None:
        raise ParseError("[bimodule] needs a basis line", sec.line, path)
    M = Bimodule.from_actions(F, labels, A.dim, left, right)
    bad = validate_bimodule(A, M)
    if bad is not None:
        raise ParseError(f"not a bimodule: {bad}", sec.line, path)
    return M


def _parse_cocycle(sec: _Section, A: Algebra, path) -> CochainVector:
    F = A.field
    n = A.dim
    duals = [f"{l}*" for l in A.labels]
    coords: dict = {}

    def add(key, v):
        coords[key] = F.add(coords.get(key, F.zero), v)

    for lineno, line in sec.body:
        m = _CALL.match(line)
        if not m:
            raise ParseError(f"expected alpha(a, b) = ... or tilde(a, b, c) = ..., got {line!r}", lineno, path)
        kind, args, rhs = m.group(1), [a.strip() for a in m.group(2).split(",")], m.group(3).strip()
        try:
            idx = [A.labels.index(a) for a in args]
        except ValueError as exc:
            raise ParseError(f"unknown label in ({m.group(2)})", lineno, path) from exc
        if kind == "alpha":
            if len(idx) != 2:
                raise ParseError("alpha takes two arguments", lineno, path)
            for i, v in enumerate(_combo(rhs, duals, F, lineno, path)):
                if v != F.zero:
                    add(((idx[0], idx[1]), i), v)
        else:
            if len(idx) != 3:
                raise ParseError("tilde takes three arguments", lineno, path)
            if not _SCALAR.match(rhs):
                raise ParseError(f"tilde value must be a scalar, got {rhs!r}", lineno, path)
            try:
                add(((idx[1], idx[2]), idx[0]), F(parse_scalar(rhs)))
            except ZeroDivisionError as exc:
                raise ParseError(f"scalar {rhs} not defined in {F}", lineno, path) from exc
    return CochainVector(F, 2, n, n, {k: v for k, v in coords.items() if v != F.zero})


def parse_text(text: str, path: str | None = None, field: Field | None = None) -> InputDocument:
    """Parse a document; ``field`` overrides its ``[field]`` section."""
    sections = _split_sections(text, path)
    by_kind: dict[str, list[_Section]] = {}
    for sec in sections:
        if sec.kind not in ("field", "algebra", "unit", "quiver", "cocycle", "bimodule"):
            raise ParseError(f"unknown section [{sec.kind}]", sec.line, path)
        if sec.kind in ("cocycle", "bimodule") and not sec.name:
            raise ParseError(f"[{sec.kind}] needs a name", sec.line, path)
        if sec.kind not in ("cocycle", "bimodule") and sec.name:
            raise ParseError(f"[{sec.kind}] takes no name", sec.line, path)
        by_kind.setdefault(sec.kind, []).append(sec)
    for kind in ("field", "algebra", "unit", "quiver"):
        if len(by_kind.get(kind, [])) > 1:
            raise ParseError(f"more than one [{kind}] section", by_kind[kind][1].line, path)
    F = _parse_field(by_kind["field"][0], path) if "field" in by_kind else QQ
    if field is not None:
        F = field
    has_alg, has_quiver = "algebra" in by_kind, "quiver" in by_kind
    if has_alg == has_quiver:
        raise ParseError("need exactly one of [algebra] or [quiver]", None, path)
    unit_sec = by_kind.get("unit", [None])[0]
    quiver = None
    if has_alg:
        A = _parse_algebra(by_kind["algebra"][0], F, unit_sec, path)
    else:
        if unit_sec is not None:
            raise ParseError("[unit] is not used with [quiver]", unit_sec.line, path)
        quiver = _parse_quiver(by_kind["quiver"][0], F, path)
        A = quiver.algebra
    doc = InputDocument(F, A, quiver, source=path)
    for sec in by_kind.get("bimodule", []):
        if sec.name in doc.bimodules or sec.name in ("self", "dual"):
            raise ParseError(f"bimodule name {sec.name!r} repeated or reserved", sec.line, path)
        doc.bimodules[sec.name] = _parse_bimodule(sec, A, path)
    for sec in by_kind.get("cocycle", []):
        if sec.name in doc.cocycles:
            raise ParseError(f"cocycle {sec.name!r} defined twice", sec.line, path)
        doc.cocycles[sec.name] = _parse_cocycle(sec, A, path)
    return doc


def parse_input(path: str | FilePath, field: Field | None = None) -> InputDocument:
    path = str(path)
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read(), path, field)


# -- emission -------------------------------------------------------------


def format_combination(F: Field, labels: Sequence[str], vec: Sequence) -> str:
    terms = []
    for label, v in zip(labels, vec):
        if v == F.zero:
            continue
        text = F.format(v)
        if text.startswith("-"):
            sign, text = "-", text[1:]
        else:
            sign = "+"
        body = label if text == "1" else f"{text} {label}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("- " if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def field_line(F: Field) -> str:
    return "rationals" if F.characteristic == 0 else f"prime {F.characteristic}"


def emit_algebra(A: Algebra, comment: str | None = None) -> str:
    """Canonical text for an algebra given by structure constants."""
    F = A.field
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines += ["[field]", field_line(F), "", "[algebra]", f"dim {A.dim}", "basis " + " ".join(A.labels)]
    for i in range(A.dim):
        for j in range(A.dim):
            vec = [A.constant(i, j, k) for k in range(A.dim)]
            if any(v != F.zero for v in vec):
                lines.append(f"product {A.labels[i]} {A.labels[j]} = {format_combination(F, A.labels, vec)}")
    lines += ["", "[unit]", format_combination(F, A.labels, list(A.unit))]
    return "\n".join(lines) + "\n"


def emit_cocycle(A: Algebra, name: str, alpha: CochainVector) -> str:
    F = A.field
    duals = [f"{l}*" for l in A.labels]
    lines = [f"[cocycle {name}]"]
    for a in range(A.dim):
        for b in range(A.dim):
            vec = [F.zero] * A.dim
            for i, v in alpha.value(a, b):
                vec[i] = v
            if any(v != F.zero for v in vec):
                lines.append(f"alpha({A.labels[a]}, {A.labels[b]}) = {format_combination(F, duals, vec)}")
    return "\n".join(lines) + "\n"
