"""Bound quiver algebras kQ/I and their K-relative Hochschild complexes.

Paths compose left to right: ``p.q`` means first p, then q, and is nonzero
only when the target of p is the source of q.  The trivial path at vertex v
is labelled ``e<v>``; longer paths are arrow names joined by dots.

Here K is spanned by the vertex idempotents.  Because K is separable, the
K-relative complexes compute the same Hochschild (co)homology as the absolute
ones while using only endpoint-compatible tensors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import Algebra, validate_algebra
from .complexes import CochainVector, check_cap
from .fields import Field, QQ
from .linalg import Matrix, RowReducer, homology_dim

ADMISSIBILITY_CAP = 12


class QuiverError(ValueError):
    """Malformed presentation or an ideal that is not admissible."""


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return ".".join(self.arrows) if self.arrows else f"e{self.source}"


@dataclass(frozen=True)
class QuiverPresentation:
    """Vertices, arrows ``(name, source, target)`` and relations ``{arrow tuple: scalar}``."""

    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]
    relations: tuple[tuple[tuple[tuple[str, ...], object], ...], ...] = ()

    @classmethod
    def build(cls, vertices: Sequence[str], arrows: Sequence[tuple[str, str, str]],
              relations: Sequence[Mapping[tuple[str, ...], object]] = ()) -> "QuiverPresentation":
        rels = tuple(tuple(sorted(r.items())) for r in relations)
        q = cls(tuple(vertices), tuple(tuple(a) for a in arrows), rels)
        q.check()
        return q

    def arrow_map(self) -> dict[str, tuple[str, str]]:
        return {name: (s, t) for name, s, t in self.arrows}

    def path(self, arrows: Sequence[str]) -> Path:
        amap = self.arrow_map()
        if not arrows:
            raise QuiverError("use a vertex name for trivial paths")
        for a in arrows:
            if a not in amap:
                raise QuiverError(f"unknown arrow {a!r}")
        for a, b in zip(arrows, arrows[1:]):
            if amap[a][1] != amap[b][0]:
                raise QuiverError(f"arrows {a} and {b} do not compose")
        return Path(amap[arrows[0]][0], amap[arrows[-1]][1], tuple(arrows))

    def check(self) -> None:
        names = set()
        for v in self.vertices:
            if v in names or not v or "." in v:
                raise QuiverError(f"bad or repeated vertex name {v!r}")
            names.add(v)
        arrow_names = set()
        for name, s, t in self.arrows:
            if s not in names or t not in names:
                raise QuiverError(f"arrow {name} uses an unknown vertex")
            if name in arrow_names or not name or "." in name or name.startswith("e") and name[1:] in names:
                raise QuiverError(f"bad or repeated arrow name {name!r}")
            arrow_names.add(name)
        for rel in self.relations:
            ends = set()
            for arrows, _ in rel:
                if len(arrows) < 2:
                    raise QuiverError(
                        f"relation term {'.'.join(arrows) or 'vertex'} has length < 2; the ideal would not be admissible")
                p = self.path(arrows)
                ends.add((p.source, p.target))
            if len(ends) > 1:
                raise QuiverError("relation mixes paths with different endpoints")

    def paths_of_length(self, n: int) -> list[Path]:
        paths = [Path(v, v) for v in self.vertices]
        for _ in range(n):
            paths = _extend(self, paths)
        return paths


def _extend(Q: QuiverPresentation, paths: Sequence[Path]) -> list[Path]:
    """All one-arrow extensions of ``paths`` (on the right)."""
    out = []
    for p in paths:
        for name, s, t in Q.arrows:
            if s == p.target:
                out.append(Path(p.source, t, p.arrows + (name,)))
    return out


def _compose(p: Path, q: Path) -> Path | None:
    if p.target != q.source:
        return None
    if p.length == 0:
        return q
    if q.length == 0:
        return p
    return Path(p.source, q.target, p.arrows + q.arrows)


@dataclass
class BoundQuiverAlgebra:
    """kQ/I together with the path attached to each basis element."""

    algebra: Algebra
    quiver: QuiverPresentation
    basis_paths: tuple[Path, ...]
    nilpotency: int  # N with all paths of length N in I

    def endpoints(self, i: int) -> tuple[str, str]:
        p = self.basis_paths[i]
        return p.source, p.target


def _ideal_rows(Q: QuiverPresentation, F: Field, relations, order: dict[Path, int], extra: int, max_len: int | None):
    """Row-reduce {u r v : len(u) + len(v) <= extra}.

    With ``max_len`` set, terms longer than it are dropped (computing modulo
    the paths of that length and above); otherwise every term must be in
    ``order``.
    """
    R = RowReducer(F, len(order))
    shorter = [p for n in range(extra + 1) for p in Q.paths_of_length(n)]
    for rel in relations:
        for u in shorter:
            for v in shorter:
                if u.length + v.length > extra:
                    continue
                row: dict = {}
                for p, coeff in rel:
                    left = _compose(u, p)
                    full = _compose(left, v) if left is not None else None
                    if full is None or (max_len is not None and full.length > max_len):
                        continue
                    col = order[full]
                    row[col] = F.add(row.get(col, F.zero), coeff)
                R.add(row)
    return R


def _path_order(Q: QuiverPresentation, max_len: int) -> dict[Path, int]:
    """Columns for paths of length <= max_len, longest first so pivots land on long paths."""
    universe = [p for n in range(max_len + 1) for p in Q.paths_of_length(n)]
    return {p: k for k, p in enumerate(sorted(universe, key=lambda p: (-p.length, p.label())))}


def _contains_all(R: RowReducer, columns: Sequence[int], field: Field) -> bool:
    return all(not R.reduce({c: field.one})[0] for c in columns)


def admissibility_bound(Q: QuiverPresentation, field: Field = QQ, cap: int = ADMISSIBILITY_CAP) -> int:
    """Smallest N <= cap found with every path of length N a combination of products u r v.

    Relation terms have length >= 2, so the ideal lies in the square of the
    arrow ideal; together with this N it is admissible.
    """
    rels = [tuple((Q.path(arrows), field(c)) for arrows, c in rel) for rel in Q.relations]
    longest = max((p.length for rel in rels for p, _ in rel), default=0)
    by_length = [Q.paths_of_length(0)]
    for n in range(1, cap + 1):
        by_length.append(_extend(Q, by_length[-1]))
        if not by_length[-1]:
            return n
    if not rels:
        raise QuiverError(f"paths of length {cap} exist and there are no relations; not admissible")
    for extra in range(cap + 1):
        order = _path_order(Q, extra + longest)
        R = _ideal_rows(Q, field, rels, order, extra, None)
        for N in range(2, min(cap, extra + longest) + 1):
            if _contains_all(R, [order[p] for p in by_length[N]], field):
                return N
    raise QuiverError(f"no N <= {cap} with all paths of length N in the ideal; not admissible or too large")


def bound_quiver_algebra(Q: QuiverPresentation, field: Field = QQ, cap: int = ADMISSIBILITY_CAP) -> BoundQuiverAlgebra:
    """The algebra kQ/I on a basis of paths that are not leading terms of the ideal.

    Once all paths of length N are known to lie in I, the quotient is
    computed inside the span of paths shorter than N.
    """
    N = admissibility_bound(Q, field, cap)
    rels = [tuple((Q.path(arrows), field(c)) for arrows, c in rel) for rel in Q.relations]
    order = _path_order(Q, N - 1)
    R = _ideal_rows(Q, field, rels, order, max(N - 1, 0), N - 1)
    by_col = {k: p for p, k in order.items()}
    basis = sorted((by_col[k] for k in range(len(order)) if k not in R.pivots),
                   key=lambda p: (p.length, Q.vertices.index(p.source), p.label()))
    index = {p: i for i, p in enumerate(basis)}

    def normal_form(p: Path | None) -> dict[int, object]:
        if p is None or p.length >= N:
            return {}
        reduced, _, _ = R.reduce({order[p]: field.one})
        return {index[by_col[col]]: v for col, v in reduced.items()}

    products = {}
    for i, p in enumerate(basis):
        for j, q in enumerate(basis):
            nf = normal_form(_compose(p, q))
            if nf:
                products[(i, j)] = nf
    unit = [field.one if p.length == 0 else field.zero for p in basis]
    A = Algebra.from_products(field, [p.label() for p in basis], products, unit)
    bad = validate_algebra(A)
    if bad is not None:
        raise QuiverError(f"quotient failed validation: {bad}")
    return BoundQuiverAlgebra(A, Q, tuple(basis), N)


# -- K-relative complexes -------------------------------------------------


def relative_chain_basis(B: BoundQuiverAlgebra, n: int) -> list[tuple[int, ...]]:
    """Tuples (p_0, ..., p_n) of basis paths composable cyclically through p_0."""
    d = B.algebra.dim
    ends = [B.endpoints(i) for i in range(d)]
    out = []
    for idx in itertools.product(range(d), repeat=n + 1):
        if all(ends[idx[k]][1] == ends[idx[(k + 1) % (n + 1)]][0] for k in range(n + 1)):
            out.append(idx)
    return out


def relative_boundary_matrix(B: BoundQuiverAlgebra, n: int, max_degree: int | None = None) -> Matrix:
    """b_n restricted to endpoint-compatible tensors (rows and columns in relative bases)."""
    if n < 1:
        raise ValueError("b_n is defined for n >= 1")
    check_cap(n, max_degree)
    A = B.algebra
    F = A.field
    src = relative_chain_basis(B, n)
    dst = {t: k for k, t in enumerate(relative_chain_basis(B, n - 1))}
    columns = []
    for idx in src:
        col: dict = {}
        terms = []
        for i in range(n):
            sign = F.one if i % 2 == 0 else F.neg(F.one)
            for k, c in A.table[idx[i]][idx[i + 1]]:
                terms.append((idx[:i] + (k,) + idx[i + 2:], F.mul(sign, c)))
        sign = F.one if n % 2 == 0 else F.neg(F.one)
        for k, c in A.table[idx[n]][idx[0]]:
            terms.append(((k,) + idx[1:n], F.mul(sign, c)))
        for t, v in terms:
            if t not in dst:
                raise ArithmeticError(f"relative boundary left the relative basis at {t}")
            p = dst[t]
            col[p] = F.add(col.get(p, F.zero), v)
        columns.append(col)
    return Matrix.from_columns(F, len(dst), columns)


def relative_chain_differential(B: BoundQuiverAlgebra, n: int) -> Matrix:
    if n == 0:
        return Matrix.zeros(B.algebra.field, 0, len(relative_chain_basis(B, 0)))
    return relative_boundary_matrix(B, n)


def relative_hochschild_homology(B: BoundQuiverAlgebra, n: int, max_degree: int | None = None) -> int:
    check_cap(n + 1, max_degree)
    return homology_dim(relative_chain_differential(B, n), relative_boundary_matrix(B, n + 1))


def relative_cochain_basis(B: BoundQuiverAlgebra, n: int) -> list[tuple[tuple[int, ...], int]]:
    """Pairs ((p_1..p_n), y) with p_1..p_n composable and y closing the cycle.

    For n = 0 the tuple is empty and y runs over paths with equal endpoints.
    """
    return [(idx[1:], idx[0]) for idx in relative_chain_basis(B, n)]


def relative_coboundary_matrix(B: BoundQuiverAlgebra, n: int, max_degree: int | None = None) -> Matrix:
    """delta^n on Hom_{K^e}(A^(x)_K n, A*), from the absolute formula on relative tensors."""
    check_cap(n + 1, max_degree)
    A = B.algebra
    F = A.field
    cols = {key: k for k, key in enumerate(relative_cochain_basis(B, n))}
    rows = []
    last_sign = F.one if (n + 1) % 2 == 0 else F.neg(F.one)
    for idx, y in relative_cochain_basis(B, n + 1):
        row: dict = {}

        def add(key, v):
            if v == F.zero:
                return
            if key not in cols:
                raise ArithmeticError(f"relative coboundary left the relative basis at {key}")
            p = cols[key]
            row[p] = F.add(row.get(p, F.zero), v)

        # (a_1 f(a_2..))(y) = f(a_2..)(y a_1)
        for s, v in A.table[y][idx[0]]:
            add((idx[1:], s), v)
        for i in range(1, n + 1):
            sign = F.one if i % 2 == 0 else F.neg(F.one)
            for k, c in A.table[idx[i - 1]][idx[i]]:
                add((idx[: i - 1] + (k,) + idx[i + 1:], y), F.mul(sign, c))
        # (f(a_1..a_n) a_{n+1})(y) = f(a_1..a_n)(a_{n+1} y)
        for s, v in A.table[idx[n]][y]:
            add((idx[:n], s), F.mul(last_sign, v))
        rows.append(row)
    return Matrix(F, len(rows), len(cols), rows)


def relative_hochschild_cohomology(B: BoundQuiverAlgebra, n: int, max_degree: int | None = None) -> int:
    """dim HH^n(A, A*) from the K-relative cochain complex."""
    d_out = relative_coboundary_matrix(B, n, max_degree)
    if n == 0:
        d_in = Matrix.zeros(B.algebra.field, d_out.ncols, 0)
    else:
        d_in = relative_coboundary_matrix(B, n - 1, max_degree)
    return homology_dim(d_out, d_in)


def relative_cocycle_space2(B: BoundQuiverAlgebra) -> list[list]:
    """Basis of relative 2-cocycles in relative coordinates."""
    from .linalg import kernel_basis

    return kernel_basis(relative_coboundary_matrix(B, 2))


def embed_relative_cochain(B: BoundQuiverAlgebra, n: int, vec: Sequence) -> CochainVector:
    """Extend a relative n-cochain by zero on tensors that are not composable."""
    A = B.algebra
    coords = {}
    for (idx, y), v in zip(relative_cochain_basis(B, n), vec):
        if v != A.field.zero:
            coords[(idx, y)] = v
    return CochainVector(A.field, n, A.dim, A.dim, coords)


# -- a few presentations used by tests and the CLI ------------------------


def linear_A2() -> QuiverPresentation:
    return QuiverPresentation.build(["1", "2"], [("a", "1", "2")])


def one_loop(power: int) -> QuiverPresentation:
    return QuiverPresentation.build(["1"], [("x", "1", "1")], [{("x",) * power: 1}])


def two_cycle_radical_square() -> QuiverPresentation:
    """1 -a-> 2 -b-> 1 with ab = ba = 0."""
    return QuiverPresentation.build(
        ["1", "2"], [("a", "1", "2"), ("b", "2", "1")], [{("a", "b"): 1}, {("b", "a"): 1}])


def standard_quivers() -> dict[str, QuiverPresentation]:
    return {
        "A2": linear_A2(),
        "loop_x2": one_loop(2),
        "loop_x3": one_loop(3),
        "two_cycle": two_cycle_radical_square(),
    }
