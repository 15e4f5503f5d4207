"""Sparse exact linear algebra over a :class:`~hochsym.fields.Field`.

Matrices are stored row-major as ``{col: value}`` dicts holding only nonzero
entries.  Every elimination runs through :class:`RowReducer`, which processes
rows in order and pivots on the first nonzero column of each reduced row, so
ranks, kernels and particular solutions are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .fields import Field, FieldMismatchError

Vector = list


class NotAComplexError(ValueError):
    """Raised when two differentials do not compose to zero."""


class DimensionError(ValueError):
    pass


class Matrix:
    """Immutable sparse matrix with entries in ``field``."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: Sequence[dict] | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise DimensionError(f"expected {nrows} rows, got {len(rows)}")
        zero = field.zero
        cleaned = []
        for r in rows:
            row = {}
            for c, v in r.items():
                if not 0 <= c < ncols:
                    raise IndexError(f"column {c} out of range for {ncols} columns")
                if v != zero:
                    row[c] = v
            cleaned.append(row)
        self.rows = tuple(cleaned)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def from_dense(cls, field: Field, data: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged dense matrix")
            rows.append({j: field(v) for j, v in enumerate(r)})
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_entries(cls, field: Field, nrows: int, ncols: int, entries: dict) -> "Matrix":
        """Build from ``{(row, col): value}``, summing nothing: keys are unique."""
        rows: list[dict] = [{} for _ in range(nrows)]
        for (i, j), v in entries.items():
            if not 0 <= i < nrows:
                raise IndexError(f"row {i} out of range")
            rows[i][j] = v
        return cls(field, nrows, ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: Sequence[dict]) -> "Matrix":
        rows: list[dict] = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows[i][j] = v
        return cls(field, nrows, len(columns), rows)

    @classmethod
    def from_vectors(cls, field: Field, vectors: Sequence[Sequence], ncols: int) -> "Matrix":
        """Stack coordinate vectors as rows."""
        return cls(field, len(vectors), ncols, [{j: v for j, v in enumerate(vec)} for vec in vectors])

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def get(self, i: int, j: int):
        return self.rows[i].get(j, self.field.zero)

    def to_dense(self) -> list[list]:
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self.rows]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def column(self, j: int) -> Vector:
        z = self.field.zero
        return [r.get(j, z) for r in self.rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # -- arithmetic -------------------------------------------------------

    def _check_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"mixed fields {self.field} and {other.field}")

    def transpose(self) -> "Matrix":
        rows: list[dict] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return Matrix(self.field, self.ncols, self.nrows, rows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot compose {self.shape} with {other.shape}")
        F = self.field
        add, mul = F.add, F.mul
        zero = F.zero
        out = []
        orows = other.rows
        for r in self.rows:
            acc: dict = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    acc[j] = add(acc.get(j, zero), mul(a, b))
            out.append(acc)
        return Matrix(F, self.nrows, other.ncols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        add, zero = self.field.add, self.field.zero
        rows = []
        for r, s in zip(self.rows, other.rows):
            acc = dict(r)
            for j, v in s.items():
                acc[j] = add(acc.get(j, zero), v)
            rows.append(acc)
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, self.nrows, self.ncols, [{j: neg(v) for j, v in r.items()} for r in self.rows])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, s) -> "Matrix":
        mul = self.field.mul
        return Matrix(self.field, self.nrows, self.ncols, [{j: mul(s, v) for j, v in r.items()} for r in self.rows])

    def apply(self, vec: Sequence) -> Vector:
        """Matrix-vector product ``M v``."""
        if len(vec) != self.ncols:
            raise DimensionError(f"vector of length {len(vec)} for {self.ncols} columns")
        F = self.field
        add, mul, zero = F.add, F.mul, F.zero
        out = []
        for r in self.rows:
            acc = zero
            for j, a in r.items():
                x = vec[j]
                if x != zero:
                    acc = add(acc, mul(a, x))
            out.append(acc)
        return out

    def select_rows(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(indices), self.ncols, [self.rows[i] for i in indices])

    def select_columns(self, indices: Sequence[int]) -> "Matrix":
        pos = {c: k for k, c in enumerate(indices)}
        rows = [{pos[j]: v for j, v in r.items() if j in pos} for r in self.rows]
        return Matrix(self.field, self.nrows, len(indices), rows)


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    F = blocks[0].field
    nrows = blocks[0].nrows
    rows: list[dict] = [{} for _ in range(nrows)]
    offset = 0
    for b in blocks:
        if b.field != F:
            raise FieldMismatchError("mixed fields in hstack")
        if b.nrows != nrows:
            raise DimensionError("hstack row mismatch")
        for i, r in enumerate(b.rows):
            for j, v in r.items():
                rows[i][j + offset] = v
        offset += b.ncols
    return Matrix(F, nrows, offset, rows)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    F = blocks[0].field
    ncols = blocks[0].ncols
    rows: list[dict] = []
    for b in blocks:
        if b.field != F:
            raise FieldMismatchError("mixed fields in vstack")
        if b.ncols != ncols:
            raise DimensionError("vstack column mismatch")
        rows.extend(b.rows)
    return Matrix(F, len(rows), ncols, rows)


def block_matrix(field: Field, row_dims: Sequence[int], col_dims: Sequence[int], blocks: dict) -> Matrix:
    """Assemble from ``{(block_row, block_col): Matrix}``; missing blocks are zero."""
    row_off = [0]
    for d in row_dims:
        row_off.append(row_off[-1] + d)
    col_off = [0]
    for d in col_dims:
        col_off.append(col_off[-1] + d)
    rows: list[dict] = [{} for _ in range(row_off[-1])]
    for (bi, bj), M in blocks.items():
        if M.field != field:
            raise FieldMismatchError("mixed fields in block matrix")
        if M.shape != (row_dims[bi], col_dims[bj]):
            raise DimensionError(f"block {(bi, bj)} has shape {M.shape}")
        for i, r in enumerate(M.rows):
            target = rows[row_off[bi] + i]
            for j, v in r.items():
                target[col_off[bj] + j] = v
    return Matrix(field, row_off[-1], col_off[-1], rows)


class RowReducer:
    """Incremental reduced row echelon form.

    Rows are absorbed one at a time.  A reduced row with a nonzero entry
    becomes a pivot row at its first nonzero column, normalized to 1, and is
    eliminated from all earlier pivot rows, so the stored rows are always in
    RREF.  With ``track=True`` each stored row also records the combination of
    absorbed input rows that produced it.
    """

    def __init__(self, field: Field, ncols: int, track: bool = False):
        self.field = field
        self.ncols = ncols
        self.track = track
        self.pivots: dict[int, dict] = {}
        self.combos: dict[int, dict] = {}
        self.extra: dict[int, object] = {}
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict, extra=None, combo: dict | None = None):
        """Reduce ``row`` against the current pivots; returns (row, extra, combo)."""
        F = self.field
        sub, mul, zero = F.sub, F.mul, F.zero
        row = dict(row)
        hits = [c for c in row if c in self.pivots]
        for c in hits:
            f = row.get(c, zero)
            if f == zero:
                continue
            prow = self.pivots[c]
            for j, v in prow.items():
                nv = sub(row.get(j, zero), mul(f, v))
                if nv == zero:
                    row.pop(j, None)
                else:
                    row[j] = nv
            if extra is not None:
                extra = sub(extra, mul(f, self.extra[c]))
            if combo is not None:
                for j, v in self.combos[c].items():
                    nv = sub(combo.get(j, zero), mul(f, v))
                    if nv == zero:
                        combo.pop(j, None)
                    else:
                        combo[j] = nv
        return row, extra, combo

    def add(self, row: dict, extra=None) -> tuple[int | None, dict, object, dict | None]:
        """Absorb a row.  Returns (pivot column or None, residual, extra, combo)."""
        F = self.field
        idx = self.count
        self.count += 1
        combo = {idx: F.one} if self.track else None
        if extra is None and self.extra:
            extra = F.zero
        row, extra, combo = self.reduce(row, extra, combo)
        if not row:
            return None, row, extra, combo
        piv = min(row)
        inv = F.inv(row[piv])
        mul, sub, zero = F.mul, F.sub, F.zero
        row = {j: mul(inv, v) for j, v in row.items()}
        if extra is not None:
            extra = mul(inv, extra)
        if combo is not None:
            combo = {j: mul(inv, v) for j, v in combo.items()}
        # keep RREF: clear the new pivot column from the older pivot rows
        for c, prow in self.pivots.items():
            f = prow.get(piv)
            if f is None:
                continue
            for j, v in row.items():
                nv = sub(prow.get(j, zero), mul(f, v))
                if nv == zero:
                    prow.pop(j, None)
                else:
                    prow[j] = nv
            if extra is not None:
                self.extra[c] = sub(self.extra[c], mul(f, extra))
            if combo is not None:
                pc = self.combos[c]
                for j, v in combo.items():
                    nv = sub(pc.get(j, zero), mul(f, v))
                    if nv == zero:
                        pc.pop(j, None)
                    else:
                        pc[j] = nv
        self.pivots[piv] = row
        if extra is not None:
            self.extra[piv] = extra
        if combo is not None:
            self.combos[piv] = combo
        return piv, row, extra, combo

    def basis(self) -> list[dict]:
        """Pivot rows sorted by pivot column."""
        return [dict(self.pivots[c]) for c in sorted(self.pivots)]

    def kernel(self) -> list[Vector]:
        """Null space of the absorbed rows, one vector per free column."""
        F = self.field
        zero, neg = F.zero, F.neg
        out = []
        for f in range(self.ncols):
            if f in self.pivots:
                continue
            v = [zero] * self.ncols
            v[f] = F.one
            for c, prow in self.pivots.items():
                x = prow.get(f)
                if x is not None:
                    v[c] = neg(x)
            out.append(v)
        return out


def _as_row(vec: Sequence, zero) -> dict:
    return {j: v for j, v in enumerate(vec) if v != zero}


def _as_vector(row: dict, n: int, zero) -> Vector:
    v = [zero] * n
    for j, x in row.items():
        v[j] = x
    return v


def row_reduce(M: Matrix) -> RowReducer:
    R = RowReducer(M.field, M.ncols)
    for r in M.rows:
        R.add(r)
    return R


def rank(M: Matrix) -> int:
    return row_reduce(M).rank


def kernel_basis(M: Matrix) -> list[Vector]:
    """Basis of ``{v : M v = 0}``, one vector per free column in increasing order."""
    return row_reduce(M).kernel()


def span_basis(field: Field, vectors: Iterable[Sequence], dim: int) -> list[Vector]:
    """RREF basis of the span of ``vectors``."""
    R = RowReducer(field, dim)
    for v in vectors:
        R.add(_as_row(v, field.zero))
    return [_as_vector(r, dim, field.zero) for r in R.basis()]


def image_basis(M: Matrix) -> list[Vector]:
    """RREF basis of the column space of ``M``."""
    return span_basis(M.field, (M.column(j) for j in range(M.ncols)), M.nrows)


@dataclass
class AffineSolution:
    """Solution set of ``M x = target``.

    When feasible, ``particular`` is the solution with every free variable
    set to zero and ``kernel`` spans the homogeneous solutions.  When
    infeasible, ``certificate`` is a row vector ``y`` with ``y M = 0`` and
    ``y . target != 0``.
    """

    particular: Vector | None
    kernel: list[Vector] = dc_field(default_factory=list)
    certificate: Vector | None = None

    @property
    def feasible(self) -> bool:
        return self.particular is not None


def solve_affine(M: Matrix, target: Sequence) -> AffineSolution:
    if len(target) != M.nrows:
        raise DimensionError(f"target has length {len(target)}, matrix has {M.nrows} rows")
    F = M.field
    zero = F.zero
    R = RowReducer(F, M.ncols, track=True)
    for r, t in zip(M.rows, target):
        piv, _, extra, combo = R.add(r, t)
        if piv is None and extra != zero:
            cert = _as_vector(combo, M.nrows, zero)
            return AffineSolution(None, [], cert)
    x = [zero] * M.ncols
    for c, e in R.extra.items():
        x[c] = e
    return AffineSolution(x, R.kernel())


def verify_certificate(M: Matrix, target: Sequence, certificate: Sequence) -> bool:
    """Check that ``certificate`` proves ``M x = target`` has no solution."""
    F = M.field
    left = M.transpose().apply(certificate)
    dot = F.zero
    for y, t in zip(certificate, target):
        dot = F.add(dot, F.mul(y, t))
    return all(v == F.zero for v in left) and dot != F.zero


def homology_dim(B_out: Matrix, B_in: Matrix) -> int:
    """dim ker(B_out) - rank(B_in) for composable ``B_out @ B_in == 0``."""
    if B_out.ncols != B_in.nrows:
        raise DimensionError(f"cannot compose {B_out.shape} with {B_in.shape}")
    if not (B_out @ B_in).is_zero():
        raise NotAComplexError("not a complex: B_out @ B_in != 0")
    return B_out.ncols - rank(B_out) - rank(B_in)


def homology_representatives(B_out: Matrix, B_in: Matrix) -> list[Vector]:
    """Cycles of ``B_out`` independent modulo the image of ``B_in``.

    Each representative is reduced against the RREF of the image and of the
    earlier representatives, so the output is canonical.
    """
    F = B_in.field
    n = B_out.ncols
    R = RowReducer(F, n)
    for j in range(B_in.ncols):
        R.add(_as_row(B_in.column(j), F.zero))
    rep_pivots = []
    for v in kernel_basis(B_out):
        piv, _, _, _ = R.add(_as_row(v, F.zero))
        if piv is not None:
            rep_pivots.append(piv)
    # pivot rows are kept in RREF, so read them back after all insertions
    return [_as_vector(R.pivots[c], n, F.zero) for c in rep_pivots]


def determinant(field: Field, dense: Sequence[Sequence]) -> object:
    """Determinant of a square dense matrix by Gaussian elimination."""
    n = len(dense)
    a = [list(r) for r in dense]
    sub, mul, zero = field.sub, field.mul, field.zero
    det = field.one
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != zero:
                piv = r
                break
        if piv is None:
            return zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = field.neg(det)
        p = a[col][col]
        det = mul(det, p)
        inv = field.inv(p)
        prow = a[col]
        for r in range(col + 1, n):
            f = a[r][col]
            if f != zero:
                f = mul(f, inv)
                row = a[r]
                for j in range(col + 1, n):
                    if prow[j] != zero:
                        row[j] = sub(row[j], mul(f, prow[j]))
    return det


def dense_rank(field: Field, dense: Sequence[Sequence]) -> int:
    """Rank of a small dense matrix (rows are copied, input untouched)."""
    a = [list(r) for r in dense]
    if not a:
        return 0
    sub, mul, zero = field.sub, field.mul, field.zero
    ncols = len(a[0])
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(a)):
            if a[i][col] != zero:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        inv = field.inv(prow[col])
        for i in range(r + 1, len(a)):
            f = a[i][col]
            if f != zero:
                f = mul(f, inv)
                row = a[i]
                for j in range(col + 1, ncols):
                    if prow[j] != zero:
                        row[j] = sub(row[j], mul(f, prow[j]))
        r += 1
        if r == len(a):
            break
    return r
