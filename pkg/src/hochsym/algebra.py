"""Finite-dimensional unital algebras given by structure constants.

``e_i e_j = sum_k c[i][j][k] e_k``.  Basis labels are free-form strings; all
tensors are indexed positionally.  Coordinate vectors are plain lists of field
elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .fields import Field
from .linalg import Matrix, RowReducer, kernel_basis, solve_affine, span_basis
from .pencil import GridEvidence, find_nonsingular

Sparse = tuple  # tuple of (index, value) pairs with nonzero values


def _sparse(field: Field, vec: Mapping[int, object] | Sequence) -> Sparse:
    items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
    zero = field.zero
    return tuple(sorted((k, field(v)) for k, v in items if field(v) != zero))


def _dense(field: Field, sparse: Sparse, n: int) -> list:
    out = [field.zero] * n
    for k, v in sparse:
        out[k] = v
    return out


@dataclass(frozen=True, eq=False)
class Algebra:
    field: Field
    labels: tuple[str, ...]
    table: tuple  # table[i][j] is the Sparse product e_i e_j
    unit: tuple

    @classmethod
    def from_products(
        cls,
        field: Field,
        labels: Sequence[str],
        products: Mapping[tuple[int, int], Mapping[int, object] | Sequence],
        unit: Sequence | Mapping[int, object],
    ) -> "Algebra":
        """Build from ``{(i, j): product}``; unlisted products are zero."""
        n = len(labels)
        if len(set(labels)) != n:
            raise ValueError("basis labels must be distinct")
        table = [[() for _ in range(n)] for _ in range(n)]
        for (i, j), vec in products.items():
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"product index {(i, j)} out of range")
            table[i][j] = _sparse(field, vec)
        for i in range(n):
            for j in range(n):
                if any(not 0 <= k < n for k, _ in table[i][j]):
                    raise IndexError(f"product e_{i} e_{j} leaves the basis")
        if isinstance(unit, Mapping):
            unit = _dense(field, _sparse(field, unit), n)
        if len(unit) != n:
            raise ValueError("unit has the wrong length")
        return cls(field, tuple(labels), tuple(tuple(r) for r in table), tuple(field(u) for u in unit))

    @classmethod
    def from_tensor(cls, field: Field, labels: Sequence[str], c, unit: Sequence) -> "Algebra":
        """Build from a dense tensor ``c[i][j][k]``."""
        n = len(labels)
        products = {(i, j): c[i][j] for i in range(n) for j in range(n)}
        return cls.from_products(field, labels, products, unit)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def constant(self, i: int, j: int, k: int):
        for kk, v in self.table[i][j]:
            if kk == k:
                return v
        return self.field.zero

    def tensor(self) -> list:
        """Dense structure constants ``c[i][j][k]``."""
        n = self.dim
        return [[_dense(self.field, self.table[i][j], n) for j in range(n)] for i in range(n)]

    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def left_matrix(self, c: Sequence) -> Matrix:
        """Matrix of x -> c x."""
        return Matrix.from_columns(self.field, self.dim, [_as_dict(self.field, multiply(self, c, self.basis_vector(j))) for j in range(self.dim)])

    def right_matrix(self, c: Sequence) -> Matrix:
        """Matrix of x -> x c."""
        return Matrix.from_columns(self.field, self.dim, [_as_dict(self.field, multiply(self, self.basis_vector(j), c)) for j in range(self.dim)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.field, self.labels, self.table, self.unit) == (other.field, other.labels, other.table, other.unit)

    def __hash__(self) -> int:
        return hash((self.labels, self.table, self.unit))

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, field={self.field}, basis={list(self.labels)})"


def _as_dict(field: Field, vec: Sequence) -> dict:
    return {i: v for i, v in enumerate(vec) if v != field.zero}


def multiply(A: Algebra, a: Sequence, b: Sequence) -> list:
    if len(a) != A.dim or len(b) != A.dim:
        raise ValueError(f"coordinate vectors must have length {A.dim}")
    F = A.field
    add, mul, zero = F.add, F.mul, F.zero
    out = [zero] * A.dim
    for i, x in enumerate(a):
        if x == zero:
            continue
        row = A.table[i]
        for j, y in enumerate(b):
            if y == zero:
                continue
            xy = mul(x, y)
            for k, c in row[j]:
                out[k] = add(out[k], mul(xy, c))
    return out


def _basis_product(A: Algebra, i: int, j: int) -> list:
    return _dense(A.field, A.table[i][j], A.dim)


@dataclass(frozen=True)
class AlgebraViolation:
    kind: str  # "associativity" or "unit"
    indices: tuple[int, ...]
    labels: tuple[str, ...]

    def __str__(self) -> str:
        names = ", ".join(self.labels)
        if self.kind == "associativity":
            return f"associativity fails on ({names})"
        return f"unit axiom fails on {names}"


def validate_algebra(A: Algebra) -> AlgebraViolation | None:
    """None if associative and unital, else the first violated basis triple/element."""
    n = A.dim
    prods = [[_basis_product(A, i, j) for j in range(n)] for i in range(n)]
    right = [A.right_matrix(A.basis_vector(k)) for k in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = right[k].apply(prods[i][j])
                rhs = multiply(A, A.basis_vector(i), prods[j][k])
                if lhs != rhs:
                    return AlgebraViolation("associativity", (i, j, k), (A.labels[i], A.labels[j], A.labels[k]))
    unit = list(A.unit)
    for i in range(n):
        e = A.basis_vector(i)
        if multiply(A, unit, e) != e or multiply(A, e, unit) != e:
            return AlgebraViolation("unit", (i,), (A.labels[i],))
    return None


def find_unit(A_field: Field, labels: Sequence[str], products) -> list | None:
    """Solve for a two-sided unit of a multiplication table, or None."""
    tmp = Algebra.from_products(A_field, labels, products, [A_field.zero] * len(labels))
    n = tmp.dim
    F = A_field
    # unknown u: u e_j = e_j and e_j u = e_j for all j
    rows, target = [], []
    for j in range(n):
        for k in range(n):
            rows.append({i: tmp.constant(i, j, k) for i in range(n)})
            target.append(F.one if j == k else F.zero)
            rows.append({i: tmp.constant(j, i, k) for i in range(n)})
            target.append(F.one if j == k else F.zero)
    sol = solve_affine(Matrix(F, len(rows), n, rows), target)
    return sol.particular if sol.feasible else None


def center_basis(A: Algebra) -> list[list]:
    """Basis of Z(A) as the kernel of c -> (c e_i - e_i c)_i."""
    n = A.dim
    F = A.field
    rows = []
    for i in range(n):
        for k in range(n):
            rows.append({j: F.sub(A.constant(j, i, k), A.constant(i, j, k)) for j in range(n)})
    return kernel_basis(Matrix(F, len(rows), n, rows))


def is_central(A: Algebra, c: Sequence) -> bool:
    return all(multiply(A, c, A.basis_vector(i)) == multiply(A, A.basis_vector(i), c) for i in range(A.dim))


def try_invert(A: Algebra, c: Sequence) -> list | None:
    """Two-sided inverse of ``c``, or None if ``c`` is not a unit."""
    L = A.left_matrix(c)
    sol = solve_affine(L, list(A.unit))
    if not sol.feasible:
        return None
    x = sol.particular
    if multiply(A, x, c) != list(A.unit):
        # a right inverse in a finite-dimensional algebra is two-sided
        raise ArithmeticError("left multiplication is onto but x c != 1")
    return x


def commutator_subspace(A: Algebra) -> list[list]:
    """RREF basis of span{e_i e_j - e_j e_i}."""
    n = A.dim
    F = A.field
    vecs = []
    for i in range(n):
        for j in range(i + 1, n):
            vecs.append([F.sub(x, y) for x, y in zip(_basis_product(A, i, j), _basis_product(A, j, i))])
    return span_basis(F, vecs, n)


@dataclass(frozen=True, eq=False)
class Bimodule:
    """``left[a][m]`` is the Sparse vector e_a . m, ``right[m][a]`` is m . e_a."""

    field: Field
    labels: tuple[str, ...]
    left: tuple
    right: tuple

    @property
    def dim(self) -> int:
        return len(self.labels)

    def left_vector(self, a: int, m: int) -> list:
        return _dense(self.field, self.left[a][m], self.dim)

    def right_vector(self, m: int, a: int) -> list:
        return _dense(self.field, self.right[m][a], self.dim)

    def act_left(self, A: Algebra, a: Sequence, m: Sequence) -> list:
        F = self.field
        out = [F.zero] * self.dim
        for i, x in enumerate(a):
            if x == F.zero:
                continue
            for s, y in enumerate(m):
                if y == F.zero:
                    continue
                xy = F.mul(x, y)
                for t, v in self.left[i][s]:
                    out[t] = F.add(out[t], F.mul(xy, v))
        return out

    def act_right(self, A: Algebra, m: Sequence, a: Sequence) -> list:
        F = self.field
        out = [F.zero] * self.dim
        for s, y in enumerate(m):
            if y == F.zero:
                continue
            for i, x in enumerate(a):
                if x == F.zero:
                    continue
                xy = F.mul(x, y)
                for t, v in self.right[s][i]:
                    out[t] = F.add(out[t], F.mul(xy, v))
        return out

    @classmethod
    def from_actions(cls, field: Field, labels: Sequence[str], algebra_dim: int, left: Mapping, right: Mapping) -> "Bimodule":
        """Build from ``{(a, m): vector}`` maps; unlisted actions are zero."""
        m = len(labels)
        L = [[() for _ in range(m)] for _ in range(algebra_dim)]
        R = [[() for _ in range(algebra_dim)] for _ in range(m)]
        for (a, s), vec in left.items():
            L[a][s] = _sparse(field, vec)
        for (s, a), vec in right.items():
            R[s][a] = _sparse(field, vec)
        return cls(field, tuple(labels), tuple(map(tuple, L)), tuple(map(tuple, R)))


def regular_bimodule(A: Algebra) -> Bimodule:
    """A as a bimodule over itself."""
    n = A.dim
    left = tuple(tuple(A.table[a][m] for m in range(n)) for a in range(n))
    right = tuple(tuple(A.table[m][a] for a in range(n)) for m in range(n))
    return Bimodule(A.field, A.labels, left, right)


def dual_bimodule(A: Algebra) -> Bimodule:
    """A* with (c f a)(b) = f(a b c), on the dual basis e_i*."""
    n = A.dim
    F = A.field
    # (e_c . e_i*)(e_b) = e_i*(e_b e_c);  (e_i* . e_a)(e_b) = e_i*(e_a e_b)
    left = tuple(
        tuple(_sparse(F, {b: A.constant(b, c, i) for b in range(n)}) for i in range(n)) for c in range(n)
    )
    right = tuple(
        tuple(_sparse(F, {b: A.constant(a, b, i) for b in range(n)}) for a in range(n)) for i in range(n)
    )
    return Bimodule(F, tuple(f"{l}*" for l in A.labels), left, right)


@dataclass(frozen=True)
class BimoduleViolation:
    kind: str
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"bimodule {self.kind} axiom fails on {self.indices}"


def validate_bimodule(A: Algebra, M: Bimodule) -> BimoduleViolation | None:
    """Unital, associative, commuting left/right actions, checked on basis triples."""
    n, m = A.dim, M.dim
    e = A.basis_vector
    u = list(A.unit)
    for s in range(m):
        ms = [M.field.zero] * m
        ms[s] = M.field.one
        if M.act_left(A, u, ms) != ms or M.act_right(A, ms, u) != ms:
            return BimoduleViolation("unit", (s,))
    for a in range(n):
        for b in range(n):
            ab = _basis_product(A, a, b)
            for s in range(m):
                ms = [M.field.zero] * m
                ms[s] = M.field.one
                if M.act_left(A, ab, ms) != M.act_left(A, e(a), M.act_left(A, e(b), ms)):
                    return BimoduleViolation("left associativity", (a, b, s))
                if M.act_right(A, ms, ab) != M.act_right(A, M.act_right(A, ms, e(a)), e(b)):
                    return BimoduleViolation("right associativity", (s, a, b))
                if M.act_right(A, M.act_left(A, e(a), ms), e(b)) != M.act_left(A, e(a), M.act_right(A, ms, e(b))):
                    return BimoduleViolation("compatibility", (a, s, b))
    return None


class NotACocycleError(ValueError):
    def __init__(self, triple, labels=None):
        self.triple = triple
        self.labels = labels
        where = labels if labels is not None else triple
        super().__init__(f"not a Hochschild 2-cocycle: condition fails on {where}")


class NoUnitError(ValueError):
    pass


def hochschild_extension(A: Algebra, M: Bimodule, alpha) -> Algebra:
    """T(A, M, alpha) = A + M with (a,m)(a',m') = (aa', am' + ma' + alpha(a, a')).

    ``alpha`` is a degree-2 :class:`~hochsym.complexes.CochainVector` with
    values in ``M``.  The unit (1_A, u) is solved for rather than assumed, so
    non-normalized cocycles are fine.
    """
    from .complexes import check_cocycle2

    bad = check_cocycle2(A, M, alpha)
    if bad is not None:
        raise NotACocycleError(bad, tuple(A.labels[i] for i in bad))
    F = A.field
    n, m = A.dim, M.dim
    products: dict = {}
    for i in range(n):
        for j in range(n):
            vec = dict(A.table[i][j])
            for s, v in alpha.value(i, j):
                vec[n + s] = v
            products[(i, j)] = vec
        for s in range(m):
            products[(i, n + s)] = {n + t: v for t, v in M.left[i][s]}
            products[(n + s, i)] = {n + t: v for t, v in M.right[s][i]}

    # unit (1_A, u):  u . a + alpha(1, a) = 0  and  a . u + alpha(a, 1) = 0
    one = list(A.unit)
    rows, target = [], []
    for a in range(n):
        left_val = [F.zero] * m
        right_val = [F.zero] * m
        for i, x in enumerate(one):
            if x == F.zero:
                continue
            for t, v in alpha.value(i, a):
                left_val[t] = F.add(left_val[t], F.mul(x, v))
            for t, v in alpha.value(a, i):
                right_val[t] = F.add(right_val[t], F.mul(x, v))
        for t in range(m):
            rows.append({s: M.right_vector(s, a)[t] for s in range(m)})
            target.append(F.neg(left_val[t]))
            rows.append({s: M.left_vector(a, s)[t] for s in range(m)})
            target.append(F.neg(right_val[t]))
    sol = solve_affine(Matrix(F, len(rows), m, rows), target)
    if not sol.feasible:
        raise NoUnitError("the extension has no unit of the form (1_A, u)")
    unit = one + sol.particular
    return Algebra.from_products(F, tuple(A.labels) + tuple(M.labels), products, unit)


@dataclass
class FrobeniusTest:
    """Outcome of :func:`is_symmetric_algebra`.

    ``trace_space`` spans the forms vanishing on [B, B]; ``form`` is a
    symmetrizing form when one exists, otherwise ``evidence`` records the
    exhausted determinant grid.
    """

    symmetric: bool
    form: list | None
    trace_space: list
    evidence: GridEvidence | None = None

    @property
    def max_gram_rank(self) -> int | None:
        return None if self.evidence is None else self.evidence.max_rank


def gram_matrix(B: Algebra, form: Sequence) -> list[list]:
    """G[i][j] = form(e_i e_j)."""
    F = B.field
    n = B.dim
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = F.zero
            for k, v in B.table[i][j]:
                acc = F.add(acc, F.mul(form[k], v))
            row.append(acc)
        out.append(row)
    return out


def trace_forms(B: Algebra) -> list[list]:
    """Basis of {lambda in B* : lambda([B, B]) = 0}."""
    n = B.dim
    F = B.field
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            rows.append({k: F.sub(B.constant(i, j, k), B.constant(j, i, k)) for k in range(n)})
    return kernel_basis(Matrix(F, len(rows), n, rows))


def is_symmetrizing_form(B: Algebra, form: Sequence) -> bool:
    """form kills every commutator and has a nonsingular Gram matrix."""
    from .linalg import dense_rank

    F = B.field
    for i in range(B.dim):
        for j in range(i + 1, B.dim):
            acc = F.zero
            for k, v in B.table[i][j]:
                acc = F.add(acc, F.mul(form[k], v))
            for k, v in B.table[j][i]:
                acc = F.sub(acc, F.mul(form[k], v))
            if acc != F.zero:
                return False
    return dense_rank(F, gram_matrix(B, form)) == B.dim


def is_symmetric_algebra(B: Algebra, *, random_tries: int = 6) -> FrobeniusTest:
    """Decide whether B carries a nondegenerate symmetric associative form.

    Such a form lambda gives the bimodule isomorphism B -> B*, x -> lambda(x -).
    """
    F = B.field
    space = trace_forms(B)
    pencil = [gram_matrix(B, lam) for lam in space]
    found = find_nonsingular(F, pencil, B.dim, random_tries=random_tries, extension_ok=True)
    if not found.found:
        return FrobeniusTest(False, None, space, found.evidence)
    form = [F.zero] * B.dim
    for t, lam in zip(found.point, space):
        for k, v in enumerate(lam):
            form[k] = F.add(form[k], F.mul(t, v))
    if not is_symmetrizing_form(B, form):
        raise ArithmeticError("grid witness failed verification")
    return FrobeniusTest(True, form, space)


def form_to_bimodule_iso(B: Algebra, form: Sequence) -> Matrix:
    """Matrix of x -> form(x -) : B -> B*, column x, row y = form(x y)."""
    G = gram_matrix(B, form)
    # column x holds the functional y -> form(x y), i.e. G[x][y] at row y
    return Matrix.from_dense(B.field, [[G[x][y] for x in range(B.dim)] for y in range(B.dim)])


def is_bimodule_morphism_to_dual(B: Algebra, phi: Matrix) -> tuple[int, int, int] | None:
    """Check phi(x' x x'') = x' . phi(x) . x'' on basis triples for phi : B -> B*.

    The bimodule structure on B* is (x' F x'')(y) = F(x'' y x').  Returns the
    first failing triple or None.
    """
    n = B.dim
    F = B.field
    e = B.basis_vector
    cols = [phi.column(x) for x in range(n)]  # cols[x][y] = phi(e_x)(e_y)

    def phi_of(vec):
        out = [F.zero] * n
        for x, cx in enumerate(vec):
            if cx != F.zero:
                for y in range(n):
                    out[y] = F.add(out[y], F.mul(cx, cols[x][y]))
        return out

    def evaluate(functional, vec):
        acc = F.zero
        for a, b in zip(functional, vec):
            if a != F.zero and b != F.zero:
                acc = F.add(acc, F.mul(a, b))
        return acc

    for xp in range(n):
        for x in range(n):
            left = multiply(B, e(xp), e(x))
            for xpp in range(n):
                lhs = phi_of(multiply(B, left, e(xpp)))
                phix = cols[x]
                rhs = [evaluate(phix, multiply(B, multiply(B, e(xpp), e(y)), e(xp))) for y in range(n)]
                if lhs != rhs:
                    return (xp, x, xpp)
    return None
