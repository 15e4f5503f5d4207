"""Small algebras used as test fixtures and in the CLI examples."""

from __future__ import annotations

from .algebra import Algebra
from .fields import Field, QQ


def ground_field_algebra(F: Field = QQ) -> Algebra:
    return Algebra.from_products(F, ["1"], {(0, 0): {0: 1}}, [1])


def truncated_polynomials(F: Field = QQ, m: int = 2) -> Algebra:
    """k[x]/(x^m) on the basis 1, x, x2, ..."""
    labels = ["1", "x"] + [f"x{i}" for i in range(2, m)]
    labels = labels[:m]
    products = {(i, j): {i + j: 1} for i in range(m) for j in range(m) if i + j < m}
    unit = [1] + [0] * (m - 1)
    return Algebra.from_products(F, labels, products, unit)


def dual_numbers(F: Field = QQ) -> Algebra:
    return truncated_polynomials(F, 2)


def matrix_algebra(F: Field = QQ, n: int = 2) -> Algebra:
    """Full matrix algebra on matrix units E_ij (row-major order)."""
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    products = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                products[(i * n + j, j * n + l)] = {i * n + l: 1}
    unit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return Algebra.from_products(F, labels, products, unit)


def upper_triangular(F: Field = QQ, n: int = 2) -> Algebra:
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    labels = [f"E{i + 1}{j + 1}" for i, j in pairs]
    pos = {p: k for k, p in enumerate(pairs)}
    products = {}
    for (i, j) in pairs:
        for (jj, l) in pairs:
            if j == jj:
                products[(pos[(i, j)], pos[(jj, l)])] = {pos[(i, l)]: 1}
    unit = [1 if i == j else 0 for i, j in pairs]
    return Algebra.from_products(F, labels, products, unit)


def path_algebra_A2(F: Field = QQ) -> Algebra:
    """k(1 -a-> 2) with paths composed left to right: e1 a = a = a e2."""
    labels = ["e1", "e2", "a"]
    products = {(0, 0): {0: 1}, (1, 1): {1: 1}, (0, 2): {2: 1}, (2, 1): {2: 1}}
    return Algebra.from_products(F, labels, products, [1, 1, 0])


def exterior_like(F: Field = QQ) -> Algebra:
    """k[x, y]/(x^2, y^2) on the basis 1, x, y, xy."""
    labels = ["1", "x", "y", "xy"]
    products = {
        (0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 1},
        (1, 0): {1: 1}, (2, 0): {2: 1}, (3, 0): {3: 1},
        (1, 2): {3: 1}, (2, 1): {3: 1},
    }
    return Algebra.from_products(F, labels, products, [1, 0, 0, 0])


def standard_corpus(F: Field = QQ) -> dict[str, Algebra]:
    """The fixed list of algebras the acceptance suite sweeps over."""
    return {
        "k": ground_field_algebra(F),
        "dual_numbers": dual_numbers(F),
        "truncated_x3": truncated_polynomials(F, 3),
        "kA2": path_algebra_A2(F),
        "upper_triangular_2": upper_triangular(F, 2),
        "matrix_2": matrix_algebra(F, 2),
        "kxy_squares": exterior_like(F),
    }
