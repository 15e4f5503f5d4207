"""Exact ground fields.

Elements are stored as plain Python values so that the elimination loops stay
cheap: ``Fraction`` for the rationals, ``int`` in ``range(p)`` for a prime
field, and a tuple of ``k`` ints (low degree first) for ``GF(p^k)``.  All
arithmetic goes through the field object; two matrices may only be combined
when their fields compare equal.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Any


class FieldMismatchError(ValueError):
    """Raised when values from two different fields are combined."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def parse_scalar(text: str) -> Fraction:
    """Parse ``"3"``, ``"-2"`` or ``"p/q"`` into an exact rational."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad scalar {text!r}") from exc
    return value


class Field:
    zero: Any
    one: Any
    characteristic: int
    size: int | None  # None for infinite fields
    name: str

    def __call__(self, value: Any) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements_by_index(self, count: int) -> list:
        """The first ``count`` distinct elements in a fixed order."""
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def __repr__(self) -> str:
        return self.name


class Rationals(Field):
    characteristic = 0
    size = None
    name = "QQ"

    def __init__(self) -> None:
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, value: Any) -> Fraction:
        if isinstance(value, str):
            return parse_scalar(value)
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def elements_by_index(self, count: int) -> list:
        return [Fraction(i) for i in range(count)]

    def format(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("QQ")


class PrimeField(Field):
    def __init__(self, p: int) -> None:
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 2**31:
            raise ValueError("prime fields are limited to p < 2^31")
        self.p = p
        self.characteristic = p
        self.size = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, value: Any) -> int:
        if isinstance(value, str):
            value = parse_scalar(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in {self.name}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def elements_by_index(self, count: int) -> list:
        if count > self.p:
            raise ValueError(f"{self.name} has only {self.p} elements")
        return list(range(count))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))


def _poly_mod_is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    # monic polynomial of degree k, coefficients low-first without the leading 1
    k = len(coeffs)
    full = list(coeffs) + [1]
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            divisor = list(low) + [1]
            rem = full[:]
            for shift in range(len(rem) - len(divisor), -1, -1):
                lead = rem[shift + deg]
                if lead:
                    for i, d in enumerate(divisor):
                        rem[shift + i] = (rem[shift + i] - lead * d) % p
            if not any(rem[:deg]):
                return False
    return True


class ExtensionField(Field):
    """GF(p^k) as polynomials over GF(p) modulo a fixed irreducible polynomial.

    The modulus is the lexicographically first monic irreducible polynomial of
    degree ``k`` (coefficients read low degree first), so the field is fully
    determined by ``(p, k)``.
    """

    def __init__(self, p: int, k: int) -> None:
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.k = k
        self.characteristic = p
        self.size = p**k
        self.name = f"GF({p}^{k})"
        self.base = PrimeField(p)
        if k == 1:
            self.modulus: tuple[int, ...] = (0,)
        else:
            for low in itertools.product(range(p), repeat=k):
                if low[0] and _poly_mod_is_irreducible(low, p):
                    self.modulus = low
                    break
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    def __call__(self, value: Any) -> tuple[int, ...]:
        if isinstance(value, tuple):
            if len(value) != self.k:
                raise FieldMismatchError(f"{value!r} is not an element of {self.name}")
            return tuple(v % self.p for v in value)
        return (self.base(value),) + (0,) * (self.k - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        mod = self.modulus
        for top in range(2 * k - 2, k - 1, -1):
            lead = prod[top] % p
            if lead:
                # x^k = -(modulus low part)
                for i, m in enumerate(mod):
                    prod[top - k + i] -= lead * m
        return tuple(c % p for c in prod[:k])

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        result = self.one
        base = a
        e = self.size - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements_by_index(self, count: int) -> list:
        if count > self.size:
            raise ValueError(f"{self.name} has only {self.size} elements")
        out = []
        for idx in range(count):
            digits = []
            for _ in range(self.k):
                digits.append(idx % self.p)
                idx //= self.p
            out.append(tuple(digits))
        return out

    def format(self, a) -> str:
        return "(" + ",".join(str(x) for x in a) + ")"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExtensionField) and (other.p, other.k) == (self.p, self.k)

    def __hash__(self) -> int:
        return hash(("GFext", self.p, self.k))


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str | int | None) -> Field:
    """``None``/``"QQ"``/``"rationals"`` give QQ; an int or ``"p"`` gives GF(p)."""
    if tag is None:
        return QQ
    if isinstance(tag, int):
        return GF(tag)
    t = tag.strip().lower()
    if t in ("qq", "q", "rationals", "rational"):
        return QQ
    if t.startswith("gf(") and t.endswith(")"):
        t = t[3:-1]
    if t.startswith("prime"):
        t = t[5:].strip()
    return GF(int(t))


def grid_field(field: Field, points_needed: int) -> Field:
    """A field containing ``field`` with at least ``points_needed`` elements."""
    if field.size is None or field.size >= points_needed:
        return field
    p = field.characteristic
    k = 1
    while p**k < points_needed:
        k += 1
    return ExtensionField(p, k)


def embed(source: Field, target: Field, value):
    """Map an element of a prime field into an extension of it."""
    if source == target:
        return value
    if isinstance(target, ExtensionField) and isinstance(source, PrimeField) and source.p == target.p:
        return (value,) + (0,) * (target.k - 1)
    raise FieldMismatchError(f"cannot embed {source} into {target}")
