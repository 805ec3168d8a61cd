"""Exact field arithmetic and truncated power series.

Engines work on raw values (``Fraction`` for the rationals, ``int`` residues
for prime fields) through a :class:`FieldSpec`; :class:`Scalar` wraps a raw
value together with its field for the public API.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class FieldError(ArithmeticError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, math.isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (characteristic 0) or a prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise FieldError(f"characteristic {self.characteristic} is not 0 or a prime")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime_field"

    @property
    def name(self) -> str:
        return "q" if self.characteristic == 0 else f"f{self.characteristic}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().lower()
        if t in ("q", "qq", "rationals", "0"):
            return cls(0)
        if t.startswith("f") and t[1:].isdigit():
            return cls(int(t[1:]))
        if t.isdigit():
            return cls(int(t))
        raise FieldError(f"unknown field {text!r}")

    # raw-value operations, used in the inner loops of the engines

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def coerce(self, x):
        """Map an int or Fraction into the field."""
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise FieldError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def fmt(self, a) -> str:
        if self.characteristic == 0:
            a = Fraction(a)
            return f"{a.numerator}/{a.denominator}"
        return f"{a} mod {self.characteristic}"

    def short(self, a) -> str:
        """Compact form used inside element expressions."""
        return str(a)


Q = FieldSpec(0)
F2 = FieldSpec(2)
F3 = FieldSpec(3)


@dataclass(frozen=True)
class Scalar:
    value: object
    field: FieldSpec = Q

    @classmethod
    def of(cls, x, field: FieldSpec = Q) -> "Scalar":
        return cls(field.coerce(x), field)

    def _check(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            return Scalar.of(other, self.field)
        if other.field != self.field:
            raise FieldError(f"mixed fields {self.field.name} and {other.field.name}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.field.add(self.value, other.value), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Scalar(self.field.sub(self.value, other.value), self.field)

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.field.mul(self.value, other.value), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def inv(self) -> "Scalar":
        return Scalar(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inv()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field.name} and {other.field.name}")
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return self.field.fmt(self.value)


def parse_scalar(text: str, field: FieldSpec = Q):
    """Parse ``p/q``, an integer, or ``r mod p`` into a raw field value."""
    t = text.strip()
    if " mod " in t:
        r, p = t.split(" mod ")
        if int(p) != field.characteristic:
            raise FieldError(f"scalar {t!r} does not live in {field.name}")
        return field.coerce(int(r))
    return field.coerce(Fraction(t))


class TruncatedSeries:
    """Ordinary coefficients c_0..c_N of a power series modulo t^(N+1)."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable, field: FieldSpec = Q, order: int | None = None):
        cs = [field.coerce(c) if not isinstance(c, Scalar) else c.value for c in coeffs]
        if order is not None:
            cs = (cs + [field.zero] * (order + 1))[: order + 1]
        self.coeffs = tuple(cs)
        self.field = field

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_dims(cls, dims: Sequence[int], field: FieldSpec = Q) -> "TruncatedSeries":
        """EGF with dims[k] = dim P(k+1): coefficient of t^n is dims/n!."""
        cs = [Fraction(0)] + [Fraction(d, math.factorial(n)) for n, d in enumerate(dims, 1)]
        return cls(cs, field)

    def to_dims(self) -> list[int]:
        out = []
        for n, c in enumerate(self.coeffs[1:], 1):
            v = Fraction(c) * math.factorial(n)
            if self.field.characteristic == 0 and v.denominator != 1:
                raise FieldError(f"coefficient of t^{n} is not an EGF dimension")
            out.append(int(v))
        return out

    def truncate(self, n: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, self.field, n)

    def _same(self, other: "TruncatedSeries"):
        if other.field != self.field:
            raise FieldError("mixed fields in series arithmetic")
        return min(self.order, other.order)

    def __add__(self, other):
        n = self._same(other)
        f = self.field
        return TruncatedSeries([f.add(a, b) for a, b in zip(self.coeffs[: n + 1], other.coeffs)], f)

    def __sub__(self, other):
        n = self._same(other)
        f = self.field
        return TruncatedSeries([f.sub(a, b) for a, b in zip(self.coeffs[: n + 1], other.coeffs)], f)

    def __neg__(self):
        return TruncatedSeries([self.field.neg(a) for a in self.coeffs], self.field)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = self.field.coerce(other)
            return TruncatedSeries([self.field.mul(c, a) for a in self.coeffs], self.field)
        n = self._same(other)
        f = self.field
        out = [f.zero] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return TruncatedSeries(out, f)

    __rmul__ = __mul__

    def twist(self) -> "TruncatedSeries":
        """-f(-t), the substitution used by Koszul series inversion."""
        f = self.field
        return TruncatedSeries([a if k % 2 else f.neg(a) for k, a in enumerate(self.coeffs)], f)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.field))

    def __repr__(self):
        return "TruncatedSeries(" + ", ".join(self.field.short(c) for c in self.coeffs) + ")"

    def __str__(self):
        try:
            return "[" + ", ".join(str(d) for d in self.to_dims()) + "]"
        except FieldError:
            return repr(self)


def series_compose(f: TruncatedSeries, g: TruncatedSeries, n: int | None = None) -> TruncatedSeries:
    """Coefficients of f(g(t)) up to t^n, by Horner's scheme."""
    if f.field != g.field:
        raise FieldError("mixed fields in series composition")
    if g.coeffs and g.coeffs[0] != 0:
        raise FieldError("inner series has a nonzero constant term")
    if n is None:
        n = min(f.order, g.order)
    if f.order < n or g.order < n:
        raise FieldError(f"series truncated below order {n}")
    g = g.truncate(n)
    acc = TruncatedSeries([f.coeffs[n]], f.field, n)
    for k in range(n - 1, -1, -1):
        acc = acc * g
        acc = TruncatedSeries([f.field.add(acc.coeffs[0], f.coeffs[k])] + list(acc.coeffs[1:]), f.field)
    return acc


def identity_series(n: int, field: FieldSpec = Q) -> TruncatedSeries:
    return TruncatedSeries([0, 1], field, n)


def log_series(coeff_of_t: Fraction, n: int, field: FieldSpec = Q) -> TruncatedSeries:
    """-log(1 - a t) = sum a^k t^k / k."""
    a = Fraction(coeff_of_t)
    return TruncatedSeries([0] + [a ** k / k for k in range(1, n + 1)], field)
