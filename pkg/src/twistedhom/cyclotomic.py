"""Exact arithmetic in the cyclotomic fields Q(zeta_l), l prime.

An element is stored as its coefficient vector ``(a_0, ..., a_{l-2})`` in
the basis ``1, z, ..., z^{l-2}``; this is the canonical remainder modulo
``Phi_l(z) = 1 + z + ... + z^{l-1}``, so equality is equality of vectors.
For ``l = 2`` the field is Q and ``z = -1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import InvalidInputError, PreconditionError

Scalar = Union[int, Fraction]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_modulus(ell: int) -> None:
    if not isinstance(ell, int) or not is_prime(ell):
        raise InvalidInputError(f"cyclotomic modulus must be prime, got {ell!r}")


def _reduce(ell: int, poly: Sequence[Scalar]) -> tuple[Fraction, ...]:
    """Reduce an arbitrary-length coefficient list modulo Phi_ell."""
    folded = [Fraction(0)] * ell
    for i, c in enumerate(poly):
        if c:
            folded[i % ell] += c
    top = folded[ell - 1]
    if top:
        return tuple(c - top for c in folded[: ell - 1])
    return tuple(folded[: ell - 1])


class CyclotomicNumber:
    """An immutable element of Q(zeta_l)."""

    __slots__ = ("ell", "coeffs", "_hash")

    def __init__(self, ell: int, coeffs: Iterable[Scalar] = ()):
        _check_modulus(ell)
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "coeffs", _reduce(ell, list(coeffs)))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, ell: int, coeffs: tuple[Fraction, ...]) -> "CyclotomicNumber":
        # caller guarantees a prime modulus and an already canonical vector
        obj = object.__new__(cls)
        object.__setattr__(obj, "ell", ell)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, ell: int) -> "CyclotomicNumber":
        _check_modulus(ell)
        return cls._raw(ell, (Fraction(0),) * (ell - 1))

    @classmethod
    def one(cls, ell: int) -> "CyclotomicNumber":
        return cls.from_scalar(ell, 1)

    @classmethod
    def from_scalar(cls, ell: int, value: Scalar) -> "CyclotomicNumber":
        _check_modulus(ell)
        return cls._raw(ell, (Fraction(value),) + (Fraction(0),) * (ell - 2))

    @classmethod
    def zeta_power(cls, ell: int, k: int) -> "CyclotomicNumber":
        _check_modulus(ell)
        poly = [0] * ell
        poly[k % ell] = 1
        return cls(ell, poly)

    @classmethod
    def from_int_poly(cls, ell: int, poly: Sequence[int]) -> "CyclotomicNumber":
        """Fast path for an integer polynomial already folded mod z^ell - 1."""
        top = poly[ell - 1] if len(poly) >= ell else 0
        return cls._raw(ell, tuple(Fraction(poly[i] - top) if i < len(poly) else Fraction(-top)
                                   for i in range(ell - 1)))

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.ell != self.ell:
                raise InvalidInputError(
                    f"modulus mismatch: Q(zeta_{self.ell}) vs Q(zeta_{other.ell})")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_scalar(self.ell, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber._raw(
            self.ell, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.ell, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber._raw(
            self.ell, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ell = self.ell
        if ell == 2:
            return CyclotomicNumber._raw(2, (self.coeffs[0] * other.coeffs[0],))
        prod = [Fraction(0)] * ell
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[(i + j) % ell] += a * b
        top = prod[ell - 1]
        return CyclotomicNumber._raw(ell, tuple(c - top for c in prod[: ell - 1]))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in Q(zeta_l)")
        ell = self.ell
        phi = [Fraction(1)] * ell
        s, _ = _poly_egcd_inverse(list(self.coeffs), phi)
        return CyclotomicNumber(ell, s)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber.one(self.ell)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self.ell == other.ell and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ell, self.coeffs)) if not self.is_rational() else hash(self.coeffs[0])
            object.__setattr__(self, "_hash", h)
        return h

    def common_denominator(self) -> int:
        d = 1
        for c in self.coeffs:
            d = d * c.denominator // _gcd(d, c.denominator)
        return d

    # text form --------------------------------------------------------------
    def __str__(self) -> str:
        return format_cyclotomic(self)

    def __repr__(self) -> str:
        return format_cyclotomic(self)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        _trim(a)
    return q, a


def _poly_sub_mul(a: list, q: list, b: list) -> list:
    """a - q*b."""
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, x in enumerate(q):
        if x:
            for j, y in enumerate(b):
                out[i + j] -= x * y
    return _trim(out)


def _poly_egcd_inverse(a: list, m: list) -> tuple[list, list]:
    """Return (s, g) with s*a = g (mod m), g a nonzero constant, s normalized by g."""
    r0, r1 = _trim([Fraction(x) for x in m]), _trim([Fraction(x) for x in a])
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if not r1:
        raise ZeroDivisionError("element is not invertible modulo Phi")
    g = r1[0]
    return [c / g for c in s1], [Fraction(1)]


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_l^k as a group element of the cyclic group of order l."""

    ell: int
    k: int

    def __post_init__(self):
        _check_modulus(self.ell)
        object.__setattr__(self, "k", self.k % self.ell)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if self.ell != other.ell:
            raise InvalidInputError("modulus mismatch")
        return RootOfUnity(self.ell, self.k + other.k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.ell, -self.k)

    def is_identity(self) -> bool:
        return self.k == 0

    def to_cyclotomic(self) -> CyclotomicNumber:
        return CyclotomicNumber.zeta_power(self.ell, self.k)


def cyc_add(a: CyclotomicNumber, b: CyclotomicNumber) -> CyclotomicNumber:
    return a + b


def cyc_mul(a: CyclotomicNumber, b: CyclotomicNumber) -> CyclotomicNumber:
    return a * b


def cyc_inv(a: CyclotomicNumber) -> CyclotomicNumber:
    return a.inverse()


def unit_one_minus(g: RootOfUnity) -> CyclotomicNumber:
    """Return (1 - g)^{-1}; requires g != 1, where 1 - g is not a unit."""
    if g.is_identity():
        raise PreconditionError("1 - g is zero for g = 1, hence not a unit")
    return (CyclotomicNumber.one(g.ell) - g.to_cyclotomic()).inverse()


# ---------------------------------------------------------------------------
# textual form: cyc(l=3; 1/2 + 2*z^1)

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_cyclotomic(a: CyclotomicNumber) -> str:
    terms = []
    for k, c in enumerate(a.coeffs):
        if not c:
            continue
        terms.append(_fmt_coeff(c) if k == 0 else f"{_fmt_coeff(c)}*z^{k}")
    return f"cyc(l={a.ell}; {' + '.join(terms) if terms else '0'})"


_OUTER = re.compile(r"^\s*cyc\(\s*l\s*=\s*(\d+)\s*;(.*)\)\s*$")
_TERM = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?(?:\*?(z)(?:\^(\d+))?)?$")


def parse_cyclotomic(text: str) -> CyclotomicNumber:
    m = _OUTER.match(text)
    if not m:
        raise InvalidInputError(f"not a cyclotomic literal: {text!r}")
    ell = int(m.group(1))
    _check_modulus(ell)
    body = m.group(2).replace(" ", "")
    poly: list[Fraction] = [Fraction(0)] * ell
    if not body:
        raise InvalidInputError(f"empty cyclotomic literal: {text!r}")
    # split on '+' that separates terms; a leading sign stays with its term
    for raw in re.split(r"\+(?=[^+])", body):
        if not raw:
            raise InvalidInputError(f"malformed term in {text!r}")
        tm = _TERM.match(raw)
        if not tm or (tm.group(2) is None and tm.group(3) is None):
            raise InvalidInputError(f"malformed term {raw!r} in {text!r}")
        coeff = Fraction(tm.group(2)) if tm.group(2) is not None else Fraction(1)
        if tm.group(1) == "-":
            coeff = -coeff
        k = 0 if tm.group(3) is None else int(tm.group(4) or 1)
        poly[k % ell] += coeff
    return CyclotomicNumber(ell, poly)
