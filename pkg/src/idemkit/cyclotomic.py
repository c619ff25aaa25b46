"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A :class:`CycNumber` stores its coordinates in the power basis
``1, zeta, ..., zeta^(phi(n)-1)``, always reduced modulo the n-th cyclotomic
polynomial.  Numbers with different conductors are combined in the field of
the least common multiple.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    assert not any(num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of zeta_n^k for k = 0 .. 2*phi(n)."""
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg else []
    for _ in range(max(n, 2 * deg)):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1] if deg else []
        for i in range(deg):
            cur[i] -= top * phi_poly[i]
    return tuple(rows)


def _reduce(n: int, coeffs: Sequence[Rational]) -> tuple[Fraction, ...]:
    deg = len(cyclotomic_polynomial(n)) - 1
    out = [Fraction(c) for c in coeffs[:deg]] + [Fraction(0)] * max(0, deg - len(coeffs))
    table = _power_table(n)
    for k in range(deg, len(coeffs)):
        c = coeffs[k]
        if c:
            row = table[k % n] if k >= len(table) else table[k]
            for i, r in enumerate(row):
                if r:
                    out[i] += c * r
    return tuple(out)


class CycNumber:
    """An element of Q(zeta_n)."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable[Rational]):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        self.conductor = conductor
        self.coeffs = _reduce(conductor, list(coeffs))

    @classmethod
    def _trusted(cls, conductor: int, coeffs: tuple[Fraction, ...]) -> "CycNumber":
        x = cls.__new__(cls)
        x.conductor = conductor
        x.coeffs = coeffs
        return x

    @classmethod
    def rational(cls, q: Rational, conductor: int = 1) -> "CycNumber":
        return cls(conductor, [q])

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> "CycNumber":
        """zeta_n ** k"""
        return cls._trusted(n, tuple(Fraction(c) for c in _power_table(n)[k % n]))

    @classmethod
    def from_exponents(cls, n: int, multiplicities: Sequence[int]) -> "CycNumber":
        """sum_k multiplicities[k] * zeta_n**k"""
        return cls(n, multiplicities)

    # -- coercion ---------------------------------------------------------

    def lift(self, n: int) -> "CycNumber":
        """The same number written in Q(zeta_n); n must be a multiple of the conductor."""
        if n == self.conductor:
            return self
        if n % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {n}")
        step = n // self.conductor
        spread = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            spread[k * step] = c
        return CycNumber(n, spread)

    @staticmethod
    def _coerce(a: "CycNumber | Rational", b: "CycNumber | Rational") -> tuple["CycNumber", "CycNumber"]:
        if not isinstance(a, CycNumber):
            a = CycNumber.rational(a, b.conductor if isinstance(b, CycNumber) else 1)
        if not isinstance(b, CycNumber):
            b = CycNumber.rational(b, a.conductor)
        if a.conductor != b.conductor:
            n = lcm(a.conductor, b.conductor)
            a, b = a.lift(n), b.lift(n)
        return a, b

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (CycNumber, int, Fraction)):
            return NotImplemented
        a, b = self._coerce(self, other)
        return CycNumber._trusted(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._trusted(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, (CycNumber, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber._trusted(self.conductor, tuple(x * other for x in self.coeffs))
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._coerce(self, other)
        prod: list[Fraction] = [Fraction(0)] * max(1, len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycNumber(a.conductor, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber._trusted(self.conductor, tuple(x / other for x in self.coeffs))
        return NotImplemented

    def __pow__(self, k: int) -> "CycNumber":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result: CycNumber = CycNumber.rational(1, self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> "CycNumber":
        """Apply zeta -> zeta**k (k coprime to the conductor)."""
        n = self.conductor
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        spread = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            spread[(i * k) % n] += c
        return CycNumber(n, spread)

    def conjugate(self) -> "CycNumber":
        return self.galois(-1)

    # -- queries ----------------------------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_algebraic_integer_coords(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._coerce(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        return hash(self.normalized_trace())

    def normalized_trace(self) -> Fraction:
        """Tr(x) / [Q(x-field) : Q]; independent of the conductor used to write x."""
        n = self.conductor
        total = Fraction(0)
        for k, c in enumerate(self.coeffs):
            if c:
                d = n // gcd(n, k)
                total += c * Fraction(_mobius(d), _totient(d))
        return total

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        return f"CycNumber({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                z = f"z{self.conductor}" + (f"^{k}" if k > 1 else "")
                terms.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _mobius(n: int) -> int:
    result, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            result = -result
        f += 1
    return -result if n > 1 else result


Scalar = Union[Fraction, CycNumber]


def simplify(v: "Scalar | int") -> Scalar:
    """Rational CycNumbers collapse to Fraction; ints become Fraction."""
    if isinstance(v, CycNumber):
        return v.to_fraction() if v.is_rational() else v
    return Fraction(v)


def coords(v: "Scalar | int", n: int) -> tuple[Fraction, ...]:
    """Power-basis coordinates of v in Q(zeta_n)."""
    x = v.lift(n) if isinstance(v, CycNumber) else CycNumber.rational(v, n)
    return x.coeffs
