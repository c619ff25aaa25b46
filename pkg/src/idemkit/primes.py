"""Prime sets and Z_(P)-locality of rationals.

Convention: ``Z_(P) = Z[1/p : p not in P]``, so the empty prime set gives the
rationals and a prime set containing every prime dividing |G| is the integral
case as far as G is concerned.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``|n|`` in ascending order."""
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class PrimeSet(frozenset):
    """A finite set of primes; iteration order is ascending."""

    def __new__(cls, primes: Iterable[int] = ()):
        primes = [int(p) for p in primes]
        for p in primes:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        return super().__new__(cls, primes)

    def __iter__(self):
        return iter(sorted(super().__iter__()))

    def __repr__(self) -> str:
        return f"PrimeSet({sorted(self)})"

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}" if self else "{}"

    @classmethod
    def parse(cls, text: str | None) -> "PrimeSet":
        """Parse ``"2,3"``; empty text, ``"-"`` or ``"{}"`` give the empty set."""
        if text is None:
            return cls()
        text = text.strip().strip("{}")
        if text in ("", "-"):
            return cls()
        parts = [t.strip() for t in text.split(",")]
        values = [int(t) for t in parts]
        if len(set(values)) != len(values):
            raise ValueError(f"repeated prime in {text!r}")
        return cls(values)

    def relevant(self, order: int) -> "PrimeSet":
        """The primes of this set that divide ``order``."""
        return PrimeSet(p for p in self if order % p == 0)

    def split(self, n: int) -> tuple[int, int]:
        """Factor ``n = m * k`` with m a P-number and k coprime to every p in P."""
        m = 1
        for p in self:
            while n % p == 0:
                n //= p
                m *= p
        return m, n

    def is_P_number(self, n: int) -> bool:
        return self.split(n)[1] == 1

    def is_P_prime_number(self, n: int) -> bool:
        return self.split(n)[0] == 1

    def is_local(self, q: Fraction | int) -> bool:
        """Whether ``q`` lies in Z_(P): its reduced denominator avoids P."""
        den = Fraction(q).denominator
        return all(den % p for p in self)


def subsets(primes: Iterable[int]) -> list[PrimeSet]:
    """All subsets of ``primes`` ordered by size, then lexicographically."""
    primes = sorted(set(primes))
    out = []
    for mask in range(1 << len(primes)):
        out.append(tuple(p for i, p in enumerate(primes) if mask >> i & 1))
    out.sort(key=lambda t: (len(t), t))
    return [PrimeSet(t) for t in out]
