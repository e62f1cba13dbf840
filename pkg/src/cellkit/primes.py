"""Small prime utilities and the ``PrimeSet`` used by the torsion functors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        if f > 10**6:
            # large cofactor (only reachable from huge invariant factors)
            from sympy import factorint

            for q, e in factorint(n).items():
                out[int(q)] = out.get(int(q), 0) + int(e)
            return dict(sorted(out.items()))
        for q in (f, f + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> list[int]:
    return list(factorize(n))


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n`` (``n`` nonzero)."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_power_of(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of primes, or the complement of one.

    ``PrimeSet.all()`` is every prime; ``PrimeSet.excluding(p)`` is every prime but p.
    """

    primes: frozenset = frozenset()
    cofinite: bool = False

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        bad = [q for q in primes if not is_prime(q)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        return cls(frozenset(primes), False)

    @classmethod
    def all(cls) -> "PrimeSet":
        return cls(frozenset(), True)

    @classmethod
    def excluding(cls, *primes: int) -> "PrimeSet":
        return cls(frozenset(primes), True)

    @classmethod
    def coerce(cls, value) -> "PrimeSet":
        if isinstance(value, PrimeSet):
            return value
        if value is None:
            return cls.all()
        if isinstance(value, int):
            return cls.of(value)
        return cls.of(*value)

    def is_empty(self) -> bool:
        return not self.cofinite and not self.primes

    def __contains__(self, q: int) -> bool:
        return (q in self.primes) != self.cofinite

    def part(self, n: int) -> int:
        """Largest divisor of ``n`` whose prime factors all lie in this set (n != 0)."""
        n = abs(n)
        if n == 0:
            raise ValueError("part() of 0 is undefined")
        inside = 1
        for q in self.primes:
            inside *= p_part(n, q)
        return n // inside if self.cofinite else inside

    def supports(self, n: int) -> bool:
        return self.part(n) == abs(n)

    def __str__(self):
        names = ",".join(str(q) for q in sorted(self.primes))
        if self.cofinite:
            return "all primes" if not self.primes else f"primes other than {{{names}}}"
        return "{" + names + "}"


def coerce_primes(value: Iterable[int] | int | PrimeSet | None) -> PrimeSet:
    return PrimeSet.coerce(value)
