"""Finitely generated abelian groups in invariant-factor form, and maps between them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod
from typing import Sequence

from ..errors import IllDefinedHom, NotElementaryAbelianCokernel, NotInjective
from ..primes import PrimeSet, factorize, is_prime
from .intmatrix import IntMatrix
from .smith import canonical_factors, smith_diagonal, smith_normal_form


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^free_rank + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk`` and each ``di >= 2``.

    The form is canonical, so field equality is isomorphism.
    """

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fac = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fac)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in fac):
            raise ValueError(f"invariant factors must be >= 2: {fac}")
        if any(b % a for a, b in zip(fac, fac[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {fac}")

    @classmethod
    def from_cyclic_orders(cls, orders: Sequence[int]) -> "FgAbGroup":
        """Direct sum of cyclic groups of the given orders (0 = infinite cyclic, 1 = trivial)."""
        free, fac = canonical_factors(orders)
        return cls(free, tuple(fac))

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls()

    @classmethod
    def cyclic(cls, n: int) -> "FgAbGroup":
        return cls.from_cyclic_orders([n])

    @classmethod
    def free(cls, r: int) -> "FgAbGroup":
        return cls(r, ())

    # -- queries -----------------------------------------------------------

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_torsion(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Group order, or ``None`` when infinite."""
        return prod(self.invariant_factors) if self.free_rank == 0 else None

    @property
    def exponent(self) -> int | None:
        if self.free_rank:
            return None
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def cyclic_orders(self) -> list[int]:
        return [0] * self.free_rank + list(self.invariant_factors)

    def elementary_divisors(self) -> list[int]:
        """Prime-power decomposition of the torsion part, sorted."""
        out = []
        for d in self.invariant_factors:
            out.extend(q**e for q, e in factorize(d).items())
        return sorted(out)

    def is_elementary_abelian(self, p: int) -> bool:
        """True for ``(Z/p)^k``, including ``k = 0``."""
        return self.free_rank == 0 and all(d == p for d in self.invariant_factors)

    def is_P_torsion(self, primes) -> bool:
        P = PrimeSet.coerce(primes)
        return self.free_rank == 0 and all(P.supports(d) for d in self.invariant_factors)

    def direct_sum(self, *others: "FgAbGroup") -> "FgAbGroup":
        orders = self.cyclic_orders()
        for o in others:
            orders += o.cyclic_orders()
        return FgAbGroup.from_cyclic_orders(orders)

    __add__ = direct_sum

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " x ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "invariant_factors": list(self.invariant_factors),
            "display": str(self),
        }


def parse_abelian(text: str) -> FgAbGroup:
    """Inverse of ``str(FgAbGroup)``; also accepts non-canonical sums like ``Z/2 x Z/3``."""
    text = text.strip()
    if text in ("0", ""):
        return FgAbGroup()
    orders = []
    for part in text.split("x"):
        part = part.strip()
        if part == "Z":
            orders.append(0)
        elif part.startswith("Z^"):
            orders += [0] * int(part[2:])
        elif part.startswith("Z/"):
            orders.append(int(part[2:]))
        else:
            raise ValueError(f"cannot parse abelian group term {part!r}")
    return FgAbGroup.from_cyclic_orders(orders)


# -- operations ------------------------------------------------------------


def cokernel(A: IntMatrix) -> FgAbGroup:
    """``Z^rows / (column lattice of A)`` in canonical form."""
    diag = smith_diagonal(A)
    nonzero = [d for d in diag if d]
    return FgAbGroup(A.nrows - len(nonzero), tuple(d for d in nonzero if d > 1))


def torsion_part(A: FgAbGroup, primes=None) -> FgAbGroup:
    """Subgroup of elements whose order only involves primes from ``primes``.

    ``primes=None`` means every prime, i.e. the full torsion subgroup.
    """
    P = PrimeSet.coerce(primes)
    if P.is_empty():
        raise ValueError("torsion_part needs a nonempty set of primes")
    return FgAbGroup.from_cyclic_orders([P.part(d) for d in A.invariant_factors])


def quotient_by_torsion(A: FgAbGroup, primes=None) -> FgAbGroup:
    """``A / T_P A``; the result has no ``P``-torsion."""
    P = PrimeSet.coerce(primes)
    if P.is_empty():
        return A
    return FgAbGroup.from_cyclic_orders([0] * A.free_rank + [d // P.part(d) for d in A.invariant_factors])


def rank(A: FgAbGroup) -> int:
    return A.free_rank


def is_isomorphic(A: FgAbGroup, B: FgAbGroup) -> bool:
    return A == B


def tensor_product(A: FgAbGroup, B: FgAbGroup) -> FgAbGroup:
    orders = []
    for a in A.cyclic_orders():
        for b in B.cyclic_orders():
            orders.append(gcd(a, b))  # gcd(0, n) = n, gcd(0, 0) = 0 gives Z
    return FgAbGroup.from_cyclic_orders(orders)


def exterior_square(A: FgAbGroup) -> FgAbGroup:
    """``A ^ A``: one summand ``Ci (x) Cj`` per unordered pair of cyclic factors."""
    cyc = A.cyclic_orders()
    return FgAbGroup.from_cyclic_orders([gcd(a, b) for a, b in combinations(cyc, 2)])


# -- homomorphisms -----------------------------------------------------------


class AbHom:
    """Homomorphism between diagonally presented abelian groups.

    ``source_orders`` / ``target_orders`` list the orders of the presentation
    generators (0 for infinite cyclic, 1 allowed). ``matrix`` has one column
    per source generator, in target generator coordinates. Well-definedness
    is checked here: ``d_j * matrix[:, j]`` must vanish in the target.
    """

    def __init__(self, source_orders: Sequence[int], target_orders: Sequence[int], matrix):
        self.source_orders = tuple(int(d) for d in source_orders)
        self.target_orders = tuple(int(d) for d in target_orders)
        if any(d < 0 for d in self.source_orders + self.target_orders):
            raise ValueError("generator orders must be non-negative")
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix.from_rows(matrix, len(self.source_orders))
        if matrix.shape != (len(self.target_orders), len(self.source_orders)):
            raise ValueError(f"matrix shape {matrix.shape} does not match presentations")
        self.matrix = matrix
        for (i, j), v in matrix.items():
            d, e = self.source_orders[j], self.target_orders[i]
            if (e == 0 and d * v != 0) or (e != 0 and (d * v) % e):
                raise IllDefinedHom(
                    f"generator {j} of order {d or 'inf'} maps to {v} in a summand of order {e or 'inf'}"
                )

    @classmethod
    def between(cls, A: FgAbGroup, B: FgAbGroup, matrix) -> "AbHom":
        return cls(A.cyclic_orders(), B.cyclic_orders(), matrix)

    @property
    def source(self) -> FgAbGroup:
        return FgAbGroup.from_cyclic_orders(self.source_orders)

    @property
    def target(self) -> FgAbGroup:
        return FgAbGroup.from_cyclic_orders(self.target_orders)

    def _relations(self) -> IntMatrix:
        return IntMatrix.diagonal(self.target_orders)

    def cokernel(self) -> FgAbGroup:
        return cokernel(self.matrix.hstack(self._relations()))

    def is_surjective(self) -> bool:
        return self.cokernel().is_trivial

    def is_injective(self) -> bool:
        W = self.matrix.hstack(self._relations())
        snf = smith_normal_form(W)
        a = len(self.source_orders)
        V = snf.V
        for k in range(snf.rank, W.ncols):
            for j in range(a):
                x, d = V[j, k], self.source_orders[j]
                if (d == 0 and x != 0) or (d != 0 and x % d):
                    return False
        return True

    def is_isomorphism(self) -> bool:
        return self.is_surjective() and self.is_injective()

    def induced_on_torsion_quotients(self, primes) -> "AbHom":
        """The induced map ``A / T_P A -> B / T_P B`` on the same generators."""
        P = PrimeSet.coerce(primes)

        def kill(d):
            return d if d == 0 else d // P.part(d)

        return AbHom([kill(d) for d in self.source_orders], [kill(e) for e in self.target_orders], self.matrix)

    def __repr__(self):
        return f"AbHom({self.source} -> {self.target})"


@dataclass(frozen=True)
class LemmaVerdict:
    is_isomorphism: bool
    induced_is_isomorphism: bool
    cokernel: FgAbGroup

    @property
    def agree(self) -> bool:
        return self.is_isomorphism == self.induced_is_isomorphism


def check_p_prime_torsion_lemma(f: AbHom, p: int) -> LemmaVerdict:
    """Compare "f is an isomorphism" with "f is an isomorphism modulo torsion prime to p".

    ``f`` must be injective with cokernel an ``F_p``-vector space. The two
    booleans must agree; a disagreement raises ``AssertionError``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    coker = f.cokernel()
    if not coker.is_elementary_abelian(p):
        raise NotElementaryAbelianCokernel(f"cokernel {coker} is not an F_{p}-vector space")
    if not f.is_injective():
        raise NotInjective("map is not injective, so it does not present an extension")
    verdict = LemmaVerdict(
        f.is_isomorphism(),
        f.induced_on_torsion_quotients(PrimeSet.excluding(p)).is_isomorphism(),
        coker,
    )
    assert verdict.agree, f"torsion lemma disagreement for {f!r} at p={p}"
    return verdict
