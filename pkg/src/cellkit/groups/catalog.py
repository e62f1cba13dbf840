"""Named groups with fixed generating sets.

==========  ===============================================================
name        construction (generators in order)
==========  ===============================================================
``Cn``      integers mod n; generator 1
``Ep^k``    (Z/p)^k as k-tuples; the k unit vectors
``Sn``      permutations of {1..n}, n <= 5; (1 2 ... n), (1 2)
``An``      even permutations, n <= 5; (1 2 3), (1 2 4), ..., (1 2 n)
``D2n``     dihedral of order 2n as pairs (r, s); rotation (1, 0), reflection (0, 1)
``Q8``      unit quaternions {+-1, +-i, +-j, +-k}; i, j
``SL(2,q)`` 2x2 matrices of determinant 1 over F_q, q in {3, 5};
            [[1,1],[0,1]], [[1,0],[1,1]]
==========  ===============================================================
"""

from __future__ import annotations

import re

from ..errors import OrderCapExceeded, UnknownGroupName
from ..primes import is_prime
from .finite import DEFAULT_MAX_ORDER, FiniteGroup

_NAME = re.compile(r"^(?:C(\d+)|S(\d+)|A(\d+)|D(\d+)|Q8|SL\(2,(\d+)\)|E(\d+)\^(\d+))$")


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise UnknownGroupName(f"C{n}: order must be positive")
    gens = [1 % n] if n > 1 else []
    return FiniteGroup.from_generators(gens, lambda a, b: (a + b) % n, 0, f"C{n}")


def elementary_abelian(p: int, k: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if not is_prime(p) or k < 1:
        raise UnknownGroupName(f"E{p}^{k}: need a prime and k >= 1")
    units = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    return FiniteGroup.from_generators(
        units, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)), (0,) * k, f"E{p}^{k}", max_order
    )


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise UnknownGroupName(f"S{n}: only n <= 5 is catalogued")
    gens = []
    if n >= 2:
        gens.append(tuple(list(range(1, n)) + [0]))
        if n >= 3:
            gens.append((1, 0) + tuple(range(2, n)))
    return FiniteGroup.from_permutations(n, gens, label=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise UnknownGroupName(f"A{n}: only n <= 5 is catalogued")
    gens = [f"(1 2 {k})" for k in range(3, n + 1)]
    return FiniteGroup.from_permutations(n, gens, label=f"A{n}")


def dihedral(order: int) -> FiniteGroup:
    if order < 2 or order % 2:
        raise UnknownGroupName(f"D{order}: dihedral orders are even and >= 2")
    n = order // 2

    def mul(x, y):
        (r1, s1), (r2, s2) = x, y
        return ((r1 + (r2 if s1 == 0 else -r2)) % n, s1 ^ s2)

    gens = [(1 % n, 0), (0, 1)]
    return FiniteGroup.from_generators(gens, mul, (0, 0), f"D{order}")


def _qmul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def quaternion8() -> FiniteGroup:
    return FiniteGroup.from_generators([(0, 1, 0, 0), (0, 0, 1, 0)], _qmul, (1, 0, 0, 0), "Q8")


def special_linear_2(q: int) -> FiniteGroup:
    if q not in (3, 5):
        raise UnknownGroupName(f"SL(2,{q}): only q in {{3, 5}} is catalogued")

    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q)

    return FiniteGroup.from_generators([(1, 1, 0, 1), (1, 0, 1, 1)], mul, (1, 0, 0, 1), f"SL(2,{q})")


def catalog(name: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Look up a single catalogue name (no products)."""
    m = _NAME.match(name.strip())
    if not m:
        raise UnknownGroupName(f"unknown group name {name!r}")
    c, s, a, d, sl, ep, ek = m.groups()
    if c is not None:
        G = cyclic(int(c))
    elif s is not None:
        G = symmetric(int(s))
    elif a is not None:
        G = alternating(int(a))
    elif d is not None:
        G = dihedral(int(d))
    elif sl is not None:
        G = special_linear_2(int(sl))
    elif ep is not None:
        return elementary_abelian(int(ep), int(ek), max_order)
    else:
        G = quaternion8()
    if G.order > max_order:
        raise OrderCapExceeded(f"{name}: order {G.order} exceeds the order cap {max_order}")
    return G


# Groups of order <= 32 used throughout the test and acceptance suites.
STANDARD_NAMES = (
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C12", "C16",
    "E2^2", "E2^3", "E2^4", "E2^5", "E3^2", "E3^3", "E5^2",
    "S3", "S4", "A4", "D8", "D10", "D12", "D16", "D32", "Q8", "SL(2,3)",
    "C2xC4", "C2xD8", "S3xC2", "Q8xC2", "A4xC2",
)


def direct_product(G: FiniteGroup, H: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER, label: str | None = None) -> FiniteGroup:
    """Componentwise product; generators are those of ``G`` then those of ``H``."""
    if G.order * H.order > max_order:
        raise OrderCapExceeded(f"{G.label} x {H.label}: order {G.order * H.order} exceeds the order cap {max_order}")
    gm, hm = G.mul, H.mul
    gens = [(g, 0) for g in G.generators] + [(0, h) for h in H.generators]
    P = FiniteGroup.from_generators(
        gens,
        lambda x, y: (gm[x[0]][y[0]], hm[x[1]][y[1]]),
        (0, 0),
        label or f"{G.label}x{H.label}",
        max_order,
    )
    return P


def named(expr: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Catalogue name or product of names such as ``"S3xC2"``."""
    parts = expr.strip().split("x")
    G = catalog(parts[0], max_order)
    for part in parts[1:]:
        G = direct_product(G, catalog(part, max_order), max_order)
    G.label = expr.strip()
    return G
