"""Integral homology of finite groups from the normalized bar resolution.

With trivial coefficients the degree-n chains have basis ``[g1|...|gn]``
over non-identity elements, and

    d[g1|...|gn] = [g2|...|gn]
                   + sum_{i=1}^{n-1} (-1)^i [g1|...|gi*g(i+1)|...|gn]
                   + (-1)^n [g1|...|g(n-1)]

where any bar containing the identity is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .abelian import FgAbGroup, IntMatrix, cokernel, smith_diagonal, smith_normal_form
from .errors import BudgetExceeded
from .groups import FiniteGroup
from .primes import PrimeSet

DEFAULT_BASIS_BUDGET = 2**17
DEFAULT_DEGREE_CAP = 3


@dataclass(frozen=True)
class BarChainLevel:
    group: FiniteGroup
    degree: int

    @property
    def size(self) -> int:
        return (self.group.order - 1) ** self.degree

    def index(self, bar) -> int:
        """Position of a bar of non-identity elements (lexicographic order)."""
        m = self.group.order - 1
        k = 0
        for g in bar:
            k = k * m + (g - 1)
        return k

    def bar(self, k: int) -> tuple[int, ...]:
        m = self.group.order - 1
        out = []
        for _ in range(self.degree):
            k, r = divmod(k, m)
            out.append(r + 1)
        return tuple(reversed(out))

    def basis(self):
        return product(range(1, self.group.order), repeat=self.degree)


@dataclass(frozen=True)
class BoundaryMap:
    source: BarChainLevel
    target: BarChainLevel
    matrix: IntMatrix


def _check_budget(G, n, basis_budget, degree_cap, what):
    if n > degree_cap:
        raise BudgetExceeded(f"{what}: degree {n} exceeds the degree cap {degree_cap}")
    size = (G.order - 1) ** n
    if size > basis_budget:
        raise BudgetExceeded(
            f"{what}: {G.label} needs {G.order - 1}^{n} = {size} bar basis elements, "
            f"over the basis budget {basis_budget}"
        )


def bar_boundary(
    G: FiniteGroup,
    n: int,
    *,
    basis_budget: int = DEFAULT_BASIS_BUDGET,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> BoundaryMap:
    """Boundary ``C_n -> C_(n-1)`` of the normalized bar complex as a sparse matrix."""
    if n < 1:
        raise ValueError("boundary degree must be >= 1")
    _check_budget(G, n, basis_budget, degree_cap, f"d_{n}")
    src, tgt = BarChainLevel(G, n), BarChainLevel(G, n - 1)
    mul = G.mul
    m = G.order - 1
    columns = []
    for bar in src.basis():
        col: dict[int, int] = {}

        def add(b, sign):
            if 0 in b:
                return
            k = 0
            for g in b:
                k = k * m + (g - 1)
            v = col.get(k, 0) + sign
            if v:
                col[k] = v
            else:
                del col[k]

        add(bar[1:], 1)
        for i in range(n - 1):
            sign = -1 if i % 2 == 0 else 1  # (-1)^(i+1)
            add(bar[:i] + (mul[bar[i]][bar[i + 1]],) + bar[i + 2:], sign)
        add(bar[:-1], -1 if n % 2 else 1)
        columns.append(col)
    matrix = IntMatrix.from_columns(tgt.size, columns)
    if matrix.ncols != src.size:  # trailing empty columns
        matrix = IntMatrix._from_row_dicts(tgt.size, src.size, {i: matrix.row(i) for i in range(tgt.size)})
    return BoundaryMap(src, tgt, matrix)


def homology(
    G: FiniteGroup,
    n: int,
    *,
    basis_budget: int = DEFAULT_BASIS_BUDGET,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    method: str = "cokernel",
) -> FgAbGroup:
    """``H_n(G; Z)`` for ``n >= 1``.

    ``method="cokernel"`` (default) reads the torsion off the Smith diagonal of
    ``d_(n+1)`` and the free rank off the ranks of ``d_n`` and ``d_(n+1)``:
    ``C_n / im d_(n+1)`` is ``H_n`` plus a free summand isomorphic to ``im d_n``.

    ``method="kernel"`` takes a kernel basis of ``d_n`` from its Smith
    transform, rewrites ``im d_(n+1)`` in those coordinates and returns the
    cokernel. It keeps a dense change of basis, so it is only practical for
    small groups; it serves as an independent cross-check.
    """
    if n < 1:
        raise ValueError("homology degree must be >= 1")
    _check_budget(G, n + 1, basis_budget, degree_cap, f"H_{n}")
    if G.order == 1:
        return FgAbGroup()
    d_n = bar_boundary(G, n, basis_budget=basis_budget, degree_cap=degree_cap).matrix
    d_next = bar_boundary(G, n + 1, basis_budget=basis_budget, degree_cap=degree_cap).matrix
    if method == "cokernel":
        diag_next = smith_diagonal(d_next)
        rank_next = sum(1 for d in diag_next if d)
        rank_n = sum(1 for d in smith_diagonal(d_n) if d)
        free = d_n.ncols - rank_n - rank_next
        return FgAbGroup(free, tuple(d for d in diag_next if d > 1))
    if method == "kernel":
        snf = smith_normal_form(d_n, inverses=True)
        r = snf.rank
        coords = snf.V_inv @ d_next
        kernel_coords = coords.submatrix(range(r, coords.nrows), range(coords.ncols))
        if not coords.submatrix(range(r), range(coords.ncols)).is_zero():
            raise AssertionError("image of d_(n+1) is not inside ker d_n")
        return cokernel(kernel_coords)
    raise ValueError(f"unknown method {method!r}")


def schur_multiplier(G: FiniteGroup, **kw) -> FgAbGroup:
    return homology(G, 2, **kw)


def homology_is_P_torsion(G: FiniteGroup, primes, degrees=(1, 2), **kw) -> bool:
    """True iff every requested ``H_n(G)`` is finite with order supported on ``primes``."""
    P = PrimeSet.coerce(primes)
    return all(homology(G, n, **kw).is_P_torsion(P) for n in degrees)
