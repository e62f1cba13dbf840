"""Smith normal form over the integers.

Two routes share the same output convention:

* ``smith_normal_form`` runs dense elimination with minimal-absolute-value
  pivots and returns unimodular ``U``, ``V`` with ``U @ A @ V == D``.
* ``smith_diagonal`` returns only the diagonal. It first eliminates unit
  pivots sparsely (cheapest column first), then finishes the small residual
  with the dense routine. This is what the homology code uses on bar
  resolution boundaries.

Diagonals are non-negative, each entry divides the next, zeros last.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd

from .intmatrix import IntMatrix


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _nearest_quotient(a: int, b: int) -> int:
    # q with |a - q*b| <= |b|/2; keeps remainders and coefficients small
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1 if (r > 0) == (b > 0) else -1
    return q


@dataclass(frozen=True)
class SmithForm:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diag: tuple[int, ...]
    U_inv: IntMatrix | None = None
    V_inv: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)


class _Worker:
    """Dense elimination state. Row ops update U (and U^-1), column ops V (and V^-1).

    ``V`` and ``U^-1`` are stored transposed so every update is a row operation
    on a Python list.
    """

    def __init__(self, rows, ncols, track=False, inverses=False):
        self.a = rows
        self.m = len(rows)
        self.n = ncols
        self.track = track
        self.inverses = inverses and track
        self.t = 0  # rows and columns before t are finished
        if track:
            self.U = [[int(i == j) for j in range(self.m)] for i in range(self.m)]
            self.Vt = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        if self.inverses:
            self.UinvT = [[int(i == j) for j in range(self.m)] for i in range(self.m)]
            self.Vinv = [[int(i == j) for j in range(self.n)] for i in range(self.n)]

    # row_i += q * row_j
    def row_add(self, i, j, q):
        if not q:
            return
        ai, aj, t = self.a[i], self.a[j], self.t
        ai[t:] = [x + q * y for x, y in zip(ai[t:], aj[t:])]
        if self.track:
            self.U[i] = [x + q * y for x, y in zip(self.U[i], self.U[j])]
        if self.inverses:
            T = self.UinvT
            T[j] = [x - q * y for x, y in zip(T[j], T[i])]

    def row_swap(self, i, j):
        if i == j:
            return
        a = self.a
        a[i], a[j] = a[j], a[i]
        if self.track:
            self.U[i], self.U[j] = self.U[j], self.U[i]
        if self.inverses:
            T = self.UinvT
            T[i], T[j] = T[j], T[i]

    def row_neg(self, i):
        self.a[i] = [-x for x in self.a[i]]
        if self.track:
            self.U[i] = [-x for x in self.U[i]]
        if self.inverses:
            self.UinvT[i] = [-x for x in self.UinvT[i]]

    # col_j += q * col_k
    def col_add(self, j, k, q, rows=None):
        if not q:
            return
        for r in (self.a[self.t:] if rows is None else (self.a[i] for i in rows)):
            if r[k]:
                r[j] += q * r[k]
        if self.track:
            Vt = self.Vt
            Vt[j] = [x + q * y for x, y in zip(Vt[j], Vt[k])]
        if self.inverses:
            Vi = self.Vinv
            Vi[k] = [x - q * y for x, y in zip(Vi[k], Vi[j])]

    def col_swap(self, j, k):
        if j == k:
            return
        for r in self.a:
            r[j], r[k] = r[k], r[j]
        if self.track:
            self.Vt[j], self.Vt[k] = self.Vt[k], self.Vt[j]
        if self.inverses:
            self.Vinv[j], self.Vinv[k] = self.Vinv[k], self.Vinv[j]

    def col_2x2(self, i, j, x, y, s, t):
        """new col_i = x col_i + y col_j; new col_j = s col_i + t col_j (x*t - y*s == 1)."""
        for r in self.a:
            ci, cj = r[i], r[j]
            if ci or cj:
                r[i], r[j] = x * ci + y * cj, s * ci + t * cj
        if self.track:
            Vt = self.Vt
            vi, vj = Vt[i], Vt[j]
            Vt[i] = [x * p + y * q for p, q in zip(vi, vj)]
            Vt[j] = [s * p + t * q for p, q in zip(vi, vj)]
        if self.inverses:
            Vi = self.Vinv
            wi, wj = Vi[i], Vi[j]
            Vi[i] = [t * p - s * q for p, q in zip(wi, wj)]
            Vi[j] = [-y * p + x * q for p, q in zip(wi, wj)]

    # -- main loop ---------------------------------------------------------

    def _min_pivot(self, t):
        best = None
        for i in range(t, self.m):
            r = self.a[i]
            for j in range(t, self.n):
                v = r[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        return best
        return best

    def _clear_column(self, t):
        # Euclid down column t with row operations only. Finishing the row side
        # before any column operation keeps U far smaller than interleaving.
        a = self.a
        while True:
            p = a[t][t]
            for i in range(t + 1, self.m):
                if a[i][t]:
                    self.row_add(i, t, -_nearest_quotient(a[i][t], p))
            best = None
            for i in range(t + 1, self.m):
                v = a[i][t]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i)
            if best is None:
                return
            self.row_swap(t, best[1])

    def diagonalize(self):
        a = self.a
        k = min(self.m, self.n)
        t = 0
        while t < k:
            self.t = t
            piv = self._min_pivot(t)
            if piv is None:
                break
            _, i, j = piv
            self.row_swap(t, i)
            self.col_swap(t, j)
            while True:
                self._clear_column(t)
                # column t is now zero below the pivot, so these only touch row t
                p = a[t][t]
                for j in range(t + 1, self.n):
                    if a[t][j]:
                        self.col_add(j, t, -_nearest_quotient(a[t][j], p))
                best = None
                for j in range(t + 1, self.n):
                    v = a[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), j)
                if best is None:
                    break
                # a remainder smaller than |p| survived in row t: pivot on it
                self.col_swap(t, best[1])
            t += 1
        self.t = 0
        return t  # rank

    def fix_chain(self, rank):
        a = self.a
        for i in range(rank):
            if a[i][i] < 0:
                self.row_neg(i)
        for i in range(rank):
            for j in range(i + 1, rank):
                x, y = a[i][i], a[j][j]
                if y % x == 0:
                    continue
                g, s, u = xgcd(x, y)
                # rows i,j: [[x, 0], [0, y]] -> [[x, y], [0, y]]
                self.row_add(i, j, 1)
                # columns: [x y] * [[s, -y/g], [u, x/g]] = [g, 0]
                self.col_2x2(i, j, s, u, -(y // g), x // g)
                # row j is now [y*u, x*y/g]; clear its first entry
                self.row_add(j, i, -(a[j][i] // g))
                if a[j][j] < 0:
                    self.row_neg(j)


def smith_normal_form(A: IntMatrix, *, inverses: bool = False) -> SmithForm:
    """Smith normal form with unimodular transforms ``U @ A @ V == D``.

    With ``inverses=True`` the exact inverses ``U_inv`` and ``V_inv`` are
    tracked too (each transform times its inverse is the identity, which is
    also a certificate of unimodularity).
    """
    w = _Worker(A.to_lists(), A.ncols, track=True, inverses=inverses)
    rank = w.diagonalize()
    w.fix_chain(rank)
    m, n = A.nrows, A.ncols
    diag = tuple(w.a[i][i] for i in range(min(m, n)))
    U = IntMatrix.from_rows(w.U, m)
    V = IntMatrix.from_rows(w.Vt, n).T
    D = IntMatrix.from_rows(w.a, n)
    U_inv = V_inv = None
    if inverses:
        U_inv = IntMatrix.from_rows(w.UinvT, m).T
        V_inv = IntMatrix.from_rows(w.Vinv, n)
    return SmithForm(U, D, V, diag, U_inv, V_inv)


def _dense_diagonal(rows: list[list[int]], ncols: int) -> list[int]:
    """Nonzero invariant factors of a dense matrix (no transforms kept)."""
    if not rows or not ncols:
        return []
    # fewer columns means cheaper column operations
    if ncols > len(rows):
        rows = [list(c) for c in zip(*rows)]
        ncols = len(rows[0])
    w = _Worker(rows, ncols)
    rank = w.diagonalize()
    w.fix_chain(rank)
    return [w.a[i][i] for i in range(rank)]


def _unit_eliminate(nrows: int, columns: list[dict[int, int]]):
    """Sparse elimination of +-1 pivots.

    Returns ``(units, residual_columns)`` where ``residual_columns`` are the
    surviving nonzero columns over the surviving rows. Each eliminated pivot
    contributes an invariant factor 1 and leaves the cokernel unchanged.
    """
    cols = {j: dict(c) for j, c in enumerate(columns) if c}
    where: dict[int, set[int]] = {}
    for j, c in cols.items():
        for r in c:
            where.setdefault(r, set()).add(j)
    heap = [(len(c), j) for j, c in cols.items()]
    heapq.heapify(heap)
    units = 0
    while heap:
        size, j = heapq.heappop(heap)
        c = cols.get(j)
        if c is None or len(c) != size:
            continue  # stale heap entry
        best = None
        for r, v in c.items():
            if v == 1 or v == -1:
                k = len(where[r])
                if best is None or k < best[0] or (k == best[0] and r < best[1]):
                    best = (k, r, v)
        if best is None:
            continue  # re-pushed if a later update touches it
        _, r, v = best
        for j2 in sorted(where[r]):
            if j2 == j:
                continue
            c2 = cols[j2]
            q = c2[r] * v  # v is a unit, so this is c2[r] / v
            for rr, vv in c.items():
                x = c2.get(rr, 0) - q * vv
                if x:
                    if rr not in c2:
                        where[rr].add(j2)
                    c2[rr] = x
                else:
                    del c2[rr]
                    where[rr].discard(j2)
            if c2:
                heapq.heappush(heap, (len(c2), j2))
            else:
                del cols[j2]
        for rr in c:
            where[rr].discard(j)
        del cols[j]
        units += 1
    return units, [cols[j] for j in sorted(cols)]


def smith_diagonal(A: IntMatrix) -> tuple[int, ...]:
    """Smith diagonal of ``A`` without transforms; same result as ``smith_normal_form(A).diag``."""
    k = min(A.nrows, A.ncols)
    units, residual = _unit_eliminate(A.nrows, A.sparse_columns())
    seen = set()
    distinct = []
    for c in residual:
        key = tuple(sorted(c.items()))
        if key[0][1] < 0:
            key = tuple((r, -v) for r, v in key)
        if key not in seen:
            seen.add(key)
            distinct.append(key)
    rest: list[int] = []
    if distinct:
        live_rows = sorted({r for key in distinct for r, _ in key})
        pos = {r: i for i, r in enumerate(live_rows)}
        dense = [[0] * len(distinct) for _ in live_rows]
        for j, key in enumerate(distinct):
            for r, v in key:
                dense[pos[r]][j] = v
        rest = _dense_diagonal(dense, len(distinct))
    diag = [1] * units + rest
    return tuple(diag + [0] * (k - len(diag)))


def matrix_rank(A: IntMatrix) -> int:
    return sum(1 for d in smith_diagonal(A) if d)


def canonical_factors(orders) -> tuple[int, list[int]]:
    """Canonicalize a direct sum of cyclic groups ``Z/n`` (0 meaning ``Z``).

    Returns ``(free_rank, invariant_factors)`` using only gcd/lcm, so huge
    orders never need factoring.
    """
    free = 0
    fin = []
    for n in orders:
        n = abs(int(n))
        if n == 0:
            free += 1
        elif n > 1:
            fin.append(n)
    for i in range(len(fin)):
        for j in range(i + 1, len(fin)):
            a, b = fin[i], fin[j]
            if b % a:
                g = gcd(a, b)
                fin[i], fin[j] = g, a // g * b
    return free, [d for d in fin if d > 1]
