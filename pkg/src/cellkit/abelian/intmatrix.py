"""Exact sparse integer matrices."""

from __future__ import annotations

from typing import Iterable, Mapping


class IntMatrix:
    """Immutable integer matrix with dict-of-rows sparse storage.

    Entries are Python ints, so arithmetic never overflows. Only nonzero
    entries are stored; reading any in-bounds position is total.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], int] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative shape")
        self.nrows = nrows
        self.ncols = ncols
        rows: dict[int, dict[int, int]] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            v = int(v)
            if v:
                rows.setdefault(i, {})[j] = v
        self._rows = rows

    # -- construction ------------------------------------------------------

    @classmethod
    def _from_row_dicts(cls, nrows, ncols, rows):
        # trusted: rows already hold only nonzero ints within bounds
        m = cls.__new__(cls)
        m.nrows, m.ncols = nrows, ncols
        m._rows = {i: r for i, r in rows.items() if r}
        return m

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        out = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError(f"row {i} has length {len(r)}, expected {ncols}")
            d = {j: int(v) for j, v in enumerate(r) if v}
            if d:
                out[i] = d
        return cls._from_row_dicts(len(rows), ncols, out)

    @classmethod
    def from_columns(cls, nrows: int, columns: Iterable[Mapping[int, int]]) -> "IntMatrix":
        """Build from sparse columns given as ``{row: value}`` mappings."""
        rows: dict[int, dict[int, int]] = {}
        ncols = 0
        for j, col in enumerate(columns):
            ncols = j + 1
            for i, v in col.items():
                if v:
                    if not 0 <= i < nrows:
                        raise IndexError(f"row {i} outside {nrows}")
                    rows.setdefault(i, {})[j] = int(v)
        return cls._from_row_dicts(nrows, ncols, rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._from_row_dicts(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def diagonal(cls, values: Iterable[int], nrows: int | None = None, ncols: int | None = None) -> "IntMatrix":
        values = [int(v) for v in values]
        nrows = len(values) if nrows is None else nrows
        ncols = len(values) if ncols is None else ncols
        return cls(nrows, ncols, {(i, i): v for i, v in enumerate(values)})

    # -- access ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"({i}, {j}) outside {self.nrows}x{self.ncols}")
        return self._rows.get(i, {}).get(j, 0)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def row(self, i: int) -> dict[int, int]:
        return dict(self._rows.get(i, {}))

    def items(self):
        """Nonzero entries as ``((i, j), v)`` in row-major order."""
        for i in sorted(self._rows):
            r = self._rows[i]
            for j in sorted(r):
                yield (i, j), r[j]

    def to_lists(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in self._rows.items():
            row = out[i]
            for j, v in r.items():
                row[j] = v
        return out

    def sparse_columns(self) -> list[dict[int, int]]:
        cols: list[dict[int, int]] = [{} for _ in range(self.ncols)]
        for i, r in self._rows.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def is_zero(self) -> bool:
        return not self._rows

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_diagonal(self) -> bool:
        return all(j == i for i, r in self._rows.items() for j in r)

    def diagonal_entries(self) -> list[int]:
        return [self[i, i] for i in range(min(self.nrows, self.ncols))]

    def max_abs(self) -> int:
        return max((abs(v) for r in self._rows.values() for v in r.values()), default=0)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "IntMatrix":
        rows, cols = list(rows), list(cols)
        cpos = {c: k for k, c in enumerate(cols)}
        out = {}
        for a, i in enumerate(rows):
            r = self._rows.get(i)
            if not r:
                continue
            d = {cpos[j]: v for j, v in r.items() if j in cpos}
            if d:
                out[a] = d
        return IntMatrix._from_row_dicts(len(rows), len(cols), out)

    # -- arithmetic --------------------------------------------------------

    @property
    def T(self) -> "IntMatrix":
        out: dict[int, dict[int, int]] = {}
        for i, r in self._rows.items():
            for j, v in r.items():
                out.setdefault(j, {})[i] = v
        return IntMatrix._from_row_dicts(self.ncols, self.nrows, out)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other._rows
        out = {}
        for i, r in self._rows.items():
            acc: dict[int, int] = {}
            for k, a in r.items():
                ok = orows.get(k)
                if not ok:
                    continue
                for j, b in ok.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return IntMatrix._from_row_dicts(self.nrows, other.ncols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            d = out.setdefault(i, {})
            for j, v in r.items():
                w = d.get(j, 0) + v
                if w:
                    d[j] = w
                else:
                    d.pop(j, None)
        return IntMatrix._from_row_dicts(self.nrows, self.ncols, out)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._from_row_dicts(
            self.nrows, self.ncols, {i: {j: -v for j, v in r.items()} for i, r in self._rows.items()}
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, c: int) -> "IntMatrix":
        if c == 0:
            return IntMatrix.zeros(self.nrows, self.ncols)
        return IntMatrix._from_row_dicts(
            self.nrows, self.ncols, {i: {j: c * v for j, v in r.items()} for i, r in self._rows.items()}
        )

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        out = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            d = out.setdefault(i, {})
            for j, v in r.items():
                d[j + self.ncols] = v
        return IntMatrix._from_row_dicts(self.nrows, self.ncols + other.ncols, out)

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        a = self.to_lists()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            akk = a[k][k]
            rk = a[k]
            for i in range(k + 1, n):
                ri = a[i]
                aik = ri[k]
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * akk - aik * rk[j]) // prev
                ri[k] = 0
            prev = akk
        return sign * a[n - 1][n - 1]

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(self.items())))

    def __repr__(self):
        if self.nrows * self.ncols <= 64:
            return f"IntMatrix({self.to_lists()})"
        return f"IntMatrix<{self.nrows}x{self.ncols}, nnz={self.nnz}>"

    def format(self) -> str:
        rows = self.to_lists()
        if not rows or not self.ncols:
            return ""
        width = max(len(str(v)) for r in rows for v in r)
        return "\n".join(" ".join(str(v).rjust(width) for v in r) for r in rows)


def parse_matrix(text: str) -> IntMatrix:
    """Parse ``"rows cols"`` followed by row-major whitespace-separated integers."""
    from ..errors import ParseError

    tokens = text.split()
    if len(tokens) < 2:
        raise ParseError("matrix file must start with 'rows cols'", 0)
    try:
        nrows, ncols = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError("matrix header must be two integers", 0) from None
    if nrows < 0 or ncols < 0:
        raise ParseError("negative matrix dimension", 0)
    body = tokens[2:]
    if len(body) != nrows * ncols:
        raise ParseError(f"expected {nrows * ncols} entries, found {len(body)}", 2)
    vals = []
    for k, t in enumerate(body):
        try:
            vals.append(int(t))
        except ValueError:
            raise ParseError(f"bad integer {t!r}", k + 2) from None
    return IntMatrix.from_rows([vals[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)
