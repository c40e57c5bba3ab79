"""Exact integer matrices and their Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class IntegerMatrix:
    """Dense matrix of Python ints (unbounded magnitude)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [[0] * cols for _ in range(rows)]
        entries = [list(map(int, r)) for r in entries]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(f"entries do not form a {rows}x{cols} matrix")
        self.entries = entries

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], cols: int = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def to_lists(self):
        return [list(r) for r in self.entries]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols_of_other = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = [
            [sum(x * y for x, y in zip(row, col)) for col in cols_of_other]
            for row in self.entries
        ]
        return IntegerMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.entries for v in r)

    def format(self) -> str:
        return "\n".join(" ".join(str(v) for v in r) for r in self.entries)

    def __repr__(self):
        return f"IntegerMatrix({self.rows}, {self.cols}, {self.entries!r})"


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> tuple:
        return tuple(d for d in self.diagonal if d)

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.diagonal if d > 1)


def _smallest(a, cells):
    best = None
    for i, j in cells:
        v = a[i][j]
        if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
            best = (i, j)
    return best


def smith_normal_form(m: IntegerMatrix) -> SmithForm:
    """Diagonalise ``m`` by unimodular row and column operations.

    Pivots are the smallest non-zero entry by absolute value, ties broken by
    row then column. The returned diagonal has ``min(rows, cols)`` entries,
    all non-negative, each non-zero entry dividing the next.
    """
    a = m.to_lists()
    nr, nc = m.rows, m.cols
    diag = []
    t = 0
    while t < min(nr, nc):
        piv = _smallest(a, ((i, j) for i in range(t, nr) for j in range(t, nc)))
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    rt, ri = a[t], a[i]
                    for k in range(t, nc):
                        ri[k] -= q * rt[k]
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a[t:]:
                        row[j] -= q * row[t]
            rest = [(i, t) for i in range(t + 1, nr)] + [(t, j) for j in range(t + 1, nc)]
            piv = _smallest(a, rest)
            if piv is not None:
                # a remainder smaller than the pivot survived: promote it
                i, j = piv
                if j == t:
                    a[t], a[i] = a[i], a[t]
                else:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            rt, rb = a[t], a[bad]
            for k in range(t, nc):
                rt[k] += rb[k]
        diag.append(abs(a[t][t]))
        t += 1
    diag.extend([0] * (min(nr, nc) - len(diag)))
    return SmithForm(tuple(diag))
