"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`.  Vectors that feed
the incremental echelon basis are sparse ``{column: Fraction}`` dicts; the
dense :class:`RatMatrix` is used for the public ``rref``/``nullspace`` API.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
SparseVec = dict  # {int: Fraction}, zero entries never stored


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of Fractions

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(as_rational(x) for x in r)
        return cls(len(rows), cols, tuple(flat))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_lists(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def column(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                s = Fraction(0)
                for k, a in enumerate(ri):
                    if a:
                        s += a * other.entries[k * other.cols + j]
                out.append(s)
        return RatMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(self.row(i), v) if a), Fraction(0))
                for i in range(self.rows)]


def dense_to_sparse(v: Iterable) -> SparseVec:
    return {i: as_rational(x) for i, x in enumerate(v) if x}


def sparse_to_dense(v: SparseVec, n: int) -> list:
    out = [Fraction(0)] * n
    for i, x in v.items():
        out[i] = x
    return out


class EchelonBasis:
    """Incrementally maintained reduced row-echelon basis of a subspace.

    Rows are kept fully reduced, so ``reduce`` is a single pass and the
    sorted row list is always the unique RREF of the span.
    """

    def __init__(self, width: int):
        self.width = width
        self._rows: dict = {}  # pivot column -> sparse row with 1 at pivot

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows)

    def reduce(self, v: SparseVec) -> SparseVec:
        w = dict(v)
        for p in [c for c in w if c in self._rows]:
            a = w.get(p)
            if not a:
                continue
            for c, x in self._rows[p].items():
                y = w.get(c, 0) - a * x
                if y:
                    w[c] = y
                else:
                    w.pop(c, None)
        return w

    def contains(self, v: SparseVec) -> bool:
        return not self.reduce(v)

    def add(self, v: SparseVec) -> bool:
        """Insert ``v``; return True when the span grew."""
        w = self.reduce(v)
        if not w:
            return False
        q = min(w)
        inv = 1 / w[q]
        w = {c: x * inv for c, x in w.items()}
        for p, row in self._rows.items():
            a = row.get(q)
            if a:
                for c, x in w.items():
                    y = row.get(c, 0) - a * x
                    if y:
                        row[c] = y
                    else:
                        row.pop(c, None)
        self._rows[q] = w
        return True

    def rows(self) -> list:
        return [dict(self._rows[p]) for p in self.pivots]

    def dense_rows(self) -> list:
        return [sparse_to_dense(self._rows[p], self.width) for p in self.pivots]

    def nullspace(self) -> list:
        """Basis of ``{x : r.x = 0 for every stored row r}`` as dense lists."""
        pivots = set(self._rows)
        basis = []
        for free in range(self.width):
            if free in pivots:
                continue
            vec = [Fraction(0)] * self.width
            vec[free] = Fraction(1)
            for p, row in self._rows.items():
                a = row.get(free)
                if a:
                    vec[p] = -a
            basis.append(vec)
        return basis


def rref(m: RatMatrix):
    """Return ``(reduced, rank, pivot_columns)``."""
    eb = EchelonBasis(m.cols)
    for i in range(m.rows):
        eb.add(dense_to_sparse(m.row(i)))
    rows = eb.dense_rows()
    rank = len(rows)
    rows += [[Fraction(0)] * m.cols for _ in range(m.rows - rank)]
    reduced = RatMatrix.from_rows(rows, m.cols) if m.rows else RatMatrix.zeros(0, m.cols)
    return reduced, rank, eb.pivots


def rank(m: RatMatrix) -> int:
    return rref(m)[1]


def nullspace(m: RatMatrix) -> list:
    eb = EchelonBasis(m.cols)
    for i in range(m.rows):
        eb.add(dense_to_sparse(m.row(i)))
    return eb.nullspace()


def span_membership(basis: Sequence[Sequence], v: Sequence) -> bool:
    n = len(v)
    for b in basis:
        if len(b) != n:
            raise ValueError("dimension mismatch between basis vector and v")
    eb = EchelonBasis(n)
    for b in basis:
        eb.add(dense_to_sparse(b))
    return eb.contains(dense_to_sparse(v))


def same_span(a: Sequence[Sequence], b: Sequence[Sequence], width: int) -> bool:
    ea, eb = EchelonBasis(width), EchelonBasis(width)
    for v in a:
        ea.add(dense_to_sparse(v))
    for v in b:
        eb.add(dense_to_sparse(v))
    return ea.dense_rows() == eb.dense_rows()


def solve_combination(basis: Sequence[Sequence], v: Sequence):
    """Coefficients ``x`` with ``sum x_i basis_i = v``, or None if not in span.

    ``basis`` must be linearly independent.
    """
    k = len(basis)
    n = len(v)
    aug = RatMatrix.from_rows([[basis[j][i] for j in range(k)] + [v[i]] for i in range(n)], k + 1)
    red, r, piv = rref(aug)
    if k in piv:
        return None
    x = [Fraction(0)] * k
    for row_idx, p in enumerate(piv):
        x[p] = red[row_idx, k]
    return x
