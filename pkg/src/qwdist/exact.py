"""Exact rational linear algebra for the null-space computations.

Everything here is integer or :class:`fractions.Fraction` arithmetic.  A
:class:`Subspace` stores the reduced row echelon basis of its span with each
row scaled to a primitive integer vector, so two subspaces are equal exactly
when their stored bases are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

from qwdist import kernels


class DimensionMismatch(ValueError):
    """Operands live in ambient spaces of different dimension."""


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: int | None = None) -> "RationalMatrix":
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix rows")
        return cls(data, ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls.from_rows([[0] * ncols for _ in range(nrows)], ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != len(other.rows):
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return RationalMatrix(
            tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols) for r in self.rows),
            other.ncols,
        )

    def scale(self, k) -> "RationalMatrix":
        k = Fraction(k)
        return RationalMatrix(tuple(tuple(k * a for a in r) for r in self.rows), self.ncols)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return [sum((a * Fraction(x) for a, x in zip(r, v)), Fraction(0)) for r in self.rows]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.rows)), len(self.rows)) if self.rows else RationalMatrix((), 0)

    def is_symmetric(self) -> bool:
        n, m = self.shape
        return n == m and all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def integer_rows(self) -> list[list[int]]:
        """Rows with denominators cleared row by row (same row space and kernel)."""
        out = []
        for r in self.rows:
            d = lcm(*(x.denominator for x in r)) if r else 1
            out.append([int(x * d) for x in r])
        return out

    def _same_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")


def as_matrix(m) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix.from_rows(m)


def kron(a, b) -> RationalMatrix:
    """Kronecker product; block (p, q) is ``a[p][q] * b``."""
    a, b = as_matrix(a), as_matrix(b)
    ra, ca = a.shape
    rb, cb = b.shape
    rows = []
    for p in range(ra):
        for i in range(rb):
            rows.append(tuple(a.rows[p][q] * b.rows[i][j] for q in range(ca) for j in range(cb)))
    return RationalMatrix(tuple(rows), ca * cb)


def vec_index(i: int, j: int, n: int) -> int:
    """Position of amplitude (i, j) in the row-major bipartite vector."""
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"vertex pair ({i}, {j}) outside order {n}")
    return i * n + j


def vec(x: Sequence[Sequence]) -> list:
    return [v for row in x for v in row]


def unvec(v: Sequence, n: int) -> list[list]:
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def _int_vector(v: Iterable) -> list[int]:
    v = list(v)
    if all(type(x) is int for x in v):
        return v
    v = [Fraction(x) for x in v]
    d = lcm(*(x.denominator for x in v)) if v else 1
    return [int(x * d) for x in v]


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Iterable], ambient_dim: int) -> "Subspace":
        rows = [_int_vector(v) for v in vectors]
        if any(len(r) != ambient_dim for r in rows):
            raise DimensionMismatch(f"vectors must have length {ambient_dim}")
        red, _ = kernels.rref(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in red))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(tuple(int(i == j) for j in range(ambient_dim)) for i in range(ambient_dim)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(k for k, x in enumerate(r) if x) for r in self.basis]

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        w = _int_vector(v)
        for row, c in zip(self.basis, self.pivots):
            a = w[c]
            if a:
                p = row[c]
                w = [p * x - a * y for x, y in zip(w, row)]
        return not any(w)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "dim": self.dim, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, obj: dict) -> "Subspace":
        """Parse a serialized subspace; the basis is re-canonicalized."""
        sub = cls.span(obj["basis"], int(obj["ambient_dim"]))
        if "dim" in obj and int(obj["dim"]) != sub.dim:
            raise ValueError(f"declared dim {obj['dim']} but basis spans dim {sub.dim}")
        return sub


def kernel(m, ncols: int | None = None) -> Subspace:
    """Exact right null space of ``m`` in canonical form."""
    if isinstance(m, RationalMatrix):
        rows, ncols = m.integer_rows(), m.ncols
    else:
        rows = [_int_vector(r) for r in m]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
    if not rows:
        return Subspace.full(ncols)
    return Subspace.span(kernels.nullspace(rows, ncols), ncols)


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


@lru_cache(maxsize=8192)
def _annihilator(s: Subspace) -> tuple[tuple[int, ...], ...]:
    if s.dim == 0:
        return Subspace.full(s.ambient_dim).basis
    return tuple(map(tuple, kernels.nullspace([list(r) for r in s.basis], s.ambient_dim)))


def annihilator(s: Subspace) -> list[list[int]]:
    """Integer rows whose common kernel is exactly ``s``."""
    return [list(r) for r in _annihilator(s)]


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if a == b or b.dim == b.ambient_dim:
        return a
    if a.dim == a.ambient_dim:
        return b
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    if a.dim > b.dim:
        a, b = b, a
    return restrict(a, _annihilator(b))


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff ``b`` is a subspace of ``a``."""
    _check_ambient(a, b)
    if b.dim > a.dim:
        return False
    return all(a.contains_vector(v) for v in b.basis)


def restrict(s: Subspace, rows: Sequence[Sequence[int]]) -> Subspace:
    """The vectors of ``s`` annihilated by every row of ``rows``."""
    if s.dim == 0 or not rows:
        return s
    return Subspace.span(kernels.restrict(s.basis, rows, s.ambient_dim), s.ambient_dim)


def to_uniform_sum_basis(s: Subspace) -> list[list[int]]:
    """A basis of ``s`` whose vectors add up to the all-ones vector.

    The lowest-index canonical vector with a nonzero coefficient in the
    expansion of the all-ones vector is replaced by all-ones minus the
    remaining vectors.
    """
    ones = [1] * s.ambient_dim
    if s.dim == 0 or not s.contains_vector(ones):
        raise ValueError("the all-ones vector is not in this subspace")
    # in RREF the coefficient of row i is ones[pivot_i] / row_i[pivot_i], never zero
    k = 0
    others = [list(v) for i, v in enumerate(s.basis) if i != k]
    replaced = [1 - sum(v[c] for v in others) for c in range(s.ambient_dim)]
    out = [list(v) for v in s.basis]
    out[k] = replaced
    return out


def kron_int(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    """Kronecker product of integer matrices as plain nested lists."""
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def matmul_int(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a]


def identity_int(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]
