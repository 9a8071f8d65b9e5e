"""Exact linear algebra over prime fields GF(p).

Vectors are rows and a subspace is the row space of its basis matrix.
All arithmetic is integer arithmetic mod p on int64 numpy arrays; there
are no floats anywhere, so every result is exact.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, FieldMismatchError

MAX_FIELD = 1 << 13


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The prime field GF(p), 2 <= p <= 2**13."""

    __slots__ = ("p",)

    def __init__(self, p: int) -> None:
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError(f"field order must be an int, got {type(p).__name__}")
        if not 2 <= p <= MAX_FIELD or not _is_prime(p):
            raise ValueError(f"field order must be a prime in [2, {MAX_FIELD}], got {p}")
        self.p = p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def residues(self, values: Iterable[int]) -> np.ndarray:
        """A flat sequence of ints as a read-only residue vector."""
        v = np.asarray(list(values), dtype=np.int64) % self.p
        v.setflags(write=False)
        return v

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


GF2 = PrimeField(2)
GF3 = PrimeField(3)


class MatrixF:
    """An immutable row-major matrix of residues over a prime field."""

    __slots__ = ("field", "_a")

    def __init__(self, field: PrimeField, array) -> None:
        a = np.asarray(array, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {a.shape}")
        a = a % field.p
        a.setflags(write=False)
        self.field = field
        self._a = a

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]],
                  cols: int | None = None) -> "MatrixF":
        """Build from a list of rows; `cols` disambiguates the empty matrix."""
        data = [list(r) for r in rows]
        widths = {len(r) for r in data}
        if len(widths) > 1:
            raise ValueError(f"ragged rows: widths {sorted(widths)}")
        width = widths.pop() if data else (0 if cols is None else cols)
        if cols is not None and width != cols:
            raise DimensionMismatchError(f"rows have width {width}, expected {cols}")
        a = np.array(data, dtype=np.int64).reshape(len(data), width)
        return cls(field, a)

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "MatrixF":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "MatrixF":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    def row(self, i: int) -> np.ndarray:
        return self._a[i]

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._a]

    def transpose(self) -> "MatrixF":
        return MatrixF(self.field, self._a.T)

    def mul(self, other: "MatrixF") -> "MatrixF":
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        return MatrixF(self.field, (self._a @ other._a) % self.field.p)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixF):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.array_equal(self._a, other._a)))

    def __repr__(self) -> str:
        return f"MatrixF({self.field!r}, {self.tolist()!r})"


def _rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan elimination mod p; returns (rref, pivot columns)."""
    m = a.copy()
    m.setflags(write=True)
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        i = r + int(hits[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        lead = int(m[r, c])
        if lead != 1:
            m[r] = m[r] * pow(lead, p - 2, p) % p
        for j in np.nonzero(m[:, c])[0]:
            if j != r:
                m[j] = (m[j] - m[j, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rref(m: MatrixF) -> tuple[MatrixF, int, tuple[int, ...]]:
    """Reduced row echelon form with its rank and pivot columns."""
    a, piv = _rref_array(m.array, m.field.p)
    return MatrixF(m.field, a), len(piv), tuple(piv)


def rank(m: MatrixF) -> int:
    return len(_rref_array(m.array, m.field.p)[1])


def kernel(m: MatrixF) -> "Subspace":
    """The right null space {x : m @ x = 0}, as a row-vector subspace."""
    a, piv = _rref_array(m.array, m.field.p)
    p = m.field.p
    n = m.cols
    pivset = set(piv)
    rows = []
    for f in range(n):
        if f in pivset:
            continue
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = (-a[i, f]) % p
        rows.append(v)
    return Subspace.spanned_by(m.field, n, rows)


def inverse(m: MatrixF) -> MatrixF:
    """Inverse of a square matrix; raises on singular input."""
    n = m.rows
    if m.cols != n:
        raise DimensionMismatchError(f"not square: {m.shape}")
    aug = np.hstack([m.array, np.eye(n, dtype=np.int64)])
    red, piv = _rref_array(aug, m.field.p)
    if list(piv) != list(range(n)):
        raise ValueError("matrix is singular")
    return MatrixF(m.field, red[:, n:])


def complete_to_basis(m: MatrixF) -> MatrixF:
    """Standard basis vectors completing row_space(m) to the full space.

    Pivot-greedy: returns e_i for every non-pivot column i of rref(m), in
    index order, so the choice is canonical.
    """
    _, piv = _rref_array(m.array, m.field.p)
    pivset = set(piv)
    extra = [i for i in range(m.cols) if i not in pivset]
    out = np.zeros((len(extra), m.cols), dtype=np.int64)
    for r, i in enumerate(extra):
        out[r, i] = 1
    return MatrixF(m.field, out)


class Subspace:
    """A subspace of F^n held as a canonical RREF basis with no zero rows.

    Equality is representation equality: two subspaces are equal exactly
    when their canonical bases are identical.
    """

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: PrimeField, ambient: int, basis: MatrixF) -> None:
        if basis.field != field:
            raise FieldMismatchError(f"{basis.field} vs {field}")
        if basis.cols != ambient:
            raise DimensionMismatchError(f"basis width {basis.cols}, ambient {ambient}")
        a = basis.array
        pivots = []
        last = -1
        for i in range(a.shape[0]):
            nz = np.nonzero(a[i])[0]
            if nz.size == 0 or a[i, nz[0]] != 1 or int(nz[0]) <= last:
                raise ValueError("basis is not in canonical reduced echelon form")
            c = int(nz[0])
            if np.count_nonzero(a[:, c]) != 1:
                raise ValueError("basis is not in canonical reduced echelon form")
            pivots.append(c)
            last = c
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def spanned_by(cls, field: PrimeField, ambient: int, rows) -> "Subspace":
        m = rows if isinstance(rows, MatrixF) else MatrixF.from_rows(field, rows, cols=ambient)
        if m.cols != ambient:
            raise DimensionMismatchError(f"rows have width {m.cols}, ambient {ambient}")
        red, rk, _ = rref(m)
        return cls(field, ambient, MatrixF(field, red.array[:rk]))

    @classmethod
    def zero(cls, field: PrimeField, ambient: int) -> "Subspace":
        return cls(field, ambient, MatrixF.zeros(field, 0, ambient))

    @classmethod
    def full(cls, field: PrimeField, ambient: int) -> "Subspace":
        return cls(field, ambient, MatrixF.identity(field, ambient))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def _check_mate(self, other: "Subspace") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if self.ambient != other.ambient:
            raise DimensionMismatchError(f"ambients {self.ambient} vs {other.ambient}")

    def contains(self, vec) -> bool:
        v = self.field.residues(vec).copy()
        if v.shape != (self.ambient,):
            raise DimensionMismatchError(f"vector length {v.shape}, ambient {self.ambient}")
        p = self.field.p
        a = self.basis.array
        for i, c in enumerate(self.pivots):
            if v[c]:
                v = (v - v[c] * a[i]) % p
        return not v.any()

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_mate(other)
        stacked = np.vstack([self.basis.array, other.basis.array])
        return Subspace.spanned_by(self.field, self.ambient, MatrixF(self.field, stacked))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_mate(other)
        checks = np.vstack([self.orthogonal().basis.array, other.orthogonal().basis.array])
        return kernel(MatrixF(self.field, checks))

    def orthogonal(self) -> "Subspace":
        """All vectors with zero dot product against every basis row."""
        return kernel(self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient == other.ambient
                and self.basis == other.basis)

    def __repr__(self) -> str:
        return f"<subspace dim {self.dim} of {self.field!r}^{self.ambient}>"
