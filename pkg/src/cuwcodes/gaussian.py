"""Exact matrices over the Gaussian integers.

Weight matrices, gamma families and representation images all have entries
in Z[i] (in practice {0, +/-1, +/-i}), so every algebraic condition the
verifier cares about (unitarity, anticommutation, fill rules) is an exact
integer identity.  This module keeps the arithmetic exact: matrices store
separate integer real/imaginary planes, products use integer matmuls, and
equality is equality, never a tolerance.

numpy int64 is the fast path.  Any operation whose worst-case entry could
reach the int64 range falls back to arbitrary-precision Python integers
(object dtype), so results are exact for any input size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# A product entry is bounded by 2 * inner_dim * max|a| * max|b|; staying
# under 2**62 leaves the int64 accumulator a factor-of-two margin.
_INT64_SAFE = 2**62


@dataclass(frozen=True, slots=True)
class GaussianInt:
    """A Gaussian integer re + im*i with exact Python-int parts."""

    re: int
    im: int

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: "GaussianInt | int") -> "GaussianInt":
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        if not isinstance(other, GaussianInt):
            return NotImplemented
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        unit = "i" if abs(self.im) == 1 else f"{abs(self.im)}i"
        imag = unit if self.im > 0 else f"-{unit}"
        if self.re == 0:
            return imag
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{unit}"


def _coerce_entry(value) -> tuple[int, int]:
    if isinstance(value, GaussianInt):
        return value.re, value.im
    if isinstance(value, bool):
        raise TypeError("matrix entries must be integers, not bool")
    if isinstance(value, int):
        return value, 0
    if isinstance(value, (tuple, list)) and len(value) == 2:
        re, im = value
        if isinstance(re, int) and isinstance(im, int) and not isinstance(re, bool) and not isinstance(im, bool):
            return re, im
    raise TypeError(f"cannot use {value!r} as a Gaussian-integer entry")


class GaussianMatrix:
    """Immutable matrix with Gaussian-integer entries and exact operations."""

    __slots__ = ("_re", "_im")

    def __init__(self, re: np.ndarray, im: np.ndarray):
        re = np.asarray(re)
        im = np.asarray(im)
        if re.ndim != 2 or re.shape != im.shape:
            raise ValueError("real and imaginary planes must share a 2-d shape")
        if re.shape[0] < 1 or re.shape[1] < 1:
            raise ValueError("matrix must have at least one row and one column")
        re = re.copy()
        im = im.copy()
        re.setflags(write=False)
        im.setflags(write=False)
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)

    # construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "GaussianMatrix":
        """Build from nested rows of GaussianInt, int, or (re, im) pairs."""
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        ncols = len(rows[0])
        re_rows, im_rows = [], []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            pairs = [_coerce_entry(v) for v in row]
            re_rows.append([p[0] for p in pairs])
            im_rows.append([p[1] for p in pairs])
        top = max(
            (max(abs(v) for v in r) for r in re_rows + im_rows), default=0
        )
        dtype = object if top >= _INT64_SAFE else np.int64
        return cls(np.array(re_rows, dtype=dtype), np.array(im_rows, dtype=dtype))

    @classmethod
    def identity(cls, n: int) -> "GaussianMatrix":
        return cls(np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GaussianMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def diag(cls, entries: Iterable) -> "GaussianMatrix":
        pairs = [_coerce_entry(v) for v in entries]
        n = len(pairs)
        re = np.zeros((n, n), dtype=np.int64)
        im = np.zeros((n, n), dtype=np.int64)
        for k, (r, i) in enumerate(pairs):
            re[k, k] = r
            im[k, k] = i
        return cls(re, im)

    # inspection -------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._re.shape[0]

    @property
    def cols(self) -> int:
        return self._re.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._re.shape

    def entry(self, i: int, j: int) -> GaussianInt:
        return GaussianInt(int(self._re[i, j]), int(self._im[i, j]))

    def to_pairs(self) -> list[list[list[int]]]:
        """Row-major nested [re, im] pairs, JSON-ready."""
        return [
            [[int(self._re[i, j]), int(self._im[i, j])] for j in range(self.cols)]
            for i in range(self.rows)
        ]

    def to_complex(self) -> np.ndarray:
        return self._re.astype(np.complex128) + 1j * self._im.astype(np.complex128)

    def max_abs(self) -> int:
        return max(int(max(abs(self._re.max()), abs(self._re.min()))),
                   int(max(abs(self._im.max()), abs(self._im.min()))))

    # arithmetic -------------------------------------------------------

    def _object_planes(self) -> tuple[np.ndarray, np.ndarray]:
        return self._re.astype(object), self._im.astype(object)

    def __add__(self, other: "GaussianMatrix") -> "GaussianMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        if (self._re.dtype == object or other._re.dtype == object
                or self.max_abs() + other.max_abs() >= _INT64_SAFE):
            ar, ai = self._object_planes()
            br, bi = other._object_planes()
            return GaussianMatrix(ar + br, ai + bi)
        return GaussianMatrix(self._re + other._re, self._im + other._im)

    def __sub__(self, other: "GaussianMatrix") -> "GaussianMatrix":
        return self + (-other)

    def __neg__(self) -> "GaussianMatrix":
        return GaussianMatrix(-self._re, -self._im)

    def __mul__(self, scalar: "GaussianInt | int") -> "GaussianMatrix":
        if isinstance(scalar, int):
            scalar = GaussianInt(scalar, 0)
        bound = 2 * self.max_abs() * max(abs(scalar.re), abs(scalar.im), 1)
        if self._re.dtype == object or bound >= _INT64_SAFE:
            ar, ai = self._object_planes()
        else:
            ar, ai = self._re, self._im
        return GaussianMatrix(ar * scalar.re - ai * scalar.im,
                              ar * scalar.im + ai * scalar.re)

    __rmul__ = __mul__

    def __matmul__(self, other: "GaussianMatrix") -> "GaussianMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        bound = 2 * self.cols * max(self.max_abs(), 1) * max(other.max_abs(), 1)
        if (self._re.dtype == object or other._re.dtype == object
                or bound >= _INT64_SAFE):
            ar, ai = self._object_planes()
            br, bi = other._object_planes()
            rr = np.dot(ar, br) - np.dot(ai, bi)
            ri = np.dot(ar, bi) + np.dot(ai, br)
        else:
            rr = self._re @ other._re - self._im @ other._im
            ri = self._re @ other._im + self._im @ other._re
        return GaussianMatrix(rr, ri)

    def conj_transpose(self) -> "GaussianMatrix":
        return GaussianMatrix(self._re.T, -self._im.T)

    @property
    def H(self) -> "GaussianMatrix":
        return self.conj_transpose()

    def kron(self, other: "GaussianMatrix") -> "GaussianMatrix":
        bound = 2 * max(self.max_abs(), 1) * max(other.max_abs(), 1)
        if (self._re.dtype == object or other._re.dtype == object
                or bound >= _INT64_SAFE):
            ar, ai = self._object_planes()
            br, bi = other._object_planes()
        else:
            ar, ai, br, bi = self._re, self._im, other._re, other._im
        return GaussianMatrix(np.kron(ar, br) - np.kron(ai, bi),
                              np.kron(ar, bi) + np.kron(ai, br))

    # predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._re.any() and not self._im.any()

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return (self == GaussianMatrix.identity(self.rows))

    def is_unitary(self) -> bool:
        if self.rows != self.cols:
            return False
        return (self @ self.conj_transpose()).is_identity()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussianMatrix):
            return NotImplemented
        return (self.shape == other.shape
                and np.array_equal(self._re, other._re)
                and np.array_equal(self._im, other._im))

    def __hash__(self) -> int:
        flat = tuple(int(v) for v in self._re.ravel()) + tuple(
            int(v) for v in self._im.ravel()
        )
        return hash((self.shape, flat))

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(self.entry(i, j)) for j in range(self.cols))
            for i in range(self.rows)
        )
        return f"GaussianMatrix([{body}])"


def mat_mul(a: GaussianMatrix, b: GaussianMatrix) -> GaussianMatrix:
    """Exact matrix product."""
    return a @ b


def conj_transpose(a: GaussianMatrix) -> GaussianMatrix:
    """Exact conjugate transpose."""
    return a.conj_transpose()


def kron(a: GaussianMatrix, b: GaussianMatrix) -> GaussianMatrix:
    """Exact Kronecker product."""
    return a.kron(b)
