"""
Exact linear algebra over Q and Q(i).

Matrices are numpy object arrays holding :class:`fractions.Fraction` or
:class:`GaussianRational` entries, so every operation is exact and integers
never overflow.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Self

import numpy as np

from .errors import DimensionMismatch, NotSymmetric, Singular

logger = logging.getLogger(__name__)

type Rational = Fraction


@dataclass(frozen=True, slots=True, eq=False)
class GaussianRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _as_fraction(self.re))
        object.__setattr__(self, "im", _as_fraction(self.im))

    @classmethod
    def coerce(cls, value: int | Fraction | GaussianRational) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        return cls(_as_fraction(value))

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re² + im²``."""
        return self.re * self.re + self.im * self.im

    def __add__(self, other) -> GaussianRational:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> GaussianRational:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> GaussianRational:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> GaussianRational:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> GaussianRational:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        norm = other.norm()
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        numerator = self * other.conjugate()
        return GaussianRational(numerator.re / norm, numerator.im / norm)

    def __rtruediv__(self, other) -> GaussianRational:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> GaussianRational:
        return self

    def __pow__(self, exponent: int) -> GaussianRational:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational(1) / self ** (-exponent)

        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        imag = f"{format_rational(self.im)}*i"
        if self.re == 0:
            return imag
        sign = "" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{imag}"

    def __repr__(self) -> str:
        return f"GaussianRational({self})"


type Scalar = Fraction | GaussianRational


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, GaussianRational) and value.is_real:
        return value.re
    raise TypeError(f"Expected an exact rational value, got {value!r}")


def _coerce_or_none(value) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(Fraction(value))
    return None


def exact_scalar(value) -> Scalar:
    """Normalize ``int`` to ``Fraction``; reject floats and anything inexact."""
    if isinstance(value, bool):
        raise TypeError("Booleans are not matrix entries")
    if isinstance(value, (Fraction, GaussianRational)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"Expected an exact scalar, got {value!r}")


def format_rational(value: Fraction | int) -> str:
    """Render a rational as ``p/q`` (or ``p`` when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, slots=True)
class SignatureTriple:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def dimension(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero

    @property
    def signature(self) -> int:
        return self.n_plus - self.n_minus


class RationalMatrix:
    """Immutable exact matrix."""

    __slots__ = ("_entries",)

    def __init__(self, rows: Iterable[Sequence] | np.ndarray, n_cols: int | None = None):
        rows = [list(row) for row in rows]
        if n_cols is None:
            if not rows:
                raise DimensionMismatch("Cannot infer the column count of an empty matrix")
            n_cols = len(rows[0])

        entries = np.empty((len(rows), n_cols), dtype=object)
        for i, row in enumerate(rows):
            if len(row) != n_cols:
                raise DimensionMismatch(
                    f"Row {i} has {len(row)} entries, expected {n_cols}"
                )
            for j, value in enumerate(row):
                entries[i, j] = exact_scalar(value)

        entries.flags.writeable = False
        self._entries = entries

    @classmethod
    def identity(cls, n: int) -> Self:
        return cls(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> Self:
        return cls([[0] * n_cols for _ in range(n_rows)], n_cols)

    @classmethod
    def column(cls, values: Sequence) -> Self:
        return cls([[v] for v in values], 1)

    @classmethod
    def hstack(cls, *blocks: RationalMatrix) -> Self:
        n_rows = blocks[0].rows
        if any(block.rows != n_rows for block in blocks):
            raise DimensionMismatch("Blocks must have the same number of rows")
        return cls(
            [sum((block.row(i) for block in blocks), []) for i in range(n_rows)],
            sum(block.cols for block in blocks),
        )

    @property
    def rows(self) -> int:
        return self._entries.shape[0]

    @property
    def cols(self) -> int:
        return self._entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._entries.shape

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> RationalMatrix:
        return RationalMatrix(self._entries.T.tolist(), self.rows)

    def row(self, i: int) -> list[Scalar]:
        return list(self._entries[i])

    def tolist(self) -> list[list[Scalar]]:
        return self._entries.tolist()

    def is_symmetric(self) -> bool:
        return self.is_square and bool((self._entries == self._entries.T).all())

    def __getitem__(self, index: tuple[int, int]) -> Scalar:
        return self._entries[index]

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        if self.cols == 0:
            return RationalMatrix.zeros(self.rows, other.cols)
        return RationalMatrix(np.matmul(self._entries, other._entries).tolist(), other.cols)

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"Shapes {self.shape} and {other.shape} differ")
        return RationalMatrix((self._entries + other._entries).tolist(), self.cols)

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"Shapes {self.shape} and {other.shape} differ")
        return RationalMatrix((self._entries - other._entries).tolist(), self.cols)

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix((-self._entries).tolist(), self.cols)

    def __mul__(self, scalar) -> RationalMatrix:
        scalar = exact_scalar(scalar)
        return RationalMatrix((self._entries * scalar).tolist(), self.cols)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and bool((self._entries == other._entries).all())

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self._entries.tolist())
        return f"RationalMatrix([{body}])"


def _work_copy(M: RationalMatrix) -> list[list[Scalar]]:
    return [list(row) for row in M.tolist()]


def rref(M: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    """
    Reduced row echelon form and the pivot columns.

    Columns are scanned left to right; within a column the first nonzero
    entry at or below the current pivot row becomes the pivot, so the
    result is reproducible.
    """
    a = _work_copy(M)
    n_rows, n_cols = M.shape
    pivots: list[int] = []
    r = 0

    for c in range(n_cols):
        if r == n_rows:
            break

        pivot_row = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if pivot_row is None:
            continue

        a[r], a[pivot_row] = a[pivot_row], a[r]
        pivot = a[r][c]
        a[r] = [v / pivot for v in a[r]]

        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [v - factor * w for v, w in zip(a[i], a[r])]

        pivots.append(c)
        r += 1

    return RationalMatrix(a, n_cols), pivots


def matrix_rank(M: RationalMatrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: RationalMatrix) -> list[RationalMatrix]:
    """Basis of the null space of ``M`` as column vectors, one per free column of the RREF."""
    R, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]

    basis = []
    for f in free:
        v: list[Scalar] = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(RationalMatrix.column(v))

    logger.debug("Kernel of a %dx%d matrix has dimension %d", M.rows, M.cols, len(basis))
    return basis


def invert(M: RationalMatrix) -> RationalMatrix:
    """Gauss-Jordan inverse; raises :class:`Singular` if ``det M = 0``."""
    if not M.is_square:
        raise DimensionMismatch(f"Cannot invert a {M.rows}x{M.cols} matrix")

    n = M.rows
    R, pivots = rref(RationalMatrix.hstack(M, RationalMatrix.identity(n)))
    if pivots[:n] != list(range(n)):
        raise Singular("Matrix is singular")

    return RationalMatrix([R.row(i)[n:] for i in range(n)], n)


def determinant(M: RationalMatrix) -> Scalar:
    if not M.is_square:
        raise DimensionMismatch(f"No determinant for a {M.rows}x{M.cols} matrix")

    a = _work_copy(M)
    n = M.rows
    det: Scalar = Fraction(1)

    for c in range(n):
        pivot_row = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            det = -det

        pivot = a[c][c]
        det = det * pivot
        for i in range(c + 1, n):
            if a[i][c] != 0:
                factor = a[i][c] / pivot
                a[i] = [v - factor * w for v, w in zip(a[i], a[c])]

    return det


def _real_form(S: RationalMatrix) -> list[list[Fraction]]:
    if not S.is_square:
        raise NotSymmetric(f"A {S.rows}x{S.cols} matrix is not a symmetric form")
    if not S.is_symmetric():
        raise NotSymmetric("Matrix differs from its transpose")
    return [[_as_fraction(v) for v in row] for row in S.tolist()]


def symmetric_signature(S: RationalMatrix) -> SignatureTriple:
    """
    Inertia of a symmetric form by congruence diagonalization.

    A zero pivot with a nonzero entry ``S[k][j]`` further along its row is
    repaired by the basis change ``e_k -> e_k ± e_j`` (the sign chosen so the
    new pivot is nonzero) before eliminating.
    """
    a = _real_form(S)
    n = len(a)

    def add_scaled(k: int, j: int, c: Fraction):
        # e_k -> e_k + c e_j, applied to rows and columns alike
        a[k] = [v + c * w for v, w in zip(a[k], a[j])]
        for row in a:
            row[k] += c * row[j]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
            if j is None:
                continue
            c = Fraction(1) if a[j][j] + 2 * a[k][j] != 0 else Fraction(-1)
            add_scaled(k, j, c)

        pivot = a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                factor = a[i][k] / pivot
                a[i] = [v - factor * w for v, w in zip(a[i], a[k])]
                for row in a:
                    row[i] -= factor * row[k]

    diagonal = [a[k][k] for k in range(n)]
    return SignatureTriple(
        n_plus=sum(1 for v in diagonal if v > 0),
        n_minus=sum(1 for v in diagonal if v < 0),
        n_zero=sum(1 for v in diagonal if v == 0),
    )


def leading_minor_signature(S: RationalMatrix) -> SignatureTriple:
    """
    Inertia from the signs of the leading principal minors (Jacobi's rule).

    Only applies to nondegenerate forms in general position: raises
    :class:`Singular` if some leading minor vanishes.
    """
    form = RationalMatrix(_real_form(S), S.cols)
    n = form.rows

    minors = [Fraction(1)]
    for k in range(1, n + 1):
        minor = determinant(RationalMatrix([form.row(i)[:k] for i in range(k)], k))
        if minor == 0:
            raise Singular(f"Leading minor of order {k} vanishes")
        minors.append(minor)

    sign_changes = sum(1 for p, q in zip(minors, minors[1:]) if (p > 0) != (q > 0))
    return SignatureTriple(n_plus=n - sign_changes, n_minus=sign_changes, n_zero=0)
