"""
Meyer's signature cocycle on Sp(2g, Z).

The cocycle is evaluated algebraically: for symplectic A and B let

    V_{A,B} = { (x, y) : (A^-1 - I) x + (B - I) y = 0 }

and pair ``(x, y)`` with ``(x', y')`` by ``(x + y)^T J (I - B) y'``.
``tau(A, B)`` is ``EPSILON`` times the signature of that form.

The global sign cannot be fixed by the cocycle axioms. ``EPSILON = -1`` is
the convention under which ``tau(T, T) = -1`` for the right-handed twist
``T = [[1, 1], [0, 1]]``, which matches the lasso value ``-2/3`` of the
cubic family (a lasso maps to T and ``2 * (-2/3) - (-1/3) = -1``).
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

import numpy as np

from .errors import (
    DimensionMismatch,
    FormNotSymmetric,
    GenusMismatch,
    MissingValue,
    NotSymplectic,
    ZeroVector,
)
from .exact_linalg import RationalMatrix, kernel_basis, symmetric_signature

logger = logging.getLogger(__name__)

EPSILON = -1


@cache
def _standard_form(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=object)
    for i in range(g):
        J[i, g + i] = 1
        J[g + i, i] = -1
    J.flags.writeable = False
    return J


def symplectic_form(g: int) -> RationalMatrix:
    """The block matrix ``J = [[0, I_g], [-I_g, 0]]``."""
    if g < 1:
        raise ValueError(f"Genus must be positive, got {g}")
    return RationalMatrix(_standard_form(g).tolist(), 2 * g)


def _as_int_array(M: Sequence[Sequence[int]] | np.ndarray, g: int) -> np.ndarray:
    array = np.array([list(row) for row in M], dtype=object)
    if array.shape != (2 * g, 2 * g):
        raise DimensionMismatch(
            f"Expected a {2 * g}x{2 * g} matrix for genus {g}, got shape {array.shape}"
        )
    for value in array.flat:
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"Symplectic matrices have integer entries, got {value!r}")
    return array


def _first_violation(M: np.ndarray, g: int) -> tuple[int, int, int, int] | None:
    J = _standard_form(g)
    product = M.T @ J @ M
    for (i, j), value in np.ndenumerate(product):
        if value != J[i, j]:
            return i, j, value, J[i, j]
    return None


def is_symplectic(M: Sequence[Sequence[int]] | np.ndarray, g: int) -> bool:
    """True iff ``M^T J M = J`` exactly."""
    return _first_violation(_as_int_array(M, g), g) is None


@dataclass(frozen=True, slots=True)
class SymplecticMatrix:
    g: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.g < 1:
            raise ValueError(f"Genus must be positive, got {self.g}")

        array = _as_int_array(self.entries, self.g)
        violation = _first_violation(array, self.g)
        if violation is not None:
            i, j, got, expected = violation
            raise NotSymplectic(
                f"M^T J M = J fails at entry ({i}, {j}): got {got}, expected {expected}"
            )

        object.__setattr__(self, "entries", tuple(tuple(row) for row in array.tolist()))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> SymplecticMatrix:
        n = len(rows)
        if n == 0 or n % 2:
            raise DimensionMismatch(f"A symplectic matrix has even positive size, got {n}")
        return cls(n // 2, tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, g: int) -> SymplecticMatrix:
        return cls(g, tuple(tuple(int(i == j) for j in range(2 * g)) for i in range(2 * g)))

    @classmethod
    def standard(cls, g: int) -> SymplecticMatrix:
        return cls(g, tuple(tuple(row) for row in _standard_form(g).tolist()))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=object)

    @property
    def matrix(self) -> RationalMatrix:
        return RationalMatrix(self.entries, 2 * self.g)

    def inverse(self) -> SymplecticMatrix:
        """Exact inverse ``-J M^T J``."""
        J = _standard_form(self.g)
        return SymplecticMatrix(self.g, tuple(map(tuple, (-(J @ self.array.T @ J)).tolist())))

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        return tuple((self.array @ np.array(vector, dtype=object)).tolist())

    def __matmul__(self, other: SymplecticMatrix) -> SymplecticMatrix:
        if not isinstance(other, SymplecticMatrix):
            return NotImplemented
        if self.g != other.g:
            raise GenusMismatch(f"Cannot multiply genus {self.g} by genus {other.g}")
        return SymplecticMatrix(self.g, tuple(map(tuple, (self.array @ other.array).tolist())))

    def __pow__(self, exponent: int) -> SymplecticMatrix:
        base = self if exponent >= 0 else self.inverse()
        result = SymplecticMatrix.identity(self.g)
        for _ in range(abs(exponent)):
            result = result @ base
        return result

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def omega(x: Sequence[int], y: Sequence[int], g: int) -> int:
    """The standard symplectic pairing ``x^T J y``."""
    return int(np.array(x, dtype=object) @ _standard_form(g) @ np.array(y, dtype=object))


def transvection(g: int, v: Sequence[int]) -> SymplecticMatrix:
    """The symplectic transvection ``x -> x + omega(x, v) v`` (image of a Dehn twist)."""
    if len(v) != 2 * g:
        raise DimensionMismatch(f"Expected a vector of length {2 * g}, got {len(v)}")
    if all(c == 0 for c in v):
        raise ZeroVector("Transvection along the zero vector")

    v_col = np.array(v, dtype=object)
    Jv = _standard_form(g) @ v_col
    M = np.identity(2 * g, dtype=int).astype(object) + np.outer(v_col, Jv)
    return SymplecticMatrix(g, tuple(map(tuple, M.tolist())))


@dataclass(frozen=True, slots=True)
class CocycleValue:
    value: int
    g: int

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, CocycleValue):
            return self.value == other.value and self.g == other.g
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)


def meyer_form(A: SymplecticMatrix, B: SymplecticMatrix) -> RationalMatrix:
    """Gram matrix of the Meyer pairing on the kernel basis of V_{A,B}."""
    if A.g != B.g:
        raise GenusMismatch(f"Genus {A.g} and genus {B.g} do not match")

    n = 2 * A.g
    identity = RationalMatrix.identity(n)
    constraint = RationalMatrix.hstack(A.inverse().matrix - identity, B.matrix - identity)
    basis = kernel_basis(constraint)
    if not basis:
        return RationalMatrix.zeros(0, 0)

    V = RationalMatrix.hstack(*basis)
    X = RationalMatrix(V.tolist()[:n], len(basis))
    Y = RationalMatrix(V.tolist()[n:], len(basis))
    pairing = symplectic_form(A.g) @ (identity - B.matrix)

    gram = (X + Y).T @ pairing @ Y
    if not gram.is_symmetric():
        raise FormNotSymmetric(f"Meyer form on V_{{A,B}} is not symmetric: {gram!r}")

    return gram


def meyer_cocycle(A: SymplecticMatrix, B: SymplecticMatrix) -> CocycleValue:
    gram = meyer_form(A, B)
    triple = symmetric_signature(gram)
    logger.debug(
        "dim V_{A,B} = %d, signature triple (%d, %d, %d)",
        gram.rows,
        triple.n_plus,
        triple.n_minus,
        triple.n_zero,
    )
    return CocycleValue(EPSILON * triple.signature, A.g)


def check_meyer_axioms(
    A: SymplecticMatrix,
    B: SymplecticMatrix,
    phi: Mapping[SymplecticMatrix, Fraction | int],
) -> bool:
    """Check ``phi(AB) = phi(A) + phi(B) - tau(A, B)`` exactly."""
    AB = A @ B
    values = {}
    for name, element in (("A", A), ("B", B), ("AB", AB)):
        try:
            values[name] = Fraction(phi[element])
        except KeyError:
            raise MissingValue(f"phi has no value for {name} = {element.tolist()}") from None

    tau = meyer_cocycle(A, B).value
    return values["AB"] == values["A"] + values["B"] - tau
