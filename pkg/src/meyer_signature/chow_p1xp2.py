"""
Cohomology ring of P^1 x P^2 and Chern numbers of hypersurfaces in it.

The ring is Z[xi1, xi2] / (xi1^2, xi2^3); xi1 and xi2 are the pullbacks of the
hyperplane classes of the two factors.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .errors import ZeroBidegree
from .exact_linalg import format_rational

logger = logging.getLogger(__name__)

MAX_XI1 = 1
MAX_XI2 = 2


class ChowClass:
    """Element of Z[xi1, xi2] / (xi1^2, xi2^3), stored as ``{(i, j): coefficient}``."""

    __slots__ = ("_coeff",)

    def __init__(self, coeff: Mapping[tuple[int, int], int] | None = None):
        terms = {}
        for (i, j), c in (coeff or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"Negative exponent in monomial xi1^{i} xi2^{j}")
            if not isinstance(c, int):
                raise TypeError(f"Coefficients are integers, got {c!r}")
            if i <= MAX_XI1 and j <= MAX_XI2 and c != 0:
                terms[(i, j)] = terms.get((i, j), 0) + c
        self._coeff = MappingProxyType({k: v for k, v in terms.items() if v != 0})

    @property
    def coeff(self) -> Mapping[tuple[int, int], int]:
        return self._coeff

    def __getitem__(self, monomial: tuple[int, int]) -> int:
        return self._coeff.get(monomial, 0)

    def __add__(self, other) -> ChowClass:
        other = _as_class(other)
        if other is None:
            return NotImplemented
        keys = self._coeff.keys() | other._coeff.keys()
        return ChowClass({k: self[k] + other[k] for k in keys})

    __radd__ = __add__

    def __neg__(self) -> ChowClass:
        return ChowClass({k: -v for k, v in self._coeff.items()})

    def __sub__(self, other) -> ChowClass:
        other = _as_class(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> ChowClass:
        other = _as_class(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> ChowClass:
        other = _as_class(other)
        if other is None:
            return NotImplemented
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> ChowClass:
        if exponent < 0:
            raise ValueError(f"Exponent must be non-negative, got {exponent}")
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = _as_class(other)
        if other is None:
            return NotImplemented
        return dict(self._coeff) == dict(other._coeff)

    def __hash__(self) -> int:
        return hash(frozenset(self._coeff.items()))

    def __repr__(self) -> str:
        if not self._coeff:
            return "ChowClass(0)"
        terms = []
        for (i, j), c in sorted(self._coeff.items()):
            monomial = "*".join(
                f"xi{n}" + (f"^{e}" if e > 1 else "") for n, e in ((1, i), (2, j)) if e
            )
            terms.append(f"{c}*{monomial}" if monomial else str(c))
        return f"ChowClass({' + '.join(terms)})"


def _as_class(value) -> ChowClass | None:
    if isinstance(value, ChowClass):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return ChowClass({(0, 0): value})
    return None


ONE = ChowClass({(0, 0): 1})
XI1 = ChowClass({(1, 0): 1})
XI2 = ChowClass({(0, 1): 1})


def multiply(u: ChowClass, v: ChowClass) -> ChowClass:
    product: dict[tuple[int, int], int] = {}
    for (i1, j1), a in u.coeff.items():
        for (i2, j2), b in v.coeff.items():
            i, j = i1 + i2, j1 + j2
            if i <= MAX_XI1 and j <= MAX_XI2:
                product[(i, j)] = product.get((i, j), 0) + a * b
    return ChowClass(product)


def degree(u: ChowClass) -> int:
    """Pairing with the fundamental class: the coefficient of xi1 xi2^2."""
    return u[(MAX_XI1, MAX_XI2)]


def chern_classes_ambient() -> ChowClass:
    """Total Chern class (1 + xi1)^2 (1 + xi2)^3 of P^1 x P^2."""
    return (ONE + XI1) ** 2 * (ONE + XI2) ** 3


def _graded_part(u: ChowClass, k: int) -> ChowClass:
    return ChowClass({(i, j): c for (i, j), c in u.coeff.items() if i + j == k})


@dataclass(frozen=True, slots=True)
class SignatureValue:
    """An exact signature together with whether it is an integer."""

    value: Fraction
    integral: bool

    @classmethod
    def of(cls, value: Fraction | int) -> SignatureValue:
        value = Fraction(value)
        return cls(value, value.denominator == 1)

    def __str__(self) -> str:
        return format_rational(self.value)


def hirzebruch_signature(c1_squared: int, c2: int) -> SignatureValue:
    """``(c1^2 - 2 c2) / 3``; a non-integral value means the inputs are not Chern numbers of a surface."""
    result = SignatureValue.of(Fraction(c1_squared - 2 * c2, 3))
    if not result.integral:
        logger.warning(
            "Hirzebruch quotient (%d - 2*%d)/3 = %s is not an integer", c1_squared, c2, result
        )
    return result


@dataclass(frozen=True, slots=True)
class ChernNumbers:
    c1_squared: int
    c2: int
    signature: Fraction
    integral: bool = True


def hypersurface_chern(a: int, b: int) -> ChernNumbers:
    """
    Chern numbers of a smooth hypersurface M of bidegree (a, b) by adjunction.

    c1(M) = c1(P^1 x P^2) - [M] restricted to M, and
    c2(M) = c2(P^1 x P^2) - c1(M) [M]; top classes are integrated against [M].
    """
    if a < 0 or b < 0:
        raise ValueError(f"Bidegree must be nonnegative, got ({a}, {b})")
    if a == 0 and b == 0:
        raise ZeroBidegree("Bidegree (0, 0) does not define a hypersurface")

    ambient = chern_classes_ambient()
    normal = a * XI1 + b * XI2
    c1 = _graded_part(ambient, 1) - normal
    c2 = _graded_part(ambient, 2) - c1 * normal

    c1_squared = degree(c1 * c1 * normal)
    euler = degree(c2 * normal)
    signature = hirzebruch_signature(c1_squared, euler)

    return ChernNumbers(c1_squared, euler, signature.value, signature.integral)


def pencil_chern(d: int) -> ChernNumbers:
    """Chern numbers of the total space of a pencil of degree-d plane curves."""
    return hypersurface_chern(1, d)
