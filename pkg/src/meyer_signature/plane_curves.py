"""
Homogeneous plane-curve polynomials over the Gaussian rationals.

Singular points are never searched for: callers supply a witness point and
this module verifies and classifies it.

All coordinate vectors indexed by monomials use the graded-lexicographic
order with x > y > z, e.g. ``x^2, xy, xz, y^2, yz, z^2`` in degree 2.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Iterator, Mapping, Sequence
from enum import StrEnum
from fractions import Fraction
from functools import cache
from types import MappingProxyType

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from .errors import (
    DegreeTooSmall,
    NotASingularPoint,
    ParseError,
    SingularMatrix,
    WrongDegree,
)
from .exact_linalg import (
    GaussianRational,
    RationalMatrix,
    Scalar,
    determinant,
    invert,
    kernel_basis,
)

logger = logging.getLogger(__name__)

type Exponent = tuple[int, int, int]
type _Terms = dict[Exponent, GaussianRational]

VARIABLES = ("x", "y", "z")
ZERO = GaussianRational(0)
ONE = GaussianRational(1)


@cache
def monomials(d: int) -> tuple[Exponent, ...]:
    """Exponent triples of degree ``d`` in graded-lexicographic order (x > y > z)."""
    return tuple(
        (l, m, d - l - m) for l in range(d, -1, -1) for m in range(d - l, -1, -1)
    )


class SingularityClass(StrEnum):
    SMOOTH = "smooth"
    NODAL = "nodal"
    DEGENERATE = "degenerate"


class ProjPoint:
    """A point ``[x : y : z]`` of P^2; equality is up to scaling."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        self.x, self.y, self.z = (GaussianRational.coerce(c) for c in (x, y, z))
        if not (self.x or self.y or self.z):
            raise ValueError("[0 : 0 : 0] is not a point of P^2")

    @property
    def coords(self) -> tuple[GaussianRational, GaussianRational, GaussianRational]:
        return (self.x, self.y, self.z)

    def __iter__(self) -> Iterator[GaussianRational]:
        return iter(self.coords)

    def scaled(self, factor) -> ProjPoint:
        return ProjPoint(*(factor * c for c in self.coords))

    def normalized(self) -> tuple[GaussianRational, ...]:
        """Coordinates divided by the first nonzero one."""
        first = next(c for c in self.coords if c)
        return tuple(c / first for c in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self) -> int:
        return hash(self.normalized())

    def __str__(self) -> str:
        return f"[{' : '.join(str(c) for c in self.coords)}]"

    def __repr__(self) -> str:
        return f"ProjPoint{self}"


def _mul_terms(a: _Terms, b: _Terms) -> _Terms:
    product: _Terms = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            product[e] = product.get(e, ZERO) + ca * cb
    return {e: c for e, c in product.items() if c}


def _add_terms(a: _Terms, b: _Terms, scale: GaussianRational = ONE) -> _Terms:
    result = dict(a)
    for e, c in b.items():
        result[e] = result.get(e, ZERO) + scale * c
    return {e: c for e, c in result.items() if c}


def _partial(terms: _Terms, var: int) -> _Terms:
    result: _Terms = {}
    for e, c in terms.items():
        if e[var] > 0:
            lowered = tuple(k - 1 if i == var else k for i, k in enumerate(e))
            result[lowered] = c * e[var]  # type: ignore[index]
    return result


def _evaluate(terms: _Terms, coords: Sequence[GaussianRational]) -> GaussianRational:
    total = ZERO
    for (l, m, n), c in terms.items():
        total = total + c * coords[0] ** l * coords[1] ** m * coords[2] ** n
    return total


class HomogPoly:
    """A nonzero homogeneous polynomial of degree ``d`` in x, y, z."""

    __slots__ = ("_degree", "_coefficients")

    def __init__(self, degree: int, coefficients: Mapping[Exponent, Scalar | int]):
        if degree < 1:
            raise WrongDegree(f"Degree must be at least 1, got {degree}")

        terms: _Terms = {}
        for exponent, c in coefficients.items():
            exponent = tuple(exponent)
            if len(exponent) != 3 or any(k < 0 for k in exponent) or sum(exponent) != degree:
                raise ValueError(f"Exponent {exponent} is not a monomial of degree {degree}")
            value = GaussianRational.coerce(c)
            if value:
                terms[exponent] = value  # type: ignore[index]

        if not terms:
            raise ValueError("The zero polynomial does not define a curve")

        self._degree = degree
        self._coefficients = MappingProxyType(terms)

    @classmethod
    def from_text(cls, text: str) -> HomogPoly:
        return parse_poly(text)

    @classmethod
    def variable(cls, name: str) -> HomogPoly:
        index = VARIABLES.index(name)
        return cls(1, {tuple(int(i == index) for i in range(3)): 1})  # type: ignore[dict-item]

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def coefficients(self) -> Mapping[Exponent, GaussianRational]:
        return self._coefficients

    def coefficient(self, exponent: Exponent) -> GaussianRational:
        return self._coefficients.get(tuple(exponent), ZERO)  # type: ignore[arg-type]

    def coefficient_vector(self) -> tuple[GaussianRational, ...]:
        """Coefficients in the global monomial order."""
        return tuple(self.coefficient(e) for e in monomials(self._degree))

    def __add__(self, other: HomogPoly) -> HomogPoly:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if other.degree != self.degree:
            raise WrongDegree(f"Cannot add degree {self.degree} and degree {other.degree}")
        return HomogPoly(self.degree, _add_terms(dict(self._coefficients), dict(other._coefficients)))

    def __sub__(self, other: HomogPoly) -> HomogPoly:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if other.degree != self.degree:
            raise WrongDegree(f"Cannot subtract degree {other.degree} from degree {self.degree}")
        return HomogPoly(
            self.degree, _add_terms(dict(self._coefficients), dict(other._coefficients), -ONE)
        )

    def __neg__(self) -> HomogPoly:
        return HomogPoly(self.degree, {e: -c for e, c in self._coefficients.items()})

    def __mul__(self, other) -> HomogPoly:
        if isinstance(other, HomogPoly):
            return HomogPoly(
                self.degree + other.degree,
                _mul_terms(dict(self._coefficients), dict(other._coefficients)),
            )
        if isinstance(other, (int, Fraction, GaussianRational)):
            if not other:
                raise ValueError(f"Scaling by {other} gives the zero polynomial")
            return HomogPoly(self.degree, {e: other * c for e, c in self._coefficients.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> HomogPoly:
        if exponent < 1:
            raise ValueError(f"Exponent must be positive, got {exponent}")
        result = self
        for _ in range(exponent - 1):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self.degree == other.degree and dict(self._coefficients) == dict(other._coefficients)

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self._coefficients.items())))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"HomogPoly({format_poly(self)!r})"


def format_poly(F: HomogPoly) -> str:
    """Render in the CLI text format, terms in the global monomial order."""
    terms = []
    for exponent in monomials(F.degree):
        c = F.coefficient(exponent)
        if not c:
            continue
        factors = [
            name if k == 1 else f"{name}^{k}"
            for name, k in zip(VARIABLES, exponent)
            if k
        ]
        coefficient = str(c) if c.is_real else f"({c})"
        terms.append("*".join([coefficient, *factors]))
    return " + ".join(terms)


_SYMBOLS = {name: sympy.Symbol(name) for name in VARIABLES}
_PARSE_LOCALS = {**_SYMBOLS, "i": sympy.I, "I": sympy.I}
_TRANSFORMATIONS = standard_transformations + (convert_xor,)
# Anything outside this alphabet is rejected before sympy evaluates the text.
_ALLOWED_TEXT = re.compile(r"[0-9xyziI+\-*/^(). \t\n]*")


def _parse_expression(text: str) -> sympy.Expr:
    cleaned = text.replace("−", "-").strip()
    if not cleaned:
        raise ParseError("Empty expression")
    if not _ALLOWED_TEXT.fullmatch(cleaned):
        raise ParseError(f"Unexpected characters in {text!r}")
    if re.search(r"[0-9xyziI]{2,}", re.sub(r"[0-9]+", "0", cleaned)):
        raise ParseError(f"Unknown identifier in {text!r}")
    try:
        expr = parse_expr(cleaned, local_dict=dict(_PARSE_LOCALS), transformations=_TRANSFORMATIONS)
    except Exception as e:
        raise ParseError(f"Cannot parse {text!r}: {e}") from e
    if not isinstance(expr, sympy.Expr) or expr.has(sympy.Float):
        raise ParseError(f"{text!r} is not an exact expression")
    return expr


def _to_gaussian(value: sympy.Expr) -> GaussianRational:
    re, im = value.as_real_imag()
    if not (re.is_Rational and im.is_Rational):
        raise ParseError(f"{value} is not a Gaussian rational")
    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``p/q`` or ``p/q+r/s*i``."""
    expr = _parse_expression(text)
    if expr.free_symbols:
        raise ParseError(f"{text!r} is not a constant")
    return _to_gaussian(expr)


def parse_poly(text: str) -> HomogPoly:
    """
    Parse a polynomial such as ``y^2*z - x^2*(x+z)`` exactly.

    Coefficients may be Gaussian rationals written with ``i`` (or ``I``).
    """
    expr = _parse_expression(text)
    try:
        poly = sympy.Poly(expr, *_SYMBOLS.values(), domain="QQ_I")
    except Exception as e:
        raise ParseError(f"{text!r} is not a polynomial in x, y, z over Q(i): {e}") from e

    if poly.is_zero:
        raise ParseError("The zero polynomial does not define a curve")
    if not poly.is_homogeneous:
        raise ParseError(f"{text!r} is not homogeneous")

    d = poly.total_degree()
    if d < 1:
        raise ParseError(f"{text!r} is a constant")

    return HomogPoly(d, {tuple(monom): _to_gaussian(c) for monom, c in poly.terms()})


def parse_point(text: str) -> ProjPoint:
    """Parse ``x,y,z`` (or ``[x:y:z]``) into a point."""
    cleaned = text.strip().removeprefix("[").removesuffix("]")
    parts = cleaned.replace(":", ",").split(",")
    if len(parts) != 3:
        raise ParseError(f"A point needs three coordinates, got {text!r}")
    try:
        return ProjPoint(*(parse_scalar(part) for part in parts))
    except ValueError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e)) from e


def evaluate(F: HomogPoly, p: ProjPoint) -> GaussianRational:
    return _evaluate(dict(F.coefficients), p.coords)


def gradient(F: HomogPoly, p: ProjPoint) -> tuple[GaussianRational, GaussianRational, GaussianRational]:
    terms = dict(F.coefficients)
    fx, fy, fz = (_evaluate(_partial(terms, var), p.coords) for var in range(3))
    return fx, fy, fz


def is_singular_point(F: HomogPoly, p: ProjPoint) -> bool:
    return not any(gradient(F, p))


def _chart(p: ProjPoint) -> int:
    # largest modulus, ties broken z > y > x
    best = 2
    for k in (1, 0):
        if p.coords[k].norm() > p.coords[best].norm():
            best = k
    return best


def hessian_determinant(F: HomogPoly, p: ProjPoint) -> tuple[str, GaussianRational]:
    """
    Determinant of the 2x2 Hessian of F in the affine chart at p.

    Returns the chart variable that was set to 1 and the determinant.
    """
    k = _chart(p)
    u, v = (i for i in range(3) if i != k)
    affine = tuple(c / p.coords[k] for c in p.coords)

    terms = dict(F.coefficients)
    F_u, F_v = _partial(terms, u), _partial(terms, v)
    H_uu = _evaluate(_partial(F_u, u), affine)
    H_uv = _evaluate(_partial(F_u, v), affine)
    H_vv = _evaluate(_partial(F_v, v), affine)

    det = H_uu * H_vv - H_uv * H_uv
    logger.debug("Hessian in chart %s = 1 at %s: det = %s", VARIABLES[k], p, det)
    return VARIABLES[k], det


def classify_double_point(F: HomogPoly, p: ProjPoint) -> SingularityClass:
    if not is_singular_point(F, p):
        raise NotASingularPoint(f"The gradient of {F} does not vanish at {p}")

    _, det = hessian_determinant(F, p)
    return SingularityClass.NODAL if det else SingularityClass.DEGENERATE


def classify_point(F: HomogPoly, p: ProjPoint) -> SingularityClass:
    if not is_singular_point(F, p):
        return SingularityClass.SMOOTH
    return classify_double_point(F, p)


def veronese(p: ProjPoint, d: int) -> tuple[GaussianRational, ...]:
    if d < 1:
        raise DegreeTooSmall(f"Degree must be at least 1, got {d}")
    x, y, z = p.coords
    return tuple(x**l * y**m * z**n for l, m, n in monomials(d))


def discriminant_tangent_hyperplane(p: ProjPoint, d: int) -> tuple[GaussianRational, ...]:
    """
    Coefficients of the hyperplane tangent to the discriminant at a curve
    whose unique (nodal) singular point is ``p``.

    The caller asserts that hypothesis; it cannot be checked from ``p`` alone.
    """
    if d < 2:
        raise DegreeTooSmall(f"Degree must be at least 2, got {d}")
    return veronese(p, d)


def on_hyperplane(F: HomogPoly, hyperplane: Sequence[GaussianRational]) -> bool:
    coefficients = F.coefficient_vector()
    if len(coefficients) != len(hyperplane):
        raise WrongDegree(
            f"Hyperplane has {len(hyperplane)} coordinates, degree {F.degree} needs {len(coefficients)}"
        )
    return not sum((a * b for a, b in zip(coefficients, hyperplane)), ZERO)


def _as_matrix(A: RationalMatrix | Sequence[Sequence]) -> RationalMatrix:
    if isinstance(A, RationalMatrix):
        return A
    return RationalMatrix(A, 3)


def gl3_act(A: RationalMatrix | Sequence[Sequence], F: HomogPoly) -> HomogPoly:
    """``(A . F)(v) = F(A^-1 v)``, i.e. ``F((x, y, z) . A^-T)``."""
    A = _as_matrix(A)
    if A.shape != (3, 3):
        raise ValueError(f"Expected a 3x3 matrix, got {A.rows}x{A.cols}")
    if determinant(A) == 0:
        raise SingularMatrix("GL(3) acts only by invertible matrices")

    B = invert(A)
    linear_forms = [
        {
            tuple(int(i == j) for i in range(3)): GaussianRational.coerce(B[row, j])
            for j in range(3)
            if B[row, j] != 0
        }
        for row in range(3)
    ]

    powers: dict[tuple[int, int], _Terms] = {}

    def power(var: int, k: int) -> _Terms:
        if (var, k) not in powers:
            powers[var, k] = (
                {(0, 0, 0): ONE} if k == 0 else _mul_terms(power(var, k - 1), linear_forms[var])  # type: ignore[arg-type]
            )
        return powers[var, k]

    result: _Terms = {}
    for (l, m, n), c in F.coefficients.items():
        term = _mul_terms(_mul_terms(power(0, l), power(1, m)), power(2, n))
        result = _add_terms(result, term, c)

    return HomogPoly(F.degree, result)


def conic_matrix(F: HomogPoly) -> RationalMatrix:
    """Symmetric S with ``F(v) = v^T S v``."""
    if F.degree != 2:
        raise WrongDegree(f"Expected a conic, got degree {F.degree}")

    def entry(i: int, j: int) -> GaussianRational:
        exponent = tuple((i == k) + (j == k) for k in range(3))
        c = F.coefficient(exponent)  # type: ignore[arg-type]
        return c if i == j else c / 2

    return RationalMatrix([[entry(i, j) for j in range(3)] for i in range(3)], 3)


def conic_determinant(F: HomogPoly) -> Scalar:
    return determinant(conic_matrix(F))


def conic_is_smooth(F: HomogPoly) -> bool:
    return conic_determinant(F) != 0


def conic_act(A: RationalMatrix | Sequence[Sequence], S: RationalMatrix) -> RationalMatrix:
    """The GL(3) action on symmetric matrices, ``A^-T S A^-1``."""
    A = _as_matrix(A)
    if determinant(A) == 0:
        raise SingularMatrix("GL(3) acts only by invertible matrices")
    B = invert(A)
    return B.T @ S @ B


def singular_points_of_conic(F: HomogPoly) -> list[ProjPoint]:
    """Basis of the null space of the conic matrix, as points."""
    return [ProjPoint(*(v[i, 0] for i in range(3))) for v in kernel_basis(conic_matrix(F))]


def type_ii_family(s: Scalar | int = 0) -> HomogPoly:
    """``z^3 x + y^2 x^2 + y^4 + s^6 x^4``; at s = 0 it has a cusp at [1:0:0]."""
    s = GaussianRational.coerce(s)
    return HomogPoly(
        4,
        {(1, 0, 3): 1, (2, 2, 0): 1, (0, 4, 0): 1, (4, 0, 0): s**6},
    )


def hyperelliptic_family(F: HomogPoly, s: Scalar | int = 0) -> HomogPoly:
    """``(yz - x^2)^2 + s^2 F`` for a quartic F."""
    if F.degree != 4:
        raise WrongDegree(f"Expected a quartic, got degree {F.degree}")
    double_conic = HomogPoly(2, {(0, 1, 1): 1, (2, 0, 0): -1}) ** 2
    s = GaussianRational.coerce(s)
    if not s:
        return double_conic
    return HomogPoly(4, _add_terms(dict(double_conic.coefficients), dict(F.coefficients), s * s))
