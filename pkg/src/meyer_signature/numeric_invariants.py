from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeTooSmall, LassoUndefined

TRIVIAL_PI_REASON = "Pi(2) is trivial"


def _check_degree(d: int, minimum: int = 2):
    if d < minimum:
        raise DegreeTooSmall(f"Degree must be at least {minimum}, got {d}")


def genus(d: int) -> int:
    _check_degree(d)
    return (d - 1) * (d - 2) // 2


def moduli_dim(d: int) -> int:
    """Dimension N of the projective space P(d) of degree-d curves."""
    _check_degree(d)
    return (d + 2) * (d + 1) // 2 - 1


def discriminant_degree(d: int) -> int:
    _check_degree(d)
    return 3 * (d - 1) ** 2


def h1_complement(d: int) -> int:
    """Order of the cyclic group H_1 of the complement of the discriminant."""
    return discriminant_degree(d)


def euler_number(d: int) -> int:
    """c_2 of the total space of a generic pencil of degree-d curves."""
    _check_degree(d)
    return d * d + 3


def diagonal_loop_image(d: int) -> int:
    """
    Image of the generator of H_1(PGL(3)) = Z/3 in H_1 of the complement.

    The scalar loop in GL(3) acts on a form by ``t^-d``, which lands on
    ``d (d-1)^2`` modulo ``3 (d-1)^2`` (up to a sign that does not change
    the subgroup it generates).
    """
    _check_degree(d)
    return d * (d - 1) ** 2 % h1_complement(d)


def h1_pi(d: int) -> int:
    """
    Order of H_1(Pi(d)), the cokernel of the diagonal loop map.
    """
    modulus = h1_complement(d)
    image_order = modulus // math.gcd(diagonal_loop_image(d), modulus)
    return modulus // image_order


def lasso_value(d: int) -> Fraction:
    """Value of the Meyer function on a lasso around the discriminant."""
    _check_degree(d)
    if d < 3:
        raise LassoUndefined(f"No lasso value in degree {d}: {TRIVIAL_PI_REASON}")
    return Fraction(-(d + 1), 3 * (d - 1))


@dataclass(frozen=True, slots=True)
class DegreeProfile:
    d: int
    genus: int
    ambient_dim_N: int
    discriminant_degree: int
    h1_order: int
    h1_complement_order: int
    euler_number: int
    lasso_value: Fraction | None
    lasso_reason: str | None = None


def degree_profile(d: int) -> DegreeProfile:
    try:
        lasso, reason = lasso_value(d), None
    except LassoUndefined:
        lasso, reason = None, TRIVIAL_PI_REASON

    return DegreeProfile(
        d=d,
        genus=genus(d),
        ambient_dim_N=moduli_dim(d),
        discriminant_degree=discriminant_degree(d),
        h1_order=h1_pi(d),
        h1_complement_order=h1_complement(d),
        euler_number=euler_number(d),
        lasso_value=lasso,
        lasso_reason=reason,
    )
