from fractions import Fraction

import pytest

from meyer_signature.errors import DegreeTooSmall, LassoUndefined
from meyer_signature.numeric_invariants import (
    TRIVIAL_PI_REASON,
    degree_profile,
    diagonal_loop_image,
    discriminant_degree,
    euler_number,
    genus,
    h1_complement,
    h1_pi,
    lasso_value,
    moduli_dim,
)


def test_quartic_profile():
    profile = degree_profile(4)
    assert profile.genus == 3
    assert profile.ambient_dim_N == 14
    assert profile.discriminant_degree == 27
    assert profile.h1_order == 9
    assert profile.h1_complement_order == 27
    assert profile.euler_number == 19
    assert profile.lasso_value == Fraction(-5, 9)
    assert profile.lasso_reason is None


def test_conic_profile():
    profile = degree_profile(2)
    assert profile.genus == 0
    assert profile.h1_order == 1
    assert profile.lasso_value is None
    assert profile.lasso_reason == TRIVIAL_PI_REASON


@pytest.mark.parametrize("d,expected", [(2, 0), (3, 1), (4, 3), (5, 6), (6, 10)])
def test_genus(d, expected):
    assert genus(d) == expected


def test_moduli_dim():
    assert [moduli_dim(d) for d in (2, 3, 4)] == [5, 9, 14]


@pytest.mark.parametrize("d", range(2, 31))
def test_h1_pi(d):
    expected = 3 * (d - 1) ** 2 if d % 3 == 0 else (d - 1) ** 2
    assert h1_pi(d) == expected
    assert h1_complement(d) % h1_pi(d) == 0


@pytest.mark.parametrize("d,expected", [(2, 1), (3, 12), (4, 9), (6, 75)])
def test_h1_pi_values(d, expected):
    assert h1_pi(d) == expected


def test_diagonal_loop_image():
    assert diagonal_loop_image(3) == 0
    assert diagonal_loop_image(4) == 9
    assert diagonal_loop_image(2) == 2


def test_lasso_value():
    assert lasso_value(3) == Fraction(-2, 3)
    assert lasso_value(4) == Fraction(-5, 9)
    with pytest.raises(LassoUndefined, match="Pi\\(2\\) is trivial"):
        lasso_value(2)


@pytest.mark.parametrize("d", range(3, 51))
def test_pencil_sum(d):
    # a generic pencil has 3 (d-1)^2 lassos, and the signature of its total space is 1 - d^2
    assert discriminant_degree(d) * lasso_value(d) == 1 - d * d


@pytest.mark.parametrize("d", range(2, 51))
def test_singular_fiber_count(d):
    assert euler_number(d) - 2 * (2 - 2 * genus(d)) == discriminant_degree(d)


@pytest.mark.parametrize(
    "fn", [genus, moduli_dim, discriminant_degree, h1_pi, lasso_value, degree_profile]
)
def test_degree_too_small(fn):
    with pytest.raises(DegreeTooSmall):
        fn(1)
