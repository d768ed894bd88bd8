from fractions import Fraction

import pytest

from meyer_signature.errors import LassoUndefined
from meyer_signature.exact_linalg import RationalMatrix
from meyer_signature.fibrations import (
    fiber_intersection_form,
    hyperelliptic_scenario,
    neighborhood_signature,
    pencil_scenario,
    replay,
    type_ii_scenario,
)
from meyer_signature.local_signature import HYPERELLIPTIC, TYPE_II


def test_hyperelliptic_replay():
    derivation = replay(hyperelliptic_scenario())
    assert derivation.signature == -14
    assert derivation.type_i_count == 26
    assert derivation.solved_germ is HYPERELLIPTIC
    assert derivation.solved_loc_sig == Fraction(4, 9)
    assert derivation.consistent


@pytest.mark.parametrize("m", [7, 8, 13, 20])
def test_type_ii_replay(m):
    derivation = replay(type_ii_scenario(m))
    assert derivation.signature == -15 * m + 7
    assert derivation.type_i_count == 27 * m - 12
    assert derivation.solved_germ is TYPE_II
    assert derivation.solved_loc_sig == Fraction(1, 3)
    assert derivation.solved_phi == Fraction(4, 3)
    assert derivation.consistent


def test_type_ii_needs_large_m():
    with pytest.raises(ValueError):
        type_ii_scenario(6)


@pytest.mark.parametrize("d", range(3, 11))
def test_pencil_replay(d):
    derivation = replay(pencil_scenario(d))
    assert derivation.signature == 1 - d * d
    assert derivation.type_i_count == 3 * (d - 1) ** 2
    assert derivation.solved_loc_sig == Fraction(-(d + 1), 3 * (d - 1))
    assert derivation.consistent


def test_pencil_of_conics():
    with pytest.raises(LassoUndefined):
        pencil_scenario(2)


def test_replay_logs(caplog):
    caplog.set_level("INFO", logger="meyer_signature.fibrations")
    replay(hyperelliptic_scenario())
    assert "26 type I fibers" in caplog.text


def test_type_ii_fiber_form():
    form = fiber_intersection_form([1, 1], [[0, 1], [1, 0]])
    assert form == RationalMatrix([[-1, 1], [1, -1]])
    assert neighborhood_signature([1, 1], [[0, 1], [1, 0]]) == TYPE_II.sign_neighborhood == -1


def test_irreducible_fiber_form():
    assert fiber_intersection_form([1], [[0]]) == RationalMatrix([[0]])
    assert neighborhood_signature([1], [[0]]) == 0


def test_fiber_form_with_multiplicities():
    # a double component meeting two reduced ones
    form = fiber_intersection_form([2, 1, 1], [[0, 1, 1], [1, 0, 0], [1, 0, 0]])
    assert form == RationalMatrix([[-1, 1, 1], [1, -2, 0], [1, 0, -2]])
    F = RationalMatrix.column([2, 1, 1])
    assert form @ F == RationalMatrix.zeros(3, 1)


def test_fiber_form_errors():
    with pytest.raises(ValueError):
        fiber_intersection_form([0], [[0]])
    with pytest.raises(ValueError):
        fiber_intersection_form([1, 1], [[0, 1]])
