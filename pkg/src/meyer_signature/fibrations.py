"""
Closed fibrations whose signatures determine unknown local signatures.

Each scenario is a family of curves over P^1 with known Chern numbers. Its
type I fibers are counted from the Euler number and the local signature of
the one remaining germ is solved for.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .chow_p1xp2 import hirzebruch_signature, pencil_chern
from .exact_linalg import RationalMatrix, symmetric_signature
from .local_signature import (
    HYPERELLIPTIC,
    TYPE_I,
    TYPE_II,
    GermType,
    phi_from_locsig,
    solve_unknown,
    type_i_at_degree,
    typeI_count_from_euler,
)
from .numeric_invariants import genus

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class FibrationScenario:
    name: str
    c1_squared: int
    c2: int
    genus: int
    type_i: GermType
    special_germ: GermType | None
    special_count: int
    reference_signature: int


@dataclass(frozen=True, slots=True)
class Derivation:
    scenario: FibrationScenario
    signature: Fraction
    type_i_count: int
    solved_germ: GermType
    solved_loc_sig: Fraction
    solved_phi: Fraction

    @property
    def consistent(self) -> bool:
        """Whether the replay reproduces the stored germ values and reference signature."""
        return (
            self.signature == self.scenario.reference_signature
            and self.solved_loc_sig == self.solved_germ.loc_sig
            and self.solved_phi == self.solved_germ.phi_value
        )


def pencil_scenario(d: int) -> FibrationScenario:
    """
    A generic pencil of degree-d curves, i.e. a hypersurface of bidegree (1, d).

    All singular fibers are of type I; solving for them recovers the lasso value.
    """
    chern = pencil_chern(d)
    return FibrationScenario(
        name=f"pencil(d={d})",
        c1_squared=chern.c1_squared,
        c2=chern.c2,
        genus=genus(d),
        type_i=type_i_at_degree(d),
        special_germ=None,
        special_count=0,
        reference_signature=1 - d * d,
    )


def hyperelliptic_scenario() -> FibrationScenario:
    """The quartic pencil degenerating to the double conic, after blowing up the conic."""
    return FibrationScenario(
        name="hyperelliptic",
        c1_squared=-6,
        c2=18,
        genus=3,
        type_i=TYPE_I,
        special_germ=HYPERELLIPTIC,
        special_count=1,
        reference_signature=-14,
    )


def type_ii_scenario(m: int) -> FibrationScenario:
    """The perturbed type II family of order m >= 7, after resolving its singular point."""
    if m < 7:
        raise ValueError(f"The type II family needs m >= 7, got {m}")
    return FibrationScenario(
        name=f"type_ii(m={m})",
        c1_squared=9 * m - 17,
        c2=27 * m - 19,
        genus=3,
        type_i=TYPE_I,
        special_germ=TYPE_II,
        special_count=1,
        reference_signature=-15 * m + 7,
    )


def replay(scenario: FibrationScenario) -> Derivation:
    signature = hirzebruch_signature(scenario.c1_squared, scenario.c2).value

    other_euler = (
        scenario.special_count * scenario.special_germ.euler_contribution
        if scenario.special_germ is not None
        else 0
    )
    type_i_count = typeI_count_from_euler(scenario.c2, scenario.genus, other_euler)

    if scenario.special_germ is None:
        solved_germ = scenario.type_i
        loc_sig = solve_unknown(signature, [], type_i_count)
    else:
        solved_germ = scenario.special_germ
        loc_sig = solve_unknown(
            signature, [(scenario.type_i, type_i_count)], scenario.special_count
        )

    solved_phi = phi_from_locsig(
        GermType.custom(
            euler=solved_germ.euler_contribution,
            loc_sig=loc_sig,
            sign_nbhd=solved_germ.sign_neighborhood,
        )
    )

    derivation = Derivation(scenario, signature, type_i_count, solved_germ, loc_sig, solved_phi)
    logger.info(
        "%s: Sign = %s, %d type I fibers, loc_sig = %s",
        scenario.name,
        signature,
        type_i_count,
        loc_sig,
    )
    return derivation


def fiber_intersection_form(
    multiplicities: Sequence[int], meetings: Sequence[Sequence[int]]
) -> RationalMatrix:
    """
    Intersection matrix of the components of a fiber.

    ``meetings[i][j]`` is ``C_i . C_j`` for ``i != j`` (the diagonal is ignored);
    self-intersections follow from ``F . C_i = 0`` for the fiber class
    ``F = sum m_j C_j``.
    """
    n = len(multiplicities)
    if any(m <= 0 for m in multiplicities):
        raise ValueError(f"Multiplicities must be positive, got {list(multiplicities)}")
    if len(meetings) != n or any(len(row) != n for row in meetings):
        raise ValueError(f"Expected a {n}x{n} meeting matrix")

    rows = []
    for i in range(n):
        off_diagonal = sum(multiplicities[j] * meetings[i][j] for j in range(n) if j != i)
        self_intersection = Fraction(-off_diagonal, multiplicities[i])
        rows.append([self_intersection if i == j else meetings[i][j] for j in range(n)])

    return RationalMatrix(rows, n)


def neighborhood_signature(
    multiplicities: Sequence[int], meetings: Sequence[Sequence[int]]
) -> int:
    return symmetric_signature(fiber_intersection_form(multiplicities, meetings)).signature
