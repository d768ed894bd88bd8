from __future__ import annotations

import logging
import random
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

from . import chow_p1xp2, exact_linalg, fibrations, local_signature, numeric_invariants
from .exact_linalg import RationalMatrix
from .plane_curves import (
    HomogPoly,
    ProjPoint,
    SingularityClass,
    classify_double_point,
    classify_point,
    conic_is_smooth,
    evaluate,
    gradient,
    is_singular_point,
    singular_points_of_conic,
)
from .progress import Suite, SweepProgress
from .symplectic_meyer import SymplecticMatrix, meyer_cocycle, meyer_form
from .testing import (
    random_homog_poly,
    random_invertible_matrix,
    random_point,
    random_symmetric_matrix,
    random_symplectic_word,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SweepConfig:
    seed: int = 20240607
    cocycle_trials: int = 200
    max_word_length: int = 6
    genera: tuple[int, ...] = (1, 2)
    max_degree: int = 50
    euler_identity_trials: int = 200
    conic_corpus: int = 50
    fermat_points: int = 20
    oracle_trials: int = 100
    max_oracle_size: int = 8

    def __post_init__(self):
        for name in (
            "cocycle_trials",
            "max_word_length",
            "max_degree",
            "euler_identity_trials",
            "conic_corpus",
            "fermat_points",
            "oracle_trials",
            "max_oracle_size",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.max_degree < 4:
            raise ValueError("max_degree must be at least 4")
        if not self.genera or min(self.genera) < 1:
            raise ValueError(f"genera must be positive, got {self.genera}")


@dataclass(frozen=True, slots=True)
class SuiteReport:
    name: str
    checks: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True, slots=True)
class SweepReport:
    config: SweepConfig
    suites: tuple[SuiteReport, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    @property
    def checks(self) -> int:
        return sum(s.checks for s in self.suites)


def _chern_suite(suite: Suite, config: SweepConfig):
    degrees = range(2, 21)
    suite.expect(len(degrees) + 100)
    for d in degrees:
        chern = chow_p1xp2.hypersurface_chern(1, d)
        suite.record(
            (chern.c1_squared, chern.c2, chern.signature) == (9 - d * d, d * d + 3, 1 - d * d),
            f"hypersurface_chern(1, {d}) = {chern}",
        )
    for a in range(1, 11):
        for b in range(1, 11):
            chern = chow_p1xp2.hypersurface_chern(a, b)
            suite.record(chern.integral, f"hypersurface_chern({a}, {b}) has non-integral signature")


def _lasso_suite(suite: Suite, config: SweepConfig):
    degrees = range(3, config.max_degree + 1)
    suite.expect(2 + 2 * len(degrees) + 1)
    suite.record(numeric_invariants.lasso_value(4) == Fraction(-5, 9), "lasso_value(4) != -5/9")
    suite.record(numeric_invariants.lasso_value(3) == Fraction(-2, 3), "lasso_value(3) != -2/3")
    for d in degrees:
        total = numeric_invariants.discriminant_degree(d) * numeric_invariants.lasso_value(d)
        suite.record(total == 1 - d * d, f"pencil sum fails at d={d}: {total}")
    for d in range(2, config.max_degree + 1):
        euler = (d * d + 3) - 2 * (2 - 2 * numeric_invariants.genus(d))
        suite.record(
            euler == numeric_invariants.discriminant_degree(d), f"Euler count fails at d={d}"
        )


def _h1_suite(suite: Suite, config: SweepConfig):
    degrees = range(2, 31)
    suite.expect(2 * len(degrees) + 4)
    for d in degrees:
        expected = 3 * (d - 1) ** 2 if d % 3 == 0 else (d - 1) ** 2
        suite.record(numeric_invariants.h1_pi(d) == expected, f"h1_pi({d}) != {expected}")
        complement = numeric_invariants.h1_complement(d)
        quotient, remainder = divmod(complement, numeric_invariants.h1_pi(d))
        suite.record(
            complement == 3 * (d - 1) ** 2 and remainder == 0 and quotient == (1 if d % 3 == 0 else 3),
            f"h1_complement({d}) / h1_pi({d}) is not as expected",
        )
    for d, expected in ((3, 12), (4, 9), (6, 75), (2, 1)):
        suite.record(numeric_invariants.h1_pi(d) == expected, f"h1_pi({d}) != {expected}")


def _fibration_suite(suite: Suite, config: SweepConfig):
    TYPE_I = local_signature.TYPE_I
    m_values = range(7, 21)
    suite.expect(3 + 2 * len(m_values) + 4)

    suite.record(
        local_signature.typeI_count_from_euler(18, 3, 0) == 26, "hyperelliptic type I count != 26"
    )
    suite.record(
        local_signature.solve_unknown(-14, [(TYPE_I, 26)], 1) == Fraction(4, 9),
        "hyperelliptic loc.sig != 4/9",
    )
    suite.record(fibrations.replay(fibrations.hyperelliptic_scenario()).consistent)

    for m in m_values:
        count = local_signature.typeI_count_from_euler(27 * m - 19, 3, 1)
        suite.record(count == 27 * m - 12, f"type II count at m={m} is {count}")
        value = local_signature.solve_unknown(-15 * m + 7, [(TYPE_I, 27 * m - 12)], 1)
        suite.record(value == Fraction(1, 3), f"type II loc.sig at m={m} is {value}")

    suite.record(local_signature.phi_from_locsig(local_signature.TYPE_II) == Fraction(4, 3))
    suite.record(local_signature.total_signature([]).value == 0, "empty germ list has nonzero signature")
    suite.record(
        local_signature.total_signature([(TYPE_I, 27)]).value
        == chow_p1xp2.hypersurface_chern(1, 4).signature,
        "27 type I germs disagree with the quartic pencil",
    )
    suite.record(
        fibrations.neighborhood_signature([1, 1], [[0, 1], [1, 0]])
        == local_signature.TYPE_II.sign_neighborhood,
        "type II neighborhood signature",
    )


def _meyer_suite(suite: Suite, config: SweepConfig, rng: random.Random):
    suite.expect(2 + config.cocycle_trials)

    T = SymplecticMatrix.from_rows([[1, 1], [0, 1]])
    S = SymplecticMatrix.from_rows([[0, -1], [1, 0]])
    suite.record(meyer_cocycle(T, T).value == -1, "tau(T, T) != -1")
    suite.record(meyer_cocycle(S, S).value == 2, "tau(S, S) != 2")

    for trial in range(config.cocycle_trials):
        g = config.genera[trial % len(config.genera)]
        A, B, C = (random_symplectic_word(rng, g, config.max_word_length) for _ in range(3))
        suite.record(*_cocycle_properties(A, B, C))


def _cocycle_properties(
    A: SymplecticMatrix, B: SymplecticMatrix, C: SymplecticMatrix
) -> tuple[bool, str]:
    def tau(X: SymplecticMatrix, Y: SymplecticMatrix) -> int:
        return meyer_cocycle(X, Y).value

    g = A.g
    I = SymplecticMatrix.identity(g)
    C_inv = C.inverse()
    tau_AB = tau(A, B)

    checks: list[tuple[str, Callable[[], bool]]] = [
        ("cocycle", lambda: tau(A @ B, C) + tau_AB == tau(A, B @ C) + tau(B, C)),
        ("unit", lambda: tau(A, I) == 0 and tau(I, A) == 0),
        ("inverse", lambda: tau(A, A.inverse()) == 0),
        ("inversion", lambda: tau(A.inverse(), B.inverse()) == -tau_AB),
        ("symmetry", lambda: tau(B, A) == tau_AB),
        ("conjugation", lambda: tau(C @ A @ C_inv, C @ B @ C_inv) == tau_AB),
        ("rank bound", lambda: abs(tau_AB) <= 2 * g and meyer_form(A, B).is_symmetric()),
    ]
    for name, check in checks:
        if not check():
            return False, f"{name} fails for A={A.tolist()}, B={B.tolist()}, C={C.tolist()}"
    return True, ""


def _curve_suite(suite: Suite, config: SweepConfig, rng: random.Random):
    suite.expect(3 + config.fermat_points + config.euler_identity_trials + config.conic_corpus)

    origin = ProjPoint(0, 0, 1)
    corpus = [
        ("nodal cubic", "y^2*z - x^2*(x + z)", SingularityClass.NODAL),
        ("cuspidal cubic", "y^2*z - x^3", SingularityClass.DEGENERATE),
        ("line pair times line", "(x^2 - y^2)*z", SingularityClass.NODAL),
    ]
    for name, text, expected in corpus:
        got = classify_double_point(HomogPoly.from_text(text), origin)
        suite.record(got is expected, f"{name}: {got} != {expected}")

    fermat = HomogPoly.from_text("x^4 + y^4 + z^4")
    for _ in range(config.fermat_points):
        p = random_point(rng)
        suite.record(
            classify_point(fermat, p) is SingularityClass.SMOOTH, f"Fermat quartic singular at {p}"
        )

    for trial in range(config.euler_identity_trials):
        F = random_homog_poly(rng, 1 + trial % 6)
        p = random_point(rng)
        lhs = F.degree * evaluate(F, p)
        rhs = sum((c * g for c, g in zip(p.coords, gradient(F, p))), exact_linalg.GaussianRational(0))
        suite.record(lhs == rhs, f"Euler identity fails for {F} at {p}")

    for _ in range(config.conic_corpus):
        # rank-deficient conics are common enough with small coefficients
        F = _random_conic(rng)
        witnesses = singular_points_of_conic(F)
        found = any(is_singular_point(F, p) for p in witnesses)
        suite.record(found == (not conic_is_smooth(F)), f"conic criterion disagrees for {F}")


def _random_conic(rng: random.Random) -> HomogPoly:
    if rng.random() < 0.5:
        return random_homog_poly(rng, 2, bound=3)
    # product of two linear forms: always singular
    l1, l2 = (random_homog_poly(rng, 1, bound=3) for _ in range(2))
    return l1 * l2


def _oracle_suite(suite: Suite, config: SweepConfig, rng: random.Random):
    suite.expect(config.oracle_trials)

    for _ in range(config.oracle_trials):
        n = rng.randint(1, config.max_oracle_size)
        S = random_symmetric_matrix(rng, n)
        suite.record(*_signature_oracle(S, rng))


def _signature_oracle(S: RationalMatrix, rng: random.Random) -> tuple[bool, str]:
    triple = exact_linalg.symmetric_signature(S)
    n = S.rows

    if triple.n_zero != n - exact_linalg.matrix_rank(S):
        return False, f"n_zero of {S!r} disagrees with its rank"

    order = list(range(n))
    rng.shuffle(order)
    P = RationalMatrix([[int(order[j] == i) for j in range(n)] for i in range(n)], n)
    if exact_linalg.symmetric_signature(P.T @ S @ P) != triple:
        return False, f"permuted pivot order changes the inertia of {S!r}"

    if triple.n_zero == 0:
        # a random congruence puts the form in general position almost surely
        for _ in range(10):
            Q = random_invertible_matrix(rng, n)
            try:
                oracle = exact_linalg.leading_minor_signature(Q.T @ S @ Q)
            except exact_linalg.Singular:
                continue
            if oracle != triple:
                return False, f"leading minors give {oracle}, diagonalization {triple} for {S!r}"
            break

    return True, ""


SUITES = ("chern", "lasso", "h1", "fibrations", "meyer", "curves", "signature oracle")


def run_sweeps(config: SweepConfig | None = None, progress: SweepProgress | None = None) -> SweepReport:
    config = config or SweepConfig()
    rng = random.Random(config.seed)
    progress = progress or SweepProgress(len(SUITES))

    runners = {
        "chern": lambda suite: _chern_suite(suite, config),
        "lasso": lambda suite: _lasso_suite(suite, config),
        "h1": lambda suite: _h1_suite(suite, config),
        "fibrations": lambda suite: _fibration_suite(suite, config),
        "meyer": lambda suite: _meyer_suite(suite, config, rng),
        "curves": lambda suite: _curve_suite(suite, config, rng),
        "signature oracle": lambda suite: _oracle_suite(suite, config, rng),
    }

    reports = []
    for name in SUITES:
        with progress.add_suite(name) as suite:
            runners[name](suite)
        reports.append(SuiteReport(name, suite.checks_done, tuple(suite.failures)))
        logger.info("%s: %d checks, %d failures", name, suite.checks_done, len(suite.failures))

    return SweepReport(config, tuple(reports))
