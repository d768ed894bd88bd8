import random
from fractions import Fraction

from .chow_p1xp2 import ChowClass
from .exact_linalg import GaussianRational, RationalMatrix, determinant
from .plane_curves import HomogPoly, ProjPoint, monomials
from .symplectic_meyer import SymplecticMatrix, transvection


def random_vector(rng: random.Random, n: int, bound: int = 2) -> list[int]:
    while True:
        v = [rng.randint(-bound, bound) for _ in range(n)]
        if any(v):
            return v


def random_transvection(rng: random.Random, g: int, bound: int = 2) -> SymplecticMatrix:
    return transvection(g, random_vector(rng, 2 * g, bound))


def random_symplectic_word(
    rng: random.Random, g: int, max_length: int = 6, bound: int = 2
) -> SymplecticMatrix:
    """Product of at most ``max_length`` random transvections and their inverses."""
    result = SymplecticMatrix.identity(g)
    for _ in range(rng.randint(0, max_length)):
        factor = random_transvection(rng, g, bound)
        result = result @ (factor if rng.random() < 0.5 else factor.inverse())
    return result


def random_matrix(rng: random.Random, n_rows: int, n_cols: int, bound: int = 3) -> RationalMatrix:
    return RationalMatrix(
        [[rng.randint(-bound, bound) for _ in range(n_cols)] for _ in range(n_rows)], n_cols
    )


def random_invertible_matrix(rng: random.Random, n: int, bound: int = 3) -> RationalMatrix:
    while True:
        M = random_matrix(rng, n, n, bound)
        if determinant(M) != 0:
            return M


def random_symmetric_matrix(rng: random.Random, n: int, bound: int = 5) -> RationalMatrix:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
    return RationalMatrix(rows, n)


def random_gaussian(rng: random.Random, bound: int = 9, complex_part: bool = False) -> GaussianRational:
    re = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
    im = Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) if complex_part else Fraction(0)
    return GaussianRational(re, im)


def random_homog_poly(
    rng: random.Random, d: int, bound: int = 9, complex_part: bool = False
) -> HomogPoly:
    while True:
        coefficients = {
            e: GaussianRational(rng.randint(-bound, bound))
            + (GaussianRational(0, rng.randint(-bound, bound)) if complex_part else 0)
            for e in monomials(d)
        }
        if any(coefficients.values()):
            return HomogPoly(d, coefficients)


def random_point(rng: random.Random, bound: int = 9, complex_part: bool = False) -> ProjPoint:
    while True:
        coords = [random_gaussian(rng, bound, complex_part) for _ in range(3)]
        if any(coords):
            return ProjPoint(*coords)


def random_chow_class(rng: random.Random, bound: int = 9) -> ChowClass:
    return ChowClass({(i, j): rng.randint(-bound, bound) for i in range(2) for j in range(3)})
