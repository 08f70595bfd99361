"""Seeded random generators for lattices, automorphisms and admissible sequences.

Everything takes an explicit random.Random so that suites are reproducible from a
seed alone.
"""

import logging
from dataclasses import dataclass

from .exactcat import FdSpace, LinMap
from .exactlin import Matrix
from .simptors import Cochain
from .tate import (
    LaurentMatrix,
    LaurentPoly,
    check_tate_ses,
    lattice_normalize,
)

log = logging.getLogger(__name__)


def random_laurent_poly(field, rng, lo=-2, hi=2, density=0.5):
    """Return a random Laurent polynomial with exponents in [lo, hi]."""
    coefficients = {}
    for e in range(lo, hi + 1):
        if rng.random() < density:
            coefficients[e] = field.random(rng)
    return LaurentPoly.from_dict(field, coefficients)


def random_lattice(space, rng, spread=2, generators=None):
    """Return the lattice generated by random vectors in a window of width up to 2 spread."""
    lo = rng.randint(-spread, 0)
    hi = rng.randint(0, spread)
    size = (hi - lo) * space.rank
    if generators is None:
        generators = rng.randint(0, max(size, 1))
    rows = [[space.field.random(rng) for _ in range(size)] for _ in range(generators)]
    return lattice_normalize(space, lo, hi, rows)


def random_automorphism(field, n, rng, steps=3, spread=2):
    """Return (g, g⁻¹) for a random product of transvections and a monomial diagonal.

    Entries of the transvections have exponents in [-spread, spread].
    """
    g = LaurentMatrix.identity(field, n)
    g_inv = LaurentMatrix.identity(field, n)
    if n == 0:
        return g, g_inv
    coefficients = [field.random(rng, nonzero=True) for _ in range(n)]
    exponents = [rng.randint(-1, 1) for _ in range(n)]
    d = LaurentMatrix.monomial_diagonal(field, coefficients, exponents)
    d_inv = LaurentMatrix.monomial_diagonal(
        field, [field.inv(c) for c in coefficients], [-e for e in exponents]
    )
    g, g_inv = d, d_inv
    for _ in range(steps if n > 1 else 0):
        r, c = rng.sample(range(n), 2)
        poly = random_laurent_poly(field, rng, -spread, spread)
        g = LaurentMatrix.transvection(field, n, r, c, poly) @ g
        g_inv = g_inv @ LaurentMatrix.transvection(field, n, r, c, -poly)
    return g, g_inv


def random_tate_ses(field, a, c, rng, spread=2):
    """Return a coordinate sequence k((t))^a >-> k((t))^(a+c) ->> k((t))^c twisted by automorphisms.

    The middle is twisted by g, the ends by h and k: i = g·incl·h, j = k·proj·g⁻¹.
    """
    g, g_inv = random_automorphism(field, a + c, rng, spread=spread)
    h, _ = random_automorphism(field, a, rng, steps=1, spread=1)
    k, _ = random_automorphism(field, c, rng, steps=1, spread=1)
    i = g @ LaurentMatrix.coordinate_inclusion(field, a, a + c) @ h
    j = k @ LaurentMatrix.coordinate_projection(field, a + c, c, a) @ g_inv
    return check_tate_ses(i, j)


@dataclass(frozen=True)
class TateFiltration:
    """A filtration X1 ⊆ X2 ⊆ X3 with its four admissible sequences.

    lower is X1 >-> X2 ->> X21, upper is X2 >-> X3 ->> X32, outer is X1 >-> X3 ->> X31
    and quotient is X21 >-> X31 ->> X32, all compatible with each other.
    """

    lower: object
    upper: object
    outer: object
    quotient: object


def random_filtration(field, ranks, rng, spread=2):
    """Return a random TateFiltration with graded pieces of the given three ranks."""
    a, b, c = ranks
    n = a + b + c
    g, g_inv = random_automorphism(field, n, rng, spread=spread)
    h, h_inv = random_automorphism(field, a + b, rng, steps=2, spread=1)
    incl = LaurentMatrix.coordinate_inclusion
    proj = LaurentMatrix.coordinate_projection
    lower = check_tate_ses(h @ incl(field, a, a + b), proj(field, a + b, b, a) @ h_inv)
    upper = check_tate_ses(g @ incl(field, a + b, n) @ h_inv, proj(field, n, c, a + b) @ g_inv)
    outer = check_tate_ses(g @ incl(field, a, n), proj(field, n, b + c, a) @ g_inv)
    quotient = check_tate_ses(incl(field, b, b + c), proj(field, b + c, c, b))
    log.debug("sampled filtration with ranks %d, %d, %d", a, b, c)
    return TateFiltration(lower, upper, outer, quotient)


def random_invertible(field, n, rng):
    """Return the columns of a random invertible n x n matrix over a finite field."""
    while True:
        columns = [[field.random(rng) for _ in range(n)] for _ in range(n)]
        if n == 0 or Matrix.from_columns(field, columns, n).rank() == n:
            return [tuple(col) for col in columns]


def random_mono(field, source_dim, target_dim, rng):
    """Return a random injective linear map k^source_dim -> k^target_dim."""
    source, target = FdSpace(source_dim, field), FdSpace(target_dim, field)
    while True:
        columns = [[field.random(rng) for _ in range(target_dim)] for _ in range(source_dim)]
        f = LinMap.from_columns(source, target, columns)
        if f.is_injective():
            return f


def random_cochain(complex_, degree, group, rng, spread=3):
    """Return a cochain with independent random values on the nondegenerate simplices."""
    return Cochain(
        complex_,
        degree,
        group,
        {s: group.random(rng, spread) for s in complex_.nondegenerate(degree)},
    )
