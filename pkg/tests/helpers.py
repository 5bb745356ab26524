"""Shared test helpers: seeded random forms over both scalar types."""

import itertools

import numpy as np

from dkjoyce import DiscreteForm, GaussianRational, InhomogeneousForm, Window
from dkjoyce.complex4 import AXES

AXIS_SETS = {
    r: list(itertools.combinations(AXES, r)) for r in range(5)
}


def rand_complex(rng):
    return complex(rng.integers(-9, 10), rng.integers(-9, 10))


def rand_gaussian(rng):
    return GaussianRational(int(rng.integers(-9, 10)), int(rng.integers(-9, 10)))


def random_form(rng, degree, win: Window, scalar=rand_complex, density=1.0):
    coeffs = {}
    for k in win.sites():
        for dirs in AXIS_SETS[degree]:
            if density >= 1.0 or rng.random() < density:
                coeffs[(k, dirs)] = scalar(rng)
    return DiscreteForm(degree, coeffs)


def sparse_form(rng, degree, win: Window, nnz, scalar=rand_complex):
    sites = list(win.sites())
    coeffs = {}
    for _ in range(nnz):
        k = sites[rng.integers(len(sites))]
        dirs = AXIS_SETS[degree][rng.integers(len(AXIS_SETS[degree]))]
        coeffs[(k, dirs)] = scalar(rng)
    return DiscreteForm(degree, coeffs)


def random_inhomogeneous(rng, win: Window, scalar=rand_complex):
    return InhomogeneousForm(
        [random_form(rng, r, win, scalar) for r in range(5)]
    )


def random_even(rng, win: Window, scalar=rand_complex):
    parts = [DiscreteForm.zero(r) for r in range(5)]
    for r in (0, 2, 4):
        parts[r] = random_form(rng, r, win, scalar)
    return InhomogeneousForm(parts)


def margin_form(rng, degree, win: Window, scalar=rand_complex):
    """Random form supported with a one-cell margin inside the window."""
    coeffs = {}
    for k in itertools.product(*(range(2, n) for n in win.n)):
        for dirs in AXIS_SETS[degree]:
            coeffs[(k, dirs)] = scalar(rng)
    return DiscreteForm(degree, coeffs)


def rng_for(seed):
    return np.random.default_rng(seed)
