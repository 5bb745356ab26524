"""Clifford multiplication on discrete forms.

Each lattice site carries a copy of the spacetime algebra: direction sets
act as basis blades with e_mu e_nu + e_nu e_mu = 2 g_munu, g = diag(1,-1,-1,-1),
and ordered products concatenating into higher blades.  Basis elements at
distinct sites multiply to zero, so products are computed sitewise.

Unit forms (coefficient 1 on every site of a window) turn the blade algebra
into the algebra of inhomogeneous forms used by the Dirac-Kahler and Joyce
operators; for operator pipelines the helpers :func:`blade_lmul` and
:func:`blade_rmul` apply an implicit infinite-support unit blade instead,
avoiding window truncation.
"""

from __future__ import annotations

import itertools
from typing import Optional, Tuple

from .complex4 import AXES, DirectionSet, normalize_dirs
from .forms import DiscreteForm, InhomogeneousForm, Window

_METRIC = {0: 1, 1: -1, 2: -1, 3: -1}

ALL_BLADES = tuple(
    blade
    for r in range(5)
    for blade in itertools.combinations(AXES, r)
)


def _blade_product(a: DirectionSet, b: DirectionSet) -> Tuple[int, DirectionSet]:
    """Multiply two blades: sort the concatenated index word counting
    transpositions, then cancel repeated indices against the metric."""
    word = list(a) + list(b)
    sign = 1
    # insertion sort; the swap count gives the reordering sign
    for i in range(1, len(word)):
        j = i
        while j > 0 and word[j - 1] > word[j]:
            word[j - 1], word[j] = word[j], word[j - 1]
            sign = -sign
            j -= 1
    out = []
    i = 0
    while i < len(word):
        if i + 1 < len(word) and word[i] == word[i + 1]:
            sign *= _METRIC[word[i]]
            i += 2
        else:
            out.append(word[i])
            i += 1
    return sign, tuple(out)


_BLADE_TABLE = {
    (a, b): _blade_product(a, b) for a in ALL_BLADES for b in ALL_BLADES
}


def blade_product(a: DirectionSet, b: DirectionSet) -> Tuple[int, DirectionSet]:
    """Signed product of two basis blades (direction sets)."""
    return _BLADE_TABLE[(a, b)]


def clifford_basis_product(a_key, b_key) -> Optional[Tuple[int, tuple]]:
    """Product of two basis cochains ``(k, dirs)``.

    Returns ``(sign, (k, dirs))`` for same-site factors and ``None`` (zero)
    for factors at different sites.
    """
    (ka, da), (kb, db) = a_key, b_key
    if ka != kb:
        return None
    sign, blade = _BLADE_TABLE[(tuple(da), tuple(db))]
    return sign, (ka, blade)


def clifford_mul(
    A: InhomogeneousForm, B: InhomogeneousForm
) -> InhomogeneousForm:
    """Bilinear, sitewise extension of the basis blade product."""
    by_site: dict = {}
    for (k, db), cb in B.items():
        by_site.setdefault(k, []).append((db, cb))
    out: dict = {}
    for (k, da), ca in A.items():
        factors = by_site.get(k)
        if not factors:
            continue
        for db, cb in factors:
            sign, blade = _BLADE_TABLE[(da, db)]
            prod = ca * cb
            if sign < 0:
                prod = -prod
            key = (k, blade)
            out[key] = out.get(key, 0) + prod
    return InhomogeneousForm.from_coeffs(out)


def blade_lmul(blade, A, scalar=1):
    """Left-multiply by the implicit unit form of ``blade`` (all sites)."""
    blade = normalize_dirs(blade)
    out: dict = {}
    for (k, d), c in A.items():
        sign, nb = _BLADE_TABLE[(blade, d)]
        prod = scalar * c
        if sign < 0:
            prod = -prod
        key = (k, nb)
        out[key] = out.get(key, 0) + prod
    return InhomogeneousForm.from_coeffs(out)


def blade_rmul(A, blade, scalar=1):
    """Right-multiply by the implicit unit form of ``blade`` (all sites)."""
    blade = normalize_dirs(blade)
    out: dict = {}
    for (k, d), c in A.items():
        sign, nb = _BLADE_TABLE[(d, blade)]
        prod = scalar * c
        if sign < 0:
            prod = -prod
        key = (k, nb)
        out[key] = out.get(key, 0) + prod
    return InhomogeneousForm.from_coeffs(out)


def unit_form(dirs, win: Window) -> InhomogeneousForm:
    """Unit form for a basis pattern: coefficient 1 on every window site."""
    d = normalize_dirs(dirs)
    coeffs = {(k, d): 1 for k in win.sites()}
    return InhomogeneousForm.from_form(DiscreteForm(len(d), coeffs))


def grade_project(A: InhomogeneousForm, r: int) -> DiscreteForm:
    """The degree-r part of an inhomogeneous form."""
    return A.part(r)
