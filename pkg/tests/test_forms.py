import itertools

import pytest

from dkjoyce import (
    DiscreteForm,
    InhomogeneousForm,
    NotAdmissible,
    Window,
    backward_diff,
    coboundary,
    codifferential,
    cup,
    forward_diff,
    hodge_star,
    hodge_star_inverse,
    inner_product,
    laplacian,
    star_d_star,
)
from dkjoyce.complex4 import AXES, sigma_shift, tau_all, tau_shift
from dkjoyce.forms import STAR_SIGN

from helpers import (
    margin_form,
    rand_gaussian,
    random_form,
    random_inhomogeneous,
    rng_for,
)

ALL_DIRS = [d for r in range(5) for d in itertools.combinations(AXES, r)]


# ---------------------------------------------------------------------------
# differences

def test_forward_diff_constant():
    win = Window((3, 3, 3, 3))
    w = DiscreteForm(0, {(k, ()): 5 for k in win.sites()})
    out = forward_diff(w, 2)
    for (k, _d), c in out.items():
        assert not win.is_interior(k)
        assert c in (5, -5)


def test_forward_diff_delta():
    k = (2, 2, 2, 2)
    out = forward_diff(DiscreteForm.basis(k, ()), 1)
    assert dict(out.items()) == {(k, ()): -1, (sigma_shift(k, 1), ()): 1}


def test_backward_diff_delta():
    k = (2, 2, 2, 2)
    out = backward_diff(DiscreteForm.basis(k, ()), 3)
    assert dict(out.items()) == {(k, ()): 1, (tau_shift(k, 3), ()): -1}


def test_backward_equals_shifted_forward():
    # the coefficient function of the backward difference at tau_mu k equals
    # the forward difference at k
    rng = rng_for(2)
    win = Window((4, 4, 4, 4))
    w = random_form(rng, 2, win)
    for mu in AXES:
        fwd = forward_diff(w, mu)
        bwd = backward_diff(w, mu)
        for (k, d), c in fwd.items():
            assert bwd.get((tau_shift(k, mu), d)) == c


# ---------------------------------------------------------------------------
# coboundary

def test_coboundary_delta_0form():
    k = (3, 3, 3, 3)
    out = coboundary(DiscreteForm.basis(k, ()))
    want = {}
    for mu in AXES:
        want[(sigma_shift(k, mu), (mu,))] = 1
        want[(k, (mu,))] = -1
    assert dict(out.items()) == want


def test_coboundary_top_degree_zero():
    w = DiscreteForm.basis((1, 1, 1, 1), (0, 1, 2, 3), 3 + 1j)
    assert coboundary(w).is_zero()


def test_coboundary_squared_zero():
    rng = rng_for(3)
    win = Window((4, 4, 4, 4))
    for degree in range(4):
        w = random_form(rng, degree, win, scalar=rand_gaussian)
        assert coboundary(coboundary(w)).is_zero()


def test_codifferential_squared_zero():
    rng = rng_for(4)
    win = Window((4, 4, 4, 4))
    for degree in range(1, 5):
        w = random_form(rng, degree, win, scalar=rand_gaussian)
        assert codifferential(codifferential(w)).is_zero()


# ---------------------------------------------------------------------------
# cup product

def test_cup_point_interval():
    k = (2, 2, 2, 2)
    x = DiscreteForm.basis(k, ())
    e1 = DiscreteForm.basis(k, (1,))
    assert cup(x, e1) == e1
    assert cup(e1, e1).is_zero()


def test_cup_interval_point_shift():
    # a left interval on axis 1 pairs with the right factor at index + 1
    k = (2, 2, 2, 2)
    e1 = DiscreteForm.basis(k, (1,))
    assert cup(e1, DiscreteForm.basis(tau_shift(k, 1), ())) == e1
    assert cup(e1, DiscreteForm.basis(k, ())).is_zero()


def test_leibniz_exact():
    rng = rng_for(6)
    win = Window((3, 3, 3, 3))
    for r in range(3):
        for q in range(3 - r):
            u = random_form(rng, r, win, scalar=rand_gaussian)
            v = random_form(rng, q, win, scalar=rand_gaussian)
            lhs = coboundary(cup(u, v))
            rhs = cup(coboundary(u), v) + (-1) ** r * cup(u, coboundary(v))
            assert lhs == rhs


# ---------------------------------------------------------------------------
# Hodge star

def test_star_basis_examples():
    k = (2, 3, 4, 5)
    assert hodge_star(DiscreteForm.basis(k, ())) == \
        DiscreteForm.basis(k, (0, 1, 2, 3))
    # the one positive 1-form row
    assert hodge_star(DiscreteForm.basis(k, (2,))) == \
        DiscreteForm.basis(tau_shift(k, 2), (0, 1, 3))
    assert hodge_star(DiscreteForm.basis(k, (0, 1, 2, 3))) == \
        DiscreteForm.basis(tau_all(k), (), -1)


def test_star_defining_relation_exhaustive():
    # s cup *s equals the signature factor times the volume form at s's site
    k = (2, 2, 2, 2)
    for dirs in ALL_DIRS:
        s = DiscreteForm.basis(k, dirs)
        prod = cup(s, hodge_star(s))
        want = -1 if 0 in dirs else 1
        assert dict(prod.items()) == {(k, (0, 1, 2, 3)): want}, dirs


def test_star_double_exhaustive():
    k = (1, 2, 3, 4)
    for dirs in ALL_DIRS:
        r = len(dirs)
        got = hodge_star(hodge_star(DiscreteForm.basis(k, dirs)))
        assert got == DiscreteForm.basis(tau_all(k), dirs, (-1) ** (r + 1))


def test_star_inverse_both_ways():
    rng = rng_for(7)
    win = Window((3, 3, 3, 3))
    for degree in range(5):
        w = random_form(rng, degree, win, scalar=rand_gaussian)
        assert hodge_star_inverse(hodge_star(w)) == w
        assert hodge_star(hodge_star_inverse(w)) == w


def test_star_inverse_volume_row():
    # inverts *e^k = -x^{tau k}
    k = (2, 2, 2, 2)
    got = hodge_star_inverse(DiscreteForm.basis(tau_all(k), ()))
    assert got == DiscreteForm.basis(k, (0, 1, 2, 3), -1)


def test_star_sign_table_degree_counts():
    # one sign per direction set, all +-1
    assert set(STAR_SIGN) == set(ALL_DIRS)
    assert set(STAR_SIGN.values()) <= {1, -1}


# ---------------------------------------------------------------------------
# inner product

def test_inner_product_0forms():
    win = Window((3, 3, 3, 3))
    k = (2, 2, 2, 2)
    u = DiscreteForm.basis(k, (), 2 + 1j)
    v = DiscreteForm.basis(k, (), 3 - 1j)
    assert inner_product(u, v, win) == (2 + 1j) * (3 + 1j)


def test_inner_product_signature():
    win = Window((3, 3, 3, 3))
    k = (2, 2, 2, 2)
    for dirs in ALL_DIRS:
        w = DiscreteForm.basis(k, dirs)
        want = -1 if 0 in dirs else 1
        assert inner_product(w, w, win) == want, dirs


def test_inner_product_mixed_degree_zero():
    win = Window((3, 3, 3, 3))
    u = DiscreteForm.basis((1, 1, 1, 1), ())
    v = DiscreteForm.basis((1, 1, 1, 1), (1,))
    assert inner_product(u, v, win) == 0


def test_inner_product_not_admissible():
    win = Window((3, 3, 3, 3))
    w = DiscreteForm.basis((4, 1, 1, 1), ())
    with pytest.raises(NotAdmissible):
        inner_product(w, w, win)


def test_adjointness_exact():
    # (d u, v) = (u, delta v) with a one-cell margin, exact scalars
    rng = rng_for(8)
    win = Window((4, 4, 4, 4))
    for degree in range(4):
        u = margin_form(rng, degree, win, scalar=rand_gaussian)
        v = margin_form(rng, degree + 1, win, scalar=rand_gaussian)
        assert inner_product(coboundary(u), v, win) == \
            inner_product(u, codifferential(v), win)


# ---------------------------------------------------------------------------
# codifferential and star route

def test_codifferential_0form_zero():
    w = DiscreteForm.basis((1, 1, 1, 1), (), 2j)
    assert codifferential(w).is_zero()


def test_codifferential_delta_1form():
    # time component: positive metric, leading position
    k = (2, 2, 2, 2)
    out = codifferential(DiscreteForm.basis(k, (0,)))
    assert dict(out.items()) == {(k, ()): 1, (tau_shift(k, 0), ()): -1}
    # spatial component picks up the metric sign
    out = codifferential(DiscreteForm.basis(k, (1,)))
    assert dict(out.items()) == {(k, ()): -1, (tau_shift(k, 1), ()): 1}


def test_codifferential_equals_star_route():
    # explicit formulas against (-1)^r *^-1 d * for input degree r
    rng = rng_for(9)
    win = Window((3, 3, 3, 3))
    for degree in range(1, 5):
        w = random_form(rng, degree, win, scalar=rand_gaussian)
        via = (-1) ** degree * hodge_star_inverse(coboundary(hodge_star(w)))
        assert codifferential(w) == via


def test_star_d_star_shift():
    # star.d.star sampled at k equals the codifferential sampled at sigma k
    rng = rng_for(10)
    win = Window((3, 3, 3, 3))
    for degree in range(1, 5):
        w = random_form(rng, degree, win, scalar=rand_gaussian)
        got = star_d_star(w)
        want = codifferential(w)
        shifted = DiscreteForm(
            degree - 1, {(tau_all(k), d): c for (k, d), c in want.items()}
        )
        assert got == shifted


def test_star_d_star_zero():
    assert star_d_star(DiscreteForm.zero(2)).is_zero()


# ---------------------------------------------------------------------------
# Laplacian

def test_laplacian_zero():
    assert laplacian(InhomogeneousForm.zero()).is_zero()


def test_laplacian_equals_squared_first_order():
    rng = rng_for(12)
    win = Window((3, 3, 3, 3))
    O = random_inhomogeneous(rng, win, scalar=rand_gaussian)

    def dirac(a):
        return coboundary(a) + codifferential(a)

    assert laplacian(O) == (-1) * dirac(dirac(O))
