import itertools

from dkjoyce import (
    ALL_BLADES,
    DiscreteForm,
    InhomogeneousForm,
    Window,
    blade_lmul,
    blade_product,
    blade_rmul,
    clifford_basis_product,
    clifford_mul,
    grade_project,
    unit_form,
)
from dkjoyce.complex4 import AXES

from helpers import rand_complex, rng_for

METRIC = {0: 1, 1: -1, 2: -1, 3: -1}
K = (2, 2, 2, 2)


def basis(dirs, coeff=1, k=K):
    return InhomogeneousForm.from_form(DiscreteForm.basis(k, dirs, coeff))


def test_blade_product_examples():
    assert blade_product((0,), (0,)) == (1, ())
    assert blade_product((1,), (2,)) == (1, (1, 2))
    assert blade_product((2,), (1,)) == (-1, (1, 2))
    assert blade_product((0, 1), (0,)) == (-1, (1,))
    assert blade_product((0, 1, 2, 3), (0, 1, 2, 3)) == (-1, ())


def test_basis_product_sitewise_zero():
    a = (K, (1,))
    b = ((3, 2, 2, 2), (2,))
    assert clifford_basis_product(a, b) is None
    assert clifford_basis_product(a, (K, (2,))) == (1, (K, (1, 2)))


def test_anticommutators():
    win = Window((3, 3, 3, 3))
    x = unit_form((), win)
    for mu in AXES:
        for nu in AXES:
            e_mu = unit_form((mu,), win)
            e_nu = unit_form((nu,), win)
            lhs = clifford_mul(e_mu, e_nu) + clifford_mul(e_nu, e_mu)
            g = 2 * METRIC[mu] if mu == nu else 0
            assert lhs == g * x, (mu, nu)


def test_associativity_exhaustive_at_site():
    forms = {b: basis(b) for b in ALL_BLADES}
    for a, b, c in itertools.product(ALL_BLADES, repeat=3):
        lhs = clifford_mul(clifford_mul(forms[a], forms[b]), forms[c])
        rhs = clifford_mul(forms[a], clifford_mul(forms[b], forms[c]))
        assert lhs == rhs, (a, b, c)


def test_unit_identity_random():
    rng = rng_for(20)
    win = Window((3, 3, 3, 3))
    x = unit_form((), win)
    A = InhomogeneousForm.from_coeffs({
        (k, b): rand_complex(rng) for k in win.sites() for b in ALL_BLADES
    })
    assert clifford_mul(x, A) == A
    assert clifford_mul(A, x) == A


def test_unit_form_counts():
    win = Window((2, 2, 2, 2))
    x = unit_form((), win)
    assert len(dict(x.items())) == 16
    assert all(c == 1 for _k, c in x.items())


def test_volume_squares_to_minus_x():
    win = Window((3, 3, 3, 3))
    e = unit_form((0, 1, 2, 3), win)
    prod = clifford_mul(e, e)
    for (k, d), c in prod.items():
        assert d == () and c == -1


def test_bivector_squares():
    # e01 has one timelike factor: square +x; e23 is spacelike: square -x
    assert clifford_mul(basis((0, 1)), basis((0, 1))) == basis(())
    assert clifford_mul(basis((2, 3)), basis((2, 3))) == basis((), -1)


def test_grade_projection():
    prod = clifford_mul(basis((0,)), basis((0, 1)))
    assert grade_project(prod, 1) == DiscreteForm.basis(K, (1,))
    assert grade_project(prod, 3).is_zero()


def test_even_subalgebra_closed():
    rng = rng_for(21)
    win = Window((2, 2, 2, 2))
    even_blades = [b for b in ALL_BLADES if len(b) % 2 == 0]
    A = InhomogeneousForm.from_coeffs({
        (k, b): rand_complex(rng) for k in win.sites() for b in even_blades
    })
    B = InhomogeneousForm.from_coeffs({
        (k, b): rand_complex(rng) for k in win.sites() for b in even_blades
    })
    prod = clifford_mul(A, B)
    assert prod.part(1).is_zero() and prod.part(3).is_zero()


def test_blade_lmul_rmul_match_unit_form_products():
    rng = rng_for(22)
    win = Window((2, 2, 2, 2))
    A = InhomogeneousForm.from_coeffs({
        (k, b): rand_complex(rng) for k in win.sites() for b in ALL_BLADES
    })
    for blade in ((0,), (1, 3), (0, 1, 2, 3)):
        u = unit_form(blade, win)
        assert blade_lmul(blade, A) == clifford_mul(u, A)
        assert blade_rmul(A, blade) == clifford_mul(A, u)
        assert blade_lmul(blade, A, 2j) == 2j * clifford_mul(u, A)
