import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import perm_sign
from vortex_tqft.surface_algebra import (
    MultiVector,
    NotSymplecticError,
    SpMatrix,
    Surface,
    contract,
    indices_mask,
    monomial_pairing,
    new_surface,
    random_symplectic,
    sp_apply,
    wedge,
)


def mono(g, *indices, coeff=1):
    return MultiVector.monomial(Surface(g), indices, coeff)


def e(g, i):
    return MultiVector.basis_vector(Surface(g), i)


# --- new_surface -----------------------------------------------------------

def test_genus_zero_surface_is_empty():
    s = new_surface(0)
    assert s.basis_labels == ()
    assert s.intersection == ()


def test_genus_one_convention():
    s = new_surface(1)
    assert s.basis_labels == ("a1", "b1")
    assert s.intersection == ((0, 1), (-1, 0))


def test_genus_two_is_block_diagonal():
    assert new_surface(2).intersection == (
        (0, 1, 0, 0),
        (-1, 0, 0, 0),
        (0, 0, 0, 1),
        (0, 0, -1, 0),
    )


@pytest.mark.parametrize("g", range(0, 5))
def test_intersection_form_is_antisymmetric_unimodular(g):
    q = new_surface(g).intersection
    n = len(q)
    assert all(q[i][j] == -q[j][i] for i in range(n) for j in range(n))
    # block form: det is the product of the 2x2 block determinants
    assert all(q[2 * i][2 * i + 1] * -q[2 * i + 1][2 * i] == 1 for i in range(g))


def test_negative_genus_rejected():
    with pytest.raises(ValueError):
        new_surface(-1)


# --- wedge -----------------------------------------------------------------

def test_wedge_with_unit():
    assert wedge(e(2, 1), MultiVector.one(Surface(2))) == e(2, 1)


def test_wedge_nilpotent():
    assert not wedge(e(2, 1), e(2, 1))


def test_wedge_sign_from_sorting():
    expected_sign = perm_sign([4, 1])  # brute-force parity of the unsorted index list
    assert wedge(e(2, 4), e(2, 1)) == mono(2, 1, 4, coeff=expected_sign)
    assert expected_sign == -1


def test_wedge_ambient_mismatch():
    with pytest.raises(ValueError, match="ambient"):
        wedge(e(1, 1), e(2, 1))


@pytest.mark.parametrize("g", [2, 3])
def test_wedge_of_monomials_matches_permutation_parity(g):
    n = 2 * g
    for left in combinations(range(1, n + 1), 2):
        for right in combinations(range(1, n + 1), 2):
            got = wedge(mono(g, *left), mono(g, *right))
            if set(left) & set(right):
                assert not got
            else:
                sign = perm_sign(left + right)
                assert got == mono(g, *sorted(left + right), coeff=sign)


# --- contract --------------------------------------------------------------

def test_contract_pairing_convention():
    assert contract(e(1, 1), e(1, 2)) == MultiVector.one(Surface(1))


def test_contract_isotropic():
    assert not contract(e(1, 1), e(1, 1))


def test_contract_top_class_of_torus():
    assert contract(e(1, 1), mono(1, 1, 2)) == -e(1, 1)


def test_contract_requires_degree_one():
    with pytest.raises(ValueError):
        contract(mono(2, 1, 2), e(2, 1))
    with pytest.raises(ValueError):
        contract(e(2, 1) + MultiVector.one(Surface(2)), e(2, 2))


# --- sp_apply --------------------------------------------------------------

ROT = SpMatrix(((0, -1), (1, 0)))
SHEAR = SpMatrix(((1, 1), (0, 1)))


def test_sp_apply_identity():
    x = mono(2, 1, 3, coeff=3) + e(2, 4)
    assert sp_apply(SpMatrix.identity(2), x) == x


def test_sp_apply_rotation():
    assert sp_apply(ROT, e(1, 1)) == e(1, 2)
    assert sp_apply(ROT, e(1, 2)) == -e(1, 1)
    assert sp_apply(ROT, mono(1, 1, 2)) == mono(1, 1, 2)


def test_sp_apply_shear_column():
    assert sp_apply(SHEAR, e(1, 2)) == e(1, 1) + e(1, 2)


def test_sp_apply_size_mismatch():
    with pytest.raises(ValueError, match="size"):
        sp_apply(ROT, e(2, 1))


def test_non_symplectic_matrix_rejected():
    with pytest.raises(NotSymplecticError) as info:
        SpMatrix(((2, 0), (0, 1)))
    assert (info.value.row, info.value.col) == (1, 2)


def test_symplectic_inverse():
    m = random_symplectic(3, random.Random(5), 10)
    assert m @ m.inverse == SpMatrix.identity(3)


# --- monomial_pairing ------------------------------------------------------

def test_monomial_pairing_examples():
    assert monomial_pairing(e(2, 1), e(2, 1)) == 1
    assert monomial_pairing(e(2, 1), e(2, 2)) == 0
    assert monomial_pairing(2 * e(2, 1) + mono(2, 1, 2, coeff=3), mono(2, 1, 2)) == 3


# --- properties ------------------------------------------------------------

@st.composite
def multivectors(draw, g, degree=None):
    n = 2 * g
    masks = st.integers(0, (1 << n) - 1)
    if degree is not None:
        masks = masks.filter(lambda m: m.bit_count() == degree)
    terms = draw(st.dictionaries(masks, st.integers(-3, 3), max_size=5))
    return MultiVector(Surface(g), terms)


genera = st.integers(1, 4)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_anticommutativity(data):
    g = data.draw(genera)
    p = data.draw(st.integers(0, 2 * g))
    q = data.draw(st.integers(0, 2 * g))
    x = data.draw(multivectors(g, p))
    y = data.draw(multivectors(g, q))
    assert wedge(x, y) == (-1) ** (p * q) * wedge(y, x)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_associativity(data):
    g = data.draw(genera)
    x, y, z = (data.draw(multivectors(g)) for _ in range(3))
    assert wedge(wedge(x, y), z) == wedge(x, wedge(y, z))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_graded_leibniz(data):
    g = data.draw(genera)
    p = data.draw(st.integers(0, 2 * g))
    c = data.draw(multivectors(g, 1).filter(bool))
    x = data.draw(multivectors(g, p))
    y = data.draw(multivectors(g))
    lhs = contract(c, wedge(x, y))
    rhs = wedge(contract(c, x), y) + (-1) ** p * wedge(x, contract(c, y))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_sp_action_is_algebra_map(data):
    g = data.draw(st.integers(1, 3))
    m = random_symplectic(g, random.Random(data.draw(st.integers(0, 10**6))))
    x, y = data.draw(multivectors(g)), data.draw(multivectors(g))
    assert sp_apply(m, wedge(x, y)) == wedge(sp_apply(m, x), sp_apply(m, y))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_pairing_equivariance(data):
    g = data.draw(st.integers(1, 3))
    m = random_symplectic(g, random.Random(data.draw(st.integers(0, 10**6))))
    c = data.draw(multivectors(g, 1).filter(bool))
    omega = data.draw(multivectors(g))
    assert contract(sp_apply(m, c), sp_apply(m, omega)) == sp_apply(m, contract(c, omega))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_top_class_preserved(g):
    rng = random.Random(g)
    top = MultiVector(Surface(g), {(1 << 2 * g) - 1: 1})
    for _ in range(20):
        assert sp_apply(random_symplectic(g, rng, 12), top) == top


@pytest.mark.parametrize("g", [1, 2, 3])
def test_adjointness_at_max_index(g):
    n = 2 * g
    surface = Surface(g)
    b_last, a_last = e(g, n), e(g, n - 1)
    monomials = [MultiVector(surface, {m: 1}) for m in range(1 << n)]
    for omega in monomials:
        for eta in monomials:
            assert monomial_pairing(wedge(b_last, omega), eta) == monomial_pairing(omega, contract(a_last, eta))


def test_zero_coefficients_are_dropped():
    x = MultiVector(Surface(1), {1: Fraction(0), 2: 5})
    assert x.terms == {2: 5}
    assert not (e(1, 1) - e(1, 1))


def test_out_of_range_monomial_rejected():
    with pytest.raises(ValueError):
        MultiVector(Surface(1), {indices_mask([3]): 1})
