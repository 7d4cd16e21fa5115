"""Inner-product engines: contraction permanents vs Gaussian moments."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from quadosc.coeff import LAM, G, ONE, ZERO, scalar
from quadosc.weyl import ground_state, GaussianState, Poly3, SPACE_ZZB
from quadosc import fock
from quadosc import operators as ops
from quadosc.fock import CreationPolynomial, wick_inner, gaussian_moment_inner


def permanent_oracle(rows):
    """Permanent by explicit permutation sum; the independent reference for
    the inclusion-exclusion implementation."""
    n = len(rows)
    total = ZERO
    for perm in itertools.permutations(range(n)):
        prod = ONE
        for i, j in enumerate(perm):
            prod = prod * rows[i][j]
        total = total + prod
    return total


@pytest.mark.parametrize("size", [0, 1, 2, 3, 4])
def test_ryser_against_permutation_sum(size):
    vals = [ZERO, ONE, LAM, G, -LAM, scalar(2) * G]
    rows = [[vals[(3 * i + 5 * j + i * j) % len(vals)] for j in range(size)]
            for i in range(size)]
    assert fock._permanent(rows) == permanent_oracle(rows)


def test_contraction_table_cross_validates():
    table = fock.contraction_matrix()
    assert table[("A", "B")] == -2 * LAM
    assert table[("C", "C")] == -2 * LAM
    assert table[("B", "C")] == 2 * G
    assert table[("A", "A")].is_zero()
    for rec in fock.verify_contraction_matrix():
        assert rec.ok, rec.id


def test_wick_examples():
    a = CreationPolynomial.word(1, 0, 0)
    b = CreationPolynomial.word(0, 1, 0)
    c = CreationPolynomial.word(0, 0, 1)
    assert wick_inner(a, a).is_zero()          # self-orthogonal
    assert wick_inner(c, b) == -2 * G
    q = fock.expand_q_power(1)
    assert wick_inner(q, q) == scalar(24) * LAM * LAM


def test_wick_length_parity():
    a = CreationPolynomial.word(1, 0, 0)
    ab = CreationPolynomial.word(1, 1, 0)
    assert wick_inner(a, ab).is_zero()


def test_expand_q_power():
    assert fock.expand_q_power(0) == CreationPolynomial.word(0, 0, 0)
    q1 = fock.expand_q_power(1)
    assert q1.terms == {(1, 1, 0): scalar(2), (0, 0, 2): -ONE}
    q2 = fock.expand_q_power(2)
    assert q2.terms == {(2, 2, 0): scalar(4), (1, 1, 2): scalar(-4), (0, 0, 4): ONE}
    assert q2 == q1 * q1


def test_q_power_matches_operator_route():
    cat = ops.catalogue()
    state = ground_state()
    for k in (1, 2, 3):
        state = cat["Q+"].apply(state)
        assert fock.to_gaussian_state(fock.expand_q_power(k)) == state


def test_single_letter_wavefunctions():
    lam, g = LAM, G
    z = Poly3({(1, 0, 0): ONE}, SPACE_ZZB)
    zb = Poly3({(0, 1, 0): ONE}, SPACE_ZZB)
    x3 = Poly3({(0, 0, 1): ONE}, SPACE_ZZB)
    assert fock.to_gaussian_state(CreationPolynomial.word(1, 0, 0)) == \
        GaussianState(zb.scale(-2 * lam))
    assert fock.to_gaussian_state(CreationPolynomial.word(0, 1, 0)) == \
        GaussianState(z.scale(-lam) + x3.scale(2 * g))
    assert fock.to_gaussian_state(CreationPolynomial.word(0, 0, 1)) == \
        GaussianState(zb.scale(2 * g) + x3.scale(-2 * lam))


def test_word_map_carries_corrections():
    # repeated letters are not plain monomial substitutions
    cc = fock.creation_to_uvw(CreationPolynomial.word(0, 0, 2))
    w2 = Poly3({(0, 0, 2): scalar(4)}, "uvw")
    c0 = Poly3({(0, 0, 0): -2 * LAM}, "uvw")
    assert cc == w2 + c0


def test_moment_anchors():
    psi0 = ground_state()
    assert gaussian_moment_inner(psi0, psi0) == ONE
    # second moment of the third coordinate from the exact inverse
    x3 = GaussianState(Poly3({(0, 0, 1): ONE}, SPACE_ZZB))
    assert gaussian_moment_inner(x3, x3) == ONE / (2 * LAM)


def test_moment_matches_contraction_value():
    # pairing of the first two letters reproduces the cross contraction
    a = fock.to_gaussian_state(CreationPolynomial.word(1, 0, 0))
    b = fock.to_gaussian_state(CreationPolynomial.word(0, 1, 0))
    assert gaussian_moment_inner(a, b) == 2 * LAM
    assert wick_inner(CreationPolynomial.word(1, 0, 0),
                      CreationPolynomial.word(0, 1, 0)) == 2 * LAM


def words(max_deg=3):
    return st.tuples(st.integers(0, max_deg), st.integers(0, max_deg),
                     st.integers(0, max_deg)).filter(lambda w: sum(w) <= max_deg)


def creation_polys():
    coeffs = st.sampled_from([ONE, -ONE, LAM, G, scalar(2)])
    term = st.tuples(words(), coeffs)
    return st.builds(
        lambda ts: CreationPolynomial({w: c for w, c in ts}),
        st.lists(term, min_size=0, max_size=2))


@settings(max_examples=20, deadline=None)
@given(creation_polys(), creation_polys())
def test_oracle_equivalence_random(p, q):
    assert wick_inner(p, q) == gaussian_moment_inner(
        fock.to_gaussian_state(p), fock.to_gaussian_state(q))


@settings(max_examples=25, deadline=None)
@given(creation_polys(), creation_polys())
def test_wick_symmetry(p, q):
    assert wick_inner(p, q) == wick_inner(q, p)


@settings(max_examples=25, deadline=None)
@given(words(), words())
def test_wick_vanishes_on_unequal_lengths(w1, w2):
    if sum(w1) != sum(w2):
        assert wick_inner(CreationPolynomial.word(*w1),
                          CreationPolynomial.word(*w2)).is_zero()


@settings(max_examples=10, deadline=None)
@given(creation_polys(), creation_polys())
def test_h_symmetry_of_the_form(p, q):
    # the structural source of the Hankel property
    cat = ops.catalogue()
    hp = fock.gaussian_state_to_creation(cat["H"].apply(fock.to_gaussian_state(p)))
    hq = fock.gaussian_state_to_creation(cat["H"].apply(fock.to_gaussian_state(q)))
    assert wick_inner(hp, q) == wick_inner(p, hq)


def test_eta_apply_function():
    s = fock.to_gaussian_state(CreationPolynomial.word(1, 0, 0))
    flipped = fock.eta_apply(s)
    assert flipped.poly.terms == {(1, 0, 0): -2 * LAM}   # zb became z
    assert fock.eta_apply(flipped) == s


def test_round_trip_uvw_creation():
    p = CreationPolynomial({(2, 1, 0): ONE, (0, 0, 3): scalar(5), (1, 1, 1): G})
    assert fock.uvw_to_creation(fock.creation_to_uvw(p)) == p


def test_serialization():
    p = CreationPolynomial({(1, 1, 0): scalar(2), (0, 0, 2): -ONE})
    assert p.to_json() == [
        {"word": [1, 1, 0], "coeff": "2"},
        {"word": [0, 0, 2], "coeff": "-1"},
    ]
