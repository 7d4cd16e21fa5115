"""Normalization constants, Gram blocks, and the orthogonalized basis."""

import math

import pytest

from quadosc.coeff import LAM, G, ONE, ZERO, scalar
from quadosc import biortho as B
from quadosc import fock
from quadosc.fock import wick_inner
from quadosc.jordan import JordanLabel, build_state


def test_normalization_values():
    assert B.normalization(0, 1) == scalar(8) * LAM * G * G
    assert B.normalization(1, 1) == scalar(320) * G * G * LAM ** 3
    for k in range(4):
        want = scalar(8 ** k * math.factorial(k)
                      * B._dfact(2 * k + 1)) * LAM ** (2 * k)
        assert B.normalization(k, 0) == want


def test_norm_pairing_examples():
    assert B.norm_pairing(0, 1, 0) == scalar(8) * LAM * G * G
    assert B.norm_pairing(1, 1, 1) == scalar(320) * G * G * LAM ** 3
    # the pairing is member independent
    vals = {B.norm_pairing(1, 1, m).render() for m in range(3)}
    assert len(vals) == 1


def test_creation_over_normalized_ratio():
    assert B.creation_over_normalized_ratio(2) == scalar(2 ** 4 * 2 * 3) * G ** 4


def test_gram_block_01():
    blk = B.gram(0, 1)
    N = B.normalization(0, 1)
    assert [(h / N) for h in blk.hankel] == \
        [ZERO, ZERO, ONE, ONE / (2 * LAM), ZERO]
    assert blk.matrix[0][0].is_zero()


def test_gram_block_00():
    blk = B.gram(0, 0)
    assert blk.dimension == 1
    assert blk.matrix[0][0] == ONE


def test_degenerate_cross_block_values():
    """Blocks at the shared energy pair: the chain-top pairings vanish as the
    symmetry argument demands, but the chain-bottom pairing is forced to a
    nonzero constant (confirmed by both engines and by direct quadrature)."""
    bra = build_state(JordanLabel(1, 0, 0)).creation
    for m in range(4):
        ket = build_state(JordanLabel(0, 2, m)).creation
        assert wick_inner(bra, ket).is_zero()
    bottom = build_state(JordanLabel(0, 2, 4)).creation
    assert wick_inner(bra, bottom) == scalar(-8) * G * G
    s1 = fock.to_gaussian_state(bra)
    s2 = fock.to_gaussian_state(bottom)
    assert fock.gaussian_moment_inner(s1, s2) == scalar(-8) * G * G


def test_nondegenerate_cross_blocks_vanish():
    for (k1, n1), (k2, n2) in (((0, 0), (0, 1)), ((0, 1), (0, 2)), ((1, 0), (0, 1)),
                               ((1, 0), (2, 0)), ((0, 1), (1, 1))):
        for m1 in range(2 * n1 + 1):
            for m2 in range(2 * n2 + 1):
                v = wick_inner(build_state(JordanLabel(k1, n1, m1)).creation,
                               build_state(JordanLabel(k2, n2, m2)).creation)
                assert v.is_zero(), (k1, n1, m1, k2, n2, m2, v.render())


def test_t_vanishing_examples():
    assert B.t_vanishing_value(2, 1, 1).is_zero()
    assert B.t_vanishing_value(3, 1, 2).is_zero()
    assert B.t_vanishing_value(1, 2, 1).is_zero()
    with pytest.raises(ValueError):
        B.t_vanishing_value(1, 1, 0)


def test_orthogonalize_block_01():
    t = B.orthogonalize(0, 1)
    rows = t.apply_rows()
    blk = B.gram(0, 1)
    assert B._phi_gram_is_antidiagonal(blk, rows)
    # this solver keeps the first half of the chain untouched
    assert t.rows[0] == ()
    assert t.rows[1] == (ZERO,)


def test_reference_phi_block_01_coefficients():
    # the published transform is a different, equally valid gauge
    blk = B.gram(0, 1)
    rows = [
        (ONE,),
        (-ONE / (2 * LAM), ONE),
        (ZERO, ZERO, ONE),
    ]
    assert B._phi_gram_is_antidiagonal(blk, rows)


def test_reference_phi_blocks_suite():
    assert all(r.ok for r in B.verify_reference_phi_blocks())


def test_orthogonalize_suite_small():
    assert all(r.ok for r in B.verify_orthogonalization(2, 2))


def test_adjoint_rules_suite():
    assert all(r.ok for r in B.verify_adjoint_rules())


def test_q_identities_small():
    assert all(r.ok for r in B.verify_q_identities(2, 2))


def test_normalization_suite_small():
    assert all(r.ok for r in B.verify_normalization(2, 2))


def test_gram_suite_small():
    assert all(r.ok for r in B.verify_gram_blocks(2, 2))


def test_gram_json():
    doc = B.gram(0, 1).to_json()
    assert doc["k"] == 0 and doc["n"] == 1
    assert doc["normalization"] == "8*lam*g^2"
    assert doc["matrix"][1][2] == "4*g^2"
