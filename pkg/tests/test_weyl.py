"""Weyl algebra: normal ordering, involutions, and the action on states."""

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

_SLOW_OK = settings(max_examples=20, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow,
                                           HealthCheck.data_too_large,
                                           HealthCheck.filter_too_much])

from quadosc.coeff import LAM, G, I, ONE, scalar
from quadosc.weyl import (WeylOperator, Poly3, GaussianState, SPACE_ZZB,
                          variable, derivative, identity_op, ground_state,
                          poly_var, poly_one)
from quadosc.operators import catalogue

Z, ZB, X3 = (variable(i) for i in range(3))
DZ, DZB, D3 = (derivative(i) for i in range(3))
IDENT = identity_op()


def test_normal_ordering_basics():
    assert DZ * Z == Z * DZ + IDENT
    assert DZ * ZB == ZB * DZ
    assert D3 * X3 * X3 == X3 * X3 * D3 + X3.scale(2)


def test_higher_order_reordering():
    # d^2 x^2 = x^2 d^2 + 4 x d + 2
    lhs = DZ * DZ * Z * Z
    rhs = Z * Z * DZ * DZ + (Z * DZ).scale(4) + IDENT.scale(2)
    assert lhs == rhs


def test_ladder_pair_commutes():
    cat = catalogue()
    assert cat["A-"].commutator(cat["A+"]).is_zero()


def test_h_commutators():
    cat = catalogue()
    assert cat["H"].commutator(cat["A+"]) == cat["A+"].scale(2 * LAM)
    assert cat["H"].commutator(cat["Q+"]) == cat["Q+"].scale(4 * LAM)


def test_transpose_example():
    # integration-by-parts transpose keeps each variable in place
    assert (Z * DZ).transpose() == -(Z * DZ) - IDENT
    assert (X3 * D3).transpose() == -(X3 * D3) - IDENT


def test_adjoint_examples():
    # the Hermitian adjoint swaps the conjugate pair of variables
    assert (Z * DZ).formal_adjoint() == -(ZB * DZB) - IDENT
    assert X3.scale(I).formal_adjoint() == X3.scale(-I)
    cat = catalogue()
    assert cat["H"].formal_adjoint() == cat["H"].eta_conjugate()


def test_eta_examples():
    cat = catalogue()
    assert Z.eta_conjugate() == ZB
    assert cat["H"].eta_conjugate() == cat["H"].formal_adjoint()
    assert cat["A+"].formal_adjoint().eta_conjugate() == -cat["A-"]


def test_apply_examples():
    cat = catalogue()
    psi0 = ground_state()
    assert cat["A-"].apply(psi0).is_zero()
    assert cat["Q-"].apply(psi0).is_zero()
    assert cat["B-"].apply(psi0).is_zero()
    assert cat["C-"].apply(psi0).is_zero()
    assert cat["A+"].apply(psi0) == GaussianState(poly_var(1).scale(-2 * LAM))
    assert cat["H"].apply(psi0).is_zero()


def test_eta_apply_involution():
    s = GaussianState(poly_var(0) + poly_var(2).scale(G))
    assert s.eta_apply().eta_apply() == s
    assert ground_state().eta_apply().poly == poly_one()
    assert ground_state().eta_apply().weight != ground_state().weight


def small_scalars():
    return st.sampled_from([ONE, -ONE, LAM, G, I, LAM * G, ONE + G, scalar(2)])


def monomials():
    e = st.integers(0, 1)
    return st.tuples(e, e, e, e, e, e)


def operators():
    term = st.tuples(monomials(), small_scalars())
    return st.builds(
        lambda ts: WeylOperator({m: c for m, c in ts}, SPACE_ZZB),
        st.lists(term, min_size=0, max_size=3))


def states():
    e = st.integers(0, 2)
    term = st.tuples(st.tuples(e, e, e), small_scalars())
    return st.builds(
        lambda ts: GaussianState(Poly3({m: c for m, c in ts}, SPACE_ZZB)),
        st.lists(term, min_size=0, max_size=3))


@_SLOW_OK
@given(operators(), operators(), operators())
def test_product_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@_SLOW_OK
@given(operators(), operators())
def test_adjoint_antihomomorphism(a, b):
    assert (a * b).formal_adjoint() == b.formal_adjoint() * a.formal_adjoint()
    assert a.formal_adjoint().formal_adjoint() == a
    assert (a * b).transpose() == b.transpose() * a.transpose()
    assert a.eta_conjugate().eta_conjugate() == a
    assert (a * b).eta_conjugate() == a.eta_conjugate() * b.eta_conjugate()


@_SLOW_OK
@given(operators(), operators(), states())
def test_apply_is_module_action(a, b, s):
    assert (a * b).apply(s) == a.apply(b.apply(s))
    assert (a + b).apply(s) == a.apply(s) + b.apply(s)


@_SLOW_OK
@given(operators(), operators(), operators())
def test_jacobi_identity(a, b, c):
    total = (a.commutator(b.commutator(c))
             + c.commutator(a.commutator(b))
             + b.commutator(c.commutator(a)))
    assert total.is_zero()


def test_space_mismatch_rejected():
    from quadosc.weyl import SPACE_UVW
    u = variable(0, SPACE_UVW)
    with pytest.raises(ValueError):
        _ = Z + u
    with pytest.raises(ValueError):
        _ = Z * u
