"""Acceptance gate: one test per criterion, exact equality throughout.

Every check here is exact (rational-function arithmetic); the only
"tolerances" are the stated wall-time budgets, which these runs undercut by
a wide margin.  Each test prints a single PASS/FAIL line (visible with -s or
in failure reports).
"""

import time

from fractions import Fraction

from quadosc.coeff import LAM, ONE, scalar
from quadosc import operators as ops
from quadosc import jordan as J
from quadosc import biortho as B
from quadosc import fock


def _gate(num, name, budget_s, records, extra_ok=True):
    elapsed = getattr(_gate, "elapsed", 0.0)
    bad = [r for r in records if not r.ok]
    ok = not bad and extra_ok and elapsed < budget_s
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {num:02d}] {status} {name}: {len(records)} checks,"
          f" {len(bad)} failed, {elapsed:.1f}s (budget {budget_s}s)")
    assert not bad, "; ".join(f"{r.id}: {r.residual[:100]}" for r in bad[:5])
    assert extra_ok
    assert elapsed < budget_s
    return ok


class _timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        _gate.elapsed = time.perf_counter() - self.t0
        return False


def test_criterion_01_commutator_suite():
    with _timer():
        records = (ops.verify_ladder_relations() + ops.verify_q_factorization()
                   + ops.verify_nine_dim_algebra())
    _gate(1, "commutator suite (ladder relations, 36+9 bilinear brackets)", 10,
          records)


def test_criterion_02_gl3_layer():
    with _timer():
        records = ops.verify_gl3()
    double = [r for r in records if r.id.startswith("gl3/double")]
    ccr = [r for r in records if r.id.startswith("gl3/ccr")]
    casimir = [r for r in records if r.id == "gl3/casimir"]
    _gate(2, "gl(3) structure constants, double construction, Casimir", 10,
          records, extra_ok=(len(double) == 9 and len(ccr) == 81 and len(casimir) == 1))


def test_criterion_03_boson_sp6_osp16():
    with _timer():
        records = ops.verify_boson_layer() + ops.verify_sp6_osp16_closure()
    _gate(3, "boson layer and symplectic/orthosymplectic closure", 30, records)


def test_criterion_04_integrals():
    with _timer():
        records = ops.verify_integrals_cubic_algebra()
    probe = next(r for r in records if r.id == "integrals/R0R3")
    _gate(4, "integrals of motion and the cubic algebra", 30, records,
          extra_ok="(-4*lam)*R0^2" in probe.note)


def test_criterion_05_jordan_layer():
    with _timer():
        records = (J.verify_jordan_layer(4, 4)
                   + J.verify_coefficient_recursions(8))
    dims = [r for r in records if r.id.startswith("jordan/dim-")]
    _gate(5, "Jordan blocks to combined index 4 and recursions to order 8", 300,
          records, extra_ok=(len(dims) == 15))


def test_criterion_06_ladder_actions():
    with _timer():
        records = J.verify_ladder_actions(3, 3)
    _gate(6, "ladder actions on all members to combined index 3", 300, records,
          extra_ok=(len(records) == 180))


def test_criterion_07_uvw_layer():
    with _timer():
        records = J.verify_uvw_layer(3)
    _gate(7, "transformed-variable layer with tabulated polynomials", 60, records)


def test_criterion_08_inner_product_oracles():
    with _timer():
        records = B.verify_oracle_agreement(6)
    # the unit convention (ratios of the squared ground-state integral, whose
    # absolute value is (pi/lam)^(3/2)) is part of the documented contract
    documented = "(pi/lam)^(3/2)" in fock.__doc__
    _gate(8, "contraction permanents equal Gaussian moments to degree 6", 120,
          records, extra_ok=documented)


def test_criterion_09_normalization():
    with _timer():
        records = (B.verify_normalization(4, 4) + B.verify_T_vanishing(4, 4))
    _gate(9, "member-independent mirror pairings and vanishing pairings", 300,
          records)


def test_criterion_10_biorthogonalization():
    with _timer():
        records = (B.verify_gram_blocks(4, 4)
                   + B.verify_reference_phi_blocks()
                   + B.verify_orthogonalization(3, 3)
                   + B.verify_cross_block_orthogonality(2, 2))
    # the published coefficient values appear verbatim in the reference table
    r = B._REFERENCE_PHI
    values_ok = (
        r[(0, 1)][1][0]() == -ONE / (2 * LAM)
        and r[(0, 2)][2][0]() == ONE / (6 * LAM ** 2)
        and r[(0, 2)][3][0]() == ONE / (48 * LAM ** 3)
        and r[(0, 3)][2][0]() == scalar(Fraction(3, 20)) / LAM ** 2
        and r[(0, 3)][4][0]() == -ONE / (300 * LAM ** 4)
    )
    # NOTE: the degenerate-pair record asserts exact orthogonality between the
    # blocks sharing one energy. The computed pairing of the single-member
    # block against the bottom of the five-member block is -8*g^2 (confirmed
    # independently by the moment engine and by numerical quadrature), so that
    # record fails and this criterion is reported honestly as failing.
    _gate(10, "Gram structure, reference transforms, cross-block pairings", 300,
          records, extra_ok=values_ok)
