"""Tests for graded Laurent series arithmetic and the canonical series."""

import math

import pytest

from dualsteenrod import fparith
from dualsteenrod.milnor import MilnorContext, XI, ZETA
from dualsteenrod.series import (
    GradedSeries, OmegaSeries, SeriesContext,
    laurent_coeff_by_substitution, twist_substitute,
)


def scalar_series(mctx, coeffs, prec, basis=XI):
    """Series with integer coefficients: coeffs maps exponent -> int."""
    terms = {(e, 0): mctx.scalar(c, basis) for e, c in coeffs.items()}
    return GradedSeries(mctx, terms, basis, prec)


def test_add_mul_scalars():
    m = MilnorContext(2, 20)
    one_minus_t = scalar_series(m, {0: 1, 1: -1}, 30)
    one_plus_t = scalar_series(m, {0: 1, 1: 1}, 30)
    prod = one_minus_t * one_plus_t
    assert prod.coeff(0) == m.one()
    assert prod.coeff(1).is_zero()
    assert prod.coeff(2) == m.scalar(-1)


def test_t_minus_koszul_sign():
    m = MilnorContext(3, 20)
    tm = GradedSeries.t_minus(m, XI)
    f = GradedSeries.monomial(m.tau(0), 1)  # tau_0 * t_plus
    # t_minus * (tau_0 t_plus) = -tau_0 t_plus t_minus
    assert (tm * f).coeff(1, 1) == -m.tau(0)
    # (tau_0 t_plus) * t_minus = +tau_0 t_plus t_minus
    assert (f * tm).coeff(1, 1) == m.tau(0)
    # t_minus squares to zero
    assert (tm * tm).is_zero()


def test_odd_series_squares_to_zero():
    m = MilnorContext(3, 40)
    sc = SeriesContext(m, 9)
    tau = sc.series("tau")
    assert (tau * tau).is_zero()
    taubar = sc.series("taubar")
    assert (taubar * taubar).is_zero()


def test_geometric_inverse():
    m = MilnorContext(2, 10)
    f = scalar_series(m, {0: 1, 1: -1}, 12)
    g = f.invert()
    for n in range(10):
        assert g.coeff(n) == m.one()


def test_invert_monomial_and_roundtrip():
    m = MilnorContext(3, 64)
    sq = scalar_series(m, {2: 1}, math.inf)
    assert sq.invert().coeff(-2) == m.one()
    sc = SeriesContext(m, 27)
    xi = sc.series("xi")
    prod = xi * xi.invert()
    assert prod.coeff(0) == m.one()
    for n in range(1, 20):
        assert prod.coeff(n).is_zero()


@pytest.mark.parametrize("p,order", [(2, 16), (3, 16), (5, 16)])
def test_mutually_inverse_series(p, order):
    m = MilnorContext(p, 2 * order + 2)
    sc = SeriesContext(m, order)
    xi = sc.series("xi")
    zeta = sc.series("zeta")
    t = GradedSeries.monomial(m.one(XI), 1).truncate(order + 1)
    assert zeta.convert(XI).compose(xi).agrees_with(t)
    t_z = GradedSeries.monomial(m.one(ZETA), 1).truncate(order + 1)
    assert xi.convert(ZETA).compose(zeta).agrees_with(t_z)


def test_derivative_of_zeta_is_one():
    m = MilnorContext(3, 60)
    sc = SeriesContext(m, 27)
    d = sc.series("zeta").derivative()
    assert d.coeff(0) == m.one(ZETA)
    for n in range(1, 26):
        assert d.coeff(n).is_zero()


def test_twisted_zeta_alternating_signs():
    # omega * zeta(omega^{-1} t) = sum_r (-1)^r zeta_r t^{p^r}, omega-free.
    m3 = MilnorContext(3, 60)
    s3 = SeriesContext(m3, 27).twisted_zeta()
    assert s3.coeff(1) == m3.one(ZETA)
    assert s3.coeff(3) == -m3.zeta(1)
    assert s3.coeff(9) == m3.zeta(2)
    assert s3.coeff(27) == -m3.zeta(3)

    m5 = MilnorContext(5, 60)
    exports = []
    for g in fparith.nonresidues(5):
        s5 = SeriesContext(m5, 25, nonresidue=g).twisted_zeta()
        assert s5.coeff(1) == m5.one(ZETA)
        assert s5.coeff(5) == -m5.zeta(1)
        assert s5.coeff(25) == m5.zeta(2)
        exports.append(s5)
    assert exports[0].agrees_with(exports[1])


def test_twist_rejects_odd_residual():
    m = MilnorContext(5, 20)
    f = scalar_series(m, {2: 1}, 10, basis=ZETA)
    with pytest.raises(ValueError):
        twist_substitute(f, 2)


def test_omega_series_product():
    m = MilnorContext(5, 20)
    one = GradedSeries.constant(m.one())
    t = GradedSeries.monomial(m.one(), 1)
    a = OmegaSeries(one, t, 2)          # 1 + omega t
    b = OmegaSeries(one, -1 * t, 2)     # 1 - omega t
    prod = a * b                        # 1 - 2 t^2
    assert prod.odd.is_zero()
    assert prod.even.coeff(2) == m.scalar(-2)
    with pytest.raises(ValueError):
        a.export()


def test_precision_is_enforced():
    m = MilnorContext(2, 20)
    sc = SeriesContext(m, 12)
    xi = sc.series("xi")
    assert xi.coeff(12).is_zero()
    with pytest.raises(ValueError):
        xi.coeff(13)


def test_laurent_coeff_by_substitution_matches_direct():
    m = MilnorContext(2, 64)
    sc = SeriesContext(m, 24)
    xi = sc.series("xi")
    f = xi ** 3
    h = scalar_series(m, {1: 1, 2: 1}, 26)
    for n in range(3, 12):
        assert laurent_coeff_by_substitution(f, n, h) == f.coeff(n)


def test_laurent_coeff_via_inverse_coordinate():
    # Extracting [xi(t)^k]_{t^n} through the compositional-inverse
    # coordinate (the zeta series) must agree with direct reading; inside
    # the residue the composition collapses to a pure power of the new
    # variable, which is why this coordinate is the useful one.
    p = 3
    m = MilnorContext(p, 64)
    sc = SeriesContext(m, 20)
    xi = sc.series("xi")
    zeta_x = sc.series("zeta").convert(XI)
    for k in (1, 2, 3):
        f = xi ** k
        collapsed = f.compose(zeta_x)
        assert collapsed.coeff(k) == m.one(XI)
        for n in range(k, 12):
            assert laurent_coeff_by_substitution(f, n, zeta_x) == f.coeff(n)


def test_laurent_of_laurent_series():
    m = MilnorContext(2, 40)
    sc = SeriesContext(m, 20)
    xi = sc.series("xi")
    f = xi.invert()  # Laurent, valuation -1
    h = scalar_series(m, {1: 1, 3: 1}, 22)
    for n in range(-1, 8):
        assert laurent_coeff_by_substitution(f, n, h) == f.coeff(n)
