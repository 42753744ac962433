"""Tests for the Dyer-Lashof action layer."""

import pytest

from dualsteenrod import fparith
from dualsteenrod.milnor import MilnorContext, XI, ZETA
from dualsteenrod.series import GradedSeries, SeriesContext
from dualsteenrod.dyerlashof import (
    FormalDL,
    dl_apply,
    dl_conjugated,
    dl_newton,
    dl_series,
    dl_series_at,
    dl_series_modsq,
    dl_tau0,
    dl_word,
    dl_zeta,
    newton,
    newton_series,
    xi_series,
)

M2 = MilnorContext(2, 70)
M3 = MilnorContext(3, 80)
M5 = MilnorContext(5, 60)


# ----------------------------------------------------------------------
# Newton polynomials


def test_newton_small_frozen_values():
    x1 = M2.xi(1)
    assert newton(M2, 1) == x1
    assert newton(M2, 2) == x1 ** 2
    assert newton(M2, 3) == x1 ** 3 + M2.xi(2)
    assert newton(M3, 1).is_zero()
    assert newton(M3, 2) == M3.xi(1)
    assert newton(M3, 6) == M3.xi(1) ** 3


def test_newton_hits_conjugate_generators():
    for m, smax in ((M2, 5), (M3, 3), (M5, 2)):
        for s in range(1, smax + 1):
            n = m.p ** s - 1
            assert newton(m, n) == m.convert(m.zeta(s) * (-1), XI)


def test_newton_frobenius_relation():
    for m, nmax in ((M2, 10), (M3, 6), (M5, 4)):
        for n in range(1, nmax + 1):
            assert newton(m, m.p * n) == newton(m, n) ** m.p


def test_newton_generating_series():
    for m, order in ((M2, 24), (M3, 20), (M5, 16)):
        sctx = SeriesContext(m, order)
        t_over_xi = sctx.series("xi").shift(-1).invert()
        one = GradedSeries.constant(m.one(XI))
        assert (newton_series(sctx) + t_over_xi).agrees_with(one)


def test_newton_multiples_of_p_minus_1_not_zero():
    for m, kmax in ((M2, 25), (M3, 12), (M5, 6)):
        for k in range(1, kmax + 1):
            n = k * (m.p - 1)
            assert not m.kill_poly_above(newton(m, n), 1).is_zero()


# ----------------------------------------------------------------------
# the closed form on Newton classes against the Cartan evaluator


def test_dl_newton_matches_cartan_evaluator():
    for n in (1, 2, 3, 5):
        for r in range(1, 11):
            direct = M2.convert(dl_newton(M2, r, n), ZETA)
            assert direct == dl_apply(M2, (0, r), newton(M2, n))
    for n in (2, 4):
        for r in range(1, 7):
            direct = M3.convert(dl_newton(M3, r, n), ZETA)
            assert direct == dl_apply(M3, (0, r), newton(M3, n))


# ----------------------------------------------------------------------
# the action on conjugate polynomial generators


def test_dl_zeta_frozen_values():
    z1 = M2.zeta(1)
    assert dl_zeta(M2, 1, 1) == z1 ** 2
    assert dl_zeta(M2, 2, 1) == M2.zeta(2)
    assert dl_zeta(M2, 3, 1) == z1 ** 4
    assert dl_zeta(M2, 6, 1) == M2.zeta(3)
    assert dl_zeta(M2, 14, 1) == M2.zeta(4)
    assert dl_zeta(M3, 1, 1).is_zero()
    assert dl_zeta(M3, 2, 1) == M3.zeta(1) ** 3
    assert dl_zeta(M3, 3, 1) == M3.zeta(2)
    assert dl_zeta(M5, 4, 1) == M5.zeta(1) ** 5
    assert dl_zeta(M5, 5, 1) == M5.zeta(2)


def test_dl_zeta_vanishing_pattern():
    for s in (1, 2, 3):
        q = 2 ** s
        for r in range(1, 33):
            val = dl_zeta(M2, r, s)
            if r % q in (0, q - 1):
                assert not val.is_zero()
                assert val == dl_zeta(M2, r + q - 2, 1)
            else:
                assert val.is_zero()
    for s in (1, 2):
        q = 3 ** s
        for r in range(1, 19):
            val = dl_zeta(M3, r, s)
            assert val.is_zero() == (r % q not in (0, q - 1))


def test_dl_zeta_tower_and_restriction():
    for s in (1, 2, 3):
        assert dl_zeta(M2, 2 ** s, s) == M2.zeta(s + 1)
        assert dl_zeta(M2, 2 ** s - 1, s) == M2.zeta(s) ** 2
    for s in (1, 2):
        assert dl_zeta(M3, 3 ** s, s) == M3.zeta(s + 1)
        assert dl_zeta(M3, 3 ** s - 1, s) == M3.zeta(s) ** 3
    assert dl_zeta(M5, 5, 1) == M5.zeta(2)
    assert dl_zeta(M5, 4, 1) == M5.zeta(1) ** 5


# ----------------------------------------------------------------------
# the exterior rows at odd primes


def test_dl_tau_rows():
    t0 = M3.tau(0)
    assert dl_apply(M3, (0, 1), t0) == M3.taubar(1) * (-1)
    assert dl_apply(M3, (0, 4), t0) == M3.taubar(2)
    assert dl_apply(M3, (1, 1), t0) == M3.zeta(1) * (-1)
    assert dl_apply(M3, (1, 4), t0) == M3.zeta(2)
    u0 = M5.tau(0)
    assert dl_apply(M5, (0, 1), u0) == M5.taubar(1) * (-1)
    assert dl_apply(M5, (1, 6), u0) == M5.zeta(2)


def test_dl_taubar_tower():
    assert dl_apply(M3, (0, 3), M3.taubar(1)) == M3.taubar(2)
    assert dl_apply(M3, (0, 9), M3.taubar(2)) == M3.taubar(3)
    assert dl_apply(M3, (1, 3), M3.taubar(1)) == M3.zeta(2)
    assert dl_apply(M3, (1, 9), M3.taubar(2)) == M3.zeta(3)


def test_bockstein_row_never_vanishes():
    for a in range(1, 21):
        assert not dl_tau0(M3, 1, a).is_zero()


# ----------------------------------------------------------------------
# unit, unstable range, restriction


def test_unit_and_unstable_vanishing():
    assert dl_apply(M2, (0, 0), M2.one(ZETA)) == M2.one(ZETA)
    assert dl_apply(M2, (0, 3), M2.one(ZETA)).is_zero()
    prod2 = M2.zeta(1) * M2.zeta(2)
    for r in (1, 2, 3):
        assert dl_apply(M2, (0, r), prod2).is_zero()
    assert dl_apply(M3, (0, 1), M3.zeta(1)).is_zero()
    assert dl_apply(M3, (0, 2), M3.taubar(0) * M3.taubar(1)).is_zero()


def test_restriction_on_products():
    prod2 = M2.zeta(1) * M2.zeta(2)
    assert dl_apply(M2, (0, 4), prod2) == prod2 ** 2
    sq = M3.zeta(1) ** 2
    assert dl_apply(M3, (0, 4), sq) == M3.zeta(1) ** 6
    odd_prod = M3.taubar(0) * M3.taubar(1)
    assert dl_apply(M3, (0, 3), odd_prod).is_zero()


# ----------------------------------------------------------------------
# the generator identities


def test_polynomial_generator_identity_p2():
    for s in (1, 2, 3):
        lhs = dl_apply(M2, (0, 2 ** s), M2.xi(s))
        rhs = M2.convert(M2.xi(s + 1) + M2.xi(1) * M2.xi(s) ** 2, ZETA)
        assert lhs == rhs


def test_polynomial_generator_identity_p2_cross_terms():
    for s in (2, 3, 4):
        for r in range(1, s):
            x = M2.zeta(r) * M2.convert(M2.xi(s - r), ZETA) ** (2 ** r)
            lhs = dl_apply(M2, (0, 2 ** s), x)
            rhs = M2.zeta(r + 1) * M2.convert(M2.xi(s - r), ZETA) ** (2 ** (r + 1))
            assert lhs == rhs


def test_generator_identities_p3():
    c = lambda e: M3.convert(e, ZETA)
    t = M3.tau
    x = M3.xi
    assert dl_apply(M3, (0, 1), t(0)) == c(t(1) - t(0) * x(1))
    assert dl_apply(M3, (0, 3), t(1)) == c(t(2) - t(0) * x(2))
    assert dl_apply(M3, (1, 1), t(0)) == c(x(1))
    assert dl_apply(M3, (1, 3), t(1)) == c(x(2))
    assert dl_apply(M3, (0, 3), x(1)) == c(x(2) - x(1) ** 4)
    assert dl_apply(M3, (0, 9), x(2)) == c(x(3) - x(1) * x(2) ** 3)


def test_conjugated_operation_p2():
    for s in (2, 3):
        lhs = dl_conjugated(M2, 2 ** s - 2, M2.xi(1))
        assert lhs == M2.convert(M2.xi(s), lhs.basis)


def test_dl_word_rightmost_first():
    inner = dl_apply(M2, (0, 2), M2.zeta(1))
    assert dl_word(M2, [(0, 5), (0, 2)], M2.zeta(1)) == dl_apply(M2, (0, 5), inner)


# ----------------------------------------------------------------------
# formal unknowns


def test_undetermined_entries_raise_or_carry():
    # beyond the truncation cap the tau_0-row solver stands down and the
    # entry stays formal: it raises plainly and carries under allow_formal
    with pytest.raises(ValueError):
        dl_apply(M3, (0, 20), M3.tau(0))
    f = dl_apply(M3, (0, 20), M3.tau(0), allow_formal=True)
    assert f.elem.is_zero()
    assert set(f.unknowns) == {(0, 20)}
    assert f.unknowns[(0, 20)] == M3.one(ZETA)
    # within range the commutation-rule solver fills the row: frozen value
    assert dl_apply(M3, (0, 2), M3.tau(0)) == M3.taubar(1) * M3.zeta(1)


def test_formal_koszul_sign_and_bockstein():
    u = FormalDL.unknown(M3, 0, 2)
    w = FormalDL.of(M3.taubar(0))
    assert u.mul(w).unknowns[(0, 2)] == M3.taubar(0) * (-1)
    assert w.mul(u).unknowns[(0, 2)] == M3.taubar(0)
    b = dl_tau0(M3, 0, 20).bockstein()
    assert set(b.unknowns) == {(1, 20)} and b.elem.is_zero()
    # in range, the Bockstein of the plain row is the Bockstein row
    resolved = dl_tau0(M3, 0, 2).bockstein()
    assert resolved.is_pure()
    assert resolved.elem == dl_tau0(M3, 1, 2).pure()
    known = dl_tau0(M3, 0, 10).bockstein()
    assert known.is_pure() and known.elem == dl_zeta(M3, 9, 1)


def test_bockstein_row_witness_consistency():
    p = 3
    for a in range(1, 19):
        candidates = []
        j, sig = 1, 1
        while sig <= a:
            if sig == a:
                candidates.append(M3.zeta(j) * ((-1) ** j))
            j += 1
            sig = sig * p + 1
        s = 1
        while fparith.sigma_idx(s, p) < a:
            r = a - fparith.sigma_idx(s, p)
            if r >= 1 and r % p ** s == 0:
                candidates.append(dl_zeta(M3, r, s) * ((-1) ** (s + 1)))
            if r >= 1 and (r + 1) % p ** s == 0:
                candidates.append(dl_zeta(M3, r, s) * ((-1) ** s))
            s += 1
        for other in candidates[1:]:
            assert other == candidates[0]
        row = dl_tau0(M3, 1, a)
        assert row.is_pure()
        if candidates:
            assert row.elem == candidates[0]
        # the Bockstein row is the Bockstein of the plain row throughout
        assert row.elem == M3.bockstein(dl_tau0(M3, 0, a).pure())


# ----------------------------------------------------------------------
# Cartan cross-routes


def test_cartan_cross_route_p2():
    x = M2.zeta(1) ** 2
    y = M2.zeta(1) * M2.zeta(2)
    for r in range(1, 13):
        conv = M2.zero(ZETA)
        for i in range(0, r + 1):
            conv = conv + dl_apply(M2, (0, i), x) * dl_apply(M2, (0, r - i), y)
        assert dl_apply(M2, (0, r), x * y) == conv


def test_cartan_cross_route_p3():
    x = M3.zeta(1)
    y = M3.zeta(1) ** 2
    for r in range(1, 9):
        conv = M3.zero(ZETA)
        for i in range(0, r + 1):
            conv = conv + dl_apply(M3, (0, i), x) * dl_apply(M3, (0, r - i), y)
        assert dl_apply(M3, (0, r), x * y) == conv


def test_bockstein_cartan_cross_route_formal():
    u, v = M3.taubar(0), M3.taubar(1)
    ell = 5
    route_a = dl_apply(M3, (1, ell), u * v, allow_formal=True)
    route_b = FormalDL.zero(M3)
    for a in range(0, ell + 1):
        b = ell - a
        t1 = dl_apply(M3, (1, a), u, allow_formal=True).mul(
            dl_apply(M3, (0, b), v, allow_formal=True))
        t2 = dl_apply(M3, (0, a), u, allow_formal=True).mul(
            dl_apply(M3, (1, b), v, allow_formal=True)).scale(-1)
        route_b = route_b + t1 + t2
    assert route_a == route_b


# ----------------------------------------------------------------------
# generating-series identities


def test_total_operation_series_identity_p2():
    sctx = SeriesContext(M2, 20)
    lhs = dl_series(sctx, M2.zeta(1)).convert(XI)
    inv_t = GradedSeries.monomial(M2.one(XI), -1)
    rhs = inv_t - sctx.series("xi").invert() + GradedSeries.constant(
        M2.convert(M2.zeta(1), XI))
    assert lhs.agrees_with(rhs)


def test_substituted_series_identity_p2():
    sctx = SeriesContext(M2, 16)
    z1 = M2.zeta(1)
    lhs = dl_series_at(sctx, z1, sctx.series("zeta")).map_coefficients(
        lambda e: M2.kill_poly_above(e, 1))
    t = GradedSeries.monomial(M2.one(ZETA), 1)
    rhs = (GradedSeries.constant(z1 ** 2) * t) * (
        GradedSeries.constant(M2.one(ZETA)).truncate(17) + GradedSeries.constant(z1) * t
    ).invert()
    assert lhs.agrees_with(rhs)


def test_substituted_twisted_series_identity_p3():
    sctx = SeriesContext(M3, 20)
    z1 = M3.zeta(1)
    lhs = dl_series_at(sctx, z1, sctx.twisted_zeta()).map_coefficients(
        lambda e: M3.kill_poly_above(e, 1))
    terms = {}
    k = 0
    while (3 + k - 1) * 2 <= sctx.order:
        c = fparith.binom_mod(1 + k, k, 3)
        if c:
            terms[((3 + k - 1) * 2, 0)] = z1 ** (3 + k) * c
        k += 1
    rhs = GradedSeries(M3, terms, ZETA, sctx.order + 1)
    assert lhs.agrees_with(rhs)


def test_higher_generator_series_vanish_mod_first():
    sctx3 = SeriesContext(M3, 20)
    assert dl_series(sctx3, M3.zeta(2)).map_coefficients(
        lambda e: M3.kill_poly_above(e, 1)).is_zero()
    sctx2 = SeriesContext(M2, 24)
    for s in (2, 3):
        assert dl_series(sctx2, M2.zeta(s)).map_coefficients(
            lambda e: M2.kill_poly_above(e, 1)).is_zero()
    assert dl_series(sctx3, M3.zeta(1), eps=1).is_zero()
    bser = dl_series(sctx3, M3.tau(0), eps=1)
    assert bser.coeff(1, 1) == M3.zeta(1) * (-1)
    assert bser.coeff(7, 1) == M3.zeta(2)


# ----------------------------------------------------------------------
# mod-squares calculus at p = 2


def test_modsq_action_pattern():
    for s in (1, 2, 3):
        for r in range(s, 31):
            red = M2.reduce_mod_squares(dl_zeta(M2, r, s))
            n = r + 2 ** s
            m = n.bit_length() - 1
            if n == 2 ** m and m > s:
                assert red == M2.zeta(m)
            else:
                assert red.is_zero()


def test_modsq_proof_identities_exact():
    for s, k in ((2, 1), (2, 2), (3, 1)):
        q = 2 ** s
        assert dl_zeta(M2, q * k, s) == M2.convert(newton(M2, q * (k + 1) - 1), ZETA)
        assert dl_zeta(M2, q * k - 1, s) == M2.convert(newton(M2, q * (k + 1) - 2), ZETA)


def test_xi_series_calculus():
    sctx = SeriesContext(M2, 24)
    red = M2.reduce_mod_squares
    assert dl_series_modsq(sctx, M2.zeta(1)).agrees_with(xi_series(sctx, 1))
    assert dl_series_modsq(sctx, M2.zeta(2)).agrees_with(xi_series(sctx, 2))
    assert (xi_series(sctx, 1) * xi_series(sctx, 1)).map_coefficients(red).is_zero()
    prod = (xi_series(sctx, 1, 2) * xi_series(sctx, 2)).map_coefficients(red)
    assert dl_series_modsq(sctx, M2.zeta(1) * M2.zeta(2)).agrees_with(prod)
    reassemble = (GradedSeries.constant(M2.one(ZETA)).truncate(25)
                  + xi_series(sctx, 0)).shift(1)
    assert sctx.series("zeta").agrees_with(reassemble)
