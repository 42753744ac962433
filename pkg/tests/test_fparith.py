"""Scalar-arithmetic layer: frozen values first, then exhaustive oracles.

The expected values below were computed independently with exact
big-integer arithmetic (math.comb / math.factorial) before the module
was implemented, and are frozen here.
"""

import math

from dualsteenrod import fparith as fa

PRIMES = (2, 3, 5)


def test_binom_mod_frozen():
    assert fa.binom_mod(4, 2, 2) == 0
    assert fa.binom_mod(5, 2, 2) == 0
    assert fa.binom_mod(5, 1, 2) == 1
    assert fa.binom_mod(7, 3, 2) == 1
    assert fa.binom_mod(26, 13, 3) == (math.comb(26, 13) % 3)
    assert fa.binom_mod(24, 6, 5) == (math.comb(24, 6) % 5)
    assert fa.binom_mod(3, 5, 7) == 0
    assert fa.binom_mod(0, 0, 3) == 1


def test_binom_mod_matches_bigint_oracle():
    for p in PRIMES:
        for n in range(0, 160):
            for k in range(0, n + 1):
                assert fa.binom_mod(n, k, p) == math.comb(n, k) % p, (p, n, k)


def test_binom_mod_int_negative_upper():
    # C(-m, k) = (-1)^k C(m+k-1, k); oracle via the binomial series of (1+x)^(-m).
    for p in PRIMES:
        for m in range(1, 12):
            for k in range(0, 12):
                expect = (-1) ** k * math.comb(m + k - 1, k) % p
                assert fa.binom_mod_int(-m, k, p) == expect, (p, m, k)
    for p in PRIMES:
        for n in range(0, 12):
            for k in range(0, 12):
                expect = math.comb(n, k) % p if k <= n else 0
                assert fa.binom_mod_int(n, k, p) == expect


def test_binom_criterion_frozen_samples():
    # Frozen from the big-int oracle: n with C(n*p^s - 1, n) != 0 mod p.
    assert [n for n in range(1, 70) if fa.binom_criterion(n, 1, 2)] == [1, 2, 4, 8, 16, 32, 64]
    assert [n for n in range(1, 25) if fa.binom_criterion(n, 2, 2)] == [
        1, 2, 3, 4, 6, 8, 11, 12, 16, 22, 24]
    assert [n for n in range(1, 20) if fa.binom_criterion(n, 1, 3)] == [
        1, 2, 3, 5, 6, 9, 14, 15, 18]
    assert [n for n in range(1, 18) if fa.binom_criterion(n, 2, 3)] == [
        1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 14, 15, 17]
    assert [n for n in range(1, 21) if fa.binom_criterion(n, 1, 5)] == [
        1, 2, 3, 4, 5, 7, 8, 9, 10, 13, 14, 15, 19, 20]


def test_binom_criterion_exhaustive_small():
    # Full agreement with the big-int oracle on a moderate window; the
    # acceptance suite pushes this to n < 4096.
    for p in PRIMES:
        for s in (1, 2, 3):
            for n in range(1, 600):
                expect = math.comb(n * p**s - 1, n) % p != 0
                assert fa.binom_criterion(n, s, p) == expect, (p, s, n)


def test_binom_criterion_power_of_two_specialization():
    # p = 2, s = 1: survivors are exactly the powers of 2.
    for n in range(1, 4096):
        assert fa.binom_criterion(n, 1, 2) == (n & (n - 1) == 0), n


def test_sigma_idx():
    assert [fa.sigma_idx(s, 3) for s in range(5)] == [0, 1, 4, 13, 40]
    assert [fa.sigma_idx(s, 5) for s in range(4)] == [0, 1, 6, 31]
    assert [fa.sigma_idx(s, 2) for s in range(5)] == [0, 1, 3, 7, 15]


def test_nu_unit_frozen():
    # Frozen from direct big-int evaluation of the defining formula.
    assert [fa.nu_unit(m, 3) for m in (-2, -1, 0, 1, 2, 3)] == [2, 2, 1, 1, 2, 2]
    assert [fa.nu_unit(m, 5) for m in (-2, -1, 0, 1, 2, 3)] == [4, 3, 1, 2, 4, 3]


def test_nu_unit_multiplicative_in_sign_pattern():
    # nu(m) * nu(-m) relates by the sign factor; sanity: nu(m) is a unit.
    for p in (3, 5):
        for m in range(-6, 7):
            v = fa.nu_unit(m, p)
            assert 1 <= v < p


def test_nonresidues():
    assert fa.nonresidues(3) == [2]
    assert fa.nonresidues(5) == [2, 3]
    assert fa.nonresidues(7) == [3, 5, 6]
    assert fa.first_nonresidue(3) == 2
    for p in (3, 5, 7, 11):
        for g in fa.nonresidues(p):
            assert fa.is_nonresidue(g, p)
        assert len(fa.nonresidues(p)) == (p - 1) // 2


def test_inv_mod():
    for p in PRIMES:
        for c in range(1, p):
            assert fa.inv_mod(c, p) * c % p == 1
