"""Scalar arithmetic over F_p: binomials mod p, digit criteria, unit constants.

Everything here is elementary number theory used by the algebraic layers:
Lucas-style binomial coefficients, the base-p digit criterion governing
nonvanishing of C(n*p^s - 1, n), quadratic (non-)residues, and the unit
nu(m) that appears in the extended-power dictionary at odd primes.
"""

from __future__ import annotations

import math

__all__ = [
    "normalize",
    "inv_mod",
    "binom_mod",
    "binom_mod_int",
    "binom_criterion",
    "sigma_idx",
    "factorial_mod",
    "nu_unit",
    "is_nonresidue",
    "nonresidues",
    "first_nonresidue",
    "digits_base_p",
]


def normalize(c: int, p: int) -> int:
    """Reduce an integer to its representative in [0, p)."""
    return c % p


def inv_mod(c: int, p: int) -> int:
    """Multiplicative inverse of c mod the prime p (c must be a unit)."""
    c %= p
    if c == 0:
        raise ZeroDivisionError(f"0 is not invertible mod {p}")
    return pow(c, p - 2, p)


def digits_base_p(n: int, p: int) -> list[int]:
    """Base-p digits of n >= 0, least significant first ([] for n = 0)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


def binom_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p for n, k >= 0 via Lucas' theorem (0 when k > n or k < 0)."""
    if k < 0 or k > n:
        return 0
    result = 1
    while k:
        nd, n = n % p, n // p
        kd, k = k % p, k // p
        if kd > nd:
            return 0
        result = result * math.comb(nd, kd) % p
    return result


def binom_mod_int(n: int, k: int, p: int) -> int:
    """C(n, k) mod p for arbitrary integer n and k >= 0.

    Negative upper index uses C(-m, k) = (-1)^k C(m + k - 1, k).
    """
    if k < 0:
        return 0
    if n >= 0:
        return binom_mod(n, k, p)
    sign = -1 if k % 2 else 1
    return sign * binom_mod(-n + k - 1, k, p) % p


def sigma_idx(s: int, p: int) -> int:
    """The index sum 1 + p + ... + p^(s-1) = (p^s - 1)/(p - 1)."""
    return (p**s - 1) // (p - 1)


def binom_criterion(n: int, s: int, p: int) -> bool:
    """Base-p digit test equivalent to C(n*p^s - 1, n) != 0 mod p.

    Write the base-p digits of n >= 1 as n_k, ..., n_{k+l} where k indexes
    the lowest nonzero digit and k+l the highest.  The binomial survives
    mod p exactly when every digit n_i with s+k <= i <= k+l satisfies
    n_i <= n_{i-s}, except that at i = s+k the bound tightens by one:
    n_{s+k} <= n_k - 1.  When l < s there is nothing to check.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if s < 1:
        raise ValueError("s must be >= 1")
    digits = digits_base_p(n, p)
    k = next(i for i, d in enumerate(digits) if d)
    top = len(digits) - 1  # k + l
    for i in range(s + k, top + 1):
        bound = digits[k] - 1 if i == s + k else digits[i - s]
        di = digits[i] if i <= top else 0
        if di > bound:
            return False
    return True


def factorial_mod(n: int, p: int) -> int:
    """n! mod p for 0 <= n < p."""
    if not 0 <= n < p:
        raise ValueError("need 0 <= n < p")
    result = 1
    for i in range(2, n + 1):
        result = result * i % p
    return result


def nu_unit(m: int, p: int) -> int:
    """The unit nu(m) = (-1)^{m(m-1)(p-1)/4} * (((p-1)/2)!)^m mod p (p odd).

    Defined for any integer m; negative m uses the inverse of ((p-1)/2)!.
    """
    if p == 2:
        raise ValueError("nu_unit is an odd-prime constant")
    half_fact = factorial_mod((p - 1) // 2, p)
    sign_exp = (m * (m - 1) // 2) * ((p - 1) // 2)
    sign = -1 if sign_exp % 2 else 1
    if m >= 0:
        power = pow(half_fact, m, p)
    else:
        power = pow(inv_mod(half_fact, p), -m, p)
    return sign * power % p


def is_nonresidue(g: int, p: int) -> bool:
    """True when g is a quadratic non-residue mod the odd prime p."""
    if p == 2:
        raise ValueError("no quadratic non-residues mod 2")
    return pow(g % p, (p - 1) // 2, p) == p - 1


def nonresidues(p: int) -> list[int]:
    """All quadratic non-residues in [1, p) for the odd prime p."""
    return [g for g in range(1, p) if is_nonresidue(g, p)]


def first_nonresidue(p: int) -> int:
    """Smallest quadratic non-residue mod the odd prime p."""
    return nonresidues(p)[0]
