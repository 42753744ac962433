"""Pure-Python kernel for the hot monomial/element operations.

A monomial is a pair ``(mask, xi)``:

* ``mask`` -- an int whose bit s records the exterior generator of index s
  (only used at odd primes; always 0 at p = 2);
* ``xi`` -- a tuple of nonnegative exponents for the polynomial generators,
  1-indexed by position (``xi[i]`` is the exponent of generator i+1), with
  trailing zeros stripped.

An element is a dict mapping monomials to coefficients in [1, p).  The same
encoding serves both the plain and the conjugate generating sets, since the
two are free graded-commutative generator families of identical degrees.

This module must stay behaviourally identical to ``_kernel.pyx``.
"""

from __future__ import annotations

BACKEND_NAME = "python"

UNIT_MONO = (0, ())


def mask_merge_sign(mask1: int, mask2: int) -> int:
    """Koszul sign (+1/-1) for merging two disjoint exterior masks.

    Counts inversions: pairs (s, t) with bit s in mask1, bit t in mask2 and
    s > t.  Each inversion swaps two odd-degree factors.
    """
    sign = 0
    m2 = mask2
    t = 0
    while m2:
        if m2 & 1:
            sign ^= (mask1 >> (t + 1)).bit_count() & 1
        m2 >>= 1
        t += 1
    return -1 if sign else 1


def mono_mul(m1, m2):
    """Product of two monomials: (sign, monomial), or None when a repeated
    exterior generator kills the product."""
    mask1, xi1 = m1
    mask2, xi2 = m2
    if mask1 & mask2:
        return None
    sign = mask_merge_sign(mask1, mask2) if (mask1 and mask2) else 1
    if not xi1:
        xi = xi2
    elif not xi2:
        xi = xi1
    else:
        if len(xi1) < len(xi2):
            xi1, xi2 = xi2, xi1
        xi = list(xi1)
        for i, e in enumerate(xi2):
            xi[i] += e
        xi = tuple(xi)
    return sign, (mask1 | mask2, xi)


def mono_degree(mono, p: int) -> int:
    """Total degree of a monomial: sum of generator degrees with exponents.

    Polynomial generator r has degree 2^r - 1 (p = 2) or 2(p^r - 1) (p odd);
    exterior generator s (odd p only) has degree 2 p^s - 1.
    """
    mask, xi = mono
    deg = 0
    if p == 2:
        q = 2
        for e in xi:
            if e:
                deg += e * (q - 1)
            q <<= 1
    else:
        q = p
        for e in xi:
            if e:
                deg += 2 * e * (q - 1)
            q *= p
        s = 0
        q = 1
        while mask:
            if mask & 1:
                deg += 2 * q - 1
            mask >>= 1
            q *= p
            s += 1
    return deg


def elem_addmul(acc: dict, elem: dict, c: int, p: int) -> dict:
    """In place: acc += c * elem over F_p (dropping zeros)."""
    c %= p
    if not c:
        return acc
    for mono, coef in elem.items():
        v = (acc.get(mono, 0) + c * coef) % p
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)
    return acc


def elem_scale(elem: dict, c: int, p: int) -> dict:
    """c * elem as a new dict."""
    c %= p
    if not c:
        return {}
    if c == 1:
        return dict(elem)
    return {mono: c * coef % p for mono, coef in elem.items()}


def elem_mul(e1: dict, e2: dict, p: int) -> dict:
    """Product of two elements over F_p (order matters for Koszul signs)."""
    out: dict = {}
    for m1, c1 in e1.items():
        for m2, c2 in e2.items():
            sm = mono_mul(m1, m2)
            if sm is None:
                continue
            sign, mono = sm
            v = (out.get(mono, 0) + sign * c1 * c2) % p
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return out


def tensor_mul(t1: dict, t2: dict, p: int) -> dict:
    """Product of two tensors (dicts keyed by monomial pairs) over F_p.

    Koszul rule: (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd.
    """
    out: dict = {}
    deg_cache: dict = {}
    for (a1, b1), c1 in t1.items():
        for (a2, b2), c2 in t2.items():
            left = mono_mul(a1, a2)
            if left is None:
                continue
            right = mono_mul(b1, b2)
            if right is None:
                continue
            sign = left[0] * right[0]
            if p != 2:
                db = deg_cache.get(b1)
                if db is None:
                    db = deg_cache[b1] = mono_degree(b1, p)
                da = deg_cache.get(a2)
                if da is None:
                    da = deg_cache[a2] = mono_degree(a2, p)
                if (db * da) & 1:
                    sign = -sign
            key = (left[1], right[1])
            v = (out.get(key, 0) + sign * c1 * c2) % p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out
