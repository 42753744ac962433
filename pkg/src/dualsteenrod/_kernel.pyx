# cython: boundscheck=False, wraparound=False
"""Cython kernel for the hot monomial/element operations.

Behaviourally identical to ``_kernel_py``; see that module for the data
encoding.  Monomials stay ordinary Python tuples (they are dict keys
everywhere above this layer); the win is in the tight merge loops.
"""

BACKEND_NAME = "cython"

UNIT_MONO = (0, ())


cpdef int mask_merge_sign(object mask1, object mask2):
    cdef int sign = 0
    cdef int t = 0
    m2 = mask2
    while m2:
        if m2 & 1:
            sign ^= ((mask1 >> (t + 1)).bit_count()) & 1
        m2 >>= 1
        t += 1
    return -1 if sign else 1


cpdef object mono_mul(object m1, object m2):
    cdef int i, n1, n2, sign
    mask1 = m1[0]
    mask2 = m2[0]
    if mask1 & mask2:
        return None
    if mask1 and mask2:
        sign = mask_merge_sign(mask1, mask2)
    else:
        sign = 1
    xi1 = m1[1]
    xi2 = m2[1]
    if not xi1:
        xi = xi2
    elif not xi2:
        xi = xi1
    else:
        n1 = len(xi1)
        n2 = len(xi2)
        if n1 < n2:
            xi1, xi2 = xi2, xi1
            n1, n2 = n2, n1
        lst = list(xi1)
        for i in range(n2):
            lst[i] = lst[i] + xi2[i]
        xi = tuple(lst)
    return sign, (mask1 | mask2, xi)


cpdef long mono_degree(object mono, long p):
    cdef long deg = 0
    cdef long q
    mask = mono[0]
    xi = mono[1]
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
        q = 1
        while mask:
            if mask & 1:
                deg += 2 * q - 1
            mask >>= 1
            q *= p
    return deg


cpdef dict elem_addmul(dict acc, dict elem, long c, long p):
    cdef long v
    c %= p
    if not c:
        return acc
    for mono, coef in elem.items():
        v = (acc.get(mono, 0) + c * <long> coef) % p
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)
    return acc


cpdef dict elem_scale(dict elem, long c, long p):
    cdef dict out
    c %= p
    if not c:
        return {}
    if c == 1:
        return dict(elem)
    out = {}
    for mono, coef in elem.items():
        out[mono] = (c * <long> coef) % p
    return out


cpdef dict elem_mul(dict e1, dict e2, long p):
    # order matters for Koszul signs
    cdef dict out = {}
    cdef long v, c1
    for m1, c1obj in e1.items():
        c1 = <long> c1obj
        for m2, c2 in e2.items():
            sm = mono_mul(m1, m2)
            if sm is None:
                continue
            mono = sm[1]
            v = (out.get(mono, 0) + <long> sm[0] * c1 * <long> c2) % p
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return out


cpdef dict tensor_mul(dict t1, dict t2, long p):
    cdef dict out = {}
    cdef dict deg_cache = {}
    cdef long v, sign, db, da
    for k1, c1 in t1.items():
        a1 = k1[0]
        b1 = k1[1]
        for k2, c2 in t2.items():
            a2 = k2[0]
            b2 = k2[1]
            left = mono_mul(a1, a2)
            if left is None:
                continue
            right = mono_mul(b1, b2)
            if right is None:
                continue
            sign = <long> left[0] * <long> right[0]
            if p != 2:
                cached = deg_cache.get(b1)
                if cached is None:
                    db = mono_degree(b1, p)
                    deg_cache[b1] = db
                else:
                    db = <long> cached
                cached = deg_cache.get(a2)
                if cached is None:
                    da = mono_degree(a2, p)
                    deg_cache[a2] = da
                else:
                    da = <long> cached
                if (db * da) & 1:
                    sign = -sign
            key = (left[1], right[1])
            v = (out.get(key, 0) + sign * <long> c1 * <long> c2) % p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out
