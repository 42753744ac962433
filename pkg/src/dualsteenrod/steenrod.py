"""Cohomology operations acting on the dual algebra, and the coactions of
the dual algebra on the homology of cyclic classifying spaces.

An operation is stored as an element of the dual algebra in the xi basis,
read as coordinates with respect to the basis of operations dual to the
monomial basis.  The evaluation pairing is then coefficientwise
(``pair``); the opposite-side pairing (``copair(gamma, a) = <a |
chi(gamma)>``) is the sign-free transpose through the conjugation, so the
conjugate-basis monomials are its orthonormal dual family.

``act(op, x)`` is the action of an operation below a homology class,
written ``op_* x``: the operation pairs plainly with the left tensor
factor of the diagonal (the classical convention, under which the
diagonal reads ``sum of monomial (x) dual-operation value``).
Composition transposes below with the sign of swapping the two
operations: ``act(op_mul(a, b), x) == +-act(b, act(a, x))``.

The homology Bockstein is *not* the plain action of the degree-one dual
generator but its negative (equivalently, the extraction through the
conjugated left factor, which flips the sign in degree one); it is
provided as the ``bockstein`` method of the context.

The second half implements the explicit coaction formulas on the homology
of the classifying space of the cyclic group of prime order (classes
``a[n]``, one in each non-negative degree) and, at p=2, on the shifted
variants with classes ``e[n]`` for ``n >= m`` for any integer shift ``m``
(the coefficients become Laurent extractions when ``m < 0``).  The
``nishida_terms`` table lists the coefficients for moving a dual squaring
or power operation past a Dyer-Lashof operation.
"""

from __future__ import annotations

from . import fparith
from .milnor import Element, MilnorContext, Tensor, XI, ZETA
from .series import GradedSeries, SeriesContext
from .dyerlashof import dl_apply


def _cache(mctx: MilnorContext) -> dict:
    if not hasattr(mctx, "_op_cache"):
        mctx._op_cache = {}
    return mctx._op_cache


# ----------------------------------------------------------------------
# operations as dual-basis coordinate vectors


def op_unit(mctx: MilnorContext) -> Element:
    """The identity operation (dual to the unit monomial)."""
    return mctx.one(XI)


def op_profile(mctx: MilnorContext, mask: int, xi: tuple) -> Element:
    """The basis operation dual to the monomial ``(mask, xi)``."""
    if mask and mctx.p == 2:
        raise ValueError("exterior profile bits only exist at odd primes")
    if mask < 0 or any(e < 0 for e in xi):
        raise ValueError("profile entries must be non-negative")
    return mctx.from_terms({(mask, tuple(xi)): 1}, XI)


def op_sq(mctx: MilnorContext, n: int) -> Element:
    """The n-th squaring operation (p=2), dual to the n-th power of the
    first polynomial generator."""
    if mctx.p != 2:
        raise ValueError("squaring operations live at p=2")
    if n < 0:
        raise ValueError("negative squaring operations do not exist")
    if n == 0:
        return op_unit(mctx)
    return op_profile(mctx, 0, (n,))


def op_p(mctx: MilnorContext, n: int) -> Element:
    """The n-th power operation (odd primes), dual to the n-th power of
    the first polynomial generator."""
    if mctx.p == 2:
        raise ValueError("use op_sq at p=2")
    if n < 0:
        raise ValueError("negative power operations do not exist")
    if n == 0:
        return op_unit(mctx)
    return op_profile(mctx, 0, (n,))


def op_beta(mctx: MilnorContext) -> Element:
    """The Bockstein operation: dual to ``tau_0`` at odd primes, and the
    first squaring operation at p=2."""
    if mctx.p == 2:
        return op_profile(mctx, 0, (1,))
    return op_profile(mctx, 1, ())


def op_milnor_primitive(mctx: MilnorContext, k: int) -> Element:
    """The k-th primitive operation: dual to ``tau_k`` at odd primes and
    to ``xi_{k+1}`` at p=2 (so ``k = 0`` recovers the Bockstein)."""
    if k < 0:
        raise ValueError("primitive index must be non-negative")
    if mctx.p == 2:
        return op_profile(mctx, 0, (0,) * k + (1,))
    return op_profile(mctx, 1 << k, ())


def _degree_split(mctx: MilnorContext, elem: Element) -> dict:
    """Group the terms of an element by degree: {degree: terms dict}."""
    out: dict = {}
    for mono, c in elem.terms.items():
        out.setdefault(mctx.mono_degree(mono), {})[mono] = c
    return out


# ----------------------------------------------------------------------
# pairings


def pair(mctx: MilnorContext, op: Element, x: Element) -> int:
    """Evaluate an operation on a dual-algebra element: ``<op | x>``."""
    if op.basis != XI:
        op = mctx.convert(op, XI)
    if x.basis != XI:
        x = mctx.convert(x, XI)
    acc = 0
    small, large = (op.terms, x.terms) if len(op.terms) <= len(x.terms) else (x.terms, op.terms)
    for mono, c in small.items():
        c2 = large.get(mono)
        if c2:
            acc += c * c2
    return acc % mctx.p


def copair(mctx: MilnorContext, alpha: Element, op: Element) -> int:
    """The opposite-side pairing ``<alpha | op> = <op | chi(alpha)>``
    (sign-free transpose through the conjugation).  The conjugate-basis
    monomials are orthonormal for it: a zeta/taubar monomial pairs to one
    exactly against the operation dual to the matching xi/tau monomial."""
    if op.basis != XI:
        op = mctx.convert(op, XI)
    chi = mctx.antipode(mctx.convert(alpha, XI))
    acc = 0
    for mono, c in chi.terms.items():
        c2 = op.terms.get(mono)
        if c2:
            acc += c * c2
    return acc % mctx.p


# ----------------------------------------------------------------------
# the module action


def act(mctx: MilnorContext, op: Element, x: Element) -> Element:
    """The action ``op_* x`` of an operation below a class of the dual
    algebra: the diagonal of ``x`` is paired against ``op`` in the left
    factor and the right factor is kept."""
    basis = x.basis
    if op.basis != XI:
        op = mctx.convert(op, XI)
    delta = mctx.coproduct(x)
    p = mctx.p
    out: dict = {}
    for (ma, mb), c in delta.terms.items():
        c2 = op.terms.get(ma)
        if c2:
            w = (out.get(mb, 0) + c * c2) % p
            if w:
                out[mb] = w
            else:
                del out[mb]
    return mctx.convert(Element(mctx, out, XI), basis)


def op_mul(mctx: MilnorContext, a: Element, b: Element) -> Element:
    """The composition product of two operations, dual to the diagonal:
    on basis vectors, ``(ab)[m] = sum over the diagonal of m of
    (-1)^{|b| |m_1|} a[m_1] b[m_2]``."""
    if a.basis != XI:
        a = mctx.convert(a, XI)
    if b.basis != XI:
        b = mctx.convert(b, XI)
    p = mctx.p
    out: dict = {}
    for da, aterms in _degree_split(mctx, a).items():
        for db, bterms in _degree_split(mctx, b).items():
            sign = -1 if (p != 2 and (da & 1) and (db & 1)) else 1
            for m in mctx.basis_monomials(da + db):
                acc = 0
                for (m1, m2), c in mctx._coproduct_mono(m).items():
                    ca = aterms.get(m1)
                    if not ca:
                        continue
                    cb = bterms.get(m2)
                    if cb:
                        acc += ca * cb * c
                if acc % p:
                    v = (out.get(m, 0) + sign * acc) % p
                    if v:
                        out[m] = v
                    else:
                        del out[m]
    return Element(mctx, out, XI)


def op_word(mctx: MilnorContext, ops) -> Element:
    """Compose a list of operations written left to right (the rightmost
    acts first below; composition folds through ``op_mul``)."""
    ops = list(ops)
    if not ops:
        return op_unit(mctx)
    acc = ops[-1]
    for a in reversed(ops[:-1]):
        acc = op_mul(mctx, a, acc)
    return acc


# ----------------------------------------------------------------------
# coefficient extractions from the generator generating-series


def _gen_power_coeff(mctx: MilnorContext, which: str, k: int, n: int) -> Element:
    """The coefficient of ``t^n`` in the k-th power of the generator
    series ``sum_r g_r t^{p^r}`` (``g = xi`` or its conjugate), where
    negative ``k`` means the Laurent inverse power."""
    basis = XI if which == "xi" else ZETA
    key = (which, k, n)
    cache = _cache(mctx)
    cached = cache.get(key)
    if cached is not None:
        return Element(mctx, cached, basis)
    if k >= 0:
        if n < k or (n > 0 and k == 0):
            res = mctx.zero(basis)
        elif k == 0:
            res = mctx.one(basis)
        else:
            gen = mctx.xi if which == "xi" else mctx.zeta
            res = mctx.zero(basis)
            q = 1
            r = 0
            while q <= n - (k - 1):
                res = res + gen(r) * _gen_power_coeff(mctx, which, k - 1, n - q)
                q *= mctx.p
                r += 1
    else:
        order = n + 2 * (-k) + 6
        sctx = SeriesContext(mctx, order)
        f = sctx.series(which) ** k
        res = f.coeff(n) if n >= k else mctx.zero(basis)
    cache[key] = res.terms
    return res


def xi_power_coeff(mctx: MilnorContext, k: int, n: int) -> Element:
    """``[xi(t)^k]_{t^n}`` in the xi basis (Laurent for ``k < 0``)."""
    return _gen_power_coeff(mctx, "xi", k, n)


def zeta_power_coeff(mctx: MilnorContext, k: int, n: int) -> Element:
    """``[zeta(t)^k]_{t^n}`` in the conjugate basis (Laurent for k < 0)."""
    return _gen_power_coeff(mctx, "zeta", k, n)


def twisted_zeta_power_coeff(mctx: MilnorContext, k: int, n: int,
                             nonresidue: int = None) -> Element:
    """``[S(t)^k]_{t^n}`` where ``S`` is the unit-twisted conjugate series
    ``sum_r (-1)^r zeta_r t^{p^r}`` (the plain conjugate series at p=2)."""
    g = None
    if mctx.p != 2:
        g = fparith.first_nonresidue(mctx.p) if nonresidue is None else nonresidue % mctx.p
    key = ("twisted", g, k, n)
    cache = _cache(mctx)
    cached = cache.get(key)
    if cached is not None:
        return Element(mctx, cached, ZETA)
    if k >= 0 and n < k:
        res = mctx.zero(ZETA)
    else:
        order = n + 2 * abs(min(k, 0)) + 6
        sctx = SeriesContext(mctx, order, nonresidue=g)
        res = (sctx.twisted_zeta() ** k).coeff(n)
    cache[key] = res.terms
    return res


# ----------------------------------------------------------------------
# coactions on the homology of the cyclic classifying space


def bcp_coact(mctx: MilnorContext, n: int, side: str = "left") -> dict:
    """The coaction on the degree-n class of the homology of the cyclic
    classifying space, as ``{k: coefficient}`` over the classes it hits.

    With ``side="left"`` the coefficients multiply from the left (xi
    basis); with ``side="right"`` they sit in the right tensor factor of
    the conjugate-switched coaction (conjugate basis).
    """
    if n < 0:
        raise ValueError("the classes live in non-negative degrees")
    if mctx.p == 2:
        return thom_coact(mctx, 0, n, side)
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    p = mctx.p
    out: dict = {}

    def add(k: int, elem: Element) -> None:
        if elem.is_zero():
            return
        cur = out.get(k)
        out[k] = elem if cur is None else cur + elem
        if out[k].is_zero():
            del out[k]

    if n == 0:
        add(0, mctx.one(XI))
    elif n % 2 == 0:
        half = n // 2
        for k in range(1, half + 1):
            add(2 * k, xi_power_coeff(mctx, k, half))
        q = 1
        r = 0
        while q <= half:
            tau_r = mctx.tau(r)
            for k in range(1, half + 1):
                c = xi_power_coeff(mctx, k - 1, half - q)
                if not c.is_zero():
                    add(2 * k - 1, -(tau_r * c))
            q *= p
            r += 1
    else:
        half = (n + 1) // 2
        for k in range(1, half + 1):
            add(2 * k - 1, xi_power_coeff(mctx, k - 1, half - 1))
    if side == "right":
        flipped = {}
        for k, elem in out.items():
            res = mctx.convert(mctx.antipode(elem), ZETA)
            if ((n - k) * k) & 1:
                res = -res
            flipped[k] = res
        return flipped
    return out


def thom_coact(mctx: MilnorContext, m: int, n: int, side: str = "left") -> dict:
    """The coaction on the degree-n class of the m-shifted family at p=2
    (``m = 0`` recovers the cyclic classifying space), as
    ``{k: coefficient}``; coefficients are Laurent extractions when the
    shift is negative."""
    if mctx.p != 2:
        raise ValueError("the shifted families are a p=2 construction")
    if n < m:
        raise ValueError("the classes live in degrees >= the shift")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    out: dict = {}
    for k in range(m, n + 1):
        c = xi_power_coeff(mctx, k, n)
        if c.is_zero():
            continue
        if side == "right":
            c = mctx.convert(mctx.antipode(c), ZETA)
        out[k] = c
    return out


# ----------------------------------------------------------------------
# coefficients for moving a dual operation past a power operation


def nishida_terms(p: int, r: int, s: int):
    """Coefficients ``(c, a, j)`` such that the r-th dual squaring/power
    operation applied after ``Q^s`` expands as
    ``sum c * Q^a (j-th dual operation)`` below:

    * p=2:  ``Sq^r_* Q^s = sum_j binom(s-r, r-2j) Q^{s-r+j} Sq^j_*``
    * odd:  ``P^r_* Q^s = sum_j (-1)^{r+j} binom((s-r)(p-1), r-jp)
      Q^{s-r+j} P^j_*``
    """
    out = []
    if p == 2:
        for j in range(r // 2 + 1):
            c = fparith.binom_mod_int(s - r, r - 2 * j, 2)
            if c:
                out.append((c, s - r + j, j))
    else:
        for j in range(r // p + 1):
            c = fparith.binom_mod_int((s - r) * (p - 1), r - j * p, p)
            if c:
                c = c * (-1) ** ((r + j) & 1) % p
                out.append((c, s - r + j, j))
    return out


def nishida_rhs(mctx: MilnorContext, r: int, s: int, x: Element) -> Element:
    """Evaluate the expansion of ``nishida_terms`` on an element of the
    dual algebra (which is itself a module over the power operations)."""
    make = op_sq if mctx.p == 2 else op_p
    total = mctx.zero(ZETA)
    for c, a, j in nishida_terms(mctx.p, r, s):
        if a < 0:
            continue
        moved = act(mctx, make(mctx, j), x)
        if moved.is_zero():
            continue
        total = total + dl_apply(mctx, (0, a), moved) * c
    return total
