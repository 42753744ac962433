"""Graded formal Laurent series with coefficients in the dual Steenrod algebra.

Series live in two formal variables:

* ``t_plus`` of degree -2 (a polynomial/Laurent variable), and
* ``t_minus`` of degree -1 (an exterior variable, ``t_minus**2 == 0``).

A :class:`GradedSeries` stores a finite table of coefficients
``(e_plus, e_minus) -> Element`` together with a *precision*: the first
``t_plus`` exponent whose coefficient is unknown.  Requesting a coefficient
at or beyond the precision raises ``ValueError`` instead of silently
returning zero, so truncation errors cannot propagate unnoticed.

Since ``t_minus`` is odd, moving it past an odd-degree algebra coefficient
introduces a sign; all arithmetic here keeps track of those Koszul signs.

The module also provides

* canonical generating series (``xi``, ``zeta``, ``tau``, ``taubar``) used
  throughout the coaction formulas,
* :class:`OmegaSeries` and :func:`twist_substitute` for the odd-prime
  substitution ``t_plus -> omega**(-1) * t_plus`` followed by an overall
  ``omega`` factor, where ``omega**2`` is a quadratic non-residue
  (``omega`` lives in the quadratic extension of the prime field; a result
  is exportable only when every residual power of ``omega`` is even), and
* :func:`laurent_coeff_by_substitution`, extraction of a Laurent
  coefficient through a formal change of coordinates ``t = h(u)`` and a
  residue computation.
"""

from __future__ import annotations

import math

from . import fparith
from .milnor import Element, MilnorContext, XI, ZETA


def _split_parity(elem: Element):
    """Split an element into its even-degree and odd-degree parts."""
    ctx = elem.ctx
    ev, od = {}, {}
    for m, c in elem.terms.items():
        (ev if ctx.mono_degree(m) % 2 == 0 else od)[m] = c
    return Element(ctx, ev, elem.basis), Element(ctx, od, elem.basis)


class GradedSeries:
    """A Laurent series in ``t_plus`` and ``t_minus`` over one algebra basis.

    ``terms`` maps ``(e_plus, e_minus)`` with ``e_minus in {0, 1}`` to a
    nonzero :class:`~dualsteenrod.milnor.Element`; all coefficients share
    ``basis``.  ``prec`` is the first unknown ``t_plus`` exponent (it may be
    ``math.inf`` for exact series such as constants).
    """

    __slots__ = ("mctx", "basis", "terms", "prec")

    def __init__(self, mctx: MilnorContext, terms: dict, basis: str, prec):
        self.mctx = mctx
        self.basis = basis
        self.prec = prec
        clean = {}
        for (ep, em), c in terms.items():
            if em not in (0, 1):
                raise ValueError("t_minus exponent must be 0 or 1")
            if ep < prec and not c.is_zero():
                if c.basis != basis:
                    raise ValueError("mixed coefficient bases in series")
                clean[(ep, em)] = c
        self.terms = clean

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, mctx: MilnorContext, basis: str = XI, prec=math.inf) -> "GradedSeries":
        return cls(mctx, {}, basis, prec)

    @classmethod
    def constant(cls, elem: Element, prec=math.inf) -> "GradedSeries":
        return cls(elem.ctx, {(0, 0): elem}, elem.basis, prec)

    @classmethod
    def monomial(cls, elem: Element, ep: int, em: int = 0, prec=math.inf) -> "GradedSeries":
        return cls(elem.ctx, {(ep, em): elem}, elem.basis, prec)

    @classmethod
    def t_minus(cls, mctx: MilnorContext, basis: str = XI) -> "GradedSeries":
        return cls(mctx, {(0, 1): mctx.one(basis)}, basis, math.inf)

    # ------------------------------------------------------------------
    # inspection

    def coeff(self, ep: int, em: int = 0) -> Element:
        """Coefficient of ``t_plus**ep * t_minus**em``; error beyond precision."""
        if ep >= self.prec:
            raise ValueError(
                "coefficient at t_plus^%d requested but series only known below %s"
                % (ep, self.prec)
            )
        return self.terms.get((ep, em), self.mctx.zero(self.basis))

    def support(self):
        return sorted(self.terms)

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.terms

    def valuation(self):
        """Smallest exponent carrying a nonzero coefficient (prec if none)."""
        if not self.terms:
            return self.prec
        return min(ep for (ep, _em) in self.terms)

    def has_t_minus(self) -> bool:
        return any(em == 1 for (_ep, em) in self.terms)

    def agrees_with(self, other: "GradedSeries") -> bool:
        """Equality of all coefficients on the common known range."""
        bound = min(self.prec, other.prec)
        keys = {k for k in self.terms if k[0] < bound}
        keys |= {k for k in other.terms if k[0] < bound}
        for ep, em in keys:
            if self.coeff(ep, em) != other.coeff(ep, em):
                return False
        return True

    def map_coefficients(self, fn) -> "GradedSeries":
        out = {}
        basis = self.basis
        for k, c in self.terms.items():
            img = fn(c)
            if not img.is_zero():
                out[k] = img
                basis = img.basis
        return GradedSeries(self.mctx, out, basis, self.prec)

    def convert(self, basis: str) -> "GradedSeries":
        if basis == self.basis:
            return self
        res = self.map_coefficients(lambda c: self.mctx.convert(c, basis))
        return GradedSeries(self.mctx, res.terms, basis, self.prec)

    def truncate(self, prec) -> "GradedSeries":
        return GradedSeries(self.mctx, self.terms, self.basis, min(self.prec, prec))

    def __repr__(self) -> str:
        return "GradedSeries(p=%d, terms=%d, prec=%s)" % (
            self.mctx.p, len(self.terms), self.prec)

    # ------------------------------------------------------------------
    # arithmetic

    def _check(self, other: "GradedSeries") -> None:
        if self.mctx is not other.mctx:
            raise ValueError("series from different contexts")
        if self.basis != other.basis and self.terms and other.terms:
            raise ValueError("series over different coefficient bases")

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        self._check(other)
        prec = min(self.prec, other.prec)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, self.mctx.zero(c.basis)) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        basis = self.basis if self.terms else other.basis
        return GradedSeries(self.mctx, out, basis, prec)

    def __neg__(self) -> "GradedSeries":
        return GradedSeries(self.mctx, {k: -c for k, c in self.terms.items()},
                            self.basis, self.prec)

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            out = {k: c * other for k, c in self.terms.items()}
            return GradedSeries(self.mctx, out, self.basis, self.prec)
        if isinstance(other, Element):
            return self * GradedSeries.constant(other)
        self._check(other)
        v1, v2 = self.valuation(), other.valuation()
        prec = min(self.prec + v2, other.prec + v1)
        acc: dict = {}
        zero = self.mctx.zero(self.basis if self.terms else other.basis)
        for (e1, m1), c1 in self.terms.items():
            for (e2, m2), c2 in other.terms.items():
                if m1 and m2:
                    continue  # t_minus squares to zero
                e, m = e1 + e2, m1 + m2
                if e >= prec:
                    continue
                if m1:
                    # move c2 left past t_minus: sign on the odd part of c2
                    ev, od = _split_parity(c2)
                    c = c1 * (ev - od)
                else:
                    c = c1 * c2
                s = acc.get((e, m), zero) + c
                if s.is_zero():
                    acc.pop((e, m), None)
                else:
                    acc[(e, m)] = s
        basis = self.basis if self.terms else other.basis
        return GradedSeries(self.mctx, acc, basis, prec)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        if isinstance(other, Element):
            return GradedSeries.constant(other) * self
        return NotImplemented

    def shift(self, k: int) -> "GradedSeries":
        """Multiply by ``t_plus**k`` (k may be negative)."""
        out = {(ep + k, em): c for (ep, em), c in self.terms.items()}
        return GradedSeries(self.mctx, out, self.basis, self.prec + k)

    def __pow__(self, k: int) -> "GradedSeries":
        if k < 0:
            return self.invert() ** (-k)
        result = GradedSeries.constant(self.mctx.one(self.basis))
        base = self
        while k:
            if k & 1:
                result = result * base
            base0 = base
            k >>= 1
            if k:
                base = base0 * base0
        return result

    def invert(self) -> "GradedSeries":
        """Inverse of a series whose lowest term is a scalar unit.

        Only ``t_minus``-free series can be inverted here.
        """
        if self.has_t_minus():
            raise ValueError("cannot invert a series containing t_minus")
        if self.is_zero():
            raise ValueError("cannot invert a series that is zero to known precision")
        v = self.valuation()
        lead = self.terms[(v, 0)]
        from ._backend import UNIT_MONO
        if set(lead.terms) != {UNIT_MONO}:
            raise ValueError("leading coefficient is not a scalar unit")
        p = self.mctx.p
        u0 = lead.terms[UNIT_MONO]
        u0inv = fparith.inv_mod(u0, p)
        # self = u0 * t^v * (1 + w) with w of positive valuation
        rest_prec = self.prec - v
        w_terms = {(ep - v, 0): c * u0inv
                   for (ep, _em), c in self.terms.items() if ep != v}
        w = GradedSeries(self.mctx, w_terms, self.basis, rest_prec)
        geom = GradedSeries.constant(self.mctx.one(self.basis)).truncate(rest_prec)
        term = geom
        wv = w.valuation()
        k = 1
        while k * wv < rest_prec and not w.is_zero():
            term = (-1) * (term * w)
            if term.is_zero():
                break
            geom = geom + term
            k += 1
        out = (geom * u0inv).shift(-v)
        return out.truncate(self.prec - 2 * v)

    def compose(self, g: "GradedSeries") -> "GradedSeries":
        """Substitute ``t_plus -> g`` (g of valuation >= 1, t_minus-free)."""
        self._check(g)
        if g.has_t_minus():
            raise ValueError("substitution series must be t_minus-free")
        vg = g.valuation()
        if not isinstance(vg, int) or vg < 1:
            raise ValueError("substitution series must have valuation >= 1")
        prec = g.prec if self.prec is math.inf else min(self.prec * vg, g.prec)
        acc = GradedSeries.zero(self.mctx, self.basis, prec)
        powers: dict = {}

        def g_pow(e: int) -> GradedSeries:
            if e not in powers:
                powers[e] = g ** e
            return powers[e]

        tminus = GradedSeries.t_minus(self.mctx, self.basis)
        for (ep, em), c in sorted(self.terms.items()):
            part = GradedSeries.constant(c) * g_pow(ep)
            if em:
                part = part * tminus
            acc = acc + part
        return acc

    def derivative(self) -> "GradedSeries":
        """Formal derivative with respect to ``t_plus``."""
        p = self.mctx.p
        out = {}
        for (ep, em), c in self.terms.items():
            k = ep % p
            if k:
                out[(ep - 1, em)] = c * k
        return GradedSeries(self.mctx, out, self.basis, self.prec - 1)


# ----------------------------------------------------------------------
# canonical generating series


class SeriesContext:
    """Bundles an algebra context with a target order and an odd-prime
    quadratic non-residue used for the omega-twist."""

    def __init__(self, mctx: MilnorContext, order: int, nonresidue: int = None):
        self.mctx = mctx
        self.order = order
        self.p = mctx.p
        if self.p == 2:
            self.nonresidue = None
        else:
            g = fparith.first_nonresidue(self.p) if nonresidue is None else nonresidue % self.p
            if not fparith.is_nonresidue(g, self.p):
                raise ValueError("%d is a quadratic residue mod %d" % (g, self.p))
            self.nonresidue = g

    def _gen_series(self, gen, basis: str) -> GradedSeries:
        terms = {}
        r = 0
        while self.p ** r <= self.order:
            terms[(self.p ** r, 0)] = gen(r)
            r += 1
        return GradedSeries(self.mctx, terms, basis, self.order + 1)

    def series(self, name: str) -> GradedSeries:
        """One of the canonical series: sum of generators against p-th power
        exponents of ``t_plus`` (the odd families also carry a bare
        ``t_minus`` term)."""
        m = self.mctx
        if name == "xi":
            return self._gen_series(m.xi, XI)
        if name == "zeta":
            return self._gen_series(m.zeta, ZETA)
        if name == "tau":
            if self.p == 2:
                raise ValueError("no tau series at p=2")
            f = self._gen_series(m.tau, XI)
            return f + GradedSeries.t_minus(m, XI).truncate(self.order + 1)
        if name == "taubar":
            if self.p == 2:
                raise ValueError("no taubar series at p=2")
            f = self._gen_series(m.taubar, ZETA)
            return f + GradedSeries.t_minus(m, ZETA).truncate(self.order + 1)
        raise ValueError("unknown series %r" % (name,))

    def twisted_zeta(self) -> GradedSeries:
        """The twist of the zeta series: substitute ``t_plus`` by
        ``omega**(-1) t_plus`` and multiply by ``omega``.

        At odd primes the omega-powers all reduce to integer powers of the
        chosen non-residue; the result is omega-free.  At p=2 this is the
        zeta series itself.
        """
        z = self.series("zeta")
        if self.p == 2:
            return z
        return twist_substitute(z, self.nonresidue)


class OmegaSeries:
    """A series with coefficients in the quadratic extension, written as
    ``even + omega * odd`` where ``omega**2 = g`` is a non-residue."""

    __slots__ = ("even", "odd", "g")

    def __init__(self, even: GradedSeries, odd: GradedSeries, g: int):
        self.even = even
        self.odd = odd
        self.g = g

    def __add__(self, other: "OmegaSeries") -> "OmegaSeries":
        if self.g != other.g:
            raise ValueError("mismatched omega conventions")
        return OmegaSeries(self.even + other.even, self.odd + other.odd, self.g)

    def __mul__(self, other: "OmegaSeries") -> "OmegaSeries":
        if self.g != other.g:
            raise ValueError("mismatched omega conventions")
        ev = self.even * other.even + (self.odd * other.odd) * self.g
        od = self.even * other.odd + self.odd * other.even
        return OmegaSeries(ev, od, self.g)

    def export(self) -> GradedSeries:
        """Return the even part, insisting the omega-component vanished."""
        if not self.odd.is_zero():
            raise ValueError(
                "omega-component does not vanish at exponents %s"
                % (self.odd.support(),))
        return self.even


def twist_substitute(f: GradedSeries, g: int) -> GradedSeries:
    """Compute ``omega * f(omega**(-1) t_plus)`` with ``omega**2 = g``.

    Every term ``c t_plus**e`` picks up ``omega**(1-e)``; the exponent must
    come out even for every term (otherwise the result genuinely lives in
    the quadratic extension and a ``ValueError`` is raised).  The output is
    expressed purely over the prime field using ``omega**2 = g``.
    """
    if f.has_t_minus():
        raise ValueError("twist substitution expects a t_minus-free series")
    p = f.mctx.p
    ginv = fparith.inv_mod(g % p, p)
    even_terms, odd_terms = {}, {}
    for (ep, _em), c in f.terms.items():
        k = 1 - ep
        if k % 2 == 0:
            half = k // 2
            scal = pow(g % p, half, p) if half >= 0 else pow(ginv, -half, p)
            even_terms[(ep, 0)] = c * scal
        else:
            half = (k - 1) // 2
            scal = pow(g % p, half, p) if half >= 0 else pow(ginv, -half, p)
            odd_terms[(ep, 0)] = c * scal
    om = OmegaSeries(
        GradedSeries(f.mctx, even_terms, f.basis, f.prec),
        GradedSeries(f.mctx, odd_terms, f.basis, f.prec),
        g % p,
    )
    return om.export()


def laurent_coeff_by_substitution(f: GradedSeries, n: int, h: GradedSeries) -> Element:
    """Extract ``[f]_{t^n}`` through the change of coordinates ``t = h(u)``.

    ``h`` must be an invertible coordinate (valuation 1, scalar unit
    leading coefficient).  The coefficient is computed as the residue

        ``[ f(h(u)) h'(u) h(u)**(-(n+1)) ]_{u^{-1}}``,

    which is independent of the choice of ``h``.
    """
    if f.has_t_minus() or h.has_t_minus():
        raise ValueError("residue extraction expects t_minus-free series")
    integrand = f.compose(h) * h.derivative() * (h ** (-(n + 1)))
    return integrand.coeff(-1)
