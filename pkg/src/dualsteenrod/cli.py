"""Command-line interface: parse expressions, evaluate them, print results.

The grammar accepted by :func:`parse_expression`::

    element ::= term ('+' term | '-' term)*
    term    ::= coeff? factor*              (juxtaposition = multiplication)
    factor  ::= primary ('^' nat)?
    primary ::= name | 'x1' | opword factor | '(' element ')' | nat
    name    ::= 'xi_'nat | 'zeta_'nat | 'tau_'nat | 'taubar_'nat
    opword  ::= ('Q['nat']' | 'bQ['nat']' | 'Sq['nat']' | 'P['nat']'
                 | 'beta' | 'q['nat']' | 'P[(r1,...);(e0,...)]')+

Operator words act letter by letter, rightmost letter first, so
``Q[2]Q[1]x1`` means "apply Q[1], then Q[2]".  Values are either scalars,
algebra elements, or elements of the free comodule algebra on ``x1``; the
evaluator promotes scalars as needed and refuses mixed products.

Canonical text printing orders terms by degree (ties broken by exponent
pattern), writes coefficients as ``1 .. p-1``, and prints tensor factors
with ``⊗``.  ``--format json`` emits machine-readable documents that parse
back to the identical element; ``--format latex`` emits math-mode source.
"""

import argparse
import json
import math
import re
import sys

from .milnor import Element, MilnorContext, Tensor, XI, ZETA
from .series import GradedSeries, SeriesContext
from .steenrod import act, op_beta, op_milnor_primitive, op_profile, op_sq, op_p, op_word, pair
from .dyerlashof import dl_apply, dl_series, newton
from .freedl import (
    FreeContext,
    FreeElement,
    FreeTensor,
    act_free,
    bockstein_free,
    coact_free,
    coact_free_left,
    dl_on_free,
    enumerate_basis,
    format_word,
    primitives_basis,
    psi_bar_report,
    quotient_basis,
)


class ExprError(ValueError):
    """Parse or evaluation failure, carrying the source column."""

    def __init__(self, message, column):
        super().__init__("%s (column %d)" % (message, column))
        self.message = message
        self.column = column


# ----------------------------------------------------------------------
# tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<PROFILE>P\[\(\s*(?P<pr_r>[0-9]+(?:\s*,\s*[0-9]+)*)?\s*\)\s*;\s*
       \(\s*(?P<pr_e>[0-9]+(?:\s*,\s*[0-9]+)*)?\s*\)\])
  | (?P<BQ>bQ\[(?P<bq_n>[0-9]+)\])
  | (?P<Q>Q\[(?P<q_n>[0-9]+)\])
  | (?P<SQ>Sq\[(?P<sq_n>[0-9]+)\])
  | (?P<P>P\[(?P<p_n>[0-9]+)\])
  | (?P<LQ>q\[(?P<lq_n>[0-9]+)\])
  | (?P<BETA>beta)
  | (?P<NAME>(?:taubar|tau|zeta|xi)_[0-9]+)
  | (?P<X1>x1)
  | (?P<INT>[0-9]+)
  | (?P<SYM>[+\-*^()])
    """,
    re.VERBOSE,
)


def tokenize(text):
    """Split ``text`` into ``(kind, value, column)`` tuples (1-based columns)."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprError("unexpected character %r" % text[pos], pos + 1)
        col = pos + 1
        pos = m.end()
        kind = m.lastgroup
        if kind == "WS":
            continue
        if kind == "PROFILE":
            rs = tuple(int(s) for s in m.group("pr_r").split(",")) if m.group("pr_r") else ()
            es = tuple(int(s) for s in m.group("pr_e").split(",")) if m.group("pr_e") else ()
            tokens.append(("PROFILE", (rs, es), col))
        elif kind == "BQ":
            tokens.append(("OP", ("bQ", int(m.group("bq_n"))), col))
        elif kind == "Q":
            tokens.append(("OP", ("Q", int(m.group("q_n"))), col))
        elif kind == "SQ":
            tokens.append(("OP", ("Sq", int(m.group("sq_n"))), col))
        elif kind == "P":
            tokens.append(("OP", ("P", int(m.group("p_n"))), col))
        elif kind == "LQ":
            tokens.append(("OP", ("q", int(m.group("lq_n"))), col))
        elif kind == "BETA":
            tokens.append(("OP", ("beta",), col))
        elif kind == "NAME":
            family, idx = m.group().rsplit("_", 1)
            tokens.append(("NAME", (family, int(idx)), col))
        elif kind == "X1":
            tokens.append(("X1", None, col))
        elif kind == "INT":
            tokens.append(("INT", int(m.group()), col))
        else:
            tokens.append((m.group(), None, col))
    tokens.append(("END", None, len(text) + 1))
    return tokens


# ----------------------------------------------------------------------
# parser -> AST
#
# AST nodes are plain tuples:
#   ("sum", [(sign, term), ...])
#   ("prod", coeff, [factor, ...])
#   ("pow", node, n)
#   ("name", family, index)       family in {"xi", "zeta", "tau", "taubar"}
#   ("x1",)
#   ("num", n)
#   ("word", [letter, ...], node) letters: ("Q", r) ("bQ", r) ("Sq", n)
#                                 ("P", n) ("beta",) ("q", k)
#                                 ("profile", rs, es)


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ExprError("expected %r" % kind, tok[2])
        return tok

    # element ::= term (('+'|'-') term)*
    def parse_element(self):
        parts = [(1, self.parse_term())]
        while self.peek()[0] in ("+", "-"):
            sign = 1 if self.next()[0] == "+" else -1
            parts.append((sign, self.parse_term()))
        return ("sum", parts)

    # term ::= coeff? factor*   with optional explicit '*'
    def parse_term(self):
        coeff = None
        factors = []
        kind, value, col = self.peek()
        if kind == "INT":
            nxt = self.tokens[self.i + 1][0]
            # A leading integer is a coefficient unless it is immediately
            # raised to a power (then it is a numeric factor).
            if nxt != "^":
                self.next()
                coeff = value
        while True:
            kind = self.peek()[0]
            if kind in ("NAME", "X1", "OP", "PROFILE", "(", "INT"):
                factors.append(self.parse_factor())
                if self.peek()[0] == "*":
                    self.next()
                    if self.peek()[0] not in ("NAME", "X1", "OP", "PROFILE", "(", "INT"):
                        raise ExprError("expected a factor after '*'", self.peek()[2])
                    continue
            else:
                break
        if coeff is None and not factors:
            raise ExprError("expected a term", self.peek()[2])
        return ("prod", 1 if coeff is None else coeff, factors)

    def parse_factor(self):
        node = self.parse_primary()
        if self.peek()[0] == "^":
            self.next()
            tok = self.expect("INT")
            node = ("pow", node, tok[1])
        return node

    def parse_primary(self):
        kind, value, col = self.next()
        if kind == "NAME":
            return ("name", value[0], value[1])
        if kind == "X1":
            return ("x1",)
        if kind == "INT":
            return ("num", value)
        if kind == "(":
            inner = self.parse_element()
            self.expect(")")
            return inner
        if kind in ("OP", "PROFILE"):
            letters = []
            while True:
                if kind == "OP":
                    letters.append(value)
                else:
                    letters.append(("profile",) + value)
                nxt = self.peek()
                if nxt[0] in ("OP", "PROFILE"):
                    kind, value, col = self.next()
                else:
                    break
            operand = self.parse_factor()
            return ("word", letters, operand)
        raise ExprError("unexpected token", col)


def parse_expression(text):
    parser = _Parser(tokenize(text))
    node = parser.parse_element()
    tok = parser.peek()
    if tok[0] != "END":
        raise ExprError("trailing input", tok[2])
    return node


# ----------------------------------------------------------------------
# evaluation

class EvalContext:
    """Bundles the algebra context and the free comodule context."""

    def __init__(self, p, max_degree=60, nonresidue=None):
        self.mctx = MilnorContext(p, max_degree=max_degree)
        self.fctx = FreeContext(self.mctx, nonresidue=nonresidue)


def _as_element(ecx, value):
    if isinstance(value, int):
        return ecx.mctx.scalar(value, ZETA)
    return value


def _mul_values(ecx, a, b, col):
    if isinstance(a, int) and isinstance(b, int):
        return a * b
    if isinstance(a, int):
        a, b = b, a
    if isinstance(b, int):
        if isinstance(a, (Element, FreeElement)):
            return a * b
    if isinstance(a, Element) and isinstance(b, Element):
        if a.basis != b.basis:
            b = ecx.mctx.convert(b, a.basis)
        return a * b
    if isinstance(a, FreeElement) and isinstance(b, FreeElement):
        return a * b
    raise ExprError("cannot multiply an algebra element by a free-module element", col)


def _apply_letter(ecx, letter, value, col):
    """Apply one operation letter to ``value`` (acting on homology)."""
    mctx = ecx.mctx
    p = mctx.p
    kind = letter[0]
    if isinstance(value, int):
        value = mctx.scalar(value, ZETA)
    if kind in ("Q", "bQ"):
        eps = 1 if kind == "bQ" else 0
        if eps and p == 2:
            raise ExprError("bQ is only defined at odd primes", col)
        if isinstance(value, FreeElement):
            return dl_on_free(ecx.fctx, (eps, letter[1]), value)
        return dl_apply(mctx, (eps, letter[1]), value)
    if kind == "Sq":
        if p != 2:
            raise ExprError("Sq[n] is only defined at p = 2", col)
        op = op_sq(mctx, letter[1])
    elif kind == "P":
        if p == 2:
            raise ExprError("P[n] is spelled Sq[n] at p = 2", col)
        op = op_p(mctx, letter[1])
    elif kind == "beta":
        if isinstance(value, FreeElement):
            return bockstein_free(ecx.fctx, value)
        return mctx.bockstein(value)
    elif kind == "q":
        op = op_milnor_primitive(mctx, letter[1])
    elif kind == "profile":
        rs, es = letter[1], letter[2]
        mask = 0
        for j, e in enumerate(es):
            if e not in (0, 1):
                raise ExprError("profile exponents must be 0 or 1", col)
            if e:
                mask |= 1 << j
        if mask and p == 2:
            raise ExprError("tau-profiles require an odd prime", col)
        op = op_profile(mctx, mask, rs)
    else:
        raise ExprError("unknown operation %r" % kind, col)
    if isinstance(value, FreeElement):
        return act_free(ecx.fctx, op, value)
    return act(mctx, op, value)


def evaluate(ecx, node, col=1):
    """Evaluate an AST node to an int, Element, or FreeElement."""
    mctx = ecx.mctx
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "x1":
        return ecx.fctx.x1()
    if kind == "name":
        family, idx = node[1], node[2]
        if family == "xi":
            return mctx.xi(idx)
        if family == "zeta":
            return mctx.zeta(idx)
        if mctx.p == 2:
            raise ExprError("%s_%d requires an odd prime" % (family, idx), col)
        if family == "tau":
            return mctx.tau(idx)
        return mctx.taubar(idx)
    if kind == "pow":
        base = evaluate(ecx, node[1], col)
        return base ** node[2]
    if kind == "word":
        value = evaluate(ecx, node[2], col)
        for letter in reversed(node[1]):
            value = _apply_letter(ecx, letter, value, col)
        return value
    if kind == "prod":
        value = node[1]
        for factor in node[2]:
            value = _mul_values(ecx, value, evaluate(ecx, factor, col), col)
        return value
    if kind == "sum":
        total = 0
        for sign, term in node[1]:
            v = evaluate(ecx, term, col)
            if sign < 0:
                v = -v
            if isinstance(total, int) and total == 0:
                total = v
            else:
                if isinstance(total, int) or isinstance(v, int):
                    total = _as_element(ecx, total) + _as_element(ecx, v)
                elif isinstance(total, Element) and isinstance(v, Element):
                    if v.basis != total.basis:
                        v = ecx.mctx.convert(v, total.basis)
                    total = total + v
                elif isinstance(total, FreeElement) and isinstance(v, FreeElement):
                    total = total + v
                else:
                    raise ExprError("cannot add algebra and free-module elements", col)
        return total
    raise ExprError("malformed expression", col)


def evaluate_expression(ecx, text):
    return evaluate(ecx, parse_expression(text))


# ----------------------------------------------------------------------
# canonical text rendering

def _mono_sort_key(mctx, mono):
    mask, xi = mono
    deg = mctx.mono_degree(mono)
    return (deg, tuple(-e for e in xi), mask)


def _format_mono_text(mctx, mono, basis):
    mask, xi = mono
    xi_name = "xi" if basis == XI else "zeta"
    tau_name = "tau" if basis == XI else "taubar"
    parts = []
    s = 0
    m = mask
    while m:
        if m & 1:
            parts.append("%s_%d" % (tau_name, s))
        m >>= 1
        s += 1
    for r, e in enumerate(xi, start=1):
        if e == 1:
            parts.append("%s_%d" % (xi_name, r))
        elif e > 1:
            parts.append("%s_%d^%d" % (xi_name, r, e))
    return " ".join(parts)


def format_element(elem):
    """Canonical one-line text form of an algebra element."""
    if elem.is_zero():
        return "0"
    mctx = elem.ctx
    items = sorted(elem.terms.items(), key=lambda kv: _mono_sort_key(mctx, kv[0]))
    parts = []
    for mono, c in items:
        c = c % mctx.p
        body = _format_mono_text(mctx, mono, elem.basis)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        else:
            parts.append("%d %s" % (c, body))
    return " + ".join(parts)


def _format_free_mono_text(fctx, mono):
    parts = []
    for (word, e) in mono:
        if word:
            body = format_word(word) + "x1"
            if e == 1:
                parts.append(body)
            else:
                parts.append("(%s)^%d" % (body, e))
        else:
            parts.append("x1" if e == 1 else "x1^%d" % e)
    if not parts:
        return "1"
    return " ".join(parts)


def _free_mono_sort_key(fctx, mono):
    return (fctx.mono_degree(mono), mono)


def format_free(elem):
    """Canonical one-line text form of a free comodule-algebra element."""
    if elem.is_zero():
        return "0"
    fctx = elem.ctx
    items = sorted(elem.terms.items(), key=lambda kv: _free_mono_sort_key(fctx, kv[0]))
    parts = []
    for mono, c in items:
        c = c % fctx.p
        body = _format_free_mono_text(fctx, mono)
        if body == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        else:
            parts.append("%d %s" % (c, body))
    return " + ".join(parts)


def format_free_tensor(t):
    """Canonical text for a coaction value, grouped by free-side monomial."""
    if not t.terms:
        return "0"
    fctx = t.ctx
    mctx = fctx.mctx
    groups = {}
    for (fm, am), c in t.terms.items():
        groups.setdefault(fm, {})[am] = c
    rows = []
    for fm, amap in groups.items():
        aside = Element(mctx, amap, t.aside)
        key = (min(mctx.mono_degree(m) for m in amap), _free_mono_sort_key(fctx, fm))
        rows.append((key, fm, aside))
    rows.sort(key=lambda row: row[0])
    parts = []
    for _key, fm, aside in rows:
        fbody = _format_free_mono_text(fctx, fm)
        abody = format_element(aside)
        if len(aside.terms) > 1:
            abody = "(%s)" % abody
        if t.free_first:
            parts.append("%s⊗%s" % (fbody, abody))
        else:
            parts.append("%s⊗%s" % (abody, fbody))
    return " + ".join(parts)


def format_tensor(t):
    """Canonical text for an algebra-valued tensor (coproduct output)."""
    items = list(t.terms.items())
    if not items:
        return "0"
    mctx = t.ctx

    def key(kv):
        (m1, m2), _c = kv
        return (
            mctx.mono_degree(m1),
            _mono_sort_key(mctx, m1),
            _mono_sort_key(mctx, m2),
        )

    items.sort(key=key)
    parts = []
    for (m1, m2), c in items:
        c = c % mctx.p
        left = _format_mono_text(mctx, m1, t.basis_left) or "1"
        right = _format_mono_text(mctx, m2, t.basis_right) or "1"
        body = "%s⊗%s" % (left, right)
        parts.append(body if c == 1 else "%d %s" % (c, body))
    return " + ".join(parts)


def format_series(series):
    """Canonical text for a graded series in ``t``."""
    if series.is_zero():
        return "0"
    parts = []
    for (ep, em) in series.support():
        c = series.terms[(ep, em)]
        body = format_element(c)
        if len(c.terms) > 1:
            body = "(%s)" % body
        tpow = ""
        if em:
            tpow += " t-"
        if ep == 1:
            tpow += " t"
        elif ep:
            tpow += " t^%d" % ep
        parts.append(body + tpow)
    return " + ".join(parts)


# ----------------------------------------------------------------------
# LaTeX rendering

def _latex_mono(mctx, mono, basis):
    mask, xi = mono
    xi_name = r"\xi" if basis == XI else r"\zeta"
    tau_name = r"\tau" if basis == XI else r"\bar{\tau}"
    parts = []
    s = 0
    m = mask
    while m:
        if m & 1:
            parts.append("%s_{%d}" % (tau_name, s))
        m >>= 1
        s += 1
    for r, e in enumerate(xi, start=1):
        if e == 1:
            parts.append("%s_{%d}" % (xi_name, r))
        elif e > 1:
            parts.append("%s_{%d}^{%d}" % (xi_name, r, e))
    return " ".join(parts)


def latex_element(elem):
    if elem.is_zero():
        return "0"
    mctx = elem.ctx
    items = sorted(elem.terms.items(), key=lambda kv: _mono_sort_key(mctx, kv[0]))
    parts = []
    for mono, c in items:
        c = c % mctx.p
        body = _latex_mono(mctx, mono, elem.basis)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        else:
            parts.append("%d %s" % (c, body))
    return " + ".join(parts)


def _latex_word(word):
    parts = []
    for (eps, r) in word:
        if eps:
            parts.append(r"\beta Q^{%d}" % r)
        else:
            parts.append("Q^{%d}" % r)
    return "".join(parts)


def _latex_free_mono(fctx, mono):
    parts = []
    for (word, e) in mono:
        body = (_latex_word(word) + "x_{1}") if word else "x_{1}"
        if e == 1:
            parts.append(body)
        elif word:
            parts.append(r"\left(%s\right)^{%d}" % (body, e))
        else:
            parts.append("x_{1}^{%d}" % e)
    return " ".join(parts) if parts else "1"


def latex_free(elem):
    if elem.is_zero():
        return "0"
    fctx = elem.ctx
    items = sorted(elem.terms.items(), key=lambda kv: _free_mono_sort_key(fctx, kv[0]))
    parts = []
    for mono, c in items:
        c = c % fctx.p
        body = _latex_free_mono(fctx, mono)
        if body == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        else:
            parts.append("%d %s" % (c, body))
    return " + ".join(parts)


def latex_free_tensor(t):
    if not t.terms:
        return "0"
    fctx = t.ctx
    mctx = fctx.mctx
    groups = {}
    for (fm, am), c in t.terms.items():
        groups.setdefault(fm, {})[am] = c
    rows = []
    for fm, amap in groups.items():
        aside = Element(mctx, amap, t.aside)
        key = (min(mctx.mono_degree(m) for m in amap), _free_mono_sort_key(fctx, fm))
        rows.append((key, fm, aside))
    rows.sort(key=lambda row: row[0])
    parts = []
    for _key, fm, aside in rows:
        fbody = _latex_free_mono(fctx, fm)
        abody = latex_element(aside)
        if len(aside.terms) > 1:
            abody = r"\left(%s\right)" % abody
        if t.free_first:
            parts.append(r"%s \otimes %s" % (fbody, abody))
        else:
            parts.append(r"%s \otimes %s" % (abody, fbody))
    return " + ".join(parts)


def latex_tensor(t):
    items = list(t.terms.items())
    if not items:
        return "0"
    mctx = t.ctx

    def key(kv):
        (m1, m2), _c = kv
        return (mctx.mono_degree(m1), _mono_sort_key(mctx, m1), _mono_sort_key(mctx, m2))

    items.sort(key=key)
    parts = []
    for (m1, m2), c in items:
        c = c % mctx.p
        left = _latex_mono(mctx, m1, t.basis_left) or "1"
        right = _latex_mono(mctx, m2, t.basis_right) or "1"
        body = r"%s \otimes %s" % (left, right)
        parts.append(body if c == 1 else "%d %s" % (c, body))
    return " + ".join(parts)


def latex_series(series):
    if series.is_zero():
        return "0"
    parts = []
    for (ep, em) in series.support():
        c = series.terms[(ep, em)]
        body = latex_element(c)
        if len(c.terms) > 1:
            body = r"\left(%s\right)" % body
        tpow = ""
        if em:
            tpow += r" t_{-}"
        if ep == 1:
            tpow += " t"
        elif ep:
            tpow += " t^{%d}" % ep
        parts.append(body + tpow)
    return " + ".join(parts)


# ----------------------------------------------------------------------
# JSON rendering (bit-exact round trip for algebra elements)

def element_json(elem):
    mctx = elem.ctx
    items = sorted(elem.terms.items(), key=lambda kv: _mono_sort_key(mctx, kv[0]))
    terms = []
    for (mask, xi), c in items:
        entry = {"c": c % mctx.p, "xi": list(xi)}
        if mctx.p != 2:
            taus = []
            s = 0
            m = mask
            while m:
                if m & 1:
                    taus.append(s)
                m >>= 1
                s += 1
            entry["tau"] = taus
        terms.append(entry)
    return {"p": mctx.p, "basis": elem.basis, "terms": terms}


def element_from_json(doc, mctx=None):
    p = doc["p"]
    if mctx is None:
        mctx = MilnorContext(p)
    basis = doc.get("basis", XI)
    terms = {}
    for entry in doc["terms"]:
        xi = tuple(entry.get("xi", ()))
        while xi and xi[-1] == 0:
            xi = xi[:-1]
        mask = 0
        for s in entry.get("tau", ()):
            mask |= 1 << s
        terms[(mask, xi)] = entry["c"] % p
    return Element(mctx, terms, basis)


def free_element_json(elem):
    fctx = elem.ctx
    items = sorted(elem.terms.items(), key=lambda kv: _free_mono_sort_key(fctx, kv[0]))
    terms = []
    for mono, c in items:
        mono_doc = [{"word": [list(l) for l in word], "exp": e} for (word, e) in mono]
        terms.append({"c": c % fctx.p, "mono": mono_doc})
    return {"p": fctx.p, "module": "free", "terms": terms}


def free_tensor_json(t):
    fctx = t.ctx
    entries = []
    for (fm, am), c in sorted(t.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        mono_doc = [{"word": [list(l) for l in word], "exp": e} for (word, e) in fm]
        mask, xi = am
        taus = []
        s = 0
        m = mask
        while m:
            if m & 1:
                taus.append(s)
            m >>= 1
            s += 1
        entries.append({"c": c % fctx.p, "free": mono_doc, "aside": {"xi": list(xi), "tau": taus}})
    return {
        "p": fctx.p,
        "aside_basis": t.aside,
        "free_first": t.free_first,
        "terms": entries,
    }


def tensor_json(t):
    mctx = t.ctx
    rows = []
    for (m1, m2), c in sorted(t.terms.items()):
        rows.append(
            {
                "c": c % mctx.p,
                "left": element_json(Element(mctx, {m1: 1}, t.basis_left))["terms"][0],
                "right": element_json(Element(mctx, {m2: 1}, t.basis_right))["terms"][0],
            }
        )
    return {
        "p": mctx.p,
        "basis_left": t.basis_left,
        "basis_right": t.basis_right,
        "terms": rows,
    }


def series_json(series, order):
    n = series.prec if not math.isinf(series.prec) else order + 1
    rows = []
    for (ep, em) in series.support():
        rows.append({"ep": ep, "em": em, "coeff": element_json(series.terms[(ep, em)])})
    return {"N": int(n), "terms": rows}


def render_value(value, fmt, order=None):
    """Render an evaluated value in the requested output format."""
    if fmt == "json":
        if isinstance(value, int):
            return json.dumps({"value": value})
        if isinstance(value, Element):
            return json.dumps(element_json(value))
        if isinstance(value, FreeElement):
            return json.dumps(free_element_json(value))
        if isinstance(value, FreeTensor):
            return json.dumps(free_tensor_json(value))
        if isinstance(value, Tensor):
            return json.dumps(tensor_json(value))
        if isinstance(value, GradedSeries):
            return json.dumps(series_json(value, order if order is not None else 0))
        return json.dumps(value)
    if fmt == "latex":
        if isinstance(value, int):
            return str(value)
        if isinstance(value, Element):
            return latex_element(value)
        if isinstance(value, FreeElement):
            return latex_free(value)
        if isinstance(value, FreeTensor):
            return latex_free_tensor(value)
        if isinstance(value, Tensor):
            return latex_tensor(value)
        if isinstance(value, GradedSeries):
            return latex_series(value)
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Element):
        return format_element(value)
    if isinstance(value, FreeElement):
        return format_free(value)
    if isinstance(value, FreeTensor):
        return format_free_tensor(value)
    if isinstance(value, Tensor):
        return format_tensor(value)
    if isinstance(value, GradedSeries):
        return format_series(value)
    return str(value)


# ----------------------------------------------------------------------
# command handlers

def _read_input(args):
    text = args.input
    if text == "-":
        text = sys.stdin.read()
    return text


def _parse_op_word(text):
    """Parse a bare operator word such as ``Q[2]bQ[1]`` into letters."""
    tokens = tokenize(text)
    letters = []
    for kind, value, col in tokens:
        if kind == "END":
            break
        if kind == "OP":
            letters.append(value)
        elif kind == "PROFILE":
            letters.append(("profile",) + value)
        else:
            raise ExprError("operator word may only contain operation letters", col)
    if not letters:
        raise ExprError("empty operator word", 1)
    return letters


def cmd_antipode(ecx, args):
    value = evaluate_expression(ecx, _read_input(args))
    value = _as_element(ecx, value)
    if not isinstance(value, Element):
        raise ExprError("antipode expects an algebra element", 1)
    return ecx.mctx.antipode(value)


def cmd_coproduct(ecx, args):
    value = evaluate_expression(ecx, _read_input(args))
    value = _as_element(ecx, value)
    if not isinstance(value, Element):
        raise ExprError("coproduct expects an algebra element", 1)
    return ecx.mctx.coproduct(value)


def cmd_coact(ecx, args):
    value = evaluate_expression(ecx, _read_input(args))
    if isinstance(value, int):
        value = ecx.fctx.one() * value
    if isinstance(value, Element):
        raise ExprError("coact expects an element of the free comodule algebra", 1)
    if args.side == "right":
        return coact_free(ecx.fctx, value).convert_aside(ZETA)
    return coact_free_left(ecx.fctx, value).convert_aside(ZETA)


def cmd_dl(ecx, args):
    letters = _parse_op_word(args.op)
    for letter in letters:
        if letter[0] not in ("Q", "bQ"):
            raise ExprError("dl only accepts Q[r] and bQ[r] letters", 1)
    value = evaluate_expression(ecx, _read_input(args))
    if isinstance(value, int):
        value = ecx.mctx.scalar(value, ZETA)
    for letter in reversed(letters):
        value = _apply_letter(ecx, letter, value, 1)
    return value


def cmd_act(ecx, args):
    letters = _parse_op_word(args.op)
    for letter in letters:
        if letter[0] in ("Q", "bQ"):
            raise ExprError("act only accepts Steenrod letters (Sq, P, beta, q, profiles)", 1)
    value = evaluate_expression(ecx, _read_input(args))
    if isinstance(value, int):
        value = ecx.mctx.scalar(value, ZETA)
    for letter in reversed(letters):
        value = _apply_letter(ecx, letter, value, 1)
    return value


def cmd_series(ecx, args):
    value = evaluate_expression(ecx, _read_input(args))
    value = _as_element(ecx, value)
    if not isinstance(value, Element):
        raise ExprError("series expects an algebra element", 1)
    sctx = SeriesContext(ecx.mctx, args.order, nonresidue=args.nonresidue)
    return dl_series(sctx, value, eps=args.eps)


def cmd_newton(ecx, args):
    return newton(ecx.mctx, args.index)


def cmd_pair(ecx, args):
    letters = _parse_op_word(args.op)
    mctx = ecx.mctx
    ops = []
    for letter in letters:
        kind = letter[0]
        if kind == "Sq":
            if mctx.p != 2:
                raise ExprError("Sq[n] is only defined at p = 2", 1)
            ops.append(op_sq(mctx, letter[1]))
        elif kind == "P":
            if mctx.p == 2:
                raise ExprError("P[n] is spelled Sq[n] at p = 2", 1)
            ops.append(op_p(mctx, letter[1]))
        elif kind == "beta":
            ops.append(op_beta(mctx))
        elif kind == "q":
            ops.append(op_milnor_primitive(mctx, letter[1]))
        elif kind == "profile":
            rs, es = letter[1], letter[2]
            mask = 0
            for j, e in enumerate(es):
                if e:
                    mask |= 1 << j
            ops.append(op_profile(mctx, mask, rs))
        else:
            raise ExprError("pair only accepts Steenrod letters", 1)
    op = ops[0] if len(ops) == 1 else op_word(mctx, ops)
    value = evaluate_expression(ecx, _read_input(args))
    value = _as_element(ecx, value)
    if not isinstance(value, Element):
        raise ExprError("pair expects an algebra element", 1)
    return pair(mctx, op, value)


def cmd_basis(ecx, args):
    d = args.degree
    if args.of == "algebra":
        monos = ecx.mctx.basis_monomials(d)
        elems = [Element(ecx.mctx, {m: 1}, args.basis) for m in monos]
        elems.sort(key=lambda e: _mono_sort_key(ecx.mctx, next(iter(e.terms))))
        return [format_element(e) for e in elems]
    if args.of == "free":
        elems = enumerate_basis(ecx.fctx, d)
        elems.sort(key=lambda e: _free_mono_sort_key(ecx.fctx, next(iter(e.terms))))
        return [format_free(e) for e in elems]
    if args.of == "quotient":
        return [format_free(e) for e in quotient_basis(ecx.fctx, d)]
    return [format_free(e) for e in primitives_basis(ecx.fctx, d)]


def cmd_splitting(ecx, args):
    rows = []
    for d in range(1, args.max_degree + 1):
        rep = psi_bar_report(ecx.fctx, d)
        rows.append(
            {
                "degree": d,
                "dimH": rep["dimH"],
                "dimExtended": rep["dimExtended"],
                "bijective": rep["bijective"],
            }
        )
    return rows


def build_arg_parser():
    parser = argparse.ArgumentParser(
        prog="dualsteenrod",
        description="Exact computations in the mod-p dual Steenrod algebra "
        "and its free Dyer-Lashof comodule algebra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, input_arg=True):
        sp.add_argument("--prime", type=int, required=True, help="the prime p")
        sp.add_argument("--truncate", type=int, default=60, help="degree cap for generators")
        sp.add_argument(
            "--format", choices=("text", "json", "latex"), default="text", dest="fmt"
        )
        sp.add_argument("--nonresidue", type=int, default=None)
        sp.add_argument("--seed", type=int, default=0)
        if input_arg:
            sp.add_argument("--input", required=True, help="expression ('-' reads stdin)")

    sp = sub.add_parser("antipode", help="apply the antipode")
    common(sp)

    sp = sub.add_parser("coproduct", help="apply the coproduct")
    common(sp)

    sp = sub.add_parser("coact", help="coaction on the free comodule algebra")
    common(sp)
    sp.add_argument("--side", choices=("left", "right"), default="right")

    sp = sub.add_parser("dl", help="apply a Dyer-Lashof operation word")
    common(sp)
    sp.add_argument("--op", required=True, help="operator word, e.g. Q[2] or bQ[3]Q[1]")

    sp = sub.add_parser("act", help="apply a Steenrod operation word (on homology)")
    common(sp)
    sp.add_argument("--op", required=True, help="operator word, e.g. Sq[2] or beta P[1]")

    sp = sub.add_parser("series", help="total power-operation series of an element")
    common(sp)
    sp.add_argument("--order", type=int, default=16, help="series truncation order")
    sp.add_argument("--eps", type=int, default=0, choices=(0, 1))

    sp = sub.add_parser("newton", help="Newton polynomial of the generator family")
    common(sp, input_arg=False)
    sp.add_argument("--index", type=int, required=True)

    sp = sub.add_parser("pair", help="pair a Steenrod operator word against an element")
    common(sp)
    sp.add_argument("--op", required=True)

    sp = sub.add_parser("basis", help="list a homogeneous basis in one degree")
    common(sp, input_arg=False)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument(
        "--of",
        choices=("algebra", "free", "quotient", "primitives"),
        default="algebra",
    )
    sp.add_argument("--basis", choices=(XI, ZETA), default=ZETA)

    sp = sub.add_parser("splitting", help="primitives-vs-indecomposables comparison table")
    common(sp, input_arg=False)
    sp.add_argument("--max-degree", type=int, default=12)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", help="suite name, or 'all'")
    sp.add_argument("--prime", type=int, default=None, help="restrict to one prime")
    sp.add_argument("--max-degree", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--nonresidue", type=int, default=None)
    sp.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")

    return parser


def _fail(message, column=None, code=2):
    doc = {"error": message}
    if column is not None:
        doc["column"] = column
    sys.stderr.write(json.dumps(doc) + "\n")
    return code


def main(argv=None):
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code

    if args.command == "verify":
        from . import verify

        names = None if args.suite == "all" else [args.suite]
        try:
            report = verify.run(
                names,
                primes=(args.prime,) if args.prime else (2, 3, 5),
                max_degree=args.max_degree,
                seed=args.seed,
                nonresidue=args.nonresidue,
            )
        except KeyError as exc:
            return _fail("unknown suite %s" % exc, code=2)
        if args.fmt == "json":
            print(json.dumps(report, indent=2))
        else:
            for suite in report["suites"]:
                status = "ok" if not suite["failures"] else "FAIL"
                print("%-18s %5d checks  %s" % (suite["name"], suite["checks"], status))
                for failure in suite["failures"]:
                    print("    %s" % json.dumps(failure))
            print("result: %s" % ("ok" if report["ok"] else "FAIL"))
        return 0 if report["ok"] else 1

    try:
        if args.prime < 2 or any(args.prime % k == 0 for k in range(2, args.prime)):
            return _fail("--prime must be a prime number")
        ecx = EvalContext(args.prime, max_degree=args.truncate, nonresidue=args.nonresidue)
    except ValueError as exc:
        return _fail(str(exc))

    try:
        if args.command == "antipode":
            value = cmd_antipode(ecx, args)
        elif args.command == "coproduct":
            value = cmd_coproduct(ecx, args)
        elif args.command == "coact":
            value = cmd_coact(ecx, args)
        elif args.command == "dl":
            value = cmd_dl(ecx, args)
        elif args.command == "act":
            value = cmd_act(ecx, args)
        elif args.command == "series":
            value = cmd_series(ecx, args)
        elif args.command == "newton":
            value = cmd_newton(ecx, args)
        elif args.command == "pair":
            value = cmd_pair(ecx, args)
        elif args.command == "basis":
            rows = cmd_basis(ecx, args)
            if args.fmt == "json":
                print(json.dumps(rows))
            else:
                for row in rows:
                    print(row)
            return 0
        elif args.command == "splitting":
            rows = cmd_splitting(ecx, args)
            if args.fmt == "json":
                print(json.dumps(rows))
            else:
                for row in rows:
                    print(
                        "degree %2d  dimH %3d  dimExtended %3d  %s"
                        % (
                            row["degree"],
                            row["dimH"],
                            row["dimExtended"],
                            "bijective" if row["bijective"] else "MISMATCH",
                        )
                    )
            return 0
        else:  # pragma: no cover - argparse enforces the verb set
            return _fail("unknown command %r" % args.command)
    except ExprError as exc:
        return _fail(exc.message, column=exc.column)
    except ValueError as exc:
        return _fail(str(exc))

    order = getattr(args, "order", None)
    print(render_value(value, args.fmt, order=order))
    return 0


if __name__ == "__main__":
    sys.exit(main())
