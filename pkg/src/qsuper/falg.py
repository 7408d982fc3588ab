"""Quantum function superalgebra on the matrix coefficients ``x[i,j]``.

Normal forms are ordered monomials (row-major order on ``(i,j)``) in which odd
generators occur at most once.  Both the one-parameter relations and the
multiparameter ones (``q_{t,l} = q^{phi[t,l]}``) are supported.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from .coeffring import ExpForm, Laurent, ONE, ZERO, q
from .supercore import (
    Element,
    ParityDatum,
    PhiMatrix,
    TensorElement,
    _add_into,
    tensor_multiply,
)

__all__ = ["FAlgebra", "rewrite_weight", "exponents_to_word", "word_to_exponents"]


def rewrite_weight(word, nfgens: int) -> tuple:
    """Weight ``(degree, d_11, ..., d_nn, inversions)`` used for termination."""
    counts = [0] * nfgens
    for g in word:
        counts[g] += 1
    inv = sum(1 for a in range(len(word)) for b in range(a + 1, len(word)) if word[a] > word[b])
    return (len(word), *counts, inv)


def word_to_exponents(word, nfgens: int) -> tuple:
    e = [0] * nfgens
    for g in word:
        e[g] += 1
    return tuple(e)


def exponents_to_word(exps) -> tuple:
    return tuple(g for g, k in enumerate(exps) for _ in range(k))


class FAlgebra:
    """Function superalgebra for a parity datum.

    ``mode`` is ``"uni"`` or ``"multi"``; in multi mode ``phi`` is a
    :class:`PhiMatrix` (symbolic when omitted).
    """

    def __init__(self, datum: ParityDatum, mode: str = "uni", phi: PhiMatrix | None = None):
        if mode not in ("uni", "multi"):
            raise ValueError(f"mode must be 'uni' or 'multi', got {mode!r}")
        self.datum = datum
        self.mode = mode
        self.phi = phi if phi is not None else PhiMatrix(datum.n)
        if mode == "uni":
            self.phi = PhiMatrix.zero(datum.n)
        self.ngen = datum.nfgens
        self.rules = self._build_rules()
        self._insert = lru_cache(maxsize=None)(self._insert_impl)
        self._coprod_mono = lru_cache(maxsize=None)(self._coprod_mono_impl)

    # -- relations --------------------------------------------------------
    def _qphi(self, t, l, r=1) -> ExpForm:
        if self.mode == "uni":
            return ExpForm()
        return self.phi.exp(t, l, r)

    def _build_rules(self) -> dict:
        """Map each non-normal pair ``(B, A)`` to ``[(coef, word), ...]``.

        Pairs with ``B > A`` are out of order; ``(A, A)`` with ``A`` odd is a
        vanishing square.
        """
        d = self.datum
        rules = {}
        for A in range(self.ngen):
            i, j = d.fij(A)
            if d.fpar(A):
                rules[(A, A)] = []
            for B in range(A + 1, self.ngen):
                h, k = d.fij(B)
                pa, pb = d.fpar(A), d.fpar(B)
                sign = -1 if pa and pb else 1
                if i == h:
                    # x_ij x_ik = sign q_i q_jk^{-1} x_ik x_ij  (j < k)
                    e = ExpForm(-d.sgn(i)) + self._qphi(j, k)
                    rules[(B, A)] = [(Laurent.mono(e, sign), (A, B))]
                elif j == k:
                    # x_ij x_hj = sign q_j q_ih x_hj x_ij  (i < h)
                    e = ExpForm(-d.sgn(j)) + self._qphi(i, h, -1)
                    rules[(B, A)] = [(Laurent.mono(e, sign), (A, B))]
                elif j > k:
                    # x_ij x_hk = sign q_ih q_jk^{-1} x_hk x_ij
                    e = self._qphi(i, h, -1) + self._qphi(j, k)
                    rules[(B, A)] = [(Laurent.mono(e, sign), (A, B))]
                else:
                    # x_ij x_hk = sign q_ih q_jk^{-1} x_hk x_ij
                    #             + s' (q_i - q_i^{-1}) q_jk^{-1} x_ik x_hj
                    e = self._qphi(i, h, -1) + self._qphi(j, k)
                    lead = Laurent.mono(e, sign)
                    s2 = -1 if d.pij(i, j) and d.pij(i, k) else 1
                    qi = d.sgn(i)
                    corr = (q(qi) - q(-qi)).shift(self._qphi(j, k, -1)) * (-s2)
                    C1, C2 = d.fgen(i, k), d.fgen(h, j)
                    rules[(B, A)] = [(lead, (A, B)), (lead * corr, (C1, C2))]
        return rules

    # -- normal form ------------------------------------------------------
    def _insert_impl(self, mono: tuple, g: int):
        """Normal form of ``mono * x_g`` for an ordered monomial ``mono``.

        Returns a tuple of ``(monomial, coefficient)`` pairs.
        """
        if not mono:
            return (((g,), ONE),)
        h = mono[-1]
        if h < g or (h == g and not self.datum.fpar(g)):
            return ((mono + (g,), ONE),)
        rule = self.rules[(h, g)]
        acc: dict = {}
        head = mono[:-1]
        for coef, (a, b) in rule:
            for m1, c1 in self._insert(head, a):
                for m2, c2 in self._insert(m1, b):
                    _add_into(acc, m2, coef * c1 * c2)
        return tuple(acc.items())

    def mul_mono(self, m1: tuple, m2: tuple) -> dict:
        """Normal form of the product of two ordered monomials."""
        cur = {m1: ONE}
        for g in m2:
            nxt: dict = {}
            for m, c in cur.items():
                for m3, c3 in self._insert(m, g):
                    _add_into(nxt, m3, c * c3)
            cur = nxt
        return cur

    def normal_form(self, e: Element) -> Element:
        out = Element()
        for w, c in e.terms.items():
            self._check_word(w)
            for m, c2 in self.mul_mono((), w).items():
                _add_into(out.terms, m, c * c2)
        return out

    f_normal_form = normal_form

    def _check_word(self, w):
        for g in w:
            if not isinstance(g, int) or not 0 <= g < self.ngen:
                raise IndexError(f"generator {g!r} out of range")

    def is_normal(self, w) -> bool:
        return all(
            w[t] < w[t + 1] or (w[t] == w[t + 1] and not self.datum.fpar(w[t]))
            for t in range(len(w) - 1)
        )

    def rewrite_once(self, e: Element, check_weight: bool = True) -> Element | None:
        """One leftmost rewrite step on every non-normal word, or None if normal.

        This is the step-by-step oracle; it asserts that each replacement word
        has strictly smaller weight than the word it replaces.
        """
        out = Element()
        changed = False
        for w, c in e.terms.items():
            pos = next((t for t in range(len(w) - 1) if (w[t], w[t + 1]) in self.rules
                        and not (w[t] < w[t + 1])), None)
            if pos is None:
                _add_into(out.terms, w, c)
                continue
            changed = True
            before = rewrite_weight(w, self.ngen) if check_weight else None
            for coef, pair in self.rules[(w[pos], w[pos + 1])]:
                w2 = w[:pos] + pair + w[pos + 2:]
                if check_weight:
                    after = rewrite_weight(w2, self.ngen)
                    assert after < before, (w, w2, before, after)
                _add_into(out.terms, w2, c * coef)
        return out if changed else None

    def normal_form_by_rewriting(self, e: Element, check_weight: bool = True) -> Element:
        while True:
            nxt = self.rewrite_once(e, check_weight)
            if nxt is None:
                return e
            e = nxt

    def multiply(self, a: Element, b: Element) -> Element:
        out = Element()
        for w1, c1 in a.terms.items():
            n1 = self.mul_mono((), w1) if not self.is_normal(w1) else {w1: ONE}
            for w2, c2 in b.terms.items():
                for m1, d1 in n1.items():
                    for m, d in self.mul_mono(m1, w2).items():
                        _add_into(out.terms, m, c1 * c2 * d1 * d)
        return out

    f_multiply = multiply

    # -- coalgebra --------------------------------------------------------
    def gen_coproduct(self, g: int) -> TensorElement:
        d = self.datum
        i, j = d.fij(g)
        out = TensorElement()
        for a in range(1, d.n + 1):
            s = -1 if d.pij(i, a) and d.pij(a, j) else 1
            out.terms[((d.fgen(i, a),), (d.fgen(a, j),))] = Laurent.const(s)
        return out

    def _coprod_mono_impl(self, w: tuple):
        if not w:
            return {((), ()): ONE}
        prev = self._coprod_mono(w[:-1])
        last = self.gen_coproduct(w[-1])
        fpar = self.datum.fpar
        acc: dict = {}
        for (a, b), c1 in prev.items():
            pb = sum(fpar(x) for x in b) % 2
            for (ga, gb), c2 in last.terms.items():
                coef = c1 * c2
                if pb and fpar(ga[0]):
                    coef = -coef
                for ma, ca in self._insert(a, ga[0]):
                    for mb, cb in self._insert(b, gb[0]):
                        _add_into(acc, (ma, mb), coef * ca * cb)
        return acc

    def coproduct(self, e: Element) -> TensorElement:
        """Coproduct with both legs in normal form."""
        out = TensorElement()
        for w, c in e.terms.items():
            self._check_word(w)
            for k, c2 in self._coprod_mono(tuple(w)).items():
                _add_into(out.terms, k, c * c2)
        return out

    f_coproduct = coproduct

    def coproduct_free(self, w: tuple) -> TensorElement:
        """Coproduct of a word via unreduced Koszul tensor products."""
        out = TensorElement.pure((), ())
        for g in w:
            out = tensor_multiply(out, self.gen_coproduct(g), self.datum)
        return out

    def normalize_legs(self, t: TensorElement) -> TensorElement:
        out = TensorElement()
        for (a, b), c in t.terms.items():
            for ma, ca in self.mul_mono((), a).items():
                for mb, cb in self.mul_mono((), b).items():
                    _add_into(out.terms, (ma, mb), c * ca * cb)
        return out

    def counit_word(self, w) -> Laurent:
        d = self.datum
        for g in w:
            i, j = d.fij(g)
            if i != j:
                return ZERO
        return ONE

    def counit(self, e: Element) -> Laurent:
        return sum((c * self.counit_word(w) for w, c in e.terms.items()), ZERO)

    f_counit = counit

    # -- bases ------------------------------------------------------------
    def pbw_basis(self, m: int) -> list:
        """Exponent vectors (row-major) of the truncated monomials of degree ``m``."""
        if m < 0:
            raise ValueError("degree must be non-negative")
        caps = [1 if self.datum.fpar(g) else m for g in range(self.ngen)]
        out = []

        def rec(g, left, acc):
            if g == self.ngen:
                if left == 0:
                    out.append(tuple(acc))
                return
            for k in range(min(caps[g], left), -1, -1):
                acc.append(k)
                rec(g + 1, left - k, acc)
                acc.pop()

        rec(0, m, [])
        return out

    def pbw_words(self, m: int) -> list:
        return [exponents_to_word(e) for e in self.pbw_basis(m)]

    def pbw_words_upto(self, m: int) -> list:
        return [w for k in range(m + 1) for w in self.pbw_words(k)]

    def exponent_map(self, exps) -> dict:
        d = self.datum
        return {f"{d.fij(g)[0]},{d.fij(g)[1]}": k for g, k in enumerate(exps) if k}

    # -- specialisation and semiclassical limit ---------------------------
    def specialize(self, e: Element, assign=None, q_target: str = "keep") -> Element:
        return e.map_coeffs(lambda c: c.specialize(assign, q_target))

    f_specialize = specialize

    def supercommutator(self, a: Element, b: Element) -> Element:
        """Normal form of ``ab - (-1)^{|a||b|} ba`` for homogeneous ``a, b``."""
        pa = self._homogeneous_parity(a)
        pb = self._homogeneous_parity(b)
        s = -1 if pa and pb else 1
        return self.multiply(a, b) - self.multiply(b, a).scale(s)

    def _homogeneous_parity(self, e: Element) -> int:
        pars = {self.datum.word_parity(w) for w in e.terms}
        if len(pars) > 1:
            raise ValueError("element is not parity-homogeneous")
        return pars.pop() if pars else 0

    def poisson_bracket(self, a: Element, b: Element, phi: PhiMatrix | None = None) -> Element:
        """Semiclassical bracket: q-derivative at 1 of the supercommutator."""
        c = self.supercommutator(a, b)
        assign = {}
        if self.mode == "multi":
            src = phi if phi is not None else self.phi
            if src.symbolic:
                raise ValueError("the bracket needs a numeric multiparameter")
            assign = src.assignment()
        c = self.specialize(c, assign)
        out = Element()
        for w, coef in c.terms.items():
            if coef.at_q_one() != 0:
                raise ArithmeticError(f"supercommutator does not vanish at q=1 on {w}")
            der = coef.q_derivative_at_1()
            if der:
                out.terms[w] = Laurent.const(der)
        return out

    # -- convenience ------------------------------------------------------
    def x(self, i: int, j: int) -> Element:
        return Element.word((self.datum.fgen(i, j),))

    def word(self, *pairs) -> Element:
        return Element.word(tuple(self.datum.fgen(i, j) for i, j in pairs))

    def relation_generators(self) -> list:
        """Generators of the defining ideal of the free algebra, as
        ``(family, Element)`` pairs.  Each lies in the kernel of the
        normal-form map.
        """
        out = []
        d = self.datum
        for (B, A), rule in sorted(self.rules.items()):
            if B == A:
                out.append(("odd-square", Element.word((A, A))))
                continue
            i, j = d.fij(A)
            h, k = d.fij(B)
            fam = ("same-row" if i == h else "same-column" if j == k
                   else "anti-diagonal" if j > k else "diagonal")
            lead_coef, _ = rule[0]
            inv = lead_coef ** -1
            elt = Element.word((A, B)) - Element.word((B, A)).scale(inv)
            for coef, pair in rule[1:]:
                elt = elt + Element.word(pair).scale(coef * inv)
            out.append((fam, elt))
        return out
