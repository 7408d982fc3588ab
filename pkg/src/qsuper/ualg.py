"""Enveloping side: words in ``E_i, F_i, G_k`` and toral exponentials.

A toral letter ``T(c)`` stands for ``exp(hbar * sum_k c_k G_k)``; it is
group-like and acts on ``E_j`` by ``q^{c_j - c_{j+1}}``.  The module gives the
ideal generators (formal and polynomial forms), the standard and twisted
coproducts, counit, antipode, toral straightening and the defining matrix
representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coeffring import ExpForm, Laurent, ONE, ZERO, q
from .supercore import (
    E,
    Element,
    F,
    G,
    ParityDatum,
    PhiMatrix,
    TensorElement,
    Toral,
    UGen,
    _add_into,
    clean_uword,
    tensor_multiply,
)

__all__ = ["IdealGenerator", "UAlgebra", "super_bracket", "identity", "mat_mul", "mat_add", "mat_scale", "mat_is_zero"]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class IdealGenerator:
    family: str
    label: str
    element: Element
    group_like: tuple | None = None  # toral vector g for skew-primitivity
    side: str = "left"  # left: rho(x)1 + T(g)(x)rho ; right: rho(x)T(g) + 1(x)rho


def super_bracket(a: Element, b: Element, datum: ParityDatum, c=ONE) -> Element:
    """``[a, b]_c = ab - c (-1)^{|a||b|} ba`` for homogeneous ``a, b``."""
    pa = _parity(a, datum)
    pb = _parity(b, datum)
    s = -1 if pa and pb else 1
    return a.concat(b) - b.concat(a).scale(Laurent.coerce(c) * s)


def _parity(e: Element, datum: ParityDatum) -> int:
    pars = {datum.word_parity(w) for w in e.terms}
    if len(pars) > 1:
        raise ValueError("element is not parity-homogeneous")
    return pars.pop() if pars else 0


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


def _vscale(a, r):
    return tuple(x.scale(r) for x in a)


class UAlgebra:
    """Enveloping superalgebra for a parity datum.

    ``phi`` (a :class:`PhiMatrix`) is only used by the twisted coproduct.
    """

    def __init__(self, datum: ParityDatum, phi: PhiMatrix | None = None):
        self.datum = datum
        self.n = datum.n
        self.phi = phi if phi is not None else PhiMatrix(datum.n)
        self._cop = {}
        self._zero_vec = tuple(ExpForm() for _ in range(self.n))

    # -- letters ----------------------------------------------------------
    def H(self, i: int) -> tuple:
        return self.datum.H(i)

    def K(self, i: int, sign: int = 1) -> UGen:
        return Toral(_vscale(self.H(i), sign))

    def L(self, k: int, sign: int = 1) -> UGen:
        return Toral(self.datum.unit_vec(k, sign))

    def T_plus(self, i: int) -> tuple:
        """``1/2 sum_l (phi[i,l] - phi[i+1,l]) e_l``."""
        return tuple(self.phi.exp(i, l, HALF) - self.phi.exp(i + 1, l, HALF) for l in range(1, self.n + 1))

    def T_minus(self, i: int) -> tuple:
        """``1/2 sum_l (phi[l,i] - phi[l,i+1]) e_l``."""
        return tuple(self.phi.exp(l, i, HALF) - self.phi.exp(l, i + 1, HALF) for l in range(1, self.n + 1))

    def gen_element(self, g: UGen) -> Element:
        return Element.word((g,))

    def qi(self, i: int, r: int = 1) -> Laurent:
        """``q_i^r = q^{r (-1)^{p(i)}}``."""
        return q(r * self.datum.sgn(i))

    # -- ideal generators -------------------------------------------------
    def ideal_generators(self, form: str = "formal") -> list:
        if form not in ("formal", "polynomial"):
            raise ValueError(f"form must be 'formal' or 'polynomial', got {form!r}")
        d = self.datum
        n = self.n
        w = Element.word
        out = []
        if form == "formal":
            for k in range(1, n + 1):
                for l in range(k + 1, n + 1):
                    out.append(IdealGenerator("cartan", f"[G{k},G{l}]",
                                              w((G(k), G(l))) - w((G(l), G(k))), self._zero_vec))
            for k in range(1, n + 1):
                for j in range(1, n):
                    cf = int(k == j + 1) - int(k == j)
                    rho = w((G(k), F(j))) - w((F(j), G(k))) - w((F(j),)).scale(cf)
                    out.append(IdealGenerator("weight", f"[G{k},F{j}]", rho, _vneg(self.H(j)), "right"))
                    ce = int(k == j) - int(k == j + 1)
                    rho = w((G(k), E(j))) - w((E(j), G(k))) - w((E(j),)).scale(ce)
                    out.append(IdealGenerator("weight", f"[G{k},E{j}]", rho, self.H(j), "left"))
        else:
            for k in range(1, n + 1):
                Lp, Lm = self.L(k, 1), self.L(k, -1)
                out.append(IdealGenerator("cartan", f"L{k}L{k}^-1", w((Lp, Lm)) - Element.one()))
                out.append(IdealGenerator("cartan", f"L{k}^-1L{k}", w((Lm, Lp)) - Element.one()))
                for l in range(k + 1, n + 1):
                    for s1 in (1, -1):
                        for s2 in (1, -1):
                            a, b = self.L(k, s1), self.L(l, s2)
                            out.append(IdealGenerator("cartan", f"[L{k}^{s1},L{l}^{s2}]",
                                                      w((a, b)) - w((b, a))))
            for k in range(1, n + 1):
                for j in range(1, n):
                    for s in (1, -1):
                        a, b = self.L(k, s), self.L(k, -s)
                        cf = s * (int(k == j + 1) - int(k == j))
                        out.append(IdealGenerator("weight", f"L{k}^{s}F{j}L{k}^{-s}",
                                                  w((a, F(j), b)) - w((F(j),)).scale(q(cf))))
                        ce = s * (int(k == j) - int(k == j + 1))
                        out.append(IdealGenerator("weight", f"L{k}^{s}E{j}L{k}^{-s}",
                                                  w((a, E(j), b)) - w((E(j),)).scale(q(ce))))
        # relations common to both forms
        for i in range(1, n):
            for j in range(1, n):
                br = super_bracket(w((E(i),)), w((F(j),)), d)
                rho = br.scale(self.qi(i) - self.qi(i, -1))
                if i == j:
                    rho = rho - w((self.K(i, 1),)) + w((self.K(i, -1),))
                out.append(IdealGenerator("EF", f"[E{i},F{j}]", rho))
        for i in range(1, n):
            if d.is_grey(i):
                out.append(IdealGenerator("nilpotent", f"E{i}^2", w((E(i), E(i))),
                                          _vscale(self.H(i), 2), "left"))
                out.append(IdealGenerator("nilpotent", f"F{i}^2", w((F(i), F(i))),
                                          _vscale(self.H(i), -2), "right"))
        for i in range(1, n):
            for j in range(i + 2, n):
                out.append(IdealGenerator("distant", f"[E{i},E{j}]", super_bracket(w((E(i),)), w((E(j),)), d)))
                out.append(IdealGenerator("distant", f"[F{i},F{j}]", super_bracket(w((F(i),)), w((F(j),)), d)))
        qq = q(1) + q(-1)
        for i in range(1, n):
            if d.is_grey(i):
                continue
            for j in (i - 1, i + 1):
                if not 1 <= j <= n - 1:
                    continue
                for X, sg, side in ((E, 1, "left"), (F, -1, "right")):
                    a, b = X(i), X(j)
                    rho = w((a, a, b)) - w((a, b, a)).scale(qq) + w((b, a, a))
                    g = _vscale(_vadd(_vscale(self.H(i), 2), self.H(j)), sg)
                    out.append(IdealGenerator("serre", f"{a.kind}{i}{i}{j}", rho, g, side))
        for j in range(2, n - 1):
            if not d.is_grey(j):
                continue
            i, k = j - 1, j + 1
            for X in (E, F):
                a, b, c = (w((X(t),)) for t in (i, j, k))
                inner = super_bracket(a, b, d, self.qi(j))
                mid = super_bracket(inner, c, d, self.qi(j + 1))
                rho = super_bracket(mid, b, d)
                out.append(IdealGenerator("quartic-serre", f"{X(j).kind}{i}{j}{k}{j}", rho))
        return out

    # -- coalgebra --------------------------------------------------------
    def gen_coproduct(self, g: UGen, mode: str = "standard") -> TensorElement:
        if mode == "polynomial":
            mode = "standard"
        if mode not in ("standard", "twisted"):
            raise ValueError(f"unknown coproduct mode {mode!r}")
        if g.kind == "T":
            return TensorElement.pure((g,), (g,))
        if g.kind == "G":
            return TensorElement({(((g,), ())): ONE, (((), (g,))): ONE})
        i = g.idx
        H = self.H(i)
        if mode == "standard":
            if g.kind == "E":
                return TensorElement({((g,), ()): ONE, ((Toral(H),), (g,)): ONE})
            return TensorElement({((g,), (Toral(_vneg(H)),)): ONE, ((), (g,)): ONE})
        tp, tm = self.T_plus(i), self.T_minus(i)
        if g.kind == "E":
            return TensorElement({
                (clean_uword((g,)), clean_uword((Toral(tp),))): ONE,
                (clean_uword((Toral(_vadd(H, tm)),)), (g,)): ONE,
            })
        return TensorElement({
            ((g,), clean_uword((Toral(_vneg(_vadd(H, tp))),))): ONE,
            (clean_uword((Toral(_vneg(tm)),)), (g,)): ONE,
        })

    def word_coproduct(self, word, mode: str = "standard") -> TensorElement:
        word = clean_uword(word)
        key = (word, mode)
        hit = self._cop.get(key)
        if hit is not None:
            return hit
        if not word:
            res = TensorElement.pure((), ())
        else:
            prev = self.word_coproduct(word[:-1], mode)
            last = self.gen_coproduct(word[-1], mode)
            prod = tensor_multiply(prev, last, self.datum)
            res = TensorElement()
            for (a, b), c in prod.terms.items():
                _add_into(res.terms, (clean_uword(a), clean_uword(b)), c)
        self._cop[key] = res
        return res

    def coproduct(self, e: Element, mode: str = "standard") -> TensorElement:
        out = TensorElement()
        for w, c in e.terms.items():
            for k, c2 in self.word_coproduct(w, mode).terms.items():
                _add_into(out.terms, k, c * c2)
        return out

    u_coproduct = coproduct

    def counit_word(self, word) -> Laurent:
        return ZERO if any(g.kind != "T" for g in word) else ONE

    def counit(self, e: Element) -> Laurent:
        return sum((c * self.counit_word(w) for w, c in e.terms.items()), ZERO)

    u_counit = counit

    def gen_antipode(self, g: UGen) -> Element:
        if g.kind == "T":
            return Element.word((Toral(_vneg(g.vec)),))
        if g.kind == "G":
            return Element.word((g,)).scale(-1)
        H = self.H(g.idx)
        if g.kind == "E":
            return Element.word((Toral(_vneg(H)), g)).scale(-1)
        return Element.word((g, Toral(H))).scale(-1)

    def word_antipode(self, word) -> Element:
        d = self.datum
        out = Element.one()
        sign = 1
        par = 0
        for g in word:
            pg = d.upar(g)
            if pg and par:
                sign = -sign
            par ^= pg
            out = self.gen_antipode(g).concat(out)
        return out.scale(sign).map_words(lambda w: Element.word(clean_uword(w)))

    def antipode(self, e: Element) -> Element:
        return e.map_words(self.word_antipode)

    u_antipode = antipode

    # -- straightening ----------------------------------------------------
    def straighten_word(self, word) -> Element:
        """Move every toral letter to the right end, merging them."""
        letters = []
        vec = self._zero_vec
        shift = ExpForm()
        for g in word:
            if g.kind == "T":
                vec = _vadd(vec, g.vec)
                continue
            if g.kind in "EF":
                j = g.idx
                delta = vec[j - 1] - vec[j]
                shift = shift + (delta if g.kind == "E" else -delta)
            letters.append(g)
        return Element.word(clean_uword(tuple(letters) + (Toral(vec),)), Laurent.mono(shift))

    def straighten(self, e: Element) -> Element:
        return e.map_words(self.straighten_word)

    u_straighten = straighten

    def straighten_tensor(self, t: TensorElement) -> TensorElement:
        return t.map_legs(self.straighten_word, self.straighten_word)

    # -- representation ---------------------------------------------------
    def gen_matrix(self, g: UGen) -> list:
        n = self.n
        m = [[ZERO] * n for _ in range(n)]
        if g.kind == "E":
            self.datum.check_index(g.idx, n - 1)
            m[g.idx - 1][g.idx] = ONE
        elif g.kind == "F":
            self.datum.check_index(g.idx, n - 1)
            m[g.idx][g.idx - 1] = ONE
        elif g.kind == "G":
            self.datum.check_index(g.idx)
            m[g.idx - 1][g.idx - 1] = ONE
        else:
            if len(g.vec) != n:
                raise IndexError("toral vector has the wrong length")
            for k in range(n):
                m[k][k] = Laurent.mono(g.vec[k])
        return m

    def word_matrix(self, word) -> list:
        m = identity(self.n)
        for g in word:
            m = mat_mul(m, self.gen_matrix(g))
        return m

    def matrix_rep(self, e) -> list:
        if isinstance(e, tuple):
            return self.word_matrix(e)
        out = [[ZERO] * self.n for _ in range(self.n)]
        for w, c in e.terms.items():
            out = mat_add(out, mat_scale(self.word_matrix(w), c))
        return out

    # -- enumeration ------------------------------------------------------
    def letters(self, with_toral: bool = True) -> list:
        """Single-letter alphabet used by the verification suites."""
        n = self.n
        out = [E(i) for i in range(1, n)] + [F(i) for i in range(1, n)] + [G(k) for k in range(1, n + 1)]
        if with_toral:
            out += [self.L(k, s) for k in range(1, n + 1) for s in (1, -1)]
        return out

    def words_upto(self, length: int, with_toral: bool = True) -> list:
        alpha = self.letters(with_toral)
        out = [()]
        layer = [()]
        for _ in range(length):
            layer = [w + (g,) for w in layer for g in alpha]
            out.extend(layer)
        return out

    @staticmethod
    def word_weight(word, n: int) -> tuple:
        """Root-lattice weight: ``E_i`` adds ``e_i - e_{i+1}``, ``F_i`` subtracts it."""
        wt = [0] * n
        for g in word:
            if g.kind == "E":
                wt[g.idx - 1] += 1
                wt[g.idx] -= 1
            elif g.kind == "F":
                wt[g.idx - 1] -= 1
                wt[g.idx] += 1
        return tuple(wt)


def identity(n: int) -> list:
    return [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]


def mat_mul(a: list, b: list) -> list:
    n = len(a)
    out = [[ZERO] * n for _ in range(n)]
    for r in range(n):
        for k in range(n):
            ark = a[r][k]
            if not ark:
                continue
            row = b[k]
            for c in range(n):
                if row[c]:
                    out[r][c] = out[r][c] + ark * row[c]
    return out


def mat_add(a: list, b: list) -> list:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: list, c: Laurent) -> list:
    return [[x * c for x in row] for row in a]


def mat_is_zero(a: list) -> bool:
    return all(not x for row in a for x in row)
