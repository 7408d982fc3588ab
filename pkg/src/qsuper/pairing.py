"""Recursive Hopf pairing between words in ``x[i,j]`` and enveloping words,
and the verification suites built on it.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .coeffring import ExpForm, Laurent, ONE, ZERO
from .falg import FAlgebra
from .supercore import (
    Element,
    ParityDatum,
    PhiMatrix,
    TensorElement,
    Toral,
    clean_uword,
    format_element,
    format_tensor,
    format_word,
)
from .ualg import UAlgebra

__all__ = [
    "Report",
    "PairingEngine",
    "verify_R_orthogonal",
    "verify_J_orthogonal",
    "verify_J_coideal",
    "skew_primitivity_check",
    "verify_skew_primitivity",
    "pairing_matrix",
    "pairing_matrix_rank",
]


@dataclass
class Report:
    suite: str
    datum: str
    mode: str
    cases_total: int = 0
    cases_failed: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases_failed == 0

    def record(self, ok: bool, lhs: str = "", rhs: str = "", value: str = ""):
        self.cases_total += 1
        if not ok:
            self.cases_failed += 1
            self.failures.append({"lhs": lhs, "rhs": rhs, "value": value})

    def to_dict(self) -> dict:
        d = asdict(self)
        d["failures"] = sorted(d["failures"], key=lambda f: (f["lhs"], f["rhs"]))
        if not d["notes"]:
            del d["notes"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite} n={len(self.datum)} p={self.datum} mode={self.mode}: " \
               f"{self.cases_total - self.cases_failed}/{self.cases_total} cases"


class PairingEngine:
    """Pairing ``<f, u>`` of function-side words with enveloping words.

    ``mode`` selects the enveloping coproduct used when a product of several
    ``x[i,j]`` is paired (``"standard"`` or ``"twisted"``).  With
    ``prune=True`` pairs whose weights differ are returned as zero without
    recursion (both sides are graded by the weight lattice).
    """

    def __init__(self, datum: ParityDatum, mode: str = "standard", phi: PhiMatrix | None = None,
                 prune: bool = True):
        if mode not in ("standard", "twisted"):
            raise ValueError(f"pairing mode must be 'standard' or 'twisted', got {mode!r}")
        self.datum = datum
        self.mode = mode
        self.phi = phi if phi is not None else PhiMatrix(datum.n)
        self.U = UAlgebra(datum, self.phi)
        self.prune = prune
        self._gen_memo = {}
        self._word_memo = {}

    # -- weights ----------------------------------------------------------
    def fweight(self, fword) -> tuple:
        n = self.datum.n
        wt = [0] * n
        for g in fword:
            i, j = g // n, g % n
            wt[i] += 1
            wt[j] -= 1
        return tuple(wt)

    def uweight(self, uword) -> tuple:
        return UAlgebra.word_weight(uword, self.datum.n)

    # -- single generator -------------------------------------------------
    def _base(self, g: int, u) -> Laurent:
        i, j = self.datum.fij(g)
        if u.kind == "E":
            return ONE if (i == u.idx and j == u.idx + 1) else ZERO
        if u.kind == "F":
            return ONE if (i == u.idx + 1 and j == u.idx) else ZERO
        if u.kind == "G":
            return ONE if (i == j == u.idx) else ZERO
        return Laurent.mono(u.vec[i - 1]) if i == j else ZERO

    def pair_gen(self, g: int, uword: tuple) -> Laurent:
        """``<x_ij, Y Z>`` through the coproduct of ``x_ij``."""
        key = (g, uword)
        hit = self._gen_memo.get(key)
        if hit is not None:
            return hit
        d = self.datum
        i, j = d.fij(g)
        if not uword:
            res = ONE if i == j else ZERO
        elif len(uword) == 1:
            res = self._base(g, uword[0])
        elif self.prune and self.fweight((g,)) != self.uweight(uword):
            res = ZERO
        else:
            head, last = uword[:-1], uword[-1:]
            phead = d.word_parity(head)
            res = ZERO
            for a in range(1, d.n + 1):
                right = self.pair_gen(d.fgen(a, j), last)
                if not right:
                    continue
                left = self.pair_gen(d.fgen(i, a), head)
                if not left:
                    continue
                s = (d.pij(i, a) * d.pij(a, j) + d.pij(a, j) * phead) % 2
                term = left * right
                res = res - term if s else res + term
        self._gen_memo[key] = res
        return res

    # -- words ------------------------------------------------------------
    def pair_word(self, fword: tuple, uword: tuple) -> Laurent:
        uword = clean_uword(uword)
        if len(fword) == 1:
            return self.pair_gen(fword[0], uword)
        key = (fword, uword)
        hit = self._word_memo.get(key)
        if hit is not None:
            return hit
        if not fword:
            res = self.U.counit_word(uword)
        elif self.prune and self.fweight(fword) != self.uweight(uword):
            res = ZERO
        else:
            head, rest = fword[0], fword[1:]
            prest = self.datum.word_parity(rest)
            res = ZERO
            for (w1, w2), c in self.U.word_coproduct(uword, self.mode).terms.items():
                left = self.pair_gen(head, w1)
                if not left:
                    continue
                right = self.pair_word(rest, w2)
                if not right:
                    continue
                term = c * left * right
                if prest and self.datum.word_parity(w1):
                    term = -term
                res = res + term
        self._word_memo[key] = res
        return res

    def pair(self, f: Element, u: Element) -> Laurent:
        res = ZERO
        for fw, fc in f.terms.items():
            for uw, uc in u.terms.items():
                v = self.pair_word(fw, uw)
                if v:
                    res = res + fc * uc * v
        return res

    def pair_tensor(self, Ft: TensorElement, Ut: TensorElement) -> Laurent:
        """``<f' (x) f'', u' (x) u''> = (-1)^{|f''||u'|} <f',u'> <f'',u''>``."""
        d = self.datum
        res = ZERO
        for (f1, f2), c1 in Ft.terms.items():
            pf2 = d.word_parity(f2)
            for (u1, u2), c2 in Ut.terms.items():
                a = self.pair_word(f1, u1)
                if not a:
                    continue
                b = self.pair_word(f2, u2)
                if not b:
                    continue
                term = c1 * c2 * a * b
                if pf2 and d.word_parity(u1):
                    term = -term
                res = res + term
        return res


# ---------------------------------------------------------------------------
# suites

def _fmt_u(word, d):
    return format_word(word, d)


def _bucket_by_weight(engine: PairingEngine, words) -> dict:
    out = {}
    for w in words:
        out.setdefault(engine.fweight(w), []).append(w)
    return out


def verify_R_orthogonal(datum: ParityDatum, form: str = "formal", depth: int = 4,
                        mode: str = "standard", phi: PhiMatrix | None = None) -> Report:
    """Every ideal generator of the enveloping side pairs to zero with every
    ordered monomial of degree ``<= depth``.

    Monomials whose weight differs from the generator's weight pair to zero
    by grading and are counted without being evaluated.
    """
    engine = PairingEngine(datum, mode, phi)
    U = engine.U
    A = FAlgebra(datum)
    rep = Report("r-orth", datum.bits, f"{mode}/{form}")
    monos = A.pbw_words_upto(depth)
    buckets = _bucket_by_weight(engine, monos)
    for gen in U.ideal_generators(form):
        rho = gen.element
        weights = {engine.uweight(w) for w in rho.terms}
        assert len(weights) <= 1, gen.label
        wt = weights.pop() if weights else None
        matched = buckets.get(wt, [])
        rep.cases_total += len(monos) - len(matched)
        for b in matched:
            v = engine.pair(Element.word(b), rho)
            rep.record(not v, format_word(b, datum), gen.label, str(v))
    return rep


def verify_J_orthogonal(datum: ParityDatum, mode: str = "standard", depth: int = 3,
                        phi: PhiMatrix | None = None, with_toral: bool = True) -> Report:
    """Every relation of the function side pairs to zero with every
    enveloping word of length ``<= depth``.

    In twisted mode the relations are the multiparameter ones and the
    enveloping coproduct is the twisted one.
    """
    fmode = "uni" if mode == "standard" else "multi"
    phi = phi if phi is not None else PhiMatrix(datum.n)
    engine = PairingEngine(datum, mode, phi)
    A = FAlgebra(datum, fmode, phi)
    rep = Report("j-orth", datum.bits, mode)
    words = engine.U.words_upto(depth, with_toral)
    by_wt = {}
    for w in words:
        by_wt.setdefault(engine.uweight(w), []).append(w)
    for fam, eta in A.relation_generators():
        weights = {engine.fweight(w) for w in eta.terms}
        assert len(weights) == 1
        wt = weights.pop()
        matched = by_wt.get(wt, [])
        rep.cases_total += len(words) - len(matched)
        lhs = format_element(eta, datum)
        for w in matched:
            v = engine.pair(eta, Element.word(w))
            rep.record(not v, lhs, format_word(w, datum), str(v))
    return rep


def verify_J_coideal(datum: ParityDatum, mode: str = "uni", phi: PhiMatrix | None = None) -> Report:
    """The coproduct of each function-side relation, with both legs reduced
    to normal form, vanishes."""
    A = FAlgebra(datum, mode, phi)
    rep = Report("j-coideal", datum.bits, mode)
    for fam, eta in A.relation_generators():
        res = A.coproduct(eta)
        rep.record(res.is_zero(), format_element(eta, datum), fam, format_tensor(res, datum))
    return rep


def skew_primitivity_check(U: UAlgebra, rho: Element, g: tuple, side: str = "left") -> TensorElement:
    """Residue of ``Delta(rho) - rho (x) 1 - T(g) (x) rho`` (``side="left"``) or
    ``Delta(rho) - rho (x) T(g) - 1 (x) rho`` (``side="right"``), with both
    legs straightened."""
    one = Element.one()
    tg = Element.word(clean_uword((Toral(g),)))
    if side == "left":
        expected = TensorElement.from_elements(rho, one) + TensorElement.from_elements(tg, rho)
    elif side == "right":
        expected = TensorElement.from_elements(rho, tg) + TensorElement.from_elements(one, rho)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return U.straighten_tensor(U.coproduct(rho) - expected)


def verify_skew_primitivity(datum: ParityDatum, fallback_depth: int = 4) -> Report:
    """Skew-primitivity of every ideal generator that carries a group-like.

    A nonzero residue on a Serre generator is recorded in the notes and the
    generator is then certified by orthogonality to ordered monomials of
    degree ``<= fallback_depth`` instead.
    """
    U = UAlgebra(datum)
    rep = Report("skew", datum.bits, "standard")
    fallback = []
    for gen in U.ideal_generators("formal"):
        if gen.group_like is None:
            continue
        res = skew_primitivity_check(U, gen.element, gen.group_like, gen.side)
        if res.is_zero():
            rep.record(True)
        elif gen.family == "serre":
            fallback.append(gen)
            rep.notes.append(f"{gen.label}: residue {format_tensor(res, datum)}")
        else:
            rep.record(False, gen.label, "skew-primitive", format_tensor(res, datum))
    if fallback:
        engine = PairingEngine(datum)
        monos = FAlgebra(datum).pbw_words_upto(fallback_depth)
        for gen in fallback:
            ok = all(not engine.pair(Element.word(b), gen.element) for b in monos)
            rep.record(ok, gen.label, "orthogonality fallback", "" if ok else "nonzero pairing")
    return rep


def pairing_matrix(datum: ParityDatum, degree: int, length: int, mode: str = "standard",
                   phi: PhiMatrix | None = None, with_toral: bool = False):
    """Rows: ordered monomials of degree ``<= degree``; columns: enveloping
    words of length ``<= length``."""
    engine = PairingEngine(datum, mode, phi)
    rows = FAlgebra(datum).pbw_words_upto(degree)
    cols = engine.U.words_upto(length, with_toral)
    return rows, cols, [[engine.pair_word(r, c) for c in cols] for r in rows]


def pairing_matrix_rank(datum: ParityDatum, degree: int, length: int, mode: str = "standard",
                        phi: PhiMatrix | None = None, with_toral: bool = False) -> int:
    """Rank over the rational function field in ``q``.

    A symbolic multiparameter is first specialised to distinct integers.
    Entries are then polynomials in ``t = q^(1/den)`` after a common shift.
    """
    import sympy
    from sympy.polys.matrices import DomainMatrix

    if phi is None or phi.symbolic:
        phi = PhiMatrix(datum.n, {(t, l): t + 2 * l for t in range(1, datum.n + 1)
                                  for l in range(t + 1, datum.n + 1)})
    _, _, mat = pairing_matrix(datum, degree, length, mode, phi, with_toral)
    assign = phi.assignment()
    mat = [[c.specialize(assign) for c in row] for row in mat]
    exps = [e.const for row in mat for c in row for e in c.terms]
    if not exps:
        return 0
    den = 1
    for e in exps:
        den = den * e.denominator // _gcd(den, e.denominator)
    low = min(exps)
    t = sympy.Symbol("t")
    K = sympy.QQ.frac_field(t)
    rows = []
    for row in mat:
        out_row = []
        for c in row:
            poly = sum((sympy.Rational(r.numerator, r.denominator) * t ** int((e.const - low) * den)
                        for e, r in c.terms.items()), sympy.Integer(0))
            out_row.append(K.from_sympy(poly))
        rows.append(out_row)
    dm = DomainMatrix(rows, (len(rows), len(rows[0])), K)
    return dm.rank()


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
