"""Parity bookkeeping, the two generator alphabets, linear combinations of
words, and Koszul-signed tensor arithmetic.

Function-side generators ``x[i,j]`` are plain ints ``(i-1)*n + (j-1)`` so
that integer comparison is the row-major order.  Enveloping-side generators
are :class:`UGen` tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .coeffring import ExpForm, Laurent, ONE, ZERO

__all__ = [
    "ParityDatum",
    "PhiMatrix",
    "UGen",
    "E",
    "F",
    "G",
    "Toral",
    "Element",
    "TensorElement",
    "tensor_multiply",
    "parity_of",
    "clean_uword",
    "format_word",
    "format_element",
    "format_tensor",
    "element_to_json",
    "element_from_json",
    "parse_word",
    "parse_element",
    "ParseError",
]


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class ParityDatum:
    """Rank ``n`` and a parity ``p(1..n)`` in Z/2."""

    n: int
    p: tuple

    def __post_init__(self):
        p = tuple(int(b) % 2 for b in self.p)
        object.__setattr__(self, "p", p)
        if self.n < 2:
            raise ValueError("rank must be at least 2")
        if len(p) != self.n:
            raise ValueError(f"parity has length {len(p)}, expected {self.n}")
        fpar = tuple((p[g // self.n] + p[g % self.n]) % 2 for g in range(self.n * self.n))
        object.__setattr__(self, "_fpar", fpar)

    @classmethod
    def from_bits(cls, bits: str) -> "ParityDatum":
        if not bits or any(ch not in "01" for ch in bits):
            raise ValueError(f"parity must be a bitstring, got {bits!r}")
        return cls(len(bits), tuple(int(ch) for ch in bits))

    @property
    def bits(self) -> str:
        return "".join(map(str, self.p))

    def par(self, i: int) -> int:
        return self.p[i - 1]

    def pij(self, i: int, j: int) -> int:
        return (self.p[i - 1] + self.p[j - 1]) % 2

    def sgn(self, i: int) -> int:
        """``(-1)^{p(i)}``."""
        return -1 if self.p[i - 1] else 1

    def is_grey(self, i: int) -> bool:
        return self.pij(i, i + 1) == 1

    def check_index(self, i: int, hi: int | None = None):
        hi = self.n if hi is None else hi
        if not 1 <= i <= hi:
            raise IndexError(f"index {i} out of range 1..{hi}")

    # function side
    def fgen(self, i: int, j: int) -> int:
        self.check_index(i)
        self.check_index(j)
        return (i - 1) * self.n + (j - 1)

    def fij(self, g: int) -> tuple:
        return g // self.n + 1, g % self.n + 1

    def fpar(self, g: int) -> int:
        return self._fpar[g]

    @property
    def nfgens(self) -> int:
        return self.n * self.n

    # enveloping side
    def upar(self, g: "UGen") -> int:
        if g.kind in "EF":
            return self.pij(g.idx, g.idx + 1)
        return 0

    def H(self, i: int) -> tuple:
        """Coefficient vector of ``H_i = (-1)^{p(i)} e_i - (-1)^{p(i+1)} e_{i+1}``."""
        v = [ExpForm()] * self.n
        v[i - 1] = ExpForm(self.sgn(i))
        v[i] = ExpForm(-self.sgn(i + 1))
        return tuple(v)

    def unit_vec(self, k: int, r=1) -> tuple:
        v = [ExpForm()] * self.n
        v[k - 1] = ExpForm(r)
        return tuple(v)

    def word_parity(self, word) -> int:
        s = 0
        for g in word:
            s += self._fpar[g] if isinstance(g, int) else self.upar(g)
        return s % 2


def parity_of(word, datum: ParityDatum) -> int:
    for g in word:
        if isinstance(g, int):
            if not 0 <= g < datum.nfgens:
                raise IndexError(f"generator {g} out of range")
        else:
            hi = datum.n - 1 if g.kind in "EF" else datum.n
            if g.kind != "T":
                datum.check_index(g.idx, hi)
    return datum.word_parity(word)


class PhiMatrix:
    """Antisymmetric multiparameter matrix, either symbolic or rational.

    ``exp(t, l)`` gives the exponent form of ``q_{t,l} = q^{phi[t,l]}``.
    """

    def __init__(self, n: int, values=None):
        self.n = n
        self.values = None
        if values is not None:
            vals = {}
            if isinstance(values, dict):
                items = values.items()
            else:
                items = (((t + 1, l + 1), values[t][l]) for t in range(n) for l in range(n) if t < l)
            for (t, l), v in items:
                if t == l:
                    if Fraction(v):
                        raise ValueError("diagonal of phi must vanish")
                    continue
                v = Fraction(v)
                if t > l:
                    t, l, v = l, t, -v
                vals[(t, l)] = v
            self.values = vals

    @property
    def symbolic(self) -> bool:
        return self.values is None

    def exp(self, t: int, l: int, r=1) -> ExpForm:
        if t == l:
            return ExpForm()
        if self.values is None:
            return ExpForm(0, {(t, l): r})
        v = self.values.get((min(t, l), max(t, l)), Fraction(0))
        return ExpForm(v * r if t < l else -v * r)

    def assignment(self) -> dict:
        """Substitution map for :meth:`Laurent.specialize`."""
        if self.values is None:
            return {}
        return {(t, l): self.values.get((t, l), Fraction(0))
                for t in range(1, self.n + 1) for l in range(t + 1, self.n + 1)}

    def negated(self) -> "PhiMatrix":
        if self.values is None:
            raise ValueError("negate a symbolic matrix by substitution instead")
        return PhiMatrix(self.n, {k: -v for k, v in self.values.items()})

    @classmethod
    def zero(cls, n: int) -> "PhiMatrix":
        return cls(n, {})

    def __repr__(self):
        return "PhiMatrix(symbolic)" if self.symbolic else f"PhiMatrix({self.values})"


class UGen(NamedTuple):
    kind: str  # 'E', 'F', 'G' or 'T'
    idx: int
    vec: tuple = ()


def E(i: int) -> UGen:
    return UGen("E", i)


def F(i: int) -> UGen:
    return UGen("F", i)


def G(k: int) -> UGen:
    return UGen("G", k)


def Toral(vec) -> UGen:
    return UGen("T", 0, tuple(v if isinstance(v, ExpForm) else ExpForm(v) for v in vec))


def _vec_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def clean_uword(word) -> tuple:
    """Merge adjacent toral letters and drop trivial ones."""
    out = []
    for g in word:
        if g.kind == "T":
            if out and out[-1].kind == "T":
                g = UGen("T", 0, _vec_add(out.pop().vec, g.vec))
            if all(v.is_zero() for v in g.vec):
                continue
        out.append(g)
    return tuple(out)


def _add_into(acc: dict, key, c: Laurent):
    old = acc.get(key)
    if old is None:
        if c:
            acc[key] = c
    else:
        s = old + c
        if s:
            acc[key] = s
        else:
            del acc[key]


class Element:
    """Finite linear combination ``word -> Laurent`` (words are tuples)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                _add_into(self.terms, tuple(w), Laurent.coerce(c))

    @classmethod
    def word(cls, w, c=ONE) -> "Element":
        return cls({tuple(w): c})

    @classmethod
    def one(cls) -> "Element":
        return cls({(): ONE})

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "Element") -> "Element":
        out = Element()
        out.terms = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(out.terms, w, c)
        return out

    def __neg__(self):
        out = Element()
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Element":
        c = Laurent.coerce(c)
        out = Element()
        for w, d in self.terms.items():
            _add_into(out.terms, w, d * c)
        return out

    def concat(self, other: "Element") -> "Element":
        """Free product (word concatenation, no rewriting)."""
        out = Element()
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _add_into(out.terms, w1 + w2, c1 * c2)
        return out

    def map_coeffs(self, fn) -> "Element":
        out = Element()
        for w, c in self.terms.items():
            _add_into(out.terms, w, fn(c))
        return out

    def map_words(self, fn) -> "Element":
        """Apply ``fn(word) -> Element`` linearly."""
        out = Element()
        for w, c in self.terms.items():
            for w2, c2 in fn(w).terms.items():
                _add_into(out.terms, w2, c * c2)
        return out

    def coeff(self, w) -> Laurent:
        return self.terms.get(tuple(w), ZERO)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __repr__(self):
        return f"Element({len(self.terms)} terms)"


class TensorElement:
    """Finite linear combination of pairs of words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (a, b), c in (terms.items() if isinstance(terms, dict) else terms):
                _add_into(self.terms, (tuple(a), tuple(b)), Laurent.coerce(c))

    @classmethod
    def pure(cls, a, b, c=ONE) -> "TensorElement":
        return cls({(tuple(a), tuple(b)): c})

    @classmethod
    def from_elements(cls, x: Element, y: Element) -> "TensorElement":
        out = cls()
        for a, c1 in x.terms.items():
            for b, c2 in y.terms.items():
                _add_into(out.terms, (a, b), c1 * c2)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = TensorElement()
        out.terms = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out.terms, k, c)
        return out

    def __neg__(self):
        out = TensorElement()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = Laurent.coerce(c)
        out = TensorElement()
        for k, d in self.terms.items():
            _add_into(out.terms, k, d * c)
        return out

    def map_legs(self, left_fn=None, right_fn=None) -> "TensorElement":
        """Apply linear maps ``word -> Element`` to each leg."""
        out = TensorElement()
        for (a, b), c in self.terms.items():
            la = left_fn(a) if left_fn else Element.word(a)
            rb = right_fn(b) if right_fn else Element.word(b)
            for a2, c1 in la.terms.items():
                for b2, c2 in rb.terms.items():
                    _add_into(out.terms, (a2, b2), c * c1 * c2)
        return out

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0][0]) + len(t[0][1]), t[0]))

    def __repr__(self):
        return f"TensorElement({len(self.terms)} terms)"


def tensor_multiply(A: TensorElement, B: TensorElement, datum: ParityDatum) -> TensorElement:
    """``(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd`` with legs concatenated."""
    out = TensorElement()
    for (a, b), c1 in A.terms.items():
        pb = datum.word_parity(b)
        for (c, d), c2 in B.terms.items():
            _check_same_alphabet(a, c)
            _check_same_alphabet(b, d)
            coef = c1 * c2
            if pb and datum.word_parity(c):
                coef = -coef
            _add_into(out.terms, (a + c, b + d), coef)
    return out


def _check_same_alphabet(u, v):
    if u and v and isinstance(u[0], int) != isinstance(v[0], int):
        raise TypeError("cannot multiply words from different alphabets")


# ---------------------------------------------------------------------------
# text grammar

def _format_gen(g, datum: ParityDatum) -> str:
    if isinstance(g, int):
        i, j = datum.fij(g)
        return f"x[{i},{j}]"
    if g.kind == "T":
        return "T(" + ",".join(v.to_str().replace(" ", "") for v in g.vec) + ")"
    return f"{g.kind}[{g.idx}]"


def format_word(word, datum: ParityDatum) -> str:
    if not word:
        return "1"
    return " ".join(_format_gen(g, datum) for g in word)


def _format_coeff(c: Laurent) -> str:
    s = c.to_str()
    return f"({s})" if len(c.terms) > 1 else s


def format_element(e: Element, datum: ParityDatum) -> str:
    if e.is_zero():
        return "0"
    return _join_terms(f"{_format_coeff(c)} * {format_word(w, datum)}" for w, c in e.sorted_items())


def format_tensor(t: TensorElement, datum: ParityDatum) -> str:
    if t.is_zero():
        return "0"
    return _join_terms(
        f"{_format_coeff(c)} * ({format_word(a, datum)}) (x) ({format_word(b, datum)})"
        for (a, b), c in t.sorted_items()
    )


def _join_terms(parts) -> str:
    out = ""
    for s in parts:
        if not out:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


_GEN_RE = re.compile(r"x\[\s*(\d+)\s*,\s*(\d+)\s*\]|([EFG])\[\s*(\d+)\s*\]|T\(")


def _split_args(body: str) -> list:
    out, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append(body[start:i])
            start = i + 1
    out.append(body[start:])
    return out


def _match_paren(text: str, open_pos: int) -> int:
    depth = 0
    for i in range(open_pos, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise ParseError(f"unbalanced parentheses in {text!r}")


def parse_word(text: str, datum: ParityDatum) -> tuple:
    """Parse whitespace-separated generator tokens; ``1`` is the empty word."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    word = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _GEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected token at {text[pos:]!r}")
        if m.group(1):
            i, j = int(m.group(1)), int(m.group(2))
            try:
                word.append(datum.fgen(i, j))
            except IndexError as exc:
                raise ParseError(str(exc)) from exc
            pos = m.end()
        elif m.group(3):
            kind, idx = m.group(3), int(m.group(4))
            hi = datum.n - 1 if kind in "EF" else datum.n
            if not 1 <= idx <= hi:
                raise ParseError(f"index {idx} out of range for {kind}")
            word.append(UGen(kind, idx))
            pos = m.end()
        else:
            close = _match_paren(text, m.end() - 1)
            args = _split_args(text[m.end():close])
            if len(args) != datum.n:
                raise ParseError(f"toral vector needs {datum.n} entries")
            try:
                word.append(Toral(ExpForm.parse(a) for a in args))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc)) from exc
            pos = close + 1
    kinds = {isinstance(g, int) for g in word}
    if len(kinds) > 1:
        raise ParseError("word mixes the two alphabets")
    if word and not isinstance(word[0], int):
        return clean_uword(word)
    return tuple(word)


def _split_terms(text: str):
    """Split at top-level ``+``/``-`` (outside all brackets)."""
    out, depth, start, sign = [], 0, 0, 1
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch in "+-" and depth == 0:
            out.append((sign, text[start:i]))
            sign = 1 if ch == "+" else -1
            start = i + 1
    out.append((sign, text[start:]))
    merged = []
    pending = 1
    for s, body in out:
        if body.strip():
            merged.append((s * pending, body.strip()))
            pending = 1
        else:
            pending *= s
    return merged


def _first_top_level_gen(text: str) -> int:
    depth = 0
    for i, ch in enumerate(text):
        if depth == 0 and _GEN_RE.match(text, i):
            return i
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
    return -1


def parse_element(text: str, datum: ParityDatum) -> Element:
    """Parse ``coef * word + coef * word ...``; bare words have coefficient 1."""
    text = text.strip()
    if text == "0":
        return Element()
    if depth_error := _unbalanced(text):
        raise ParseError(depth_error)
    out = Element()
    for sign, body in _split_terms(text):
        pos = _first_top_level_gen(body)
        if pos < 0:
            parts = body.rsplit("*", 1)
            if len(parts) == 2 and parts[1].strip() == "1":
                coef_txt, word_txt = parts[0], ""
            else:
                coef_txt, word_txt = body, ""
        else:
            coef_txt, word_txt = body[:pos], body[pos:]
        coef_txt = coef_txt.strip().rstrip("*").strip()
        try:
            coef = Laurent.parse(coef_txt) if coef_txt else ONE
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {coef_txt!r}") from exc
        word = parse_word(word_txt, datum)
        if sign < 0:
            coef = -coef
        _add_into(out.terms, word, coef)
    return out


def _unbalanced(text: str):
    depth = 0
    for ch in text:
        depth += ch in "(["
        depth -= ch in ")]"
        if depth < 0:
            return f"unbalanced brackets in {text!r}"
    return None if depth == 0 else f"unbalanced brackets in {text!r}"


def element_to_json(e: Element, datum: ParityDatum):
    return [{"word": format_word(w, datum), "coeff": c.to_json()} for w, c in e.sorted_items()]


def element_from_json(data, datum: ParityDatum) -> Element:
    return Element({parse_word(t["word"], datum): Laurent.from_json(t["coeff"]) for t in data})
