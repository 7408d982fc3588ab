"""Exact coefficient ring: rational combinations of monomials ``q^lambda``.

The exponent ``lambda`` is a rational linear form in the symbol 1 and the
multiparameters ``phi[t,l]`` (t < l).  ``phi[l,t]`` is stored as
``-phi[t,l]``; diagonal entries vanish.  Everything is exact (``Fraction``).

Values are immutable; all operations are pure.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "ExpForm",
    "Laurent",
    "ZERO",
    "ONE",
    "q",
    "qphi",
    "cf_mul",
    "cf_specialize",
    "cf_q_derivative_at_1",
]


def _frac(x):
    """Exact rational; integral values are kept as ``int`` (cheaper to hash
    and multiply, and equal to the matching ``Fraction``)."""
    if type(x) is int:
        return x
    if isinstance(x, str):
        x = Fraction(x.strip())
    elif not isinstance(x, Fraction):
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class ExpForm(tuple):
    """Rational linear form ``c + sum r_tl * phi[t,l]``.

    Stored as the tuple ``(c, ((t, l), r), ...)`` with the phi part sorted,
    ``t < l`` and no zero ``r``.  Being a tuple it hashes and compares fast.
    """

    __slots__ = ()

    def __new__(cls, const=0, phi: Mapping | Iterable = ()):
        acc: dict = {}
        items = phi.items() if isinstance(phi, Mapping) else phi
        for (t, l), r in items:
            t, l = int(t), int(l)
            r = _frac(r)
            if t == l or not r:
                continue
            if t > l:
                t, l, r = l, t, -r
            acc[(t, l)] = acc.get((t, l), 0) + r
        part = tuple(sorted((k, v) for k, v in acc.items() if v))
        return tuple.__new__(cls, (_frac(const),) + part)

    @classmethod
    def _raw(cls, const, part):
        return tuple.__new__(cls, (const,) + part)

    @property
    def const(self) -> Fraction:
        return self[0]

    @property
    def phi(self) -> dict:
        return dict(self[1:])

    def is_zero(self) -> bool:
        return len(self) == 1 and not self[0]

    def has_phi(self) -> bool:
        return len(self) > 1

    def __add__(self, other):
        if not isinstance(other, ExpForm):
            other = ExpForm(other)
        if len(self) == 1 and len(other) == 1:
            return ExpForm._raw(self[0] + other[0], ())
        acc = dict(self[1:])
        for k, v in other[1:]:
            s = acc.get(k, 0) + v
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return ExpForm._raw(self[0] + other[0], tuple(sorted(acc.items())))

    __radd__ = __add__

    def __neg__(self):
        return ExpForm._raw(-self[0], tuple((k, -v) for k, v in self[1:]))

    def __sub__(self, other):
        if not isinstance(other, ExpForm):
            other = ExpForm(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, r) -> "ExpForm":
        r = _frac(r)
        if not r:
            return ExpForm()
        return ExpForm._raw(self[0] * r, tuple((k, v * r) for k, v in self[1:]))

    # rational scaling; without this, tuple repetition would kick in
    def __mul__(self, r):
        if isinstance(r, (int, Fraction)):
            return self.scale(r)
        return NotImplemented

    __rmul__ = __mul__

    def substitute(self, assign: Mapping) -> "ExpForm":
        """Replace ``phi[t,l]`` by ``assign[(t,l)]`` where given (t < l keys)."""
        c = self[0]
        rest = []
        for k, v in self[1:]:
            if k in assign:
                val = assign[k]
                if isinstance(val, ExpForm):
                    c += val[0] * v
                    rest.extend((kk, vv * v) for kk, vv in val[1:])
                else:
                    c += _frac(val) * v
            else:
                rest.append((k, v))
        return ExpForm(c, rest)

    def to_str(self) -> str:
        parts = []
        if self[0] or len(self) == 1:
            parts.append(str(self[0]))
        for (t, l), r in self[1:]:
            coef = "" if r == 1 else ("-" if r == -1 else f"{r}*")
            parts.append(f"{coef}phi[{t},{l}]")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"ExpForm({self.to_str()})"

    @classmethod
    def parse(cls, text: str) -> "ExpForm":
        text = text.replace(" ", "")
        if not text:
            return ExpForm()
        const = Fraction(0)
        phi: dict = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
            s = -1 if sign == "-" else 1
            m = re.fullmatch(r"(?:([0-9/]+)\*)?phi\[(\d+),(\d+)\]", body)
            if m:
                r = Fraction(m.group(1)) if m.group(1) else Fraction(1)
                key = (int(m.group(2)), int(m.group(3)))
                phi[key] = phi.get(key, 0) + s * r
            else:
                const += s * Fraction(body)
        return ExpForm(const, phi)


_E0 = ExpForm()


class Laurent:
    """Finite sum ``sum_k r_k q^{lambda_k}`` with exact rational ``r_k``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for e, r in terms.items():
                if not isinstance(e, ExpForm):
                    e = ExpForm(e)
                r = _frac(r)
                if r:
                    clean[e] = clean.get(e, 0) + r
            clean = {e: r for e, r in clean.items() if r}
        self.terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "Laurent":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, r) -> "Laurent":
        r = _frac(r)
        return cls._wrap({_E0: r} if r else {})

    @classmethod
    def mono(cls, exp, r=1) -> "Laurent":
        if not isinstance(exp, ExpForm):
            exp = ExpForm(exp)
        r = _frac(r)
        return cls._wrap({exp: r} if r else {})

    @staticmethod
    def coerce(x) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        return Laurent.const(x)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(_E0) == 1

    def has_phi(self) -> bool:
        return any(e.has_phi() for e in self.terms)

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            try:
                other = Laurent.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = Laurent.coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for e, r in other.terms.items():
            s = acc.get(e, 0) + r
            if s:
                acc[e] = s
            else:
                del acc[e]
        return Laurent._wrap(acc)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._wrap({e: -r for e, r in self.terms.items()})

    def __sub__(self, other):
        return self + (-Laurent.coerce(other))

    def __rsub__(self, other):
        return Laurent.coerce(other) - self

    def __mul__(self, other):
        if other is ONE:
            return self
        if self is ONE:
            return other
        if not isinstance(other, Laurent):
            r = _frac(other)
            if not r:
                return ZERO
            return Laurent._wrap({e: c * r for e, c in self.terms.items()})
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO
        if len(a) == 1 and len(b) == 1:
            (ea, ra), = a.items()
            (eb, rb), = b.items()
            return Laurent._wrap({ea + eb: ra * rb})
        acc: dict = {}
        for ea, ra in a.items():
            for eb, rb in b.items():
                e = ea + eb
                s = acc.get(e, 0) + ra * rb
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
        return Laurent._wrap(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible")
            (e, r), = self.terms.items()
            return Laurent._wrap({-e: _frac(Fraction(1) / r)}) ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def shift(self, exp) -> "Laurent":
        """Multiply by ``q^exp``."""
        if not isinstance(exp, ExpForm):
            exp = ExpForm(exp)
        return Laurent._wrap({e + exp: r for e, r in self.terms.items()})

    # -- specialisation -----------------------------------------------------
    def specialize(self, assign: Mapping | None = None, q_target: str = "keep") -> "Laurent":
        if q_target not in ("keep", "one"):
            raise ValueError(f"q_target must be 'keep' or 'one', got {q_target!r}")
        assign = dict(assign or {})
        for (t, l) in assign:
            if not t < l:
                raise ValueError(f"specialisation keys need t < l, got {(t, l)}")
        acc: dict = {}
        for e, r in self.terms.items():
            e2 = e.substitute(assign) if assign else e
            if q_target == "one":
                # q^{phi} goes to 1 along with q
                e2 = _E0
            acc[e2] = acc.get(e2, 0) + r
        return Laurent._wrap({e: r for e, r in acc.items() if r})

    def at_q_one(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def q_derivative_at_1(self) -> Fraction:
        if self.has_phi():
            raise ValueError("specialise the multiparameters before differentiating")
        return sum((r * e[0] for e, r in self.terms.items()), Fraction(0))

    # -- text -----------------------------------------------------------------
    def to_str(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms, key=_exp_sort_key):
            r = self.terms[e]
            if e.is_zero():
                out.append(str(r))
            else:
                out.append(f"{r}*q^({e.to_str()})")
        return " + ".join(out).replace("+ -", "- ")

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Laurent({self.to_str()})"

    @classmethod
    def parse(cls, text: str) -> "Laurent":
        """Inverse of :meth:`to_str`."""
        text = text.strip()
        if text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
            text = text[1:-1].strip()
        if text == "0" or not text:
            return ZERO
        acc = ZERO
        for sign, body in _split_top_level(text):
            body = body.strip()
            m = re.fullmatch(r"([0-9/]+)\s*\*\s*q\^\((.*)\)", body)
            if m:
                term = Laurent.mono(ExpForm.parse(m.group(2)), Fraction(m.group(1)))
            elif re.fullmatch(r"q\^\((.*)\)", body):
                term = Laurent.mono(ExpForm.parse(body[3:-1]))
            elif body == "q":
                term = q(1)
            else:
                term = Laurent.const(Fraction(body))
            acc = acc + (term if sign > 0 else -term)
        return acc

    def to_json(self):
        return [[e.to_str(), str(r)] for e, r in sorted(self.terms.items(), key=lambda t: _exp_sort_key(t[0]))]

    @classmethod
    def from_json(cls, data) -> "Laurent":
        return cls({ExpForm.parse(e): Fraction(r) for e, r in data})


def _exp_sort_key(e: ExpForm):
    return (e[0], e[1:])


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def _split_top_level(text: str):
    """Split on top-level +/- (outside parentheses), keeping signs."""
    out = []
    depth = 0
    sign = 1
    start = 0
    i = 0
    if text.startswith("-"):
        sign, start, i = -1, 1, 1
    elif text.startswith("+"):
        start, i = 1, 1
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and text[i - 1] != "^":
            out.append((sign, text[start:i]))
            sign = 1 if ch == "+" else -1
            start = i + 1
        i += 1
    out.append((sign, text[start:]))
    return [(s, b) for s, b in out if b.strip()]


ZERO = Laurent._wrap({})
ONE = Laurent._wrap({_E0: 1})


def q(r=1) -> Laurent:
    """``q^r`` for rational ``r``."""
    return Laurent.mono(ExpForm(r))


def qphi(t: int, l: int, r=1) -> Laurent:
    """``q_{t,l}^r = q^{r phi[t,l]}``."""
    return Laurent.mono(ExpForm(0, {(t, l): r}))


def cf_mul(a: Laurent, b: Laurent) -> Laurent:
    return a * b


def cf_specialize(a: Laurent, assign: Mapping | None = None, q_target: str = "keep") -> Laurent:
    return a.specialize(assign, q_target)


def cf_q_derivative_at_1(a: Laurent) -> Fraction:
    return a.q_derivative_at_1()
