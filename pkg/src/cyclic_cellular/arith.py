"""Exact polynomials over the rationals in one indeterminate ``d``."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]

_TERM_RE = re.compile(
    r"""^\s*
    (?P<coef>\d+(?:/\d+)?)?\s*
    (?P<star>\*)?\s*
    (?P<var>d(?:\s*\^\s*(?P<exp>\d+))?)?
    \s*$""",
    re.VERBOSE,
)


class ParseError(ValueError):
    pass


class Poly:
    """Sparse polynomial in ``d`` with Fraction coefficients.

    Stored as a tuple of ``(exponent, coefficient)`` pairs sorted by exponent,
    with no zero coefficients. Instances are immutable and hashable.
    """

    __slots__ = ("_t",)

    def __init__(self, terms: Union[None, Number, Mapping[int, Number], "Poly"] = None):
        if terms is None:
            self._t = ()
        elif isinstance(terms, Poly):
            self._t = terms._t
        elif isinstance(terms, (int, Fraction)):
            self._t = ((0, Fraction(terms)),) if terms else ()
        else:
            items = []
            for e, c in terms.items():
                if e < 0:
                    raise ValueError("negative exponent")
                if c:
                    items.append((int(e), Fraction(c)))
            items.sort()
            self._t = tuple(items)

    @classmethod
    def _raw(cls, t: tuple) -> "Poly":
        p = object.__new__(cls)
        p._t = t
        return p

    @classmethod
    def const(cls, q: Number) -> "Poly":
        return cls(q)

    @classmethod
    def monomial(cls, coef: Number, exp: int) -> "Poly":
        return cls({exp: coef})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._t)

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return self._t[-1][0] if self._t else -1

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and self._t[0][0] == 0)

    def constant(self) -> Fraction:
        """The value of a constant polynomial; raises if not constant."""
        if not self._t:
            return Fraction(0)
        if len(self._t) == 1 and self._t[0][0] == 0:
            return self._t[0][1]
        raise ValueError(f"{self} is not a constant")

    def coefficient(self, exp: int) -> Fraction:
        for e, c in self._t:
            if e == exp:
                return c
        return Fraction(0)

    def evaluate(self, q: Number) -> Fraction:
        """Image under the ring map d -> q."""
        q = Fraction(q)
        total = Fraction(0)
        for e, c in self._t:
            total += c * q**e
        return total

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._t:
            return self
        if not self._t:
            return o
        acc = dict(self._t)
        for e, c in o._t:
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return Poly._raw(tuple(sorted(acc.items())))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple((e, -c) for e, c in self._t))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Poly._raw(tuple((e, c * other) for e, c in self._t))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return ZERO
        if len(a) == 1 and len(b) == 1:
            return Poly._raw(((a[0][0] + b[0][0], a[0][1] * b[0][1]),))
        acc: dict[int, Fraction] = {}
        for e1, c1 in a:
            for e2, c2 in b:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return Poly._raw(tuple(sorted((e, c) for e, c in acc.items() if c)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, Poly):
            other = other.constant()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero")
        inv = 1 / Fraction(other)
        return self * inv

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant())
        return hash(self._t)

    def __bool__(self):
        return bool(self._t)

    # -- text form --------------------------------------------------------
    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for e, c in reversed(self._t):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = _fmt_q(mag)
            else:
                var = "d" if e == 1 else f"d^{e}"
                body = var if mag == 1 else f"{_fmt_q(mag)}*{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Parse the text form produced by ``str``, e.g. ``3/2*d^2 - 1``."""
        s = text.strip()
        if not s:
            raise ParseError("empty polynomial")
        # split into signed terms
        tokens = re.split(r"([+-])", s)
        sign = 1
        acc: dict[int, Fraction] = {}
        expect_term = True
        pending_sign = None
        for tok in tokens:
            if tok in ("+", "-"):
                if pending_sign is not None and not expect_term:
                    raise ParseError(f"bad polynomial {text!r}")
                pending_sign = (pending_sign or 1) * (-1 if tok == "-" else 1)
                expect_term = True
                continue
            if not tok.strip():
                continue
            m = _TERM_RE.match(tok)
            if not m or not (m.group("coef") or m.group("var")):
                raise ParseError(f"bad term {tok.strip()!r} in {text!r}")
            if m.group("star") and not (m.group("coef") and m.group("var")):
                raise ParseError(f"bad term {tok.strip()!r} in {text!r}")
            if m.group("coef") and m.group("var") and not m.group("star"):
                raise ParseError(f"missing '*' in {tok.strip()!r}")
            try:
                coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {text!r}") from None
            if m.group("var"):
                exp = int(m.group("exp")) if m.group("exp") else 1
            else:
                exp = 0
            sign = pending_sign or 1
            acc[exp] = acc.get(exp, 0) + sign * coef
            pending_sign = None
            expect_term = False
        if expect_term:
            raise ParseError(f"dangling sign in {text!r}")
        return cls(acc)


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly(x)
    if isinstance(x, str):
        return Poly.parse(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Poly")


def poly_sum(items: Iterable[Poly]) -> Poly:
    out = ZERO
    for p in items:
        out = out + p
    return out


ZERO = Poly()
ONE = Poly(1)
DELTA = Poly({1: 1})


# -- sparse coefficient vectors ----------------------------------------------

def vec_add(acc: dict, other: Mapping, scale=None) -> dict:
    """In-place ``acc += scale * other`` for sparse vectors with Poly values."""
    for k, v in other.items():
        if scale is not None:
            v = v * scale
        cur = acc.get(k)
        new = v if cur is None else cur + v
        if new:
            acc[k] = new
        else:
            acc.pop(k, None)
    return acc


def vec_scale(vec: Mapping, scale) -> dict:
    if not scale:
        return {}
    out = {}
    for k, v in vec.items():
        w = v * scale
        if w:
            out[k] = w
    return out


def vec_clean(vec: Mapping) -> dict:
    return {k: v for k, v in vec.items() if v}
