"""Exact scalar arithmetic: the coefficient tower of the toolkit.

Four layers, all exact:

- ``Rat``        -- arbitrary-precision rationals (stdlib ``Fraction``);
- ``GaussRat``   -- Gaussian rationals a + b*i with ``Rat`` components;
- ``LaurentPoly``-- Laurent polynomials in the parameter t over ``GaussRat``,
                    stored as a sparse exponent -> coefficient map;
- ``RatFunc``    -- rational functions in t, kept in a normal form where the
                    denominator is an ordinary polynomial with constant term 1
                    and every power of t (and the leading unit) is pulled into
                    the numerator.

The normal form makes the t-adic valuation of a ``RatFunc`` the lowest
exponent of its numerator acting as an O(1) read, and the limit at t = 0 the
t^0 coefficient of the numerator whenever the valuation is >= 0.

The module also owns the textual scalar syntax used by algebra files and
witness matrices: integers, fractions ``p/q``, the imaginary unit ``i``, the
parameter ``t``, parentheses, ``^`` powers with integer exponents, and
juxtaposition as multiplication, e.g. ``3/2 + i``, ``t^-1``,
``(1+t)/(1-t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import LieDegError, ParseError

Rat = Fraction

INFINITY = math.inf


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class GaussRat:
    """A Gaussian rational re + im*i with exact rational components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @property
    def is_zero(self):
        return not self.re and not self.im

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def norm_sq(self):
        """re^2 + im^2; zero iff the number is zero."""
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm_sq()
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussRat(self.re / n, -self.im / n)

    def __bool__(self):
        return not self.is_zero

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (GaussRat, int, Fraction)):
            return self + (-other if isinstance(other, GaussRat) else GaussRat(-_frac(other)))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRat(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussRat):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            f = _frac(other)
            if not f:
                raise ZeroDivisionError("division by zero")
            return GaussRat(self.re / f, self.im / f)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRat(other) * self.inverse()
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = GR_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        if self.im > 0:
            return f"{self.re}+{_imag_str(self.im)}"
        return f"{self.re}{_imag_str(self.im)}"


def _imag_str(im):
    # im is a nonzero Fraction
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


GR_ZERO = GaussRat(0)
GR_ONE = GaussRat(1)
GR_I = GaussRat(0, 1)


def as_gauss(x):
    """Coerce an int, Fraction, GaussRat or constant RatFunc to GaussRat."""
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRat(x)
    if isinstance(x, RatFunc):
        return x.as_gauss()
    raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")


class LaurentPoly:
    """A Laurent polynomial in t: finite map exponent -> nonzero GaussRat.

    The empty map is the zero polynomial.  Stored coefficients are never
    zero, so equality and hashing are structural.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for k, v in coeffs.items():
                g = as_gauss(v) if not isinstance(v, GaussRat) else v
                if g:
                    d[int(k)] = g
        self._c = d

    @classmethod
    def zero(cls):
        return L_ZERO

    @classmethod
    def one(cls):
        return L_ONE

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def t(cls, k=1):
        return cls({k: GR_ONE})

    @property
    def is_zero(self):
        return not self._c

    def coeff(self, k):
        return self._c.get(k, GR_ZERO)

    def terms(self):
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._c.items())

    def valuation(self):
        """Lowest exponent; +infinity for the zero polynomial."""
        if not self._c:
            return INFINITY
        return min(self._c)

    def degree(self):
        """Highest exponent; -infinity for the zero polynomial."""
        if not self._c:
            return -INFINITY
        return max(self._c)

    def shift(self, k):
        """Multiply by t^k."""
        if k == 0 or not self._c:
            return self
        return LaurentPoly({e + k: c for e, c in self._c.items()})

    def scale(self, s):
        s = as_gauss(s)
        if not s:
            return L_ZERO
        return LaurentPoly({e: c * s for e, c in self._c.items()})

    def __bool__(self):
        return bool(self._c)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._c.items()})

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            d = dict(self._c)
            for e, c in other._c.items():
                s = d.get(e, GR_ZERO) + c
                if s:
                    d[e] = s
                elif e in d:
                    del d[e]
            out = LaurentPoly()
            out._c = d
            return out
        if isinstance(other, (GaussRat, int, Fraction)):
            return self + LaurentPoly.const(as_gauss(other))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (LaurentPoly, GaussRat, int, Fraction)):
            o = other if isinstance(other, LaurentPoly) else LaurentPoly.const(as_gauss(other))
            return self + (-o)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (GaussRat, int, Fraction)):
            return LaurentPoly.const(as_gauss(other)) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            if not self._c or not other._c:
                return L_ZERO
            d = {}
            for e1, c1 in self._c.items():
                for e2, c2 in other._c.items():
                    e = e1 + e2
                    s = d.get(e, GR_ZERO) + c1 * c2
                    if s:
                        d[e] = s
                    elif e in d:
                        del d[e]
            out = LaurentPoly()
            out._c = d
            return out
        if isinstance(other, (GaussRat, int, Fraction)):
            return self.scale(as_gauss(other))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = L_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (GaussRat, int, Fraction)):
            return self == LaurentPoly.const(as_gauss(other))
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, c in self.terms():
            sign, piece = _laurent_term_str(k, c)
            if not parts:
                parts.append(("-" if sign < 0 else "") + piece)
            else:
                parts.append(f" {'-' if sign < 0 else '+'} {piece}")
        return "".join(parts)


def _is_compound(cs):
    # a scalar string needing parentheses when used as a factor
    return "+" in cs[1:] or "-" in cs[1:]


def _laurent_term_str(k, c):
    cs = str(c)
    if k == 0:
        if _is_compound(cs):
            return 1, f"({cs})"
        if cs.startswith("-"):
            return -1, cs[1:]
        return 1, cs
    base = "t" if k == 1 else f"t^{k}"
    if _is_compound(cs):
        return 1, f"({cs})*{base}"
    if c == GR_ONE:
        return 1, base
    if c == GaussRat(-1):
        return -1, base
    if cs.startswith("-"):
        return -1, f"{cs[1:]}*{base}"
    return 1, f"{cs}*{base}"


L_ZERO = LaurentPoly()
L_ONE = LaurentPoly({0: GR_ONE})


def poly_divmod(a, b):
    """Long division of ordinary polynomials (valuation >= 0), b != 0."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if a.valuation() < 0 or b.valuation() < 0:
        raise ValueError("poly_divmod needs ordinary polynomials")
    q = L_ZERO
    r = a
    db = b.degree()
    lb = b.coeff(db)
    while not r.is_zero and r.degree() >= db:
        k = r.degree() - db
        c = r.coeff(r.degree()) / lb
        term = LaurentPoly({k: c})
        q = q + term
        r = r - term * b
    return q, r


def poly_gcd(a, b):
    """Monic gcd of two ordinary polynomials over the Gaussian rationals."""
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    if a.is_zero:
        return a
    lead = a.coeff(a.degree())
    if lead != GR_ONE:
        a = a.scale(lead.inverse())
    return a


def poly_div_exact(a, b):
    q, r = poly_divmod(a, b)
    if not r.is_zero:
        raise ValueError("polynomial division was not exact")
    return q


class RatFunc:
    """A rational function in t over the Gaussian rationals, normalized.

    Normal form invariants: the denominator is an ordinary polynomial with
    constant term 1, numerator and denominator share no polynomial factor,
    and every power of t is carried by the numerator.  Consequently the
    t-adic valuation is ``num.valuation()`` and, when that is >= 0, the
    limit at t = 0 is ``num.coeff(0)``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(as_gauss(num))
        if den is None:
            den = L_ONE
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.const(as_gauss(den))
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            self.num = L_ZERO
            self.den = L_ONE
            return
        if len(den._c) == 1:
            # polynomial or monomial-denominator values: already coprime
            (e, c), = den._c.items()
            if e or c != GR_ONE:
                num = num.shift(-e)
                if c != GR_ONE:
                    num = num.scale(c.inverse())
            self.num = num
            self.den = L_ONE
            return
        vn = num.valuation()
        vd = den.valuation()
        num0 = num.shift(-vn)
        den0 = den.shift(-vd)
        if num0.degree() > 0:
            g = poly_gcd(num0, den0)
            if g.degree() > 0:
                num0 = poly_div_exact(num0, g)
                den0 = poly_div_exact(den0, g)
        c = den0.coeff(0)
        if c != GR_ONE:
            inv = c.inverse()
            num0 = num0.scale(inv)
            den0 = den0.scale(inv)
        self.num = num0.shift(vn - vd)
        self.den = den0

    @staticmethod
    def _from_poly(p):
        out = object.__new__(RatFunc)
        out.num = p
        out.den = L_ONE
        return out

    @classmethod
    def zero(cls):
        return RF_ZERO

    @classmethod
    def one(cls):
        return RF_ONE

    @classmethod
    def from_gauss(cls, c):
        return cls(LaurentPoly.const(as_gauss(c)))

    @classmethod
    def t_power(cls, k):
        return cls(LaurentPoly.t(k))

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_constant(self):
        """True iff the value lies in the base field (no t dependence)."""
        return self.den == L_ONE and self.num.degree() <= 0 and self.num.valuation() >= 0

    def as_gauss(self):
        if not self.is_constant:
            raise LieDegError(f"scalar {self} depends on t, expected a constant")
        return self.num.coeff(0)

    def valuation(self):
        """The t-adic valuation; +infinity iff the function is zero."""
        return self.num.valuation()

    def limit_at_zero(self):
        """Value at t = 0, or None when the valuation is negative."""
        if self.valuation() < 0:
            return None
        return self.num.coeff(0)

    def taylor(self, order):
        """Power-series coefficients c_0..c_order at t = 0.

        Requires valuation >= 0 (otherwise there is no expansion).
        """
        if order < 0:
            raise ValueError("taylor order must be >= 0")
        if self.valuation() < 0:
            raise LieDegError(f"negative valuation {self.valuation()}: no Taylor expansion")
        dvals = {e: c for e, c in self.den.terms() if e > 0}
        out = []
        for j in range(order + 1):
            cj = self.num.coeff(j)
            for e, c in dvals.items():
                if e <= j:
                    cj = cj - c * out[j - e]
            out.append(cj)
        return out

    def inverse(self):
        if self.num.is_zero:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (GaussRat, int, Fraction)):
            return RatFunc(LaurentPoly.const(as_gauss(other)))
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        return None

    def __bool__(self):
        return not self.num.is_zero

    def __neg__(self):
        out = object.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den is L_ONE and o.den is L_ONE:
            return RatFunc._from_poly(self.num + o.num)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

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
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den is L_ONE and o.den is L_ONE:
            return RatFunc._from_poly(self.num * o.num)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = RF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # the normal form is unique, so structural comparison is exact
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den == L_ONE and self.num.degree() <= 0 and self.num.valuation() >= 0:
            return hash(self.num.coeff(0))
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == L_ONE:
            return str(self.num)
        ns = str(self.num)
        if len(self.num._c) > 1:
            ns = f"({ns})"
        return f"{ns}/({self.den})"


RF_ZERO = RatFunc(L_ZERO)
RF_ONE = RatFunc(L_ONE)
RF_T = RatFunc(LaurentPoly.t(1))


def as_ratfunc(x):
    """Coerce an int, Fraction, GaussRat, LaurentPoly or RatFunc to RatFunc."""
    r = RatFunc._coerce(x)
    if r is None:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return r


def valuation(f):
    """t-adic valuation of a RatFunc; +infinity iff f = 0."""
    return as_ratfunc(f).valuation()


def limit_at_zero(f):
    """Value of f at t = 0 as a GaussRat, or None when the valuation is < 0."""
    return as_ratfunc(f).limit_at_zero()


def taylor(f, order):
    """Power-series coefficients c_0..c_order of f at t = 0."""
    return as_ratfunc(f).taylor(order)


# ---------------------------------------------------------------------------
# Textual scalar syntax (shared with algebra files and witness matrices)
# ---------------------------------------------------------------------------

_SYMBOLS = set("+-*/^()[],=")
_MAX_EXPONENT = 512
_MAX_DEPTH = 100


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "sym"
    text: str
    line: int
    col: int


def tokenize(text, first_line=1):
    """Split text into tokens, tracking line/column; '#' starts a comment."""
    toks = []
    line = first_line
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            col += 1
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            toks.append(Token("sym", ch, line, start_col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    return toks


class ScalarParser:
    """Recursive-descent parser for scalar expressions over a token list.

    Produces a RatFunc.  ``params`` maps parameter names to bound RatFunc
    values; any other identifier except ``i`` and ``t`` is rejected.
    """

    def __init__(self, tokens, params=None):
        self.toks = tokens
        self.i = 0
        self.params = params or {}
        self.depth = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of scalar expression")
        self.i += 1
        return tok

    def _error(self, message, tok=None):
        tok = tok or self._peek()
        if tok is None:
            raise ParseError(message)
        raise ParseError(message, tok.line, tok.col)

    def at_end(self):
        return self.i >= len(self.toks)

    def expect_end(self):
        if not self.at_end():
            self._error(f"unexpected {self._peek().text!r} after scalar expression")

    def parse_expr(self):
        try:
            return self._expr()
        except ZeroDivisionError:
            raise ParseError("division by zero in scalar expression") from None

    def _expr(self):
        v = self._term()
        while True:
            tok = self._peek()
            if tok is None or tok.kind != "sym" or tok.text not in "+-":
                return v
            self._next()
            rhs = self._term()
            v = v + rhs if tok.text == "+" else v - rhs

    def _term(self):
        v = self._factor()
        while True:
            tok = self._peek()
            if tok is None:
                return v
            if tok.kind == "sym" and tok.text in "*/":
                self._next()
                rhs = self._factor()
                v = v * rhs if tok.text == "*" else v / rhs
            elif tok.kind in ("int", "ident") or (tok.kind == "sym" and tok.text == "("):
                v = v * self._factor()  # juxtaposition
            else:
                return v

    def _factor(self):
        tok = self._peek()
        if tok is not None and tok.kind == "sym" and tok.text in "+-":
            self._next()
            v = self._factor()
            return v if tok.text == "+" else -v
        return self._power()

    def _power(self):
        v = self._atom()
        tok = self._peek()
        if tok is not None and tok.kind == "sym" and tok.text == "^":
            self._next()
            e = self._signed_int()
            v = v ** e
        return v

    def _signed_int(self):
        sign = 1
        tok = self._peek()
        if tok is not None and tok.kind == "sym" and tok.text in "+-":
            self._next()
            if tok.text == "-":
                sign = -1
            tok = self._peek()
        if tok is None or tok.kind != "int":
            self._error("expected an integer exponent")
        self._next()
        e = sign * int(tok.text)
        if abs(e) > _MAX_EXPONENT:
            self._error(f"exponent {e} out of range", tok)
        return e

    def _atom(self):
        tok = self._next()
        if tok.kind == "int":
            return RatFunc.from_gauss(GaussRat(int(tok.text)))
        if tok.kind == "ident":
            if tok.text == "i":
                return RatFunc.from_gauss(GR_I)
            if tok.text == "t":
                return RF_T
            if tok.text in self.params:
                return as_ratfunc(self.params[tok.text])
            self._error(f"unbound parameter {tok.text!r}", tok)
        if tok.kind == "sym" and tok.text == "(":
            self.depth += 1
            if self.depth > _MAX_DEPTH:
                self._error("expression nested too deeply", tok)
            v = self._expr()
            close = self._peek()
            if close is None or close.kind != "sym" or close.text != ")":
                self._error("expected ')'", tok)
            self._next()
            self.depth -= 1
            return v
        self._error(f"unexpected {tok.text!r} in scalar expression", tok)


def parse_scalar(text, params=None):
    """Parse a scalar expression into a RatFunc (exact, whole string)."""
    toks = tokenize(text)
    if not toks:
        raise ParseError("empty scalar expression")
    parser = ScalarParser(toks, params)
    v = parser.parse_expr()
    parser.expect_end()
    return v


def scalar_str(x):
    """Canonical, re-parsable string for a scalar of any layer."""
    if isinstance(x, (GaussRat, RatFunc, LaurentPoly)):
        return str(x)
    if isinstance(x, (int, Fraction)):
        return str(x)
    raise TypeError(f"not a scalar: {x!r}")
