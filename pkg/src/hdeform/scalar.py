"""Exact rational functions in the deformation parameter q.

A :class:`Scalar` is a pair of integer polynomials (numerator, denominator)
kept in a canonical form, so equality and hashing are structural:

* numerator and denominator are coprime over Q[q],
* the integer contents of numerator and denominator share no common factor,
* the denominator's leading coefficient is positive,
* zero is ``0/1``.

Polynomials are dense tuples of ints, lowest degree first, without trailing
zeros (the zero polynomial is the empty tuple).
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DivisionByZero, PoleAtOne

Poly = tuple


# ----------------------------------------------------------------------------
# dense integer polynomials
# ----------------------------------------------------------------------------

def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def poly_neg(a):
    return tuple(-c for c in a)


def poly_sub(a, b):
    return poly_add(a, poly_neg(b))


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def _poly_divmod_q(a, b):
    """Division with remainder over Q; coefficients are Fractions."""
    a = [Fraction(c) for c in a]
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        factor = a[-1] / lead
        quot[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return quot, a


def _primitive(coeffs):
    """Scale a Fraction-coefficient polynomial to a primitive integer one."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return ()
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    g = poly_content(ints)
    if ints[-1] < 0:
        g = -g
    return tuple(c // g for c in ints)


def poly_gcd(a, b):
    """Primitive gcd with positive leading coefficient."""
    if not a:
        return _primitive([Fraction(c) for c in b]) if b else ()
    if not b:
        return _primitive([Fraction(c) for c in a])
    if len(a) == 1 or len(b) == 1:
        return (1,)
    x, y = a, b
    while y:
        _, r = _poly_divmod_q(x, y)
        x, y = y, tuple(r)
    return _primitive(x)


def poly_exact_div(a, b):
    quot, rem = _poly_divmod_q(a, b)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return _trim(int(c) for c in quot)


def _order_at_one(poly):
    order = 0
    while poly and sum(poly) == 0:
        poly = poly_exact_div(poly, (-1, 1))
        order += 1
    return order


def poly_eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ----------------------------------------------------------------------------
# Scalar
# ----------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _canonical(num, den):
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return (), (1,)
    if len(den) > 1 and len(num) > 1:
        g = poly_gcd(num, den)
        if g != (1,):
            num = poly_exact_div(num, g)
            den = poly_exact_div(den, g)
    c = gcd(poly_content(num), poly_content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


@lru_cache(maxsize=65536)
def _add(n1, d1, n2, d2):
    if d1 == d2:
        return _canonical(poly_add(n1, n2), d1)
    return _canonical(poly_add(poly_mul(n1, d2), poly_mul(n2, d1)), poly_mul(d1, d2))


@lru_cache(maxsize=65536)
def _mul(n1, d1, n2, d2):
    return _canonical(poly_mul(n1, n2), poly_mul(d1, d2))


class Scalar:
    """Element of Q(q); immutable and hashable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(1,)):
        if isinstance(num, int):
            num = (num,)
        if isinstance(den, int):
            den = (den,)
        num, den = _canonical(_trim(num), _trim(den))
        self.num = num
        self.den = den
        self._hash = hash((num, den))

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = hash((num, den))
        return obj

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Scalar):
            return value
        if isinstance(value, int):
            return INTEGERS[value] if -8 <= value <= 8 else cls((value,))
        if isinstance(value, Fraction):
            return cls((value.numerator,), (value.denominator,))
        if isinstance(value, str):
            from .parsing import parse_scalar
            return parse_scalar(value)
        raise TypeError(f"cannot convert {value!r} to Scalar")

    @classmethod
    def parse(cls, text):
        from .parsing import parse_scalar
        return parse_scalar(text)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num == (1,) and self.den == (1,)

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def is_polynomial(self):
        return self.den == (1,)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        return Scalar._raw(*_add(self.num, self.den, other.num, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(poly_neg(self.num), self.den)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.num == (1,) and self.den == (1,):
            return other
        if other.num == (1,) and other.den == (1,):
            return self
        return Scalar._raw(*_mul(self.num, self.den, other.num, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not other.num:
            raise DivisionByZero("division by zero scalar")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(n)):
            result = result * base
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == Scalar.coerce(other)
        return NotImplemented

    def __hash__(self):
        return self._hash

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, value):
        """Value at q = ``value`` (an int or Fraction) as a Fraction."""
        den = poly_eval(self.den, Fraction(value))
        if den == 0:
            raise DivisionByZero(f"pole at q = {value}")
        return Fraction(poly_eval(self.num, Fraction(value))) / den

    def limit_at_one(self):
        den = sum(self.den)
        if den == 0:
            raise PoleAtOne(f"{self} has a pole at q = 1")
        return Fraction(sum(self.num), den)

    def valuation_at_one(self):
        """Order of vanishing at q = 1 (negative for a pole); zero maps to None."""
        if not self.num:
            return None
        return _order_at_one(self.num) - _order_at_one(self.den)

    def sign(self):
        """Sign of the numerator's leading coefficient (used for printing)."""
        if not self.num:
            return 0
        return 1 if self.num[-1] > 0 else -1

    # -- printing -----------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _fmt_coeff_power(coeff, exp):
    """One Laurent term ``coeff*q^exp`` with coeff a nonzero Fraction."""
    sign = "-" if coeff < 0 else ""
    coeff = abs(coeff)
    if exp == 0:
        return sign + str(coeff)
    power = "q" if exp == 1 else f"q^{exp}"
    if coeff == 1:
        return sign + power
    return f"{sign}{coeff}*{power}"


def _fmt_laurent(terms):
    """terms: list of (exp, Fraction) in descending exponent order."""
    out = ""
    for i, (exp, coeff) in enumerate(terms):
        piece = _fmt_coeff_power(coeff, exp)
        if i == 0:
            out = piece
        elif piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


def _fmt_poly(poly):
    return _fmt_laurent([(i, Fraction(c)) for i, c in reversed(list(enumerate(poly))) if c])


def format_scalar(s):
    if not s.num:
        return "0"
    nonzero_den = [(i, c) for i, c in enumerate(s.den) if c]
    if len(nonzero_den) == 1:
        # monomial denominator: print as a Laurent polynomial
        shift, dc = nonzero_den[0]
        terms = [(i - shift, Fraction(c, dc)) for i, c in reversed(list(enumerate(s.num))) if c]
        return _fmt_laurent(terms)
    num = _fmt_poly(s.num)
    if sum(1 for c in s.num if c) > 1 or num.startswith("-"):
        num = f"({num})"
    return f"{num}/({_fmt_poly(s.den)})"


def is_simple(s):
    """True when the printed form needs no parentheses as a factor."""
    text = format_scalar(s)
    body = text[1:] if text.startswith("-") else text
    return " " not in body and "/(" not in body


ZERO = Scalar._raw((), (1,))
ONE = Scalar._raw((1,), (1,))
Q = Scalar._raw((0, 1), (1,))
INTEGERS = {n: Scalar._raw(((n,) if n else ()), (1,)) for n in range(-8, 9)}
Q_INV = Scalar._raw((1,), (0, 1))


def scalar_arith(a, b, op):
    """Exact field operation ``op`` in {"add", "sub", "mul", "div"}."""
    a, b = Scalar.coerce(a), Scalar.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def limit_at_one(a):
    return Scalar.coerce(a).limit_at_one()
