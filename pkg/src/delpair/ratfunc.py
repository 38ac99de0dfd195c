"""Fraction field of a univariate polynomial ring, as a field object.

``FunctionField(k, "y")`` behaves like any other ground field in this
package (same protocol as GF/QQ), with elements reduced fractions of
polynomials over k, denominators monic.  It is what residue fields of
horizontal curves in a fibred surface live over: k(y)[x]/(f) is then
just an :class:`~delpair.extfield.ExtField` on this base.
"""

from functools import lru_cache

from .poly import Poly


class RF:
    """A rational function num/den, den monic, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = Poly.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.one(num.field)
            elif den.deg == 0:
                c = den.lc
                if c != num.field.one:
                    num = num.scale(num.field.inv(c))
                    den = Poly.one(num.field)
            else:
                g = num.gcd(den)
                if g.deg > 0:
                    num, den = num / g, den / g
                c = den.lc
                if c != num.field.one:
                    ic = num.field.inv(c)
                    num, den = num.scale(ic), den.scale(ic)
        self.num = num
        self.den = den

    def __eq__(self, other):
        return (
            isinstance(other, RF) and self.num == other.num and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.deg == 0

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num})/({self.den})"


class FunctionField:
    """k(var): the field of rational functions over a ground field k."""

    is_finite = False

    def __init__(self, base, var="y"):
        self.base = base
        self.var = var
        self.char = base.char
        self.zero = RF(Poly.zero(base), _reduced=False)
        self.one = RF(Poly.one(base))

    def add(self, a, b):
        if a.den.deg == 0 and b.den.deg == 0:
            return RF(a.num + b.num, a.den, _reduced=True)
        num = a.num * b.den + b.num * a.den
        return RF(num, a.den * b.den)

    def sub(self, a, b):
        if a.den.deg == 0 and b.den.deg == 0:
            return RF(a.num - b.num, a.den, _reduced=True)
        num = a.num * b.den - b.num * a.den
        return RF(num, a.den * b.den)

    def neg(self, a):
        return RF(-a.num, a.den, _reduced=True)

    def mul(self, a, b):
        if a.num.is_zero() or b.num.is_zero():
            return self.zero
        # cross-cancel, then the product is already reduced: each new
        # numerator factor is coprime to both denominator factors
        n1, d2 = a.num, b.den
        if d2.deg > 0:
            g1 = n1.gcd(d2)
            if g1.deg > 0:
                n1, d2 = n1 / g1, d2 / g1
        n2, d1 = b.num, a.den
        if d1.deg > 0:
            g2 = n2.gcd(d1)
            if g2.deg > 0:
                n2, d1 = n2 / g2, d1 / g2
        return RF(n1 * n2, d1 * d2, _reduced=True)

    def inv(self, a):
        if a.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        c = a.num.lc
        if c == self.base.one:
            return RF(a.den, a.num, _reduced=True)
        ic = self.base.inv(c)
        return RF(a.den.scale(ic), a.num.scale(ic), _reduced=True)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_(self, a, n):
        if n < 0:
            return self.pow_(self.inv(a), -n)
        if n == 1:
            return a
        if n == 0:
            return self.one
        if a.num.is_zero():
            return self.zero
        # a reduced fraction stays reduced under taking powers
        return RF(a.num**n, a.den**n, _reduced=True)

    def coerce(self, x):
        if isinstance(x, RF):
            return x
        if isinstance(x, Poly) and x.field == self.base:
            return RF(x)
        if isinstance(x, int):
            return RF(Poly.const(self.base, x))
        return RF(Poly.const(self.base, self.base.coerce(x)))

    def from_poly(self, p):
        return RF(p)

    def gen(self):
        return RF(Poly.x(self.base))

    def rand(self, rng):
        num = Poly(self.base, [self.base.rand(rng) for _ in range(rng.randint(0, 3))])
        while True:
            den = Poly(self.base, [self.base.rand(rng) for _ in range(rng.randint(1, 3))])
            if not den.is_zero():
                return RF(num, den)

    def rand_unit(self, rng):
        while True:
            a = self.rand(rng)
            if not a.is_zero():
                return a

    def elt_str(self, a):
        num = a.num.to_str(self.var)
        if a.den.is_one():
            return num
        return f"({num})/({a.den.to_str(self.var)})"

    @property
    def name(self):
        return f"{self.base.name}({self.var})"

    def __repr__(self):
        return self.name

    def __hash__(self):
        return hash(("FunctionField", self.base, self.var))

    def __eq__(self, other):
        return (
            isinstance(other, FunctionField)
            and self.base == other.base
            and self.var == other.var
        )


@lru_cache(maxsize=None)
def function_field(base, var="y"):
    return FunctionField(base, var)
