"""Closed points, divisors and factored rational functions on P^1.

A closed point of P^1 over k is a monic irreducible polynomial (the
finite points) or the point at infinity.  Its residue field is presented
as k[u]/(pi), uniformly a degree-deg(pi) extension; infinity gets the
degree-one presentation k[u]/(u).

Nonzero rational functions are kept factored as unit * prod p_i^e_i
with the p_i monic irreducible.  That makes valuations, divisors and
evaluation-outside-the-support exact bookkeeping rather than gcd work:
v_P(f) is a dictionary lookup, and v_inf(f) = -sum e_i deg p_i because
every p_i is monic.
"""

from .extfield import ExtField
from .poly import Poly
from .ratfunc import RF


class ClosedPoint:
    """A closed point of P^1_k: a monic irreducible, or infinity (pi=None)."""

    __slots__ = ("field", "pi")

    def __init__(self, field, pi=None):
        if pi is not None:
            if pi.field != field:
                raise ValueError("point polynomial over the wrong field")
            if not pi.is_monic() or not pi.is_irreducible():
                raise ValueError(f"not a monic irreducible: {pi}")
        self.field = field
        self.pi = pi

    @property
    def is_infinite(self):
        return self.pi is None

    @property
    def deg(self):
        return 1 if self.pi is None else self.pi.deg

    def residue_field(self):
        if self.pi is None:
            return ExtField(self.field, Poly.x(self.field))
        return ExtField(self.field, self.pi)

    def __eq__(self, other):
        return (
            isinstance(other, ClosedPoint)
            and self.field == other.field
            and self.pi == other.pi
        )

    def __hash__(self):
        return hash((self.field, self.pi))

    def sort_key(self):
        if self.pi is None:
            return (1, 0, ())
        return (0, self.pi.deg, self.pi.coeffs)

    def __repr__(self):
        if self.pi is None:
            return "(inf)"
        if self.pi.deg == 1:
            c = self.field.neg(self.pi.coeffs[0])
            return f"({self.field.elt_str(c)})"
        return f"({self.pi.to_str('t')})"


def infinity(field):
    return ClosedPoint(field, None)


def point_of(field, pi):
    return ClosedPoint(field, pi)


def rational_point(field, c):
    """The k-rational point t = c."""
    if isinstance(c, int):
        c = field.coerce(c) if not field.is_finite else (
            c if 0 <= c < field.q else c % field.p)
    return ClosedPoint(field, Poly(field, (field.neg(c), field.one)))


class Divisor:
    """Formal Z-combination of closed points."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=None):
        self.field = field
        self.coeffs = {}
        if coeffs:
            for P, n in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
                if n:
                    self.coeffs[P] = self.coeffs.get(P, 0) + n
            self.coeffs = {P: n for P, n in self.coeffs.items() if n}

    def __add__(self, other):
        out = dict(self.coeffs)
        for P, n in other.coeffs.items():
            out[P] = out.get(P, 0) + n
        return Divisor(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Divisor(self.field, {P: -n for P, n in self.coeffs.items()})

    def __rmul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return Divisor(self.field, {P: n * m for P, m in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Divisor)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.coeffs.items(),
                                              key=lambda kv: kv[0].sort_key()))))

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return sum(n * P.deg for P, n in self.coeffs.items())

    def support(self):
        return set(self.coeffs)

    def __getitem__(self, P):
        return self.coeffs.get(P, 0)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for P, n in sorted(self.coeffs.items(), key=lambda kv: kv[0].sort_key()):
            if n == 1:
                parts.append(f"{P}")
            elif n == -1:
                parts.append(f"-{P}")
            else:
                parts.append(f"{n}*{P}")
        return " + ".join(parts).replace("+ -", "- ")


class FracFun:
    """A nonzero rational function on P^1 in factored form.

    unit in k^*, powers a dict {monic irreducible Poly: exponent}; the
    value is unit * prod p^e.  The order at infinity is determined:
    v_inf = -sum e * deg p.
    """

    __slots__ = ("field", "unit", "powers")

    def __init__(self, field, unit, powers=None):
        if unit == field.zero:
            raise ZeroDivisionError("the zero function has no factored form")
        self.field = field
        self.unit = unit
        self.powers = {p: e for p, e in (powers or {}).items() if e}

    # -- constructors -----------------------------------------------------

    @classmethod
    def one(cls, field):
        return cls(field, field.one)

    @classmethod
    def constant(cls, field, c):
        return cls(field, c)

    @classmethod
    def from_poly(cls, f):
        if f.is_zero():
            raise ZeroDivisionError("the zero function has no factored form")
        unit, fac = f.factor()
        return cls(f.field, unit, fac)

    @classmethod
    def from_frac(cls, num, den):
        return cls.from_poly(num) / cls.from_poly(den)

    @classmethod
    def from_rf(cls, rf):
        if not isinstance(rf, RF):
            raise TypeError("expected a rational function element")
        return cls.from_frac(rf.num, rf.den)

    def as_frac(self):
        """(num, den) polynomials, den monic."""
        num = Poly.const(self.field, self.unit)
        den = Poly.one(self.field)
        for p, e in self.powers.items():
            if e > 0:
                num = num * p**e
            else:
                den = den * p ** (-e)
        return num, den

    # -- group structure ----------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, FracFun):
            return NotImplemented
        F = self.field
        out = dict(self.powers)
        for p, e in other.powers.items():
            out[p] = out.get(p, 0) + e
        return FracFun(F, F.mul(self.unit, other.unit), out)

    def __truediv__(self, other):
        return self * other.inv()

    def inv(self):
        F = self.field
        return FracFun(F, F.inv(self.unit), {p: -e for p, e in self.powers.items()})

    def __pow__(self, n):
        F = self.field
        return FracFun(F, F.pow_(self.unit, n), {p: n * e for p, e in self.powers.items()})

    def __eq__(self, other):
        return (
            isinstance(other, FracFun)
            and self.field == other.field
            and self.unit == other.unit
            and self.powers == other.powers
        )

    def __hash__(self):
        return hash((self.field, self.unit,
                     tuple(sorted(self.powers.items(), key=lambda kv: kv[0].coeffs))))

    def is_constant(self):
        return not self.powers

    # -- valuations and divisors ---------------------------------------------

    def valuation(self, P):
        if P.is_infinite:
            return -sum(e * p.deg for p, e in self.powers.items())
        return self.powers.get(P.pi, 0)

    def divisor(self):
        F = self.field
        coeffs = {ClosedPoint(F, p): e for p, e in self.powers.items()}
        vinf = -sum(e * p.deg for p, e in self.powers.items())
        if vinf:
            coeffs[infinity(F)] = vinf
        return Divisor(F, coeffs)

    def support(self):
        return self.divisor().support()

    # -- evaluation ------------------------------------------------------------

    def evaluate(self, P):
        """Value in the residue field k(P); the point must avoid div(f)."""
        if self.valuation(P) != 0:
            raise ValueError(f"pole or zero at {P}")
        K = P.residue_field()
        if P.is_infinite:
            # every factor is monic, so the limit at infinity is the unit
            return K.from_base(self.unit)
        acc = K.from_base(self.unit)
        for p, e in self.powers.items():
            acc = K.mul(acc, K.pow_(K.project(p), e))
        return acc

    def __repr__(self):
        num, den = self.as_frac()
        if den.is_one():
            return num.to_str("t")
        return f"({num.to_str('t')})/({den.to_str('t')})"


def poly_fun(field, coeffs):
    """Convenience: the factored function of a dense polynomial."""
    return FracFun.from_poly(Poly.of(field, coeffs))


def all_points_up_to(field, maxdeg):
    """All closed points of degree <= maxdeg, infinity included."""
    from .poly import irreducibles

    out = [infinity(field)]
    for d in range(1, maxdeg + 1):
        out.extend(ClosedPoint(field, p) for p in irreducibles(field, d))
    return out
