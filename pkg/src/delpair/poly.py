"""Dense univariate polynomials over a ground field.

Coefficients are stored little-endian with no trailing zeros, so the
zero polynomial has an empty coefficient tuple and ``deg`` -1.  When the
ground field is a finite field, arithmetic is routed through the flat
integer kernel in :mod:`delpair.kernels`; over any other field object
implementing the small protocol from :mod:`delpair.gfield` the same
school-book algorithms run on field elements directly.

Mixing with plain ``int`` always goes through ``field.coerce``, i.e.
through the prime subfield; to scale by an arbitrary element of an
extension field use :meth:`Poly.scale`.

Factorisation over GF(q) is squarefree decomposition, distinct-degree
splitting and Cantor–Zassenhaus equal-degree splitting; over the
rationals it is rational roots plus the Kronecker method, which is ample
at the degrees this package deals in.
"""

import math
import random
from fractions import Fraction
from functools import lru_cache

from . import kernels as ker
from .gfield import GF, QQ


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        z = field.zero
        cs = list(coeffs)
        while cs and cs[-1] == z:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def of(cls, field, coeffs):
        """Build from a list whose entries may be plain ints.

        Over GF(q), ints already in 0..q-1 are taken verbatim as field
        elements; anything else is reduced into the prime subfield.
        """
        out = []
        for c in coeffs:
            if isinstance(field, GF):
                out.append(c % field.p if not (0 <= c < field.q) else c)
            else:
                out.append(field.coerce(c) if isinstance(c, int) else c)
        return cls(field, out)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def const(cls, field, c):
        if isinstance(c, int) and not isinstance(field, GF):
            c = field.coerce(c)
        elif isinstance(c, int) and isinstance(field, GF) and not 0 <= c < field.q:
            c = c % field.p
        return cls(field, (c,))

    # -- basic inspection ----------------------------------------------

    @property
    def deg(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("leading coefficient of the zero polynomial")
        return self.coeffs[-1]

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == Poly.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    # -- arithmetic ------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, int) or (not self.field.is_finite and isinstance(other, Fraction)):
            return Poly.const(self.field, other)
        return None

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        F = self.field
        if isinstance(F, GF):
            return Poly(F, ker.add(list(self.coeffs), list(other.coeffs), F.tabs))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        if isinstance(F, GF):
            return Poly(F, ker.neg(list(self.coeffs), F.tabs))
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        F = self.field
        if isinstance(F, GF):
            return Poly(F, ker.mul(list(self.coeffs), list(other.coeffs), F.tabs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == F.zero:
                continue
            for j, cb in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(ca, cb))
        return Poly(F, out)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by a field element (no int coercion games)."""
        F = self.field
        return Poly(F, [F.mul(a, c) for a in self.coeffs])

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        acc, base = Poly.one(self.field), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __divmod__(self, other):
        other = self._coerce_other(other)
        if other is None:
            return NotImplemented
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if isinstance(F, GF):
            q, r = ker.divmod_(list(self.coeffs), list(other.coeffs), F.tabs)
            return Poly(F, q), Poly(F, r)
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        inv_lb = F.inv(b[-1])
        q = [F.zero] * max(len(a) - db, 0)
        for i in range(len(a) - 1, db - 1, -1):
            c = F.mul(a[i], inv_lb)
            if c == F.zero:
                continue
            q[i - db] = c
            for j, bc in enumerate(b):
                a[i - db + j] = F.sub(a[i - db + j], F.mul(c, bc))
        return Poly(F, q), Poly(F, a[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        """Exact division; raises if the remainder is nonzero."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def __call__(self, x):
        F = self.field
        if isinstance(x, Poly):
            acc = Poly.zero(F)
            for c in reversed(self.coeffs):
                acc = acc * x + Poly(F, (c,))
            return acc
        if isinstance(x, int) and isinstance(F, GF) and not 0 <= x < F.q:
            x = x % F.p
        elif isinstance(x, int) and not F.is_finite:
            x = F.coerce(x)
        if isinstance(F, GF):
            return ker.eval_at(list(self.coeffs), x, F.tabs)
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    # -- gcd land --------------------------------------------------------

    def monic(self):
        if self.is_zero():
            return self
        F = self.field
        if isinstance(F, GF):
            return Poly(F, ker.monic(list(self.coeffs), F.tabs))
        return self.scale(F.inv(self.lc))

    def gcd(self, other):
        F = self.field
        if isinstance(F, GF):
            return Poly(F, ker.gcd(list(self.coeffs), list(other.coeffs), F.tabs))
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def ext_gcd(self, other):
        """(g, s, t) with s*self + t*other = g, g monic (or zero)."""
        F = self.field
        if isinstance(F, GF):
            g, s, t = ker.ext_gcd(list(self.coeffs), list(other.coeffs), F.tabs)
            return Poly(F, g), Poly(F, s), Poly(F, t)
        a, b = self, other
        sa, sb = Poly.one(F), Poly.zero(F)
        ta, tb = Poly.zero(F), Poly.one(F)
        while not b.is_zero():
            q, r = divmod(a, b)
            a, b = b, r
            sa, sb = sb, sa - q * sb
            ta, tb = tb, ta - q * tb
        if a.is_zero():
            return a, sa, ta
        c = F.inv(a.lc)
        return a.scale(c), sa.scale(c), ta.scale(c)

    def inv_mod(self, m):
        g, s, _ = self.ext_gcd(m)
        if not g.is_one():
            raise ZeroDivisionError("element not invertible modulo the given polynomial")
        return s % m

    def pow_mod(self, e, m):
        F = self.field
        if e < 0:
            return self.inv_mod(m).pow_mod(-e, m)
        if isinstance(F, GF):
            return Poly(F, ker.powmod(list(self.coeffs), e, list(m.coeffs), F.tabs))
        acc, base = Poly.one(F) % m, self % m
        while e:
            if e & 1:
                acc = (acc * base) % m
            base = (base * base) % m
            e >>= 1
        return acc

    def derivative(self):
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            out.append(F.mul(F.coerce(i), c))
        return Poly(F, out)

    # -- resultants --------------------------------------------------------

    def resultant(self, other):
        """Res(self, other) by the Euclidean recurrence (exact)."""
        F = self.field
        f, g = self, other
        if f.is_zero() or g.is_zero():
            return F.zero
        acc = F.one
        flip = False
        while g.deg > 0:
            if f.deg < g.deg:
                if (f.deg * g.deg) % 2:
                    flip = not flip
                f, g = g, f
                continue
            r = f % g
            if r.is_zero():
                return F.zero
            if (f.deg * g.deg) % 2:
                flip = not flip
            acc = F.mul(acc, F.pow_(g.lc, f.deg - r.deg))
            f, g = g, r
        acc = F.mul(acc, F.pow_(g.coeffs[0], f.deg))
        return F.neg(acc) if flip else acc

    # -- irreducibility and factorisation -----------------------------------

    def is_irreducible(self):
        F = self.field
        n = self.deg
        if n <= 0:
            return False
        if n == 1:
            return True
        if isinstance(F, GF):
            f = self.monic()
            x = Poly.x(F)
            if not x.pow_mod(F.q**n, f) == x % f:
                return False
            primes, m = [], n
            d = 2
            while d * d <= m:
                if m % d == 0:
                    primes.append(d)
                    while m % d == 0:
                        m //= d
                d += 1
            if m > 1:
                primes.append(m)
            for r in primes:
                h = x.pow_mod(F.q ** (n // r), f) - x
                if f.gcd(h).deg != 0:
                    return False
            return True
        unit, fac = self.factor()
        return len(fac) == 1 and next(iter(fac.values())) == 1

    def factor(self, rng=None):
        """Factor into (unit, {monic irreducible: multiplicity})."""
        F = self.field
        if self.is_zero():
            raise ValueError("factoring the zero polynomial")
        if self.deg == 0:
            return self.coeffs[0], {}
        if isinstance(F, GF):
            return _factor_gf(self, rng)
        if F is QQ or not F.is_finite:
            return _factor_qq(self)
        raise NotImplementedError(f"no factorisation over {F}")

    # -- display -----------------------------------------------------------

    def to_str(self, var="t"):
        F = self.field
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.deg, -1, -1):
            c = self.coeffs[i]
            if c == F.zero:
                continue
            cs = F.elt_str(c)
            if i == 0:
                parts.append(cs)
            else:
                v = var if i == 1 else f"{var}^{i}"
                if cs == "1":
                    parts.append(v)
                elif "+" in cs or cs.startswith("-"):
                    parts.append(f"({cs})*{v}")
                else:
                    parts.append(f"{cs}*{v}")
        return " + ".join(parts)

    def __repr__(self):
        return self.to_str()


# ---------------------------------------------------------------------------
# factorisation over GF(q)


def _sqfree_gf(f):
    """Yield (g, m) with f monic = prod g^m, g squarefree and coprime."""
    F = f.field
    p = F.char
    out = {}
    d = f.derivative()
    if d.is_zero():
        # f = h(x^p); take p-th roots of the coefficients
        root_coeffs = [F.pth_root(f.coeffs[i]) for i in range(0, len(f.coeffs), p)]
        for g, m in _sqfree_gf(Poly(F, root_coeffs)):
            out[g] = out.get(g, 0) + m * p
        return list(out.items())
    c = f.gcd(d)
    w = f // c
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        fac = w // y
        if fac.deg > 0:
            out[fac.monic()] = out.get(fac.monic(), 0) + i
        w, c = y, c // y
        i += 1
    if not c.is_one():
        for g, m in _sqfree_gf(c):
            out[g] = out.get(g, 0) + m
    return list(out.items())


def _ddf_gf(f):
    """Distinct-degree split of a monic squarefree f: yields (product, d)."""
    F = f.field
    x = Poly.x(F)
    h = x
    d = 0
    while f.deg > 2 * d:
        d += 1
        h = h.pow_mod(F.q, f)
        g = f.gcd(h - x)
        if g.deg > 0:
            yield g, d
            f = f // g
            h = h % f
    if f.deg > 0:
        yield f, f.deg


def _edf_gf(f, d, rng):
    """Equal-degree split: f monic squarefree, all factors of degree d."""
    F = f.field
    if f.deg == d:
        return [f]
    q = F.q
    while True:
        a = Poly(F, [F.rand(rng) for _ in range(f.deg)])
        if a.deg < 1:
            continue
        if q % 2:
            b = a.pow_mod((q**d - 1) // 2, f) - 1
        else:
            # char 2: use the trace map sum a^(2^i), i < k*d
            b = Poly.zero(F)
            t = a % f
            for _ in range(F.k * d):
                b = (b + t) % f
                t = (t * t) % f
        g = f.gcd(b)
        if 0 < g.deg < f.deg:
            return _edf_gf(g, d, rng) + _edf_gf(f // g, d, rng)


def _factor_gf(f, rng=None):
    F = f.field
    unit = f.lc
    f = f.monic()
    if rng is None:
        rng = random.Random(hash((F.q, f.coeffs)))
    fac = {}
    for g, m in _sqfree_gf(f):
        for h, d in _ddf_gf(g):
            for irr in _edf_gf(h, d, rng):
                fac[irr] = fac.get(irr, 0) + m
    return unit, fac


@lru_cache(maxsize=None)
def irreducibles(field, deg):
    """All monic irreducibles of the given degree, sorted by encoding."""
    out = []
    q = field.q
    for low in range(q**deg):
        digs = []
        n = low
        for _ in range(deg):
            digs.append(n % q)
            n //= q
        f = Poly(field, digs + [field.one])
        if f.is_irreducible():
            out.append(f)
    return tuple(out)


# ---------------------------------------------------------------------------
# factorisation over the rationals (rational roots + Kronecker)


def _zx_content(cs):
    g = 0
    for c in cs:
        g = math.gcd(g, c)
    return g or 1


def _to_zx(f):
    """Scale a QQ-polynomial to a primitive integer coefficient list."""
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    cs = [int(c * den) for c in f.coeffs]
    g = _zx_content(cs)
    if cs[-1] < 0:
        g = -g
    return [c // g for c in cs]


def _divisors(n):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _qq_roots(cs):
    """Rational roots of a primitive integer polynomial."""
    roots = []
    if cs[0] == 0:
        roots.append(Fraction(0))
        while cs[0] == 0:
            cs = cs[1:]
    for num in _divisors(cs[0]):
        for den in _divisors(cs[-1]):
            for s in (1, -1):
                r = Fraction(s * num, den)
                if sum(c * r**i for i, c in enumerate(cs)) == 0 and r not in roots:
                    roots.append(r)
    return roots, cs


_KRONECKER_CAP = 200000


def _factor_qq(f):
    F = f.field
    unit = f.lc
    f = f.monic()
    fac = {}
    # strip rational roots first
    while f.deg > 0:
        cs = _to_zx(f)
        roots, _ = _qq_roots(cs)
        if not roots:
            break
        r = roots[0]
        lin = Poly(F, (-r, Fraction(1)))
        fac[lin] = fac.get(lin, 0) + 1
        f = f / lin
    # Kronecker for what is left
    while f.deg > 1:
        g = _kronecker_factor(f)
        if g is None:
            fac[f] = fac.get(f, 0) + 1
            f = Poly.one(F)
            break
        g = g.monic()
        fac[g] = fac.get(g, 0) + 1
        f = f / g
    if f.deg == 1:
        fac[f.monic()] = fac.get(f.monic(), 0) + 1
    return unit, fac


def _kronecker_factor(f):
    """A monic nontrivial factor of f over QQ, or None if irreducible.

    Classical Kronecker: a degree-d factor is determined by its values at
    d+1 integer points, and those values divide the values of f.  Fine
    for the single-digit degrees seen here; degree is capped to keep the
    divisor enumeration honest.
    """
    if f.deg > 8:
        raise ValueError("rational factorisation capped at degree 8 (Kronecker method)")
    F = f.field
    cs = _to_zx(f)

    def val(x):
        return sum(c * x**i for i, c in enumerate(cs))

    for d in range(2, f.deg // 2 + 1):
        xs = []
        x = 0
        while len(xs) < d + 1:
            xs.append(x)
            x = -x if x > 0 else -x + 1
        vals = [val(x) for x in xs]
        if any(v == 0 for v in vals):
            return None  # roots were already stripped; safety net
        cand_sets = []
        total = 1
        for v in vals:
            ds = _divisors(v)
            cand_sets.append([s * t for t in ds for s in (1, -1)])
            total *= 2 * len(ds)
            if total > _KRONECKER_CAP:
                raise ValueError("rational factorisation too large for the Kronecker method")

        def rec(i, chosen):
            if i == len(xs):
                g = interpolate(F, list(zip(map(Fraction, xs), map(Fraction, chosen))))
                if g.deg != d:
                    return None
                try:
                    q, r = divmod(f, g)
                except ZeroDivisionError:
                    return None
                if r.is_zero():
                    return g
                return None
            for c in cand_sets[i]:
                got = rec(i + 1, chosen + [c])
                if got is not None:
                    return got
            return None

        got = rec(0, [])
        if got is not None:
            return got
    return None


def interpolate(field, points):
    """Lagrange interpolation through [(x, y), ...] with distinct x."""
    out = Poly.zero(field)
    for i, (xi, yi) in enumerate(points):
        num = Poly.const(field, yi)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * Poly(field, (field.neg(xj), field.one))
            num = num.scale(field.inv(field.sub(xi, xj)))
        out = out + num
    return out
