"""Tame symbols, Weil reciprocity and the Deligne pairing on P^1.

The tame symbol at a closed point P is

    (f, g)_P = (-1)^(v(f)v(g)) * (f^(v(g)) / g^(v(f)))(P)  in k(P)*,

with v the valuation at P and v_inf = -degree.  Pushing each symbol down
by the residue-field norm and multiplying over all points gives 1 (Weil
reciprocity); for sections with disjoint divisors the same bookkeeping
computes the Deligne pairing scalar

    <f, g> = prod_{P in supp div f} N_{k(P)/k}( g(P) )^{v_P(f)},

whose symmetry in f and g *is* reciprocity.  Symbol sums, tame vectors
and the norm map that sends a tame vector to the product of its normed
entries give the Gersten-level picture; the norm kills every tame
vector that comes from a symbol sum, and tests hammer on that.
"""

from fractions import Fraction

from .curve import ClosedPoint, Divisor, FracFun, infinity
from .gfield import GF, QQ, Rationals
from .poly import Poly, irreducibles


def tame_symbol(f, g, P):
    """The tame symbol (f,g)_P as an element of k(P) (a coefficient tuple)."""
    a = f.valuation(P)
    b = g.valuation(P)
    F = f.field
    h = (f**b) / (g**a)  # valuation 0 at P by construction
    val = h.evaluate(P)
    if (a * b) % 2:
        K = P.residue_field()
        val = K.mul(val, K.from_base(F.neg(F.one)))
    return val


def weil_product(f, g):
    """prod_P N_{k(P)/k}((f,g)_P); equals 1 for every pair (reciprocity)."""
    F = f.field
    points = f.support() | g.support()
    acc = F.one
    for P in points:
        K = P.residue_field()
        acc = F.mul(acc, K.norm(tame_symbol(f, g, P)))
    return acc


def norm_on_divisor(g, D):
    """prod_P N_{k(P)/k}(g(P))^{n_P} over the (arbitrary) divisor D."""
    F = g.field
    acc = F.one
    for P, n in D.coeffs.items():
        if g.valuation(P) != 0:
            raise ValueError("sections not transverse")
        K = P.residue_field()
        acc = F.mul(acc, F.pow_(K.norm(g.evaluate(P)), n))
    return acc


def norm_along_divisor(D, g):
    """Norm of g along an effective divisor D (supports must be disjoint)."""
    if any(n < 0 for n in D.coeffs.values()):
        raise ValueError("norm along a divisor needs an effective divisor")
    return norm_on_divisor(g, D)


def deligne_scalar(f, g):
    """The pairing <f,g>: g evaluated on div f through residue norms."""
    if f.support() & g.support():
        raise ValueError("overlapping supports")
    return norm_on_divisor(g, f.divisor())


# ---------------------------------------------------------------------------
# moving a section to make supports disjoint


def _fresh_irreducible(field, deg, used):
    for p in irreducibles(field, deg):
        if p not in used:
            return p
    return None


def _fresh_adjuster(field, n, used):
    """A factored adjustment {poly: exp} of total weighted degree n.

    Single fresh irreducible p of degree d | n is preferred (p^(n/d));
    otherwise two fresh irreducibles of coprime degrees split n.  Raises
    only if the field is so small that everything is in use.
    """
    if n == 0:
        return {}
    for d in range(abs(n), 0, -1):
        if abs(n) % d:
            continue
        p = _fresh_irreducible(field, d, used)
        if p is not None:
            return {p: n // d}
    for a in range(1, 7):
        pa = _fresh_irreducible(field, a, used)
        if pa is None:
            continue
        for b in range(a + 1, 8):
            pb = _fresh_irreducible(field, b, used | {pa})
            if pb is None:
                continue
            from math import gcd

            g = gcd(a, b)
            if n % g:
                continue
            # x*a + y*b = n
            _, x0, y0 = _ext_gcd_int(a, b)
            x = x0 * (n // g)
            y = y0 * (n // g)
            # minimize |x| a little
            k = x // (b // g) if b // g else 0
            x -= k * (b // g)
            y += k * (a // g)
            return {pa: x, pb: y}
    raise ValueError("could not find fresh points to move the divisor")


def _ext_gcd_int(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def move_disjoint(f, g):
    """Perturb f by a principal divisor so its support avoids supp(g).

    Returns (f2, h, corr) with f2 = f*h, supp(div f2) disjoint from
    supp(div g), and corr = prod over supp(div h) outside supp(div g) of
    N(g(P))^{v_P(h)}.  The combination deligne_scalar(f2, g) / corr does
    not depend on the choice of h, which is what makes the correction
    auditable.
    """
    F = f.field
    common_finite = []
    gsupp = g.support()
    fsupp = f.support()
    for P in fsupp & gsupp:
        if not P.is_infinite:
            common_finite.append(P.pi)
    used = {P.pi for P in (fsupp | gsupp) if not P.is_infinite}
    hpow = {}
    for pi in common_finite:
        hpow[pi] = -f.powers[pi]
    # dropping those factors shifts v_inf; if infinity is a common point
    # the new order there must come out zero, via fresh factors
    inf = infinity(F)
    vinf_new = f.valuation(inf) - sum(e * p.deg for p, e in hpow.items())
    if inf in gsupp and vinf_new != 0:
        adj = _fresh_adjuster(F, vinf_new, used)
        for p, e in adj.items():
            hpow[p] = hpow.get(p, 0) + e
            used.add(p)
    h = FracFun(F, F.one, hpow)
    f2 = f * h
    if f2.support() & gsupp:
        raise AssertionError("moving failed to clear the support")
    corr = F.one
    for P, n in h.divisor().coeffs.items():
        if P in gsupp:
            continue
        K = P.residue_field()
        corr = F.mul(corr, F.pow_(K.norm(g.evaluate(P)), n))
    return f2, h, corr


# ---------------------------------------------------------------------------
# symbol sums in canonical bilinear form


def _int_factor(n):
    """Trial-division factorisation of a positive integer."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _atoms_of(f):
    """Decompose a FracFun into [(atom, exponent)] over the atom alphabet.

    Over GF(q): ("u",) is the multiplicative generator (order q-1) and
    ("p", pi) a monic irreducible (infinite order).  Over QQ: ("s",) the
    sign (order 2), ("q", p) a rational prime, ("p", pi) as before.
    """
    F = f.field
    out = []
    if isinstance(F, GF):
        if F.q > 2:
            d = F.dlog(f.unit)
            if d:
                out.append((("u",), d))
    elif isinstance(F, Rationals):
        u = f.unit
        if u < 0:
            out.append((("s",), 1))
        for p, e in _int_factor(abs(u.numerator)).items():
            out.append(((("q", p)), e))
        for p, e in _int_factor(u.denominator).items():
            out.append(((("q", p)), -e))
    else:
        raise TypeError(f"symbol sums not supported over {F}")
    for p, e in f.powers.items():
        out.append((("p", p), e))
    return out


def _atom_order(field, atom):
    if atom[0] == "u":
        return field.q - 1
    if atom[0] == "s":
        return 2
    return 0


def _atom_fun(field, atom):
    if atom[0] == "u":
        return FracFun(field, field.gen)
    if atom[0] == "s":
        return FracFun(field, Fraction(-1))
    if atom[0] == "q":
        return FracFun(field, Fraction(atom[1]))
    return FracFun(field, field.one, {atom[1]: 1})


def _atom_key(atom):
    if atom[0] in ("u", "s"):
        return (0, 0, ())
    if atom[0] == "q":
        return (1, atom[1], ())
    return (2, atom[1].deg, atom[1].coeffs)


class SymbolSum:
    """Z-linear combination of symbols {f, g} in canonical bilinear form.

    Stored as {(atom_a, atom_b): coefficient} with the coefficient
    reduced modulo gcd of the atom orders (a unit atom has finite order,
    an irreducible has infinite order).  This is the exact quotient in
    which bilinearity holds and nothing else is imposed.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        canon = {}
        for pair, c in (terms or {}).items():
            m = _gcd(_atom_order(field, pair[0]), _atom_order(field, pair[1]))
            if m:
                c %= m
            if c:
                canon[pair] = c
        self.terms = canon

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def of_pair(cls, f, g):
        """The symbol {f, g}, expanded bilinearly."""
        field = f.field
        terms = {}
        for a, ea in _atoms_of(f):
            for b, eb in _atoms_of(g):
                key = (a, b)
                terms[key] = terms.get(key, 0) + ea * eb
        return cls(field, terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return SymbolSum(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SymbolSum(self.field, {k: -c for k, c in self.terms.items()})

    def __rmul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return SymbolSum(self.field, {k: n * c for k, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, SymbolSum)
            and self.field == other.field
            and self.terms == other.terms
        )

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (a, b), c in sorted(
            self.terms.items(), key=lambda kv: (_atom_key(kv[0][0]), _atom_key(kv[0][1]))
        ):
            fa = _atom_fun(self.field, a)
            fb = _atom_fun(self.field, b)
            bits.append(f"{c}*{{{fa}, {fb}}}")
        return " + ".join(bits)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# tame vectors and the Gersten-level norm


class TameVector:
    """Finite map ClosedPoint -> k(P)*, trivial entries dropped."""

    __slots__ = ("field", "entries")

    def __init__(self, field, entries=None):
        self.field = field
        clean = {}
        for P, v in (entries or {}).items():
            if v != P.residue_field().one:
                clean[P] = v
        self.entries = clean

    def __mul__(self, other):
        out = dict(self.entries)
        for P, v in other.entries.items():
            if P in out:
                out[P] = P.residue_field().mul(out[P], v)
            else:
                out[P] = v
        return TameVector(self.field, out)

    def __pow__(self, n):
        return TameVector(
            self.field,
            {P: P.residue_field().pow_(v, n) for P, v in self.entries.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, TameVector)
            and self.field == other.field
            and self.entries == other.entries
        )

    def is_trivial(self):
        return not self.entries

    def __repr__(self):
        if not self.entries:
            return "{}"
        bits = []
        for P, v in sorted(self.entries.items(), key=lambda kv: kv[0].sort_key()):
            K = P.residue_field()
            bits.append(f"{P}: {K.elt_str(v)}")
        return "{" + ", ".join(bits) + "}"


def tame_vector(f, g):
    """The tame vector of a single pair: P -> (f,g)_P over the joint support."""
    F = f.field
    entries = {}
    for P in f.support() | g.support():
        entries[P] = tame_symbol(f, g, P)
    return TameVector(F, entries)


def tame_vector_of(s):
    """Tame vector of a SymbolSum (computed atom pair by atom pair)."""
    F = s.field
    acc = TameVector(F)
    for (a, b), c in s.terms.items():
        fa = _atom_fun(F, a)
        fb = _atom_fun(F, b)
        acc = acc * (tame_vector(fa, fb) ** c)
    return acc


def gersten_norm(h):
    """Product over P of N_{k(P)/k}(h_P); 1 on anything from a SymbolSum."""
    F = h.field
    acc = F.one
    for P, v in h.entries.items():
        acc = F.mul(acc, P.residue_field().norm(v))
    return acc


# ---------------------------------------------------------------------------
# the pairing as a line with labeled generators


class DeligneLine:
    """<O(div f), O(div g)> with its generator labeled by (f, g).

    Other generators are labeled by (f2, g2) with f2/f and g2/g rational
    functions; the transition scalar between labels is computed by
    norming the ratio along the divisor of the other slot.  Transitions
    compose multiplicatively, and the two orders of a mixed slot change
    agree (that agreement is reciprocity again).
    """

    def __init__(self, f, g):
        if f.support() & g.support():
            raise ValueError("overlapping supports")
        self.field = f.field
        self.f = f
        self.g = g
        self.D = f.divisor()
        self.E = g.divisor()

    def transition_first(self, h):
        """Scalar c with generator(h*f, g) = c * generator(f, g)."""
        return norm_on_divisor(h, self.E)

    def transition_second(self, h):
        """Scalar c with generator(f, h*g) = c * generator(f, g)."""
        return norm_on_divisor(h, self.D)

    def transition_to(self, f2, g2):
        """Scalar relating the (f2, g2) label to the (f, g) label.

        Moves the first slot, then the second slot against the new first
        divisor; the opposite order gives the same scalar.
        """
        F = self.field
        h1 = f2 / self.f
        h2 = g2 / self.g
        c1 = norm_on_divisor(h1, self.E)
        c2 = norm_on_divisor(h2, f2.divisor())
        return F.mul(c1, c2)
