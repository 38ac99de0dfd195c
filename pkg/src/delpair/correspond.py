"""Correspondences between projective lines and the maps they induce.

A correspondence here is a formal Z-linear combination of irreducible
curves on C x D, where C and D are projective lines over a common field.
It acts on divisors of D by pulling back along the second projection,
intersecting, and pushing forward to C; composition eliminates the
middle variable with a bihomogeneous resultant, so multiplicities come
out of the factorization of that resultant rather than ad-hoc counting.

Two independent routes compute the induced map on divisor classes:

* ``act`` works at the cycle level (eliminate the fibre variable,
  factor the result into closed points);
* ``act_via_deligne`` never factors anything -- it feeds the transposed
  family into the Deligne-pairing norm machinery and reads the class
  off a theta-style cocycle on a cover of the target line.

Both land in Pic(P^1) = Z, and agreeing there is a real consistency
check because the second route goes through chart-by-chart norms.

The elliptic mode replaces biforms with graphs of explicit maps
``P -> frob^k([n]P) + Q`` on a short Weierstrass curve together with
horizontal and vertical fibres; see ``EMap`` and ``ECCorrespondence``.
"""

from functools import lru_cache

from .biform import BiForm, compose_resultant, eliminate_y
from .curve import ClosedPoint, Divisor, infinity, point_of, rational_point
from .family import FamilyDivisor, _known_irreducible, deligne_norm_family
from .poly import Poly


def _fiber_form(field, P):
    """The vertical fibre over a closed point of the second line."""
    if P.is_infinite:
        return BiForm.y1(field)
    return BiForm.vertical(field, P.pi)


def _as_point(field, P):
    """Coerce a field element or monic irreducible Poly to a ClosedPoint."""
    if isinstance(P, ClosedPoint):
        return P
    if isinstance(P, Poly):
        return point_of(field, P)
    if P is None:
        return infinity(field)
    return rational_point(field, field.coerce(P))


class Correspondence:
    """Z-linear combination of irreducible curves on P^1 x P^1.

    ``terms`` maps canonical irreducible biforms to nonzero integer
    multiplicities.  The first pair of variables is the target line C,
    the second the source line D, so the graph of phi is {x = phi(y)}
    and acts by b |-> phi(b).
    """

    __slots__ = ("field", "terms", "_key")

    def __init__(self, field, terms=None):
        clean = {}
        for form, n in (terms or {}).items():
            if not n:
                continue
            unit, can = form.canonical()
            if not _known_irreducible(can):
                raise ValueError("correspondence terms must be irreducible curves")
            clean[can] = clean.get(can, 0) + n
        clean = {f: n for f, n in clean.items() if n}
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(
            self, "_key", (field, frozenset(clean.items()))
        )

    def __setattr__(self, name, value):
        raise AttributeError("correspondences are immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def diagonal(cls, field):
        """The identity correspondence {x = y}."""
        return cls(field, {BiForm.diagonal(field): 1})

    @classmethod
    def graph(cls, field, phi):
        """Graph of the polynomial self-map x = phi(y).

        A constant phi degenerates to the horizontal fibre over its
        value, which is exactly the right cycle for the constant map.
        """
        if not isinstance(phi, Poly):
            phi = Poly.of(field, [field.coerce(phi)])
        return cls(field, {BiForm.from_graph(field, phi): 1})

    @classmethod
    def vertical(cls, field, P):
        """The fibre C x {P} of the second projection."""
        return cls(field, {_fiber_form(field, _as_point(field, P)): 1})

    @classmethod
    def horizontal(cls, field, P):
        """The fibre {P} x D of the first projection."""
        P = _as_point(field, P)
        form = BiForm.x1(field) if P.is_infinite else BiForm.horizontal(field, P.pi)
        return cls(field, {form: 1})

    @classmethod
    def of_divisor(cls, D):
        """Reinterpret a family divisor as a correspondence."""
        if isinstance(D, FamilyDivisor):
            return cls(D.field, dict(D.components))
        return cls(D.field, {D: 1})

    # -- abelian group structure -------------------------------------

    def __add__(self, other):
        if not isinstance(other, Correspondence) or other.field != self.field:
            return NotImplemented
        out = dict(self.terms)
        for f, n in other.terms.items():
            out[f] = out.get(f, 0) + n
        return Correspondence(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Correspondence(self.field, {f: -n for f, n in self.terms.items()})

    def __rmul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return Correspondence(self.field, {f: n * m for f, m in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Correspondence) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def is_zero(self):
        return not self.terms

    # -- numerics ------------------------------------------------------

    @property
    def bidegree(self):
        """Class in CH^1(P^1 x P^1) = Z^2, spanned by the two fibres."""
        a = b = 0
        for f, n in self.terms.items():
            a += n * f.xdeg
            b += n * f.ydeg
        return (a, b)

    @property
    def fiber_degree(self):
        """Degree over the source line; scales divisor degrees under act."""
        return self.bidegree[0]

    def transpose(self):
        out = {}
        for f, n in self.terms.items():
            can = f.transpose().canonical()[1]
            out[can] = out.get(can, 0) + n
        return Correspondence(self.field, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for f, n in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            s = f"[{f.to_str()}]"
            bits.append(s if n == 1 else f"{n}*{s}")
        return " + ".join(bits).replace("+ -", "- ")


# -- action on divisors of the source line ---------------------------


@lru_cache(maxsize=None)
def _component_action(F, P):
    """Push the intersection of one irreducible curve with one fibre
    down to the target line, as a divisor of closed points."""
    field = F.field
    B = _fiber_form(field, P)
    if F.xdeg == 0:
        # a vertical component meets the fibre either nowhere or badly
        if F == B:
            raise ValueError(
                f"non-proper intersection: the correspondence contains the fibre over {P}"
            )
        return Divisor(field)
    R = eliminate_y(F, B)
    return _pure_x_divisor(R)


def _pure_x_divisor(R):
    """Factor a binary form in the x-pair into a divisor on the line."""
    field = R.field
    at_inf = BiForm.x1(field)
    coeffs = {}
    _, parts = R.factor()
    for g, mult in parts.items():
        P = infinity(field) if g == at_inf else point_of(field, g.univariate())
        coeffs[P] = coeffs.get(P, 0) + mult
    return Divisor(field, coeffs)


def act(alpha, m):
    """(pi_C)_* (pi_D^* m . alpha) as a divisor on the target line.

    Z-bilinear in both slots; the degree comes out multiplied by the
    fibre degree of alpha.  Raises when a vertical component of alpha
    passes through the support of m, naming the offending fibre.
    """
    if isinstance(alpha, ECCorrespondence):
        return alpha.act(m)
    out = Divisor(alpha.field)
    for F, n in alpha.terms.items():
        for P, k in m.coeffs.items():
            out = out + (n * k) * _component_action(F, P)
    return out


# -- composition ------------------------------------------------------


@lru_cache(maxsize=None)
def _compose_pair(F, H):
    """Eliminate the middle variable between two irreducible curves.

    Multiplicities are read off the factorization of the resultant;
    a vanishing resultant means the middle intersection is improper.
    A constant resultant is the dimension-dropping case (for instance
    horizontal after vertical) and contributes nothing.
    """
    R = compose_resultant(F, H)
    if R.is_zero:
        raise ValueError(
            f"improper composition: {F.to_str()} and {H.to_str()} share a middle fibre"
        )
    if R.bidegree == (0, 0):
        return ()
    _, parts = R.factor()
    return tuple(parts.items())


def compose(g, h):
    """The correspondence acting as ``g after h``.

    Realized by the resultant eliminating the shared middle line: g
    lives on C1 x C2, h on C2 x C3, and the result on C1 x C3 satisfies
    act(compose(g, h), m) = act(g, act(h, m)) whenever both sides are
    proper.
    """
    if isinstance(g, ECCorrespondence):
        return g.compose(h)
    if g.field != h.field:
        raise ValueError("composition needs a common ground field")
    terms = {}
    for F, n in g.terms.items():
        for H, k in h.terms.items():
            for comp, mult in _compose_pair(F, H):
                terms[comp] = terms.get(comp, 0) + n * k * mult
    return Correspondence(g.field, terms)


# -- induced maps on divisor classes ----------------------------------


class PicEndo:
    """Endomorphism data on CH^1 of the line.

    Pic(P^1) = Z by degree, so the induced map is multiplication by the
    fibre degree; the bidegree records the class of the correspondence
    in CH^1(P^1 x P^1) = Z^2, which is spanned by the two fibre classes,
    so every correspondence is degenerate up to linear equivalence and
    the action on degree-zero classes vanishes identically.
    """

    __slots__ = ("field", "multiplier", "fiber_class")

    def __init__(self, field, multiplier, fiber_class):
        self.field = field
        self.multiplier = multiplier
        self.fiber_class = fiber_class

    def on_class(self, c):
        return self.multiplier * c

    def compose(self, other):
        a, b = self.fiber_class
        c, d = other.fiber_class
        return PicEndo(self.field, self.multiplier * other.multiplier, (a * c, b * d))

    def __add__(self, other):
        a, b = self.fiber_class
        c, d = other.fiber_class
        return PicEndo(self.field, self.multiplier + other.multiplier, (a + c, b + d))

    def __eq__(self, other):
        return (
            isinstance(other, PicEndo)
            and self.field == other.field
            and self.multiplier == other.multiplier
            and self.fiber_class == other.fiber_class
        )

    def __hash__(self):
        return hash((self.field, self.multiplier, self.fiber_class))

    def is_identity(self):
        return self.multiplier == 1

    def __repr__(self):
        return f"PicEndo(x{self.multiplier}, class {self.fiber_class})"


class EllEndo:
    """Induced endomorphism of Pic^0 of an elliptic curve, tabulated on
    the rational points via the Abel-Jacobi reduction."""

    __slots__ = ("curve", "table")

    def __init__(self, curve, table):
        self.curve = curve
        self.table = table

    def on_class(self, P):
        return self.table[P]

    def compose(self, other):
        if other.curve is not self.curve:
            raise ValueError("endomorphisms live on different curves")
        return EllEndo(self.curve, {P: self.table[Q] for P, Q in other.table.items()})

    def __add__(self, other):
        cur = self.curve
        return EllEndo(
            cur, {P: cur.add(Q, other.table[P]) for P, Q in self.table.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, EllEndo)
            and self.curve is other.curve
            and self.table == other.table
        )

    def is_identity(self):
        return all(P == Q for P, Q in self.table.items())

    def __repr__(self):
        npts = len(self.table)
        return f"EllEndo on {npts} classes"


def induced_map_T(alpha):
    """The endomorphism of divisor classes induced by a correspondence."""
    if isinstance(alpha, ECCorrespondence):
        return alpha.induced_map()
    a, b = alpha.bidegree
    return PicEndo(alpha.field, a, (a, b))


# -- the norm route to the class action -------------------------------


@lru_cache(maxsize=None)
def _norm_class_degree(F, P):
    """Class in Pic(P^1) of one component acting on one point, computed
    through the Deligne-pairing norm machinery over the target line.

    The family base there is the *first* line, so everything gets
    transposed; a horizontal component would be vertical over that base
    and instead enters the (symmetric) pairing from the other side.
    """
    field = F.field
    fib = FamilyDivisor.irreducible(_fiber_form(field, P).transpose())
    FT = FamilyDivisor.irreducible(F.transpose())
    if F.ydeg == 0:
        return deligne_norm_family(fib, FT).degree
    return deligne_norm_family(FT, fib).degree


def act_via_deligne(alpha, m):
    """The class of act(alpha, m) in Pic(C) = Z, without computing act.

    Each (component, point) pair is normed down the family of fibres of
    the first projection, and the resulting line-bundle classes add up.
    The properness requirements match act exactly.
    """
    if isinstance(alpha, ECCorrespondence):
        raise ValueError("the norm route is only set up over the projective line")
    field = alpha.field
    for F in alpha.terms:
        if F.xdeg == 0:
            for P in m.support():
                if F == _fiber_form(field, P):
                    raise ValueError(
                        f"non-proper intersection: the correspondence contains the fibre over {P}"
                    )
    total = 0
    for F, n in alpha.terms.items():
        if F.xdeg == 0:
            continue  # a disjoint vertical fibre pushes forward to nothing
        for P, k in m.coeffs.items():
            total += n * k * _norm_class_degree(F, P)
    return total


# -- small-field support oracle ---------------------------------------


def _coerce_form(form, big, table):
    return BiForm(
        big,
        form.xdeg,
        form.ydeg,
        {key: table[c] for key, c in form.coeffs.items()},
    )


def _specialize_x(form, X):
    """Plug a projective x-value into a coerced form; returns the y-pair
    coefficient list (by ascending y0-exponent)."""
    big = form.field
    x0, x1 = X
    a, b = form.bidegree
    out = [big.zero] * (b + 1)
    for (i, j), c in form.coeffs.items():
        v = big.mul(c, big.mul(big.pow_(x0, i), big.pow_(x1, a - i)))
        out[j] = big.add(out[j], v)
    return out

def _specialize_y(form, Y):
    return _specialize_x(form.transpose(), Y)


def _eval_point(form, X, Z):
    """Evaluate at a pair of projective points given as raw field
    elements (BiForm.eval would coerce ints through the prime field)."""
    big = form.field
    z0, z1 = Z
    b = form.ydeg
    acc = big.zero
    for j, c in enumerate(_specialize_x(form, X)):
        v = big.mul(c, big.mul(big.pow_(z0, j), big.pow_(z1, b - j)))
        acc = big.add(acc, v)
    return acc


def _common_projective_root(big, u, v):
    """Do two coefficient lists share a root on P^1 over the closure?"""
    pu, pv = Poly.of(big, u), Poly.of(big, v)
    if pu.is_zero() or pv.is_zero():
        return True
    if u[-1] == big.zero and v[-1] == big.zero:
        return True  # both vanish at infinity of the eliminated pair
    return pu.gcd(pv).deg > 0


def composition_point_check(g, h, composed, kmax=3):
    """Support oracle for compose over small extension fields.

    For every pair of rational points (X, Z) of P^1 over F_{q^k},
    k <= kmax, the composed correspondence passes through (X, Z) iff
    some middle point over the algebraic closure links X to Z through
    g and h.  The middle existence test is a gcd of specialized fibre
    forms, so it is exact; this pins the support of the resultant
    computation point by point (degree bookkeeping pins the rest).
    """
    from .gfield import GF

    field = g.field
    if not getattr(field, "is_finite", False):
        raise ValueError("the point oracle needs a finite ground field")
    for k in range(1, kmax + 1):
        big = field if k == 1 else GF(field.p ** (field.k * k))
        table = field.embed(big)
        gs = [_coerce_form(F, big, table) for F in g.terms]
        hs = [_coerce_form(H, big, table) for H in h.terms]
        ks = [_coerce_form(K, big, table) for K in composed.terms]
        pts = [(big.one, big.zero)] + [(x, big.one) for x in big.elements()]
        hsliced = [[_specialize_y(H, Z) for H in hs] for Z in pts]
        for X in pts:
            gsliced = [_specialize_x(F, X) for F in gs]
            for Z, vs in zip(pts, hsliced):
                linked = any(
                    _common_projective_root(big, u, v)
                    for u in gsliced
                    for v in vs
                )
                onk = any(_eval_point(K, X, Z) == big.zero for K in ks)
                if linked != onk:
                    return False
    return True


# -- elliptic mode ----------------------------------------------------


class EMap:
    """A self-map P -> frob^k([n]P) + Q of an elliptic curve.

    The composite of a nonzero multiplication, a Frobenius power and a
    translation; this family is closed under composition, and on the
    rational points Frobenius acts as the identity, so evaluation is
    just [n]P + Q.  The degree n^2 q^k still remembers k.
    """

    __slots__ = ("curve", "n", "q", "k")

    def __init__(self, curve, n, q=None, k=0):
        if not isinstance(n, int) or n == 0:
            raise ValueError("the multiplication part must be a nonzero integer")
        if k < 0:
            raise ValueError("Frobenius powers are nonnegative")
        if not curve.contains(q):
            raise ValueError("translation point does not lie on the curve")
        self.curve = curve
        self.n = n
        self.q = q
        self.k = k

    @property
    def deg(self):
        return self.n * self.n * self.curve.field.q ** self.k

    def __call__(self, P):
        if not self.curve.contains(P):
            raise ValueError("point does not lie on the curve")
        return self.curve.add(self.curve.smul(self.n, P), self.q)

    def after(self, other):
        """The composite self o other, renormalized to the same shape."""
        if other.curve is not self.curve:
            raise ValueError("maps live on different curves")
        cur = self.curve
        # frob^k fixes the rational translation point of the inner map
        q = cur.add(cur.smul(self.n, other.q), self.q)
        return EMap(cur, self.n * other.n, q, self.k + other.k)

    def _key(self):
        cur = self.curve
        return (cur.field, cur.a, cur.b, self.n, self.q, self.k)

    def __eq__(self, other):
        return isinstance(other, EMap) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        bits = []
        if self.k:
            bits.append(f"frob^{self.k}" if self.k > 1 else "frob")
        if self.n != 1:
            bits.append(f"[{self.n}]")
        s = " o ".join(bits) if bits else "id"
        if self.q is not None:
            s += f" + {self.curve.point_str(self.q)}"
        return s


def _sep_degree(emap):
    """Separable degree: the count of geometric preimages of a point."""
    p = emap.curve.field.p
    n = abs(emap.n)
    while n % p == 0:
        n //= p
    return n * n


class ECCorrespondence:
    """Z-combination of graphs of explicit self-maps and fibres on E x E.

    Terms are keyed by ("g", EMap), ("v", point) or ("h", point); the
    same act / compose / induced-map verbs as over the line apply, with
    composition worked out cycle by cycle instead of by resultants.
    Compositions whose preimage fibres are not fully rational leave the
    lattice this type can express and raise.
    """

    __slots__ = ("curve", "terms")

    def __init__(self, curve, terms=None):
        clean = {}
        for key, n in (terms or {}).items():
            if not n:
                continue
            kind, data = key
            if kind == "g":
                if not isinstance(data, EMap) or data.curve is not curve:
                    raise ValueError("graph terms must be maps of the same curve")
            elif kind in ("v", "h"):
                if not curve.contains(data):
                    raise ValueError("fibre base point does not lie on the curve")
            else:
                raise ValueError(f"unknown term kind {kind!r}")
            clean[key] = clean.get(key, 0) + n
        self.curve = curve
        self.terms = {key: n for key, n in clean.items() if n}

    # -- constructors ------------------------------------------------

    @classmethod
    def graph(cls, curve, phi):
        return cls(curve, {("g", phi): 1})

    @classmethod
    def identity(cls, curve):
        return cls.graph(curve, EMap(curve, 1))

    @classmethod
    def vertical(cls, curve, Q):
        return cls(curve, {("v", Q): 1})

    @classmethod
    def horizontal(cls, curve, Q):
        return cls(curve, {("h", Q): 1})

    # -- group structure ---------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ECCorrespondence) or other.curve is not self.curve:
            return NotImplemented
        out = dict(self.terms)
        for key, n in other.terms.items():
            out[key] = out.get(key, 0) + n
        return ECCorrespondence(self.curve, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ECCorrespondence(self.curve, {k: -n for k, n in self.terms.items()})

    def __rmul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return ECCorrespondence(self.curve, {k: n * m for k, m in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, ECCorrespondence)
            and self.curve is other.curve
            and self.terms == other.terms
        )

    def is_zero(self):
        return not self.terms

    # -- the verbs ----------------------------------------------------

    def act(self, m):
        """Divisors are plain {point: n} dicts on the rational points."""
        cur = self.curve
        out = {}

        def put(P, n):
            if n:
                out[P] = out.get(P, 0) + n
                if not out[P]:
                    del out[P]

        degm = sum(m.values())
        for (kind, data), n in self.terms.items():
            if kind == "g":
                for P, k in m.items():
                    put(data(P), n * k)
            elif kind == "v":
                if m.get(data, 0):
                    raise ValueError(
                        f"non-proper intersection: the correspondence contains the "
                        f"fibre over {cur.point_str(data)}"
                    )
            else:
                put(data, n * degm)
        return out

    def compose(self, other):
        if not isinstance(other, ECCorrespondence) or other.curve is not self.curve:
            raise ValueError("composition needs a common curve")
        cur = self.curve
        terms = {}

        def put(key, n):
            if n:
                terms[key] = terms.get(key, 0) + n

        for (k1, d1), n in self.terms.items():
            for (k2, d2), m in other.terms.items():
                c = n * m
                if k1 == "g" and k2 == "g":
                    put(("g", d1.after(d2)), c)
                elif k1 == "g" and k2 == "v":
                    # the graph covers the source with multiplicity deg
                    put(("v", d2), c * d1.deg)
                elif k1 == "g" and k2 == "h":
                    put(("h", d1(d2)), c)
                elif k1 == "v" and k2 == "g":
                    sols = [P for P in cur.points() if d2(P) == d1]
                    sep = _sep_degree(d2)
                    if len(sols) != sep:
                        raise ValueError(
                            "composition leaves the rational fibre lattice: the "
                            "preimage of the fibre base point is not rational"
                        )
                    for P in sols:
                        put(("v", P), c * (d2.deg // sep))
                elif k1 == "v" and k2 == "h":
                    if d1 == d2:
                        raise ValueError(
                            "improper composition: vertical and horizontal fibres "
                            "share the middle point"
                        )
                elif k1 == "v" and k2 == "v":
                    put(("v", d2), c)
                elif k1 == "h" and k2 == "g":
                    put(("h", d1), c)
                elif k1 == "h" and k2 == "h":
                    put(("h", d1), c)
                # ("h", "v") drops dimension and contributes nothing
        return ECCorrespondence(cur, terms)

    def induced_map(self):
        """Action on Pic^0(E) = E(F_q), tabulated point by point."""
        from .elliptic import ec_reduce

        cur = self.curve
        table = {}
        for P in cur.points():
            m = {P: 1, None: -1} if P is not None else {}
            table[P] = ec_reduce(cur, self.act(m))
        return EllEndo(cur, table)

    def __repr__(self):
        if not self.terms:
            return "0"
        cur = self.curve
        bits = []
        for (kind, data), n in self.terms.items():
            if kind == "g":
                s = f"[graph {data!r}]"
            else:
                name = "vert" if kind == "v" else "horiz"
                s = f"[{name} {cur.point_str(data)}]"
            bits.append(s if n == 1 else f"{n}*{s}")
        return " + ".join(bits).replace("+ -", "- ")
