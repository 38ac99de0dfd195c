"""Chart covers, cocycles and the two Deligne-bundle routes on a
product family pi : P^1 x B -> B.

The base B is the affine line or the projective line over a finite
field; divisors on the total space are bihomogeneous forms in
(x0, x1; y0, y1), kept factored into irreducible components.  The
module builds Cech transition data for such divisors on prescribed
covers, pairs transition cocycles into symbol 2-cocycles in the
bilinear quotient, and pushes a pair (D, E) down to the base along two
independent routes:

* the theta route: local Gersten chains h_alpha whose boundary over
  each base chart is the intersection cycle D.E, differenced into a
  1-cocycle r_ab = h_a - h_b and normed down to B afterwards;

* the norm route: chartwise norms e_alpha = N(h_alpha) taken first,
  with c_ab = e_a/e_b the transition data of the pushed-down bundle.

Both compute the class of O(pi_*(D.E)) in Pic(B).  ``compare_routes``
runs both on one set of local data and checks they agree transition by
transition, which cross-checks the multiplication-matrix determinant
norm against the resultant norm.
"""

import itertools
from functools import lru_cache
from math import gcd

from .biform import BiForm, eliminate_x, irreducible_forms
from .extfield import ExtField
from .intlinalg import solve_left
from .poly import Poly
from .ratfunc import RF, function_field

INFINITY = "inf"


# ---------------------------------------------------------------------------
# divisors on the family
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _known_irreducible(form):
    return form.is_irreducible()


class FamilyDivisor:
    """An effective divisor on P^1 x B, stored factored.

    ``components`` maps canonical irreducible forms to positive
    multiplicities.  When built from a form, the factorization is
    verified by multiplying back; verticality (a component purely in
    the base variables) is always recomputed from the components, never
    trusted from the caller.
    """

    __slots__ = ("field", "components", "_key", "_form")

    def __init__(self, field, components, form=None):
        comps = {}
        for g, m in components.items():
            if m < 0:
                raise ValueError("negative multiplicity in an effective divisor")
            if m == 0:
                continue
            can = g.canonical()[1]
            comps[can] = comps.get(can, 0) + m
        self.field = field
        self.components = comps
        self._key = tuple(sorted((g._key, m) for g, m in comps.items()))
        self._form = None
        if form is not None:
            if self.form().canonical()[1] != form.canonical()[1]:
                raise ValueError("components do not multiply back to the divisor")

    @classmethod
    def of_form(cls, form):
        """Factor a form into its zero divisor."""
        _, parts = form.factor()
        return cls(form.field, parts, form=form)

    @classmethod
    def irreducible(cls, form):
        can = form.canonical()[1]
        if not _known_irreducible(can):
            raise ValueError("form is not irreducible")
        return cls(form.field, {can: 1})

    @classmethod
    def trivial(cls, field):
        return cls(field, {})

    def form(self):
        """The defining form, reassembled from the factorization."""
        if self._form is None:
            prod = BiForm.const(self.field, self.field.one)
            for g, m in sorted(self.components.items(), key=lambda t: t[0]._key):
                prod = prod * g**m
            self._form = prod
        return self._form

    @property
    def bidegree(self):
        a = sum(g.xdeg * m for g, m in self.components.items())
        b = sum(g.ydeg * m for g, m in self.components.items())
        return (a, b)

    @property
    def has_vertical(self):
        return any(g.xdeg == 0 for g in self.components)

    @property
    def is_finite_flat(self):
        """Finite and flat over the base: no vertical components."""
        return not self.has_vertical

    def support(self):
        return sorted(self.components, key=lambda g: g._key)

    def common_components(self, other):
        return [g for g in self.support() if g in other.components]

    def __mul__(self, other):
        if self.field != other.field:
            raise ValueError("divisors over different fields")
        comps = dict(self.components)
        for g, m in other.components.items():
            comps[g] = comps.get(g, 0) + m
        return FamilyDivisor(self.field, comps)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("effective divisors only")
        return FamilyDivisor(self.field, {g: m * n for g, m in self.components.items()})

    def __eq__(self, other):
        return (
            isinstance(other, FamilyDivisor)
            and self.field == other.field
            and self._key == other._key
        )

    def __hash__(self):
        return hash((self.field, self._key))

    def __bool__(self):
        return bool(self.components)

    def to_str(self):
        if not self.components:
            return "0"
        parts = []
        for g in self.support():
            m = self.components[g]
            s = f"({g.to_str()})"
            parts.append(s if m == 1 else f"{m}*{s}")
        return " + ".join(parts)

    def __repr__(self):
        return f"FamilyDivisor[{self.to_str()}]"


def replace_common_components(D, E):
    """Swap every component of D shared with E for a fresh irreducible
    form of the same bidegree (a linearly equivalent divisor on the
    product).  Returns the new divisor and the factored function whose
    divisor is the difference new - old."""
    field = D.field
    shared = D.common_components(E)
    if not shared:
        return D, FactoredFunction.one(field)
    comps = dict(D.components)
    cert = FactoredFunction.one(field)
    for g in shared:
        m = comps.pop(g)
        pool = [
            h
            for h in irreducible_forms(field, g.xdeg, g.ydeg)
            if h not in comps and h not in E.components and h != g
        ]
        if not pool:
            raise ValueError(
                "no linearly equivalent replacement of bidegree "
                f"{g.bidegree} over {field.name}"
            )
        new = pool[0]
        comps[new] = comps.get(new, 0) + m
        cert = cert.mul(FactoredFunction(field, field.one, {new: m, g: -m}))
    return FamilyDivisor(field, comps), cert


# ---------------------------------------------------------------------------
# factored functions: the currency of transition data
# ---------------------------------------------------------------------------


class FactoredFunction:
    """A rational function on the family kept in factored shape: a unit
    of the ground field times a product of canonical irreducible forms
    with integer exponents.  Multiplication, division and equality are
    exact on this shape, which is what transition cocycles need."""

    __slots__ = ("field", "unit", "powers", "_key")

    def __init__(self, field, unit, powers):
        if unit == field.zero:
            raise ZeroDivisionError("zero is not a unit")
        pw = {g: e for g, e in powers.items() if e}
        self.field = field
        self.unit = unit
        self.powers = pw
        self._key = (unit, tuple(sorted((g._key, e) for g, e in pw.items())))

    @classmethod
    def one(cls, field):
        return cls(field, field.one, {})

    @classmethod
    def of_irreducible(cls, form, exp=1):
        unit, can = form.canonical()
        if not _known_irreducible(can):
            raise ValueError("form is not irreducible")
        f = can.field
        return cls(f, f.pow_(unit, exp) if exp != 1 else unit, {can: exp})

    @classmethod
    def from_divisor(cls, D):
        return cls(D.field, D.field.one, dict(D.components))

    def mul(self, other):
        F = self.field
        pw = dict(self.powers)
        for g, e in other.powers.items():
            pw[g] = pw.get(g, 0) + e
        return FactoredFunction(F, F.mul(self.unit, other.unit), pw)

    def div(self, other):
        return self.mul(other.inverse())

    def inverse(self):
        F = self.field
        return FactoredFunction(
            F, F.inv(self.unit), {g: -e for g, e in self.powers.items()}
        )

    def pow_(self, n):
        F = self.field
        return FactoredFunction(
            F, F.pow_(self.unit, n), {g: e * n for g, e in self.powers.items()}
        )

    def is_one(self):
        return not self.powers and self.unit == self.field.one

    def __eq__(self, other):
        return (
            isinstance(other, FactoredFunction)
            and self.field == other.field
            and self._key == other._key
        )

    def __hash__(self):
        return hash((self.field, self._key))

    def to_str(self):
        parts = []
        if self.unit != self.field.one or not self.powers:
            parts.append(self.field.elt_str(self.unit))
        for g in sorted(self.powers, key=lambda g: g._key):
            e = self.powers[g]
            parts.append(f"({g.to_str()})" + (f"^{e}" if e != 1 else ""))
        return "*".join(parts)

    def __repr__(self):
        return self.to_str()


# ---------------------------------------------------------------------------
# covers of the total space
# ---------------------------------------------------------------------------


class XChart:
    """A chart of P^1 x B: the complement of finitely many prescribed
    irreducible pure forms (fibres of the projection to either factor).
    The excluded forms are invertible on the chart."""

    __slots__ = ("label", "excluded")

    def __init__(self, label, excluded):
        forms = []
        for s in excluded:
            can = s.canonical()[1]
            if can.xdeg and can.ydeg:
                raise ValueError(
                    "chart exclusions must be fibres of a projection, "
                    f"got {can.to_str()}"
                )
            if not _known_irreducible(can):
                raise ValueError(f"excluded form {can.to_str()} is not irreducible")
            forms.append(can)
        self.label = label
        self.excluded = tuple(forms)

    def __repr__(self):
        return f"XChart({self.label})"


class XCover:
    """A finite cover of P^1 x B by complements of pure forms; checks
    at construction that the excluded loci have empty common
    intersection, so the charts really cover."""

    __slots__ = ("field", "charts", "_key")

    def __init__(self, field, charts):
        self.field = field
        self.charts = tuple(charts)
        self._key = tuple((c.label, tuple(g._key for g in c.excluded)) for c in charts)
        self._verify_covering()

    def _verify_covering(self):
        # a point missed by every chart lies on one excluded form per
        # chart; such a tuple has empty common zero locus exactly when
        # it contains two distinct forms from the same projection
        # (distinct fibres are disjoint).
        pools = [c.excluded for c in self.charts]
        if not pools or any(not p for p in pools):
            raise ValueError("charts do not cover the family")
        count = 1
        for p in pools:
            count *= len(p)
        if count > 4096:
            raise ValueError("cover too large to certify")
        for pick in itertools.product(*pools):
            ok = False
            forms = set(pick)
            xs = [g for g in forms if g.ydeg == 0]
            ys = [g for g in forms if g.xdeg == 0]
            if len(xs) >= 2 or len(ys) >= 2:
                ok = True
            if not ok:
                raise ValueError("charts do not cover the family")

    def __len__(self):
        return len(self.charts)

    def __eq__(self, other):
        return (
            isinstance(other, XCover)
            and self.field == other.field
            and self._key == other._key
        )

    def __hash__(self):
        return hash((self.field, self._key))

    def __repr__(self):
        return f"XCover({', '.join(c.label for c in self.charts)})"


def standard_cover(field):
    """The four bi-affine charts {x_s != 0, y_t != 0} of P^1 x P^1."""
    x0, x1 = BiForm.x0(field), BiForm.x1(field)
    y0, y1 = BiForm.y0(field), BiForm.y1(field)
    charts = [
        XChart("x0y0", (x0, y0)),
        XChart("x0y1", (x0, y1)),
        XChart("x1y0", (x1, y0)),
        XChart("x1y1", (x1, y1)),
    ]
    return XCover(field, charts)


@lru_cache(maxsize=None)
def _cover_avoiding(field, used):
    xs = [g for g in irreducible_forms(field, 1, 0) if g not in used]
    ys = [g for g in irreducible_forms(field, 0, 1) if g not in used]
    if len(xs) < 2 or len(ys) < 2:
        raise ValueError(f"no adapted product cover over {field.name}")
    charts = [
        XChart("A", (xs[0], ys[0])),
        XChart("B", (xs[0], ys[1])),
        XChart("C", (xs[1], ys[0])),
        XChart("D", (xs[1], ys[1])),
    ]
    return XCover(field, charts)


def cover_avoiding(field, *divisors):
    """A four-chart product cover whose excluded fibres are not
    components of any of the given divisors."""
    used = set()
    for D in divisors:
        used.update(D.components)
    return _cover_avoiding(field, frozenset(used))


# ---------------------------------------------------------------------------
# line bundle transition cocycles
# ---------------------------------------------------------------------------


class LineBundleCocycle:
    """Transition data {a_ij = f_i/f_j} of O(D) on a chart cover, as
    factored functions.  Entries are stored for i < j; the cocycle law
    and invertibility on overlaps are verified at construction."""

    __slots__ = ("cover", "divisor", "local_eqs", "entries")

    def __init__(self, cover, divisor, local_eqs):
        self.cover = cover
        self.divisor = divisor
        self.local_eqs = tuple(local_eqs)
        n = len(cover.charts)
        self.entries = {}
        for i in range(n):
            for j in range(i + 1, n):
                a = local_eqs[i].div(local_eqs[j])
                allowed = set(cover.charts[i].excluded) | set(cover.charts[j].excluded)
                for g in a.powers:
                    if g not in allowed:
                        raise AssertionError(
                            f"transition {cover.charts[i].label}|"
                            f"{cover.charts[j].label} is not a unit on the overlap"
                        )
                self.entries[(i, j)] = a
        for i, j, k in itertools.combinations(range(n), 3):
            if self.entries[(i, j)].mul(self.entries[(j, k)]) != self.entries[(i, k)]:
                raise AssertionError("cocycle law fails")

    def entry(self, i, j):
        if i == j:
            return FactoredFunction.one(self.cover.field)
        if i < j:
            return self.entries[(i, j)]
        return self.entries[(j, i)].inverse()

    def __mul__(self, other):
        if self.cover != other.cover:
            raise ValueError("cocycle cover mismatch")
        eqs = [f.mul(g) for f, g in zip(self.local_eqs, other.local_eqs)]
        return LineBundleCocycle(self.cover, self.divisor * other.divisor, eqs)

    def __repr__(self):
        return f"LineBundleCocycle[{self.divisor.to_str()}]"


def cocycle_of_divisor(D, cover):
    """Local equations and transition data for O(D) on the cover.

    On a chart excluding the pure forms s_1..s_r, the local equation is
    F_D times a monomial in the s_k chosen so the bidegrees cancel; D
    must have bidegree in the integer span of the excluded bidegrees
    (that is what principality on the chart amounts to here), and no
    component of D may be an excluded form of any chart.
    """
    if D.field != cover.field:
        raise ValueError("divisor and cover over different fields")
    f_D = FactoredFunction.from_divisor(D)
    a, b = D.bidegree
    eqs = []
    for chart in cover.charts:
        for s in chart.excluded:
            if s in D.components:
                raise ValueError(
                    f"component {s.to_str()} of the divisor is excluded on "
                    f"chart {chart.label}; use a cover avoiding the divisor "
                    "or a linearly equivalent divisor"
                )
        exc = chart.excluded
        if (
            len(exc) == 2
            and exc[0].ydeg == 0
            and exc[1].xdeg == 0
            and a % exc[0].xdeg == 0
            and b % exc[1].ydeg == 0
        ):
            exps = [a // exc[0].xdeg, b // exc[1].ydeg]
        else:
            rows = [[s.xdeg, s.ydeg] for s in exc]
            exps = solve_left(rows, [a, b])
            if exps is None:
                raise ValueError(
                    f"divisor of bidegree {(a, b)} is not principal on "
                    f"chart {chart.label}"
                )
        denom = FactoredFunction(
            cover.field,
            cover.field.one,
            {s: e for s, e in zip(exc, exps)},
        )
        eqs.append(f_D.div(denom))
    return LineBundleCocycle(cover, D, eqs)


class RestrictedCocycle:
    """Transition data of a line bundle pulled back to a divisor: the
    same factored entries, remembered together with the divisor and
    which ambient charts the divisor actually meets."""

    __slots__ = ("base", "divisor", "meets")

    def __init__(self, base, divisor, meets):
        self.base = base
        self.divisor = divisor
        self.meets = meets

    def entry(self, i, j):
        return self.base.entry(i, j)

    def __repr__(self):
        return f"RestrictedCocycle[{self.base.divisor.to_str()} | {self.divisor.to_str()}]"


def restrict_cocycle(coc, D):
    """Restrict the transition data of O(E) to the divisor D.

    Requires D and E to share no component, and every chart that D
    meets to keep its excluded forms out of D (otherwise some factor of
    the data vanishes along a component of D on that chart); charts
    that D misses entirely are exempt.
    """
    E = coc.divisor
    shared = D.common_components(E)
    if shared:
        raise ValueError(
            f"the divisors share the component {shared[0].to_str()}; choose "
            "a linearly equivalent divisor (replace_common_components)"
        )
    meets = []
    for chart in coc.cover.charts:
        empty = all(g in chart.excluded for g in D.components)
        meets.append(not empty or not D.components)
        if empty:
            continue
        for s in chart.excluded:
            if s in D.components:
                raise ValueError(
                    f"excluded form {s.to_str()} of chart {chart.label} is a "
                    "component of the divisor; choose a linearly equivalent "
                    "divisor (replace_common_components)"
                )
    return RestrictedCocycle(coc, D, tuple(meets))


# ---------------------------------------------------------------------------
# symbol 2-cocycles in the bilinear quotient
# ---------------------------------------------------------------------------

_ATOM_IDS = {}
_ATOM_ORDERS = []
_ATOM_NAMES = []


def _atom(key, order, name):
    aid = _ATOM_IDS.get(key)
    if aid is None:
        aid = len(_ATOM_ORDERS)
        _ATOM_IDS[key] = aid
        _ATOM_ORDERS.append(order)
        _ATOM_NAMES.append(name)
    return aid


def _unit_atom(field):
    return _atom(("u", field), field.q - 1, f"u[{field.name}]")


def _form_atom(form):
    return _atom(("f", form), 0, form.to_str())


class FamilySymbolSum:
    """An element of the bilinear symbol group of the family: a formal
    sum of pairs {f, g} of factored functions, expanded bilinearly over
    the alphabet of irreducible forms together with a generator of the
    unit group, whose coefficient is cyclic of order q - 1.

    This is the bilinear quotient in which the boundary identity
    lambda + cup = 0 is checked: symbols are treated as biadditive with
    no Steinberg relation imposed."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms):
        out = {}
        for key, c in terms.items():
            m = gcd(_ATOM_ORDERS[key[0]], _ATOM_ORDERS[key[1]])
            c = c % m if m else c
            if c:
                out[key] = c
        self.field = field
        self.terms = out

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def symbol(cls, f, g):
        """The bilinear expansion of {f, g}."""
        field = f.field
        if not getattr(field, "is_finite", False):
            raise ValueError("symbol calculus needs a finite ground field")
        terms = {}
        for ia, ea in _atom_list(f):
            for ib, eb in _atom_list(g):
                key = (ia, ib)
                terms[key] = terms.get(key, 0) + ea * eb
        return cls(field, terms)

    def add(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return FamilySymbolSum(self.field, terms)

    def neg(self):
        return FamilySymbolSum(self.field, {k: -c for k, c in self.terms.items()})

    def sub(self, other):
        return self.add(other.neg())

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, FamilySymbolSum)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.terms.items()))))

    def to_str(self):
        if not self.terms:
            return "0"
        bits = []
        for (ia, ib), c in sorted(self.terms.items()):
            s = f"{{{_ATOM_NAMES[ia]}, {_ATOM_NAMES[ib]}}}"
            bits.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(bits)

    def __repr__(self):
        return self.to_str()


def _atom_list(f):
    out = []
    if f.unit != f.field.one:
        out.append((_unit_atom(f.field), f.field.dlog(f.unit)))
    for g, e in f.powers.items():
        out.append((_form_atom(g), e))
    return out


class SymbolCocycle:
    """A Cech 2-cochain of symbol sums on a cover of the family,
    stored on increasing triples."""

    __slots__ = ("cover", "entries")

    def __init__(self, cover, entries):
        self.cover = cover
        self.entries = dict(entries)

    def entry(self, i, j, k):
        return self.entries.get(
            (i, j, k), FamilySymbolSum.zero(self.cover.field)
        )

    def add(self, other):
        if self.cover != other.cover:
            raise ValueError("cocycle cover mismatch")
        keys = set(self.entries) | set(other.entries)
        return SymbolCocycle(
            self.cover, {k: self.entry(*k).add(other.entry(*k)) for k in keys}
        )

    def neg(self):
        return SymbolCocycle(self.cover, {k: v.neg() for k, v in self.entries.items()})

    def sub(self, other):
        return self.add(other.neg())

    def is_zero(self):
        return all(v.is_zero() for v in self.entries.values())

    def verify_cocycle(self):
        """The Cech boundary on every increasing 4-tuple vanishes."""
        n = len(self.cover.charts)
        for i, j, k, l in itertools.combinations(range(n), 4):
            d = (
                self.entry(j, k, l)
                .sub(self.entry(i, k, l))
                .add(self.entry(i, j, l))
                .sub(self.entry(i, j, k))
            )
            if not d.is_zero():
                return False
        return True

    def __repr__(self):
        return f"SymbolCocycle[{len(self.entries)} triples]"


def cup_cocycle(A, B):
    """The cup product of two transition cocycles: the 2-cochain
    (i, j, k) -> {a_ij, b_jk}, a 2-cocycle in the bilinear quotient."""
    if A.cover != B.cover:
        raise ValueError("cocycle cover mismatch")
    n = len(A.cover.charts)
    entries = {}
    for i, j, k in itertools.combinations(range(n), 3):
        entries[(i, j, k)] = FamilySymbolSum.symbol(
            A.entries[(i, j)], B.entries[(j, k)]
        )
    out = SymbolCocycle(A.cover, entries)
    if not out.verify_cocycle():
        raise AssertionError("cup product is not a 2-cocycle")
    return out


def lambda_boundary(Bbar, D, cover):
    """The boundary of the chain t_ij = {f_i, b_ij}, where the f_i cut
    out D and the b_ij are the restricted transition data of the other
    bundle: (i, j, k) -> t_jk - t_ik + t_ij.

    In the bilinear quotient this equals minus the cup product of the
    two transition cocycles, which is the identity the tests pin down.
    """
    if Bbar.base.cover != cover:
        raise ValueError("cocycle cover mismatch")
    if Bbar.divisor != D:
        raise ValueError("restriction is to a different divisor")
    shared = D.common_components(Bbar.base.divisor)
    if shared:
        raise ValueError(
            f"the divisors share the component {shared[0].to_str()}"
        )
    f = cocycle_of_divisor(D, cover).local_eqs
    n = len(cover.charts)
    t = {}
    for i in range(n):
        for j in range(i + 1, n):
            t[(i, j)] = FamilySymbolSum.symbol(f[i], Bbar.entry(i, j))
    entries = {}
    for i, j, k in itertools.combinations(range(n), 3):
        entries[(i, j, k)] = t[(j, k)].sub(t[(i, k)]).add(t[(i, j)])
    return SymbolCocycle(cover, entries)


# ---------------------------------------------------------------------------
# covers of the base
# ---------------------------------------------------------------------------


class BChart:
    """A chart of the base: the complement of the zero locus of a monic
    polynomial s(y) (s = 1 is allowed on the affine line); on the
    projective line, the complement of a single rational point, with
    s = y - gamma, or s = 1 for the chart missing only infinity."""

    __slots__ = ("label", "s", "removed")

    def __init__(self, field, removed=None, s=None, label=None):
        if removed is not None:
            if removed == INFINITY:
                s = Poly.one(field)
            else:
                removed = field.coerce(removed)
                s = Poly(field, [field.neg(removed), field.one])
            label = label or f"V({INFINITY if removed == INFINITY else field.elt_str(removed)})"
        else:
            if s is None or s.is_zero() or not s.is_monic():
                raise ValueError("chart needs a monic polynomial")
            label = label or f"V[{s.to_str('y')}]"
        self.label = label
        self.s = s
        self.removed = removed

    def __repr__(self):
        return f"BChart({self.label})"


class BCover:
    """A cover of the base by complements of closed sets.  For the
    projective line the charts remove single rational points and cover
    exactly when at least two distinct points are removed; for the
    affine line the removed loci are zero sets of monic polynomials and
    covering means their gcd is 1."""

    __slots__ = ("field", "kind", "charts")

    def __init__(self, field, kind, charts):
        if kind not in ("P1", "A1"):
            raise ValueError("base must be P1 or A1")
        self.field = field
        self.kind = kind
        self.charts = tuple(charts)
        if kind == "P1":
            removed = {c.removed for c in charts}
            if any(r is None for r in removed) or len(removed) < 2:
                raise ValueError("charts do not cover the base")
        else:
            if any(c.removed == INFINITY for c in charts):
                raise ValueError("the affine line has no chart at infinity")
            g = None
            for c in charts:
                g = c.s if g is None else g.gcd(c.s)
            if g is None or g.deg != 0:
                raise ValueError("charts do not cover the base")

    def __len__(self):
        return len(self.charts)

    def __repr__(self):
        return f"BCover({self.kind}; {', '.join(c.label for c in self.charts)})"


def p1_cover(field, points=(INFINITY, 0, 1)):
    return BCover(
        field, "P1", [BChart(field, removed=p) for p in points]
    )


def a1_cover(field, polys=None):
    if polys is None:
        polys = [Poly.one(field), Poly.x(field), Poly.of(field, [-1, 1])]
    return BCover(field, "A1", [BChart(field, s=s) for s in polys])


# ---------------------------------------------------------------------------
# the theta route and the norm route
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _component_data(form):
    """Residue-field presentation of an irreducible horizontal form:
    (a, b, phi, monic defining polynomial over F_q(y), the extension).

    phi is the restriction of the form to the section at x = infinity;
    it is nonzero exactly when the form is not that section, which the
    gauge step guarantees."""
    F = form.field
    FF = function_field(F)
    a, b = form.bidegree
    rows = form.x_rows()
    phi = rows[a]
    lead = RF(phi)
    fcheck = Poly(FF, [FF.div(RF(r), lead) for r in rows])
    K = ExtField(FF, fcheck)
    return a, b, phi, fcheck, K


def _gauge_matrix(W):
    """The fibre substitution sending the hyperplane form W to x1."""
    field = W.field
    w0 = W.coeffs.get((1, 0), field.zero)
    w1 = W.coeffs.get((0, 0), field.zero)
    if w1 != field.zero:
        return (w1, field.zero, field.neg(w0), field.one)
    return (field.zero, field.one, field.neg(field.one), field.zero)


def _hyperplane_gauge(D, E):
    """A coordinate change in the fibre putting both divisors off the
    section at x = infinity, or None when they already are."""
    field = D.field
    x1 = BiForm.x1(field)
    if x1 not in D.components and x1 not in E.components:
        return None
    for W in irreducible_forms(field, 1, 0):
        if W not in D.components and W not in E.components:
            return _gauge_matrix(W)
    raise ValueError(f"no admissible coordinate gauge over {field.name}")


def _apply_gauge(D, gauge):
    comps = {}
    for g, m in D.components.items():
        h = g.subs_x(*gauge).canonical()[1]
        comps[h] = m
    return FamilyDivisor(D.field, comps)


class GerstenChain:
    """A chartwise chain for the pair (D, E): one unit of the residue
    field of each component of D, plus a rational function on the
    section at x = infinity that books the part of D.E lying there."""

    __slots__ = ("desk", "entries", "hinf")

    def __init__(self, desk, entries, hinf):
        self.desk = desk
        self.entries = tuple(entries)
        self.hinf = hinf

    def div(self, other):
        desk = self.desk
        entries = [
            K.mul(a, K.inv(b))
            for K, a, b in zip(desk.fields, self.entries, other.entries)
        ]
        return GerstenChain(desk, entries, desk.FF.div(self.hinf, other.hinf))

    def mul(self, other):
        desk = self.desk
        entries = [
            K.mul(a, b) for K, a, b in zip(desk.fields, self.entries, other.entries)
        ]
        return GerstenChain(desk, entries, desk.FF.mul(self.hinf, other.hinf))

    def __eq__(self, other):
        return (
            isinstance(other, GerstenChain)
            and self.entries == other.entries
            and self.hinf == other.hinf
        )

    def __repr__(self):
        desk = self.desk
        bits = [
            f"{g.to_str()}: {K.elt_str(e)}"
            for (g, _), K, e in zip(desk.comps, desk.fields, self.entries)
        ]
        bits.append(f"x=inf: {desk.FF.elt_str(self.hinf)}")
        return "GerstenChain[" + "; ".join(bits) + "]"


class _Desk:
    """Shared per-pair state for the two routes: gauged components,
    residue fields, the reductions of E's equation, chart data."""

    def __init__(self, D, E, cover):
        field = D.field
        if E.field != field or cover.field != field:
            raise ValueError("divisor/cover field mismatch")
        if D.has_vertical:
            bad = next(g for g in D.support() if g.xdeg == 0)
            raise ValueError(
                f"divisor is not finite over the base (vertical component "
                f"{bad.to_str()})"
            )
        shared = D.common_components(E)
        if shared:
            raise ValueError(
                f"the divisors share the component {shared[0].to_str()}; "
                "choose a linearly equivalent divisor "
                "(replace_common_components)"
            )
        gauge = _hyperplane_gauge(D, E)
        Dg = _apply_gauge(D, gauge) if gauge else D
        Eg = _apply_gauge(E, gauge) if gauge else E
        self.field = field
        self.cover = cover
        self.gauge = gauge
        self.D, self.E = D, E
        FF = function_field(field)
        self.FF = FF
        self.comps = sorted(Dg.components.items(), key=lambda t: t[0]._key)
        self.fields = []
        data = []
        for g, _ in self.comps:
            a, b, phi, fcheck, K = _component_data(g)
            data.append((a, b, phi, fcheck, K))
            self.fields.append(K)
        G = Eg.form()
        self.c, self.d = G.bidegree
        GFF = Poly(FF, [RF(r) for r in G.x_rows()])
        self.g = []
        for (g_form, mult), (a, b, phi, fcheck, K) in zip(self.comps, data):
            gm = K.project(GFF)
            if K.is_zero_elt(gm):
                raise AssertionError("component divides the other divisor")
            self.g.append(gm)
        self.data = data
        self.Gform = G
        self.DE = sum(
            m * (a * self.d + b * self.c) for (_, m), (a, b, _, _, _) in zip(self.comps, data)
        )
        self._chains = None
        self._pairs = None
        self._check_boundaries()
        # chart quantities: s, s^d, and the compensation unit at x = inf
        self.s = [ch.s for ch in cover.charts]
        self.u = []
        for s in self.s:
            srf = RF(s)
            u = FF.one
            if self.c:
                for (g_form, mult), (a, b, phi, _, _) in zip(self.comps, data):
                    term = FF.div(RF(phi), FF.pow_(srf, b))
                    u = FF.mul(u, FF.pow_(term, self.c * mult))
            self.u.append(u)

    def _check_boundaries(self):
        """The boundary of each local chain is the intersection cycle:
        componentwise, the resultant of the two forms eliminating the
        fibre variable agrees with the determinant norm of E's reduced
        equation times the lead compensation, up to a nonzero constant
        (equality of pushed-forward cycles, by two unrelated engines)."""
        FF = self.FF
        self.resultants = []
        for (g_form, mult), (a, b, phi, fcheck, K), gm in zip(
            self.comps, self.data, self.g
        ):
            R = RF(eliminate_x(g_form, self.Gform).univariate())
            self.resultants.append(R)
            rhs = FF.mul(FF.pow_(RF(phi), self.c), K.norm(gm))
            ratio = FF.div(R, rhs)
            if ratio.num.deg != 0 or ratio.den.deg != 0:
                raise AssertionError(
                    "local chain boundary does not match the intersection "
                    f"cycle on component {g_form.to_str()}"
                )

    def chain(self, idx):
        """h_alpha: E's equation restricted to each component of D and
        renormalized by s_alpha, plus the x = infinity compensation."""
        FF = self.FF
        srf = RF(self.s[idx])
        entries = []
        for gm, K in zip(self.g, self.fields):
            if self.d:
                entries.append(K.scale(gm, FF.pow_(srf, -self.d)))
            else:
                entries.append(gm)
        return GerstenChain(self, entries, self.u[idx])

    def chains(self):
        if self._chains is None:
            self._chains = [self.chain(i) for i in range(len(self.cover.charts))]
        return self._chains

    def pair_chains(self):
        """r_ab = h_a - h_b on increasing pairs, with the cocycle
        identity of the differences checked once."""
        if self._pairs is None:
            chains = self.chains()
            n = len(chains)
            invs = [
                [K.inv(e) for K, e in zip(self.fields, ch.entries)] for ch in chains
            ]
            pairs = {}
            for i in range(n):
                for j in range(i + 1, n):
                    entries = [
                        K.mul(a, b)
                        for K, a, b in zip(self.fields, chains[i].entries, invs[j])
                    ]
                    hinf = self.FF.div(chains[i].hinf, chains[j].hinf)
                    pairs[(i, j)] = GerstenChain(self, entries, hinf)
            for i, j, k in itertools.combinations(range(n), 3):
                if pairs[(i, j)].mul(pairs[(j, k)]) != pairs[(i, k)]:
                    raise AssertionError("chain cocycle identity fails")
            self._pairs = pairs
        return self._pairs

    def route_a(self):
        """Difference first, then norm: the determinant-of-multiplication
        norm of each chain quotient, one rational function per pair."""
        FF = self.FF
        out = {}
        for (i, j), r in self.pair_chains().items():
            e = r.hinf
            for (g_form, mult), K, ent in zip(self.comps, self.fields, r.entries):
                e = FF.mul(e, FF.pow_(K.norm(ent), mult))
            out[(i, j)] = e
        return out, self.chains()

    def route_b(self):
        """Norm first, then difference: the chartwise norm e_alpha is
        the product of the resultants eliminating the fibre variable,
        renormalized by s_alpha to the intersection number; transitions
        are e_alpha / e_beta."""
        FF = self.FF
        n = len(self.cover.charts)
        R = FF.one
        for (g_form, mult), res in zip(self.comps, self.resultants):
            R = FF.mul(R, FF.pow_(res, mult))
        es = []
        for idx in range(n):
            e = FF.div(R, FF.pow_(RF(self.s[idx]), self.DE)) if self.DE else R
            es.append(e)
        out = {}
        for i in range(n):
            for j in range(i + 1, n):
                out[(i, j)] = FF.div(es[i], es[j])
        return out, es


def _verify_base_cocycle(cover, entries):
    n = len(cover.charts)
    FF = function_field(cover.field)
    for i, j, k in itertools.combinations(range(n), 3):
        if FF.mul(entries[(i, j)], entries[(j, k)]) != entries[(i, k)]:
            raise AssertionError("transition data on the base is not a cocycle")


def _valuation_at(rf, gamma):
    field = rf.num.field
    lin = Poly(field, [field.neg(gamma), field.one])

    def count(p):
        v = 0
        while not p.is_zero():
            q, r = divmod(p, lin)
            if not r.is_zero():
                break
            p = q
            v += 1
        return v

    return count(rf.num) - count(rf.den)


def _class_degree(cover, entries):
    """Degree in Pic of the base of a transition cocycle.

    On the projective line, the entry c_ij is invertible away from the
    two removed points, so its valuation at the point chart j removes
    is the degree; the affine line has trivial Picard group."""
    if cover.kind == "A1":
        return 0
    n = len(cover.charts)
    for i in range(n):
        for j in range(n):
            if i == j or cover.charts[i].removed == cover.charts[j].removed:
                continue
            if cover.charts[j].removed != INFINITY:
                c = (
                    entries[(i, j)]
                    if i < j
                    else function_field(cover.field).inv(entries[(j, i)])
                )
                return _valuation_at(c, cover.charts[j].removed)
    raise AssertionError("no finite removed point on the base cover")


class ThetaCocycle:
    """The 1-cocycle of chain differences r_ab = h_a - h_b over a base
    cover (written multiplicatively), together with the local chains."""

    __slots__ = ("cover", "divisor", "bundle_divisor", "chains", "pairs", "_desk")

    def __init__(self, desk):
        self._desk = desk
        self.cover = desk.cover
        self.divisor = desk.D
        self.bundle_divisor = desk.E
        self.chains = desk.chains()
        self.pairs = desk.pair_chains()

    def entry(self, i, j):
        if i < j:
            return self.pairs[(i, j)]
        raise KeyError("entries stored on increasing pairs")

    def __repr__(self):
        return f"ThetaCocycle[{self.divisor.to_str()} ; {self.bundle_divisor.to_str()}]"


class BundleClass:
    """A line bundle on the base presented by a transition cocycle,
    with its degree (zero on the affine line, where every bundle is
    trivial); chart_data holds chartwise trivializing functions when
    the construction produced them."""

    __slots__ = ("cover", "entries", "degree", "chart_data")

    def __init__(self, cover, entries, degree, chart_data=None):
        self.cover = cover
        self.entries = entries
        self.degree = degree
        self.chart_data = chart_data

    def __repr__(self):
        return f"BundleClass[deg {self.degree} on {self.cover.kind}]"


def theta_cocycle(D, E, cover=None):
    """Local chains for (D, E) over a base cover and their differences.

    D must be finite over the base and share no component with E.  The
    boundary of each chain is the intersection cycle D.E over its
    chart, which is checked componentwise through resultants.
    """
    if cover is None:
        cover = p1_cover(D.field)
    return ThetaCocycle(_Desk(D, E, cover))


def norm_pushforward(theta):
    """Norm a chain-difference cocycle down to the base and read off
    the bundle class (the theta route, finished by the determinant
    norm)."""
    desk = theta._desk
    entries, _ = desk.route_a()
    _verify_base_cocycle(desk.cover, entries)
    degree = _class_degree(desk.cover, entries)
    return BundleClass(desk.cover, entries, degree)


def deligne_norm_family(D, E, cover=None):
    """The norm route: chartwise resultant norms of E's equation along
    D, differenced into transition data on the base."""
    if cover is None:
        cover = p1_cover(D.field)
    desk = _Desk(D, E, cover)
    entries, es = desk.route_b()
    _verify_base_cocycle(desk.cover, entries)
    degree = _class_degree(desk.cover, entries)
    return BundleClass(desk.cover, entries, degree, chart_data=tuple(es))


def compare_routes(D, E, cover=None, alt_gauge=None):
    """Run both routes on one set of local data and compare.

    The theta-route and norm-route transition cocycles must agree
    entry by entry (determinant norms against resultant norms), and
    their classes must coincide.  The report carries both cocycle
    tables and the comparing coboundary; with ``alt_gauge`` (a
    horizontal hyperplane form admissible for the pair) the norm route
    is recomputed in that gauge and the coboundary relating the two
    gauges is emitted instead.
    """
    if cover is None:
        cover = p1_cover(D.field)
    desk = _Desk(D, E, cover)
    theta = ThetaCocycle(desk)
    a_entries, _ = desk.route_a()
    b_entries, es = desk.route_b()
    _verify_base_cocycle(cover, a_entries)
    _verify_base_cocycle(cover, b_entries)
    FF = desk.FF
    for key in a_entries:
        if a_entries[key] != b_entries[key]:
            i, j = key
            raise AssertionError(
                "routes disagree on the chart pair "
                f"{cover.charts[i].label}|{cover.charts[j].label}"
            )
    deg_a = _class_degree(cover, a_entries)
    deg_b = _class_degree(cover, b_entries)
    if deg_a != deg_b:
        raise AssertionError("routes disagree on the bundle class")
    labels = [c.label for c in cover.charts]
    if alt_gauge is not None:
        can = alt_gauge.canonical()[1]
        if can.bidegree != (1, 0):
            raise ValueError("gauge must be a horizontal hyperplane form")
        if can in D.components or can in E.components:
            raise ValueError("gauge form lies on the divisors")
        gauge = _gauge_matrix(can)
        desk2 = _Desk(_apply_gauge(D, gauge), _apply_gauge(E, gauge), cover)
        b2_entries, es2 = desk2.route_b()
        cob = [FF.div(e1, e2) for e1, e2 in zip(es, es2)]
        for (i, j) in b_entries:
            lhs = FF.div(b_entries[(i, j)], b2_entries[(i, j)])
            rhs = FF.div(cob[i], cob[j])
            if lhs != rhs:
                raise AssertionError("gauge coboundary does not compare the routes")
    else:
        cob = [FF.one for _ in labels]
    report = {
        "base": cover.kind,
        "charts": labels,
        "class_degree": deg_a,
        "theta_route_degree": deg_a,
        "norm_route_degree": deg_b,
        "gauge": "x1" if desk.gauge is None else "moved",
        "cocycle": {
            f"{labels[i]}|{labels[j]}": FF.elt_str(a_entries[(i, j)])
            for (i, j) in sorted(a_entries)
        },
        "norm_cocycle": {
            f"{labels[i]}|{labels[j]}": FF.elt_str(b_entries[(i, j)])
            for (i, j) in sorted(b_entries)
        },
        "coboundary": {labels[i]: FF.elt_str(c) for i, c in enumerate(cob)},
    }
    return report


def intersection_number(D, E):
    """Total intersection multiplicity of two divisors with no common
    component, as the degree of the resultant eliminating the fibre
    variable (computed componentwise)."""
    total = 0
    for g, m in D.components.items():
        for h, k in E.components.items():
            if g == h:
                raise ValueError(
                    f"the divisors share the component {g.to_str()}"
                )
            R = eliminate_x(g, h)
            if R.is_zero:
                raise ValueError(
                    "vanishing resultant: components "
                    f"{g.to_str()} and {h.to_str()} are not transverse"
                )
            total += m * k * R.ydeg
    return total
