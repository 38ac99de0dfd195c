"""Bihomogeneous forms on P^1 x P^1 over a finite field.

A form of bidegree (a, b) is stored sparsely as ``{(i, j): c}`` where the
key ``(i, j)`` stands for the monomial ``x0^i x1^(a-i) y0^j y1^(b-j)``.
Forms are immutable and hashable so they can serve as dictionary keys
(divisor components, symbol atoms).  The module also provides exact
factorisation into irreducible forms and the resultants eliminating one
projective pair of variables.
"""

from functools import lru_cache
from itertools import combinations

from .gfield import gf
from .poly import Poly
from .ratfunc import function_field

# Above this many coefficient vectors we refuse to enumerate a full table
# of forms and use lifting-based factorisation instead.
_TABLE_CAP = 100_000


class BiForm:
    __slots__ = ("field", "xdeg", "ydeg", "coeffs", "_key", "_hash")

    def __init__(self, field, xdeg, ydeg, coeffs):
        if xdeg < 0 or ydeg < 0:
            raise ValueError("negative bidegree")
        clean = {}
        for (i, j), c in coeffs.items():
            if not (0 <= i <= xdeg and 0 <= j <= ydeg):
                raise ValueError("monomial outside the declared bidegree")
            if c != field.zero:
                clean[(i, j)] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "xdeg", xdeg)
        object.__setattr__(self, "ydeg", ydeg)
        object.__setattr__(self, "coeffs", clean)
        key = (xdeg, ydeg, tuple(sorted(clean.items())))
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, name, value):
        raise AttributeError("BiForm is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def of(cls, field, xdeg, ydeg, entries):
        return cls(field, xdeg, ydeg,
                   {k: field.coerce(c) for k, c in entries.items()})

    @classmethod
    def const(cls, field, c):
        return cls(field, 0, 0, {(0, 0): field.coerce(c)})

    @classmethod
    def x0(cls, field):
        return cls(field, 1, 0, {(1, 0): field.one})

    @classmethod
    def x1(cls, field):
        return cls(field, 1, 0, {(0, 0): field.one})

    @classmethod
    def y0(cls, field):
        return cls(field, 0, 1, {(0, 1): field.one})

    @classmethod
    def y1(cls, field):
        return cls(field, 0, 1, {(0, 0): field.one})

    @classmethod
    def diagonal(cls, field):
        """x0*y1 - x1*y0, the graph of the identity map."""
        return cls(field, 1, 1,
                   {(1, 0): field.one, (0, 1): field.neg(field.one)})

    @classmethod
    def from_x_rows(cls, field, xdeg, ydeg, rows):
        """Build a form from dehomogenised rows: ``rows[i]`` is the Poly in
        y multiplying x0^i x1^(xdeg-i) after rehomogenising by ydeg."""
        coeffs = {}
        for i, r in enumerate(rows):
            if r.deg > ydeg:
                raise ValueError("row degree exceeds the declared y-degree")
            for j, c in enumerate(r.coeffs):
                if c != field.zero:
                    coeffs[(i, j)] = c
        return cls(field, xdeg, ydeg, coeffs)

    @classmethod
    def from_y_cols(cls, field, xdeg, ydeg, cols):
        coeffs = {}
        for j, p in enumerate(cols):
            if p.deg > xdeg:
                raise ValueError("column degree exceeds the declared x-degree")
            for i, c in enumerate(p.coeffs):
                if c != field.zero:
                    coeffs[(i, j)] = c
        return cls(field, xdeg, ydeg, coeffs)

    @classmethod
    def from_graph(cls, field, phi):
        """The graph ``x = phi(y)`` of a polynomial self-map of P^1, as the
        form x0*y1^d - x1*Phi(y0,y1) of bidegree (1, d)."""
        d = phi.deg if phi.deg > 0 else 0
        coeffs = {(1, 0): field.one}
        for j, c in enumerate(phi.coeffs):
            if c != field.zero:
                coeffs[(0, j)] = field.neg(c)
        return cls(field, 1, d, coeffs)

    @classmethod
    def vertical(cls, field, p, deg=None):
        """The fibre form with dehomogenisation p(y); passing deg > p.deg
        rehomogenises with an extra y1-power (e.g. p = 1, deg = 1 is the
        fibre over y = infinity)."""
        d = p.deg if deg is None else deg
        return cls.from_x_rows(field, 0, d, [p])

    @classmethod
    def horizontal(cls, field, p, deg=None):
        d = p.deg if deg is None else deg
        return cls.from_y_cols(field, d, 0, [p])

    # -- basic structure --------------------------------------------

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def bidegree(self):
        return (self.xdeg, self.ydeg)

    def __eq__(self, other):
        return (isinstance(other, BiForm) and self.field is other.field
                and self._key == other._key)

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic ---------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, BiForm):
            F = self.field
            out = {}
            for (i, j), c in self.coeffs.items():
                for (k, l), d in other.coeffs.items():
                    key = (i + k, j + l)
                    v = F.add(out.get(key, F.zero), F.mul(c, d))
                    if v == F.zero:
                        out.pop(key, None)
                    else:
                        out[key] = v
            return BiForm(F, self.xdeg + other.xdeg,
                          self.ydeg + other.ydeg, out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        return BiForm(F, self.xdeg, self.ydeg,
                      {k: F.mul(v, c) for k, v in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, BiForm):
            raise TypeError("can only add forms")
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.bidegree != other.bidegree:
            raise ValueError("bidegree mismatch: %s + %s"
                             % (self.bidegree, other.bidegree))
        F = self.field
        out = dict(self.coeffs)
        for k, d in other.coeffs.items():
            v = F.add(out.get(k, F.zero), d)
            if v == F.zero:
                out.pop(k, None)
            else:
                out[k] = v
        return BiForm(F, self.xdeg, self.ydeg, out)

    def __neg__(self):
        return self.scale(self.field.neg(self.field.one))

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("forms only take nonnegative powers")
        out = BiForm.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- evaluation, coordinates -------------------------------------

    def eval(self, xpair, ypair):
        F = self.field
        x0, x1 = (F.coerce(v) for v in xpair)
        y0, y1 = (F.coerce(v) for v in ypair)
        a, b = self.xdeg, self.ydeg
        px0, px1 = _powers(F, x0, a), _powers(F, x1, a)
        py0, py1 = _powers(F, y0, b), _powers(F, y1, b)
        acc = F.zero
        for (i, j), c in self.coeffs.items():
            t = F.mul(F.mul(px0[i], px1[a - i]), F.mul(py0[j], py1[b - j]))
            acc = F.add(acc, F.mul(c, t))
        return acc

    def transpose(self):
        """Swap the two projective factors: (x, y) -> (y, x)."""
        return BiForm(self.field, self.ydeg, self.xdeg,
                      {(j, i): c for (i, j), c in self.coeffs.items()})

    def subs_x(self, m00, m01, m10, m11):
        """Substitute (x0, x1) -> (m00*x0 + m01*x1, m10*x0 + m11*x1)."""
        F = self.field
        a, b = self.xdeg, self.ydeg
        u = [F.coerce(m00), F.coerce(m01)]
        w = [F.coerce(m10), F.coerce(m11)]
        pu = _lin_powers(F, u, a)
        pw = _lin_powers(F, w, a)
        out = {}
        for (i, j), c in self.coeffs.items():
            row = _lin_mul(F, pu[i], pw[a - i])
            for e, d in enumerate(row):
                if d == F.zero:
                    continue
                key = (e, j)
                v = F.add(out.get(key, F.zero), F.mul(c, d))
                if v == F.zero:
                    out.pop(key, None)
                else:
                    out[key] = v
        return BiForm(F, a, b, out)

    def x_rows(self):
        """Dehomogenise (x1 = y1 = 1): list over x-exponent of Poly in y."""
        F = self.field
        rows = [[F.zero] * (self.ydeg + 1) for _ in range(self.xdeg + 1)]
        for (i, j), c in self.coeffs.items():
            rows[i][j] = c
        return [Poly(F, r) for r in rows]

    def y_cols(self):
        F = self.field
        cols = [[F.zero] * (self.xdeg + 1) for _ in range(self.ydeg + 1)]
        for (i, j), c in self.coeffs.items():
            cols[j][i] = c
        return [Poly(F, r) for r in cols]

    def univariate(self):
        """For a form with one trivial pair, the dehomogenised Poly."""
        if self.xdeg == 0:
            return self.x_rows()[0]
        if self.ydeg == 0:
            return self.y_cols()[0]
        raise ValueError("form is genuinely bivariate")

    # -- normal form ---------------------------------------------------

    def lead_key(self):
        return max(self.coeffs)

    def canonical(self):
        """Scale so the lexicographically largest monomial has coefficient
        one.  Returns (unit, canonical_form) with self = unit * canonical."""
        if self.is_zero:
            return self.field.one, self
        F = self.field
        u = self.coeffs[self.lead_key()]
        if u == F.one:
            return u, self
        return u, self.scale(F.inv(u))

    def split_monomials(self):
        """Extract the powers of x0, x1, y0, y1 dividing the form.

        Returns (e_x0, e_x1, e_y0, e_y1, core).
        """
        if self.is_zero:
            raise ValueError("cannot split the zero form")
        a, b = self.xdeg, self.ydeg
        imin = min(i for i, _ in self.coeffs)
        imax = max(i for i, _ in self.coeffs)
        jmin = min(j for _, j in self.coeffs)
        jmax = max(j for _, j in self.coeffs)
        core = BiForm(self.field, imax - imin, jmax - jmin,
                      {(i - imin, j - jmin): c
                       for (i, j), c in self.coeffs.items()})
        return imin, a - imax, jmin, b - jmax, core

    # -- factorisation -------------------------------------------------

    def factor(self):
        """Full factorisation into irreducible canonical forms.

        Returns (unit, {form: multiplicity}) with the product recovering
        the form exactly.
        """
        if self.is_zero:
            raise ValueError("cannot factor the zero form")
        F = self.field
        parts = {}

        def put(form, mult):
            if mult and form.bidegree != (0, 0):
                canon = form.canonical()[1]
                parts[canon] = parts.get(canon, 0) + mult

        ex0, ex1, ey0, ey1, core = self.split_monomials()
        put(BiForm.x0(F), ex0)
        put(BiForm.x1(F), ex1)
        put(BiForm.y0(F), ey0)
        put(BiForm.y1(F), ey1)

        if core.bidegree != (0, 0):
            # vertical content: common factor purely in y
            rows = core.x_rows()
            vert = rows[0]
            for r in rows[1:]:
                vert = vert.gcd(r)
                if vert.is_one():
                    break
            if vert.deg > 0:
                for p, m in vert.factor()[1].items():
                    put(BiForm.vertical(F, p), m)
                rows = [r / vert for r in rows]
                core = BiForm.from_x_rows(
                    F, core.xdeg, max(r.deg for r in rows), rows)
        if core.bidegree != (0, 0) and core.xdeg > 0:
            # horizontal content: common factor purely in x
            cols = core.y_cols()
            horiz = cols[0]
            for p in cols[1:]:
                horiz = horiz.gcd(p)
                if horiz.is_one():
                    break
            if horiz.deg > 0:
                for p, m in horiz.factor()[1].items():
                    put(BiForm.horizontal(F, p), m)
                cols = [p / horiz for p in cols]
                core = BiForm.from_y_cols(
                    F, max(p.deg for p in cols), core.ydeg, cols)
        if core.xdeg > 0 and core.ydeg > 0:
            for g, m in _factor_mixed(core):
                put(g, m)
        elif core.xdeg > 0 or core.ydeg > 0:
            # monomial- and content-free yet univariate: impossible
            raise AssertionError("content extraction left a univariate core")

        prod = BiForm.const(F, 1)
        for g, m in parts.items():
            prod = prod * g ** m
        lead = self.lead_key()
        unit = F.div(self.coeffs[lead], prod.coeffs[lead])
        return unit, parts

    def is_irreducible(self):
        if self.is_zero or self.bidegree == (0, 0):
            return False
        _, parts = self.factor()
        return len(parts) == 1 and next(iter(parts.values())) == 1

    # -- printing --------------------------------------------------------

    def to_str(self):
        if self.is_zero:
            return "0"
        F = self.field
        a, b = self.xdeg, self.ydeg
        terms = []
        for (i, j) in sorted(self.coeffs, reverse=True):
            c = self.coeffs[(i, j)]
            mono = []
            if i:
                mono.append("x0" + (f"^{i}" if i > 1 else ""))
            if a - i:
                mono.append("x1" + (f"^{a - i}" if a - i > 1 else ""))
            if j:
                mono.append("y0" + (f"^{j}" if j > 1 else ""))
            if b - j:
                mono.append("y1" + (f"^{b - j}" if b - j > 1 else ""))
            cs = F.elt_str(c)
            if not mono:
                terms.append(cs)
            elif cs == "1":
                terms.append("*".join(mono))
            else:
                terms.append(cs + "*" + "*".join(mono))
        return " + ".join(terms)

    def __repr__(self):
        return f"BiForm({self.to_str()} over {self.field.name})"


def _powers(F, a, n):
    out = [F.one]
    for _ in range(n):
        out.append(F.mul(out[-1], a))
    return out


def _lin_powers(F, lin, n):
    out = [[F.one]]
    for _ in range(n):
        out.append(_lin_mul(F, out[-1], lin))
    return out


def _lin_mul(F, a, b):
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c == F.zero:
            continue
        for j, d in enumerate(b):
            if d == F.zero:
                continue
            out[i + j] = F.add(out[i + j], F.mul(c, d))
    return out


# ---------------------------------------------------------------------------
# tables of irreducible forms
# ---------------------------------------------------------------------------

def all_forms(field, a, b):
    """All forms of bidegree (a, b), one per scalar class (canonical)."""
    n = (a + 1) * (b + 1)
    if field.q ** n > _TABLE_CAP:
        raise ValueError("form table of bidegree (%d, %d) over %s is too "
                         "large" % (a, b, field.name))
    keys = sorted(((i, j) for i in range(a + 1) for j in range(b + 1)),
                  reverse=True)
    elems = sorted(field.elements())
    out = []
    for lead in range(n):
        tail = keys[lead + 1:]
        for vec in _vectors(elems, len(tail)):
            coeffs = {keys[lead]: field.one}
            for k, c in zip(tail, vec):
                if c != field.zero:
                    coeffs[k] = c
            out.append(BiForm(field, a, b, coeffs))
    return out


def _vectors(elems, n):
    if n == 0:
        yield ()
        return
    for head in elems:
        for rest in _vectors(elems, n - 1):
            yield (head,) + rest


@lru_cache(maxsize=None)
def irreducible_forms(field, a, b):
    """All irreducible canonical forms of bidegree (a, b), sorted."""
    if a < 0 or b < 0 or (a, b) == (0, 0):
        return ()
    forms = all_forms(field, a, b)
    reducible = set()
    for a1 in range(a + 1):
        for b1 in range(b + 1):
            if (a1, b1) in ((0, 0), (a, b)):
                continue
            for T in irreducible_forms(field, a1, b1):
                for S in all_forms(field, a - a1, b - b1):
                    reducible.add((T * S).canonical()[1]._key)
    out = [f for f in forms if f._key not in reducible]
    out.sort(key=lambda f: f._key)
    return tuple(out)


def table_feasible(field, a, b):
    return field.q ** ((a + 1) * (b + 1)) <= _TABLE_CAP


# ---------------------------------------------------------------------------
# mixed factorisation (both bidegree components positive)
# ---------------------------------------------------------------------------

def _factor_mixed(core):
    """Factor a monomial-free, content-free form with xdeg, ydeg >= 1.

    Returns a list of (irreducible canonical BiForm, multiplicity).
    """
    F = core.field
    a, b = core.xdeg, core.ydeg
    # a content-free form linear in one pair is irreducible
    if a == 1 or b == 1:
        return [(core.canonical()[1], 1)]
    if table_feasible(F, a, b):
        return _factor_by_table(core)
    return _factor_by_lifting(core)


def _factor_by_table(core):
    F = core.field
    out = []
    rest = core
    for a1 in range(1, core.xdeg + 1):
        for b1 in range(1, core.ydeg + 1):
            if a1 > rest.xdeg or b1 > rest.ydeg:
                continue
            if (a1, b1) == rest.bidegree:
                break
            for T in irreducible_forms(F, a1, b1):
                mult = 0
                q = exact_div(rest, T)
                while q is not None:
                    mult += 1
                    rest = q
                    q = exact_div(rest, T)
                if mult:
                    out.append((T, mult))
    if rest.bidegree != (0, 0):
        out.append((rest.canonical()[1], 1))
    return out


def exact_div(A, B):
    """A / B as forms, or None when the division is not exact."""
    if B.xdeg > A.xdeg or B.ydeg > A.ydeg or B.is_zero:
        return None
    F = A.field
    FF = function_field(F)
    q, r = divmod(_to_ff(FF, A), _to_ff(FF, B))
    if not r.is_zero():
        return None
    ydeg_q = A.ydeg - B.ydeg
    rows = []
    for c in q.coeffs:
        if not c.is_poly() or c.num.deg > ydeg_q:
            return None
        rows.append(c.num)
    while len(rows) <= A.xdeg - B.xdeg:
        rows.append(Poly.zero(F))
    cand = BiForm.from_x_rows(F, A.xdeg - B.xdeg, ydeg_q, rows)
    return cand if (cand * B) == A else None


def _to_ff(FF, form):
    """Dehomogenised form as a Poly in x over the rational function field."""
    return Poly(FF, [FF.from_poly(r) for r in form.x_rows()])


def _integral_rows(p):
    """Clear denominators of a Poly over F(y) and remove the y-content:
    rows of a primitive integral representative."""
    FF = p.field
    F = FF.base
    den = Poly.one(F)
    for c in p.coeffs:
        den = (den * c.den) / den.gcd(c.den)
    rows = [c.num * (den / c.den) for c in p.coeffs]
    g = rows[0]
    for r in rows[1:]:
        g = g.gcd(r)
        if g.is_one():
            break
    if g.deg > 0:
        rows = [r / g for r in rows]
    return rows


def _rows_to_form(F, rows):
    return BiForm.from_x_rows(F, len(rows) - 1, max(r.deg for r in rows), rows)


def _factor_by_lifting(core):
    """Specialise y, factor, Hensel-lift back, and recombine subsets."""
    F = core.field
    FF = function_field(F)
    found = {}

    def record(p, mult):
        g = _rows_to_form(F, _integral_rows(p)).canonical()[1]
        found[g] = found.get(g, 0) + mult

    def fac(p, mult):
        # p monic over F(y)
        if p.deg <= 0:
            return
        if p.deg == 1:
            record(p, mult)
            return
        dp = p.derivative()
        if dp.is_zero():
            root = _ff_pth_root(p)
            if root is not None:
                fac(root, mult * F.char)
                return
            # purely inseparable in x but not a p-th power: the y-side
            # derivative cannot also vanish, so factor the transpose
            flipped = _rows_to_form(F, _integral_rows(p)).transpose()
            e = flipped.split_monomials()
            assert e[:4] == (0, 0, 0, 0)
            for g, m in _factor_mixed(e[4]):
                gt = g.transpose().canonical()[1]
                found[gt] = found.get(gt, 0) + m * mult
            return
        g = p.gcd(dp)
        if g.deg == 0:
            for u in _hensel_split(F, FF, p):
                record(u, mult)
            return
        for u in _hensel_split(F, FF, p / g):
            e = 0
            while True:
                q, r = divmod(p, u)
                if not r.is_zero():
                    break
                p, e = q, e + 1
            record(u, e * mult)
        if p.deg > 0:
            fac(p, mult)

    fac(_to_ff(FF, core).monic(), 1)
    return list(found.items())


def _ff_pth_root(p):
    """The p-th root of a Poly over F(y) lying in F(y)[x^p], when the
    coefficients admit p-th roots; None otherwise."""
    FF = p.field
    F = FF.base
    ch = F.char
    coeffs = [FF.zero] * (p.deg // ch + 1)
    for i, c in enumerate(p.coeffs):
        if c == FF.zero:
            continue
        if i % ch:
            return None
        num = _poly_pth_root(F, c.num)
        den = _poly_pth_root(F, c.den)
        if num is None or den is None:
            return None
        coeffs[i // ch] = FF.div(FF.from_poly(num), FF.from_poly(den))
    return Poly(FF, coeffs)


def _poly_pth_root(F, p):
    ch = F.char
    if p.is_zero():
        return p
    out = [F.zero] * (p.deg // ch + 1)
    for i, c in enumerate(p.coeffs):
        if c == F.zero:
            continue
        if i % ch:
            return None
        out[i // ch] = F.pth_root(c)
    return Poly(F, out)


def _hensel_split(F, FF, p):
    """Monic squarefree p over F(y)[x]: the list of its monic irreducible
    factors, found by specialising y, (y-c)-adic lifting, and subset
    recombination (descending through a constant-field extension when no
    good specialisation point exists over F)."""
    rows = _integral_rows(p)
    n = len(rows) - 1
    if n == 1:
        return [p]
    lead = rows[n]
    m = max(r.deg for r in rows)
    L = good = None
    for s in (1, 2, 3, 4):
        L = gf(F.q ** s) if s > 1 else F
        emb = F.embed(L)
        lrows = [Poly(L, [emb[c] for c in r.coeffs]) for r in rows]
        for c in sorted(L.elements()):
            if lrows[n](c) == L.zero:
                continue
            spec = Poly(L, [r(c) for r in lrows])
            if spec.gcd(spec.derivative()).deg == 0:
                good = c
                break
        if good is not None:
            break
    if good is None:
        raise ValueError("no good specialisation point up to a degree-4 "
                         "constant extension")
    c = good
    spec = Poly(L, [r(c) for r in lrows]).monic()
    locals_ = sorted(spec.factor()[1], key=lambda u: u.coeffs)
    if len(locals_) == 1:
        return [p]
    # shift y -> y + c, monicise as a power series, lift the local factors
    N = m + lead.deg + 1
    ylin = Poly(L, [c, L.one])
    srows = [r(ylin) for r in lrows]
    lead_s = srows[n]
    inv_lead = _series_inv(lead_s, N)
    monic_rows = [_ptrunc(r * inv_lead, N) for r in srows]
    lifted = _lift_tree(L, monic_rows, locals_, N)
    back = Poly(L, [L.neg(c), L.one])
    emb_rev = {v: k for k, v in enumerate(emb)}
    factors = []
    remaining = list(range(len(locals_)))
    rest = p
    size = 1
    while size <= len(remaining) // 2:
        hit = False
        for S in combinations(remaining, size):
            cand = _reconstruct(F, L, lead_s,
                                [lifted[t] for t in S], N, back, emb_rev)
            if cand is None:
                continue
            q, r = divmod(rest, cand)
            if r.is_zero():
                factors.append(cand)
                rest = q
                remaining = [t for t in remaining if t not in S]
                hit = True
                break
        if not hit:
            size += 1
    if rest.deg > 0:
        factors.append(rest.monic())
    return factors


def _series_inv(p, N):
    """Inverse of p(t), p(0) != 0, modulo t^N."""
    L = p.field
    inv0 = L.inv(p.coeffs[0])
    out = [inv0] + [L.zero] * (N - 1)
    pc = list(p.coeffs) + [L.zero] * N
    for k in range(1, N):
        acc = L.zero
        for i in range(1, k + 1):
            acc = L.add(acc, L.mul(pc[i], out[k - i]))
        out[k] = L.neg(L.mul(inv0, acc))
    return Poly(L, out)


def _ptrunc(p, N):
    return Poly(p.field, list(p.coeffs[:N]))


def _lift_tree(L, monic_rows, locals_, N):
    """Hensel-lift the distinct monic local factors through t^N.

    monic_rows are the t-series rows of a monic-in-x polynomial whose value
    at t = 0 is the squarefree product of ``locals_``.  Returns the lifted
    rows for each factor, in order.
    """
    if len(locals_) == 1:
        return [monic_rows]
    half = len(locals_) // 2
    g0 = Poly.one(L)
    for u in locals_[:half]:
        g0 = g0 * u
    h0 = Poly.one(L)
    for u in locals_[half:]:
        h0 = h0 * u
    G, H = _hensel_pair(L, monic_rows, g0, h0, N)
    return (_lift_tree(L, G, locals_[:half], N)
            + _lift_tree(L, H, locals_[half:], N))


def _hensel_pair(L, frows, g0, h0, N):
    """Lift the coprime monic split f(x, 0) = g0*h0 through t^N.

    Returns t-series rows (G, H) with f = G*H mod t^N, G(0) = g0, H(0) = h0,
    both monic in x of constant degree.
    """
    d, s, t = g0.ext_gcd(h0)
    assert d.is_one()
    G = [Poly(L, [c]) for c in g0.coeffs]
    H = [Poly(L, [c]) for c in h0.coeffs]
    n = len(frows) - 1
    for k in range(1, N):
        prod = _rows_mul(L, G, H, k + 1)
        delta = []
        for i in range(n + 1):
            fc = frows[i].coeffs[k] if frows[i].deg >= k else L.zero
            pc = (prod[i].coeffs[k]
                  if i < len(prod) and prod[i].deg >= k else L.zero)
            delta.append(L.sub(fc, pc))
        dpoly = Poly(L, delta)
        if dpoly.is_zero():
            continue
        dg = (t * dpoly) % g0
        dh = (s * dpoly) % h0
        assert (dpoly - dg * h0 - dh * g0).is_zero()
        tk = Poly(L, [L.zero] * k + [L.one])
        for i, cc in enumerate(dg.coeffs):
            if cc != L.zero:
                G[i] = G[i] + tk.scale(cc)
        for i, cc in enumerate(dh.coeffs):
            if cc != L.zero:
                H[i] = H[i] + tk.scale(cc)
    return G, H


def _rows_mul(L, A, B, N):
    out = [Poly.zero(L)] * (len(A) + len(B) - 1)
    for i, a in enumerate(A):
        if a.is_zero():
            continue
        for j, b in enumerate(B):
            if b.is_zero():
                continue
            out[i + j] = out[i + j] + _ptrunc(a * b, N)
    return out


def _reconstruct(F, L, lead_s, factor_rows, N, back, emb_rev):
    """Assemble lead * product(lifted factors) mod t^N, undo the shift,
    descend to F, and return the monic candidate over F(y) (or None)."""
    acc = [_ptrunc(lead_s, N)]
    for rows in factor_rows:
        acc = _rows_mul(L, acc, rows, N)
    rows = [r(back) for r in acc]
    g = rows[0]
    for r in rows[1:]:
        g = g.gcd(r)
        if g.is_one():
            break
    if g.deg > 0:
        rows = [r / g for r in rows]
    lc = rows[-1].lc
    if lc != L.one:
        inv = L.inv(lc)
        rows = [r.scale(inv) for r in rows]
    down = []
    for r in rows:
        cs = []
        for c in r.coeffs:
            k = emb_rev.get(c)
            if k is None:
                return None
            cs.append(k)
        down.append(Poly(F, cs))
    FF = function_field(F)
    return Poly(FF, [FF.from_poly(r) for r in down]).monic()


# ---------------------------------------------------------------------------
# resultants eliminating a projective pair
# ---------------------------------------------------------------------------

def _coeff_forms_y(form):
    """Coefficient list over the y-pair: entry j is the x-form multiplying
    y0^j y1^(ydeg-j), or None when zero."""
    F = form.field
    out = [None] * (form.ydeg + 1)
    for (i, j), c in form.coeffs.items():
        cur = out[j] or {}
        cur[(i, 0)] = c
        out[j] = cur
    return [BiForm(F, form.xdeg, 0, d) if d else None for d in out]


def _coeff_forms_x(form):
    F = form.field
    out = [None] * (form.xdeg + 1)
    for (i, j), c in form.coeffs.items():
        cur = out[i] or {}
        cur[(0, j)] = c
        out[i] = cur
    return [BiForm(F, 0, form.ydeg, d) if d else None for d in out]


def _sylvester(A, B):
    n, m = len(A) - 1, len(B) - 1
    size = n + m
    rows = []
    for r in range(m):
        row = [None] * size
        for k, a in enumerate(A):
            row[r + k] = a
        rows.append(row)
    for r in range(n):
        row = [None] * size
        for k, b in enumerate(B):
            row[r + k] = b
        rows.append(row)
    return rows


def _mul2(a, b):
    return None if a is None or b is None else a * b


def _sub2(a, b):
    if b is None:
        return a
    if a is None:
        neg = b.scale(b.field.neg(b.field.one))
        return None if neg.is_zero else neg
    d = a - b
    return None if d.is_zero else d


def _det(field, M):
    """Division-free determinant of a matrix of BiForms (None = zero),
    expanding along rows with memoisation on the remaining columns."""
    size = len(M)
    if size == 0:
        return BiForm.const(field, 1)
    if size == 1:
        return M[0][0]
    if size == 2:
        return _sub2(_mul2(M[0][0], M[1][1]), _mul2(M[0][1], M[1][0]))
    if size == 3:
        t0 = _mul2(M[0][0], _sub2(_mul2(M[1][1], M[2][2]), _mul2(M[1][2], M[2][1])))
        t1 = _mul2(M[0][1], _sub2(_mul2(M[1][0], M[2][2]), _mul2(M[1][2], M[2][0])))
        t2 = _mul2(M[0][2], _sub2(_mul2(M[1][0], M[2][1]), _mul2(M[1][1], M[2][0])))
        return _sub2(_sub2(t0, t1), _sub2(None, t2))
    neg_one = field.neg(field.one)
    memo = {}

    def minor(r, cols):
        if r == size:
            return BiForm.const(field, 1)
        key = (r, cols)
        if key in memo:
            return memo[key]
        acc = None
        sign = field.one
        for pos, j in enumerate(cols):
            e = M[r][j]
            if e is not None:
                sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
                if sub is not None:
                    term = (e * sub).scale(sign)
                    acc = term if acc is None else acc + term
                    if acc.is_zero:
                        acc = None
            sign = field.mul(sign, neg_one)
        memo[key] = acc
        return acc

    return minor(0, tuple(range(size)))


def eliminate_y(A, B):
    """Resultant of two forms on (x, y) with respect to the y-pair.

    The result is a binary form in x of degree xdeg(A)*ydeg(B) +
    xdeg(B)*ydeg(A); it vanishes identically exactly when A and B share a
    component involving y.
    """
    F = A.field
    n, m = A.ydeg, B.ydeg
    if n == 0:
        return A ** m if m else BiForm.const(F, 1)
    if m == 0:
        return B ** n
    det = _det(F, _sylvester(_coeff_forms_y(A), _coeff_forms_y(B)))
    want = A.xdeg * m + B.xdeg * n
    if det is None:
        return BiForm(F, want, 0, {})
    assert det.bidegree == (want, 0)
    return det


def eliminate_x(A, B):
    return eliminate_y(A.transpose(), B.transpose()).transpose()


def compose_resultant(G, H):
    """Eliminate the shared middle variable: G lives on (x, w) with w as
    its y-pair, H on (w, y) with w as its x-pair.  Returns the form on
    (x, y) of bidegree (xdeg(G)*xdeg(H)... of bidegree
    (xdeg(G)*wdeg(H), ydeg(H)*wdeg(G))."""
    F = G.field
    n, m = G.ydeg, H.xdeg
    if n == 0 and m == 0:
        return BiForm.const(F, 1)
    if n == 0:
        # G is w-free: Res = G^(wdeg H); the result has no y-part
        return G ** m
    if m == 0:
        return H ** n
    det = _det(F, _sylvester(_coeff_forms_y(G), _coeff_forms_x(H)))
    want = (G.xdeg * m, H.ydeg * n)
    if det is None:
        return BiForm(F, want[0], want[1], {})
    assert det.bidegree == want
    return det
