"""Short Weierstrass elliptic curves over finite fields.

Points are affine pairs (x, y) or None for the identity.  Only odd
characteristic is accepted: in characteristic 2 the short form
y^2 = x^3 + ax + b is always singular (the partial in y vanishes
identically), so the discriminant test alone would let junk through.
In characteristic 3 the usual 4a^3 + 27b^2 degenerates to a^3, which is
the right condition there.

Divisors with F_q-rational support reduce to the group: sum n_P (P)
of degree zero goes to the sum of n_P * P under the group law.  That is
the Abel-Jacobi map, and it is checked exhaustively against brute-force
divisor enumeration in the tests.
"""


class EllipticCurve:
    def __init__(self, field, a, b):
        if field.char == 2:
            raise ValueError("short Weierstrass form is singular in characteristic 2")
        if isinstance(a, int):
            a = a % field.p if field.is_finite and not 0 <= a < field.q else a
        if isinstance(b, int):
            b = b % field.p if field.is_finite and not 0 <= b < field.q else b
        F = field
        disc = F.add(
            F.mul(F.coerce(4), F.pow_(a, 3)),
            F.mul(F.coerce(27), F.pow_(b, 2)),
        )
        if disc == F.zero:
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")
        self.field = field
        self.a = a
        self.b = b
        self._points = None

    def rhs(self, x):
        F = self.field
        return F.add(F.add(F.pow_(x, 3), F.mul(self.a, x)), self.b)

    def contains(self, P):
        if P is None:
            return True
        if not (isinstance(P, tuple) and len(P) == 2):
            return False
        x, y = P
        F = self.field
        return F.mul(y, y) == self.rhs(x)

    def points(self):
        """All F_q-rational points, identity first (cached)."""
        if self._points is None:
            F = self.field
            pts = [None]
            for x in F.elements():
                for y in F.elements():
                    if F.mul(y, y) == self.rhs(x):
                        pts.append((x, y))
            self._points = pts
        return list(self._points)

    def order(self):
        return len(self.points())

    # -- group law -------------------------------------------------------

    def neg(self, P):
        if P is None:
            return None
        x, y = P
        return (x, self.field.neg(y))

    def add(self, P, Q):
        F = self.field
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 == F.neg(y2):
                return None
            lam = F.div(
                F.add(F.mul(F.coerce(3), F.mul(x1, x1)), self.a),
                F.mul(F.coerce(2), y1),
            )
        else:
            lam = F.div(F.sub(y2, y1), F.sub(x2, x1))
        x3 = F.sub(F.sub(F.mul(lam, lam), x1), x2)
        y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
        return (x3, y3)

    def sub(self, P, Q):
        return self.add(P, self.neg(Q))

    def smul(self, n, P):
        if n < 0:
            return self.smul(-n, self.neg(P))
        acc = None
        base = P
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, EllipticCurve)
            and self.field == other.field
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash(("EC", self.field, self.a, self.b))

    def __repr__(self):
        F = self.field
        return f"y^2 = x^3 + {F.elt_str(self.a)}*x + {F.elt_str(self.b)} over {F.name}"

    def point_str(self, P):
        if P is None:
            return "O"
        F = self.field
        return f"({F.elt_str(P[0])}, {F.elt_str(P[1])})"


def ec_reduce(curve, D):
    """Reduce a degree-zero rational divisor {point: n} to a group element.

    Principal divisors land on the identity, so this computes the class
    in Pic^0; support must consist of points on the curve (or None).
    """
    deg = sum(D.values())
    if deg != 0:
        raise ValueError("degree-zero divisor required")
    acc = None
    for P, n in D.items():
        if not curve.contains(P):
            raise ValueError("unsupported point field")
        acc = curve.add(acc, curve.smul(n, P))
    return acc


def divisor_class_group(curve):
    """The abstract group (order, elements) -- just the rational points."""
    return curve.points()
