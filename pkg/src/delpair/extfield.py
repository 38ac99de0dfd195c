"""Residue field extensions k[t]/(pi) and norms down to k.

Elements are fixed-length coefficient tuples in the power basis of the
class of t.  The base can be any field object: a finite field (residue
fields of closed points on the line or on a curve), the rationals, or a
rational function field (residue fields of horizontal curves over a
base line, which is where the norms in the gluing construction live).

The norm of an element is the determinant of multiplication by it.
Over a finite base there are two cheap cross-checks, the Frobenius
orbit product a^(1+q+...+q^(d-1)) and the resultant Res(pi, lift), and
the tests lean on all three agreeing.
"""

from .poly import Poly


class ExtField:
    is_finite = property(lambda self: self.base.is_finite)

    def __init__(self, base, modulus):
        if not modulus.is_monic() or modulus.deg < 1:
            raise ValueError("modulus must be monic of positive degree")
        self.base = base
        self.modulus = modulus
        self.deg = modulus.deg
        self.char = base.char
        d = self.deg
        self.zero = tuple([base.zero] * d)
        self.one = tuple([base.one] + [base.zero] * (d - 1))
        # x^d reduced, for the schoolbook multiply
        self._red = tuple(base.neg(c) for c in modulus.coeffs[:-1])

    @property
    def q(self):
        return self.base.q**self.deg

    def lift(self, a):
        return Poly(self.base, a)

    def project(self, p):
        """Reduce a Poly over the base into the extension."""
        r = p % self.modulus
        cs = list(r.coeffs) + [self.base.zero] * (self.deg - len(r.coeffs))
        return tuple(cs)

    # -- protocol --------------------------------------------------------

    def add(self, a, b):
        F = self.base
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.base
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        F = self.base
        return tuple(F.neg(x) for x in a)

    def mul(self, a, b):
        F = self.base
        d = self.deg
        if d == 1:
            return (F.mul(a[0], b[0]),)
        if d == 2:
            # unrolled: (a0 + a1 x)(b0 + b1 x) with x^2 = r0 + r1 x
            r0, r1 = self._red
            a0, a1 = a
            b0, b1 = b
            c0 = F.mul(a0, b0)
            c1 = F.add(F.mul(a0, b1), F.mul(a1, b0))
            c2 = F.mul(a1, b1)
            return (F.add(c0, F.mul(c2, r0)), F.add(c1, F.mul(c2, r1)))
        # generic convolution then reduction by x^d = red
        prod = [F.zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == F.zero:
                continue
            for j, y in enumerate(b):
                prod[i + j] = F.add(prod[i + j], F.mul(x, y))
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c == F.zero:
                continue
            for i, r in enumerate(self._red):
                prod[k - d + i] = F.add(prod[k - d + i], F.mul(c, r))
            prod[k] = F.zero
        return tuple(prod[:d])

    def scale(self, a, c):
        """Multiply by an element of the base field."""
        F = self.base
        return tuple(F.mul(x, c) for x in a)

    def inv(self, a):
        F = self.base
        d = self.deg
        if d == 1:
            if a[0] == F.zero:
                raise ZeroDivisionError("inverse of zero")
            return (F.inv(a[0]),)
        if d == 2:
            # with x^2 = r0 + r1 x the conjugate of a0 + a1 x is
            # (a0 + r1 a1) - a1 x, and a times its conjugate is the
            # norm a0^2 + r1 a0 a1 - r0 a1^2, a base element
            a0, a1 = a
            if a1 == F.zero:
                if a0 == F.zero:
                    raise ZeroDivisionError("inverse of zero")
                return (F.inv(a0), F.zero)
            r0, r1 = self._red
            n = F.add(F.mul(a0, a0), F.mul(a1, F.sub(F.mul(r1, a0), F.mul(r0, a1))))
            if n == F.zero:
                raise ZeroDivisionError("inverse of zero")
            ninv = F.inv(n)
            return (F.mul(F.add(a0, F.mul(r1, a1)), ninv), F.neg(F.mul(a1, ninv)))
        lifted = self.lift(a)
        if lifted.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self.project(lifted.inv_mod(self.modulus))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_(self, a, n):
        if n < 0:
            return self.pow_(self.inv(a), -n)
        acc, base = self.one, a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def coerce(self, x):
        if isinstance(x, tuple) and len(x) == self.deg:
            return x
        c = self.base.coerce(x) if not self._is_base_elt(x) else x
        return tuple([c] + [self.base.zero] * (self.deg - 1))

    def _is_base_elt(self, x):
        try:
            self.base.elt_str(x)
            return True
        except Exception:
            return False

    def from_base(self, c):
        return tuple([c] + [self.base.zero] * (self.deg - 1))

    def is_zero_elt(self, a):
        return all(c == self.base.zero for c in a)

    def gen(self):
        """The class of t (reduced, so a base element when deg = 1)."""
        return self.project(Poly.x(self.base))

    def elements(self):
        if not self.base.is_finite:
            raise ValueError("infinite field")
        from itertools import product

        for cs in product(self.base.elements(), repeat=self.deg):
            yield tuple(cs)

    def rand(self, rng):
        return tuple(self.base.rand(rng) for _ in range(self.deg))

    def rand_unit(self, rng):
        while True:
            a = self.rand(rng)
            if not self.is_zero_elt(a):
                return a

    # -- norms -----------------------------------------------------------

    def norm(self, a):
        """Norm down to the base: det of multiplication by a."""
        F = self.base
        d = self.deg
        if d == 1:
            return a[0]
        if d == 2:
            # det [[a0, a1 r0], [a1, a0 + a1 r1]] with x^2 = r0 + r1 x
            r0, r1 = self._red
            a0, a1 = a
            if a1 == F.zero:
                return F.mul(a0, a0)
            return F.sub(
                F.mul(a0, F.add(a0, F.mul(a1, r1))), F.mul(F.mul(a1, a1), r0)
            )
        rows = []
        col = a
        rows.append(list(col))
        xgen = tuple(
            [F.zero, F.one] + [F.zero] * (d - 2)
        )
        for _ in range(d - 1):
            col = self.mul(col, xgen)
            rows.append(list(col))
        return field_det(F, rows)

    def norm_frobenius(self, a):
        """Finite-base cross-check: product of the Frobenius orbit."""
        if not self.base.is_finite:
            raise ValueError("Frobenius norm needs a finite base")
        q = self.base.q
        acc = self.one
        x = a
        for _ in range(self.deg):
            acc = self.mul(acc, x)
            x = self.pow_(x, q)
        # acc = a^(1 + q + ... + q^(d-1)) lives in the base
        lifted = self.lift(acc)
        if lifted.deg > 0:
            raise AssertionError("Frobenius norm did not land in the base")
        return lifted.coeffs[0] if lifted.coeffs else self.base.zero

    def norm_resultant(self, a):
        """Cross-check: Res(modulus, lift a); exact since modulus is monic."""
        return self.modulus.resultant(self.lift(a))

    # -- display -----------------------------------------------------------

    def elt_str(self, a):
        return self.lift(a).to_str("u")

    @property
    def name(self):
        return f"{self.base.name}[u]/({self.modulus.to_str('u')})"

    def __repr__(self):
        return self.name

    def __hash__(self):
        return hash(("ExtField", self.base, self.modulus))

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and self.base == other.base
            and self.modulus == other.modulus
        )


def field_det(F, M):
    """Determinant over an arbitrary field by Gaussian elimination."""
    n = len(M)
    if n == 0:
        return F.one
    A = [list(row) for row in M]
    det = F.one
    for k in range(n):
        piv = None
        for i in range(k, n):
            if A[i][k] != F.zero:
                piv = i
                break
        if piv is None:
            return F.zero
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = F.neg(det)
        det = F.mul(det, A[k][k])
        inv = F.inv(A[k][k])
        for i in range(k + 1, n):
            if A[i][k] == F.zero:
                continue
            factor = F.mul(A[i][k], inv)
            A[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(A[i], A[k])]
    return det
