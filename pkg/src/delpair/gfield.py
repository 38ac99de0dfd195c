"""Ground fields: GF(q) for prime powers q, and the rationals.

Finite-field elements are integers ``0..q-1``: the element with base-p
digits ``(c_0, ..., c_{k-1})`` encodes the residue ``sum c_i * g^i`` where
``g`` is the class of the variable modulo the defining irreducible.  The
defining irreducible of GF(p^k) is the monic irreducible of degree k
whose integer encoding is smallest, so a given q always names the same
field.  All arithmetic is table lookups; the tables are shared with the
polynomial kernel.

Rational "field object" QQ wraps ``fractions.Fraction`` behind the same
small protocol (zero/one/add/mul/inv/...), so generic code does not care
which ground field it runs over.
"""

from array import array
from fractions import Fraction
from functools import lru_cache


def _factor_prime_power(q):
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise ValueError(f"not a prime power: {q}")
    return p, k


def _digits(n, p, k):
    out = []
    for _ in range(k):
        out.append(n % p)
        n //= p
    return out


def _encode(digits, p):
    n = 0
    for c in reversed(digits):
        n = n * p + c
    return n


def _prime_tabs(p):
    add = array("i", [0]) * 0
    add = array("i", ((a + b) % p for a in range(p) for b in range(p)))
    sub = array("i", ((a - b) % p for a in range(p) for b in range(p)))
    neg = array("i", ((-a) % p for a in range(p)))
    mul = array("i", ((a * b) % p for a in range(p) for b in range(p)))
    inv = array("i", [0] + [pow(a, -1, p) for a in range(1, p)])
    return (p, add, sub, neg, mul, inv)


def _smallest_irreducible(p, k, ptabs):
    """Monic irreducible of degree k over F_p with smallest integer encoding."""
    from . import _gfpoly_py as ker

    x = [0, 1]
    for low in range(p**k):
        f = _digits(low, p, k) + [1]
        # Rabin test: x^(p^k) == x mod f, and gcd(x^(p^(k/r)) - x, f) = 1
        # for every prime r dividing k.
        h = ker.powmod(x, p**k, f, ptabs)
        if ker.norm(ker.sub(h, x, ptabs)) != []:
            continue
        ok = True
        r = 2
        kk = k
        seen = set()
        while r * r <= kk:
            if kk % r == 0:
                seen.add(r)
                while kk % r == 0:
                    kk //= r
            r += 1
        if kk > 1:
            seen.add(kk)
        for r in seen:
            h = ker.powmod(x, p ** (k // r), f, ptabs)
            if len(ker.gcd(ker.sub(h, x, ptabs), f, ptabs)) != 1:
                ok = False
                break
        if ok:
            return tuple(f)
    raise RuntimeError("no irreducible found (unreachable)")


class GF:
    """The finite field with q elements; instances are interned per q."""

    is_finite = True

    def __init__(self, q):
        if q > 512:
            raise ValueError("field too large for table-based arithmetic (q <= 512)")
        p, k = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.char = p
        self.k = k
        self.zero = 0
        self.one = 1
        ptabs = _prime_tabs(p)
        if k == 1:
            self.modulus = (0, 1)  # the variable itself; unused for prime fields
            self.tabs = ptabs
        else:
            from . import _gfpoly_py as ker

            self.modulus = _smallest_irreducible(p, k, ptabs)
            mod = list(self.modulus)

            def emul(a, b):
                da, db = _digits(a, p, k), _digits(b, p, k)
                prod = ker.rem(ker.mul(ker.norm(da), ker.norm(db), ptabs), mod, ptabs)
                return _encode(prod + [0] * (k - len(prod)), p)

            add = array("i", (0 for _ in range(q * q)))
            sub = array("i", (0 for _ in range(q * q)))
            mul = array("i", (0 for _ in range(q * q)))
            for a in range(q):
                da = _digits(a, p, k)
                for b in range(q):
                    db = _digits(b, p, k)
                    add[a * q + b] = _encode([(x + y) % p for x, y in zip(da, db)], p)
                    sub[a * q + b] = _encode([(x - y) % p for x, y in zip(da, db)], p)
                    mul[a * q + b] = emul(a, b)
            neg = array("i", (sub[0 * q + a] for a in range(q)))
            inv = array("i", (0 for _ in range(q)))
            for a in range(1, q):
                if inv[a]:
                    continue
                for b in range(1, q):
                    if mul[a * q + b] == 1:
                        inv[a] = b
                        inv[b] = a
                        break
            self.tabs = (q, add, sub, neg, mul, inv)
        self._gen = None
        self._dlog = None
        self._embeddings = {}

    # -- protocol -----------------------------------------------------

    def add(self, a, b):
        return self.tabs[1][a * self.q + b]

    def sub(self, a, b):
        return self.tabs[2][a * self.q + b]

    def neg(self, a):
        return self.tabs[3][a]

    def mul(self, a, b):
        return self.tabs[4][a * self.q + b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.tabs[5][a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if n == 0 else 0
        if n < 0:
            a, n = self.inv(a), -n
        n %= self.q - 1  # unit group has order q - 1
        acc = 1
        while n:
            if n & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            n >>= 1
        return acc

    def coerce(self, x):
        """Canonical image of a Python int (through the prime subfield)."""
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def rand(self, rng):
        return rng.randrange(self.q)

    def rand_unit(self, rng):
        return rng.randrange(1, self.q)

    # -- finite-field extras -------------------------------------------

    @property
    def gen(self):
        """Smallest multiplicative generator (1 when q = 2)."""
        if self._gen is None:
            target = self.q - 1
            for a in range(1, self.q):
                x, order = a, 1
                while x != 1:
                    x = self.mul(x, a)
                    order += 1
                if order == target:
                    self._gen = a
                    break
        return self._gen

    def dlog(self, a):
        """Discrete log of a unit with respect to ``gen``."""
        if self._dlog is None:
            table, x = {1: 0}, 1
            for e in range(1, self.q - 1):
                x = self.mul(x, self.gen)
                table[x] = e
            self._dlog = table
        return self._dlog[a]

    def frob(self, a):
        return self.pow_(a, self.p)

    def pth_root(self, a):
        """Inverse of Frobenius (unique p-th root in a finite field)."""
        return self.pow_(a, self.p ** (self.k - 1))

    def embed(self, other):
        """Embedding table GF(q) -> GF(q^m) as a list of length q.

        The generator is sent to the smallest root of this field's
        defining irreducible in ``other``, so the embedding is canonical.
        """
        if other is self:
            return list(range(self.q))
        key = other.q
        if key not in self._embeddings:
            if other.p != self.p or other.k % self.k:
                raise ValueError(f"no embedding {self} -> {other}")
            from . import kernels as ker

            mod = [other.coerce(c) for c in self.modulus]
            root = None
            for a in sorted(other.elements()):
                if ker.eval_at(mod, a, other.tabs) == 0:
                    root = a
                    break
            table = []
            for n in range(self.q):
                acc, pw = 0, 1
                for c in _digits(n, self.p, self.k):
                    acc = other.add(acc, other.mul(c, pw))
                    pw = other.mul(pw, root)
                table.append(acc)
            self._embeddings[key] = table
        return self._embeddings[key]

    # -- misc ----------------------------------------------------------

    def elt_str(self, a):
        if self.k == 1:
            return str(a)
        digs = _digits(a, self.p, self.k)
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = digs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                v = "g" if i == 1 else f"g^{i}"
                terms.append(v if c == 1 else f"{c}*{v}")
        return "+".join(terms) if terms else "0"

    @property
    def name(self):
        return f"GF({self.q})"

    def __repr__(self):
        return self.name

    def __hash__(self):
        return hash(("GF", self.q))

    def __eq__(self, other):
        return self is other or (isinstance(other, GF) and other.q == self.q)


@lru_cache(maxsize=None)
def gf(q):
    return GF(q)


class Rationals:
    """Field protocol over ``fractions.Fraction``."""

    is_finite = False
    char = 0
    zero = Fraction(0)
    one = Fraction(1)
    name = "QQ"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def pow_(self, a, n):
        return a**n

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def rand(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def rand_unit(self, rng):
        while True:
            a = self.rand(rng)
            if a:
                return a

    def elt_str(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"

    def __hash__(self):
        return hash("QQ")

    def __eq__(self, other):
        return isinstance(other, Rationals)


QQ = Rationals()


def field_from_label(label):
    """Parse 'QQ' or 'GF(q)' into a field object."""
    s = label.strip()
    if s in ("QQ", "Q"):
        return QQ
    if s.startswith("GF(") and s.endswith(")"):
        try:
            return gf(int(s[3:-1]))
        except ValueError as exc:
            raise ValueError(f"bad field label {label!r}: {exc}") from None
    raise ValueError(f"bad field label {label!r} (expected 'QQ' or 'GF(q)')")
