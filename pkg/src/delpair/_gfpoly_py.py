"""Dense univariate polynomial arithmetic over a small finite field.

This is the pure-Python twin of the compiled kernel ``_gfpoly_cy``.  Both
expose the same flat functions; ``delpair.kernels`` picks one at import
time.  Polynomials are lists of field elements in little-endian order
(index = exponent) with no trailing zeros, so ``[]`` is the zero
polynomial.  Field elements are integers ``0..q-1`` and all arithmetic
goes through precomputed tables packed as::

    tabs = (q, add, sub, neg, mul, inv)

where ``add``, ``sub``, ``mul`` are flat ``q*q`` arrays indexed by
``a*q + b`` and ``neg``, ``inv`` have length ``q`` (``inv[0]`` is unused).
The table layout is built once per field by ``delpair.gfield``.
"""


def norm(a):
    """Strip trailing zeros in place-free fashion; return a normalized list."""
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def add(a, b, tabs):
    q, addt = tabs[0], tabs[1]
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i in range(len(b)):
        out[i] = addt[out[i] * q + b[i]]
    return norm(out)


def sub(a, b, tabs):
    q, subt = tabs[0], tabs[2]
    la, lb = len(a), len(b)
    n = la if la > lb else lb
    out = []
    for i in range(n):
        x = a[i] if i < la else 0
        y = b[i] if i < lb else 0
        out.append(subt[x * q + y])
    return norm(out)


def neg(a, tabs):
    negt = tabs[3]
    return [negt[c] for c in a]


def smul(a, s, tabs):
    """Multiply polynomial a by the scalar s."""
    if s == 0:
        return []
    q, mult = tabs[0], tabs[4]
    base = s * q
    return [mult[base + c] for c in a]


def mul(a, b, tabs):
    if not a or not b:
        return []
    q, addt, mult = tabs[0], tabs[1], tabs[4]
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        base = ai * q
        for j, bj in enumerate(b):
            if bj:
                k = i + j
                out[k] = addt[out[k] * q + mult[base + bj]]
    return norm(out)


def divmod_(a, b, tabs):
    """Return (quotient, remainder) of a by b; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q, subt, mult, invt = tabs[0], tabs[2], tabs[4], tabs[5]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    rem = list(a)
    quo = [0] * (len(a) - db)
    binv = invt[b[db]]
    for i in range(len(a) - 1 - db, -1, -1):
        c = rem[i + db]
        if c == 0:
            continue
        f = mult[c * q + binv]
        quo[i] = f
        base = f * q
        for j in range(db + 1):
            if b[j]:
                rem[i + j] = subt[rem[i + j] * q + mult[base + b[j]]]
    return norm(quo), norm(rem)


def rem(a, b, tabs):
    return divmod_(a, b, tabs)[1]


def monic(a, tabs):
    if not a:
        return []
    lc = a[-1]
    if lc == 1:
        return list(a)
    return smul(a, tabs[5][lc], tabs)


def gcd(a, b, tabs):
    """Monic greatest common divisor."""
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b, tabs)
    return monic(a, tabs)


def ext_gcd(a, b, tabs):
    """Return (g, s, t) with g = gcd monic and s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        qq, rr = divmod_(r0, r1, tabs)
        r0, r1 = r1, rr
        s0, s1 = s1, sub(s0, mul(qq, s1, tabs), tabs)
        t0, t1 = t1, sub(t0, mul(qq, t1, tabs), tabs)
    if not r0:
        return [], s0, t0
    lc_inv = tabs[5][r0[-1]]
    return (
        smul(r0, lc_inv, tabs),
        smul(s0, lc_inv, tabs),
        smul(t0, lc_inv, tabs),
    )


def inv_mod(a, m, tabs):
    """Inverse of a modulo m; raises ZeroDivisionError if not coprime."""
    g, s, _ = ext_gcd(a, m, tabs)
    if len(g) != 1:
        raise ZeroDivisionError("element not invertible modulo the given polynomial")
    return rem(s, m, tabs)


def mulmod(a, b, m, tabs):
    return rem(mul(a, b, tabs), m, tabs)


def powmod(a, e, m, tabs):
    """a**e mod m for e >= 0 by square and multiply."""
    if e < 0:
        raise ValueError("negative exponent in powmod")
    result = [1] if len(m) > 1 else []
    base = rem(a, m, tabs)
    while e:
        if e & 1:
            result = rem(mul(result, base, tabs), m, tabs)
        base = rem(mul(base, base, tabs), m, tabs)
        e >>= 1
    return result


def eval_at(a, x, tabs):
    """Evaluate the polynomial at the field element x (Horner)."""
    q, addt, mult = tabs[0], tabs[1], tabs[4]
    acc = 0
    for c in reversed(a):
        acc = addt[mult[acc * q + x] * q + c]
    return acc
