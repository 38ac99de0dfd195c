# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of ``_gfpoly_py``.

Same calling conventions: little-endian coefficient lists, packed table
tuple ``(q, add, sub, neg, mul, inv)`` of ``array('i')`` buffers.  Inner
loops run on C stack buffers; inputs too large for the fixed buffers are
delegated to the pure-Python twin so behaviour is identical.
"""

from . import _gfpoly_py as _py

cdef enum:
    CAP = 192


cdef inline int _load(list a, int* buf) except -1:
    cdef int i, n = len(a)
    for i in range(n):
        buf[i] = a[i]
    return n


cdef inline list _dump(int* buf, int n):
    while n and buf[n - 1] == 0:
        n -= 1
    cdef list out = [0] * n
    cdef int i
    for i in range(n):
        out[i] = buf[i]
    return out


def norm(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def add(list a, list b, tuple tabs):
    cdef int la = len(a), lb = len(b)
    if la >= CAP or lb >= CAP:
        return _py.add(a, b, tabs)
    cdef int q = tabs[0]
    cdef int[::1] addt = tabs[1]
    cdef int av[CAP]
    cdef int bv[CAP]
    cdef int i, n
    _load(a, av)
    _load(b, bv)
    n = la if la > lb else lb
    for i in range(la, n):
        av[i] = 0
    for i in range(lb):
        av[i] = addt[av[i] * q + bv[i]]
    return _dump(av, n)


def sub(list a, list b, tuple tabs):
    cdef int la = len(a), lb = len(b)
    if la >= CAP or lb >= CAP:
        return _py.sub(a, b, tabs)
    cdef int q = tabs[0]
    cdef int[::1] subt = tabs[2]
    cdef int av[CAP]
    cdef int bv[CAP]
    cdef int i, n
    _load(a, av)
    _load(b, bv)
    n = la if la > lb else lb
    for i in range(la, n):
        av[i] = 0
    for i in range(lb, n):
        bv[i] = 0
    for i in range(n):
        av[i] = subt[av[i] * q + bv[i]]
    return _dump(av, n)


def neg(list a, tuple tabs):
    cdef int[::1] negt = tabs[3]
    cdef int i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = negt[<int> a[i]]
    return out


def smul(list a, int s, tuple tabs):
    if s == 0:
        return []
    cdef int q = tabs[0]
    cdef int[::1] mult = tabs[4]
    cdef int i, n = len(a), base = s * q
    cdef list out = [0] * n
    for i in range(n):
        out[i] = mult[base + <int> a[i]]
    return out


def mul(list a, list b, tuple tabs):
    cdef int la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return []
    if la + lb - 1 >= CAP:
        return _py.mul(a, b, tabs)
    cdef int q = tabs[0]
    cdef int[::1] addt = tabs[1]
    cdef int[::1] mult = tabs[4]
    cdef int av[CAP]
    cdef int bv[CAP]
    cdef int ov[CAP]
    cdef int i, j, k, ai, base
    _load(a, av)
    _load(b, bv)
    for i in range(la + lb - 1):
        ov[i] = 0
    for i in range(la):
        ai = av[i]
        if ai == 0:
            continue
        base = ai * q
        for j in range(lb):
            if bv[j]:
                k = i + j
                ov[k] = addt[ov[k] * q + mult[base + bv[j]]]
    return _dump(ov, la + lb - 1)


def divmod_(list a, list b, tuple tabs):
    cdef int la = len(a), lb = len(b)
    if lb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if la >= CAP or lb >= CAP:
        return _py.divmod_(a, b, tabs)
    cdef int db = lb - 1
    if la - 1 < db:
        return [], list(a)
    cdef int q = tabs[0]
    cdef int[::1] subt = tabs[2]
    cdef int[::1] mult = tabs[4]
    cdef int[::1] invt = tabs[5]
    cdef int rv[CAP]
    cdef int bv[CAP]
    cdef int qv[CAP]
    cdef int i, j, c, f, base, binv
    _load(a, rv)
    _load(b, bv)
    binv = invt[bv[db]]
    for i in range(la - db):
        qv[i] = 0
    for i in range(la - 1 - db, -1, -1):
        c = rv[i + db]
        if c == 0:
            continue
        f = mult[c * q + binv]
        qv[i] = f
        base = f * q
        for j in range(db + 1):
            if bv[j]:
                rv[i + j] = subt[rv[i + j] * q + mult[base + bv[j]]]
    return _dump(qv, la - db), _dump(rv, db if db < la else la)


def rem(list a, list b, tuple tabs):
    return divmod_(a, b, tabs)[1]


def monic(list a, tuple tabs):
    if not a:
        return []
    cdef int lc = a[len(a) - 1]
    if lc == 1:
        return list(a)
    cdef int[::1] invt = tabs[5]
    return smul(a, invt[lc], tabs)


def gcd(list a, list b, tuple tabs):
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b, tabs)
    return monic(a, tabs)


def ext_gcd(list a, list b, tuple tabs):
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
    cdef int[::1] invt = tabs[5]
    cdef int lc_inv = invt[<int> r0[len(r0) - 1]]
    return smul(r0, lc_inv, tabs), smul(s0, lc_inv, tabs), smul(t0, lc_inv, tabs)


def inv_mod(list a, list m, tuple tabs):
    g, s, _ = ext_gcd(a, m, tabs)
    if len(g) != 1:
        raise ZeroDivisionError("element not invertible modulo the given polynomial")
    return rem(s, m, tabs)


def mulmod(list a, list b, list m, tuple tabs):
    return rem(mul(a, b, tabs), m, tabs)


def powmod(list a, e, list m, tuple tabs):
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


def eval_at(list a, int x, tuple tabs):
    cdef int q = tabs[0]
    cdef int[::1] addt = tabs[1]
    cdef int[::1] mult = tabs[4]
    cdef int acc = 0
    cdef int i
    for i in range(len(a) - 1, -1, -1):
        acc = addt[mult[acc * q + x] * q + <int> a[i]]
    return acc
