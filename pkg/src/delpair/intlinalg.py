"""Exact integer matrix utilities: Smith form, determinants, solving.

Matrices are plain lists of rows of Python ints.  Everything here is
exact and unimodular transforms are tracked explicitly, which is what
the finitely generated abelian group layer needs: a Smith normal form
``U A V = D`` both diagonalises a relation matrix and tells you how to
move coordinates back and forth.
"""

import math


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def mat_mul(A, B):
    if not A:
        return []
    n = len(B)
    out = []
    for row in A:
        acc = [0] * (len(B[0]) if B else 0)
        for k, a in enumerate(row):
            if a:
                Bk = B[k]
                for j, b in enumerate(Bk):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def mat_vec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def vec_mat(x, A):
    out = [0] * (len(A[0]) if A else 0)
    for xi, row in zip(x, A):
        if xi:
            for j, a in enumerate(row):
                if a:
                    out[j] += xi * a
    return out


def _ext_gcd(a, b):
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def snf(M, cols=None):
    """Smith normal form with transforms: returns (U, D, V), U*M*V = D.

    D is rectangular-diagonal with nonnegative entries in a divisibility
    chain d1 | d2 | ...; U and V are unimodular.  ``cols`` is only needed
    when M has no rows.
    """
    A = [list(row) for row in M]
    r = len(A)
    c = cols if cols is not None else (len(A[0]) if A else 0)
    U = identity(r)
    V = identity(c)

    def row_op(i, t, s, u, ip, tp):
        # rows (t, i) <- (s*row_t + u*row_i, tp*row_i - ip*row_t)
        for X in (A, U):
            rt, ri = X[t], X[i]
            X[t] = [s * a + u * b for a, b in zip(rt, ri)]
            X[i] = [tp * b - ip * a for a, b in zip(rt, ri)]

    def col_op(j, t, s, u, jp, tp):
        for X in (A, V):
            for row in X:
                a, b = row[t], row[j]
                row[t] = s * a + u * b
                row[j] = tp * b - jp * a

    t = 0
    while t < r and t < c:
        # pick a nonzero pivot
        piv = None
        for i in range(t, r):
            for j in range(t, c):
                if A[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        if i != t:
            A[t], A[i] = A[i], A[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            for X in (A, V):
                for row in X:
                    row[t], row[j] = row[j], row[t]
        while True:
            # clear column t; plain elimination whenever the pivot divides,
            # so the pivot row is only touched by genuine gcd steps
            for i in range(t + 1, r):
                v = A[i][t]
                if not v:
                    continue
                d = A[t][t]
                if v % d == 0:
                    q = v // d
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                else:
                    g, s, u = _ext_gcd(d, v)
                    row_op(i, t, s, u, v // g, d // g)
            # clear row t (gcd steps here may reintroduce column entries,
            # but each one strictly shrinks the pivot, so this terminates)
            for j in range(t + 1, c):
                v = A[t][j]
                if not v:
                    continue
                d = A[t][t]
                if v % d == 0:
                    q = v // d
                    for X in (A, V):
                        for row in X:
                            row[j] -= q * row[t]
                else:
                    g, s, u = _ext_gcd(d, v)
                    col_op(j, t, s, u, v // g, d // g)
            if all(A[i][t] == 0 for i in range(t + 1, r)) and all(
                A[t][j] == 0 for j in range(t + 1, c)
            ):
                # divisibility: pivot must divide the whole tail block
                bad = None
                d = A[t][t]
                for i in range(t + 1, r):
                    for j in range(t + 1, c):
                        if A[i][j] % d:
                            bad = i
                            break
                    if bad:
                        break
                if bad is None:
                    break
                # fold the offending row into row t and keep reducing
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                U[t] = [a + b for a, b in zip(U[t], U[bad])]
        t += 1
    for i in range(min(r, c)):
        if A[i][i] < 0:
            A[i] = [-a for a in A[i]]
            U[i] = [-a for a in U[i]]
    return U, A, V


def diag_of(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def det(M):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def solve_left(A, b, cols=None):
    """Integer solution x of x*A = b, or None.

    Via Smith form: with U A V = D the equation becomes z D = b V with
    x = z U, so each coordinate is forced (or free when d_i = 0).
    """
    r = len(A)
    c = cols if cols is not None else (len(A[0]) if A else len(b))
    if len(b) != c:
        raise ValueError("shape mismatch in solve_left")
    U, D, V = snf(A, cols=c)
    bv = vec_mat(b, V)
    z = [0] * r
    for i in range(c):
        d = D[i][i] if i < r else 0
        if d:
            if bv[i] % d:
                return None
            z[i] = bv[i] // d
        elif bv[i]:
            return None
    return vec_mat(z, U)


def left_kernel(A, cols=None):
    """Basis (list of rows) of {x : x*A = 0}."""
    r = len(A)
    c = cols if cols is not None else (len(A[0]) if A else 0)
    U, D, _ = snf(A, cols=c)
    out = []
    for i in range(r):
        d = D[i][i] if i < c else 0
        if d == 0:
            out.append(U[i])
    return out


def in_rowspace(A, b, cols=None):
    return solve_left(A, b, cols=cols) is not None


def solve_left_mod(A, b, mods):
    """Solve x*A = b with column j read modulo mods[j] (0 means exact).

    Congruences are folded in by stacking rows m_j * e_j under A; the x
    returned ignores the auxiliary coordinates.
    """
    c = len(b)
    rows = [list(row) for row in A]
    extra = []
    for j, m in enumerate(mods):
        if m:
            e = [0] * c
            e[j] = m
            extra.append(e)
    x = solve_left(rows + extra, b, cols=c)
    if x is None:
        return None
    return x[: len(rows)]


def lattice_index(D):
    """Product of nonzero invariant factors (order of the torsion part)."""
    out = 1
    for d in D:
        if d:
            out *= d
    return out


def gcd_list(xs):
    g = 0
    for x in xs:
        g = math.gcd(g, x)
    return g
