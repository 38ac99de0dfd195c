"""Two-term complexes of finitely generated abelian groups, butterflies,
and Heisenberg central extensions.

A Picard category here is presented by a two-term complex
[A^-1 -> A^0]; morphisms that only exist up to isomorphism are handled
by butterflies, and every "up to isomorphism" statement is backed by an
explicit map that gets verified element by element -- nothing is left
at the level of existence claims.

Groups are presented by integer relation matrices.  The Smith normal
form both canonicalizes the presentation (free rank plus invariant
factors) and provides the coordinate change used to reduce elements, so
element equality is always decidable.  Elements travel in canonical
coordinates; presentation matrices act on generator coordinates, and
the two meet in ``FGAbelianGroup.lift`` / ``reduce``.
"""

from itertools import product

from . import intlinalg as lin


def _mm(A, B, out_cols):
    """mat_mul that keeps the right width when the middle rank is zero."""
    if not A:
        return []
    if not B:
        return lin.zeros(len(A), out_cols)
    return lin.mat_mul(A, B)


class FGAbelianGroup:
    """Z^n modulo the row span of an integer relation matrix."""

    __slots__ = ("ngens", "relations", "_dvec", "_V", "_Vinv", "_key")

    def __init__(self, ngens, relations=()):
        rels = tuple(tuple(int(c) for c in r) for r in relations)
        for r in rels:
            if len(r) != ngens:
                raise ValueError("relation length does not match generators")
        self.ngens = ngens
        self.relations = rels
        if rels:
            _, D, V = lin.snf([list(r) for r in rels])
            diag = lin.diag_of(D)
        else:
            V = lin.identity(ngens)
            diag = []
        dvec = [0] * ngens
        for j, d in enumerate(diag):
            dvec[j] = abs(d)
        self._dvec = tuple(dvec)
        self._V = V
        self._Vinv = None
        self._key = (ngens, self.canonical_form())

    # -- canonical structure -------------------------------------------

    def canonical_form(self):
        """(free rank, invariant factors > 1, in divisibility order)."""
        free = sum(1 for d in self._dvec if d == 0)
        tors = tuple(d for d in self._dvec if d > 1)
        return (free, tors)

    @property
    def invariants(self):
        return self.canonical_form()[1]

    @property
    def free_rank(self):
        return self.canonical_form()[0]

    def is_finite(self):
        return self.free_rank == 0

    def is_trivial(self):
        return self.canonical_form() == (0, ())

    def order(self):
        if not self.is_finite():
            raise ValueError("infinite group")
        n = 1
        for d in self._dvec:
            if d > 1:
                n *= d
        return n

    def __eq__(self, other):
        return isinstance(other, FGAbelianGroup) and (
            self.ngens == other.ngens and self.relations == other.relations
        )

    def __hash__(self):
        return hash((self.ngens, self.relations))

    def same_canonical_form(self, other):
        return self.canonical_form() == other.canonical_form()

    def __repr__(self):
        free, tors = self.canonical_form()
        bits = ["Z"] * free + [f"Z/{d}" for d in tors]
        return " + ".join(bits) if bits else "0"

    # -- elements -------------------------------------------------------

    def reduce(self, x):
        """Generator coordinates -> canonical coordinates."""
        if len(x) != self.ngens:
            raise ValueError("coordinate length mismatch")
        y = lin.vec_mat(list(x), self._V)
        return tuple(
            (c % d) if d else c for c, d in zip(y, self._dvec)
        )

    def lift(self, c):
        """Canonical coordinates -> some generator-coordinate representative."""
        if self._Vinv is None:
            self._Vinv = [
                lin.solve_left(self._V, row) for row in lin.identity(self.ngens)
            ]
        return tuple(lin.vec_mat(list(c), self._Vinv))

    @property
    def zero(self):
        return (0,) * self.ngens

    def add(self, a, b):
        return tuple(
            (x + y) % d if d else x + y for x, y, d in zip(a, b, self._dvec)
        )

    def neg(self, a):
        return tuple((-x) % d if d else -x for x, d in zip(a, self._dvec))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def smul(self, n, a):
        return tuple((n * x) % d if d else n * x for x, d in zip(a, self._dvec))

    def elements(self):
        """All elements, in canonical coordinates (finite groups only)."""
        if not self.is_finite():
            raise ValueError("infinite group")
        ranges = [range(d) if d > 1 else range(1) for d in self._dvec]
        return [tuple(t) for t in product(*ranges)]

    def generator_elements(self):
        """The images of the presentation generators."""
        eye = lin.identity(self.ngens)
        return [self.reduce(row) for row in eye]

    # -- constructors ----------------------------------------------------

    @classmethod
    def free(cls, n):
        return cls(n, ())

    @classmethod
    def cyclic(cls, n):
        return cls(1, ((n,),))

    @classmethod
    def of_invariants(cls, *ds):
        n = len(ds)
        rels = tuple(
            tuple(d if i == j else 0 for j in range(n)) for i, d in enumerate(ds)
        )
        return cls(n, rels)

    @classmethod
    def trivial(cls):
        return cls(0, ())


def direct_sum(A, B):
    na, nb = A.ngens, B.ngens
    rels = [list(r) + [0] * nb for r in A.relations]
    rels += [[0] * na + list(r) for r in B.relations]
    return FGAbelianGroup(na + nb, rels)


def tensor_group(A, B):
    """A (x) B presented on e_i (x) f_j with both relation sets stacked."""
    na, nb = A.ngens, B.ngens
    rels = []
    for r in A.relations:
        for j in range(nb):
            row = [0] * (na * nb)
            for i, c in enumerate(r):
                row[i * nb + j] = c
            rels.append(row)
    for s in B.relations:
        for i in range(na):
            row = [0] * (na * nb)
            for j, c in enumerate(s):
                row[i * nb + j] = c
            rels.append(row)
    return FGAbelianGroup(na * nb, rels)


def tensor_element(A, B, T, a, b):
    """The image of (a, b) under the canonical bilinear map into T."""
    xa, xb = A.lift(a), B.lift(b)
    nb = B.ngens
    out = [0] * (A.ngens * nb)
    for i, u in enumerate(xa):
        if u:
            for j, v in enumerate(xb):
                out[i * nb + j] = u * v
    return T.reduce(out)


class GroupHom:
    """A homomorphism given by a generator-coordinate matrix; the
    constructor checks that relations are sent to relations."""

    __slots__ = ("src", "dst", "matrix")

    def __init__(self, src, dst, matrix):
        M = [list(row) for row in matrix]
        if len(M) != src.ngens or any(len(r) != dst.ngens for r in M):
            raise ValueError("matrix shape does not match the groups")
        zero = dst.zero
        for r in src.relations:
            if dst.reduce(lin.vec_mat(list(r), M)) != zero:
                raise ValueError("map is not well defined on the presentation")
        self.src = src
        self.dst = dst
        self.matrix = M

    def apply(self, c):
        """Canonical coords in, canonical coords out."""
        if not self.matrix:
            return self.dst.zero
        return self.dst.reduce(lin.vec_mat(list(self.src.lift(c)), self.matrix))

    def then(self, other):
        if other.src is not self.dst and other.src != self.dst:
            raise ValueError("homomorphisms do not compose")
        return GroupHom(self.src, other.dst,
                        _mm(self.matrix, other.matrix, other.dst.ngens))

    def is_zero_map(self):
        zero = self.dst.zero
        return all(self.dst.reduce(row) == zero for row in self.matrix)

    def is_surjective(self):
        stack = self.matrix + [list(r) for r in self.dst.relations]
        return all(
            lin.solve_left(stack, row) is not None
            for row in lin.identity(self.dst.ngens)
        )

    def kernel(self):
        return KernelData(self)

    def is_injective(self):
        return self.kernel().group.is_trivial()

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        if self.src != other.src or self.dst != other.dst:
            return False
        return all(
            self.dst.reduce([a - b for a, b in zip(r1, r2)]) == self.dst.zero
            for r1, r2 in zip(self.matrix, other.matrix)
        )

    @classmethod
    def identity(cls, G):
        return cls(G, G, lin.identity(G.ngens))

    @classmethod
    def zero_map(cls, src, dst):
        return cls(src, dst, lin.zeros(src.ngens, dst.ngens))


class KernelData:
    """The kernel of a GroupHom as a group with an inclusion.

    Generators are a basis of the lattice {(x, y) : x M + y R_dst = 0};
    the y-part is the witness that x dies in the target group, and the
    relations express the source relations (and the pure witnesses) in
    that basis, so coordinates are well defined.
    """

    __slots__ = ("hom", "group", "_W", "inclusion")

    def __init__(self, hom):
        src, dst = hom.src, hom.dst
        M = hom.matrix
        RH = [list(r) for r in dst.relations]
        stacked = [list(r) for r in M] + RH
        W = lin.left_kernel(stacked) if stacked else lin.identity(src.ngens)
        n = src.ngens
        rels = []
        for r in src.relations:
            c = self._coords_raw(W, M, RH, list(r), n)
            if c is None:
                raise AssertionError("source relation escaped the kernel lattice")
            rels.append(c)
        if RH:
            for z in lin.left_kernel(RH):
                c = lin.solve_left(W, [0] * n + list(z))
                if c is None:
                    raise AssertionError("witness row escaped the kernel lattice")
                rels.append(c)
        self.hom = hom
        self._W = W
        self.group = FGAbelianGroup(len(W), rels)
        self.inclusion = GroupHom(self.group, src, [row[:n] for row in W])

    @staticmethod
    def _coords_raw(W, M, RH, x, n):
        v = [-t for t in lin.vec_mat(x, M)] if M else []
        if RH:
            y = lin.solve_left(RH, v + [0] * (len(RH[0]) - len(v)))
            if y is None:
                return None
        else:
            if any(v):
                return None
            y = []
        return lin.solve_left(W, list(x) + list(y), cols=n + len(RH))

    def coords_of(self, x):
        """Generator coordinates in the source -> kernel coordinates,
        or None when x does not die in the target."""
        return self._coords_raw(
            self._W, self.hom.matrix, [list(r) for r in self.hom.dst.relations],
            list(x), self.hom.src.ngens,
        )


class GroupIso:
    """A verified isomorphism: forward and backward homs whose
    composites are the identity on generators."""

    __slots__ = ("fwd", "bwd")

    def __init__(self, fwd, bwd):
        if fwd.src != bwd.dst or fwd.dst != bwd.src:
            raise ValueError("maps do not pair up")
        self.fwd = fwd
        self.bwd = bwd
        self.verify()

    def verify(self):
        src, dst = self.fwd.src, self.fwd.dst
        fb = _mm(self.fwd.matrix, self.bwd.matrix, src.ngens)
        for i, row in enumerate(fb):
            row = list(row)
            row[i] -= 1
            if src.reduce(row) != src.zero:
                raise AssertionError("backward map does not invert the forward map")
        bf = _mm(self.bwd.matrix, self.fwd.matrix, dst.ngens)
        for i, row in enumerate(bf):
            row = list(row)
            row[i] -= 1
            if dst.reduce(row) != dst.zero:
                raise AssertionError("forward map does not invert the backward map")
        return True

    def apply(self, c):
        return self.fwd.apply(c)

    def inverse_apply(self, c):
        return self.bwd.apply(c)


class TwoTermComplex:
    """[lower -d-> upper], a Picard category in presentation form."""

    __slots__ = ("lower", "upper", "d")

    def __init__(self, lower, upper, d):
        if not isinstance(d, GroupHom):
            d = GroupHom(lower, upper, d)
        if d.src != lower or d.dst != upper:
            raise ValueError("differential does not match the groups")
        self.lower = lower
        self.upper = upper
        self.d = d

    def __eq__(self, other):
        return (
            isinstance(other, TwoTermComplex)
            and self.lower == other.lower
            and self.upper == other.upper
            and self.d.matrix == other.d.matrix
        )

    def __repr__(self):
        return f"[{self.lower!r} -> {self.upper!r}]"


def pi0(C):
    """Connected components: coker d, in canonical form."""
    rels = list(C.upper.relations) + [list(r) for r in C.d.matrix]
    return FGAbelianGroup(C.upper.ngens, rels)


def pi1(C):
    """Automorphisms of the unit: ker d, in canonical form."""
    return C.d.kernel().group


class ChainMap:
    """A strict morphism of two-term complexes; the square is verified."""

    __slots__ = ("src", "dst", "f1", "f0")

    def __init__(self, src, dst, f1, f0):
        if not isinstance(f1, GroupHom):
            f1 = GroupHom(src.lower, dst.lower, f1)
        if not isinstance(f0, GroupHom):
            f0 = GroupHom(src.upper, dst.upper, f0)
        lhs = _mm(src.d.matrix, f0.matrix, dst.upper.ngens)
        rhs = _mm(f1.matrix, dst.d.matrix, dst.upper.ngens)
        zero = dst.upper.zero
        for r1, r2 in zip(lhs, rhs):
            if dst.upper.reduce([a - b for a, b in zip(r1, r2)]) != zero:
                raise ValueError("not a chain map: the square does not commute")
        self.src = src
        self.dst = dst
        self.f1 = f1
        self.f0 = f0

    def pi0_map(self):
        return GroupHom(pi0(self.src), pi0(self.dst), self.f0.matrix)

    def pi1_map(self):
        ka, kb = self.src.d.kernel(), self.dst.d.kernel()
        rows = []
        for row in ka.inclusion.matrix:
            img = lin.vec_mat(list(row), self.f1.matrix)
            c = kb.coords_of(img)
            if c is None:
                raise AssertionError("chain map does not preserve kernels")
            rows.append(c)
        return GroupHom(ka.group, kb.group, rows)

    @classmethod
    def identity(cls, C):
        return cls(C, C, GroupHom.identity(C.lower), GroupHom.identity(C.upper))


class CokerData:
    """The cokernel of a chain map with its projection, the natural
    trivialization of (projection o F), and the explicit pi0 comparison."""

    __slots__ = ("complex", "projection", "homotopy", "pi0_iso", "pi0_target")

    def __init__(self, complex_, projection, homotopy, pi0_iso, pi0_target):
        self.complex = complex_
        self.projection = projection
        self.homotopy = homotopy
        self.pi0_iso = pi0_iso
        self.pi0_target = pi0_target


def coker_functor(F):
    """Cokernel of a chain map as the good truncation of its cone.

    The lower term is (A^0 + B^-1) / <(-d_A a, f_1 a)>, the upper term
    is B^0, and the differential is (f_0, d_B).  pi0 of the result is
    literally presented by the same relations as coker(pi0 F); the
    comparison isomorphism is produced explicitly and verified anyway.
    """
    A, B = F.src, F.dst
    na0, nb1 = A.upper.ngens, B.lower.ngens
    rels = [list(r) + [0] * nb1 for r in A.upper.relations]
    rels += [[0] * na0 + list(r) for r in B.lower.relations]
    for da, f1 in zip(A.d.matrix, F.f1.matrix):
        rels.append([-c for c in da] + list(f1))
    lower = FGAbelianGroup(na0 + nb1, rels)
    dmat = [list(r) for r in F.f0.matrix] + [list(r) for r in B.d.matrix]
    coker = TwoTermComplex(lower, B.upper, dmat)

    # projection B -> Coker F and the homotopy trivializing p o F
    inc_b1 = [[0] * na0 + row for row in lin.identity(nb1)]
    proj = ChainMap(B, coker, GroupHom(B.lower, lower, inc_b1),
                    GroupHom.identity(B.upper))
    homotopy = GroupHom(A.upper, lower,
                        [row + [0] * nb1 for row in lin.identity(na0)])
    # h then d recovers f0 on A^0 ...
    hd = _mm(homotopy.matrix, dmat, B.upper.ngens)
    for r1, r2 in zip(hd, F.f0.matrix):
        if B.upper.reduce([a - b for a, b in zip(r1, r2)]) != B.upper.zero:
            raise AssertionError("homotopy fails against the differential")
    # ... and d_A then h agrees with f1 into the lower term
    dh = _mm(A.d.matrix, homotopy.matrix, lower.ngens)
    f1c = [[0] * na0 + list(r) for r in F.f1.matrix]
    for r1, r2 in zip(dh, f1c):
        if lower.reduce([a - b for a, b in zip(r1, r2)]) != lower.zero:
            raise AssertionError("homotopy fails against the chain map")

    # pi0(Coker F) vs coker(pi0 F): same generators, same relation span
    p0 = pi0(coker)
    target = FGAbelianGroup(
        B.upper.ngens,
        list(pi0(B).relations) + [list(r) for r in F.f0.matrix],
    )
    eye = lin.identity(B.upper.ngens)
    iso = GroupIso(GroupHom(p0, target, eye), GroupHom(target, p0, eye))
    return CokerData(coker, proj, homotopy, iso, target)


# -- butterflies -------------------------------------------------------


class Butterfly:
    """A butterfly from A to B: a group E with the NE-SW extension
    0 -> B^-1 -> E -> A^0 -> 0 and wings through A^-1 and B^0.

    Checked on construction: both wings commute (rho o lam = d_A,
    sigma o kap = d_B), the NW-SE diagonal is a complex
    (sigma o lam = 0), and the NE-SW sequence is exact.
    """

    __slots__ = ("src", "dst", "E", "rho", "kap", "lam", "sigma")

    def __init__(self, src, dst, E, rho, kap, lam, sigma):
        self.src = src
        self.dst = dst
        self.E = E
        self.rho = rho
        self.kap = kap
        self.lam = lam
        self.sigma = sigma
        self._verify()

    def _verify(self):
        A, B = self.src, self.dst
        _expect_equal(self.lam.then(self.rho), A.d, "left wing does not commute")
        _expect_equal(self.kap.then(self.sigma), B.d, "right wing does not commute")
        if not self.lam.then(self.sigma).is_zero_map():
            raise AssertionError("NW-SE diagonal is not a complex")
        if not self.kap.then(self.rho).is_zero_map():
            raise AssertionError("NE-SW composite is nonzero")
        if not self.rho.is_surjective():
            raise AssertionError("E does not surject onto A^0")
        if not self.kap.is_injective():
            raise AssertionError("B^-1 does not inject into E")
        ker = self.rho.kernel()
        stack = self.kap.matrix + [list(r) for r in self.E.relations]
        for row in ker.inclusion.matrix:
            if lin.solve_left(stack, list(row)) is None:
                raise AssertionError("NE-SW sequence is not exact at E")

    # -- induced maps ---------------------------------------------------

    def pi0_map(self):
        stack = self.rho.matrix + [list(r) for r in self.src.upper.relations]
        ne = self.E.ngens
        rows = []
        for g in lin.identity(self.src.upper.ngens):
            sol = lin.solve_left(stack, g)
            if sol is None:
                raise AssertionError("rho is not surjective")
            rows.append(lin.vec_mat(list(sol[:ne]), self.sigma.matrix))
        return GroupHom(pi0(self.src), pi0(self.dst), rows)

    def pi1_map(self):
        # x in ker d_A has lam(x) = kap(y); the induced map is x |-> -y,
        # the sign that makes strict butterflies induce f_1 on pi1.
        ka, kb = self.src.d.kernel(), self.dst.d.kernel()
        stack = self.kap.matrix + [list(r) for r in self.E.relations]
        nb1 = self.dst.lower.ngens
        rows = []
        for row in ka.inclusion.matrix:
            img = lin.vec_mat(list(row), self.lam.matrix)
            sol = lin.solve_left(stack, img)
            if sol is None:
                raise AssertionError("pi1 element escapes the B^-1 leg")
            c = kb.coords_of([-t for t in sol[:nb1]])
            if c is None:
                raise AssertionError("pi1 image misses the kernel")
            rows.append(c)
        return GroupHom(ka.group, kb.group, rows)

    # -- constructions ---------------------------------------------------

    @classmethod
    def of_chain_map(cls, F):
        """The strict butterfly E = A^0 + B^-1 of a chain map."""
        A, B = F.src, F.dst
        na0, nb1 = A.upper.ngens, B.lower.ngens
        E = direct_sum(A.upper, B.lower)
        rho = GroupHom(E, A.upper, [list(r) for r in lin.identity(na0)]
                       + lin.zeros(nb1, na0))
        kap = GroupHom(B.lower, E, [[0] * na0 + row for row in lin.identity(nb1)])
        lam = GroupHom(A.lower, E,
                       [list(da) + [-c for c in f1]
                        for da, f1 in zip(A.d.matrix, F.f1.matrix)])
        sigma = GroupHom(E, B.upper,
                         [list(r) for r in F.f0.matrix] + [list(r) for r in B.d.matrix])
        return cls(A, B, E, rho, kap, lam, sigma)

    @classmethod
    def identity(cls, C):
        return cls.of_chain_map(ChainMap.identity(C))

    def inverse(self):
        """The Baer inverse: negate the B-side legs."""
        neg_k = GroupHom(self.dst.lower, self.E,
                         [[-c for c in r] for r in self.kap.matrix])
        neg_s = GroupHom(self.E, self.dst.upper,
                         [[-c for c in r] for r in self.sigma.matrix])
        return Butterfly(self.src, self.dst, self.E, self.rho, neg_k,
                         self.lam, neg_s)


def _expect_equal(h1, h2, msg):
    if not (h1 == h2):
        raise AssertionError(msg)


def _subquotient_butterfly(E1, E2, over, map1, map2, diag_rows):
    """Shared plumbing for compose/baer_sum: the subgroup of E1 + E2
    where map1 and map2 agree in ``over``, modulo the antidiagonal rows."""
    big = direct_sum(E1, E2)
    fiber = GroupHom(
        big, over,
        [list(r) for r in map1] + [[-c for c in r] for r in map2],
    )
    K = fiber.kernel()
    rels = list(K.group.relations)
    for row in diag_rows:
        c = K.coords_of(row)
        if c is None:
            raise AssertionError("antidiagonal escapes the fibre product")
        rels.append(c)
    E = FGAbelianGroup(K.group.ngens, rels)
    inc = [list(r) for r in K.inclusion.matrix]
    return E, inc, K


def butterfly_compose(b1, b2):
    """The composite butterfly of b1 : A -> B followed by b2 : B -> C.

    E is the fibre product of sigma_1 and rho_2 over B^0 modulo the
    antidiagonal image of B^-1; all four legs are transported along and
    the butterfly axioms are re-verified on the result.
    """
    if b1.dst != b2.src:
        raise ValueError("butterflies do not compose: mismatched complexes")
    A, B, C = b1.src, b1.dst, b2.dst
    n1, n2 = b1.E.ngens, b2.E.ngens
    diag = [
        list(kr) + list(lr)
        for kr, lr in zip(b1.kap.matrix, b2.lam.matrix)
    ]
    E, inc, K = _subquotient_butterfly(
        b1.E, b2.E, B.upper, b1.sigma.matrix, b2.rho.matrix, diag,
    )
    rho = GroupHom(E, A.upper,
                   _mm([r[:n1] for r in inc], b1.rho.matrix, A.upper.ngens))
    sigma = GroupHom(E, C.upper,
                     _mm([r[n1:] for r in inc], b2.sigma.matrix, C.upper.ngens))
    kap_rows = []
    for row in b2.kap.matrix:
        c = K.coords_of([0] * n1 + list(row))
        if c is None:
            raise AssertionError("kappa does not land in the fibre product")
        kap_rows.append(c)
    lam_rows = []
    for row in b1.lam.matrix:
        c = K.coords_of(list(row) + [0] * n2)
        if c is None:
            raise AssertionError("lambda does not land in the fibre product")
        lam_rows.append(c)
    return Butterfly(A, C, E, rho,
                     GroupHom(C.lower, E, kap_rows),
                     GroupHom(A.lower, E, lam_rows),
                     sigma)


def butterfly_baer_sum(b1, b2):
    """The Baer sum of two butterflies A -> B: fibre product over A^0
    modulo the antidiagonal of B^-1, with sigma added."""
    if b1.src != b2.src or b1.dst != b2.dst:
        raise ValueError("Baer sum needs butterflies between the same complexes")
    A, B = b1.src, b1.dst
    n1, n2 = b1.E.ngens, b2.E.ngens
    diag = [
        list(kr) + [-c for c in k2r]
        for kr, k2r in zip(b1.kap.matrix, b2.kap.matrix)
    ]
    E, inc, K = _subquotient_butterfly(
        b1.E, b2.E, A.upper, b1.rho.matrix, b2.rho.matrix, diag,
    )
    rho = GroupHom(E, A.upper,
                   _mm([r[:n1] for r in inc], b1.rho.matrix, A.upper.ngens))
    sig1 = _mm([r[:n1] for r in inc], b1.sigma.matrix, B.upper.ngens)
    sig2 = _mm([r[n1:] for r in inc], b2.sigma.matrix, B.upper.ngens)
    sigma = GroupHom(E, B.upper,
                     [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(sig1, sig2)])
    kap_rows = []
    for row in b1.kap.matrix:
        c = K.coords_of(list(row) + [0] * n2)
        if c is None:
            raise AssertionError("kappa does not land in the fibre product")
        kap_rows.append(c)
    lam_rows = []
    for r1, r2 in zip(b1.lam.matrix, b2.lam.matrix):
        c = K.coords_of(list(r1) + list(r2))
        if c is None:
            raise AssertionError("lambda does not land in the fibre product")
        lam_rows.append(c)
    return Butterfly(A, B, E, rho,
                     GroupHom(B.lower, E, kap_rows),
                     GroupHom(A.lower, E, lam_rows),
                     sigma)


class ButterflyIso:
    """An isomorphism of butterflies: a group isomorphism of the E's
    commuting with all four legs, verified on construction."""

    __slots__ = ("src", "dst", "iso")

    def __init__(self, src, dst, iso):
        self.src = src
        self.dst = dst
        self.iso = iso
        _expect_equal(iso.fwd.then(dst.rho), src.rho,
                      "isomorphism does not respect rho")
        _expect_equal(iso.fwd.then(dst.sigma), src.sigma,
                      "isomorphism does not respect sigma")
        _expect_equal(src.kap.then(iso.fwd), dst.kap,
                      "isomorphism does not respect kappa")
        _expect_equal(src.lam.then(iso.fwd), dst.lam,
                      "isomorphism does not respect lambda")


def find_butterfly_iso(b1, b2):
    """Solve for an isomorphism of butterflies between b1 and b2.

    The commutation requirements are integer-linear in the entries of
    the matrix of E1 -> E2, with congruence conditions coming from the
    relations of the target groups, so one solve_left_mod per direction
    does it.  Raises when no isomorphism exists.
    """
    fwd = _solve_butterfly_hom(b1, b2)
    if fwd is None:
        raise ValueError("butterflies are not isomorphic (no structure map found)")
    bwd = _solve_butterfly_hom(b2, b1)
    if bwd is None:
        raise AssertionError("leg-respecting map found one way only")
    # The two solves need not be mutually inverse: leg-respecting
    # endomorphisms are id + kappa.mu with mu.kappa = 0, so they square
    # to zero away from the identity and 2*bwd - bwd*fwd*bwd corrects
    # the backward map into the exact inverse.
    theta = _mm(fwd, bwd, b1.E.ngens)
    corr = [
        [(2 if i == j else 0) - theta[i][j] for j in range(len(theta))]
        for i in range(len(theta))
    ]
    bwd = lin.mat_mul(bwd, corr)
    iso = GroupIso(GroupHom(b1.E, b2.E, fwd), GroupHom(b2.E, b1.E, bwd))
    return ButterflyIso(b1, b2, iso)


def _solve_butterfly_hom(b1, b2):
    """A matrix X with X then (rho2, sigma2) = (rho1, sigma1),
    kap1 X = kap2, lam1 X = lam2, and relations preserved; or None."""
    n1, n2 = b1.E.ngens, b2.E.ngens
    nun = n1 * n2
    cols = []
    rhs = []
    mods = []

    def add_rowcond(vecs, target_rows, G, post=None):
        """Conditions sum_j vec[j] X[j] (then post) = target in G, for
        each vec/target pair; everything lands in canonical coords."""
        P = post if post is not None else lin.identity(n2)
        PV = lin.mat_mul(P, G._V)
        for vec, trow in zip(vecs, target_rows):
            tred = lin.vec_mat(list(trow), G._V)
            for col in range(G.ngens):
                coeff = [0] * nun
                for j in range(n1):
                    if vec[j]:
                        for i in range(n2):
                            if PV[i][col]:
                                coeff[j * n2 + i] += vec[j] * PV[i][col]
                cols.append(coeff)
                rhs.append(tred[col])
                mods.append(G._dvec[col])

    # well defined on relations of E1 (target 0 in E2)
    add_rowcond([list(r) for r in b1.E.relations],
                [[0] * n2] * len(b1.E.relations), b2.E)
    # X then rho2 = rho1, X then sigma2 = sigma1 (per E1 generator)
    add_rowcond(lin.identity(n1), b1.rho.matrix, b2.src.upper,
                post=b2.rho.matrix)
    add_rowcond(lin.identity(n1), b1.sigma.matrix, b2.dst.upper,
                post=b2.sigma.matrix)
    # kap1 then X = kap2, lam1 then X = lam2
    add_rowcond(b1.kap.matrix, b2.kap.matrix, b2.E)
    add_rowcond(b1.lam.matrix, b2.lam.matrix, b2.E)

    A = [[cols[e][u] for e in range(len(cols))] for u in range(nun)]
    sol = lin.solve_left_mod(A, rhs, mods)
    if sol is None:
        return None
    return [sol[j * n2:(j + 1) * n2] for j in range(n1)]


# -- Heisenberg central extensions -------------------------------------


class HeisenbergGroup:
    """The Heisenberg extension 0 -> A(x)B -> H -> A x B -> 0.

    Elements are triples (a, b, t) of canonical coordinates with the
    law (a,b,t)(a',b',t') = (a+a', b+b', t+t'+a(x)b'); the canonical
    set-theoretic section is s(a,b) = (a,b,0).
    """

    __slots__ = ("A", "B", "T", "_ttable")

    def __init__(self, A, B):
        if not (A.is_finite() and B.is_finite()):
            raise ValueError("Heisenberg groups are built from finite pieces here")
        self.A = A
        self.B = B
        self.T = tensor_group(A, B)
        self._ttable = {}

    def tensor(self, a, b):
        t = self._ttable.get((a, b))
        if t is None:
            t = tensor_element(self.A, self.B, self.T, a, b)
            self._ttable[(a, b)] = t
        return t

    @property
    def identity(self):
        return (self.A.zero, self.B.zero, self.T.zero)

    def mul(self, x, y):
        a, b, t = x
        a2, b2, t2 = y
        return (
            self.A.add(a, a2),
            self.B.add(b, b2),
            self.T.add(self.T.add(t, t2), self.tensor(a, b2)),
        )

    def inv(self, x):
        a, b, t = x
        return (
            self.A.neg(a),
            self.B.neg(b),
            self.T.sub(self.tensor(a, b), t),
        )

    def commutator(self, x, y):
        return self.mul(self.mul(x, y), self.inv(self.mul(y, x)))

    def order(self):
        return self.A.order() * self.B.order() * self.T.order()

    def elements(self):
        return [
            (a, b, t)
            for a in self.A.elements()
            for b in self.B.elements()
            for t in self.T.elements()
        ]

    def section(self, a, b):
        return (a, b, self.T.zero)

    def extracted_cocycle(self, a, b, a2, b2):
        """The 2-cocycle classifying the extension, computed through the
        group law from the canonical section."""
        prod = self.mul(self.section(a, b), self.section(a2, b2))
        back = self.mul(prod, self.inv(self.section(prod[0], prod[1])))
        if back[0] != self.A.zero or back[1] != self.B.zero:
            raise AssertionError("section defect is not central")
        return back[2]

    def tensor_cocycle(self, a, b, a2, b2):
        return self.tensor(a, b2)

    def is_central_element(self, x):
        els = self.elements()
        return all(self.mul(x, y) == self.mul(y, x) for y in els)


def heisenberg(A, B):
    return HeisenbergGroup(A, B)


class ExtIso:
    """Isomorphism of two central extensions of G = A x A x B by T,
    both given by cocycles, of the shape (g, t) |-> (g, t + c(g))."""

    __slots__ = ("A", "B", "G_elements", "T", "f_src", "f_dst", "cochain")

    def __init__(self, A, B, G_elements, T, f_src, f_dst, cochain):
        self.A = A
        self.B = B
        self.G_elements = G_elements
        self.T = T
        self.f_src = f_src
        self.f_dst = f_dst
        self.cochain = cochain
        self.verify()

    def _gadd(self, g, h):
        return (
            self.A.add(g[0], h[0]),
            self.A.add(g[1], h[1]),
            self.B.add(g[2], h[2]),
        )

    def verify(self):
        """Element-level check that the shift is a homomorphism of
        extensions: c(g) + c(h) - c(g+h) = f_dst(g,h) - f_src(g,h)
        for every pair, and c vanishes on the unit (so the inclusion of
        T and the projection to G both commute on the nose)."""
        T, c = self.T, self.cochain
        unit = (self.A.zero, self.A.zero, self.B.zero)
        if c[unit] != T.zero:
            raise AssertionError("cochain does not fix the unit")
        for g in self.G_elements:
            for h in self.G_elements:
                lhs = T.sub(T.add(c[g], c[h]), c[self._gadd(g, h)])
                rhs = T.sub(self.f_dst(g, h), self.f_src(g, h))
                if lhs != rhs:
                    raise AssertionError("shift is not an extension morphism")
        return True

    def apply(self, g, t):
        return (g, self.T.add(t, self.cochain[g]))


def biadditivity_witness(A, B):
    """An explicit isomorphism (+_A)^* H ~ p_1^* H + p_2^* H of central
    extensions of A x A x B by A(x)B, verified on every pair.

    Both sides are cocycle extensions; the pullback of the Heisenberg
    cocycle along the addition is (a1+a2)(x)b', the Baer sum of the two
    projection pullbacks is a1(x)b' + a2(x)b'.  A shifting 1-cochain is
    searched for (the zero cochain works exactly when the tensor pairing
    is bilinear on the presentations, which is what this witnesses)."""
    if not (A.is_finite() and B.is_finite()):
        raise ValueError("biadditivity witness needs finite groups")
    if A.order() > 16 or B.order() > 16:
        raise ValueError("biadditivity witness is exhaustive; keep |A|,|B| <= 16")
    H = heisenberg(A, B)
    T = H.T

    def f_pull(g, h):
        return H.tensor(A.add(g[0], g[1]), h[2])

    def f_sum(g, h):
        return T.add(H.tensor(g[0], h[2]), H.tensor(g[1], h[2]))

    G_elements = [
        (a1, a2, b)
        for a1 in A.elements()
        for a2 in A.elements()
        for b in B.elements()
    ]
    cochain = _search_shift(G_elements, (A, A, B), T, f_pull, f_sum)
    if cochain is None:
        raise ValueError(
            "no biadditivity witness exists at this instance "
            "(the tensor cocycles are not cohomologous)"
        )
    return ExtIso(A, B, G_elements, T, f_pull, f_sum, cochain)


def _search_shift(G_elements, parts, T, f_src, f_dst):
    """Find c with dc = f_dst - f_src by propagating from c = 0 on the
    canonical generators; falls back to a small exhaustive search over
    generator values when propagation fails."""
    A1, A2, B = parts

    def gadd(g, h):
        return (A1.add(g[0], h[0]), A2.add(g[1], h[1]), B.add(g[2], h[2]))

    unit = (A1.zero, A2.zero, B.zero)

    def diff(g, h):
        return T.sub(f_dst(g, h), f_src(g, h))

    def propagate(gen_values):
        c = {unit: T.zero}
        for g in G_elements:
            if g in c:
                continue
            # peel one canonical generator off g
            done = False
            for gen, val in gen_values:
                prev = gadd(g, _neg3(parts, gen))
                if prev in c:
                    c[g] = T.sub(T.add(c[prev], val), diff(prev, gen))
                    done = True
                    break
            if not done:
                return None
        return c

    def check(c):
        return all(
            T.sub(T.add(c[g], c[h]), c[gadd(g, h)]) == diff(g, h)
            for g in G_elements
            for h in G_elements
        )

    gens = _triple_generators(parts)
    zero_guess = [(g, T.zero) for g in gens]
    c = propagate(zero_guess)
    if c is not None and check(c):
        return c
    # exhaustive fallback over assignments on the generators
    tel = T.elements()
    if len(tel) ** len(gens) > 4096:
        return None
    for assign in product(tel, repeat=len(gens)):
        c = propagate(list(zip(gens, assign)))
        if c is not None and check(c):
            return c
    return None


def _neg3(parts, g):
    A1, A2, B = parts
    return (A1.neg(g[0]), A2.neg(g[1]), B.neg(g[2]))


def _triple_generators(parts):
    """One generator triple per live canonical coordinate of each part."""
    A1, A2, B = parts
    gens = []
    for i, G in enumerate(parts):
        for pos, d in enumerate(G._dvec):
            if d == 1:
                continue
            v = tuple(1 if k == pos else 0 for k in range(G.ngens))
            triple = [A1.zero, A2.zero, B.zero]
            triple[i] = v
            gens.append(tuple(triple))
    return gens
