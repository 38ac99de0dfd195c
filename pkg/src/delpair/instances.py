"""Named fixtures and seeded instance generators.

The CLI verification suites and the test suite draw their random
instances from here so that a (seed, command) pair always means the
same list of inputs, no matter which entry point asked.
"""

from .biform import all_forms
from .correspond import Correspondence
from .curve import Divisor, FracFun, infinity, point_of, rational_point
from .picard import ChainMap, FGAbelianGroup, TwoTermComplex
from .poly import Poly
from .symbols import SymbolSum
from . import intlinalg as lin


# ---------------------------------------------------------------------------
# named instances


GROUP_LABELS = ("Z2", "Z3", "Z4", "Z2xZ2")


def group_from_label(label):
    """Finite abelian groups by name: Z<n> cyclic, joined with x for sums."""
    s = label.strip().replace("Z/", "Z").replace("+", "x")
    parts = s.split("x")
    invs = []
    for p in parts:
        p = p.strip()
        if not (p.startswith("Z") and p[1:].isdigit()):
            raise ValueError(f"unknown group label {label!r} (use Z2, Z3, Z2xZ2, ...)")
        n = int(p[1:])
        if n < 1:
            raise ValueError(f"unknown group label {label!r}")
        invs.append(n)
    if invs == [1]:
        return FGAbelianGroup.trivial()
    return FGAbelianGroup.of_invariants(*invs)


def named_correspondence(name, field):
    """The fixture correspondences: diagonal, shift graphs, the
    Frobenius graph, and fibre classes."""
    s = name.strip().lower()
    if s == "diagonal":
        return Correspondence.diagonal(field)
    if s.startswith("shift"):
        c = int(s[5:] or 1)
        return Correspondence.graph(field, Poly.of(field, [c, 1]))
    if s == "frobenius":
        coeffs = [field.zero] * field.q + [field.one]
        return Correspondence.graph(field, Poly.of(field, coeffs))
    if s == "square":
        return Correspondence.graph(field, Poly.of(field, [0, 0, 1]))
    if s == "vertical":
        return Correspondence.vertical(field, Poly.x(field))
    if s == "horizontal":
        return Correspondence.horizontal(field, rational_point(field, 0))
    raise ValueError(f"unknown correspondence fixture {name!r}")


CORRESPONDENCE_FIXTURES = (
    "diagonal", "shift1", "shift2", "frobenius", "square",
    "vertical", "horizontal",
)


# ---------------------------------------------------------------------------
# seeded generators


def random_poly(field, rng, maxdeg, monic=False):
    """A random polynomial of degree exactly rng-chosen in [0, maxdeg]."""
    d = rng.randrange(maxdeg + 1)
    coeffs = [field.rand(rng) for _ in range(d)] + (
        [field.one] if monic else [field.rand_unit(rng)]
    )
    return Poly.of(field, coeffs)


def random_function(field, rng, maxdeg=3):
    """A random nonconstant rational function num/den, each factor of
    degree at most maxdeg (so total degree at most 2*maxdeg)."""
    while True:
        num = random_poly(field, rng, maxdeg)
        den = random_poly(field, rng, maxdeg)
        f = FracFun.from_frac(num, den)
        if not f.is_constant():
            return f


def random_pair(field, rng, maxdeg=3):
    return random_function(field, rng, maxdeg), random_function(field, rng, maxdeg)


def random_symbol_sum(field, rng, terms=3, maxdeg=2):
    s = SymbolSum.zero(field)
    for _ in range(rng.randrange(1, terms + 1)):
        f = random_function(field, rng, maxdeg)
        g = random_function(field, rng, maxdeg)
        s = s + rng.choice([-2, -1, 1, 2]) * SymbolSum.of_pair(f, g)
    return s


def random_divisor(field, rng, npoints=3, maxdeg=2, degree_zero=False):
    """A random divisor supported on small-degree points (and infinity)."""
    D = Divisor(field)
    for _ in range(rng.randrange(1, npoints + 1)):
        if rng.random() < 0.2:
            P = infinity(field)
        else:
            d = rng.randrange(1, maxdeg + 1)
            pi = _random_irreducible(field, rng, d)
            P = point_of(field, pi)
        D = D + rng.choice([-2, -1, 1, 2]) * Divisor(field, {P: 1})
    if degree_zero:
        D = D - D.degree * Divisor(field, {rational_point(field, 0): 1})
    return D


def _random_irreducible(field, rng, deg):
    while True:
        coeffs = [field.rand(rng) for _ in range(deg)] + [field.one]
        p = Poly.of(field, coeffs)
        if p.is_irreducible():
            return p


def random_graph_correspondence(field, rng, maxdeg=3):
    """The graph of a random nonconstant polynomial map of degree <= maxdeg."""
    while True:
        phi = random_poly(field, rng, maxdeg)
        if phi.deg >= 1:
            return Correspondence.graph(field, phi)


def random_chain_map(rng, max_rank=3, max_entry=4):
    """A random chain map of free two-term complexes.

    The target differential and the degree-zero component are free; the
    source is the pullback [ker(f0 - d_B) -> A^0], which makes the
    square commute by construction without losing generality up to
    quasi-isomorphism.
    """
    m = rng.randrange(1, max_rank + 1)
    q = rng.randrange(0, max_rank + 1)
    n = rng.randrange(1, max_rank + 1)
    DB = [[rng.randint(-max_entry, max_entry) for _ in range(m)] for _ in range(q)]
    F0 = [[rng.randint(-max_entry, max_entry) for _ in range(m)] for _ in range(n)]
    K = lin.left_kernel([list(r) for r in F0] + [[-c for c in r] for r in DB])
    A = TwoTermComplex(
        FGAbelianGroup.free(len(K)), FGAbelianGroup.free(n),
        [row[:n] for row in K],
    )
    B = TwoTermComplex(FGAbelianGroup.free(q), FGAbelianGroup.free(m), DB)
    return ChainMap(A, B, [row[n:] for row in K], F0)


def sweep_irreducible_forms(field, max_bidegree=(2, 1)):
    """Every canonical irreducible form of bidegree <= max_bidegree
    (componentwise), in a deterministic order."""
    amax, bmax = max_bidegree
    out = []
    seen = set()
    for a in range(amax + 1):
        for b in range(bmax + 1):
            if a == 0 and b == 0:
                continue
            for form in all_forms(field, a, b):
                can = form.canonical()[1]
                if can._key in seen:
                    continue
                seen.add(can._key)
                if can.is_irreducible():
                    out.append(can)
    return out


# ---------------------------------------------------------------------------
# the truncated relative Picard model on P^1


def truncated_ch1(field, points=None):
    """The two-term complex [functions with divisor in Sigma -> Z^Sigma]
    truncating CH^1 of the projective line to a finite point set.

    Sigma always contains infinity.  The function group is generated by
    a multiplicative generator of the ground field (finite order q-1)
    and the monic irreducibles pi_P for the finite points of Sigma; the
    differential sends pi_P to (P) - deg(P)*(inf).  pi1 is the unit
    group, pi0 is Z by total degree.

    Returns (complex, sigma) with sigma the ordered point list.
    """
    if not field.is_finite:
        raise ValueError("the truncated model needs a finite ground field")
    if points is None:
        points = [0, 1]
    sigma = [infinity(field)]
    for p in points:
        P = p if hasattr(p, "is_infinite") else rational_point(field, p)
        if P.is_infinite or P in sigma:
            continue
        sigma.append(P)
    nfin = len(sigma) - 1
    lower = FGAbelianGroup(1 + nfin, [(field.q - 1,) + (0,) * nfin])
    rows = [[0] * len(sigma)]  # the unit generator has trivial divisor
    for i, P in enumerate(sigma[1:]):
        row = [0] * len(sigma)
        row[0] = -P.deg
        row[i + 1] = 1
        rows.append(row)
    upper = FGAbelianGroup.free(len(sigma))
    return TwoTermComplex(lower, upper, rows), sigma


def ch1_mult_map(C, n):
    """The n-th power endofunctor of a truncated CH^1 complex."""
    return ChainMap(
        C, C,
        [[n * v for v in row] for row in lin.identity(C.lower.ngens)],
        [[n * v for v in row] for row in lin.identity(C.upper.ngens)],
    )


def ch1_square_pullback(field):
    """Pullback along t -> t^2 on the truncation at Sigma = {inf, 0}.

    The preimage of both 0 and infinity is the same point doubled, so
    Sigma is preimage-closed: pullback doubles the divisor generators
    and squares pi_0 while fixing the units.
    """
    C, sigma = truncated_ch1(field, points=[0])
    f1 = [[1, 0], [0, 2]]
    f0 = [[2, 0], [0, 2]]
    return C, ChainMap(C, C, f1, f0)
