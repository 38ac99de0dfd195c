"""Batch command-line front end.

One entry point (``delpair``) with subcommands, each of which parses its
inputs, runs a verification suite, and prints a report -- human-readable
text by default, a machine-readable JSON document with ``--json``.  Exit
status is a contract: 0 when every instance passes, 1 when any checked
property fails, 2 on malformed input.

Reports are byte-deterministic given the command line and the seed; the
wall-clock duration is only added under ``--timing``.  The default seed
can be set with the DELPAIR_SEED environment variable.
"""

import argparse
import os
import random
import sys
import time

from . import __version__
from .correspond import Correspondence, act, compose, composition_point_check
from .curve import ClosedPoint, Divisor, FracFun, poly_fun
from .family import (FamilyDivisor, a1_cover, compare_routes,
                     intersection_number, p1_cover)
from .gfield import field_from_label, gf
from .instances import (CORRESPONDENCE_FIXTURES, GROUP_LABELS,
                        group_from_label, named_correspondence, random_chain_map,
                        random_pair)
from .parser import ParseError, field_label, parse_expr, print_expr
from .picard import biadditivity_witness, coker_functor, heisenberg, pi0
from .report import Report
from .symbols import deligne_scalar, weil_product

# exhaustive associativity up to this many group elements, sampling beyond
_ASSOC_EXHAUSTIVE = 64
_ASSOC_SAMPLES = 2000


def _default_seed():
    try:
        return int(os.environ.get("DELPAIR_SEED", "0"))
    except ValueError:
        return 0


def _split_field_tag(exprs):
    """Peel a trailing ``over LABEL`` off a positional argument list."""
    if "over" in exprs:
        i = exprs.index("over")
        label = " ".join(exprs[i + 1:])
        if not label:
            raise ParseError("missing field label after 'over'",
                             " ".join(exprs), len(" ".join(exprs)))
        return exprs[:i], field_from_label(label)
    return exprs, None


def _parse_with(text, field):
    if "over" in text.split():
        return parse_expr(text)
    if field is None:
        raise ParseError("missing field tag (append 'over GF(q)' or 'over QQ')",
                         text, len(text))
    return parse_expr(text, field)


def _as_function(value, what):
    if isinstance(value, FracFun):
        return value
    if isinstance(value, ClosedPoint):
        if value.is_infinite:
            raise ValueError("%s: inf is a point, not a function" % what)
        return FracFun.from_poly(value.pi)
    raise ValueError("%s must be a rational function of t" % what)


def _as_divisor(value, what):
    if isinstance(value, Divisor):
        return value
    if isinstance(value, ClosedPoint):
        return Divisor(value.field, {value: 1})
    raise ValueError("%s must be a divisor on the line" % what)


def _as_correspondence(token, field, what):
    if token in CORRESPONDENCE_FIXTURES:
        if field is None:
            raise ValueError("fixture %r needs a field tag (append 'over GF(q)')"
                             % token)
        return named_correspondence(token, field)
    value = _parse_with(token, field)
    if isinstance(value, FamilyDivisor):
        return Correspondence.of_divisor(value)
    if isinstance(value, Correspondence):
        return value
    raise ValueError("%s must be a correspondence (a form in x0,x1,y0,y1 "
                     "or a fixture name)" % what)


# -- subcommands ------------------------------------------------------


def _cmd_weil(args):
    field = gf(args.q)
    rep = Report("weil", seed=args.seed, field=field_label(field))
    rng = random.Random(args.seed)
    one = field.one
    fixture = (poly_fun(field, [0, 1]),
               poly_fun(field, [field.neg(one), 1]))
    for k in range(args.trials):
        if k == 0:
            name, (f, g) = "fixture", fixture
        else:
            name, (f, g) = "trial-%d" % k, random_pair(field, rng, maxdeg=3)
        p = weil_product(f, g)
        rep.add(name, p == one, f=repr(f), g=repr(g), product=field.elt_str(p))
    return rep


def _cmd_pair(args):
    exprs, field = _split_field_tag(args.exprs)
    if len(exprs) != 2:
        raise ValueError("pair takes exactly two function arguments")
    f = _as_function(_parse_with(exprs[0], field), "f")
    g = _as_function(_parse_with(exprs[1], field), "g")
    F = f.field
    rep = Report("pair", field=field_label(F))
    s = deligne_scalar(f, g)
    t = deligne_scalar(g, f)
    rep.add("pair", s == t, f=repr(f), g=repr(g),
            scalar=F.elt_str(s), swapped=F.elt_str(t), symmetric=s == t)
    return rep


def _cmd_theta_compare(args):
    exprs, field = _split_field_tag(args.exprs)
    if len(exprs) != 2:
        raise ValueError("theta-compare takes exactly two divisor arguments")
    D = _parse_with(exprs[0], field)
    E = _parse_with(exprs[1], field)
    for v in (D, E):
        if not isinstance(v, FamilyDivisor):
            raise ValueError("theta-compare expects effective family divisors "
                             "(forms in x0,x1,y0,y1)")
    F = D.field
    if D.common_components(E):
        raise ValueError("the divisors share a component; the pairing needs "
                         "disjoint supports")
    cover = p1_cover(F) if args.base == "P1" else a1_cover(F)
    rep = Report("theta-compare", field=field_label(F))
    name = "%s,%s" % (print_expr(D, with_field=False),
                      print_expr(E, with_field=False))
    try:
        out = compare_routes(D, E, cover)
    except AssertionError as exc:
        rep.add(name, False, base=args.base, reason=str(exc))
        return rep
    ok = out["theta_route_degree"] == out["norm_route_degree"]
    wit = {
        "base": args.base,
        "bidegrees": [list(D.bidegree), list(E.bidegree)],
        "class_degree": out["class_degree"],
        "theta_route_degree": out["theta_route_degree"],
        "norm_route_degree": out["norm_route_degree"],
        "cocycle": {str(k): str(v) for k, v in out["cocycle"].items()},
    }
    if args.base == "P1":
        (a, b), (c, d) = D.bidegree, E.bidegree
        wit["intersection"] = intersection_number(D, E)
        ok = ok and out["class_degree"] == wit["intersection"] == a * d + b * c
    rep.add(name, ok, **wit)
    return rep


def _cmd_corr(args):
    exprs, field = _split_field_tag(args.exprs)
    if args.mode == "act":
        if len(exprs) != 2:
            raise ValueError("corr act takes a correspondence and a divisor")
        alpha = _as_correspondence(exprs[0], field, "the first argument")
        m = _as_divisor(_parse_with(exprs[1], alpha.field), "the second argument")
        rep = Report("corr act", field=field_label(alpha.field))
        out = act(alpha, m)
        ok = out.degree == alpha.fiber_degree * m.degree
        rep.add("act", ok, correspondence=repr(alpha), divisor=repr(m),
                result=repr(out), degree=out.degree,
                fiber_degree=alpha.fiber_degree)
        return rep
    if len(exprs) != 2:
        raise ValueError("corr compose takes two correspondences")
    g = _as_correspondence(exprs[0], field, "the first argument")
    h = _as_correspondence(exprs[1], field, "the second argument")
    rep = Report("corr compose", field=field_label(g.field))
    out = compose(g, h)
    ok = composition_point_check(g, h, out)
    rep.add("compose", ok, g=repr(g), h=repr(h), composed=repr(out),
            bidegree=list(out.bidegree))
    return rep


def _cmd_heisenberg(args):
    A = group_from_label(args.A)
    B = group_from_label(args.B)
    H = heisenberg(A, B)
    rep = Report("heisenberg %s %s" % (args.A, args.B), seed=args.seed)
    els = H.elements()
    n = len(els)

    e = H.identity
    ok = all(H.mul(e, g) == g and H.mul(g, e) == g for g in els)
    ok = ok and all(H.mul(g, H.inv(g)) == e and H.mul(H.inv(g), g) == e
                    for g in els)
    if n <= _ASSOC_EXHAUSTIVE:
        mode = "exhaustive"
        triples = ((x, y, z) for x in els for y in els for z in els)
    else:
        mode = "sampled"
        rng = random.Random(args.seed)
        triples = ((rng.choice(els), rng.choice(els), rng.choice(els))
                   for _ in range(_ASSOC_SAMPLES))
    ok = ok and all(H.mul(H.mul(x, y), z) == H.mul(x, H.mul(y, z))
                    for x, y, z in triples)
    rep.add("axioms", ok, order=n, associativity=mode)

    central = all(H.is_central_element((A.zero, B.zero, t))
                  for t in H.T.elements())
    rep.add("centrality", central, center_contains="A tensor B")

    match = all(H.extracted_cocycle(a1, b1, a2, b2) ==
                H.tensor_cocycle(a1, b1, a2, b2)
                for a1 in A.elements() for b1 in B.elements()
                for a2 in A.elements() for b2 in B.elements())
    rep.add("cocycle", match, cocycle="match" if match else "mismatch")

    try:
        biadditivity_witness(A, B)
        rep.add("biadditivity", True, witness="found and verified")
    except ValueError as exc:
        rep.add("biadditivity", False, reason=str(exc))
    return rep


def _cmd_picard(args):
    rep = Report("picard coker", seed=args.seed)
    rng = random.Random(args.seed)
    for k in range(args.trials):
        F = random_chain_map(rng)
        try:
            data = coker_functor(F)
        except (AssertionError, ValueError) as exc:
            rep.add("map-%d" % k, False, reason=str(exc))
            continue
        ok = pi0(data.complex).same_canonical_form(data.pi0_target)
        rep.add("map-%d" % k, ok,
                pi0_coker=repr(pi0(data.complex)),
                src_shape=[F.src.lower.ngens, F.src.upper.ngens],
                dst_shape=[F.dst.lower.ngens, F.dst.upper.ngens])
    return rep


# -- argument parsing -------------------------------------------------


def _build_parser():
    top = argparse.ArgumentParser(
        prog="delpair",
        description="Exact verification suites for the Deligne pairing "
                    "calculus: tame symbols, theta cocycles, correspondences, "
                    "Heisenberg groups, and butterfly cokernels.")
    top.add_argument("--version", action="version", version=__version__)
    top.add_argument("--json", action="store_true",
                     help="emit the report as JSON")
    top.add_argument("--timing", action="store_true",
                     help="include the wall-clock duration in the report")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weil", help="Weil reciprocity on random pairs")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--q", type=int, default=3, help="finite field size")
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(run=_cmd_weil)

    p = sub.add_parser("pair", help="Deligne scalar of two functions")
    p.add_argument("exprs", nargs="+",
                   help='f g, e.g. pair "t" "(t-1)/(t-2)" over QQ')
    p.set_defaults(run=_cmd_pair)

    p = sub.add_parser("theta-compare",
                       help="theta route vs norm route for a family pair")
    p.add_argument("exprs", nargs="+", help="D E [over GF(q)]")
    p.add_argument("--base", choices=("P1", "A1"), default="P1")
    p.set_defaults(run=_cmd_theta_compare)

    p = sub.add_parser("corr", help="correspondence calculus")
    p.add_argument("mode", choices=("act", "compose"))
    p.add_argument("exprs", nargs="+",
                   help="two correspondences, or a correspondence and a "
                        "divisor; fixtures: %s" % ", ".join(CORRESPONDENCE_FIXTURES))
    p.set_defaults(run=_cmd_corr)

    p = sub.add_parser("heisenberg", help="Heisenberg extension checks")
    p.add_argument("A", help="group label: %s" % ", ".join(GROUP_LABELS))
    p.add_argument("B")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(run=_cmd_heisenberg)

    p = sub.add_parser("picard", help="Picard-category functor checks")
    p.add_argument("what", choices=("coker",))
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--trials", type=int, default=25)
    p.set_defaults(run=_cmd_picard)
    return top


def main(argv=None):
    top = _build_parser()
    args = top.parse_args(argv)
    t0 = time.perf_counter()
    try:
        rep = args.run(args)
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    rep.duration = time.perf_counter() - t0
    if args.json:
        print(rep.to_json(timing=args.timing))
    else:
        print(rep.to_text(timing=args.timing))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
