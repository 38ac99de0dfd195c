"""Text expressions for functions, divisors, family divisors and
correspondences.

One grammar covers all four: arithmetic over the curve variable t or
the family variables x0, x1, y0, y1, plus divisor syntax -- integer
combinations of parenthesized points or forms -- and a trailing field
tag ``over GF(q)`` / ``over QQ``.  ``print_expr`` is the matching
printer; parse(print_expr(v)) returns an equal value.
"""

from fractions import Fraction

from .biform import BiForm
from .correspond import Correspondence
from .curve import FracFun, Divisor, infinity, point_of, rational_point
from .family import FamilyDivisor
from .gfield import field_from_label
from .ratfunc import function_field


class ParseError(ValueError):
    """Syntax or semantics error with the offending position."""

    def __init__(self, message, text, pos):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


FAMILY_VARS = ("x0", "x1", "y0", "y1")
NAMES = ("t", "inf") + FAMILY_VARS


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j]), i))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word not in NAMES:
                raise ParseError(f"unknown name {word!r}", text, i)
            toks.append(("name", word, i))
            i = j
            continue
        if c in "+-*/^()":
            toks.append((c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", text, i)
    toks.append(("end", None, n))
    return toks


class _Tokens:
    def __init__(self, text, toks):
        self.text = text
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1]!r}", self.text, t[2])
        return t

    def error(self, message):
        t = self.peek()
        raise ParseError(message, self.text, t[2])


class _Algebra:
    """Evaluation targets for the arithmetic grammar."""

    def __init__(self, field, kind):
        self.field = field
        self.kind = kind  # "t" or "form"
        if kind == "t":
            self.FF = function_field(field, "t")

    def number(self, n):
        if self.kind == "t":
            return self.FF.coerce(n)
        return BiForm.const(self.field, self.field.coerce(n))

    def name(self, word, toks, pos):
        if self.kind == "t":
            if word != "t":
                raise ParseError(
                    "family variables cannot mix with curve expressions",
                    toks.text, pos,
                )
            return self.FF.gen()
        if word == "t":
            raise ParseError(
                "the curve variable t cannot mix with family variables",
                toks.text, pos,
            )
        return getattr(BiForm, word)(self.field)

    def add(self, a, b):
        return self.FF.add(a, b) if self.kind == "t" else a + b

    def sub(self, a, b):
        return self.FF.sub(a, b) if self.kind == "t" else a - b

    def neg(self, a):
        return self.FF.neg(a) if self.kind == "t" else -a

    def mul(self, a, b):
        return self.FF.mul(a, b) if self.kind == "t" else a * b

    def div(self, a, b, toks, pos):
        if self.kind != "t":
            raise ParseError("division is not defined for forms", toks.text, pos)
        if b.is_zero():
            raise ParseError("division by zero", toks.text, pos)
        return self.FF.div(a, b)

    def pow_(self, a, n, toks, pos):
        if self.kind == "t":
            if n < 0 and a.is_zero():
                raise ParseError("division by zero", toks.text, pos)
            return self.FF.pow_(a, n)
        if n < 0:
            raise ParseError("negative powers are not defined for forms",
                             toks.text, pos)
        return a ** n


def _parse_arith(toks, algebra):
    val = _parse_term(toks, algebra)
    while toks.peek()[0] in ("+", "-"):
        op, _, pos = toks.next()
        rhs = _parse_term(toks, algebra)
        val = algebra.add(val, rhs) if op == "+" else algebra.sub(val, rhs)
    return val


def _parse_term(toks, algebra):
    val = _parse_unary(toks, algebra)
    while toks.peek()[0] in ("*", "/"):
        op, _, pos = toks.next()
        rhs = _parse_unary(toks, algebra)
        val = algebra.mul(val, rhs) if op == "*" else algebra.div(val, rhs, toks, pos)
    return val


def _parse_unary(toks, algebra):
    if toks.peek()[0] in ("+", "-"):
        op, _, _ = toks.next()
        val = _parse_unary(toks, algebra)
        return val if op == "+" else algebra.neg(val)
    return _parse_power(toks, algebra)


def _parse_power(toks, algebra):
    val = _parse_atom(toks, algebra)
    if toks.peek()[0] == "^":
        _, _, pos = toks.next()
        sign = 1
        if toks.peek()[0] == "-":
            toks.next()
            sign = -1
        kind, n, npos = toks.next()
        if kind != "num":
            raise ParseError("exponent must be an integer", toks.text, npos)
        val = algebra.pow_(val, sign * n, toks, pos)
    return val


def _parse_atom(toks, algebra):
    kind, value, pos = toks.next()
    if kind == "num":
        return algebra.number(value)
    if kind == "name":
        if value == "inf":
            raise ParseError("inf is only a divisor point", toks.text, pos)
        return algebra.name(value, toks, pos)
    if kind == "(":
        val = _parse_arith(toks, algebra)
        toks.expect(")")
        return val
    raise ParseError(f"unexpected {value!r}", toks.text, pos)


def _group_kind(toks, start):
    """Scan the names inside one parenthesized group: 't'/'form'/'inf'."""
    depth = 0
    kinds = set()
    j = start
    while j < len(toks.toks):
        k, v, _ = toks.toks[j]
        if k == "(":
            depth += 1
        elif k == ")":
            depth -= 1
            if depth == 0:
                break
        elif k == "name":
            kinds.add("form" if v in FAMILY_VARS else v)
        j += 1
    if "form" in kinds and ("t" in kinds or "inf" in kinds):
        raise ParseError("cannot mix point and form syntax",
                         toks.text, toks.toks[start][2])
    if "form" in kinds:
        return "form"
    if "inf" in kinds:
        return "inf"
    return "t"


def _try_divisor_shape(toks):
    """Divisor grammar: sum of [n *] ( ... ) groups, nothing else."""
    i = toks.i
    saw_group = False
    expect_operand = True
    while True:
        k = toks.toks[i][0]
        if expect_operand:
            if k in ("+", "-"):
                i += 1
                continue
            if k == "num":
                if toks.toks[i + 1][0] != "*" or toks.toks[i + 2][0] != "(":
                    return False
                i += 2
                continue
            if k == "(":
                depth = 0
                while toks.toks[i][0] != "end":
                    if toks.toks[i][0] == "(":
                        depth += 1
                    elif toks.toks[i][0] == ")":
                        depth -= 1
                        if depth == 0:
                            break
                    i += 1
                if depth != 0:
                    return False
                i += 1
                saw_group = True
                expect_operand = False
                continue
            return False
        if k in ("+", "-"):
            i += 1
            expect_operand = True
            continue
        return k == "end" and saw_group


def _parse_divisor(toks, field):
    """Parse the divisor / correspondence shape after it matched."""
    point_terms = []
    form_terms = []
    sign = 1
    first = True
    while toks.peek()[0] != "end":
        kind, value, pos = toks.peek()
        if kind in ("+", "-"):
            toks.next()
            sign = 1 if kind == "+" else -1
            first = False
            continue
        if not first and kind not in ("num", "("):
            toks.error("expected a divisor term")
        coeff = sign
        if kind == "num":
            toks.next()
            coeff = sign * value
            toks.expect("*")
        start = toks.i
        toks.expect("(")
        gk = _group_kind(toks, start)
        if gk == "inf":
            tok = toks.next()
            if tok[0] != "name" or tok[1] != "inf":
                raise ParseError("expected inf", toks.text, tok[2])
            toks.expect(")")
            point_terms.append((coeff, infinity(field)))
        elif gk == "form":
            inner = _parse_arith(toks, _Algebra(field, "form"))
            toks.expect(")")
            if inner.is_zero:
                raise ParseError("zero form in a correspondence",
                                 toks.text, toks.toks[start][2])
            form_terms.append((coeff, inner))
        else:
            inner = _parse_arith(toks, _Algebra(field, "t"))
            toks.expect(")")
            point_terms.append((coeff, _point_from_rf(inner, field, toks,
                                                      toks.toks[start][2])))
        sign = 1
        first = False
    if form_terms and point_terms:
        raise ParseError("cannot mix point and form syntax", toks.text, 0)
    if form_terms:
        out = Correspondence.zero(field)
        for c, form in form_terms:
            out = out + c * Correspondence.of_divisor(FamilyDivisor.of_form(form))
        return out
    D = Divisor(field)
    for c, P in point_terms:
        D = D + c * Divisor(field, {P: 1})
    return D


def _point_from_rf(rf, field, toks, pos):
    num, den = rf.num, rf.den
    if not den.is_one():
        raise ParseError("a point must be a polynomial", toks.text, pos)
    if num.deg < 1:
        # a constant c is the rational point t = c
        return rational_point(field, field.zero if num.is_zero() else num.lc)
    monic = num.scale(field.inv(num.lc))
    if not monic.is_irreducible():
        raise ParseError("polynomial is not irreducible", toks.text, pos)
    return point_of(field, monic)


def parse_expr(text, field=None):
    """Parse an expression with an ``over`` field tag.

    Returns a ClosedPoint for a bare monic irreducible polynomial, a
    FracFun for other curve expressions, a Divisor / Correspondence for
    the parenthesized-sum syntax, and a FamilyDivisor for expressions
    in the family variables.
    """
    body = text
    if field is None:
        idx = text.rfind("over")
        if idx < 0:
            raise ParseError("missing field tag (append 'over GF(q)' or 'over QQ')",
                             text, len(text))
        body = text[:idx]
        label = text[idx + 4:].strip()
        try:
            field = field_from_label(label)
        except ValueError as exc:
            raise ParseError(str(exc), text, idx + 4) from None
    toks = _Tokens(text, _tokenize(body))
    if toks.peek()[0] == "end":
        toks.error("empty expression")
    if _try_divisor_shape(toks):
        return _parse_divisor(toks, field)
    names = {v for k, v, _ in toks.toks if k == "name"}
    if "inf" in names:
        toks.error("inf is only valid in divisor syntax")
    if names & set(FAMILY_VARS):
        if "t" in names:
            toks.error("the curve variable t cannot mix with family variables")
        form = _parse_arith(toks, _Algebra(field, "form"))
        toks.expect("end")
        if form.is_zero:
            raise ParseError("the zero form has no divisor", text, 0)
        return FamilyDivisor.of_form(form)
    rf = _parse_arith(toks, _Algebra(field, "t"))
    toks.expect("end")
    if rf.is_zero():
        raise ParseError("zero is not a function", text, 0)
    num, den = rf.num, rf.den
    if den.is_one() and num.deg >= 1 and num.is_monic() and num.is_irreducible():
        return point_of(field, num)
    return FracFun.from_rf(rf)


def field_label(field):
    return "QQ" if not getattr(field, "is_finite", False) else f"GF({field.q})"


def print_expr(value, with_field=True):
    """Canonical text for anything parse_expr returns."""
    tag = ""
    if with_field:
        tag = f" over {field_label(value.field)}"
    if isinstance(value, FracFun):
        return f"{value!r}{tag}"
    if isinstance(value, Divisor):
        if value.is_zero():
            return f"0*(inf){tag}"
        return f"{value!r}{tag}"
    if isinstance(value, FamilyDivisor):
        if not value.components:
            return f"x1^0{tag}"
        comps = sorted(value.components.items(), key=lambda kv: kv[0]._key)
        if len(comps) == 1 and comps[0][1] == 1:
            # bare, so it re-reads as a form and not as a formal sum
            return comps[0][0].to_str() + tag
        bits = []
        for g, m in comps:
            bits.append(f"({g.to_str()})" + (f"^{m}" if m != 1 else ""))
        return "*".join(bits) + tag
    if isinstance(value, Correspondence):
        if value.is_zero():
            return f"0*(x0*y1 - x1*y0){tag}"
        bits = []
        for form, n in sorted(value.terms.items(), key=lambda kv: kv[0]._key):
            head = "" if n == 1 else ("-" if n == -1 else f"{n}*")
            bits.append(f"{head}({form.to_str()})")
        return " + ".join(bits).replace("+ -", "- ") + tag
    # ClosedPoint
    if value.is_infinite:
        return f"(inf){tag}"
    return f"{value.pi.to_str('t')}{tag}"
