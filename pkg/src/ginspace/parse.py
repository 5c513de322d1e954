"""Reader for ``.forms`` input documents.

A document looks like::

    # case b
    vars: 3
    seed: 7
    q = x1^2 + x2^2 + x3^2
    point: 1, 0, 0
    x1*x2^2 + x1*x3^2
    x1^2*x2 + x2*x3^2

``vars:`` must come before any polynomial.  ``seed``, ``trials``, ``range``
and ``maxdeg`` are integer options; ``name = expr`` defines a named candidate
form; ``point:`` gives a witness point; every other non-blank line is one
generator.  Terms are ``[sign] [rational] ['*'] factor ('*' factor)*`` with
``factor = x<k> ['^' int]``.  There are no parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError
from .forms import FormSpace
from .poly import Monomial, Polynomial

OPTION_KEYS = ("seed", "trials", "range", "maxdeg")

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^])|(?P<bad>\S))"
)
_NAME_DEF = re.compile(r"^\s*(?P<name>[A-Za-z_]\w*)\s*=(?P<body>.*)$")
_KEY_LINE = re.compile(r"^\s*(?P<key>[A-Za-z_]+)\s*:(?P<body>.*)$")


@dataclass
class InputDocument:
    n: int
    polynomials: list
    candidates: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    points: list = field(default_factory=list)

    @property
    def degree(self) -> int | None:
        degs = {p.degree for p in self.polynomials if not p.is_zero()}
        return degs.pop() if degs else None

    def space(self) -> FormSpace:
        d = self.degree
        if d is None:
            raise ParseError("document has no nonzero polynomial")
        return FormSpace.from_polynomials(self.polynomials, n=self.n, degree=d)


def _tokens(text: str, line: int, offset: int = 0):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        col = m.start(m.lastgroup) + 1 + offset
        if m.group("bad"):
            raise ParseError(f"unexpected character {m.group('bad')!r}", line, col)
        if m.group("num"):
            out.append(("num", m.group("num"), col))
        elif m.group("var"):
            out.append(("var", int(m.group("idx")), col))
        else:
            out.append(("op", m.group("op"), col))
        pos = m.end()
    return out


def parse_polynomial(text: str, n: int, line: int | None = None, offset: int = 0) -> Polynomial:
    """Parse one polynomial expression in ``n`` variables."""
    toks = _tokens(text, line, offset)
    if not toks:
        raise ParseError("empty expression", line, offset + 1)
    terms: dict = {}
    i = 0
    first = True
    end_col = offset + len(text) + 1

    def peek():
        return toks[i] if i < len(toks) else ("eof", None, end_col)

    while i < len(toks):
        sign = 1
        kind, val, col = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-', found {val!r}", line, col)
        first = False
        coeff = Fraction(1)
        exps = [0] * n
        kind, val, col = peek()
        have_factor = False
        if kind == "num":
            coeff = Fraction(val)
            if coeff.denominator == 0:
                raise ParseError("zero denominator", line, col)
            i += 1
            have_factor = True
            kind, val, col = peek()
            if kind == "op" and val == "*":
                i += 1
                kind, val, col = peek()
                if kind != "var":
                    raise ParseError("expected a variable after '*'", line, col)
            elif kind == "var":
                pass  # "3x1" is accepted as 3*x1
            else:
                kind = None
        if kind == "var":
            while True:
                kind, val, col = peek()
                if kind != "var":
                    raise ParseError("expected a variable", line, col)
                if not 1 <= val <= n:
                    raise ParseError(f"variable x{val} outside x1..x{n}", line, col)
                i += 1
                power = 1
                k2, v2, c2 = peek()
                if k2 == "op" and v2 == "^":
                    i += 1
                    k3, v3, c3 = peek()
                    if k3 != "num" or "/" in v3:
                        raise ParseError("expected an integer exponent", line, c3)
                    power = int(v3)
                    i += 1
                exps[val - 1] += power
                have_factor = True
                k2, v2, c2 = peek()
                if k2 == "op" and v2 == "*":
                    i += 1
                    continue
                break
        if not have_factor:
            raise ParseError("expected a coefficient or variable", line, col)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + sign * coeff
        kind, val, col = peek()
        if kind == "op" and val not in "+-":
            raise ParseError(f"unexpected {val!r}", line, col)
        if kind not in ("op", "eof"):
            raise ParseError(f"unexpected token {val!r}", line, col)
    degs = {sum(m) for m, c in terms.items() if c}
    if len(degs) > 1:
        raise ParseError(f"inhomogeneous expression (degrees {sorted(degs)})", line, offset + 1)
    return Polynomial(n, terms)


def parse_monomial(text: str, n: int) -> Monomial:
    p = parse_polynomial(text, n)
    if len(p) != 1 or p.leading_coefficient() != 1:
        raise ParseError(f"{text!r} is not a monomial")
    return p.leading_monomial()


def parse(text: str) -> InputDocument:
    n = None
    polys = []
    lines_of = []
    candidates = {}
    options = {}
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        km = _KEY_LINE.match(body)
        if km:
            key, rest = km.group("key"), km.group("body")
            col = km.start("body") + 1
            if key == "vars":
                if n is not None:
                    raise ParseError("duplicate 'vars:' header", lineno, 1)
                try:
                    n = int(rest.strip())
                except ValueError:
                    raise ParseError("'vars:' needs a positive integer", lineno, col) from None
                if n < 1:
                    raise ParseError("'vars:' needs a positive integer", lineno, col)
            elif key in OPTION_KEYS:
                try:
                    options[key] = int(rest.strip())
                except ValueError:
                    raise ParseError(f"option {key!r} needs an integer", lineno, col) from None
            elif key == "point":
                if n is None:
                    raise ParseError("'point:' before 'vars:'", lineno, 1)
                try:
                    pt = [Fraction(s.strip()) for s in rest.split(",")]
                except (ValueError, ZeroDivisionError):
                    raise ParseError("point coordinates must be rationals", lineno, col) from None
                if len(pt) != n:
                    raise ParseError(f"point has {len(pt)} coordinates, expected {n}", lineno, col)
                points.append(tuple(pt))
            else:
                raise ParseError(f"unknown key {key!r}", lineno, 1)
            continue
        if n is None:
            raise ParseError("expected 'vars: n' before any polynomial", lineno, 1)
        nm = _NAME_DEF.match(body)
        if nm:
            name = nm.group("name")
            if re.fullmatch(r"x\d+", name):
                raise ParseError(f"{name!r} is a variable, not a candidate name", lineno, 1)
            candidates[name] = parse_polynomial(nm.group("body"), n, lineno, nm.start("body"))
            continue
        polys.append(parse_polynomial(body, n, lineno))
        lines_of.append(lineno)
    if n is None:
        raise ParseError("missing 'vars: n' header", None)
    degree = None
    for p, lineno in zip(polys, lines_of):
        if p.is_zero():
            continue
        if degree is None:
            degree = p.degree
        elif p.degree != degree:
            raise ParseError(
                f"polynomial of degree {p.degree}, earlier ones have degree {degree}", lineno, 1
            )
    return InputDocument(n, polys, candidates, options, points)


def read(path) -> InputDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
