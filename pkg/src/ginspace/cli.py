"""Command-line interface.

Exit codes: 0 success or verified, 1 usage or parse error, 2 verification
failure, 3 inconclusive (no gin agreement, Hilbert function not stabilised).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import comb

from . import __version__
from .errors import GinSpaceError, NonGenericSampleError, ParseError
from .forms import (
    GradedIdealSlice,
    colon_form,
    colon_monomial,
    initial_space,
    restrict,
)
from .gin import DEFAULT_RANGE, DEFAULT_TRIALS, generify, gin
from .parse import parse_monomial, parse_polynomial, read
from .render import StaircaseDiagram, render_staircase
from .stable import build_J, is_strongly_stable
from . import verify as V

SEED_ENV = "GINSPACE_SEED"

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(args, doc=None) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    if doc is not None and "seed" in doc.options:
        return doc.options["seed"]
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return 0


def _opt(args, doc, name, key, default):
    val = getattr(args, name, None)
    if val is not None:
        return val
    return doc.options.get(key, default) if doc is not None else default


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _space_dict(kind, space) -> dict:
    return {
        "kind": kind,
        "n": space.n,
        "degree": space.degree,
        "dim": space.dim,
        "basis": [str(p) for p in space.polynomials()],
    }


def _space_text(space) -> str:
    if space.dim == 0:
        return f"0 (degree {space.degree}, {space.n} variables)"
    return "\n".join(str(p) for p in space.polynomials())


def _mons_text(mons) -> str:
    return ", ".join(str(m) for m in mons) if len(mons) else "(none)"


# subcommands


def cmd_in(args):
    doc = read(args.file)
    t = initial_space(doc.space())
    payload = {"kind": "initial-space", "n": t.n, "degree": t.degree,
               "monomials": [str(m) for m in t], "strongly_stable": is_strongly_stable(t)}
    _emit(args, payload, f"in(V): {_mons_text(t)}")
    return EXIT_OK


def cmd_gin(args):
    doc = read(args.file)
    seed = _seed(args, doc)
    trials = _opt(args, doc, "trials", "trials", DEFAULT_TRIALS)
    range_ = _opt(args, doc, "range", "range", DEFAULT_RANGE)
    v = doc.space()
    try:
        res = gin(v, trials=trials, seed=seed, range_=range_, modulus=args.modulus)
    except NonGenericSampleError as exc:
        payload = {"kind": "gin", "agreed": False, "seed": seed,
                   "staircases": [[str(m) for m in s] for s in exc.staircases]}
        _emit(args, payload, f"seed: {seed}\nno agreement: {exc}")
        return EXIT_INCONCLUSIVE
    text = [f"seed: {seed}", f"gin(V): {_mons_text(res.monomials)}"]
    if v.n == 3:
        text.append(render_staircase(StaircaseDiagram.of(res.monomials), "ascii"))
    _emit(args, res.to_dict(), "\n".join(text))
    return EXIT_OK


def cmd_colon(args):
    doc = read(args.file)
    v = doc.space()
    if args.by is not None:
        out = colon_monomial(v, parse_monomial(args.by, doc.n))
    else:
        h = doc.candidates.get(args.by_form) or parse_polynomial(args.by_form, doc.n)
        out = colon_form(v, h)
    _emit(args, _space_dict("colon", out), _space_text(out))
    return EXIT_OK


def cmd_restrict(args):
    doc = read(args.file)
    out = restrict(doc.space(), args.drop)
    _emit(args, _space_dict("restriction", out), _space_text(out))
    return EXIT_OK


def cmd_jideal(args):
    doc = read(args.file)
    v = doc.space()
    seed = _seed(args, doc)
    if args.given_coordinates:
        t = initial_space(v)
    else:
        try:
            t = gin(v, trials=_opt(args, doc, "trials", "trials", DEFAULT_TRIALS), seed=seed,
                    range_=_opt(args, doc, "range", "range", DEFAULT_RANGE)).monomials
        except NonGenericSampleError as exc:
            print(f"seed: {seed}\nno agreement: {exc}", file=sys.stderr)
            return EXIT_INCONCLUSIVE
    if args.restrict:
        t = t.restrict(args.restrict)
    j = build_J(t)
    flag = j.has_generator_in_degree(t.degree)
    gens = [f"{g} (deg {g.degree})" for g in j.generators]
    payload = {"kind": "jideal", "seed": seed, "n": t.n - 1, "d": t.degree,
               "generators": [str(g) for g in j.generators],
               "generator_degrees": [g.degree for g in j.generators],
               "generator_in_degree_d": flag}
    text = (f"seed: {seed}\n" if not args.given_coordinates else "") + \
        f"gens: {', '.join(gens)}; generator in degree d: {'yes' if flag else 'no'}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_hilbert(args):
    doc = read(args.file)
    v = doc.space()
    slice_ = GradedIdealSlice(v, args.max_degree)
    values = {}
    for e in range(0, args.max_degree + 1):
        dim = slice_[e].dim if e >= v.degree else 0
        values[e] = comb(e + v.n - 1, v.n - 1) - dim if args.quotient else dim
    payload = {"kind": "hilbert", "quotient": args.quotient,
               "values": {str(e): h for e, h in values.items()}}
    _emit(args, payload, "\n".join(f"{e}: {h}" for e, h in values.items()))
    return EXIT_OK


def cmd_locus(args):
    doc = read(args.file)
    maxdeg = args.max_degree or doc.options.get("maxdeg")
    rep = V.analyze_locus(doc.space(), maxdeg, doc.points)
    vals = ", ".join(f"{e}:{h}" for e, h in rep.quotient_values.items())
    lines = [f"quotient Hilbert values: {vals}", f"status: {rep.status}"]
    if rep.status == "stable":
        lines.append(f"certified from degree {rep.certified_from}")
        lines.append(f"projective dimension: {rep.projective_dimension}")
        if rep.stabilized_value is not None:
            lines.append(f"stabilized value: {rep.stabilized_value}")
    for w in rep.witnesses:
        lines.append(f"point ({', '.join(w['point'])}): {'vanishes' if w['vanishes'] else 'does not vanish'}")
    _emit(args, rep.to_dict(), "\n".join(lines))
    return rep.exit_code


def cmd_staircase(args):
    doc = read(args.file)
    v = doc.space()
    if args.gin:
        seed = _seed(args, doc)
        print(f"seed: {seed}", file=sys.stderr)
        t = gin(v, trials=_opt(args, doc, "trials", "trials", DEFAULT_TRIALS), seed=seed,
                range_=_opt(args, doc, "range", "range", DEFAULT_RANGE)).monomials
    else:
        t = initial_space(v)
    print(render_staircase(StaircaseDiagram.of(t), args.format))
    return EXIT_OK


def _report_text(d: dict) -> str:
    lines = [f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}" for k, v in d.items()
             if k not in ("kind",)]
    return "\n".join(lines)


def cmd_verify(args):
    what = args.what
    seed = None
    if what in ("main-a", "main-b", "corollary"):
        if not args.file:
            raise ParseError(f"verify {what} needs an input FILE")
        doc = read(args.file)
        v = doc.space()
        seed = _seed(args, doc)
        maxdeg = args.max_degree or doc.options.get("maxdeg")
        if args.given_coordinates:
            seed = None
        range_ = _opt(args, doc, "range", "range", DEFAULT_RANGE)
        if what == "main-a":
            rep = V.verify_main_theorem_a(v, maxdeg, seed, range_)
        elif what == "main-b":
            rep = V.verify_main_theorem_b(v, args.depth or 1, maxdeg, seed, range_)
        else:
            rep = V.verify_corollary(v, maxdeg, seed, depth=args.depth or 0, range_=range_)
    elif what == "examples-2.6":
        q = p = None
        if args.file:
            doc = read(args.file)
            q, p = doc.candidates.get("q"), doc.candidates.get("p")
        seed = _seed(args)
        rep = V.verify_examples_2_6(q, p, trials=args.trials or 5, seed=seed,
                                    maxdeg=args.max_degree or 8)
    elif what == "example-2.7":
        seed = _seed(args)
        v = None
        if args.file:
            doc = read(args.file)
            seed = _seed(args, doc)
            v = generify(doc.space(), seed, args.range or DEFAULT_RANGE)
        rep = V.explore_example_2_7(v, seed=seed, trials=args.trials or 3,
                                    range_=args.range or DEFAULT_RANGE)
    else:
        seed = _seed(args)
        rep = V.scenario_theorem_1(args.a, args.b, args.m, args.n, seed=seed,
                                   trials=args.trials or 3, range_=args.range or DEFAULT_RANGE)
    payload = rep.to_dict()
    _emit(args, payload, _report_text(payload))
    return rep.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ginspace", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, file=True):
        p = sub.add_parser(name, help=help_)
        if file:
            p.add_argument("file", help="input .forms document")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    def random_opts(p):
        p.add_argument("--seed", type=int, help=f"master seed (default: file, ${SEED_ENV}, 0)")
        p.add_argument("--trials", type=int)
        p.add_argument("--range", type=int, help="coefficient range of random changes")

    add("in", cmd_in, "initial space in the given coordinates")
    p = add("gin", cmd_gin, "generic initial space")
    random_opts(p)
    p.add_argument("--modulus", type=int, help="reduce modulo this prime (probabilistic)")
    p = add("colon", cmd_colon, "colon by a monomial or a linear form")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--by", metavar="MONOMIAL")
    g.add_argument("--by-form", metavar="LINFORM", help="linear form or candidate name")
    p = add("restrict", cmd_restrict, "set the last R variables to zero")
    p.add_argument("--drop", type=int, required=True, metavar="R")
    p = add("jideal", cmd_jideal, "minimal generators of J(gin V)")
    random_opts(p)
    p.add_argument("--restrict", type=int, default=0, metavar="R")
    p.add_argument("--given-coordinates", action="store_true",
                   help="use in(V) as given instead of gin(V)")
    p = add("hilbert", cmd_hilbert, "Hilbert function of the ideal generated by V")
    p.add_argument("--max-degree", type=int, required=True, metavar="D")
    p.add_argument("--quotient", action="store_true")
    p = add("locus", cmd_locus, "vanishing locus from the quotient Hilbert function")
    p.add_argument("--max-degree", type=int, metavar="D")
    p = add("staircase", cmd_staircase, "draw the staircase of in(V) or gin(V)")
    p.add_argument("--format", choices=["ascii", "json"], default="ascii")
    p.add_argument("--gin", action="store_true", help="draw gin(V) instead of in(V)")
    random_opts(p)

    p = add("verify", cmd_verify, "run a verification pipeline", file=False)
    p.add_argument("what", choices=["main-a", "main-b", "corollary", "examples-2.6",
                                    "example-2.7", "theorem-1"])
    p.add_argument("file", nargs="?")
    random_opts(p)
    p.add_argument("--max-degree", type=int, metavar="D")
    p.add_argument("--depth", type=int, help="restriction depth r")
    p.add_argument("--given-coordinates", action="store_true",
                   help="assume V is already in general coordinates")
    for k in ("a", "b", "m", "n"):
        p.add_argument(f"--{k}", type=int, default={"a": 1, "b": 2, "m": 3, "n": 3}[k])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GinSpaceError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, NonGenericSampleError):
            return EXIT_INCONCLUSIVE
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
