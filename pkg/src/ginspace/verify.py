"""Executable checks of the structural results on generic initial spaces.

Every pipeline is a pure function of its inputs and seed, and returns a report
object with a ``to_dict`` method producing the JSON shape used by the CLI.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from .errors import DegreeError, DimensionError, PreconditionError
from .forms import (
    FormSpace,
    GradedIdealSlice,
    colon_last,
    colon_product,
    initial_space,
    restrict,
    substitute_space,
)
from .gin import DEFAULT_RANGE, generify, gin, random_change, random_form
from .poly import Monomial, Polynomial, exact_divide, expand_t_coefficients, monomials_of_degree
from .stable import MonomialSpace, borel_space, build_J, codimension, is_strongly_stable

FIGURE_STAIRCASE_GENS = [(2, 0, 1), (1, 2, 0)]
DEGREE4_STAIRCASE_GENS = [(2, 0, 2), (1, 3, 0)]
DEGREE_CAP = 8


def _mons(space: MonomialSpace) -> list:
    return [str(m) for m in space]


def _status_code(status: str) -> int:
    return {"verified": 0, "not-applicable": 0, "failed": 2, "inconclusive": 3}[status]


# Hilbert function machinery


def macaulay_representation(h: int, e: int) -> list:
    """Pairs ``(k_i, i)`` with ``h = sum C(k_i, i)``, ``k_e > k_(e-1) > ... >= i >= 1``."""
    if e < 1 or h < 0:
        raise DegreeError(f"Macaulay representation needs e >= 1, h >= 0 (got {h}, {e})")
    rep = []
    i = e
    while h > 0 and i >= 1:
        k = i
        while comb(k + 1, i) <= h:
            k += 1
        rep.append((k, i))
        h -= comb(k, i)
        i -= 1
    return rep


def macaulay_bound(h: int, e: int) -> int:
    """Largest possible quotient Hilbert value in degree ``e + 1`` given value ``h`` in degree ``e``."""
    return sum(comb(k + 1, i + 1) for k, i in macaulay_representation(h, e))


def quotient_hilbert_values(v: FormSpace, lo: int, hi: int) -> dict:
    """``dim S_e - dim (I_V)_e`` for ``lo <= e <= hi`` (all of ``S_e`` below ``d``)."""
    slice_ = GradedIdealSlice(v, hi)
    out = {}
    for e in range(lo, hi + 1):
        total = comb(e + v.n - 1, v.n - 1)
        out[e] = total if e < v.degree else total - slice_[e].dim
    return out


@dataclass
class LocusReport:
    quotient_values: dict
    status: str  # "stable" | "inconclusive" | "failed"
    certified_from: int | None = None
    stabilized_value: int | None = None
    projective_dimension: int | str | None = None
    witnesses: list = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return self.projective_dimension == "empty"

    def to_dict(self) -> dict:
        return {
            "kind": "locus",
            "status": self.status,
            "quotient_values": {str(e): h for e, h in self.quotient_values.items()},
            "certified_from": self.certified_from,
            "stabilized_value": self.stabilized_value,
            "projective_dimension": self.projective_dimension,
            "witnesses": self.witnesses,
        }

    @property
    def exit_code(self) -> int:
        return {"stable": 0, "inconclusive": 3, "failed": 2}[self.status]


def analyze_locus(v: FormSpace, maxdeg: int | None = None, points=()) -> LocusReport:
    """Read the vanishing locus of ``V`` off the quotient Hilbert function.

    Stabilisation is certified by Gotzmann persistence: once the quotient value
    in degree ``e + 1`` equals the Macaulay bound of the value in degree ``e``
    (with ``e`` at least the generator degree), the Hilbert function follows the
    bound forever.  The top Macaulay coefficient then gives the dimension.
    """
    if v.dim == 0:
        raise PreconditionError("the zero space has no meaningful locus")
    d = v.degree
    maxdeg = d + 4 if maxdeg is None else maxdeg
    values = quotient_hilbert_values(v, d, maxdeg)
    witnesses = []
    for pt in points:
        vanish = all(p.evaluate(pt) == 0 for p in v.polynomials())
        witnesses.append({"point": [str(c) for c in pt], "vanishes": vanish})
    report = LocusReport(values, "inconclusive", witnesses=witnesses)
    for e in range(max(d, 1), maxdeg):
        h, h1 = values[e], values[e + 1]
        if h1 == macaulay_bound(h, e):
            report.status = "stable"
            report.certified_from = e
            if h == 0:
                report.stabilized_value = 0
                report.projective_dimension = "empty"
            else:
                top_k, top_i = macaulay_representation(h, e)[0]
                report.projective_dimension = top_k - top_i
                if top_k == top_i:
                    report.stabilized_value = h
            break
    if any(not w["vanishes"] for w in witnesses):
        report.status = "failed"
    return report


# Main Theorem pipelines


@dataclass
class MainTheoremReport:
    n: int
    d: int
    depth: int
    seed: int | None
    hypothesis_holds: bool
    j_generator_in_degree_d: bool
    degrees: list
    matches: dict
    j_generators: list
    expected: dict
    observed: dict
    cross_check: bool = True

    @property
    def status(self) -> str:
        if not self.cross_check:
            return "failed"
        if not self.hypothesis_holds:
            return "not-applicable"
        return "verified" if all(self.matches.values()) else "failed"

    @property
    def exit_code(self) -> int:
        return _status_code(self.status)

    def to_dict(self) -> dict:
        return {
            "kind": "main-theorem",
            "status": self.status,
            "n": self.n,
            "d": self.d,
            "depth": self.depth,
            "seed": self.seed,
            "hypothesis_holds": self.hypothesis_holds,
            "j_generator_in_degree_d": self.j_generator_in_degree_d,
            "degrees": self.degrees,
            "matches": {str(e): ok for e, ok in self.matches.items()},
            "j_generators": self.j_generators,
            "expected": {str(e): _mons(s) for e, s in self.expected.items()},
            "observed": {str(e): _mons(s) for e, s in self.observed.items()},
            "cross_check": self.cross_check,
        }


def hypothesis_a(t: MonomialSpace) -> bool:
    """``(T : x_n) * <x_1, ..., x_n> == T``."""
    if t.degree == 0:
        return False
    return t.colon_last(1).times_variables() == t


def _main_a(v: FormSpace, maxdeg: int, seed, depth: int, cross_check: bool) -> MainTheoremReport:
    t = initial_space(v)
    if not is_strongly_stable(t):
        raise PreconditionError("in(V) is not strongly stable: V is not in general coordinates")
    d = v.degree
    j = build_J(t, top=maxdeg)
    small = GradedIdealSlice(restrict(v, 1), maxdeg)
    degrees = list(range(d, maxdeg + 1))
    expected = {e: j.piece(e) for e in degrees}
    observed = {e: initial_space(small[e]) for e in degrees}
    return MainTheoremReport(
        n=v.n,
        d=d,
        depth=depth,
        seed=seed,
        hypothesis_holds=hypothesis_a(t),
        j_generator_in_degree_d=j.has_generator_in_degree(d),
        degrees=degrees,
        matches={e: expected[e] == observed[e] for e in degrees},
        j_generators=[f"{g} (deg {g.degree})" for g in j.generators],
        expected=expected,
        observed=observed,
        cross_check=cross_check,
    )


def verify_main_theorem_a(
    v: FormSpace, maxdeg: int | None = None, seed: int | None = None, range_: int = DEFAULT_RANGE
) -> MainTheoremReport:
    """Compare ``in((I_V)|x_n)`` with ``J(in V)`` in degrees ``d..maxdeg``.

    ``v`` must already be in general coordinates unless ``seed`` is given, in
    which case a random change with that seed is applied first.
    """
    if v.n < 2:
        raise DimensionError("need at least two variables")
    if seed is not None:
        v = generify(v, seed, range_)
    maxdeg = v.degree + 4 if maxdeg is None else maxdeg
    return _main_a(v, maxdeg, seed, 0, True)


def verify_main_theorem_b(
    v: FormSpace, r: int, maxdeg: int | None = None, seed: int | None = None,
    range_: int = DEFAULT_RANGE,
) -> MainTheoremReport:
    """Restrict the last ``r`` variables away, then run the part-a comparison."""
    if not 1 <= r <= v.n - 2:
        raise PreconditionError(f"restriction depth must lie in 1..{v.n - 2}, got {r}")
    if seed is not None:
        v = generify(v, seed, range_)
    maxdeg = v.degree + 4 if maxdeg is None else maxdeg
    w = restrict(v, r)
    cross = initial_space(w) == initial_space(v).restrict(r)
    return _main_a(w, maxdeg, seed, r, cross)


@dataclass
class CorollaryReport:
    n: int
    depth: int
    seed: int | None
    hypothesis_holds: bool
    c_J: int
    c_locus: int | None
    applies: bool
    locus: LocusReport

    @property
    def status(self) -> str:
        if not self.applies:
            return "not-applicable"
        if self.c_locus is None:
            return "inconclusive"
        return "verified" if self.c_J == self.c_locus else "failed"

    @property
    def exit_code(self) -> int:
        return _status_code(self.status)

    def to_dict(self) -> dict:
        return {
            "kind": "corollary",
            "status": self.status,
            "n": self.n,
            "depth": self.depth,
            "seed": self.seed,
            "hypothesis_holds": self.hypothesis_holds,
            "c_J": self.c_J,
            "c_locus": self.c_locus,
            "applies": self.applies,
            "locus": self.locus.to_dict(),
        }


def verify_corollary(
    v: FormSpace, maxdeg: int | None = None, seed: int | None = None, depth: int = 0,
    range_: int = DEFAULT_RANGE,
) -> CorollaryReport:
    """Codimension of J against the codimension of the vanishing locus of ``V``.

    The comparison is asserted only when the Main Theorem hypothesis holds and
    ``codim J <= n - depth - 2``.
    """
    if v.dim == 0:
        raise PreconditionError("codimension is undefined for the zero space")
    if seed is not None:
        v = generify(v, seed, range_)
    n = v.n
    if not 0 <= depth <= n - 2:
        raise PreconditionError(f"depth must lie in 0..{n - 2}")
    t = initial_space(v).restrict(depth) if depth else initial_space(v)
    if not is_strongly_stable(t):
        raise PreconditionError("in(V) is not strongly stable: V is not in general coordinates")
    j = build_J(t)
    c_j = codimension(j.ideal)
    hyp = hypothesis_a(t)
    locus = analyze_locus(v, maxdeg)
    c_locus = None
    if locus.status == "stable":
        c_locus = n if locus.is_empty else (n - 1) - locus.projective_dimension
    applies = hyp and c_j <= n - depth - 2
    return CorollaryReport(n, depth, seed, hyp, c_j, c_locus, applies, locus)


def verify_common_factor(v: FormSpace, p: Polynomial) -> bool:
    """True iff ``p`` exactly divides every canonical basis element of ``V``."""
    if p.is_zero():
        raise ZeroDivisionError("candidate factor is zero")
    if p.degree > v.degree:
        raise DegreeError(f"candidate of degree {p.degree} exceeds {v.degree}")
    return all(exact_divide(f, p) is not None for f in v.polynomials())


# Constructions used by the worked examples


def _vars(n: int) -> list:
    return [Polynomial.variable(i, n) for i in range(1, n + 1)]


def default_case_a_forms() -> tuple:
    x1, x2, x3 = _vars(3)
    return x1**2 + x2**2 + x3**2, x1**3


def case_a(q: Polynomial | None = None, p: Polynomial | None = None) -> FormSpace:
    """``<x1 q, x2 q, x3 q, p>`` for a quadric ``q`` and cubic ``p``."""
    dq, dp = default_case_a_forms()
    q = dq if q is None else q
    p = dp if p is None else p
    x1, x2, x3 = _vars(3)
    return FormSpace.from_polynomials([x1 * q, x2 * q, x3 * q, p])


def case_b() -> FormSpace:
    x1, x2, x3 = _vars(3)
    return FormSpace.from_polynomials([
        x1 * (x2**2 + x3**2),
        x2 * (x1**2 + x3**2),
        x3 * (x1**2 + x2**2),
        x1 * x2 * x3,
    ])


def case_c() -> FormSpace:
    x1, x2, x3 = _vars(3)
    return FormSpace.from_polynomials([
        x1**3 + x2**3 + x3**3,
        x1**2 * x2 + x2**2 * x3 + x3**2 * x1,
        x1 * x2**2 + x2 * x3**2 + x3 * x1**2,
        x1 * x2 * x3,
    ])


def _xt_ring():
    """x1, x2, x3, t1, t2, t3 as variables 1..6 of one ring."""
    vs = _vars(6)
    return vs[:3], vs[3:]


def _coefficient_space(product: Polynomial) -> tuple:
    coeffs = expand_t_coefficients(product, [4, 5, 6])
    forms = [coeffs[m] for m in sorted(coeffs, reverse=True)]
    return forms, FormSpace.from_polynomials(forms, n=3)


def syzygy_coefficient_forms() -> tuple:
    """The six t-coefficients of ``(t1 p1 + t2 p2 + t3 p3) * h`` with the 2x2 minors
    ``p1 = x2 x3, p2 = x1 x3, p3 = x1 x2`` of ``[[x1, x2, 0], [0, x2, x3]]``.

    Returns ``(forms, span)``.
    """
    (x1, x2, x3), (t1, t2, t3) = _xt_ring()
    p = t1 * x2 * x3 + t2 * x1 * x3 + t3 * x1 * x2
    h = t1 * x1 + t2 * x2 + t3 * x3
    return _coefficient_space(p * h)


def cyclic_coefficient_forms() -> tuple:
    """t-coefficients of ``(t1 x2 + t2 x3 + t3 x1)(t1 x3 + t2 x1 + t3 x2) * h``."""
    (x1, x2, x3), (t1, t2, t3) = _xt_ring()
    p = (t1 * x2 + t2 * x3 + t3 * x1) * (t1 * x3 + t2 * x1 + t3 * x2)
    h = t1 * x1 + t2 * x2 + t3 * x3
    return _coefficient_space(p * h)


def divisor_space(p: Polynomial, b: int) -> FormSpace:
    """``p * S_b``."""
    return FormSpace.from_polynomials(
        [p * Monomial(m) for m in monomials_of_degree(p.n, b)], n=p.n, degree=p.degree + b
    )


# Worked example suites


@dataclass
class CaseReport:
    name: str
    checks: dict
    gin: list
    dim: int
    locus: LocusReport | None = None
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "checks": self.checks,
            "gin": self.gin,
            "dim": self.dim,
            "locus": None if self.locus is None else self.locus.to_dict(),
            "notes": self.notes,
        }


@dataclass
class SuiteReport:
    name: str
    seed: int
    cases: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def status(self) -> str:
        return "verified" if self.passed else "failed"

    @property
    def exit_code(self) -> int:
        return _status_code(self.status)

    def to_dict(self) -> dict:
        return {
            "kind": "suite",
            "name": self.name,
            "status": self.status,
            "seed": self.seed,
            "cases": [c.to_dict() for c in self.cases],
        }


def verify_examples_2_6(
    q: Polynomial | None = None,
    p: Polynomial | None = None,
    trials: int = 5,
    seed: int = 0,
    maxdeg: int = 8,
) -> SuiteReport:
    """Check the three degree-3 spaces whose gin is the staircase of x1^2 x3 and x1 x2^2."""
    target = borel_space(FIGURE_STAIRCASE_GENS, 3)
    unit_points = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    default_a = q is None and p is None
    dq, dp = default_case_a_forms()
    q = dq if q is None else q
    p = dp if p is None else p
    cases = []

    for name, v, pts in [("a", case_a(q, p), ()), ("b", case_b(), unit_points), ("c", case_c(), ())]:
        res = gin(v, trials=trials, seed=seed, strict=False)
        locus = analyze_locus(v, maxdeg, pts)
        checks = {
            "dim_is_4": v.dim == 4,
            "gin_agreed": res.agreed,
            "gin_matches_staircase": res.monomials == target,
        }
        notes = {}
        if name == "a":
            checks["q_not_common_factor"] = not verify_common_factor(v, q)
            if default_a:
                checks["locus_six_points"] = locus.status == "stable" and locus.stabilized_value == 6
        elif name == "b":
            checks["locus_three_points"] = locus.status == "stable" and locus.stabilized_value == 3
            checks["unit_vectors_vanish"] = all(w["vanishes"] for w in locus.witnesses)
            forms, span = syzygy_coefficient_forms()
            notes["syzygy_forms"] = [str(f) for f in forms]
            checks["syzygy_forms_span_4"] = span.dim == 4
            checks["syzygy_forms_equal_V"] = span == v
        else:
            checks["locus_empty"] = locus.status == "stable" and locus.is_empty
            forms, span = cyclic_coefficient_forms()
            notes["cyclic_forms"] = [str(f) for f in forms]
            checks["cyclic_forms_equal_V"] = span == v
        cases.append(CaseReport(name, checks, _mons(res.monomials), v.dim, locus, notes))
    return SuiteReport("examples-2.6", seed, cases)


@dataclass
class Example27Report:
    seed: int
    gin: list
    gin_matches_staircase: bool
    in_colon_x3: list
    in_colon_matches: bool
    colon2_nonzero: bool
    colon_two_forms_nonzero: bool

    @property
    def status(self) -> str:
        return "verified" if self.gin_matches_staircase and self.in_colon_matches else "failed"

    @property
    def exit_code(self) -> int:
        return _status_code(self.status)

    def to_dict(self) -> dict:
        return {
            "kind": "example-2.7",
            "status": self.status,
            "seed": self.seed,
            "gin": self.gin,
            "gin_matches_staircase": self.gin_matches_staircase,
            "in_colon_x3": self.in_colon_x3,
            "in_colon_matches": self.in_colon_matches,
            "colon2_nonzero": self.colon2_nonzero,
            "colon_two_forms_nonzero": self.colon_two_forms_nonzero,
        }


def degree4_space(seed: int = 0, range_: int = DEFAULT_RANGE) -> FormSpace:
    """``generify(p * S_2 + <q>)`` for a random quadric ``p`` and quartic ``q`` in 3 variables."""
    rng = random.Random(seed)
    p = random_form(3, 2, rng, range_)
    q = random_form(3, 4, rng, range_)
    v = divisor_space(p, 2) + FormSpace.from_polynomials([q])
    return generify(v, rng.getrandbits(63), range_)


def explore_example_2_7(
    v: FormSpace | None = None, seed: int = 0, trials: int = 3, range_: int = DEFAULT_RANGE
) -> Example27Report:
    """Report in(V:x3), and whether V:h^2 and V:h1 h2 are nonzero for random h, h1, h2.

    No relation between the last two bits is asserted.
    """
    if v is None:
        v = degree4_space(seed, range_)
    if (v.n, v.degree, v.dim) != (3, 4, 7):
        raise PreconditionError(f"expected a 7-dimensional space of quartics in 3 variables, got {v}")
    rng = random.Random(seed ^ 0x5EED)
    res = gin(v, trials=trials, seed=rng.getrandbits(63), range_=range_, strict=False)
    colon = initial_space(colon_last(v, 1))
    x1, x2, x3 = Monomial.var(1, 3), Monomial.var(2, 3), Monomial.var(3, 3)
    colon_target = MonomialSpace(3, 3, [x1 * x1 * x1, x1 * x1 * x2, x1 * x1 * x3])

    def lin():
        return Polynomial.linear_form([rng.randint(-range_, range_) for _ in range(3)])

    h, h1, h2 = lin(), lin(), lin()
    return Example27Report(
        seed=seed,
        gin=_mons(res.monomials),
        gin_matches_staircase=res.agreed and res.monomials == borel_space(DEGREE4_STAIRCASE_GENS, 4),
        in_colon_x3=_mons(colon),
        in_colon_matches=colon == colon_target,
        colon2_nonzero=colon_product(v, [h, h]).dim > 0,
        colon_two_forms_nonzero=colon_product(v, [h1, h2]).dim > 0,
    )


@dataclass
class Theorem1Report:
    a: int
    b: int
    m: int
    n: int
    seed: int
    gin: list
    expected: list
    gin_ok: bool
    common_factor_ok: bool
    restricted_hypothesis: bool
    j_codimension: int

    @property
    def status(self) -> str:
        ok = self.gin_ok and self.common_factor_ok and self.restricted_hypothesis
        return "verified" if ok and self.j_codimension == 1 else "failed"

    @property
    def exit_code(self) -> int:
        return _status_code(self.status)

    def to_dict(self) -> dict:
        return {
            "kind": "theorem-1",
            "status": self.status,
            "a": self.a,
            "b": self.b,
            "m": self.m,
            "n": self.n,
            "seed": self.seed,
            "gin": self.gin,
            "expected": self.expected,
            "gin_ok": self.gin_ok,
            "common_factor_ok": self.common_factor_ok,
            "restricted_hypothesis": self.restricted_hypothesis,
            "j_codimension": self.j_codimension,
        }


def scenario_theorem_1(
    a: int, b: int, m: int, n: int, seed: int = 0, trials: int = 3,
    cap: int = DEGREE_CAP, range_: int = DEFAULT_RANGE,
) -> Theorem1Report:
    """Build ``V = p * g(<x1..xm>^b)`` and check gin, the common factor and the J data.

    ``p`` is a random form of degree ``a`` and ``g`` a random change of coordinates.
    """
    if not 3 <= m <= n:
        raise PreconditionError(f"need 3 <= m <= n, got m={m}, n={n}")
    if a < 1 or b < 1:
        raise PreconditionError("a and b must be positive")
    if a + b > cap:
        raise DegreeError(f"degree a+b = {a + b} exceeds cap {cap}")
    rng = random.Random(seed)
    p = random_form(n, a, rng, range_)
    g = random_change(n, rng.getrandbits(63), range_)
    power = [e + (0,) * (n - m) for e in monomials_of_degree(m, b)]
    w = substitute_space(FormSpace.from_monomials(n, b, power), g)
    v = FormSpace.from_polynomials([p * f for f in w.polynomials()], n=n, degree=a + b)
    res = gin(v, trials=trials, seed=rng.getrandbits(63), range_=range_, strict=False)
    x1a = Monomial.var(1, n, a)
    expected = MonomialSpace(n, a + b, [x1a * Monomial(e) for e in power])
    depth = n - m
    t = expected.restrict(depth) if depth else expected
    j = build_J(t)
    return Theorem1Report(
        a, b, m, n, seed,
        gin=_mons(res.monomials),
        expected=_mons(expected),
        gin_ok=res.agreed and res.monomials == expected,
        common_factor_ok=verify_common_factor(v, p),
        restricted_hypothesis=hypothesis_a(t),
        j_codimension=codimension(j.ideal),
    )
