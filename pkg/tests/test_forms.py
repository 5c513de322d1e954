import random
from fractions import Fraction

import pytest
import sympy as sp

from ginspace.errors import DegreeError, DimensionError, InvalidChangeError
from ginspace.forms import (
    FormSpace,
    GradedIdealSlice,
    build_colon_ideal,
    colon_form,
    colon_last,
    colon_last_iterated,
    colon_monomial,
    ideal_piece,
    initial_space,
    multiply_by_variables,
    restrict,
)
from ginspace.gin import generify
from ginspace.poly import Monomial, Polynomial, monomials_of_degree
from ginspace.stable import MonomialSpace
from ginspace.verify import case_a

from conftest import random_poly, random_space, xs

STAIRCASE = [(3, 0, 0), (2, 1, 0), (1, 2, 0), (2, 0, 1)]


def mono_space(n, d, exps):
    return FormSpace.from_monomials(n, d, [Monomial(e) for e in exps])


# initial space


def test_initial_space_examples():
    x1, x2, x3 = xs(3)
    v = FormSpace.from_polynomials([x1**2 + x2**2, x1**2 - x2**2], n=3, degree=2)
    assert initial_space(v) == MonomialSpace(3, 2, [(2, 0, 0), (0, 2, 0)])
    w = FormSpace.from_polynomials([x2**3 + x1 * x2 * x3], n=3, degree=3)
    assert initial_space(w) == MonomialSpace(3, 3, [(0, 3, 0)])
    assert len(initial_space(FormSpace.zero(3, 2))) == 0


def test_initial_space_size_is_dimension(rng):
    for _ in range(30):
        v = random_space(rng, 3, 3, rng.randint(0, 6))
        assert len(initial_space(v)) == v.dim


# canonicality


def test_canonical_under_row_operations(rng):
    for _ in range(30):
        n, d = rng.choice([(3, 2), (3, 3), (4, 2)])
        gens = [random_poly(rng, n, d) for _ in range(rng.randint(1, 4))]
        mixed = []
        for _ in range(len(gens) + 2):
            combo = Polynomial.zero(n, d)
            for g in gens:
                combo = combo + rng.randint(-3, 3) * g
            mixed.append(combo)
        a = FormSpace.from_polynomials(gens, n=n, degree=d)
        b = FormSpace.from_polynomials(mixed + gens[::-1], n=n, degree=d)
        assert a == b and hash(a) == hash(b)
        assert a.basis.rows == b.basis.rows


def test_membership_and_sum():
    x1, x2, x3 = xs(3)
    v = FormSpace.from_polynomials([x1 * x2, x3**2], n=3, degree=2)
    assert x1 * x2 - 4 * x3**2 in v
    assert x1**2 not in v
    w = v + FormSpace.from_polynomials([x1**2], n=3, degree=2)
    assert w.dim == 3 and v.issubspace(w) and not w.issubspace(v)


# colon by monomials


def test_colon_monomial_examples():
    v = mono_space(3, 3, STAIRCASE)
    assert colon_monomial(v, Monomial((0, 0, 1))) == mono_space(3, 2, [(2, 0, 0)])
    assert colon_monomial(v, Monomial.one(3)) == v
    assert colon_monomial(v, Monomial((0, 0, 2))).dim == 0
    with pytest.raises(DegreeError):
        colon_monomial(v, Monomial((0, 0, 4)))


def colon_oracle(v, m):
    """{q : q m in V} from a sympy nullspace of [q-coefficients | V-coefficients]."""
    n, d, k = v.n, v.degree, m.degree
    src = monomials_of_degree(n, d - k)
    tgt = {e: i for i, e in enumerate(monomials_of_degree(n, d))}
    basis = [list(r) for r in v.basis.rows]
    # columns: one per candidate monomial, then one per basis row of V
    rows = []
    for t in tgt:
        row = []
        for s in src:
            row.append(1 if tuple(a + b for a, b in zip(s, m.exps)) == t else 0)
        row.extend(-b[tgt[t]] for b in basis)
        rows.append(row)
    vecs = [x[: len(src)] for x in sp.Matrix(rows).nullspace()]
    return FormSpace.from_vectors(
        n, d - k, [[Fraction(int(c.p), int(c.q)) for c in vec] for vec in vecs]
    )


def test_colon_monomial_against_linear_system(rng):
    for _ in range(25):
        n, d = rng.choice([(3, 2), (3, 3), (4, 2)])
        v = random_space(rng, n, d, rng.randint(2, 8), density=0.6)
        m = Monomial(rng.choice(monomials_of_degree(n, rng.randint(1, d))))
        assert colon_monomial(v, m) == colon_oracle(v, m)


def test_colon_last_direct_equals_iterated(rng):
    for _ in range(30):
        n, d = rng.choice([(3, 3), (3, 4), (4, 3)])
        v = generify(random_space(rng, n, d, rng.randint(3, 12)), seed=rng.randint(0, 99))
        for r in range(1, d + 1):
            assert colon_last(v, r) == colon_last_iterated(v, r)


# colon by linear forms


def test_colon_form_by_last_variable_is_colon_monomial(rng):
    for _ in range(10):
        v = random_space(rng, 3, 3, 5, density=0.6)
        x3 = Polynomial.variable(3, 3)
        assert colon_form(v, x3) == colon_monomial(v, Monomial((0, 0, 1)))


def test_colon_form_of_multiples_of_a_linear_form():
    x1, x2, x3 = xs(3)
    p = x1 + 2 * x2 - x3
    v = FormSpace.from_polynomials([p * x for x in (x1, x2, x3)], n=3, degree=2)
    h = 7 * x1 - 3 * x2 + 5 * x3
    c = colon_form(v, h)
    assert c.dim == 1 and p in c


def test_colon_form_generic_cubics_is_zero():
    rng = random.Random(3)
    v = FormSpace.from_polynomials([random_poly(rng, 3, 3, 1.0, 50) for _ in range(2)], n=3, degree=3)
    h = Polynomial.linear_form([11, -4, 9])
    assert colon_form(v, h).dim == 0


def test_colon_form_against_linear_system(rng):
    for _ in range(15):
        v = random_space(rng, 3, 3, rng.randint(4, 9), density=0.7)
        h = Polynomial.linear_form([rng.randint(-3, 3) or 1 for _ in range(3)])
        c = colon_form(v, h)
        for q in c.polynomials():
            assert q * h in v
        # dimension against a sympy solve of q*h in V
        src = monomials_of_degree(3, 2)
        tgt = {e: i for i, e in enumerate(monomials_of_degree(3, 3))}
        cols = []
        for s in src:
            prod = Polynomial(3, {s: 1}) * h
            col = [0] * len(tgt)
            for m, coef in prod.raw_terms().items():
                col[tgt[m]] = coef
            cols.append(col)
        for b in v.basis.rows:
            cols.append([-x for x in b])
        mat = sp.Matrix(cols).T
        # V:h is injectively embedded (h is a nonzerodivisor), so its dimension is the kernel size
        assert c.dim == len(mat.nullspace())


def test_colon_form_rejects_bad_input():
    v = FormSpace.full(3, 2)
    with pytest.raises(InvalidChangeError):
        colon_form(v, Polynomial.zero(3, 1))
    with pytest.raises(InvalidChangeError):
        colon_form(v, Polynomial.variable(1, 3) ** 2)


# restriction


def test_restrict_examples():
    x1, x2, x3 = xs(3)
    v = FormSpace.from_polynomials([x1 * x3 + x1 * x2, x3**2], n=3, degree=2)
    y1, y2 = xs(2)
    assert restrict(v, 1) == FormSpace.from_polynomials([y1 * y2], n=2, degree=2)
    div = FormSpace.from_polynomials([x3 * x1, x3 * x2 - x3**2], n=3, degree=2)
    assert restrict(div, 1).dim == 0
    with pytest.raises(DimensionError):
        restrict(v, 3)


def test_restrict_monomial_space(rng):
    for _ in range(20):
        exps = rng.sample(monomials_of_degree(4, 3), rng.randint(1, 10))
        r = rng.randint(1, 3)
        got = initial_space(restrict(mono_space(4, 3, exps), r))
        assert got.exponents() == {e[: 4 - r] for e in exps if not any(e[4 - r:])}


def test_restrict_to_one_variable():
    v = FormSpace.full(3, 2)
    assert restrict(v, 2).dim == 1


@pytest.mark.parametrize("n,d", [(3, 2), (3, 3), (4, 2), (4, 3)])
def test_standard_facts(n, d):
    rng = random.Random(n * 10 + d)
    xn = Monomial.var(n, n)
    for _ in range(50):
        v = random_space(rng, n, d, rng.randint(1, len(monomials_of_degree(n, d))), density=0.5)
        t = initial_space(v)
        assert initial_space(restrict(v, 1)) == t.restrict(1)
        assert initial_space(colon_monomial(v, xn)) == t.colon(xn)


# ideal pieces


def test_ideal_piece_examples():
    x1, x2 = xs(2)
    v = FormSpace.from_polynomials([x1], n=2, degree=1)
    assert ideal_piece(v, 1) == v
    assert ideal_piece(v, 2) == FormSpace.from_polynomials([x1**2, x1 * x2], n=2, degree=2)
    with pytest.raises(DegreeError):
        ideal_piece(v, 0)


def test_ideal_piece_against_all_products(rng):
    for _ in range(10):
        v = random_space(rng, 3, 2, rng.randint(1, 4))
        for e in (3, 4):
            prods = []
            for b in v.polynomials():
                for m in monomials_of_degree(3, e - 2):
                    prods.append(b * Monomial(m))
            rows = [[p.coefficient(m) for m in monomials_of_degree(3, e)] for p in prods]
            assert ideal_piece(v, e).dim == sp.Matrix(rows).rank()


def test_graded_slice_is_lazy_and_consistent(rng):
    v = random_space(rng, 3, 2, 2)
    s = GradedIdealSlice(v, top=5)
    assert s[2] == v
    assert set(s.pieces) == {2, 3, 4, 5}
    assert s[5] == ideal_piece(v, 5)


# the graded colon family


def test_colon_family_of_first_example():
    v = generify(case_a(), seed=5)
    fam = build_colon_ideal(v)
    assert fam[2].dim == 1


def test_colon_family_of_divisible_space():
    x1, x2, x3 = xs(3)
    base = [x1**2 + x2 * x3, x2**2, x1 * x3]
    v = FormSpace.from_polynomials([x3 * b for b in base], n=3, degree=3)
    fam = build_colon_ideal(v)
    quotient = FormSpace.from_polynomials(base, n=3, degree=2)
    assert fam[2] == restrict(quotient, 1)


def test_colon_family_closed_under_variables(rng):
    for _ in range(15):
        n, d = rng.choice([(3, 3), (3, 4), (4, 3)])
        v = generify(random_space(rng, n, d, rng.randint(1, 8)), seed=rng.randint(0, 99))
        fam = build_colon_ideal(v, top=d + 2)
        for e in range(1, d + 2):
            assert multiply_by_variables(fam[e]).issubspace(fam[e + 1])


def test_restricted_generators_route(rng):
    for _ in range(10):
        v = random_space(rng, 3, 3, rng.randint(1, 6))
        fam = build_colon_ideal(v, top=6)
        for e in range(3, 7):
            assert fam[e] == restrict(ideal_piece(v, e), 1)


def test_zero_space_propagates():
    fam = build_colon_ideal(FormSpace.zero(3, 3), top=5)
    assert all(p.dim == 0 for p in fam.values())
