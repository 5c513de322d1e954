from fractions import Fraction
from itertools import product

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from ginspace.errors import DegreeError, DimensionError, InvalidChangeError
from ginspace.poly import (
    LinearChange,
    Monomial,
    Polynomial,
    exact_divide,
    expand_t_coefficients,
    monomials_of_degree,
    revlex_compare,
    substitute_linear,
)

from conftest import random_poly, xs

M = Monomial


def test_lower_degree_is_larger():
    assert revlex_compare(M((1, 0, 0)), M((2, 0, 0))) == 1
    assert M((1, 0, 0)) > M((2, 0, 0))


def test_last_differing_index_decides():
    # largest differing index is 2: exponent 1 < 2, so x1^2 x2 wins
    assert revlex_compare(M((2, 1, 0)), M((1, 2, 0))) == 1
    assert revlex_compare(M((1, 2, 0)), M((2, 1, 0))) == -1


def test_reflexive():
    m = M((1, 3, 2))
    assert revlex_compare(m, m) == 0


def test_mismatched_variable_counts():
    with pytest.raises(DimensionError):
        revlex_compare(M((1, 0)), M((1, 0, 0)))


def test_monomial_degree_is_cached():
    m = M((3, 0, 2))
    assert m.degree == 5 and m.n == 3
    with pytest.raises(ValueError):
        M((1, -1))


def test_monomials_of_degree_order():
    assert [str(M(e)) for e in monomials_of_degree(3, 2)] == [
        "x1^2", "x1*x2", "x2^2", "x1*x3", "x2*x3", "x3^2",
    ]


exps3 = st.tuples(*[st.integers(0, 4)] * 3)


@settings(max_examples=100)
@given(exps3, exps3, exps3)
def test_total_order(a, b, c):
    a, b, c = M(a), M(b), M(c)
    assert sum(1 for r in (a < b, a == b, a > b) if r) == 1
    assert revlex_compare(a, b) == -revlex_compare(b, a)
    if a > b and b > c:
        assert a > c


def test_multiplicative_exhaustive():
    mons = [M(e) for d in range(5) for e in monomials_of_degree(3, d)]
    for a, b in product(mons, repeat=2):
        if a.degree == b.degree and a > b:
            for i in range(1, 4):
                xi = M.var(i, 3)
                assert a * xi > b * xi


def _brute_leading(p):
    best = None
    for m in p.terms:
        if best is None or all(revlex_compare(m, o) >= 0 for o in p.terms):
            best = m if best is None or revlex_compare(m, best) > 0 else best
    return best


def test_leading_monomial():
    x1, x2, x3 = xs(3)
    p = x1**2 * x2 + x1 * x2**2
    assert p.leading_monomial() == M((2, 1, 0)) == _brute_leading(p)
    assert (5 * x3**4).leading_monomial() == M((0, 0, 4))
    q = x2**3 + x1 * x2 * x3
    assert q.leading_monomial() == M((0, 3, 0)) == _brute_leading(q)
    with pytest.raises(ValueError):
        Polynomial.zero(3).leading_monomial()


def test_homogeneity_enforced():
    with pytest.raises(DegreeError):
        Polynomial(2, {(1, 0): 1, (2, 0): 1})
    x1, x2 = xs(2)
    with pytest.raises(DegreeError):
        x1 + x1 * x2


def test_no_zero_coefficients():
    p = Polynomial(2, {(1, 0): 0, (0, 1): Fraction(1, 2)})
    assert len(p) == 1 and p.coefficient((0, 1)) == Fraction(1, 2)


def test_substitute_identity_and_binomial():
    x1, x2, x3 = xs(3)
    assert substitute_linear(x1, LinearChange.identity(3)) == x1
    g = LinearChange([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert substitute_linear(x1**2, g) == x1**2 + 2 * x1 * x2 + x2**2


def test_substitute_inverse_round_trip(rng):
    for _ in range(10):
        g = _random_change(rng, 3)
        p = random_poly(rng, 3, 3)
        assert substitute_linear(substitute_linear(p, g), g.inverse) == p


def _random_change(rng, n):
    while True:
        try:
            return LinearChange([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        except InvalidChangeError:
            pass


def test_singular_change_rejected():
    with pytest.raises(InvalidChangeError):
        LinearChange([[1, 2], [2, 4]])


def test_substitute_is_ring_map(rng):
    for _ in range(20):
        g = _random_change(rng, 3)
        f, h = random_poly(rng, 3, 2), random_poly(rng, 3, 1)
        assert substitute_linear(f * h, g) == substitute_linear(f, g) * substitute_linear(h, g)


def test_substitute_matches_sympy(rng):
    X = sp.symbols("x1:4")
    for _ in range(5):
        g = _random_change(rng, 3)
        p = random_poly(rng, 3, 3)
        expr = sum(c * sp.prod([X[i] ** e for i, e in enumerate(m.exps)]) for m, c in p.items())
        subs = {X[i]: sum(g.matrix[i][j] * X[j] for j in range(3)) for i in range(3)}
        expected = sp.Poly(expr.xreplace(subs), *X).as_dict()
        got = substitute_linear(p, g).raw_terms()
        assert {k: sp.Rational(v.numerator, v.denominator) for k, v in got.items()} == expected


def test_composition_order():
    a = LinearChange([[1, 1], [0, 1]])
    b = LinearChange([[2, 0], [1, 1]])
    x1, x2 = xs(2)
    p = x1**2 * x2
    assert substitute_linear(substitute_linear(p, a), b) == substitute_linear(p, a.compose(b))


def test_exact_divide_examples():
    x1, x2, x3 = xs(3)
    f = x1**2 * x2 + x1 * x2**2
    q = exact_divide(f, x1 * x2)
    assert q == x1 + x2 and q * (x1 * x2) == f
    one = exact_divide(f, f)
    assert one == Polynomial.constant(1, 3) and one.degree == 0
    assert exact_divide(x1**3 + x2**3, x1) is None
    with pytest.raises(ZeroDivisionError):
        exact_divide(f, Polynomial.zero(3))


def test_exact_divide_round_trip(rng):
    for _ in range(40):
        p = random_poly(rng, 3, rng.randint(1, 2))
        q = random_poly(rng, 3, rng.randint(0, 2))
        f = p * q
        got = exact_divide(f, p)
        assert got is not None and got * p == f
        # perturbing one coefficient almost always breaks divisibility; check against sympy
        g = f + Polynomial(3, {rng.choice(monomials_of_degree(3, f.degree)): 1})
        res = exact_divide(g, p)
        X = sp.symbols("x1:4")
        to_sp = lambda P: sp.Poly(
            {m.exps: sp.Rational(c.numerator, c.denominator) for m, c in P.items()}, *X
        )
        _, rem = sp.div(to_sp(g), to_sp(p))
        assert (res is None) == (not rem.is_zero)
        if res is not None:
            assert res * p == g


def test_expand_t_read_off():
    v = xs(4)  # x1, x2, t1, t2
    x1, x2, t1, t2 = v
    coeffs = expand_t_coefficients((t1 * x1 + t2 * x2) * x1, [3, 4])
    y1, y2 = xs(2)
    assert coeffs == {M((1, 0)): y1**2, M((0, 1)): y1 * y2}


def test_expand_t_syzygy_forms():
    x1, x2, x3, t1, t2, t3 = xs(6)
    p1, p2, p3 = x2 * x3, x1 * x3, x1 * x2
    p = t1 * p1 + t2 * p2 + t3 * p3
    h = t1 * x1 + t2 * x2 + t3 * x3
    coeffs = expand_t_coefficients(p * h, [4, 5, 6])
    y = xs(3)
    q1, q2, q3 = y[1] * y[2], y[0] * y[2], y[0] * y[1]
    expected = {
        (2, 0, 0): y[0] * q1,
        (1, 1, 0): y[0] * q2 + y[1] * q1,
        (1, 0, 1): y[0] * q3 + y[2] * q1,
        (0, 2, 0): y[1] * q2,
        (0, 1, 1): y[1] * q3 + y[2] * q2,
        (0, 0, 2): y[2] * q3,
    }
    assert {m.exps: f for m, f in coeffs.items()} == expected


def test_expand_t_no_t_variables():
    x1, x2 = xs(2)
    assert expand_t_coefficients(x1 * x2, []) == {M(()): x1 * x2}


def test_expand_t_bad_block():
    x1, x2 = xs(2)
    with pytest.raises(IndexError):
        expand_t_coefficients(x1 * x2, [3])
    with pytest.raises(IndexError):
        expand_t_coefficients(x1 * x2, [2, 2])


def test_expand_t_reassembly(rng):
    for _ in range(20):
        p = random_poly(rng, 5, 3)
        coeffs = expand_t_coefficients(p, [4, 5])
        total = Polynomial.zero(5, 3)
        for tm, form in coeffs.items():
            lifted = Polynomial(5, {xm.exps + tm.exps: c for xm, c in form.items()})
            total = total + lifted
        assert total == p
