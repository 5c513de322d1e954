from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from ginspace.errors import DimensionError
from ginspace.linalg import (
    DEFAULT_PRIME,
    ExactMatrix,
    echelon,
    echelon_python,
    intersect,
    membership,
    nullspace,
    rank,
    rref,
    span_sum,
)


def bareiss_rank(rows):
    """Fraction-free elimination; kept deliberately separate from the library path."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r, prev = 0, Fraction(1)
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev
            a[i][c] = Fraction(0)
        prev = a[r][c]
        r += 1
        if r == m:
            break
    return r


def matrices(max_rows=6, max_cols=7):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=0, max_size=max_rows
        ).map(lambda rows: ExactMatrix.from_rows(rows, n))
    )


def test_rref_small_example():
    m = ExactMatrix.from_rows([[2, 4, 6], [1, 2, 4]])
    r, piv = rref(m)
    assert piv == [0, 2]
    assert r.rows == ((1, 2, 0), (0, 0, 1))


def test_rref_drops_zero_rows_and_keeps_fractions():
    m = ExactMatrix.from_rows([[0, 0], [3, 1], [6, 2]])
    r, piv = rref(m)
    assert piv == [0] and r.rows == ((Fraction(1), Fraction(1, 3)),)


def test_bad_widths():
    with pytest.raises(DimensionError):
        ExactMatrix.from_rows([[1, 2], [1]], 2)
    with pytest.raises(DimensionError):
        membership([1], ExactMatrix.from_rows([[1, 2]]))


@settings(max_examples=150)
@given(matrices())
def test_rank_matches_bareiss_and_sympy(m):
    assert rank(m) == bareiss_rank(m.rows)
    if m.rows:
        assert rank(m) == sp.Matrix(m.rows).rank()


@settings(max_examples=100)
@given(matrices())
def test_rref_canonical_and_idempotent(m):
    r, piv = rref(m)
    assert rref(r) == (r, piv)
    for i, p in enumerate(piv):
        assert r.rows[i][p] == 1
        assert all(r.rows[k][p] == 0 for k in range(len(piv)) if k != i)
        assert all(x == 0 for x in r.rows[i][:p])
    assert piv == sorted(piv)
    if m.rows:
        expected, exp_piv = sp.Matrix(m.rows).rref()
        assert tuple(exp_piv) == tuple(piv)
        assert [list(row) for row in r.rows] == [
            [Fraction(int(x.p), int(x.q)) for x in expected.row(i)] for i in range(len(piv))
        ]


@settings(max_examples=100)
@given(matrices())
def test_rank_nullity(m):
    ns = nullspace(m)
    assert rank(m) + ns.nrows == m.ncols
    for x in ns.rows:
        for row in m.rows:
            assert sum(a * b for a, b in zip(row, x)) == 0


@settings(max_examples=100)
@given(matrices(), st.lists(st.integers(-2, 2), min_size=6, max_size=6))
def test_membership_of_combinations(m, coeffs):
    v = [sum(c * row[j] for c, row in zip(coeffs, m.rows)) for j in range(m.ncols)]
    assert membership(v, m)
    bigger = m.stack(ExactMatrix.from_rows([[1] * m.ncols]))
    assert membership([1] * m.ncols, m) == (rank(bigger) == rank(m))


@settings(max_examples=100)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), max_size=5),
    st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), max_size=5),
    st.just(n),
)))
def test_grassmann_identity(data):
    ra, rb, n = data
    a, b = ExactMatrix.from_rows(ra, n), ExactMatrix.from_rows(rb, n)
    cap = intersect(a, b)
    assert rank(a) + rank(b) == rank(span_sum(a, b)) + cap.nrows
    for v in cap.rows:
        assert membership(v, a) and membership(v, b)


def test_prime_field_mode():
    m = ExactMatrix.from_rows([[1, 2], [3, 6 + DEFAULT_PRIME]])
    rows, piv = rref(m, modulus=DEFAULT_PRIME)
    assert piv == [0] and [list(r) for r in rows] == [[1, 2]]
    # over Q the same matrix has full rank
    assert rank(m) == 2


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=7, max_cols=8))
def test_flint_echelon_matches_reference_reducer(m):
    rows, pivots = echelon(m.rows, m.ncols)
    ref_rows, ref_pivots = echelon_python(m.rows, m.ncols, None)
    assert list(pivots) == list(ref_pivots)
    assert [list(r) for r in rows] == [list(r) for r in ref_rows]
