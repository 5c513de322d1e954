import random
from pathlib import Path

import pytest

from ginspace.forms import FormSpace
from ginspace.poly import Polynomial, monomials_of_degree

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def xs(n):
    return [Polynomial.variable(i, n) for i in range(1, n + 1)]


def random_poly(rng, n, d, density=0.5, coeff=5):
    mons = monomials_of_degree(n, d)
    while True:
        terms = {m: rng.randint(-coeff, coeff) for m in mons if rng.random() < density}
        p = Polynomial(n, terms, degree=d)
        if not p.is_zero():
            return p


def random_space(rng, n, d, dim, density=0.4, coeff=5):
    """Sparse random space, so that in(V) is usually far from generic."""
    dim = min(dim, len(monomials_of_degree(n, d)))
    gens = [random_poly(rng, n, d, density, coeff) for _ in range(dim)]
    return FormSpace.from_polynomials(gens, n=n, degree=d)


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, seconds, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(
            f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  ({seconds:.2f} s)  {detail}"
        )
