"""Monomials, the revlex order and sparse homogeneous polynomials over Q.

Variables are 1-based in printed form (``x1`` is the revlex-largest variable)
and 0-based in exponent tuples.  All coefficients are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from .errors import DegreeError, DimensionError, InvalidChangeError

Exps = tuple  # tuple[int, ...]


def revlex_key(exps):
    """Sort key: ascending key order is descending revlex order."""
    return (sum(exps), exps[::-1])


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple:
    """All exponent tuples of degree ``d`` in ``n`` variables, revlex-descending."""
    if n < 0 or d < 0:
        raise DegreeError(f"bad ring/degree ({n}, {d})")
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=revlex_key)
    return tuple(out)


@lru_cache(maxsize=None)
def column_index(n: int, d: int) -> dict:
    return {m: i for i, m in enumerate(monomials_of_degree(n, d))}


@dataclass(frozen=True, slots=True)
class Monomial:
    exps: tuple
    degree: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exps)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        object.__setattr__(self, "exps", exps)
        object.__setattr__(self, "degree", sum(exps))

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def var(cls, i: int, n: int, power: int = 1) -> "Monomial":
        """The monomial ``x_i^power`` (``i`` is 1-based)."""
        if not 1 <= i <= n:
            raise DimensionError(f"variable x{i} outside 1..{n}")
        e = [0] * n
        e[i - 1] = power
        return cls(tuple(e))

    @property
    def n(self) -> int:
        return len(self.exps)

    def _check(self, other):
        if len(self.exps) != len(other.exps):
            raise DimensionError(f"monomials in {len(self.exps)} and {len(other.exps)} variables")

    def __mul__(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def divides(self, other: "Monomial") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exps, other.exps)))

    def __lt__(self, other):
        return revlex_compare(self, other) < 0

    def __le__(self, other):
        return revlex_compare(self, other) <= 0

    def __gt__(self, other):
        return revlex_compare(self, other) > 0

    def __ge__(self, other):
        return revlex_compare(self, other) >= 0

    def __str__(self):
        return format_monomial(self.exps)


def format_monomial(exps) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def revlex_compare(a: Monomial, b: Monomial) -> int:
    """Return 1 if ``a > b``, -1 if ``a < b`` and 0 if equal, in revlex.

    Lower total degree is larger; within one degree the monomial with the
    smaller exponent at the last differing variable is larger.
    """
    if len(a.exps) != len(b.exps):
        raise DimensionError(f"monomials in {len(a.exps)} and {len(b.exps)} variables")
    if a.degree != b.degree:
        return 1 if a.degree < b.degree else -1
    for x, y in zip(reversed(a.exps), reversed(b.exps)):
        if x != y:
            return 1 if x < y else -1
    return 0


def _as_exps(m, n):
    exps = m.exps if isinstance(m, Monomial) else tuple(m)
    if len(exps) != n:
        raise DimensionError(f"monomial {exps} is not in {n} variables")
    return exps


def _mul_terms(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


class Polynomial:
    """Immutable homogeneous polynomial in ``n`` variables with rational coefficients.

    The zero polynomial may carry a nominal ``degree`` (or ``None``).
    """

    __slots__ = ("n", "_terms", "degree", "_hash")

    def __init__(self, n: int, terms: Mapping | None = None, degree: int | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                e = _as_exps(m, n)
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise DegreeError(f"inhomogeneous polynomial with degrees {sorted(degs)}")
        if degs:
            (actual,) = degs
            if degree is not None and degree != actual:
                raise DegreeError(f"terms of degree {actual}, declared degree {degree}")
            degree = actual
        self.n = n
        self._terms = clean
        self.degree = degree
        self._hash = None

    @classmethod
    def _raw(cls, n, terms, degree):
        p = cls.__new__(cls)
        p.n, p._terms, p.degree, p._hash = n, terms, degree, None
        return p

    # constructors

    @classmethod
    def zero(cls, n: int, degree: int | None = None) -> "Polynomial":
        return cls._raw(n, {}, degree)

    @classmethod
    def constant(cls, c, n: int) -> "Polynomial":
        return cls(n, {(0,) * n: c}, degree=0)

    @classmethod
    def variable(cls, i: int, n: int) -> "Polynomial":
        return cls(n, {Monomial.var(i, n): 1})

    @classmethod
    def from_monomial(cls, m: Monomial, coeff=1) -> "Polynomial":
        return cls(m.n, {m.exps: coeff}, degree=m.degree)

    @classmethod
    def linear_form(cls, coeffs: Iterable) -> "Polynomial":
        coeffs = list(coeffs)
        n = len(coeffs)
        return cls(n, {Monomial.var(i + 1, n).exps: c for i, c in enumerate(coeffs)}, degree=1)

    # accessors

    @property
    def terms(self) -> dict:
        """Copy of the term map, keyed by :class:`Monomial`."""
        return {Monomial(m): c for m, c in self._terms.items()}

    def raw_terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms sorted revlex-descending as ``(Monomial, Fraction)`` pairs."""
        for m in sorted(self._terms, key=revlex_key):
            yield Monomial(m), self._terms[m]

    def coefficient(self, m) -> Fraction:
        return self._terms.get(_as_exps(m, self.n), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return Monomial(min(self._terms, key=revlex_key))

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.leading_monomial().exps]

    # arithmetic

    def _check(self, other):
        if self.n != other.n:
            raise DimensionError(f"polynomials in {self.n} and {other.n} variables")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
        if self.degree != other.degree:
            raise DegreeError(f"adding forms of degrees {self.degree} and {other.degree}")
        return Polynomial._raw(self.n, out, self.degree)

    def __neg__(self):
        return Polynomial._raw(self.n, {m: -c for m, c in self._terms.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.n, self.degree)
        return Polynomial._raw(self.n, {m: v * c for m, v in self._terms.items()}, self.degree)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            deg = None
            if self.degree is not None and other.degree is not None:
                deg = self.degree + other.degree
            return Polynomial._raw(self.n, _mul_terms(self._terms, other._terms), deg)
        if isinstance(other, Monomial):
            e = _as_exps(other, self.n)
            deg = None if self.degree is None else self.degree + other.degree
            return Polynomial._raw(
                self.n,
                {tuple(a + b for a, b in zip(m, e)): c for m, c in self._terms.items()},
                deg,
            )
        return self.scale(other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        out = Polynomial.constant(1, self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # evaluation and variable manipulation

    def evaluate(self, point) -> Fraction:
        point = [Fraction(v) for v in point]
        if len(point) != self.n:
            raise DimensionError(f"point of length {len(point)} for {self.n} variables")
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in zip(point, m):
                if e:
                    t *= v**e
            total += t
        return total

    def restrict(self, r: int = 1) -> "Polynomial":
        """Set the last ``r`` variables to zero; the result lives in ``n - r`` variables."""
        if not 0 <= r <= self.n:
            raise DimensionError(f"cannot drop {r} of {self.n} variables")
        k = self.n - r
        out = {m[:k]: c for m, c in self._terms.items() if not any(m[k:])}
        return Polynomial._raw(k, out, self.degree)

    def __repr__(self):
        return f"Polynomial({self.n}, {self})"

    def __str__(self):
        return format_polynomial(self)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    """Render in the input grammar, e.g. ``x1^2*x3 - 3/2*x2^3``."""
    if p.is_zero():
        return "0"
    out = []
    for m, c in p.items():
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = format_monomial(m.exps)
        if mono == "1":
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


class LinearChange:
    """Invertible change of coordinates ``x_i -> sum_j m[i][j] x_j``.

    Substitution realises ``p(x) -> p(M x)``; ``substitute(substitute(p, A), B)``
    equals ``substitute(p, A @ B)``.
    """

    __slots__ = ("matrix", "_inverse")

    def __init__(self, matrix, _inverse=None):
        rows = tuple(tuple(Fraction(v) for v in row) for row in matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidChangeError("coordinate change must be a square matrix")
        self.matrix = rows
        if _inverse is None:
            _inverse = _invert(rows)
            if _matmul(rows, _inverse) != _identity(n):
                raise InvalidChangeError("inverse check failed")
        self._inverse = _inverse

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, n: int) -> "LinearChange":
        ident = _identity(n)
        return cls(ident, _inverse=ident)

    @classmethod
    def sending_to_last(cls, h: Polynomial) -> "LinearChange":
        """A change whose last linear form is ``h`` (so ``x_n`` is sent to ``h``)."""
        if h.degree != 1 or h.is_zero():
            raise InvalidChangeError("need a nonzero linear form")
        n = h.n
        coeffs = [h.coefficient(Monomial.var(i + 1, n)) for i in range(n)]
        k = max(i for i in range(n) if coeffs[i])
        rows = []
        for j in range(n):
            if j != k:
                rows.append([1 if t == j else 0 for t in range(n)])
        rows.append(coeffs)
        return cls(rows)

    @property
    def inverse(self) -> "LinearChange":
        return LinearChange(self._inverse, _inverse=self.matrix)

    def compose(self, other: "LinearChange") -> "LinearChange":
        """The change equivalent to applying ``self`` then ``other``."""
        return LinearChange(_matmul(self.matrix, other.matrix))

    def linear_forms(self) -> list:
        return [Polynomial.linear_form(row) for row in self.matrix]

    def determinant(self) -> Fraction:
        return determinant(self.matrix)

    def __eq__(self, other):
        return isinstance(other, LinearChange) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"LinearChange({[[str(v) for v in r] for r in self.matrix]})"


def _identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def _matmul(a, b):
    n = len(b[0]) if b else 0
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(n))
        for i in range(len(a))
    )


def determinant(matrix) -> Fraction:
    m = [list(map(Fraction, r)) for r in matrix]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def _invert(rows):
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            raise InvalidChangeError("singular coordinate change")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [v / p for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(r[n:]) for r in aug)


def substitute_linear(p: Polynomial, g: LinearChange) -> Polynomial:
    """Replace each ``x_i`` by the i-th linear form of ``g`` and expand exactly."""
    if g.n != p.n:
        raise DimensionError(f"change on {g.n} variables applied to {p.n}")
    n = p.n
    forms = [
        {Monomial.var(j + 1, n).exps: c for j, c in enumerate(row) if c} for row in g.matrix
    ]
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = forms[i] if k == 1 else _mul_terms(power(i, k - 1), forms[i])
        return powers[key]

    out: dict = {}
    for m, c in p._terms.items():
        acc = {(0,) * n: c}
        for i, e in enumerate(m):
            if e:
                acc = _mul_terms(acc, power(i, e))
        for mm, v in acc.items():
            s = out.get(mm, 0) + v
            if s:
                out[mm] = s
            else:
                out.pop(mm, None)
    return Polynomial._raw(n, out, p.degree)


def exact_divide(f: Polynomial, p: Polynomial) -> Polynomial | None:
    """Return ``q`` with ``f == p * q``, or ``None`` when ``p`` does not divide ``f``."""
    if p.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    f._check(p)
    n = f.n
    if f.is_zero():
        deg = None if f.degree is None else f.degree - p.degree
        return Polynomial.zero(n, deg)
    if f.degree < p.degree:
        return None
    lead = min(p._terms, key=revlex_key)
    lc = p._terms[lead]
    rem = dict(f._terms)
    quot = {}
    while rem:
        m = min(rem, key=revlex_key)
        if any(a < b for a, b in zip(m, lead)):
            return None
        qm = tuple(a - b for a, b in zip(m, lead))
        c = rem[m] / lc
        quot[qm] = c
        for pm, pc in p._terms.items():
            mm = tuple(a + b for a, b in zip(pm, qm))
            v = rem.get(mm, 0) - c * pc
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return Polynomial._raw(n, quot, f.degree - p.degree)


def expand_t_coefficients(p: Polynomial, t_block: Iterable[int]) -> dict:
    """Group the terms of ``p`` by their monomial in the variables ``t_block``.

    ``t_block`` lists 1-based indices of the parameter variables; the remaining
    variables (in their original order) are the x-variables of the values.
    Returns ``{t-Monomial: x-Polynomial}``.
    """
    t_idx = list(t_block)
    if len(set(t_idx)) != len(t_idx):
        raise IndexError(f"repeated index in t-block {t_idx}")
    for i in t_idx:
        if not 1 <= i <= p.n:
            raise IndexError(f"t-variable index {i} outside 1..{p.n}")
    t0 = [i - 1 for i in t_idx]
    x0 = [i for i in range(p.n) if i not in set(t0)]
    groups: dict = {}
    for m, c in p._terms.items():
        tm = tuple(m[i] for i in t0)
        xm = tuple(m[i] for i in x0)
        groups.setdefault(tm, {})[xm] = c
    return {Monomial(tm): Polynomial(len(x0), terms) for tm, terms in groups.items()}
