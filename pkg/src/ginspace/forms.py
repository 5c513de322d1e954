"""Vector spaces of forms of one degree, held in canonical reduced echelon form.

Columns are the degree-d monomials in descending revlex order, so the pivot of
each basis row is the leading monomial of that row and the pivots together
form the initial space.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DegreeError, DimensionError, InvalidChangeError
from .linalg import (
    ExactMatrix,
    column_map,
    flint_echelon,
    flint_rows,
    from_flint,
    rref,
    stack_flint,
    to_flint,
)
from .poly import (
    LinearChange,
    Monomial,
    Polynomial,
    column_index,
    monomials_of_degree,
    substitute_linear,
)
from .stable import MonomialSpace


def _vector(p: Polynomial, n: int, d: int) -> list:
    idx = column_index(n, d)
    v = [0] * len(idx)
    for m, c in p.raw_terms().items():
        v[idx[m]] = c
    return v


class FormSpace:
    """Subspace of degree-``d`` forms in ``n`` variables.

    The basis is held in reduced echelon form as a FLINT ``fmpq_mat`` whose
    rows are exactly the basis; ``basis`` gives the same rows as Fractions.
    Two FormSpaces compare equal iff their canonical bases are identical.
    """

    __slots__ = ("n", "degree", "pivots", "_mat", "_basis")

    def __init__(self, n: int, degree: int, basis: ExactMatrix, pivots: Sequence[int]):
        self.n = n
        self.degree = degree
        self.pivots = tuple(pivots)
        self._basis = basis
        self._mat = to_flint(basis.rows, basis.ncols) if basis.rows else None

    @classmethod
    def _from_reduced(cls, n: int, d: int, mat, pivots) -> "FormSpace":
        obj = cls.__new__(cls)
        obj.n, obj.degree, obj.pivots = n, d, tuple(pivots)
        obj._mat = mat if pivots else None
        obj._basis = None
        return obj

    @classmethod
    def _from_flint(cls, n: int, d: int, mat) -> "FormSpace":
        reduced, pivots = flint_echelon(mat)
        return cls._from_reduced(n, d, reduced, pivots)

    # construction

    @classmethod
    def from_vectors(cls, n: int, d: int, rows: Iterable[Sequence]) -> "FormSpace":
        width = len(monomials_of_degree(n, d))
        rows = [r for r in rows if any(r)]
        for r in rows:
            if len(r) != width:
                raise DimensionError(f"row of length {len(r)} for width {width}")
        if not rows:
            return cls.zero(n, d)
        return cls._from_flint(n, d, to_flint(rows, width))

    @classmethod
    def from_polynomials(
        cls, polys: Iterable[Polynomial], n: int | None = None, degree: int | None = None
    ) -> "FormSpace":
        polys = list(polys)
        if n is None:
            if not polys:
                raise DimensionError("variable count needed for an empty generating set")
            n = polys[0].n
        degs = {p.degree for p in polys if not p.is_zero()}
        if degree is None:
            if len(degs) != 1:
                if not degs:
                    raise DegreeError("degree needed when all generators are zero")
                raise DegreeError(f"generators of several degrees {sorted(degs)}")
            (degree,) = degs
        elif degs - {degree}:
            raise DegreeError(f"generators of degree {sorted(degs)} in a degree-{degree} space")
        for p in polys:
            if p.n != n:
                raise DimensionError(f"generator in {p.n} variables, expected {n}")
        return cls.from_vectors(n, degree, (_vector(p, n, degree) for p in polys if not p.is_zero()))

    @classmethod
    def from_monomials(cls, n: int, d: int, monomials: Iterable) -> "FormSpace":
        idx = column_index(n, d)
        width = len(idx)
        rows = []
        for m in monomials:
            e = m.exps if isinstance(m, Monomial) else tuple(m)
            v = [0] * width
            v[idx[e]] = 1
            rows.append(v)
        return cls.from_vectors(n, d, rows)

    @classmethod
    def zero(cls, n: int, d: int) -> "FormSpace":
        return cls._from_reduced(n, d, None, ())

    @classmethod
    def full(cls, n: int, d: int) -> "FormSpace":
        return cls.from_monomials(n, d, monomials_of_degree(n, d))

    # accessors

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def width(self) -> int:
        return len(monomials_of_degree(self.n, self.degree))

    @property
    def basis(self) -> ExactMatrix:
        if self._basis is None:
            rows = from_flint(self._mat) if self._mat is not None else ()
            self._basis = ExactMatrix(rows, self.width)
        return self._basis

    @property
    def matrix(self):
        """The basis as a FLINT matrix, or None for the zero space."""
        return self._mat

    @property
    def columns(self) -> tuple:
        return monomials_of_degree(self.n, self.degree)

    def polynomials(self) -> list:
        cols = self.columns
        return [
            Polynomial(self.n, {cols[j]: c for j, c in enumerate(row) if c}, degree=self.degree)
            for row in self.basis.rows
        ]

    def vector(self, p: Polynomial) -> list:
        return _vector(p, self.n, self.degree)

    def __contains__(self, p: Polynomial) -> bool:
        if p.n != self.n:
            return False
        if p.is_zero():
            return True
        if p.degree != self.degree or self._mat is None:
            return False
        v = self.vector(p)
        # in echelon form, a member equals the combination read off at the pivots
        coeffs = to_flint([[v[j] for j in self.pivots]], self.dim)
        return coeffs * self._mat == to_flint([v], self.width)

    def issubspace(self, other: "FormSpace") -> bool:
        self._check(other)
        if self._mat is None:
            return True
        if other._mat is None:
            return False
        return stack_flint([other._mat, self._mat], self.width).rank() == other.dim

    def __add__(self, other: "FormSpace") -> "FormSpace":
        self._check(other)
        mats = [m for m in (self._mat, other._mat) if m is not None]
        if not mats:
            return FormSpace.zero(self.n, self.degree)
        return FormSpace._from_flint(self.n, self.degree, stack_flint(mats, self.width))

    def _check(self, other):
        if (self.n, self.degree) != (other.n, other.degree):
            raise DimensionError(
                f"spaces in (n, d) = {(self.n, self.degree)} and {(other.n, other.degree)}"
            )

    def __eq__(self, other):
        if not isinstance(other, FormSpace):
            return NotImplemented
        if (self.n, self.degree, self.pivots) != (other.n, other.degree, other.pivots):
            return False
        return self._mat is None or self._mat == other._mat

    def __hash__(self):
        return hash((self.n, self.degree, self.pivots))

    def __repr__(self):
        return f"FormSpace(n={self.n}, d={self.degree}, dim={self.dim})"


def initial_space(v: FormSpace) -> MonomialSpace:
    """Leading monomials of ``v``: the pivot columns of its echelon basis."""
    cols = v.columns
    return MonomialSpace(v.n, v.degree, [cols[j] for j in v.pivots])


def initial_space_mod(polys: Iterable[Polynomial], n: int, d: int, modulus: int) -> MonomialSpace:
    """Initial space of the span of ``polys`` reduced modulo a prime (probabilistic shortcut)."""
    width = len(monomials_of_degree(n, d))
    rows = [_vector(p, n, d) for p in polys if not p.is_zero()]
    if not rows:
        return MonomialSpace(n, d)
    _r, pivots = rref(ExactMatrix.from_rows(rows, width), modulus=modulus)
    cols = monomials_of_degree(n, d)
    return MonomialSpace(n, d, [cols[j] for j in pivots])


def substitute_space(v: FormSpace, g: LinearChange) -> FormSpace:
    return FormSpace.from_polynomials(
        (substitute_linear(p, g) for p in v.polynomials()), n=v.n, degree=v.degree
    )


def colon_monomial(v: FormSpace, m: Monomial) -> FormSpace:
    """``V : m = {q : q*m in V}``, solved as one linear system.

    Multiplication by ``m`` maps the monomial basis of degree ``d - deg m``
    onto the columns divisible by ``m``; ``V : m`` is the part of ``V``
    supported there, divided by ``m``.  Reordering columns so that the
    non-divisible ones come first and re-echelonising isolates that part.
    """
    if m.n != v.n:
        raise DimensionError(f"monomial in {m.n} variables for a space in {v.n}")
    k = m.degree
    if k > v.degree:
        raise DegreeError(f"colon by degree {k} in degree {v.degree}")
    if not v.dim:
        return FormSpace.zero(v.n, v.degree - k)
    perm, split, to_quotient = _colon_maps(v.n, v.degree, m.exps)
    reduced, pivots = flint_echelon(v.matrix * perm)
    first = next((i for i, p in enumerate(pivots) if p >= split), len(pivots))
    if first == len(pivots):
        return FormSpace.zero(v.n, v.degree - k)
    return FormSpace._from_flint(v.n, v.degree - k, flint_rows(reduced, first) * to_quotient)


@lru_cache(maxsize=None)
def _colon_maps(n: int, d: int, exps: tuple):
    """Column reordering putting monomials divisible by ``exps`` last, and the division map."""
    cols = monomials_of_degree(n, d)
    target_idx = column_index(n, d - sum(exps))
    div = [j for j, c in enumerate(cols) if all(a >= b for a, b in zip(c, exps))]
    divset = set(div)
    rest = [j for j in range(len(cols)) if j not in divset]
    order = rest + div
    perm = column_map(len(cols), len(cols), ((j, pos) for pos, j in enumerate(order)))
    to_quotient = column_map(
        len(cols), len(target_idx),
        ((len(rest) + pos, target_idx[tuple(a - b for a, b in zip(cols[j], exps))])
         for pos, j in enumerate(div)),
    )
    return perm, len(rest), to_quotient


def colon_last(v: FormSpace, r: int = 1) -> FormSpace:
    """``V : x_n^r`` in one step."""
    return colon_monomial(v, Monomial.var(v.n, v.n, r))


def colon_last_iterated(v: FormSpace, r: int = 1) -> FormSpace:
    """``(((V : x_n) : x_n) ...)``, r times; cross-check for :func:`colon_last`."""
    x = Monomial.var(v.n, v.n)
    for _ in range(r):
        v = colon_monomial(v, x)
    return v


def colon_form(v: FormSpace, h: Polynomial) -> FormSpace:
    """``V : h`` for a linear form ``h``, via a change of coordinates taking ``x_n`` to ``h``."""
    if h.is_zero() or h.degree != 1:
        raise InvalidChangeError("colon_form needs a nonzero linear form")
    if h.n != v.n:
        raise DimensionError(f"form in {h.n} variables for a space in {v.n}")
    g = LinearChange.sending_to_last(h)
    pulled = substitute_space(v, g.inverse)
    c = colon_last(pulled, 1)
    return substitute_space(c, g)


def colon_product(v: FormSpace, forms: Sequence[Polynomial]) -> FormSpace:
    """``V : (h_1 h_2 ... h_k)`` for linear forms, by successive colons."""
    for h in forms:
        v = colon_form(v, h)
    return v


def restrict(v: FormSpace, r: int = 1) -> FormSpace:
    """Image of ``V`` after setting the last ``r`` variables to zero."""
    if not 0 <= r < v.n:
        raise DimensionError(f"cannot drop {r} of {v.n} variables")
    if r == 0:
        return v
    if not v.dim:
        return FormSpace.zero(v.n - r, v.degree)
    return FormSpace._from_flint(v.n - r, v.degree, v.matrix * _restriction_map(v.n, v.degree, r))


@lru_cache(maxsize=None)
def _restriction_map(n: int, d: int, r: int):
    k = n - r
    idx = column_index(k, d)
    cols = monomials_of_degree(n, d)
    return column_map(len(cols), len(idx), ((j, idx[c[:k]]) for j, c in enumerate(cols) if not any(c[k:])))


@lru_cache(maxsize=None)
def _shift_map(n: int, d: int, i: int):
    """Multiplication by ``x_(i+1)`` from degree ``d`` to degree ``d + 1`` as a column map."""
    idx = column_index(n, d + 1)
    cols = monomials_of_degree(n, d)
    pairs = []
    for j, c in enumerate(cols):
        e = list(c)
        e[i] += 1
        pairs.append((j, idx[tuple(e)]))
    return column_map(len(cols), len(idx), pairs)


def _products(v: FormSpace, count: int):
    return [v.matrix * _shift_map(v.n, v.degree, i) for i in range(count)]


def multiply_by_variables(v: FormSpace, count: int | None = None) -> FormSpace:
    """``V * <x_1, ..., x_count>`` as a space of degree ``d + 1``."""
    n, d = v.n, v.degree
    count = n if count is None else count
    if not v.dim or not count:
        return FormSpace.zero(n, d + 1)
    width = len(monomials_of_degree(n, d + 1))
    return FormSpace._from_flint(n, d + 1, stack_flint(_products(v, count), width))


def ideal_piece(v: FormSpace, e: int) -> FormSpace:
    """Degree-``e`` piece of the ideal generated by ``V``."""
    if e < v.degree:
        raise DegreeError(f"ideal piece in degree {e} below generator degree {v.degree}")
    piece = v
    for _ in range(e - v.degree):
        piece = multiply_by_variables(piece)
    return piece


class GradedIdealSlice:
    """Pieces ``d..top`` of the ideal generated by a degree-``d`` space, computed lazily."""

    def __init__(self, v: FormSpace, top: int | None = None):
        self.v = v
        self.top = v.degree + 4 if top is None else top
        self._pieces = {v.degree: v}

    def __getitem__(self, e: int) -> FormSpace:
        if e < self.v.degree:
            raise DegreeError(f"degree {e} below generator degree {self.v.degree}")
        last = max(self._pieces)
        while last < e:
            self._pieces[last + 1] = multiply_by_variables(self._pieces[last])
            last += 1
        return self._pieces[e]

    @property
    def pieces(self) -> dict:
        return {e: self[e] for e in range(self.v.degree, self.top + 1)}


def ideal_pieces(generators: Iterable[Polynomial], n: int, top: int) -> dict:
    """Pieces ``0..top`` of the ideal generated by forms of possibly different degrees."""
    by_degree: dict = {}
    for g in generators:
        if not g.is_zero():
            by_degree.setdefault(g.degree, []).append(g)
    pieces = {}
    prev = None
    for e in range(0, top + 1):
        width = len(monomials_of_degree(n, e))
        mats = _products(prev, n) if prev is not None and prev.dim else []
        new = [_vector(g, n, e) for g in by_degree.get(e, [])]
        if new:
            mats.append(to_flint(new, width))
        prev = FormSpace._from_flint(n, e, stack_flint(mats, width)) if mats else FormSpace.zero(n, e)
        pieces[e] = prev
    return pieces


def build_colon_ideal(v: FormSpace, top: int | None = None) -> dict:
    """The graded family ``(V : x_n^(d-e))|x_n`` (e < d) and ``(I_V)|x_n`` (e >= d).

    The pieces from degree ``d`` on are generated by ``V|x_n``, since setting
    ``x_n = 0`` is a surjective ring map.
    """
    d = v.degree
    top = d + 4 if top is None else top
    out = {}
    for e in range(1, d):
        out[e] = restrict(colon_last(v, d - e), 1)
    if top >= d:
        slice_ = GradedIdealSlice(restrict(v, 1), top)
        for e in range(d, top + 1):
            out[e] = slice_[e]
    return out
