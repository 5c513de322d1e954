"""Monomial spaces and monomial ideals: strong stability, Borel closure,
minimal generators, Hilbert functions, codimension and the J(T) ideal.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .errors import ConsistencyError, DegreeError, DimensionError, PreconditionError
from .poly import Monomial, monomials_of_degree, revlex_key


def _exps(m) -> tuple:
    return m.exps if isinstance(m, Monomial) else tuple(m)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _moves(m: tuple):
    """Borel moves x_i * m / x_j for i < j with x_j | m."""
    for j in range(1, len(m)):
        if m[j]:
            for i in range(j):
                e = list(m)
                e[j] -= 1
                e[i] += 1
                yield tuple(e)


class MonomialSpace:
    """A finite set of monomials of one degree ``d`` in ``n`` variables."""

    __slots__ = ("n", "degree", "_set")

    def __init__(self, n: int, degree: int, monomials: Iterable = ()):
        s = frozenset(_exps(m) for m in monomials)
        for e in s:
            if len(e) != n:
                raise DimensionError(f"monomial {e} is not in {n} variables")
            if sum(e) != degree:
                raise DegreeError(f"monomial {e} is not of degree {degree}")
        self.n = n
        self.degree = degree
        self._set = s

    @classmethod
    def full(cls, n: int, d: int) -> "MonomialSpace":
        return cls(n, d, monomials_of_degree(n, d))

    @property
    def monomials(self) -> frozenset:
        return frozenset(Monomial(e) for e in self._set)

    def exponents(self) -> frozenset:
        return self._set

    def sorted(self) -> list:
        """Monomials in descending revlex order."""
        return [Monomial(e) for e in sorted(self._set, key=revlex_key)]

    def __contains__(self, m):
        return _exps(m) in self._set

    def __len__(self):
        return len(self._set)

    def __iter__(self):
        return iter(self.sorted())

    def __eq__(self, other):
        if not isinstance(other, MonomialSpace):
            return NotImplemented
        return (self.n, self.degree, self._set) == (other.n, other.degree, other._set)

    def __hash__(self):
        return hash((self.n, self.degree, self._set))

    def __repr__(self):
        return f"MonomialSpace(n={self.n}, d={self.degree}, {{{', '.join(map(str, self))}}})"

    def colon(self, m) -> "MonomialSpace":
        """``{q : q*m in self}``."""
        e = _exps(m)
        k = sum(e)
        if k > self.degree:
            raise DegreeError(f"colon by degree {k} monomial in degree {self.degree}")
        out = [tuple(a - b for a, b in zip(t, e)) for t in self._set if _divides(e, t)]
        return MonomialSpace(self.n, self.degree - k, out)

    def colon_last(self, r: int = 1) -> "MonomialSpace":
        """Colon by ``x_n^r``."""
        return self.colon(Monomial.var(self.n, self.n, r))

    def restrict(self, r: int = 1) -> "MonomialSpace":
        """Drop monomials involving the last ``r`` variables."""
        if not 0 <= r < self.n:
            raise DimensionError(f"cannot drop {r} of {self.n} variables")
        k = self.n - r
        return MonomialSpace(k, self.degree, [t[:k] for t in self._set if not any(t[k:])])

    def times_variables(self, count: int | None = None) -> "MonomialSpace":
        """``self * <x_1, ..., x_count>`` (all variables by default)."""
        count = self.n if count is None else count
        out = set()
        for t in self._set:
            for i in range(count):
                e = list(t)
                e[i] += 1
                out.add(tuple(e))
        return MonomialSpace(self.n, self.degree + 1, out)

    def union(self, other: "MonomialSpace") -> "MonomialSpace":
        return MonomialSpace(self.n, self.degree, self._set | other._set)

    def issubset(self, other: "MonomialSpace") -> bool:
        return self._set <= other._set


def _minimize(gens: Iterable[tuple]) -> frozenset:
    gs = sorted(set(gens), key=sum)
    kept: list = []
    for g in gs:
        if not any(_divides(k, g) for k in kept):
            kept.append(g)
    return frozenset(kept)


class MonomialIdeal:
    """Monomial ideal stored by its minimal generators."""

    __slots__ = ("n", "_gens")

    def __init__(self, n: int, generators: Iterable = ()):
        gens = [_exps(g) for g in generators]
        for g in gens:
            if len(g) != n:
                raise DimensionError(f"generator {g} is not in {n} variables")
        self.n = n
        self._gens = _minimize(gens)

    @property
    def generators(self) -> list:
        """Minimal generators ordered by degree, then revlex-descending."""
        return [Monomial(g) for g in sorted(self._gens, key=revlex_key)]

    def generator_exponents(self) -> frozenset:
        return self._gens

    def is_zero(self) -> bool:
        return not self._gens

    def max_generator_degree(self) -> int:
        return max((sum(g) for g in self._gens), default=-1)

    def __contains__(self, m) -> bool:
        e = _exps(m)
        return any(_divides(g, e) for g in self._gens)

    def piece(self, e: int) -> MonomialSpace:
        return _piece(self.n, self._gens, e)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and self._gens == other._gens

    def __hash__(self):
        return hash((self.n, self._gens))

    def __repr__(self):
        return f"MonomialIdeal(n={self.n}, gens=[{', '.join(map(str, self.generators))}])"


@lru_cache(maxsize=4096)
def _piece(n: int, gens: frozenset, e: int) -> MonomialSpace:
    return MonomialSpace(
        n, e, [m for m in monomials_of_degree(n, e) if any(_divides(g, m) for g in gens)]
    )


def is_strongly_stable(t) -> bool:
    """Closure under every move x_i*m/x_j (i < j, x_j | m)."""
    if isinstance(t, MonomialSpace):
        s = t.exponents()
        return all(mv in s for m in s for mv in _moves(m))
    if isinstance(t, MonomialIdeal):
        return all(mv in t for g in t.generator_exponents() for mv in _moves(g))
    raise TypeError(f"expected MonomialSpace or MonomialIdeal, got {type(t).__name__}")


def _closure_set(gens: Iterable[tuple]) -> set:
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        nxt = []
        for m in frontier:
            for mv in _moves(m):
                if mv not in seen:
                    seen.add(mv)
                    nxt.append(mv)
        frontier = nxt
    return seen


def borel_closure(gens: Iterable, n: int | None = None) -> MonomialIdeal:
    """Smallest strongly stable ideal containing ``gens``."""
    gs = [_exps(g) for g in gens]
    if n is None:
        if not gs:
            raise DimensionError("variable count needed for an empty generator set")
        n = len(gs[0])
    return MonomialIdeal(n, _closure_set(gs))


def borel_space(gens: Iterable, degree: int | None = None, n: int | None = None) -> MonomialSpace:
    """Degree-``degree`` piece of :func:`borel_closure` (default: top generator degree)."""
    ideal = borel_closure(gens, n)
    if degree is None:
        degree = ideal.max_generator_degree()
    return ideal.piece(degree)


def _as_pieces(pieces) -> dict:
    if isinstance(pieces, Mapping):
        return dict(sorted(pieces.items()))
    return {p.degree: p for p in sorted(pieces, key=lambda p: p.degree)}


def _check_ideal_pieces(pieces: dict):
    degs = list(pieces)
    for a, b in zip(degs, degs[1:]):
        if b == a + 1 and not pieces[a].times_variables().issubset(pieces[b]):
            raise ConsistencyError(f"degree-{a} piece times variables leaves degree-{b} piece")


def minimal_generators(pieces) -> MonomialIdeal:
    """Minimal generators of the ideal whose degree pieces are given.

    ``pieces`` maps degree to :class:`MonomialSpace` (or is an iterable of them).
    Degrees must be consecutive where consistency is checked.
    """
    ps = _as_pieces(pieces)
    if not ps:
        raise ConsistencyError("no pieces given")
    ns = {p.n for p in ps.values()}
    if len(ns) != 1:
        raise DimensionError(f"pieces in different rings: {sorted(ns)}")
    (n,) = ns
    _check_ideal_pieces(ps)
    gens = []
    lower: list = []
    for _e, p in ps.items():
        for m in p.exponents():
            if not any(_divides(g, m) for g in lower):
                gens.append(m)
        lower.extend(p.exponents())
    return MonomialIdeal(n, gens)


def generator_degrees(pieces) -> list:
    """Degrees in which the pieces introduce new minimal generators."""
    return sorted({g.degree for g in minimal_generators(pieces).generators})


class JIdeal:
    """The ideal J(T) in ``n - 1`` variables: pieces and minimal generators."""

    def __init__(self, t: MonomialSpace, pieces: dict, ideal: MonomialIdeal):
        self.t = t
        self.pieces = pieces
        self.ideal = ideal

    @property
    def d(self) -> int:
        return self.t.degree

    @property
    def generators(self) -> list:
        return self.ideal.generators

    def piece(self, e: int) -> MonomialSpace:
        if e in self.pieces:
            return self.pieces[e]
        if e >= self.d:
            return self.ideal.piece(e)
        return MonomialSpace(self.t.n - 1, e)

    def has_generator_in_degree(self, e: int) -> bool:
        return has_generator_in_degree(self.ideal, e)

    def __repr__(self):
        return f"JIdeal(d={self.d}, gens=[{', '.join(map(str, self.generators))}])"


def build_J(t: MonomialSpace, top: int | None = None) -> JIdeal:
    """Assemble J(T): (T : x_n^(d-e)) restricted for 1 <= e < d, then the
    restriction of the ideal generated by T for d <= e <= top.
    """
    if not is_strongly_stable(t):
        raise PreconditionError("J(T) needs a strongly stable T")
    n, d = t.n, t.degree
    if n < 2:
        raise DimensionError("J(T) lives in n - 1 >= 1 variables")
    top = d + 1 if top is None else max(top, d)
    pieces = {}
    for e in range(1, d):
        pieces[e] = t.colon_last(d - e).restrict(1)
    base = t.restrict(1)
    pieces[d] = base
    restricted_ideal = MonomialIdeal(n - 1, base.exponents())
    for e in range(d + 1, top + 1):
        pieces[e] = restricted_ideal.piece(e)
    ideal = minimal_generators(pieces)
    return JIdeal(t, pieces, ideal)


def has_generator_in_degree(j: MonomialIdeal, e: int) -> bool:
    return any(sum(g) == e for g in j.generator_exponents())


def hilbert_function(j: MonomialIdeal, e: int, quotient: bool = False) -> int:
    """Number of degree-``e`` monomials in ``j`` (or outside it when ``quotient``)."""
    if e < 0:
        return 0
    inside = len(j.piece(e))
    return comb(e + j.n - 1, j.n - 1) - inside if quotient else inside


def codimension(j: MonomialIdeal) -> int:
    """Smallest number of variables whose span meets every generator's support."""
    if j.is_zero():
        raise PreconditionError("codimension of the zero ideal is undefined")
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in j.generator_exponents()]
    if any(not s for s in supports):
        raise PreconditionError("codimension of the unit ideal is undefined")
    for k in range(1, j.n + 1):
        for cover in combinations(range(j.n), k):
            c = set(cover)
            if all(s & c for s in supports):
                return k
    raise AssertionError("unreachable: all variables always cover")


def green_predicate(pieces, d: int) -> bool:
    """True when the stable pieces have no minimal generator in degree ``d``."""
    ps = _as_pieces(pieces)
    for p in ps.values():
        if not is_strongly_stable(p):
            raise PreconditionError(f"degree-{p.degree} piece is not strongly stable")
    return not has_generator_in_degree(minimal_generators(ps), d)


def enumerate_stable_spaces(n: int, d: int):
    """Yield every strongly stable MonomialSpace of degree ``d`` in ``n`` variables."""
    mons = monomials_of_degree(n, d)  # revlex-descending, so moves point left
    index = {m: i for i, m in enumerate(mons)}
    required = [[index[mv] for mv in _moves(m)] for m in mons]

    def rec(i, chosen: list):
        if i == len(mons):
            yield MonomialSpace(n, d, chosen)
            return
        yield from rec(i + 1, chosen)
        if all(mons[k] in set(chosen) for k in required[i]):
            yield from rec(i + 1, chosen + [mons[i]])

    yield from rec(0, [])
