"""Generic initial spaces by random coordinate changes with agreement checking."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .errors import NonGenericSampleError, RandomnessError
from .forms import FormSpace, ideal_pieces, initial_space, initial_space_mod, substitute_space
from .poly import LinearChange, Polynomial, determinant, monomials_of_degree, substitute_linear
from .stable import MonomialSpace, is_strongly_stable

DEFAULT_RANGE = 1000
DEFAULT_TRIALS = 3
DEFAULT_SEED = 0


def random_change(n: int, seed: int, range_: int = DEFAULT_RANGE, attempts: int = 100) -> LinearChange:
    """Matrix with integer entries uniform in ``[-range_, range_]``, resampled until invertible."""
    if range_ < 2:
        raise ValueError("coefficient range must be at least 2")
    rng = random.Random(seed)
    for _ in range(attempts):
        m = [[rng.randint(-range_, range_) for _ in range(n)] for _ in range(n)]
        if determinant(m):
            return LinearChange(m)
    raise RandomnessError(f"no invertible {n}x{n} matrix in {attempts} draws")


def random_form(n: int, d: int, rng: random.Random, range_: int = DEFAULT_RANGE) -> Polynomial:
    """A dense form with every coefficient uniform in ``[-range_, range_]``, never zero."""
    while True:
        terms = {m: rng.randint(-range_, range_) for m in monomials_of_degree(n, d)}
        p = Polynomial(n, terms, degree=d)
        if not p.is_zero():
            return p


def trial_seeds(seed: int, count: int, offset: int = 0) -> list:
    rng = random.Random(seed)
    seeds = [rng.getrandbits(63) for _ in range(offset + count)]
    return seeds[offset:]


@dataclass
class GinResult:
    monomials: MonomialSpace
    trials: int
    agreed: bool
    seed: int
    discarded: int = 0
    staircases: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kind": "gin",
            "n": self.monomials.n,
            "degree": self.monomials.degree,
            "monomials": [str(m) for m in self.monomials],
            "trials": self.trials,
            "agreed": self.agreed,
            "seed": self.seed,
            "discarded": self.discarded,
        }


def _initial_after(v: FormSpace, g: LinearChange, modulus: int | None) -> MonomialSpace:
    if modulus is None:
        return initial_space(substitute_space(v, g))
    images = [substitute_linear(p, g) for p in v.polynomials()]
    return initial_space_mod(images, v.n, v.degree, modulus)


def gin(
    v: FormSpace,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    range_: int = DEFAULT_RANGE,
    retries: int = 2,
    modulus: int | None = None,
    strict: bool = True,
) -> GinResult:
    """Initial space of ``g.V`` for ``trials`` independent random ``g``.

    Trials whose result is not strongly stable are discarded.  If the retained
    trials disagree, a fresh batch is drawn (up to ``retries`` extra batches).
    With ``strict`` the final failure raises :class:`NonGenericSampleError`;
    otherwise the most frequent staircase is returned with ``agreed=False``.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    seen: Counter = Counter()
    discarded = 0
    for batch in range(retries + 1):
        results = []
        for s in trial_seeds(seed, trials, offset=batch * trials):
            t = _initial_after(v, random_change(v.n, s, range_), modulus)
            seen[t] += 1
            if is_strongly_stable(t):
                results.append(t)
            else:
                discarded += 1
        if results and all(r == results[0] for r in results):
            return GinResult(results[0], trials, True, seed, discarded, [results[0]])
    distinct = list(seen)
    if strict:
        raise NonGenericSampleError(
            f"{len(distinct)} distinct initial spaces over {retries + 1} batches (seed {seed})",
            distinct,
        )
    best, _ = seen.most_common(1)[0]
    return GinResult(best, trials, False, seed, discarded, distinct)


def generify(v: FormSpace, seed: int = DEFAULT_SEED, range_: int = DEFAULT_RANGE) -> FormSpace:
    """``g.V`` for one random change ``g``: places ``V`` in general coordinates."""
    return substitute_space(v, random_change(v.n, seed, range_))


def gin_pieces(
    generators,
    n: int,
    top: int,
    trials: int = 2,
    seed: int = DEFAULT_SEED,
    range_: int = DEFAULT_RANGE,
    retries: int = 2,
) -> dict:
    """Pieces ``0..top`` of the generic initial ideal of the ideal generated by ``generators``.

    Same protocol as :func:`gin`: a trial whose pieces are not all strongly
    stable is discarded, and retained trials must agree, else a fresh batch is
    drawn.  Raises :class:`NonGenericSampleError` when no batch agrees.
    """
    gens = [f for f in generators if not f.is_zero()]
    seen = []
    for batch in range(retries + 1):
        results = []
        for s in trial_seeds(seed, trials, offset=batch * trials):
            g = random_change(n, s, range_)
            moved = [substitute_linear(f, g) for f in gens]
            pieces = {e: initial_space(p) for e, p in ideal_pieces(moved, n, top).items()}
            if pieces not in seen:
                seen.append(pieces)
            if all(is_strongly_stable(p) for p in pieces.values()):
                results.append(pieces)
        if results and all(r == results[0] for r in results):
            return results[0]
    raise NonGenericSampleError(
        f"{len(seen)} distinct initial ideals over {retries + 1} batches (seed {seed})",
        [p[top] for p in seen],
    )
