"""Dense exact linear algebra over Q (optionally over a prime field).

Reduced echelon forms over Q come from FLINT's ``fmpq_mat``.  The pure Python
streaming reducer below handles the prime-field mode and serves as an
independent reference implementation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import flint

from .errors import DimensionError

DEFAULT_PRIME = 32003
_ZERO = Fraction(0)


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple
    ncols: int

    def __post_init__(self):
        rows = tuple(tuple(v if type(v) is Fraction else Fraction(v) for v in r) for r in self.rows)
        if any(len(r) != self.ncols for r in rows):
            raise DimensionError(f"row length differs from declared width {self.ncols}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ncols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise DimensionError("width of an empty matrix must be given")
            ncols = len(rows[0])
        return cls(tuple(rows), ncols)

    @classmethod
    def zeros(cls, ncols: int) -> "ExactMatrix":
        return cls((), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.ncols != self.ncols:
            raise DimensionError(f"widths {self.ncols} and {other.ncols}")
        return ExactMatrix(self.rows + other.rows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]


def _integer_row(row) -> list:
    """Scale a row of ints and Fractions to integers (no Fraction arithmetic)."""
    row = [v if isinstance(v, (int, Fraction)) else Fraction(v) for v in row]
    den = 1
    for v in row:
        if v and v.denominator != 1:
            den = lcm(den, v.denominator)
    if den == 1:
        return [int(v) for v in row]
    return [v.numerator * (den // v.denominator) if v else 0 for v in row]


def _primitive(row: list) -> list:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if g > 1:
        row = [v // g for v in row]
    lead = next((v for v in row if v), 0)
    if lead < 0:
        row = [-v for v in row]
    return row


def _leading(row) -> int:
    for j, v in enumerate(row):
        if v:
            return j
    return -1


class _EchelonBuilder:
    """Streaming row reduction: feed rows, read back the reduced basis."""

    def __init__(self, ncols: int, modulus: int | None = None):
        self.ncols = ncols
        self.modulus = modulus
        self.basis: dict = {}  # pivot column -> row with that leading column

    def reduce(self, row: list) -> list:
        p = self.modulus
        while True:
            j = _leading(row)
            if j < 0 or j not in self.basis:
                return row
            b = self.basis[j]
            if p is None:
                a, c = b[j], row[j]
                row = _primitive([a * x - c * y for x, y in zip(row, b)])
            else:
                c = row[j]
                row = [(x - c * y) % p for x, y in zip(row, b)]

    def add(self, row) -> bool:
        """Add a row; return True when it enlarged the span."""
        if len(row) != self.ncols:
            raise DimensionError(f"row of length {len(row)} for width {self.ncols}")
        if self.modulus is None:
            r = _primitive(_integer_row(row))
        else:
            r = [_mod(v, self.modulus) for v in row]
        r = self.reduce(r)
        j = _leading(r)
        if j < 0:
            return False
        if self.modulus is not None:
            inv = pow(r[j], -1, self.modulus)
            r = [(v * inv) % self.modulus for v in r]
        self.basis[j] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.basis)

    def result(self):
        pivots = sorted(self.basis)
        rows = {j: list(self.basis[j]) for j in pivots}
        p = self.modulus
        for j in reversed(pivots):
            bj = rows[j]
            for i in pivots:
                if i >= j:
                    break
                r = rows[i]
                c = r[j]
                if not c:
                    continue
                if p is None:
                    a = bj[j]
                    rows[i] = _primitive([a * x - c * y for x, y in zip(r, bj)])
                else:
                    rows[i] = [(x - c * y) % p for x, y in zip(r, bj)]
        out = []
        for j in pivots:
            r = rows[j]
            if p is None:
                lead = r[j]
                out.append(tuple(Fraction(v, lead) if v else _ZERO for v in r))
            else:
                out.append(tuple(r))
        return tuple(out), pivots


def _mod(v, p):
    v = Fraction(v)
    return (v.numerator * pow(v.denominator, -1, p)) % p


def _fmpq(v):
    if type(v) is int:
        return v
    if isinstance(v, Fraction):
        return flint.fmpq(v.numerator, v.denominator)
    return _fmpq(Fraction(v))


def to_flint(rows: Sequence[Sequence], ncols: int):
    """A FLINT ``fmpq_mat`` holding ``rows`` (ints, Fractions or fmpq entries)."""
    return flint.fmpq_mat(len(rows), ncols, [_fmpq(v) for r in rows for v in r])


def from_flint(mat) -> tuple:
    """Rows of a FLINT matrix as tuples of Fractions."""
    ncols = mat.ncols()
    entries = mat.entries()
    return tuple(
        tuple(Fraction(int(x.p), int(x.q)) if x else _ZERO for x in entries[i:i + ncols])
        for i in range(0, len(entries), ncols)
    )


def stack_flint(mats: Sequence, ncols: int):
    """Vertical concatenation of FLINT matrices of width ``ncols``."""
    entries = []
    nrows = 0
    for m in mats:
        entries.extend(m.entries())
        nrows += m.nrows()
    return flint.fmpq_mat(nrows, ncols, entries)


def flint_rows(mat, start: int, stop: int | None = None):
    """Rows ``start:stop`` of a FLINT matrix."""
    ncols = mat.ncols()
    stop = mat.nrows() if stop is None else stop
    return flint.fmpq_mat(stop - start, ncols, mat.entries()[start * ncols:stop * ncols])


def column_map(nsrc: int, ntgt: int, pairs: Iterable[tuple]):
    """0/1 matrix sending source column ``j`` to target column ``t`` for each ``(j, t)``."""
    m = flint.fmpz_mat(nsrc, ntgt)
    for j, t in pairs:
        m[j, t] = 1
    return m


def flint_echelon(mat) -> tuple:
    """Reduced echelon form of a FLINT matrix with zero rows dropped (None if zero), and pivots."""
    ncols = mat.ncols()
    if not mat.nrows() or not ncols:
        return None, []
    reduced, rk = mat.rref()
    if not rk:
        return None, []
    entries = reduced.entries()
    pivots = []
    j = 0
    for i in range(rk):
        base = i * ncols
        while not entries[base + j]:
            j += 1
        pivots.append(j)
        j += 1
    return flint.fmpq_mat(rk, ncols, entries[:rk * ncols]), pivots


def echelon(rows: Sequence[Sequence], ncols: int) -> tuple:
    """Reduced echelon basis of the row span over Q, as Fraction tuples, with pivots."""
    for r in rows:
        if len(r) != ncols:
            raise DimensionError(f"row of length {len(r)} for width {ncols}")
    if not rows or not ncols:
        return (), []
    reduced, pivots = flint_echelon(to_flint(rows, ncols))
    return (from_flint(reduced) if reduced is not None else ()), pivots


def echelon_python(rows: Iterable[Sequence], ncols: int, modulus: int | None = None) -> tuple:
    """Same contract as :func:`echelon`, computed by the pure Python reducer."""
    b = _EchelonBuilder(ncols, modulus)
    for row in rows:
        b.add(row)
    return b.result()


def rref(m: ExactMatrix, modulus: int | None = None):
    """Return the reduced row echelon form of ``m`` (zero rows dropped) and its pivots.

    With ``modulus`` set, reduction happens over the prime field and entries are
    returned as integers in ``[0, modulus)``.
    """
    if modulus is not None:
        return echelon_python(m.rows, m.ncols, modulus)
    rows, pivots = echelon(m.rows, m.ncols)
    return ExactMatrix(rows, m.ncols), pivots


def rank(m: ExactMatrix) -> int:
    if not m.rows or not m.ncols:
        return 0
    return to_flint(m.rows, m.ncols).rank()


def membership(v: Sequence, m: ExactMatrix) -> bool:
    """True iff ``v`` lies in the row space of ``m``."""
    if len(v) != m.ncols:
        raise DimensionError(f"vector of length {len(v)} for width {m.ncols}")
    if not any(v):
        return True
    return rank(m.stack(ExactMatrix((tuple(v),), m.ncols))) == rank(m)


def nullspace(m: ExactMatrix) -> ExactMatrix:
    """Basis (rows) of ``{x : m x = 0}``, in reduced echelon form."""
    r, pivots = rref(m)
    free = [j for j in range(m.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.ncols
        x[f] = Fraction(1)
        for row, pj in zip(r.rows, pivots):
            x[pj] = -row[f]
        basis.append(x)
    if not basis:
        return ExactMatrix.zeros(m.ncols)
    return rref(ExactMatrix.from_rows(basis, m.ncols))[0]


def intersect(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Row space of the result is ``rowspace(a) ∩ rowspace(b)``, in reduced echelon form.

    Uses the left null space of the stacked matrix ``[a; b]``: each relation
    ``alpha a + beta b = 0`` yields the common vector ``alpha a``.
    """
    if a.ncols != b.ncols:
        raise DimensionError(f"widths {a.ncols} and {b.ncols}")
    ra = rref(a)[0]
    rb = rref(b)[0]
    if not ra.rows or not rb.rows:
        return ExactMatrix.zeros(a.ncols)
    stacked = ra.rows + rb.rows
    # columns of the transposed system are the stacked rows
    transposed = ExactMatrix.from_rows(
        [[stacked[i][j] for i in range(len(stacked))] for j in range(a.ncols)], len(stacked)
    )
    rel = nullspace(transposed)
    k = ra.nrows
    out = []
    for coeffs in rel.rows:
        vec = [Fraction(0)] * a.ncols
        for c, row in zip(coeffs[:k], ra.rows):
            if c:
                vec = [x + c * y for x, y in zip(vec, row)]
        out.append(vec)
    if not out:
        return ExactMatrix.zeros(a.ncols)
    return rref(ExactMatrix.from_rows(out, a.ncols))[0]


def span_sum(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return rref(a.stack(b))[0]
