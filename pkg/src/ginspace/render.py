"""Staircase pictures of monomial spaces in one degree."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import GinSpaceError
from .poly import monomials_of_degree
from .stable import MonomialSpace


class UnsupportedFormatError(GinSpaceError, ValueError):
    pass


@dataclass(frozen=True)
class StaircaseDiagram:
    degree: int
    n: int
    present: frozenset  # exponent tuples

    @classmethod
    def of(cls, space: MonomialSpace) -> "StaircaseDiagram":
        return cls(space.degree, space.n, space.exponents())

    def mark(self, exps) -> bool:
        return tuple(exps) in self.present

    def to_dict(self) -> dict:
        present = [list(m) for m in monomials_of_degree(self.n, self.degree) if m in self.present]
        return {"kind": "staircase", "degree": self.degree, "n": self.n, "present": present}


def _ascii(s: StaircaseDiagram) -> str:
    d = s.degree
    lines = []
    # apex x3^d on top, x3-free row at the bottom, x2 exponent growing to the right
    for k in range(d, -1, -1):
        marks = ["x" if s.mark((d - k - j, j, k)) else "o" for j in range(d - k + 1)]
        lines.append(" " * k + " ".join(marks))
    return "\n".join(lines)


def render_staircase(s: StaircaseDiagram, fmt: str = "ascii") -> str:
    if fmt == "json":
        return json.dumps(s.to_dict())
    if fmt != "ascii":
        raise UnsupportedFormatError(f"unknown staircase format {fmt!r}")
    if s.n != 3:
        raise UnsupportedFormatError(f"ascii staircases need 3 variables, not {s.n}")
    return _ascii(s)
