"""How a line meets a curve: intersection points, singular flags, multiplicities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..poly import binary_factor_profile
from .plane import PlaneCurve
from .points import ProjectivePoint

__all__ = ["LineIntersection", "LineProfile", "line_profile", "line_basis"]


@dataclass(frozen=True)
class LineIntersection:
    point: ProjectivePoint
    is_singular: bool
    multiplicity: int

    def to_json(self):
        return {"point": self.point.to_json(), "singular": self.is_singular, "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class LineProfile:
    line: ProjectivePoint
    intersections: tuple

    @property
    def total_multiplicity(self) -> int:
        return sum(i.multiplicity for i in self.intersections)

    @property
    def singular_count(self) -> int:
        return sum(i.is_singular for i in self.intersections)

    @property
    def signature(self):
        """Sorted (singular, multiplicity) pairs, a compact summary for case analysis."""
        return sorted((i.is_singular, i.multiplicity) for i in self.intersections)

    def to_json(self):
        return {"line": self.line.to_json(), "intersections": [i.to_json() for i in self.intersections]}


def line_basis(line):
    """Two exact points spanning the line with the given coefficients."""
    k = next(i for i, c in enumerate(line) if c != 0)
    basis = []
    for j in range(3):
        if j == k:
            continue
        v = [Fraction(0)] * 3
        v[j] = line[k]
        v[k] = -line[j]
        basis.append(tuple(v))
    return basis


def line_profile(curve: PlaneCurve, line) -> LineProfile:
    line = line if isinstance(line, ProjectivePoint) else ProjectivePoint(line)
    if not line.exact:
        raise ValueError("line_profile expects exact line coefficients")
    p, q = line_basis(line.coords)
    restricted = curve.f.restrict_to_line(p, q)
    if restricted.is_zero():
        raise ArithmeticError("line lies on the curve (impossible for an irreducible curve of degree >= 2)")
    singular = [s.point for s in curve.singular_points]
    pn, qn = np.array([complex(c) for c in p]), np.array([complex(c) for c in q])
    hits = []
    for (a, b), mult in binary_factor_profile(restricted).factors:
        pt = ProjectivePoint(a * pn + b * qn)
        hits.append(LineIntersection(pt, any(pt.is_close(s) for s in singular), mult))
    hits.sort(key=lambda h: h.point.sort_key())
    return LineProfile(line, tuple(hits))
