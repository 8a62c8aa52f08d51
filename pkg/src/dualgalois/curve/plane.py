"""Plane curve model: singularities, flexes, tangent lines and intersection multiplicities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from ..poly import HomPoly, NFElement, UPoly, common_field, to_complex
from .intersect import frame_with_first_column, intersect
from .points import ProjectivePoint, cross

__all__ = [
    "PlaneCurve",
    "SingularPoint",
    "ReducibleCurveError",
    "NotOnCurveError",
    "SingularPointError",
    "singular_locus",
    "multiplicity_at",
    "intersection_multiplicity",
    "tangent_line",
    "dual_point",
    "flexes",
    "local_forms",
]

NODE, CUSP, ORDINARY, UNCLASSIFIED = "node", "cusp", "ordinary-m-fold", "unclassified"


class ReducibleCurveError(ValueError):
    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class NotOnCurveError(ValueError):
    pass


class SingularPointError(ValueError):
    pass


@dataclass(frozen=True)
class SingularPoint:
    point: ProjectivePoint
    multiplicity: int
    kind: str
    delta: int | None = None
    # drop of the class (dual degree) contributed by this point
    class_drop: int | None = None

    def to_json(self):
        return {
            "point": self.point.to_json(),
            "multiplicity": self.multiplicity,
            "classification": self.kind,
            "delta": self.delta,
        }


def _rational_factors(f: HomPoly):
    import sympy

    x, y, z = sympy.symbols("X Y Z")
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * x**i * y**j * z**k for (i, j, k), c in f.terms.items()
    )
    _, facs = sympy.factor_list(expr, x, y, z)
    return [(str(p), int(e)) for p, e in facs]


def _exact_point(q) -> ProjectivePoint:
    q = q if isinstance(q, ProjectivePoint) else ProjectivePoint(q)
    if not q.exact:
        raise ValueError("an exact point is required here")
    return q


def local_forms(f: HomPoly, q: ProjectivePoint):
    """Forms A_0..A_d with f(frame x) = sum X^(d-j) A_j(Y, Z), the frame sending (1:0:0) to q."""
    return f.substitute(frame_with_first_column(q.coords)).forms_in(0)


def _classify(forms) -> tuple[int, str, int | None, int | None]:
    m = next(j for j, a in enumerate(forms) if not a.is_zero())
    cone = forms[m]
    if m == 2:
        c0, c1, c2 = cone.coeffs
        if c1 * c1 - 4 * c0 * c2 != 0:
            return m, NODE, 1, 2
        direction = (-c1 / (2 * c2), Fraction(1)) if c2 != 0 else (Fraction(1), Fraction(0))
        if len(forms) > 3 and forms[3](*direction) != 0:
            return m, CUSP, 1, 3
        return m, UNCLASSIFIED, None, None
    h = cone.dehomogenize()
    if cone.z_order() <= 1 and h.gcd(h.derivative()).degree == 0:
        return m, ORDINARY, m * (m - 1) // 2, m * (m - 1)
    return m, UNCLASSIFIED, None, None


class PlaneCurve:
    """Irreducible plane curve of degree >= 3 with rational coefficients."""

    def __init__(self, f: HomPoly, check_irreducible: bool = True, name: str | None = None):
        if not f.is_rational():
            raise ValueError("curves must have rational coefficients")
        if f.degree < 3:
            raise ValueError(f"degree {f.degree} curves are out of scope (need d >= 3)")
        if f.is_zero():
            raise ValueError("zero polynomial does not define a curve")
        self.f = f.content_normalize()
        self.name = name
        if check_irreducible:
            facs = _rational_factors(self.f)
            if len(facs) != 1 or facs[0][1] != 1:
                raise ReducibleCurveError(f"reducible over Q: factor {facs[0][0]}", facs[0][0])

    @property
    def degree(self) -> int:
        return self.f.degree

    def __repr__(self):
        return f"PlaneCurve({self.f})"

    def __eq__(self, other):
        return isinstance(other, PlaneCurve) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    @cached_property
    def gradient(self):
        return self.f.gradient()

    @cached_property
    def singular_points(self) -> list[SingularPoint]:
        fx, fy, fz = self.gradient
        polar = fx + fy * Fraction(3) + fz * Fraction(7)
        out = []
        for q, _ in intersect(self.f, polar):
            if all(g.evaluate(q.coords) == 0 for g in (fx, fy, fz)):
                m, kind, delta, drop = _classify(local_forms(self.f, q))
                out.append(SingularPoint(q, m, kind, delta, drop))
        return out

    @cached_property
    def genus(self) -> int | None:
        sing = self.singular_points
        if any(s.kind == UNCLASSIFIED for s in sing):
            return None
        d = self.degree
        g = (d - 1) * (d - 2) // 2 - sum(s.delta for s in sing)
        if g < 0:
            raise ReducibleCurveError("negative genus: curve is reducible over C")
        return g

    @cached_property
    def dual_degree_estimate(self) -> int | None:
        sing = self.singular_points
        if any(s.kind == UNCLASSIFIED for s in sing):
            return None
        d = self.degree
        return d * (d - 1) - sum(s.class_drop for s in sing)

    @cached_property
    def hessian(self) -> HomPoly:
        return self.f.hessian()

    @cached_property
    def flexes(self) -> list[ProjectivePoint]:
        h = self.hessian
        if h.is_zero():
            return []
        out = []
        for q, _ in intersect(self.f, h):
            if any(g.evaluate(q.coords) != 0 for g in self.gradient):
                out.append(q)
        return out

    def is_singular_at(self, q) -> bool:
        q = _exact_point(q)
        return all(g.evaluate(q.coords) == 0 for g in self.gradient)

    def contains(self, q, tol: float = 1e-9) -> bool:
        q = q if isinstance(q, ProjectivePoint) else ProjectivePoint(q)
        if q.exact:
            return self.f.evaluate(q.coords) == 0
        v = q.numeric()
        return abs(self.f.evaluate(tuple(v))) < tol * max(1.0, _coef_norm(self.f))

    @cached_property
    def dual(self):
        from .dual import compute_dual

        return compute_dual(self)

    def report(self) -> dict:
        g = self.genus
        dual = self.dual
        return {
            "curve": str(self.f),
            "degree": self.degree,
            "smooth": not self.singular_points,
            "singularities": [s.to_json() for s in self.singular_points],
            "flexes": [q.to_json() for q in self.flexes],
            "genus": g,
            "dual_degree": dual.degree,
            "dual_degree_estimate": self.dual_degree_estimate,
            "dual_curve": str(dual.curve.f) if dual.curve is not None else None,
            "dual_exact": dual.exact,
        }


def _coef_norm(f: HomPoly) -> float:
    return sum(abs(to_complex(c)) for c in f.terms.values())


def singular_locus(c: PlaneCurve):
    return [(s.point, s.multiplicity, s.kind) for s in c.singular_points]


def flexes(c: PlaneCurve):
    return list(c.flexes)


def multiplicity_at(c: PlaneCurve, q) -> int:
    q = _exact_point(q)
    if c.f.evaluate(q.coords) != 0:
        return 0
    return next(j for j, a in enumerate(local_forms(c.f, q)) if not a.is_zero())


def _second_point_on_line(line, q):
    for k in range(3):
        e = tuple(Fraction(int(i == k)) for i in range(3))
        r = cross(line, e)
        if any(x != 0 for x in r) and any(x != 0 for x in cross(r, q)):
            return r
    raise ValueError("degenerate line")


def intersection_multiplicity(c: PlaneCurve, line, q) -> int:
    """Order of vanishing at q of f restricted to the line."""
    line, q = _exact_point(line), _exact_point(q)
    common_field(line.coords + q.coords)
    if sum(a * b for a, b in zip(line.coords, q.coords)) != 0:
        raise NotOnCurveError(f"{q} does not lie on the line {line}")
    if c.f.evaluate(q.coords) != 0:
        raise NotOnCurveError(f"{q} does not lie on the curve")
    r = _second_point_on_line(line.coords, q.coords)
    restricted = c.f.restrict_to_line(r, q.coords)
    if restricted.is_zero():
        raise ValueError("line is a component of the curve")
    return next(k for k, a in enumerate(restricted.coeffs) if a != 0)


def tangent_line(c: PlaneCurve, q) -> ProjectivePoint:
    q = q if isinstance(q, ProjectivePoint) else ProjectivePoint(q)
    if q.exact:
        if c.f.evaluate(q.coords) != 0:
            raise NotOnCurveError(f"{q} is not on the curve")
        grad = tuple(g.evaluate(q.coords) for g in c.gradient)
        if all(x == 0 for x in grad):
            raise SingularPointError(f"{q} is a singular point")
        return ProjectivePoint(grad)
    v = tuple(q.numeric())
    scale = _coef_norm(c.f)
    if abs(c.f.evaluate(v)) > 1e-8 * scale:
        raise NotOnCurveError(f"{q} is not on the curve")
    grad = np.array([g.evaluate(v) for g in c.gradient])
    if np.max(np.abs(grad)) < 1e-10 * scale:
        raise SingularPointError(f"{q} is numerically singular")
    return ProjectivePoint(grad)


dual_point = tangent_line
