"""Dual curve by sampling, null-space interpolation and exact rationalization."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import mpmath
import numpy as np

from ..poly import HomPoly, monomials
from ..poly.aberth import aberth
from .plane import PlaneCurve
from .points import det3

__all__ = ["DualCurveResult", "compute_dual", "dual_curve", "sample_curve_points", "divides_exactly"]

REFINE_PREC = 256
_NULL_TOL = 1e-9
DUAL_SEED = 20240917


@dataclass
class DualCurveResult:
    degree: int
    polynomial: HomPoly | None
    exact: bool
    method: str
    residual: float
    numeric_coefficients: list = field(default_factory=list, repr=False)

    @property
    def curve(self) -> PlaneCurve | None:
        if self.polynomial is None:
            return None
        return PlaneCurve(self.polynomial, check_irreducible=False)


class _Pencil:
    """Lines through a rational point off the curve, used to slice out sample points."""

    def __init__(self, f: HomPoly, rng: random.Random):
        while True:
            o = [Fraction(rng.randint(-3, 3)) for _ in range(3)]
            if any(o) and f.evaluate(o) != 0:
                break
        while True:
            m = [[o[i]] + [Fraction(rng.randint(-3, 3)) for _ in range(2)] for i in range(3)]
            if det3(m) != 0:
                break
        self.frame = m
        fiber = f.substitute(m).fiber_polynomial()
        self.fiber = [list(c.c) for c in fiber.c]

    def points(self, s, prec: int = 53):
        """Curve points on the pencil line with parameter s."""
        if prec <= 53:
            coeffs = [complex(sum(float(a) * s**j for j, a in enumerate(row))) for row in self.fiber]
            roots, _ = aberth(coeffs, 53)
            m = np.array(self.frame, dtype=float)
            return [m @ np.array([x, s, 1.0]) for x in roots]
        with mpmath.workprec(prec):
            coeffs = [sum((_mpf(a) * s**j for j, a in enumerate(row)), mpmath.mpc(0)) for row in self.fiber]
            roots, _ = aberth(coeffs, prec)
            out = []
            for x in roots:
                v = (x, s, mpmath.mpc(1))
                out.append([sum(_mpf(self.frame[i][k]) * v[k] for k in range(3)) for i in range(3)])
            return out


def _mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def sample_curve_points(c: PlaneCurve, count: int, seed: int = DUAL_SEED) -> np.ndarray:
    """At least ``count`` numeric points of c, as rows of a complex array."""
    rng = random.Random(seed)
    pencil = _Pencil(c.f, rng)
    pts = []
    while len(pts) < count:
        s = complex(rng.gauss(0, 1), rng.gauss(0, 1))
        pts.extend(pencil.points(s))
    return np.array(pts[:count])


def _gradient_images(c: PlaneCurve, pts: np.ndarray) -> np.ndarray:
    grads = np.stack([g.evaluate_many(pts) for g in c.gradient], axis=1)
    return grads / np.linalg.norm(grads, axis=1)[:, None]


def _monomial_matrix(pts: np.ndarray, degree: int):
    exps = np.array(monomials(degree), dtype=int)
    return np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)


def _null_data(duals: np.ndarray, degree: int):
    v = _monomial_matrix(duals, degree)
    _, s, vh = np.linalg.svd(v)
    rel = s / s[0]
    nullity = int(np.sum(rel < _NULL_TOL)) + max(0, v.shape[1] - len(s))
    return nullity, vh[-1].conj()


def _hp_eval(terms, pt):
    return sum((c * pt[0] ** i * pt[1] ** j * pt[2] ** k for (i, j, k), c in terms), mpmath.mpc(0))


def _refine(c: PlaneCurve, degree: int, pivot: int, rng: random.Random):
    """Solve for the dual coefficients at high precision with coefficient ``pivot`` fixed to 1."""
    mons = monomials(degree)
    need = len(mons) - 1
    pencil = _Pencil(c.f, rng)
    with mpmath.workprec(REFINE_PREC):
        grad_terms = [[(e, _mpf(q)) for e, q in g.terms.items()] for g in c.gradient]
        rows = []
        while len(rows) < need + 4:
            s = mpmath.mpc(_mpf(Fraction(rng.randint(-50, 50), 17)), _mpf(Fraction(rng.randint(-50, 50), 19)))
            for p in pencil.points(s, REFINE_PREC):
                g = [_hp_eval(t, p) for t in grad_terms]
                scale = max(abs(x) for x in g)
                g = [x / scale for x in g]
                rows.append([g[0] ** i * g[1] ** j * g[2] ** k for (i, j, k) in mons])
        cols = [k for k in range(len(mons)) if k != pivot]
        a = mpmath.matrix([[r[k] for k in cols] for r in rows[:need]])
        b = mpmath.matrix([-r[pivot] for r in rows[:need]])
        sol = mpmath.lu_solve(a, b)
        coeffs = [None] * len(mons)
        coeffs[pivot] = mpmath.mpc(1)
        for idx, k in enumerate(cols):
            coeffs[k] = sol[idx]
        check = max(abs(sum(r[k] * coeffs[k] for k in range(len(mons)))) for r in rows[need:])
        norm = max(abs(x) for x in coeffs)
        return coeffs, float(check / norm)


def _rationalize(coeffs, degree: int):
    with mpmath.workprec(REFINE_PREC):
        return _rationalize_at_precision(coeffs, degree)


def _rationalize_at_precision(coeffs, degree: int):
    mons = monomials(degree)
    terms = {}
    for e, z in zip(mons, coeffs):
        if abs(z.imag) > 1e-40 * max(1, abs(z.real)):
            return None
        q = Fraction(mpmath.nstr(z.real, 70, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)).limit_denominator(10**24)
        if abs(_mpf(q) - z.real) > mpmath.mpf(10) ** -50 * max(1, abs(z.real)):
            return None
        if q != 0:
            terms[e] = q
    den = lcm(*(q.denominator for q in terms.values()))
    ints = {e: int(q * den) for e, q in terms.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return HomPoly(degree, {e: Fraction(v, g) for e, v in ints.items()}).content_normalize()


def divides_exactly(f: HomPoly, g: HomPoly) -> bool:
    """True when f divides g in Q[X, Y, Z] (f rational and not divisible by Z)."""
    if g.is_zero():
        return True
    rng = random.Random(7)
    m = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    while f.substitute(m).coefficient((f.degree, 0, 0)) == 0:
        m = [[Fraction(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
        if det3(m) == 0:
            m = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    _, r = g.substitute(m).fiber_polynomial().divmod(f.substitute(m).fiber_polynomial())
    return r.degree < 0


def _numeric_residual(c: PlaneCurve, poly_coeffs, degree: int, rng_seed: int) -> float:
    pts = sample_curve_points(c, 200, seed=rng_seed + 1)
    duals = _gradient_images(c, pts)
    vals = _monomial_matrix(duals, degree) @ np.asarray(poly_coeffs, dtype=complex)
    return float(np.max(np.abs(vals)) / np.max(np.abs(poly_coeffs)))


def compute_dual(c: PlaneCurve, seed: int = DUAL_SEED) -> DualCurveResult:
    d = c.degree
    ceiling = d * (d - 1)
    est = c.dual_degree_estimate
    count = (ceiling + 1) * (ceiling + 2) // 2 + 20
    duals = _gradient_images(c, sample_curve_points(c, count, seed))

    degree, method = None, None
    if est is not None and 2 <= est <= ceiling:
        if _null_data(duals, est)[0] == 1 and (est == 2 or _null_data(duals, est - 1)[0] == 0):
            degree, method = est, "plucker-estimate"
    if degree is None:
        for k in range(2, ceiling + 1):
            if _null_data(duals, k)[0] >= 1:
                degree, method = k, "degree-scan"
                break
    if degree is None:
        raise ArithmeticError("no dual curve found up to the maximal class")

    _, v = _null_data(duals, degree)
    pivot = int(np.argmax(np.abs(v)))
    coeffs, _ = _refine(c, degree, pivot, random.Random(seed + 2))
    poly = _rationalize(coeffs, degree)
    numeric = [complex(z) for z in coeffs]
    if poly is not None:
        composed = poly.compose(c.gradient)
        if divides_exactly(c.f, composed):
            mons = monomials(degree)
            exact_coeffs = [float(poly.coefficient(e)) for e in mons]
            res = _numeric_residual(c, exact_coeffs, degree, seed)
            return DualCurveResult(degree, poly, True, method, res, numeric)
    res = _numeric_residual(c, numeric, degree, seed)
    return DualCurveResult(degree, None, False, method, res, numeric)


def dual_curve(c: PlaneCurve) -> PlaneCurve:
    result = c.dual
    if result.curve is None:
        raise ArithmeticError("dual curve could not be verified exactly")
    return result.curve
