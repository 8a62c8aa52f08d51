"""Exact intersection of two plane curves over the rationals.

Points come back with coordinates in Q or in a number field Q(a) (one
embedding per conjugate), together with their intersection multiplicity.
"""
from __future__ import annotations

import random
from fractions import Fraction

from ..poly import HomPoly, NFElement, NumberField, UPoly, factor_rational, resultant_by_evaluation, squarefree_part
from .points import ProjectivePoint, det3, mat_vec

__all__ = ["intersect", "IntersectionError", "frame_with_first_column"]

_FRAME_SEED = 0x5EED


class IntersectionError(ArithmeticError):
    pass


def frame_with_first_column(q):
    """Invertible matrix whose first column is q and whose other columns are unit vectors."""
    k = next(i for i, c in enumerate(q) if c != 0)
    others = [i for i in range(3) if i != k]
    one, zero = Fraction(1), Fraction(0)
    cols = [tuple(q)] + [tuple(one if i == j else zero for i in range(3)) for j in others]
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def _candidate_frames():
    yield [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    rng = random.Random(_FRAME_SEED)
    span = 2
    while True:
        for _ in range(6):
            m = [[Fraction(rng.randint(-span, span)) for _ in range(3)] for _ in range(3)]
            if det3(m) != 0:
                yield m
        span += 1


def _reembed(x, field: NumberField | None):
    if field is None or not isinstance(x, NFElement):
        return x
    return NFElement(field, x.coeffs)


def intersect(a: HomPoly, b: HomPoly, max_frames: int = 40):
    """All points of {a = 0} ∩ {b = 0} with multiplicities, sorted.

    The curves must be rational and share no component.
    """
    if a.is_zero() or b.is_zero():
        raise ValueError("cannot intersect with the zero polynomial")
    if not (a.is_rational() and b.is_rational()):
        raise ValueError("intersect expects rational coefficients")
    da, db = a.degree, b.degree
    if da == 0 or db == 0:
        return []
    frames = _candidate_frames()
    for _ in range(max_frames):
        t = next(frames)
        a2, b2 = a.substitute(t), b.substitute(t)
        if a2.coefficient((da, 0, 0)) == 0 or b2.coefficient((db, 0, 0)) == 0:
            continue
        fa, fb = a2.fiber_polynomial(), b2.fiber_polynomial()
        res = resultant_by_evaluation(fa, fb)
        if res.degree < 0:
            raise IntersectionError("curves share a component")
        if res.degree != da * db:
            continue
        found = _points_from_eliminant(res, fa, fb, t)
        if found is not None:
            return sorted(found, key=lambda pm: pm[0].sort_key())
    raise IntersectionError("no generic projection found")


def _points_from_eliminant(res: UPoly, fa: UPoly, fb: UPoly, t):
    out = []
    for m, e in factor_rational(res):
        if m.degree == 1:
            alpha, field = -m[0], None
        else:
            field = NumberField(m.c, 0)
            alpha = field.gen()
        ga = UPoly([c(alpha) for c in fa.c])
        gb = UPoly([c(alpha) for c in fb.c])
        g = squarefree_part(ga.gcd(gb))
        if g.degree != 1:
            return None
        x = -g[0] / g[1]
        base = mat_vec(t, (x, alpha, Fraction(1)))
        if field is None:
            out.append((ProjectivePoint(base), e))
            continue
        for k in range(m.degree):
            fk = NumberField(m.c, k)
            out.append((ProjectivePoint(tuple(_reembed(c, fk) for c in base)), e))
    return out
