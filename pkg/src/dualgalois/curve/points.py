"""Projective points with exact (rational / number field) or numeric coordinates."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..poly.numberfield import NFElement, common_field, format_exact, to_complex

__all__ = ["ProjectivePoint", "POINT_TOL", "cross", "dot", "mat_vec", "transpose", "mat_inverse", "mat_mul", "det3"]

POINT_TOL = 1e-6


def _is_exact(c) -> bool:
    return isinstance(c, (Fraction, int, NFElement))


class ProjectivePoint:
    """Point of P^2 (or of the dual plane), normalized so the first nonzero coordinate is 1."""

    __slots__ = ("coords", "exact")

    def __init__(self, coords):
        coords = tuple(coords)
        if len(coords) != 3:
            raise ValueError("projective points have three coordinates")
        self.exact = all(_is_exact(c) for c in coords)
        if self.exact:
            coords = tuple(c if isinstance(c, NFElement) else Fraction(c) for c in coords)
            common_field(coords)
            k = next((i for i, c in enumerate(coords) if c != 0), None)
            if k is None:
                raise ValueError("the zero vector is not a projective point")
            lead = coords[k]
            coords = tuple(c / lead for c in coords)
            coords = tuple(c.coeffs[0] if isinstance(c, NFElement) and c.is_rational() else c for c in coords)
        else:
            v = np.array([complex(c) if not isinstance(c, NFElement) else to_complex(c) for c in coords])
            scale = np.max(np.abs(v))
            if scale == 0:
                raise ValueError("the zero vector is not a projective point")
            k = int(np.argmax(np.abs(v) > 1e-12 * scale))
            coords = tuple(complex(c) for c in v / v[k])
        self.coords = coords

    @property
    def field(self):
        return common_field(self.coords) if self.exact else None

    def numeric(self) -> np.ndarray:
        return np.array([to_complex(c) if self.exact else c for c in self.coords], dtype=complex)

    def is_close(self, other: "ProjectivePoint", tol: float = POINT_TOL) -> bool:
        u, v = self.numeric(), other.numeric()
        k = int(np.argmax(np.abs(u)))
        if abs(v[k]) < 1e-14:
            return False
        return bool(np.max(np.abs(u / u[k] - v / v[k])) < tol)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if self.exact and other.exact:
            try:
                common_field(self.coords + other.coords)
            except ValueError:
                return self.is_close(other)
            return self.coords == other.coords
        return self.is_close(other)

    __hash__ = None

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __str__(self):
        if self.exact:
            return "(" + " : ".join(format_exact(c) for c in self.coords) + ")"
        return "(" + " : ".join(_fmt_complex(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"ProjectivePoint{self}"

    def sort_key(self):
        v = self.numeric()
        return tuple(x for c in v for x in (round(c.real, 7), round(c.imag, 7)))

    def to_json(self):
        out = {"numeric": [[float(c.real), float(c.imag)] for c in self.numeric()]}
        if self.exact:
            f = self.field
            out["exact"] = [format_exact(c) for c in self.coords]
            out["field"] = f.to_json() if f is not None else None
        return out


def _fmt_complex(c: complex) -> str:
    re_, im = round(c.real, 10) + 0.0, round(c.imag, 10) + 0.0
    if im == 0:
        return f"{re_:.10g}"
    return f"{re_:.10g}{im:+.10g}i"


# -- exact 3x3 linear algebra -------------------------------------------------

def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(m):
    return dot(m[0], cross(m[1], m[2]))


def transpose(m):
    return [[m[j][i] for j in range(3)] for i in range(3)]


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    bt = transpose(b)
    return [[dot(a[i], bt[j]) for j in range(3)] for i in range(3)]


def mat_inverse(m):
    d = det3(m)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    cols = [cross(m[1], m[2]), cross(m[2], m[0]), cross(m[0], m[1])]
    # inverse = adjugate / det, adjugate columns are the cross products
    return [[cols[j][i] / d for j in range(3)] for i in range(3)]
