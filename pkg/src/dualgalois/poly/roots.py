"""Complex roots of exact polynomials; multiplicities always come from exact algebra."""
from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .aberth import aberth, backward_residual
from .hompoly import BinaryForm
from .numberfield import to_mpc
from .univariate import UPoly, squarefree_decomposition

__all__ = [
    "PRECISION_LADDER",
    "RootFindingError",
    "complex_roots",
    "numeric_roots",
    "FactorProfile",
    "binary_factor_profile",
]

PRECISION_LADDER = (53, 212, 848)
SEPARATION_TOL = 1e-8


class RootFindingError(ArithmeticError):
    def __init__(self, message, residual=None):
        super().__init__(message if residual is None else f"{message} (achieved residual {residual:.3g})")
        self.residual = residual


def _min_separation(roots):
    best = float("inf")
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            d = abs(complex(roots[i]) - complex(roots[j])) / max(1.0, abs(complex(roots[i])))
            best = min(best, d)
    return best


def numeric_roots(coeffs, precision: int = 53, separation: float = SEPARATION_TOL):
    """Roots of a squarefree numeric polynomial, escalating precision until separated."""
    last = None
    for prec in [p for p in PRECISION_LADDER if p >= precision] or [precision]:
        with mpmath.workprec(max(prec, 53)):
            cs = [to_mpc(c, prec) if not isinstance(c, (complex, mpmath.mpc)) else c for c in coeffs]
            roots, ok = aberth(cs, prec)
            res = max((backward_residual(cs, z) for z in roots), default=0.0)
        last = res
        tol = 1e-10 if prec <= 53 else 2.0 ** (-prec // 2)
        if ok and res < tol and _min_separation(roots) > separation:
            return [complex(z) for z in roots], prec
    raise RootFindingError("root isolation failed on the precision ladder", last)


def complex_roots(f: UPoly, precision: int = 53):
    """[(root, multiplicity)] for an exact polynomial of degree >= 1.

    The squarefree decomposition is exact; only the squarefree factors are
    solved numerically.
    """
    if f.degree < 1:
        raise ValueError("complex_roots needs degree >= 1")
    out = []
    for factor, mult in squarefree_decomposition(f):
        roots, _ = numeric_roots(list(factor.c), precision)
        out.extend((z, mult) for z in roots)
    zs = [z for z, _ in out]
    if _min_separation(zs) <= SEPARATION_TOL and precision < PRECISION_LADDER[-1]:
        # roots of different squarefree factors collided: refine
        return complex_roots(f, next(p for p in PRECISION_LADDER if p > precision))
    return sorted(out, key=lambda rm: (round(rm[0].real, 8), round(rm[0].imag, 8)))


@dataclass(frozen=True)
class FactorProfile:
    """Distinct projective roots (a:b) of a binary form with exact multiplicities."""

    factors: tuple  # ((complex a, complex b), multiplicity) pairs
    degree: int

    @property
    def distinct_count(self) -> int:
        return len(self.factors)

    @property
    def multiplicities(self):
        return sorted(m for _, m in self.factors)


def binary_factor_profile(g: BinaryForm, precision: int = 53) -> FactorProfile:
    if g.is_zero():
        raise ValueError("factor profile of the zero form")
    factors = []
    kz = g.z_order()
    if kz:
        factors.append(((1 + 0j, 0j), kz))
    h = g.dehomogenize()
    if h.degree >= 1:
        for z, m in complex_roots(h, precision):
            factors.append(((complex(z), 1 + 0j), m))
    return FactorProfile(tuple(factors), g.degree)
