"""Aberth-Ehrlich simultaneous root iteration on numeric coefficient lists.

Coefficients are ordered from the constant term upward.  Working precision
53 uses Python ``complex``; anything larger runs inside an mpmath context.
"""
from __future__ import annotations

import cmath
import math

import mpmath

__all__ = ["aberth", "backward_residual", "horner"]


def horner(coeffs, z):
    acc = coeffs[-1] * 0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _horner_with_derivative(coeffs, z):
    p = coeffs[-1]
    dp = p * 0
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def backward_residual(coeffs, z):
    """|p(z)| divided by sum |a_k| |z|^k (a relative backward error)."""
    num = abs(horner(coeffs, z))
    az = abs(z)
    den = horner([abs(c) for c in coeffs], az)
    if den == 0:
        return 0.0
    return float(num / den)


def _initial_guesses(coeffs, n, to_complex, pi, expo):
    lead = abs(coeffs[n])
    radius = 0.0
    for k in range(n):
        a = abs(coeffs[k])
        if a:
            radius = max(radius, float(a / lead) ** (1.0 / (n - k)))
    radius = 2.0 * radius if radius else 1.0
    # offset angle avoids symmetric starting configurations
    return [to_complex(radius) * expo(2j * pi * k / n + 0.4j) for k in range(n)]


def aberth(coeffs, prec: int = 53, maxiter: int = 1000):
    """Return (roots, converged) for the polynomial with the given coefficients.

    Leading coefficient must be nonzero.  Roots are returned as ``complex``
    when ``prec <= 53`` and as ``mpmath.mpc`` otherwise.
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("aberth needs a polynomial of degree >= 1")
    if prec <= 53:
        return _aberth_loop([complex(c) for c in coeffs], n, 2.0 ** -52, complex, cmath.pi, cmath.exp, maxiter)
    with mpmath.workprec(prec):
        cs = [mpmath.mpc(c) for c in coeffs]
        return _aberth_loop(cs, n, mpmath.mpf(2) ** (-prec + 1), mpmath.mpc, mpmath.pi, mpmath.exp, maxiter)


def _aberth_loop(coeffs, n, eps, to_complex, pi, expo, maxiter):
    lead = coeffs[n]
    coeffs = [c / lead for c in coeffs]
    if n == 1:
        return [-coeffs[0]], True
    z = _initial_guesses(coeffs, n, to_complex, pi, expo)
    done = [False] * n
    converged = False
    for _ in range(maxiter):
        moved = False
        for i in range(n):
            if done[i]:
                continue
            zi = z[i]
            p, dp = _horner_with_derivative(coeffs, zi)
            if p == 0:
                done[i] = True
                continue
            ratio = p / dp if dp != 0 else p
            s = 0
            for j in range(n):
                if j != i:
                    diff = zi - z[j]
                    if diff != 0:
                        s += 1 / diff
            denom = 1 - ratio * s
            delta = ratio / denom if denom != 0 else ratio
            z[i] = zi - delta
            if abs(delta) <= 4 * eps * max(abs(z[i]), eps):
                done[i] = True
            else:
                moved = True
        if not moved:
            converged = True
            break
    # a couple of plain Newton polishing steps
    for i in range(n):
        for _ in range(2):
            p, dp = _horner_with_derivative(coeffs, z[i])
            if dp == 0:
                break
            z[i] = z[i] - p / dp
    if not converged:
        converged = all(backward_residual(coeffs, zi) < 1e3 * float(eps) * n for zi in z)
    if math.isnan(abs(complex(sum(z)))):
        converged = False
    return z, converged
