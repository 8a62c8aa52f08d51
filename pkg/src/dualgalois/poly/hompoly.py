"""Homogeneous polynomials in X, Y, Z and binary forms in two variables."""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd, lcm

import numpy as np

from .numberfield import NFElement, common_field, format_exact, to_complex, to_mpc
from .univariate import UPoly

__all__ = ["HomPoly", "BinaryForm", "VARS", "var_index", "monomials"]

VARS = ("X", "Y", "Z")


def var_index(var) -> int:
    if isinstance(var, int):
        return var
    return {"X": 0, "Y": 1, "Z": 2, "U": 0, "V": 1, "W": 2}[var.upper()]


def monomials(degree: int):
    """Exponent triples of the given degree, X-power descending then Y-power descending."""
    return [(i, j, degree - i - j) for i in range(degree, -1, -1) for j in range(degree - i, -1, -1)]


class HomPoly:
    """Homogeneous polynomial in three variables with exact coefficients."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms=None):
        self.degree = degree
        clean = {}
        for e, c in (terms or {}).items():
            if c == 0:
                continue
            if sum(e) != degree:
                raise ValueError(f"monomial {e} does not have degree {degree}")
            clean[tuple(e)] = c if isinstance(c, NFElement) else Fraction(c)
        self.terms = clean

    @classmethod
    def var(cls, v) -> "HomPoly":
        e = [0, 0, 0]
        e[var_index(v)] = 1
        return cls(1, {tuple(e): Fraction(1)})

    @classmethod
    def constant(cls, c) -> "HomPoly":
        return cls(0, {(0, 0, 0): c})

    @classmethod
    def linear(cls, coeffs) -> "HomPoly":
        return cls(1, {(1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1], (0, 0, 1): coeffs[2]})

    def is_zero(self) -> bool:
        return not self.terms

    def field(self):
        return common_field(self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("adding homogeneous polynomials of different degree")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return HomPoly(self.degree, terms)

    def __neg__(self):
        return HomPoly(self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HomPoly):
            return HomPoly(self.degree, {e: c * other for e, c in self.terms.items()})
        terms = {}
        for (e1, c1), (e2, c2) in product(self.terms.items(), other.terms.items()):
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            terms[e] = terms.get(e, 0) + c1 * c2
        return HomPoly(self.degree + other.degree, terms)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        result = HomPoly.constant(Fraction(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def derive(self, var) -> "HomPoly":
        v = var_index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[v]:
                ne = list(e)
                ne[v] -= 1
                terms[tuple(ne)] = c * e[v]
        return HomPoly(max(self.degree - 1, 0), terms)

    def gradient(self):
        return [self.derive(v) for v in range(3)]

    def evaluate(self, point):
        """Exact evaluation (or plain complex if the point is numeric)."""
        if any(isinstance(p, (complex, float)) for p in point):
            return self.evaluate_numeric(point)
        total = Fraction(0)
        powers = [_powers(p, self.degree) for p in point]
        for (i, j, k), c in self.terms.items():
            total = total + c * powers[0][i] * powers[1][j] * powers[2][k]
        return total

    def evaluate_numeric(self, point, prec: int = 53):
        pt = [to_mpc(p, prec) if not isinstance(p, complex) or prec > 53 else p for p in point]
        total = 0
        for (i, j, k), c in self.terms.items():
            total = total + to_mpc(c, prec) * pt[0] ** i * pt[1] ** j * pt[2] ** k
        return total

    def numeric(self):
        """(exponents int array, complex coefficient array) for vectorized evaluation."""
        exps = np.array(list(self.terms.keys()), dtype=int).reshape(-1, 3)
        coefs = np.array([to_complex(c) for c in self.terms.values()], dtype=complex)
        return exps, coefs

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at an (m, 3) complex array of points."""
        exps, coefs = self.numeric()
        if len(coefs) == 0:
            return np.zeros(len(points), dtype=complex)
        pts = np.asarray(points, dtype=complex)
        vals = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)
        return vals @ coefs

    def substitute(self, matrix) -> "HomPoly":
        """Return F(M x): old coordinates are M applied to the new ones."""
        forms = [HomPoly.linear(row) for row in matrix]
        pw = [[HomPoly.constant(Fraction(1))] for _ in range(3)]
        for v in range(3):
            for _ in range(self.degree):
                pw[v].append(pw[v][-1] * forms[v])
        out = HomPoly(self.degree, {})
        for (i, j, k), c in self.terms.items():
            out = out + (pw[0][i] * pw[1][j] * pw[2][k]) * c
        return out

    def compose(self, forms) -> "HomPoly":
        """Substitute three homogeneous polynomials of equal degree for X, Y, Z."""
        deg_in = forms[0].degree
        pw = [[HomPoly.constant(Fraction(1))] for _ in range(3)]
        for v in range(3):
            for _ in range(self.degree):
                pw[v].append(pw[v][-1] * forms[v])
        out = HomPoly(self.degree * deg_in, {})
        for (i, j, k), c in self.terms.items():
            out = out + (pw[0][i] * pw[1][j] * pw[2][k]) * c
        return out

    def hessian(self) -> "HomPoly":
        second = [[self.derive(a).derive(b) for b in range(3)] for a in range(3)]
        m = second
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def forms_in(self, var=0):
        """[A_0, ..., A_d] with F = sum_j var^(d-j) A_j, each A_j a BinaryForm in the other two variables."""
        v = var_index(var)
        others = [w for w in range(3) if w != v]
        d = self.degree
        forms = []
        for j in range(d + 1):
            coeffs = [Fraction(0)] * (j + 1)
            for e, c in self.terms.items():
                if e[v] == d - j:
                    coeffs[e[others[0]]] = c
            forms.append(BinaryForm(j, coeffs))
        return forms

    @classmethod
    def from_forms(cls, forms, var=0) -> "HomPoly":
        v = var_index(var)
        others = [w for w in range(3) if w != v]
        d = len(forms) - 1
        terms = {}
        for j, form in enumerate(forms):
            for a, c in enumerate(form.coeffs):
                e = [0, 0, 0]
                e[v] = d - j
                e[others[0]] = a
                e[others[1]] = j - a
                terms[tuple(e)] = c
        return cls(d, terms)

    def fiber_polynomial(self) -> UPoly:
        """F(x, t, 1) as a polynomial in x whose coefficients are polynomials in t."""
        d = self.degree
        rows = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
        for (i, j, _), c in self.terms.items():
            rows[i][j] = c
        return UPoly(UPoly(r) for r in rows)

    def restrict_to_line(self, p, q) -> "BinaryForm":
        """F(s p + u q) as a binary form in (s, u)."""
        d = self.degree
        coords = [UPoly((q[k], p[k])) for k in range(3)]
        total = UPoly()
        pw = [[UPoly((Fraction(1),))] for _ in range(3)]
        for v in range(3):
            for _ in range(d):
                pw[v].append(pw[v][-1] * coords[v])
        for (i, j, k), c in self.terms.items():
            total = total + (pw[0][i] * pw[1][j] * pw[2][k]).scale(c)
        return BinaryForm(d, [total[a] for a in range(d + 1)])

    def content_normalize(self) -> "HomPoly":
        """Rational case: coprime integers, first term positive.  Otherwise first term made 1."""
        if self.is_zero():
            return self
        keys = sorted(self.terms, reverse=True)
        if self.field() is not None:
            lead = self.terms[keys[0]]
            return HomPoly(self.degree, {e: c / lead for e, c in self.terms.items()})
        den = lcm(*(c.denominator for c in self.terms.values()))
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if ints[keys[0]] < 0:
            g = -g
        return HomPoly(self.degree, {e: Fraction(v, g) for e, v in ints.items()})

    def is_rational(self) -> bool:
        return self.field() is None

    def to_str(self, names=VARS) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (n if p == 1 else f"{n}^{p}") for n, p in zip(names, e) if p
            )
            cs = format_exact(c)
            if isinstance(c, NFElement) and not c.is_rational():
                coef = f"({cs})"
                parts.append(f"{coef}*{mono}" if mono else coef)
                continue
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"HomPoly({self.to_str()!r})"


def _powers(x, n):
    out = [Fraction(1)]
    for _ in range(n):
        out.append(out[-1] * x)
    return out


class BinaryForm:
    """G(Y, Z) = sum_i coeffs[i] Y^i Z^(degree - i)."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs):
        cs = list(coeffs)
        if len(cs) != degree + 1:
            raise ValueError("binary form needs degree + 1 coefficients")
        self.degree = degree
        self.coeffs = tuple(c if isinstance(c, NFElement) else Fraction(c) for c in cs)

    @classmethod
    def from_upoly(cls, p: UPoly, degree: int) -> "BinaryForm":
        if p.degree > degree:
            raise ValueError("polynomial degree exceeds form degree")
        return cls(degree, [p[i] for i in range(degree + 1)])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def field(self):
        return common_field(self.coeffs)

    def dehomogenize(self) -> UPoly:
        """G(y, 1)."""
        return UPoly(self.coeffs)

    def z_order(self) -> int:
        """Multiplicity of Z as a factor."""
        return self.degree - self.dehomogenize().degree

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BinaryForm(self.degree, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            return BinaryForm(self.degree, [a * other for a in self.coeffs])
        p = self.dehomogenize() * other.dehomogenize()
        return BinaryForm.from_upoly(p, self.degree + other.degree)

    __rmul__ = __mul__

    def derive_y(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm(0, [0])
        return BinaryForm(self.degree - 1, [i * self.coeffs[i] for i in range(1, self.degree + 1)])

    def derive_z(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm(0, [0])
        return BinaryForm(self.degree - 1, [(self.degree - i) * self.coeffs[i] for i in range(self.degree)])

    def times_z(self) -> "BinaryForm":
        return BinaryForm(self.degree + 1, list(self.coeffs) + [Fraction(0)])

    def times_y(self) -> "BinaryForm":
        return BinaryForm(self.degree + 1, [Fraction(0)] + list(self.coeffs))

    def __call__(self, y, z):
        total = 0
        for i, c in enumerate(self.coeffs):
            if c != 0:
                total = total + c * y ** i * z ** (self.degree - i)
        return total

    def evaluate_numeric(self, y, z):
        total = 0j
        for i, c in enumerate(self.coeffs):
            if c != 0:
                total += to_complex(c) * y ** i * z ** (self.degree - i)
        return total

    def gcd(self, other: "BinaryForm") -> "BinaryForm":
        kz = min(self.z_order(), other.z_order())
        g = self.dehomogenize().gcd(other.dehomogenize())
        return BinaryForm.from_upoly(g, g.degree + kz)

    def exact_div(self, other: "BinaryForm") -> "BinaryForm":
        q = self.dehomogenize().exact_div(other.dehomogenize())
        return BinaryForm.from_upoly(q, self.degree - other.degree)

    def to_hompoly(self, var=0) -> HomPoly:
        """Embed as a ternary form not involving ``var``."""
        zeros = [BinaryForm(j, [0] * (j + 1)) for j in range(self.degree)]
        return HomPoly.from_forms(zeros + [self], var)

    def to_str(self, names=("Y", "Z")) -> str:
        terms = {}
        for i, c in enumerate(self.coeffs):
            terms[(0, i, self.degree - i)] = c
        return HomPoly(self.degree, terms).to_str(("X",) + tuple(names))

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"BinaryForm({self.to_str()!r})"
