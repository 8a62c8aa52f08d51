"""Dense univariate polynomials over exact coefficient rings.

Coefficients may be ``Fraction``, ``NFElement`` or (for bivariate work) nested
``UPoly`` objects.  Storage is constant term first.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .numberfield import NFElement, common_field

__all__ = [
    "UPoly",
    "sylvester_matrix",
    "bareiss_det",
    "field_det",
    "resultant",
    "resultant_by_evaluation",
    "discriminant",
    "squarefree_decomposition",
    "squarefree_part",
    "interpolate",
    "factor_rational",
]


def _zero_like(x):
    return UPoly() if isinstance(x, UPoly) else Fraction(0)


def _div_exact(a, b):
    if isinstance(a, UPoly):
        return a.exact_div(b)
    return a / b


class UPoly:
    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls):
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1]

    def __getitem__(self, k):
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def __len__(self):
        return len(self.c)

    def __iter__(self):
        return iter(self.c)

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.c == other.c
        if not self.c:
            return other == 0
        return len(self.c) == 1 and self.c[0] == other

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"UPoly({list(map(str, self.c))})"

    @staticmethod
    def _lift(other):
        return other if isinstance(other, UPoly) else UPoly((other,))

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.c), len(o.c))
        return UPoly(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-a for a in self.c)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly(a * other for a in self.c)
        if not self.c or not other.c:
            return UPoly()
        out = [_zero_like(self.c[0])] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                if b == 0:
                    continue
                out[i + j] = out[i + j] + a * b
        return UPoly(out)

    def __rmul__(self, other):
        return UPoly(other * a for a in self.c)

    def __pow__(self, k: int):
        result = UPoly((Fraction(1),))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, s):
        return UPoly(a * s for a in self.c)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self):
        return UPoly(k * self.c[k] for k in range(1, len(self.c)))

    def shift_degree(self, k: int):
        return UPoly((Fraction(0),) * k + self.c)

    def map(self, fn):
        return UPoly(fn(a) for a in self.c)

    def field(self):
        return common_field(self.c)

    def divmod(self, other: "UPoly"):
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(rem) - len(other.c)
        if dq < 0:
            return UPoly(), self
        q = [_zero_like(other.lc)] * (dq + 1)
        lc = other.lc
        for k in range(dq, -1, -1):
            top = rem[k + len(other.c) - 1]
            if top == 0:
                continue
            coef = _div_exact(top, lc)
            q[k] = coef
            for j, b in enumerate(other.c):
                rem[k + j] = rem[k + j] - coef * b
        return UPoly(q), UPoly(rem[: len(other.c) - 1])

    def __floordiv__(self, other):
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(self._lift(other))[1]

    def exact_div(self, other):
        if not isinstance(other, UPoly):
            return UPoly(_div_exact(a, other) for a in self.c)
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        if not self.c:
            return self
        inv = Fraction(1) / self.lc
        return UPoly(a * inv for a in self.c)

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def valuation(self) -> int:
        for k, a in enumerate(self.c):
            if a != 0:
                return k
        return -1

    def is_rational(self) -> bool:
        return all(not isinstance(a, NFElement) or a.is_rational() for a in self.c)

    def to_rational(self) -> "UPoly":
        return UPoly(a.coeffs[0] if isinstance(a, NFElement) else Fraction(a) for a in self.c)


def sylvester_matrix(f: UPoly, g: UPoly, deg_f: int | None = None, deg_g: int | None = None):
    """Sylvester matrix with rows of f-coefficients then g-coefficients (highest power first)."""
    m = f.degree if deg_f is None else deg_f
    n = g.degree if deg_g is None else deg_g
    size = m + n
    zero = _zero_like(f[0] if f.c else Fraction(0))
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + k] = f[m - k]
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + k] = g[n - k]
        rows.append(row)
    return rows


def bareiss_det(matrix):
    """Fraction-free determinant; entries need +, -, * and exact division."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return _zero_like(m[0][0])
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                val = row_i[j] * pivot - mik * row_k[j]
                row_i[j] = val if prev is None else _div_exact(val, prev)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def field_det(matrix):
    """Determinant over a field by Gaussian elimination (one inverse per pivot)."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [list(row) for row in matrix]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return m[0][0] * 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        pivot = m[k][k]
        det = pivot * det
        inv = 1 / pivot
        row_k = m[k]
        for i in range(k + 1, n):
            if m[i][k] == 0:
                continue
            factor = m[i][k] * inv
            row_i = m[i]
            for j in range(k + 1, n):
                if row_k[j] != 0:
                    row_i[j] = row_i[j] - factor * row_k[j]
    return det


def _total_degree(f: UPoly) -> int:
    return max(k + UPoly._lift(a).degree for k, a in enumerate(f.c) if a != 0)


def resultant(f: UPoly, g: UPoly):
    """Sylvester resultant via fraction-free elimination.

    Works over any exact coefficient ring, including polynomial rings.
    """
    if not f.c or not g.c:
        raise ValueError("resultant of a zero polynomial")
    if f.degree == 0 and g.degree == 0:
        return Fraction(1) if not isinstance(f.lc, UPoly) else UPoly((Fraction(1),))
    return bareiss_det(sylvester_matrix(f, g))


def interpolate(xs, ys) -> UPoly:
    """Newton divided-difference interpolation over an exact field."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UPoly((coef[-1],))
    for i in range(n - 2, -1, -1):
        poly = poly * UPoly((-xs[i], Fraction(1))) + coef[i]
    return poly


def resultant_by_evaluation(f: UPoly, g: UPoly) -> UPoly:
    """res_x(f, g) for f, g in K[t][x], by evaluation at integer t and interpolation.

    Same value as ``resultant`` on the nested ring; much cheaper because every
    determinant is taken over the base field.
    """
    if not f.c or not g.c:
        raise ValueError("resultant of a zero polynomial")
    m, n = f.degree, g.degree
    df = max((UPoly._lift(a).degree for a in f.c), default=0)
    dg = max((UPoly._lift(a).degree for a in g.c), default=0)
    # Bezout: the t-degree is also at most the product of total degrees
    bound = max(min(n * df + m * dg, _total_degree(f) * _total_degree(g)), 0)
    in_field = any(isinstance(c, NFElement) for a in list(f.c) + list(g.c) for c in UPoly._lift(a).c)
    det = field_det if in_field else bareiss_det
    xs, ys = [], []
    for t in range(bound + 1):
        tt = Fraction(t)
        fe = UPoly(UPoly._lift(a)(tt) for a in f.c)
        ge = UPoly(UPoly._lift(a)(tt) for a in g.c)
        xs.append(tt)
        ys.append(det(sylvester_matrix(fe, ge, m, n)) if m + n else Fraction(1))
    return interpolate(xs, ys)


def discriminant(f: UPoly):
    """(-1)^(n(n-1)/2) res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant of a constant")
    if n == 1:
        return Fraction(1) if not isinstance(f.lc, UPoly) else UPoly((Fraction(1),))
    r = resultant(f, f.derivative())
    r = _div_exact(r, f.lc)
    return -r if (n * (n - 1) // 2) % 2 else r


def squarefree_decomposition(f: UPoly):
    """Yun's algorithm: list of (factor, multiplicity) with monic pairwise coprime factors."""
    if f.degree < 1:
        return []
    out = []
    fp = f.derivative()
    a = f.gcd(fp)
    b = f.exact_div(a)
    c = fp.exact_div(a)
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        a = b.gcd(d)
        b = b.exact_div(a)
        if a.degree > 0:
            out.append((a, k))
        c = d.exact_div(a)
        d = c - b.derivative()
        k += 1
    return out


def squarefree_part(f: UPoly) -> UPoly:
    result = UPoly((Fraction(1),))
    for p, _ in squarefree_decomposition(f):
        result = result * p
    return result


def content_normalize(f: UPoly) -> UPoly:
    """Scale a rational polynomial to coprime integers with positive leading coefficient."""
    if not f.c:
        return f
    den = lcm(*(Fraction(a).denominator for a in f.c))
    ints = [int(Fraction(a) * den) for a in f.c]
    from math import gcd
    g = 0
    for v in ints:
        g = gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return UPoly(Fraction(v, g) for v in ints)


def factor_rational(f: UPoly):
    """Irreducible factorization over Q: list of (monic factor, multiplicity)."""
    import sympy

    if f.degree < 1:
        return []
    x = sympy.Symbol("x")
    expr = sympy.Poly([sympy.Rational(a.numerator, a.denominator) for a in reversed(f.to_rational().c)], x, domain="QQ")
    _, facs = expr.factor_list()
    out = []
    for p, e in facs:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
        out.append((UPoly(coeffs).monic(), int(e)))
    out.sort(key=lambda pe: (pe[0].degree, [str(c) for c in pe[0].c]))
    return out
