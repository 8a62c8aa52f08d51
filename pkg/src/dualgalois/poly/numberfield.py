"""Exact arithmetic in simple algebraic extensions Q(a) with a fixed complex embedding.

A ``NumberField`` is a monic irreducible minimal polynomial together with the
index of the complex root that ``a`` denotes.  Two conjugate embeddings are
different ``NumberField`` objects, so elements never mix embeddings silently.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath

from .aberth import aberth

__all__ = ["NumberField", "NFElement", "to_complex", "to_mpc", "field_of", "common_field", "format_exact"]


class FieldMismatchError(ValueError):
    pass


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polydivmod(a, b):
    a = list(a)
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    inv = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _trim(q), _trim(a[: len(b) - 1])


class NumberField:
    """Q(a) where a is the ``root_index``-th root (deterministic order) of ``minpoly``."""

    def __init__(self, minpoly, root_index: int = 0):
        coeffs = _trim(Fraction(c) for c in minpoly)
        lc = coeffs[-1]
        self.minpoly = tuple(c / lc for c in coeffs)
        self.degree = len(self.minpoly) - 1
        if self.degree < 2:
            raise ValueError("use Fraction for rational numbers")
        if not 0 <= root_index < self.degree:
            raise ValueError("root index out of range")
        self.root_index = root_index
        self._key = (self.minpoly, root_index)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"NumberField(minpoly={[str(c) for c in self.minpoly]}, root={self.root(53):.6g})"

    def conjugates(self):
        return [NumberField(self.minpoly, k) for k in range(self.degree)]

    def root(self, prec: int = 53):
        return _field_root(self.minpoly, self.root_index, prec)

    def gen(self) -> "NFElement":
        return NFElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def element(self, coeffs) -> "NFElement":
        return NFElement(self, coeffs)

    def to_json(self):
        r = complex(self.root(53))
        return {"minpoly": [str(c) for c in self.minpoly], "root": [r.real, r.imag]}


@lru_cache(maxsize=None)
def _sorted_roots_double(minpoly):
    roots, ok = aberth(minpoly, 53)
    if not ok:
        roots, ok = aberth(minpoly, 212)
        roots = [complex(r) for r in roots]
    return sorted(roots, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


@lru_cache(maxsize=None)
def _field_root(minpoly, index, prec):
    approx = _sorted_roots_double(minpoly)[index]
    if prec <= 53:
        z = approx
        for _ in range(3):
            p = dp = 0
            for c in reversed(minpoly):
                dp = dp * z + p
                p = p * z + float(c)
            z = z - p / dp
        return complex(z)
    with mpmath.workprec(prec + 20):
        z = mpmath.mpc(approx)
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in minpoly]
        for _ in range(200):
            p = dp = mpmath.mpc(0)
            for c in reversed(cs):
                dp = dp * z + p
                p = p * z + c
            step = p / dp
            z -= step
            if abs(step) < mpmath.mpf(2) ** (-prec - 10) * max(1, abs(z)):
                break
    with mpmath.workprec(prec):
        return +z


class NFElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > field.degree:
            _, cs = _polydivmod(cs, field.minpoly)
        cs = cs + [Fraction(0)] * (field.degree - len(cs))
        self.field = field
        self.coeffs = tuple(cs)

    # -- coercion -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise FieldMismatchError("elements of different number fields")
            return other
        if isinstance(other, (int, Rational)):
            return NFElement(self.field, (Fraction(other),))
        return None

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, [-a for a in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            return NFElement(self.field, [a * f for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = _polymul(self.coeffs, o.coeffs)
        _, rem = _polydivmod(prod, self.field.minpoly)
        return NFElement(self.field, rem)

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        a = _trim(self.coeffs)
        if not a:
            raise ZeroDivisionError("inverse of zero in number field")
        # extended Euclid: find s with s*a = 1 mod minpoly
        r0, r1 = list(self.field.minpoly), a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            qs = _polymul(q, s1) if s1 else []
            n = max(len(s0), len(qs))
            s_new = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)]
            s0, s1 = s1, _trim(s_new)
        c = r1[0]
        return NFElement(self.field, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            return NFElement(self.field, [a / f for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = NFElement(self.field, (1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __complex__(self):
        return complex(to_mpc(self, 53))

    def __repr__(self):
        return f"NFElement({format_exact(self)})"


def to_mpc(x, prec: int = 53):
    """Complex value of an exact number under its field's embedding."""
    if isinstance(x, NFElement):
        a = x.field.root(prec)
        if prec <= 53:
            acc = 0j
            for c in reversed(x.coeffs):
                acc = acc * a + float(c)
            return acc
        with mpmath.workprec(prec):
            acc = mpmath.mpc(0)
            for c in reversed(x.coeffs):
                acc = acc * a + mpmath.mpf(c.numerator) / c.denominator
            return acc
    if prec <= 53:
        if isinstance(x, Fraction):
            return complex(float(x))
        return complex(x)
    with mpmath.workprec(prec):
        if isinstance(x, Fraction):
            return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
        return mpmath.mpc(x)


def to_complex(x) -> complex:
    return complex(to_mpc(x, 53))


def field_of(x):
    return x.field if isinstance(x, NFElement) else None


def common_field(values):
    """The single number field among ``values`` (None when all rational)."""
    found = None
    for v in values:
        f = field_of(v)
        if f is not None:
            if found is None:
                found = f
            elif f != found:
                raise FieldMismatchError("values live in different number fields")
    return found


def format_exact(x, name: str = "a") -> str:
    if isinstance(x, NFElement):
        parts = []
        for k, c in enumerate(x.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"
    return str(Fraction(x))
