"""Numerical monodromy of a projection of a plane curve onto a line.

The projection from P is written as a fiber polynomial f(x, t): the line
through P with pencil parameter t meets the curve in the roots x of f(., t).
Sheets are tracked around small circles about every branch value and
around a large circle that stands in for the loop about t = infinity.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .curve import PlaneCurve, ProjectivePoint, SingularPointError
from .curve.points import det3
from .permgroup import Permutation, PermGroup, classify
from .poly import PRECISION_LADDER, BinaryForm, UPoly, numeric_roots, resultant_by_evaluation, squarefree_part
from .poly.aberth import aberth
from .poly.numberfield import to_mpc

__all__ = [
    "FiberSystem",
    "MonodromyCertificate",
    "MonodromyResult",
    "TrackingError",
    "ValidationError",
    "fiber_system",
    "map_fiber_system",
    "branch_points",
    "track_loop",
    "monodromy_group",
    "monodromy_of",
]

DEFAULT_SEED = 1


class TrackingError(ArithmeticError):
    pass


class ValidationError(ArithmeticError):
    pass


@dataclass
class FiberSystem:
    """f(x, t) = sum_k a_k(t) x^k with exact coefficients; the N roots in x are the sheets."""

    poly: UPoly
    center: ProjectivePoint | None = None
    frame: list | None = None
    genus: int | None = None
    label: str = ""

    @property
    def sheets(self) -> int:
        return self.poly.degree

    @property
    def leading(self) -> UPoly:
        return _as_upoly(self.poly.lc)

    def coefficient_rows(self):
        return [list(_as_upoly(a).c) for a in self.poly.c]

    def discriminant_data(self):
        """(res_x(f, f_x), squarefree branch polynomial) computed exactly."""
        res = resultant_by_evaluation(self.poly, self.poly.derivative())
        if res.degree < 0:
            raise ValueError("fiber polynomial has a repeated factor")
        return res, squarefree_part(res)

    def to_json(self):
        rows = self.coefficient_rows()
        return {
            "center": self.center.to_json() if self.center is not None else None,
            "sheets": self.sheets,
            "coefficients": [[_fmt(c) for c in row] for row in rows],
            "label": self.label,
        }


def _fmt(c):
    from .poly import format_exact

    return format_exact(c)


def _as_upoly(a) -> UPoly:
    return a if isinstance(a, UPoly) else UPoly((a,))


def fiber_system(curve: PlaneCurve, point, seed: int = DEFAULT_SEED, genus: int | None = None) -> FiberSystem:
    """Fiber polynomial of the projection from ``point`` in a seeded generic frame."""
    p = point if isinstance(point, ProjectivePoint) else ProjectivePoint(point)
    if not p.exact:
        raise ValueError("the projection center must be exact")
    on_curve = curve.f.evaluate(p.coords) == 0
    if on_curve and all(g.evaluate(p.coords) == 0 for g in curve.gradient):
        raise SingularPointError(f"{p} is a singular point of the curve")
    rng = random.Random(seed)
    while True:
        cols = [p.coords] + [tuple(Fraction(rng.randint(-3, 3)) for _ in range(3)) for _ in range(2)]
        frame = [[cols[j][i] for j in range(3)] for i in range(3)]
        if det3(frame) != 0:
            break
    poly = curve.f.substitute(frame).fiber_polynomial()
    expected = curve.degree - (1 if on_curve else 0)
    assert poly.degree == expected
    if genus is None:
        genus = _safe_genus(curve)
    return FiberSystem(poly, p, frame, genus, label=f"projection from {p}")


def _safe_genus(curve: PlaneCurve):
    try:
        return curve.genus
    except ValueError:
        return None


def map_fiber_system(num: BinaryForm, den: BinaryForm) -> FiberSystem:
    """Fibers of the map (num : den) of the projective line: roots of num(x,1) - t den(x,1)."""
    size = max(num.degree, den.degree) + 1
    a, b = num.dehomogenize(), den.dehomogenize()
    poly = UPoly(UPoly((a[k], -b[k])) for k in range(size))
    return FiberSystem(poly, genus=0, label=f"map ({num} : {den})")


# -- numeric evaluation --------------------------------------------------------

class _Numeric:
    """Evaluates f, f_x, f_t at working precision (complex128 or mpmath objects)."""

    def __init__(self, fs: FiberSystem, prec: int):
        self.prec = prec
        rows = fs.coefficient_rows()
        width = max(len(r) for r in rows)
        if prec <= 53:
            self.dtype = complex
            self.coef = np.array([[complex(to_mpc(r[j], 53)) if j < len(r) else 0j for j in range(width)] for r in rows])
        else:
            self.dtype = object
            with mpmath.workprec(prec):
                zero = mpmath.mpc(0)
                self.coef = np.array(
                    [[to_mpc(r[j], prec) if j < len(r) else zero for j in range(width)] for r in rows], dtype=object
                )
        self.width = width
        self.tol = 1e-11 if prec <= 53 else 2.0 ** (-prec * 0.7)
        self.eps = 2.0 ** (-prec)
        self.abs_coef = np.abs(self.coef).astype(float) if prec <= 53 else np.array(
            [[float(abs(c)) for c in row] for row in self.coef])

    def scalar(self, z):
        return complex(z) if self.prec <= 53 else mpmath.mpc(z)

    def coeffs(self, t):
        pw = [self.scalar(1)]
        dpw = [self.scalar(0)]
        for j in range(1, self.width):
            dpw.append(j * pw[-1])
            pw.append(pw[-1] * t)
        pw = np.array(pw, dtype=self.dtype)
        dpw = np.array(dpw, dtype=self.dtype)
        return self.coef @ pw, self.coef @ dpw

    @staticmethod
    def horner(a, xs):
        f = np.full(len(xs), a[-1], dtype=xs.dtype)
        df = np.zeros(len(xs), dtype=xs.dtype) if xs.dtype != object else np.array([0 * x for x in xs], dtype=object)
        for c in a[-2::-1]:
            df = df * xs + f
            f = f * xs + c
        return f, df

    def noise(self, t, xs):
        """Rounding-error scale of f at (xs, t): eps * sum |c_kj| |t|^j |x|^k."""
        at = float(abs(t))
        rows = self.abs_coef @ np.array([at**j for j in range(self.width)])
        ax = np.array([float(abs(x)) for x in xs])
        acc = np.full(len(ax), rows[-1])
        for c in rows[-2::-1]:
            acc = acc * ax + c
        return 64 * self.eps * acc

    def fiber(self, t):
        a, _ = self.coeffs(t)
        roots, _ = aberth(list(a), self.prec)
        roots = np.array(roots, dtype=self.dtype)
        order = sorted(range(len(roots)), key=lambda i: (round(float(roots[i].real), 9), round(float(roots[i].imag), 9)))
        return roots[order]


def _nearest(xs):
    n = len(xs)
    out = []
    for i in range(n):
        out.append(min(abs(xs[i] - xs[j]) for j in range(n) if j != i))
    return np.array(out, dtype=float) if xs.dtype != object else out


def _step(num: _Numeric, xs, t0, t1):
    a0, at0 = num.coeffs(t0)
    f, fx = num.horner(a0, xs)
    ft, _ = num.horner(at0, xs)
    x = xs - ft / fx * (t1 - t0)
    a1, _ = num.coeffs(t1)
    for _ in range(8):
        f, fx = num.horner(a1, x)
        # residual already at rounding level: further Newton steps only add noise
        if all(abs(v) <= e for v, e in zip(f, num.noise(t1, x))):
            break
        delta = f / fx
        x = x - delta
        if all(abs(d) <= num.tol * (1 + abs(v)) for d, v in zip(delta, x)):
            break
    else:
        return None
    sep = _nearest(xs)
    if any(abs(x[i] - xs[i]) >= sep[i] / 3 for i in range(len(xs))):
        return None
    return x


def _track_path(num: _Numeric, path, xs, h: float = 0.02, min_step: float = 1e-10):
    tau, t_cur = 0.0, path(0.0)
    while tau < 1.0:
        h = min(h, 1.0 - tau)
        t_new = path(tau + h) if tau + h < 1.0 else path(1.0)
        moved = _step(num, xs, t_cur, t_new)
        if moved is None:
            h /= 2
            if h < min_step:
                raise TrackingError(f"step size underflow at t = {complex(t_cur):.6g}")
            continue
        tau, xs, t_cur = tau + h, moved, t_new
        h = min(h * 1.5, 0.1)
    return xs


def _match(final, base) -> Permutation:
    sep = min(_nearest(base))
    images = []
    for x in final:
        dists = [abs(x - b) for b in base]
        j = min(range(len(base)), key=lambda k: dists[k])
        if dists[j] >= sep / 3:
            raise TrackingError("sheet matching failed: tracked root is not near the base fiber")
        images.append(j)
    if len(set(images)) != len(images):
        raise TrackingError("sheet matching is not a bijection")
    return Permutation(images)


# -- loops -------------------------------------------------------------------------

@dataclass
class _LoopGeometry:
    base: complex
    radius: float
    points: list  # branch values in loop order
    big_radius: float
    angle: float


def _segment(a, b, scalar):
    a, b = scalar(a), scalar(b)
    return lambda s: a + (b - a) * s


def _circle(center, radius, start_angle, scalar, prec):
    if prec <= 53:
        return lambda s: center + radius * cmath.exp(1j * (start_angle + 2 * math.pi * s))
    c, r = mpmath.mpc(center), mpmath.mpf(radius)
    return lambda s: c + r * mpmath.expj(start_angle + 2 * mpmath.pi * s)


def _loop_paths(geom: _LoopGeometry, c: complex, num: _Numeric):
    near = c + geom.radius * (geom.base - c) / abs(geom.base - c)
    start = cmath.phase(near - c)
    return [
        _segment(geom.base, near, num.scalar),
        _circle(c, geom.radius, start, num.scalar, num.prec),
        _segment(near, geom.base, num.scalar),
    ]


def _spokes_clear(base, points, radius) -> bool:
    for c in points:
        for o in points:
            if o is c:
                continue
            # distance from o to the segment base -> c
            d = c - base
            s = max(0.0, min(1.0, ((o - base) * d.conjugate()).real / abs(d) ** 2))
            if abs(base + s * d - o) < radius:
                return False
    return True


def _geometry(points, rng: random.Random, avoid_angle: float | None = None) -> _LoopGeometry:
    if len(points) > 1:
        radius = min(abs(a - b) for i, a in enumerate(points) for b in points[i + 1:]) / 2
    else:
        radius = 0.5
    radius = min(radius, 0.5)
    reach = max((abs(c) for c in points), default=0.0)
    big = 2 * reach + 2 * radius + 1
    # spokes only have to miss the other branch values; a generous clearance
    # keeps the tracker well conditioned, so relax it only when forced to
    found = False
    for clearance in (radius, radius / 2, radius / 4, radius / 8):
        for attempt in range(200):
            theta = rng.uniform(0, 2 * math.pi)
            if avoid_angle is not None and attempt == 0:
                theta = (avoid_angle + math.pi) % (2 * math.pi)
            base = big * cmath.exp(1j * theta)
            if _spokes_clear(base, points, clearance):
                found = True
                break
        if found:
            break
    if not found:
        raise TrackingError("could not find a base point with clear spokes")
    inward = -base

    def key(c):
        ang = cmath.phase((c - base) / inward)
        return ang

    ordered = sorted(points, key=key)
    return _LoopGeometry(base, radius, ordered, big, theta)


def track_loop(fs: FiberSystem, geom: _LoopGeometry, index: int | None, precision: int = 53):
    """Permutation of the base fiber along loop ``index`` (None = the big circle), with the precision used."""
    last = None
    for prec in [p for p in PRECISION_LADDER if p >= precision]:
        num = _Numeric(fs, prec)
        ctx = mpmath.workprec(prec) if prec > 53 else _null_ctx()
        with ctx:
            base_fiber = num.fiber(num.scalar(geom.base))
            if index is None:
                paths = [_circle(0, geom.big_radius, geom.angle, num.scalar, prec)]
            else:
                paths = _loop_paths(geom, geom.points[index], num)
            try:
                xs = base_fiber
                for path in paths:
                    xs = _track_path(num, path, xs)
                return _match(xs, base_fiber), prec
            except TrackingError as err:
                last = err
    raise TrackingError(f"loop {index} failed on the whole precision ladder: {last}")


class _null_ctx:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def branch_points(fs: FiberSystem, precision: int = 53):
    """Finite branch values (roots of the squarefree discriminant including the leading coefficient)."""
    _, sqf = fs.discriminant_data()
    if sqf.degree < 1:
        return []
    roots, _ = numeric_roots(list(sqf.c), precision)
    return sorted(roots, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


# -- certificates ------------------------------------------------------------------

@dataclass
class _Run:
    geometry: _LoopGeometry
    base_fiber: list
    loops: list  # Permutation per branch value, loop order
    big_loop: Permutation
    precisions: list

    @property
    def infinity(self) -> Permutation:
        return self.big_loop.inverse()

    def product(self) -> Permutation:
        n = self.big_loop.degree
        out = Permutation.identity(n)
        for p in self.loops:
            out = out * p
        return out

    def cycle_types(self):
        return sorted([p.cycle_type() for p in self.loops] + [self.infinity.cycle_type()])


def _run(fs: FiberSystem, points, rng, precision, avoid_angle=None) -> _Run:
    geom = _geometry(points, rng, avoid_angle)
    loops, precs = [], []
    for k in range(len(geom.points)):
        perm, prec = track_loop(fs, geom, k, precision)
        loops.append(perm)
        precs.append(prec)
    big, prec = track_loop(fs, geom, None, precision)
    precs.append(prec)
    num = _Numeric(fs, 53)
    base_fiber = [complex(x) for x in num.fiber(complex(geom.base))]
    return _Run(geom, base_fiber, loops, big, precs)


@dataclass
class MonodromyCertificate:
    fiber: FiberSystem
    branch_points: list
    base_point: complex
    base_fiber: list
    loop_permutations: list
    infinity_permutation: Permutation
    product_check: bool
    riemann_hurwitz: dict
    validation: dict
    precision: int
    seed: int
    infinity_ramified: bool = False
    extra: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "fiber_system": self.fiber.to_json(),
            "sheets": self.fiber.sheets,
            "branch_points": [[z.real, z.imag] for z in self.branch_points],
            "infinity_ramified": self.infinity_ramified,
            "base_point": [self.base_point.real, self.base_point.imag],
            "base_fiber": [[z.real, z.imag] for z in self.base_fiber],
            "loops": [
                {"branch_point": [c.real, c.imag], "permutation": str(p), "cycle_type": list(p.cycle_type())}
                for c, p in zip(self.branch_points, self.loop_permutations)
            ],
            "infinity_permutation": str(self.infinity_permutation),
            "product_check": self.product_check,
            "riemann_hurwitz": self.riemann_hurwitz,
            "validation": self.validation,
            "precision": self.precision,
            "seed": self.seed,
        }


@dataclass
class MonodromyResult:
    certificate: MonodromyCertificate
    group: PermGroup

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def tag(self):
        return classify(self.group)

    def to_json(self):
        out = self.certificate.to_json()
        out["group"] = self.group.to_json()
        return out


def _hurwitz(run: _Run, n: int, genus):
    perms = run.loops + [run.infinity]
    total = sum(n - len(p.cycles()) for p in perms)
    if genus is None:
        # no independent genus: report the one the balance implies
        implied = total - 2 * n + 2
        return {"ramification_total": total, "genus": None, "expected": None, "ok": None,
                "implied_genus": implied // 2 if implied % 2 == 0 and implied >= 0 else None}
    expected = 2 * genus - 2 + 2 * n
    return {"ramification_total": total, "genus": genus, "expected": expected, "ok": total == expected}


def monodromy_of(fs: FiberSystem, precision: int = 53, seed: int = DEFAULT_SEED, validate: bool = True) -> MonodromyResult:
    rng = random.Random(seed ^ 0x9E3779B9)
    points = branch_points(fs, precision)
    n = fs.sheets
    first = _run(fs, points, rng, precision)
    product_ok = first.product() == first.big_loop
    group = PermGroup(first.loops or [Permutation.identity(n)], n)
    validation = {"performed": False}
    if validate:
        second = _run(fs, points, rng, precision, avoid_angle=first.geometry.angle)
        other = PermGroup(second.loops or [Permutation.identity(n)], n)
        agree = other.order == group.order and second.cycle_types() == first.cycle_types()
        validation = {
            "performed": True,
            "second_base_point": [second.geometry.base.real, second.geometry.base.imag],
            "second_order": other.order,
            "second_product_check": second.product() == second.big_loop,
            "agree": agree,
        }
        if not agree:
            raise ValidationError(
                f"base point runs disagree: orders {group.order} vs {other.order}, "
                f"cycle types {first.cycle_types()} vs {second.cycle_types()}"
            )
    if not product_ok:
        raise ValidationError("loop product does not match the big loop")
    cert = MonodromyCertificate(
        fiber=fs,
        branch_points=list(first.geometry.points),
        base_point=first.geometry.base,
        base_fiber=first.base_fiber,
        loop_permutations=first.loops,
        infinity_permutation=first.infinity,
        product_check=product_ok,
        riemann_hurwitz=_hurwitz(first, n, fs.genus),
        validation=validation,
        precision=max(first.precisions, default=precision),
        seed=seed,
        infinity_ramified=not first.infinity.is_identity(),
    )
    return MonodromyResult(cert, group)


def monodromy_group(curve: PlaneCurve, point, precision: int = 53, seed: int = DEFAULT_SEED,
                    genus: int | None = None, validate: bool = True) -> MonodromyResult:
    fs = fiber_system(curve, point, seed=seed, genus=genus)
    return monodromy_of(fs, precision=precision, seed=seed, validate=validate)
