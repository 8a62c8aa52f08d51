"""Extendable Galois points: standard forms, the conjugate point in the dual
plane, the intermediate map f_P and predictions for the dual projection group.

A point P is an extendable Galois point when a linear change of coordinates
puts the curve into the form X^(d-m) G_m(Y, Z) + G_d(Y, Z) with P = (1:0:0),
m = 0 (P off the curve, "outer") or m = 1 with G_1 = Z (P a smooth point,
"inner").
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .curve import (
    PlaneCurve,
    ProjectivePoint,
    SingularPointError,
    frame_with_first_column,
    intersection_multiplicity,
    multiplicity_at,
    tangent_line,
)
from .curve.points import mat_inverse, mat_mul
from .monodromy import DEFAULT_SEED, MonodromyResult, map_fiber_system, monodromy_group, monodromy_of
from .permgroup import classify
from .poly import BinaryForm, HomPoly, format_exact, squarefree_part

__all__ = [
    "StandardFormCertificate",
    "GaloisPointReport",
    "Prediction",
    "UnsupportedMultiplicityError",
    "CuspidalCubicError",
    "standard_form",
    "conjugate_point",
    "intermediate_map",
    "distinct_factor_count",
    "group_order_bounds",
    "predict_dual_galois",
    "predict_group_structure",
    "closure_degree",
    "find_extendable_galois_points",
    "confirm_report",
    "verify_cubic",
]

OUTER, INNER = "outer", "inner"
GALOIS, NOT_GALOIS, UNDETERMINED = "galois", "not_galois", "undetermined"


class UnsupportedMultiplicityError(ValueError):
    pass


class CuspidalCubicError(ValueError):
    pass


def _identity():
    return [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]


def _fmt_matrix(m):
    return [[format_exact(c) for c in row] for row in m]


@dataclass
class StandardFormCertificate:
    """``substitution`` S satisfies f(S x) = scale * (X^(d-m) G_m + G_d); ``transform`` is its inverse."""

    point: ProjectivePoint
    degree: int
    multiplicity: int
    g_m: BinaryForm
    g_d: BinaryForm
    substitution: list
    transform: list
    scale: object

    @property
    def kind(self) -> str:
        return OUTER if self.multiplicity == 0 else INNER

    @property
    def zeta_order(self) -> int:
        return self.degree - self.multiplicity

    @property
    def generator_description(self) -> str:
        return f"(zeta X : Y : Z) with zeta a primitive {self.zeta_order}-th root of unity"

    def standard_polynomial(self) -> HomPoly:
        d, m = self.degree, self.multiplicity
        forms = [BinaryForm(j, [0] * (j + 1)) for j in range(d + 1)]
        forms[m] = self.g_m
        forms[d] = self.g_d
        return HomPoly.from_forms(forms)

    def check(self, curve: PlaneCurve) -> bool:
        return curve.f.substitute(self.substitution) == self.standard_polynomial() * self.scale

    def to_json(self):
        return {
            "m": self.multiplicity,
            "transform": _fmt_matrix(self.transform),
            "G_m": str(self.g_m),
            "G_d": str(self.g_d),
            "zeta_order": self.zeta_order,
            "generator": self.generator_description,
        }


def _shift_matrix(form: BinaryForm, divisor):
    """Substitution X -> X - form(Y, Z) / divisor for a linear form."""
    z_coef, y_coef = form.coeffs
    m = _identity()
    m[0][1] = -y_coef / divisor
    m[0][2] = -z_coef / divisor
    return m


def _rotation_to_z(linear: BinaryForm):
    """Substitution in (Y, Z) turning the linear form a Y + b Z into the new Z."""
    b, a = linear.coeffs
    m = _identity()
    if b != 0:
        m[2][1] = -a / b
        m[2][2] = 1 / b
    else:
        m[1][1], m[1][2] = Fraction(0), 1 / a
        m[2][1], m[2][2] = Fraction(1), Fraction(0)
    return m


def standard_form(curve: PlaneCurve, point) -> StandardFormCertificate | None:
    p = point if isinstance(point, ProjectivePoint) else ProjectivePoint(point)
    m = multiplicity_at(curve, p)
    if m >= 2:
        if all(g.evaluate(p.coords) == 0 for g in curve.gradient):
            raise SingularPointError(f"{p} is a singular point of the curve")
        raise UnsupportedMultiplicityError(f"multiplicity {m} is not supported")
    d = curve.degree
    sub = frame_with_first_column(p.coords)
    forms = curve.f.substitute(sub).forms_in(0)
    if m == 0:
        lead = forms[0].coeffs[0]
        sub = mat_mul(sub, _shift_matrix(forms[1], d * lead))
        forms = curve.f.substitute(sub).forms_in(0)
        if any(not a.is_zero() for a in forms[1:d]):
            return None
        scale = lead
        g_m = BinaryForm(0, [1])
        g_d = BinaryForm(d, [c / lead for c in forms[d].coeffs])
    else:
        a1, a2 = forms[1], forms[2]
        if a1.z_order() == 0:
            q, r = a2.dehomogenize().divmod(a1.dehomogenize())
            if r.degree >= 0:
                return None
            q = BinaryForm.from_upoly(q, 1)
        else:
            # a1 = c Z: divisibility means Z | a2
            if a2.coeffs[2] != 0:
                return None
            q = BinaryForm(1, [a2.coeffs[0] / a1.coeffs[0], a2.coeffs[1] / a1.coeffs[0]])
        sub = mat_mul(sub, _shift_matrix(q, d - 1))
        forms = curve.f.substitute(sub).forms_in(0)
        if any(not a.is_zero() for a in forms[2:d]):
            return None
        sub = mat_mul(sub, _rotation_to_z(forms[1]))
        forms = curve.f.substitute(sub).forms_in(0)
        scale = Fraction(1)
        g_m, g_d = forms[1], forms[d]
        if g_d.z_order() > 0:
            # Z | G would make the curve reducible
            raise ValueError("standard form has Z dividing G; curve is reducible")
    cert = StandardFormCertificate(p, d, m, g_m, g_d, sub, mat_inverse(sub), scale)
    assert cert.check(curve)
    return cert


def conjugate_point(cert: StandardFormCertificate) -> ProjectivePoint:
    """The dual-plane point that reads (1:0:0) in standard dual coordinates: the line X = 0 of the standard frame."""
    return ProjectivePoint(cert.transform[0])


def _reduce(num: BinaryForm, den: BinaryForm):
    g = num.gcd(den)
    if g.degree > 0:
        num, den = num.exact_div(g), den.exact_div(g)
    return num, den


def distinct_factor_count(g: BinaryForm) -> int:
    h = g.dehomogenize()
    n = squarefree_part(h).degree if h.degree > 0 else 0
    return n + (1 if g.z_order() > 0 else 0)


def factor_multiplicities(g: BinaryForm):
    """Multiplicities l_i of the distinct linear factors of g."""
    from .poly import squarefree_decomposition

    out = []
    h = g.dehomogenize()
    if h.degree > 0:
        for p, e in squarefree_decomposition(h):
            out.extend([e] * p.degree)
    if g.z_order() > 0:
        out.append(g.z_order())
    return sorted(out)


def intermediate_map(cert: StandardFormCertificate):
    g = cert.g_d
    if cert.kind == OUTER:
        num, den = g.derive_y(), g.derive_z()
    else:
        num = g.derive_y().times_z()
        den = g.derive_z().times_z() - g
    num, den = _reduce(num, den)
    return (num, den), num.degree, distinct_factor_count(g)


def group_order_bounds(cert: StandardFormCertificate, r: int, closure: int, closure_regular: bool | None = None):
    base = cert.degree - cert.multiplicity
    lower, upper = base * r, closure * base**r
    sharper = r * base**r if closure_regular else None
    return lower, upper, sharper


def closure_degree(fp, r: int, precision: int = 53, seed: int = DEFAULT_SEED):
    """Order of the monodromy group of f_P (degree of its Galois closure) and whether that group is regular."""
    if r <= 1:
        return 1, True
    res = monodromy_of(map_fiber_system(*fp), precision=precision, seed=seed)
    return res.order, res.order == r


@dataclass
class Prediction:
    verdict: str
    rationale: str
    predicted_order: int | None = None
    variant: str | None = None

    def to_json(self):
        return {"verdict": self.verdict, "rationale": self.rationale,
                "predicted_order": self.predicted_order, "variant": self.variant}


@dataclass
class GaloisPointReport:
    point: ProjectivePoint
    certificate: StandardFormCertificate
    conjugate: ProjectivePoint
    f_p: tuple
    r: int
    n: int
    closure: int
    closure_regular: bool
    bounds: tuple
    sharper_upper: int | None
    prediction: Prediction
    predicted_group: str | None
    conjugate_on_dual: bool | None = None
    confirmation: MonodromyResult | None = None
    extra: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return self.certificate.kind

    @property
    def confirmed_order(self):
        return self.confirmation.order if self.confirmation else None

    @property
    def confirmed_group(self):
        return str(self.confirmation.tag) if self.confirmation else None

    def bounds_hold(self) -> bool | None:
        if self.confirmation is None:
            return None
        return self.bounds[0] <= self.confirmed_order <= self.bounds[1]

    def to_json(self, include_certificate: bool = False):
        out = {
            "point": self.point.to_json(),
            "kind": self.kind,
            "m": self.certificate.multiplicity,
            "transform": _fmt_matrix(self.certificate.transform),
            "G_m": str(self.certificate.g_m),
            "G_d": str(self.certificate.g_d),
            "conjugate_point": self.conjugate.to_json(),
            "conjugate_on_dual": self.conjugate_on_dual,
            "f_P": [str(self.f_p[0]), str(self.f_p[1])],
            "r": self.r,
            "n": self.n,
            "R_closure": self.closure,
            "bounds": list(self.bounds),
            "sharper_upper_bound": self.sharper_upper,
            "prediction": self.prediction.to_json(),
            "predicted_group": self.predicted_group,
            "confirmed_group": self.confirmed_group,
            "confirmed_order": self.confirmed_order,
        }
        if self.confirmation is not None:
            out["bounds_hold"] = self.bounds_hold()
            out["confirmed_regular"] = self.confirmation.order == self.confirmation.group.degree
            if include_certificate:
                out["monodromy"] = self.confirmation.to_json()
        return out


def predict_dual_galois(cert: StandardFormCertificate, r: int) -> Prediction:
    d = cert.degree
    base = d - cert.multiplicity
    if r == 1:
        return Prediction(GALOIS, f"f_P has degree 1, so the dual projection is Galois of order {base}", base)
    if r == 2:
        if cert.kind == INNER:
            return Prediction(NOT_GALOIS, "r = 2 at an inner point", 2 * base**2, "inner-r2")
        ells = factor_multiplicities(cert.g_d)
        if 1 in ells:
            return Prediction(NOT_GALOIS, "r = 2 and the projection ramifies at a smooth point",
                              2 * d * d, "smooth-ramification")
        if any(gcd(d, ell) == 1 for ell in ells):
            return Prediction(NOT_GALOIS, "r = 2 and the projection is totally ramified at a branch",
                              2 * d * d, "total-ramification")
        return Prediction(NOT_GALOIS, "r = 2 but no order formula applies")
    return Prediction(NOT_GALOIS, f"f_P has degree {r} >= 2")


def _is_odd_prime(p: int) -> bool:
    return p > 2 and all(p % k for k in range(2, int(p**0.5) + 1))


def predict_group_structure(cert: StandardFormCertificate, r: int) -> str | None:
    p = cert.degree - cert.multiplicity
    if r != 2:
        return None
    if _is_odd_prime(p):
        return f"Z/{p} x D_{2 * p}"
    if cert.kind == INNER and cert.degree == 3:
        return "D_8"
    return None


def build_report(curve: PlaneCurve, cert: StandardFormCertificate, precision: int = 53,
                 seed: int = DEFAULT_SEED) -> GaloisPointReport:
    fp, r, n = intermediate_map(cert)
    closure, regular = closure_degree(fp, r, precision, seed)
    lower, upper, sharper = group_order_bounds(cert, r, closure, regular)
    return GaloisPointReport(
        point=cert.point,
        certificate=cert,
        conjugate=conjugate_point(cert),
        f_p=fp,
        r=r,
        n=n,
        closure=closure,
        closure_regular=regular,
        bounds=(lower, upper),
        sharper_upper=sharper,
        prediction=predict_dual_galois(cert, r),
        predicted_group=predict_group_structure(cert, r),
    )


def _vertices():
    one, zero = Fraction(1), Fraction(0)
    return [ProjectivePoint((one, zero, zero)), ProjectivePoint((zero, one, zero)), ProjectivePoint((zero, zero, one))]


def find_extendable_galois_points(curve: PlaneCurve, extra_candidates=(), precision: int = 53,
                                  seed: int = DEFAULT_SEED):
    """Reports for every candidate that admits a standard form.

    Inner candidates are the flexes of maximal tangency order; the outer
    search only covers the coordinate vertices and any supplied points.
    """
    d = curve.degree
    candidates = []
    for q in curve.flexes:
        if intersection_multiplicity(curve, tangent_line(curve, q), q) == d:
            candidates.append(q)
    candidates += _vertices()
    candidates += [c if isinstance(c, ProjectivePoint) else ProjectivePoint(c) for c in extra_candidates]
    seen, reports = [], []
    for q in candidates:
        if any(q == s for s in seen):
            continue
        seen.append(q)
        if multiplicity_at(curve, q) >= 2:
            continue
        cert = standard_form(curve, q)
        if cert is not None:
            reports.append(build_report(curve, cert, precision, seed))
    reports.sort(key=lambda rep: (rep.kind != OUTER, rep.point.sort_key()))
    return reports


def confirm_report(report: GaloisPointReport, curve: PlaneCurve, dual: PlaneCurve, precision: int = 53,
                   seed: int = DEFAULT_SEED) -> GaloisPointReport:
    """Run the monodromy of the dual curve projected from the conjugate point."""
    report.conjugate_on_dual = dual.f.evaluate(report.conjugate.coords) == 0
    genus = curve.genus
    report.confirmation = monodromy_group(dual, report.conjugate, precision=precision, seed=seed, genus=genus)
    return report


def _clause(status, **evidence):
    return {"status": status, **evidence}


def verify_cubic(curve: PlaneCurve, precision: int = 53, seed: int = DEFAULT_SEED):
    """Check the cubic-curve statements about dual-curve projection groups; returns (verdict dict, reports)."""
    if curve.degree != 3:
        raise ValueError("verify_cubic needs a cubic")
    kinds = [s.kind for s in curve.singular_points]
    if "cusp" in kinds:
        raise CuspidalCubicError("the cubic has a cusp; the statements assume no cusps")
    dual = curve.dual.curve
    if dual is None:
        raise ArithmeticError("dual curve could not be certified exactly")
    reports = find_extendable_galois_points(curve, precision=precision, seed=seed)
    for rep in reports:
        confirm_report(rep, curve, dual, precision, seed)

    inner = [r for r in reports if r.kind == INNER]
    outer = [r for r in reports if r.kind == OUTER]
    conj_distinct = all(
        not a.conjugate == b.conjugate for i, a in enumerate(reports) for b in reports[i + 1:]
    )
    clauses = {}
    smooth = not kinds
    nodal = kinds == ["node"]
    regular = [r.confirmation.group.is_regular() for r in reports]
    if smooth:
        clauses["1"] = _clause("pass" if not any(regular) else "fail",
                               note="no conjugate point of a smooth cubic is Galois for the dual",
                               regular_groups=sum(regular))
    else:
        clauses["1"] = _clause("not-applicable", note="only the smooth direction is checked")
    if nodal:
        ok = (len(inner) == 3 and not outer and conj_distinct
              and all(r.confirmed_order == 8 and r.confirmed_group == "D_8" and not r.conjugate_on_dual for r in inner))
        clauses["2"] = _clause("pass" if ok else "fail", points=len(inner),
                               groups=[r.confirmed_group for r in inner])
    else:
        clauses["2"] = _clause("not-applicable")
    if smooth:
        ok = (len(inner) == 9 and conj_distinct
              and all(r.confirmed_order in (12, 24, 48) and not r.conjugate_on_dual for r in inner))
        clauses["3"] = _clause("pass" if ok else "fail", points=len(inner),
                               orders=[r.confirmed_order for r in inner])
        special = [r for r in reports if r.confirmed_group == "Z/3 x D_6"]
        fermat_like = len(outer) == 3
        if fermat_like:
            ok = (len(special) == 3 and all(r.kind == OUTER and not r.conjugate_on_dual for r in special))
            clauses["4"] = _clause("pass" if ok else "fail", fermat_equivalent=True, points=len(special))
        else:
            clauses["4"] = _clause("absent" if not special else "fail", fermat_equivalent=False,
                                   points=len(special))
    else:
        clauses["3"] = _clause("not-applicable")
        clauses["4"] = _clause("not-applicable")
    verdict = {
        "curve": str(curve.f),
        "singularities": kinds,
        "dual_curve": str(dual.f),
        "clauses": clauses,
        "pass": all(c["status"] in ("pass", "not-applicable", "absent") for c in clauses.values()),
    }
    return verdict, reports
