import math
from fractions import Fraction

import numpy as np
import pytest

from dualgalois.curve import (
    ProjectivePoint,
    SingularPointError,
    intersect,
    intersection_multiplicity,
    line_profile,
    sample_curve_points,
)
from dualgalois.curve.points import cross, mat_vec
from dualgalois.galois import (
    GALOIS,
    INNER,
    NOT_GALOIS,
    OUTER,
    CuspidalCubicError,
    UnsupportedMultiplicityError,
    build_report,
    closure_degree,
    confirm_report,
    conjugate_point,
    factor_multiplicities,
    find_extendable_galois_points,
    group_order_bounds,
    intermediate_map,
    predict_dual_galois,
    predict_group_structure,
    standard_form,
    verify_cubic,
)
from dualgalois.poly import HomPoly, parse_polynomial
from dualgalois.poly.hompoly import BinaryForm

from conftest import FERMAT, NODAL, curve, hesse

Pt = ProjectivePoint


def bf(expr: str) -> BinaryForm:
    """Binary form in Y, Z from an expression."""
    p = parse_polynomial(expr)
    return BinaryForm(p.degree, [p.terms.get((0, k, p.degree - k), 0) for k in range(p.degree + 1)])


@pytest.mark.parametrize(
    "expr, point, m, g_m, g_d",
    [
        (FERMAT, (1, 0, 0), 0, "1", "Y^3+Z^3"),
        (NODAL, (1, 0, 0), 1, "Z", "Y^2*(Y+Z)"),
        ("X^3*Z+Y^3*(Y+Z)", (1, 0, 0), 1, "Z", "Y^3*(Y+Z)"),
        ("X^3*Z-Y^4", (1, 0, 0), 1, "Z", "-Y^4"),
    ],
)
def test_standard_form(expr, point, m, g_m, g_d):
    c = curve(expr)
    cert = standard_form(c, point)
    assert cert is not None and cert.check(c)
    assert cert.multiplicity == m
    assert str(cert.g_m) == str(bf(g_m)) and cert.g_d == bf(g_d)
    assert conjugate_point(cert) == Pt((1, 0, 0))


@pytest.mark.parametrize("expr, point", [(FERMAT, (1, 1, 1)), (FERMAT, (2, -1, 5)), (NODAL, (0, 1, 0))])
def test_no_standard_form(expr, point):
    assert standard_form(curve(expr), point) is None


def test_standard_form_errors(nodal):
    with pytest.raises((SingularPointError, UnsupportedMultiplicityError)):
        standard_form(nodal, (0, 0, 1))


def test_moved_fermat_recovers_vertex():
    # substitute X -> X + Y - Z: the Galois point moves with the curve
    c = curve("(X+Y-Z)^3+Y^3+Z^3")
    cert = standard_form(c, (1, 0, 0))
    assert cert is not None and cert.check(c)
    pbar = conjugate_point(cert)
    # the line X+Y-Z=0 is the image of the standard axis
    assert pbar == Pt((1, 1, -1))


def test_fermat_conjugates_distinct(fermat):
    reps = find_extendable_galois_points(fermat)
    pbars = [r.conjugate for r in reps]
    assert all(not a == b for i, a in enumerate(pbars) for b in pbars[i + 1:])
    assert [r.conjugate for r in reps if r.kind == OUTER] == [Pt((0, 0, 1)), Pt((0, 1, 0)), Pt((1, 0, 0))]


@pytest.mark.parametrize(
    "expr, point, fp, r, n",
    [
        (FERMAT, (1, 0, 0), ("3*Y^2", "3*Z^2"), 2, 3),
        (NODAL, (1, 0, 0), ("(3*Y+2*Z)*Z", "-Y^2"), 2, 2),
        ("X^2*Z-Y^3", (1, 0, 0), ("-3*Z", "Y"), 1, 1),
        ("X^3-Y*Z^2", (1, 0, 0), ("-Z", "-2*Y"), 1, 2),
    ],
)
def test_intermediate_map(expr, point, fp, r, n):
    (num, den), rr, nn = intermediate_map(standard_form(curve(expr), point))
    assert (rr, nn) == (r, n)
    assert num == bf(fp[0]) and den == bf(fp[1])


@pytest.mark.parametrize(
    "expr, point, closure, bounds",
    [
        (FERMAT, (1, 0, 0), 2, (6, 18)),
        (NODAL, (1, 0, 0), 2, (4, 8)),
        ("X^3*Z+Y^3*(Y+Z)", (1, 0, 0), 2, (6, 18)),
        ("X^3-Y*Z^2", (1, 0, 0), 1, (3, 3)),
    ],
)
def test_bounds(expr, point, closure, bounds):
    cert = standard_form(curve(expr), point)
    fp, r, _ = intermediate_map(cert)
    R, regular = closure_degree(fp, r)
    assert R == closure and regular
    lower, upper, sharper = group_order_bounds(cert, r, R, regular)
    assert (lower, upper) == bounds
    assert sharper == r * (cert.degree - cert.multiplicity) ** r


@pytest.mark.parametrize(
    "expr, point, verdict, order, variant, structure",
    [
        ("X^3-Y*Z^2", (1, 0, 0), GALOIS, 3, None, None),
        ("X^3*Z-Y^4", (1, 0, 0), GALOIS, 3, None, None),
        (FERMAT, (1, 0, 0), NOT_GALOIS, 18, "smooth-ramification", "Z/3 x D_6"),
        (NODAL, (1, 0, 0), NOT_GALOIS, 8, "inner-r2", "D_8"),
        ("X^3*Z+Y^3*(Y+Z)", (1, 0, 0), NOT_GALOIS, 18, "inner-r2", "Z/3 x D_6"),
    ],
)
def test_predictions(expr, point, verdict, order, variant, structure):
    cert = standard_form(curve(expr), point)
    _, r, _ = intermediate_map(cert)
    pred = predict_dual_galois(cert, r)
    assert (pred.verdict, pred.predicted_order, pred.variant) == (verdict, order, variant)
    assert predict_group_structure(cert, r) == structure


def test_total_ramification_variant():
    # three factors, none simple, and gcd(7, 2) = 1
    c = curve("X^7+Y^2*Z^2*(Y+Z)^3")
    cert = standard_form(c, (1, 0, 0))
    _, r, n = intermediate_map(cert)
    assert factor_multiplicities(cert.g_d) == [2, 2, 3]
    pred = predict_dual_galois(cert, r)
    assert (r, n) == (2, 3)
    assert pred.variant == "total-ramification" and pred.predicted_order == 98


@pytest.mark.parametrize(
    "expr, outer, inner",
    [(FERMAT, 3, 9), (NODAL, 0, 3), (hesse(Fraction(2)), 0, 9), ("X^3*Z-Y^4", 1, 1)],
)
def test_search_counts(expr, outer, inner):
    reps = find_extendable_galois_points(curve(expr))
    assert sum(r.kind == OUTER for r in reps) == outer
    assert sum(r.kind == INNER for r in reps) == inner


def _std_coords(cert, q):
    return np.array(mat_vec([[complex(v) for v in row] for row in cert.transform], q))


@pytest.mark.parametrize("expr, point", [(FERMAT, (1, 0, 0)), (NODAL, (1, 0, 0)), ("X^3*Z+Y^3*(Y+Z)", (1, 0, 0)),
                                         ("(X+Y-Z)^3+Y^3+Z^3", (1, 0, 0))])
def test_commuting_square(expr, point):
    c = curve(expr)
    cert = standard_form(c, point)
    (num, den), _, _ = intermediate_map(cert)
    sub = np.array([[complex(v) for v in row] for row in cert.substitution])
    pts = sample_curve_points(c, 100, seed=11)
    for q in pts:
        y, z = _std_coords(cert, q)[1:]
        a, b = num.evaluate_numeric(y, z), den.evaluate_numeric(y, z)
        grad = np.array([g.evaluate(tuple(q)) for g in c.gradient])
        line_std = sub.T @ grad  # the tangent line in standard dual coordinates
        v, w = line_std[1], line_std[2]
        scale = max(abs(a), abs(b)) * max(abs(v), abs(w))
        assert abs(a * w - b * v) < 1e-8 * scale


@pytest.mark.parametrize("expr", [FERMAT, "X^3-Y*Z^2", "X^4+Y^4+Z^4"])
def test_outer_map_unramified_over_axis_points(expr):
    c = curve(expr)
    cert = standard_form(c, (1, 0, 0))
    (num, den), _, _ = intermediate_map(cert)
    # Jacobian of (num, den) has no common root with G: exact gcd test
    jac = num.derive_y() * den.derive_z() - num.derive_z() * den.derive_y()
    assert cert.g_d.gcd(jac).degree == 0


def _axis_ramification(c, cert):
    axis = HomPoly.linear(cert.transform[0])
    out = []
    for q, _ in intersect(c.f, axis):
        line = cross(cert.point.coords, q.coords)
        out.append((q, line, intersection_multiplicity(c, line, q)))
    return out


@pytest.mark.parametrize("expr", [FERMAT, "X^3-Y*Z^2", "X^4+Y^4+Z^4", "X^5+Y^3*Z^2"])
def test_ramification_sum_at_most_one(expr):
    c = curve(expr)
    cert = standard_form(c, (1, 0, 0))
    es = [e for _, _, e in _axis_ramification(c, cert)]
    assert sum(Fraction(1, e) for e in es) <= 1
    ells = factor_multiplicities(cert.g_d)
    for e, ell in zip(sorted(es), sorted(ells, reverse=True)):
        assert e * ell >= cert.degree


@pytest.mark.parametrize("expr", [FERMAT, "X^4+Y^4+Z^4", "X^3*Z+Y^3*(Y+Z)", NODAL])
def test_ramification_constant_in_fibers(expr):
    c = curve(expr)
    cert = standard_form(c, (1, 0, 0))
    checked = 0
    for q, line, e in _axis_ramification(c, cert):
        if c.is_singular_at(q):
            continue
        hits = line_profile(c, Pt(line)).intersections
        # an inner center lies on every line of the pencil with multiplicity one
        mults = {h.multiplicity for h in hits if not (cert.kind == INNER and h.point.is_close(cert.point))}
        assert mults == {e}
        checked += 1
    assert checked > 0


def test_fermat_outer_confirmation(fermat):
    cert = standard_form(fermat, (1, 0, 0))
    rep = confirm_report(build_report(fermat, cert), fermat, fermat.dual.curve)
    assert rep.conjugate_on_dual is False
    assert rep.confirmed_order == 18 and rep.confirmed_group == "Z/3 x D_6"
    assert rep.bounds_hold() and not rep.confirmation.group.is_regular()
    assert rep.confirmation.group.has_elementary_abelian_square(3)
    # the sharper bound applies since f_P is Galois
    assert rep.confirmed_order <= rep.sharper_upper


@pytest.mark.parametrize(
    "expr, point, order, on_dual",
    [("X^3-Y*Z^2", (1, 0, 0), 3, False), ("X^3*Z-Y^4", (1, 0, 0), 3, True)],
)
def test_galois_dual_projection(expr, point, order, on_dual):
    c = curve(expr)
    rep = confirm_report(build_report(c, standard_form(c, point)), c, c.dual.curve)
    assert rep.confirmed_order == order and rep.confirmation.group.is_regular()
    assert rep.conjugate_on_dual is on_dual
    assert rep.prediction.verdict == GALOIS and rep.bounds_hold()


def test_report_json_schema(nodal):
    rep = find_extendable_galois_points(nodal)[0]
    js = rep.to_json()
    for key in ["point", "kind", "m", "transform", "G_m", "G_d", "conjugate_point", "f_P", "r", "n",
                "R_closure", "bounds", "prediction", "predicted_group", "confirmed_group", "confirmed_order"]:
        assert key in js


def test_verify_cubic_rejects_cusp():
    with pytest.raises(CuspidalCubicError):
        verify_cubic(curve("X^3-Y*Z^2"))


def test_verify_cubic_nodal(nodal):
    verdict, reports = verify_cubic(nodal)
    assert verdict["pass"] and verdict["clauses"]["2"]["status"] == "pass"
    assert [r.confirmed_group for r in reports] == ["D_8"] * 3
