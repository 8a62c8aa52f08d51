"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .curve import (
    NotOnCurveError,
    PlaneCurve,
    ProjectivePoint,
    ReducibleCurveError,
    SingularPointError,
    parse_corpus,
)
from .galois import (
    CuspidalCubicError,
    UnsupportedMultiplicityError,
    confirm_report,
    find_extendable_galois_points,
    verify_cubic,
)
from .monodromy import DEFAULT_SEED, TrackingError, ValidationError, monodromy_group
from .poly import NonHomogeneousError, ParseError, RootFindingError, parse_point, parse_polynomial

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
PRECISIONS = {"double": 53, "212": 212, "848": 848}


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    curves: list
    points: list = field(default_factory=list)
    precision: str = "double"
    seed: int = DEFAULT_SEED
    json: bool = False
    out: str | None = None
    confirm: bool = False
    on_dual: bool = False

    @property
    def bits(self) -> int:
        return PRECISIONS[self.precision]

    def provenance(self):
        return {"command": self.command, "seed": self.seed, "precision": self.precision, "version": __version__}


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _load_curves(args) -> list:
    if args.curve:
        exprs = [args.curve]
    else:
        try:
            text = Path(args.file).read_text()
        except OSError as err:
            raise InputError(f"cannot read {args.file}: {err}") from err
        exprs = [e for _, e in parse_corpus(text)]
        if not exprs:
            raise InputError(f"{args.file} contains no curves")
    curves = []
    for expr in exprs:
        try:
            curves.append(PlaneCurve(parse_polynomial(expr), name=expr))
        except ParseError as err:
            raise InputError(f"{err}\n  {err.text}\n  {' ' * err.position}^") from err
    return curves


def _point(text: str) -> ProjectivePoint:
    try:
        return ProjectivePoint(parse_point(text))
    except (ValueError, ZeroDivisionError) as err:
        raise InputError(f"bad point {text!r}: {err}") from err


# -- commands ------------------------------------------------------------------

def cmd_analyze(cfg: RunConfig):
    reports = [c.report() for c in cfg.curves]
    text = []
    for c, rep in zip(cfg.curves, reports):
        sing = rep["singularities"]
        kinds = ", ".join(f"{s['classification']} at {_pt(s['point'])}" for s in sing) or "smooth"
        text.append(
            f"curve {rep['curve']}\n  degree {rep['degree']}\n  singularities: {kinds}\n"
            f"  flexes: {len(rep['flexes'])}\n  genus: {rep['genus']}\n  dual degree: {rep['dual_degree']}"
        )
    return {"curves": reports}, "\n".join(text), EXIT_OK


def _show(p: ProjectivePoint) -> str:
    if p.exact and p.field is not None:
        approx = " : ".join(f"{z.real:.4g}{z.imag:+.4g}i" if abs(z.imag) > 1e-12 else f"{z.real:.4g}" for z in p.numeric())
        return f"{p} ~ ({approx})"
    return str(p)


def _pt(js):
    if "exact" in js:
        return "(" + " : ".join(js["exact"]) + ")"
    return "(" + " : ".join(f"{re:.6g}{im:+.6g}i" for re, im in js["numeric"]) + ")"


def cmd_dual(cfg: RunConfig):
    out, text, code = [], [], EXIT_OK
    for c in cfg.curves:
        d = c.dual
        out.append({
            "curve": str(c.f),
            "dual_degree": d.degree,
            "dual_curve": str(d.polynomial) if d.polynomial is not None else None,
            "exact": d.exact,
            "method": d.method,
            "residual": d.residual,
        })
        text.append(f"{c.f}\n  dual (degree {d.degree}, {'exact' if d.exact else 'numeric only'}): {d.polynomial}")
        if not d.exact:
            code = EXIT_VERIFY
    return {"duals": out}, "\n".join(text), code


def cmd_galois_points(cfg: RunConfig):
    out, text, code = [], [], EXIT_OK
    for c in cfg.curves:
        reports = find_extendable_galois_points(c, cfg.points, precision=cfg.bits, seed=cfg.seed)
        if cfg.confirm and reports:
            dual = c.dual.curve
            if dual is None:
                raise ArithmeticError("dual curve not certified; cannot confirm")
            for rep in reports:
                confirm_report(rep, c, dual, precision=cfg.bits, seed=cfg.seed)
                if not rep.bounds_hold() or rep.conjugate_on_dual is None:
                    code = EXIT_VERIFY
        out.append({
            "curve": str(c.f),
            "outer_search": "candidates-only",
            "reports": [r.to_json(include_certificate=cfg.confirm) for r in reports],
        })
        text.append(f"curve {c.f}: {len(reports)} extendable Galois point(s)")
        for r in reports:
            line = f"  {r.kind:5} {_show(r.point)}  conjugate {_show(r.conjugate)}  r={r.r} n={r.n} R={r.closure} bounds={r.bounds}"
            line += f"  prediction={r.prediction.verdict}"
            if r.predicted_group:
                line += f" ({r.predicted_group})"
            if r.confirmation is not None:
                line += f"  confirmed |G|={r.confirmed_order} {r.confirmed_group}"
            text.append(line)
    return {"curves": out}, "\n".join(text), code


def cmd_monodromy(cfg: RunConfig):
    if not cfg.points:
        raise InputError("monodromy needs --point")
    out, text = [], []
    for c in cfg.curves:
        target = c.dual.curve if cfg.on_dual else c
        if target is None:
            raise ArithmeticError("dual curve not certified")
        genus = c.genus if cfg.on_dual else None
        for p in cfg.points:
            res = monodromy_group(target, p, precision=cfg.bits, seed=cfg.seed, genus=genus)
            js = res.to_json()
            js["curve"] = str(target.f)
            js["point"] = p.to_json()
            js["on_dual"] = cfg.on_dual
            out.append(js)
            text.append(
                f"{'dual of ' if cfg.on_dual else ''}{c.f} from {p}: {res.group.degree} sheets, "
                f"|G| = {res.order}, {res.tag}; product check {res.certificate.product_check}"
            )
    return {"runs": out}, "\n".join(text), EXIT_OK


def cmd_verify_cubic(cfg: RunConfig):
    out, text, code = [], [], EXIT_OK
    for c in cfg.curves:
        verdict, reports = verify_cubic(c, precision=cfg.bits, seed=cfg.seed)
        verdict["reports"] = [r.to_json(include_certificate=True) for r in reports]
        out.append(verdict)
        text.append(f"curve {c.f}: {'PASS' if verdict['pass'] else 'FAIL'}")
        for k, clause in sorted(verdict["clauses"].items()):
            text.append(f"  clause ({k}): {clause['status']}")
        if not verdict["pass"]:
            code = EXIT_VERIFY
    return {"verdicts": out}, "\n".join(text), code


COMMANDS = {
    "analyze": cmd_analyze,
    "dual": cmd_dual,
    "galois-points": cmd_galois_points,
    "monodromy": cmd_monodromy,
    "verify-cubic": cmd_verify_cubic,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualgalois", description="Galois points, dual curves and projection monodromy.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--curve", help="homogeneous polynomial in X, Y, Z")
        src.add_argument("--file", help="corpus file, one polynomial per line")
        p.add_argument("--point", action="append", default=[], help='projective point "a:b:c" (repeatable)')
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--precision", choices=sorted(PRECISIONS), default="double")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--out", help="write output here instead of stdout")
        if name == "galois-points":
            p.add_argument("--confirm", action="store_true", help="confirm each report by monodromy on the dual")
        if name == "monodromy":
            p.add_argument("--on-dual", action="store_true", help="project the dual curve; --point is in dual coordinates")
    return parser


def run(argv=None):
    """Returns (exit code, rendered output)."""
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            curves=_load_curves(args),
            points=[_point(t) for t in args.point],
            precision=args.precision,
            seed=args.seed,
            json=args.json,
            out=args.out,
            confirm=getattr(args, "confirm", False),
            on_dual=getattr(args, "on_dual", False),
        )
        payload, text, code = COMMANDS[args.command](cfg)
    except (InputError, ParseError, NonHomogeneousError, ReducibleCurveError, SingularPointError,
            NotOnCurveError, UnsupportedMultiplicityError, CuspidalCubicError) as err:
        return EXIT_INPUT, _error(args, "input", err)
    except ValidationError as err:
        return EXIT_VERIFY, _error(args, "verification", err)
    except (TrackingError, RootFindingError, ArithmeticError) as err:
        return EXIT_NUMERIC, _error(args, "numerical", err)
    if args.json:
        payload["config"] = cfg.provenance()
        payload["exit_code"] = code
        return code, dumps(payload)
    return code, text + f"\n[seed {cfg.seed}, precision {cfg.precision}]\n"


def _error(args, kind, err):
    if args.json:
        return dumps({"error": {"kind": kind, "message": str(err)}, "config": {"command": args.command}})
    return f"{kind} error: {err}\n"


def main(argv=None) -> int:
    code, rendered = run(argv)
    out = None
    try:
        out = build_parser().parse_args(argv).out
    except SystemExit:
        pass
    if out:
        Path(out).write_text(rendered)
    else:
        stream = sys.stderr if code in (EXIT_INPUT, EXIT_NUMERIC) and not rendered.startswith("{") else sys.stdout
        stream.write(rendered)
    return code


if __name__ == "__main__":
    sys.exit(main())
