"""Curve corpus files: one polynomial per line, '#' starts a comment."""
from __future__ import annotations

from pathlib import Path

from ..poly import parse_polynomial
from .plane import PlaneCurve

__all__ = ["read_corpus", "parse_corpus"]


def parse_corpus(text: str):
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def read_corpus(path, check_irreducible: bool = True) -> list[PlaneCurve]:
    return [
        PlaneCurve(parse_polynomial(expr), check_irreducible=check_irreducible, name=expr)
        for _, expr in parse_corpus(Path(path).read_text())
    ]
