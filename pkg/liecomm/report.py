"""
Structured run reports (schema ``liecomm-report/1``) and their text and JSON renderings.

A report is a plain dict of sections; every polynomial is stored as its canonical string so
that two runs with the same configuration produce byte-identical output.
"""

from __future__ import annotations

import json
import os
from typing import Dict, List, Optional, Sequence

import jsonlines

from .commutant import CommutantBasis, MatchResult
from .lie_algebra import LabelCounts, LieAlgebra, SubalgebraSpec, Violation
from .poisson import format_polynomial
from .presentation import Presentation, cubic_coefficients, is_cubic_shape

SCHEMA = "liecomm-report/1"


def new_report(command: str, alg: LieAlgebra, sub: Optional[SubalgebraSpec], config: Dict[str, object]) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "algebra": {"title": alg.title, "dim": alg.dim, "names": list(alg.names)},
        "subalgebra": {"name": sub.name, "names": list(sub.names)} if sub is not None else None,
        "config": {k: config[k] for k in sorted(config)},
    }


def violations_section(violations: Sequence[Violation]) -> List[dict]:
    return [{"kind": v.kind, "generators": list(v.generators), "detail": v.detail} for v in violations]


def counts_section(N_g: int, N_sub: Optional[int], counts: Optional[LabelCounts]) -> dict:
    out = {"invariant_count": N_g, "subalgebra_invariant_count": N_sub}
    if counts is not None:
        out.update({"i0": counts.i0, "n0": counts.n0, "M0": counts.M0, "ell0": counts.ell0})
    return out


def degree_records(basis: CommutantBasis) -> List[dict]:
    records = []
    for degree in sorted(basis.solutions):
        s = basis.solutions[degree]
        records.append({
            "degree": degree,
            "monomials": s.monomials,
            "conditions": s.conditions,
            "full_dim": len(s.full_space),
            "product_rank": s.product_rank,
            "new": len(s.new_generators),
        })
    return records


def basis_section(basis: CommutantBasis, fi_count: int) -> dict:
    return {
        "count": len(basis),
        "degrees": basis.degrees,
        "functional_independence": fi_count,
        "generators": [
            {"name": e.name, "degree": e.degree, "central": e.is_central, "poly": basis.poisson.format(e.poly)}
            for e in basis
        ],
    }


def match_section(names: Sequence[str], results: Sequence[MatchResult]) -> List[dict]:
    return [
        {"name": n, "degree": r.degree, "homogeneous": r.homogeneous, "annihilated": r.annihilated,
         "in_span": r.in_span, "ok": bool(r)}
        for n, r in zip(names, results)
    ]


def presentation_section(pres: Presentation) -> dict:
    fmt = pres.symbols.format
    names = pres.names
    out = {
        "generators": [{"name": s.name, "weight": s.weight, "central": s.is_central} for s in pres.generators],
        "brackets": [
            {"pair": [names[i], names[j]], "value": fmt(value)} for (i, j), value in sorted(pres.brackets.items())
        ],
        "relations": [fmt(r) for r in pres.relations],
        "central": [fmt(z) for z in pres.central_combinations],
        "casimirs": [fmt(k) for k in pres.casimirs],
    }
    if is_cubic_shape(pres):
        out["cubic"] = {name: fmt(value) for name, value in cubic_coefficients(pres).items()}
    gf = pres.generating_function
    if gf is not None:
        out["generating_function"] = {
            "h": fmt(gf.h),
            "casimir": fmt(gf.casimir),
            "casimir_in_centrals": fmt(gf.casimir_in_centrals) if gf.casimir_in_centrals is not None else None,
        }
    return out


def symmetrized_section(sym) -> dict:
    algebra = sym.algebra
    return {
        "generators": {name: sym.env.format(element) for name, element in sorted(sym.generators.items())},
        "constants": {name: format_polynomial(value) for name, value in algebra.coefficients.items()},
        "classical_limit": {name: format_polynomial(value) for name, value in sym.classical_limit().items()},
        "casimir": algebra.format(algebra.casimir()) if algebra.has_casimir_formula else None,
    }


def _text_lines(value, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                head = ", ".join(f"{k}={_scalar_text(v)}" for k, v in item.items())
                lines.append(f"{pad}- {head}")
            else:
                lines.append(f"{pad}- {_scalar_text(item)}")
    else:
        lines.append(f"{pad}{_scalar_text(value)}")
    return lines


def _scalar_text(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_scalar_text(v) for v in value) + "]"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    return str(value)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "text":
        return "\n".join(_text_lines(report)) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def write_report(report: dict, fmt: str, out: str = "", degrees: Optional[List[dict]] = None) -> Optional[str]:
    """Write to ``out``/report.{txt,json} (and degrees.jsonl), or return the rendering when ``out`` is empty."""
    text = render(report, fmt)
    if not out:
        return text
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, "report.json" if fmt == "json" else "report.txt")
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    if degrees:
        with jsonlines.open(os.path.join(out, "degrees.jsonl"), mode="w") as writer:
            writer.write_all(degrees)
    return None
