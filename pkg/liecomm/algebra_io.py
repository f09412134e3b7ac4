"""
JSON algebra definition files.

    {
      "title": "su(3)",                      # optional
      "dim": 8,
      "names": ["L1", ..., "T23"],
      "coords": ["l1", ..., "t23"],          # optional
      "brackets": [{"i": 1, "j": 2, "k": 3, "re": "0", "im": "1"}, ...],
      "subalgebras": {"so3": [1, 2, 3]}
    }

Indices are 1-based; a record means [X_i, X_j] contains (re + im*i) X_k. ``re`` and ``im``
are integers or rational strings such as "-1/2". Records for the same (i, j, k) add up.
"""

from __future__ import annotations

import json
from typing import Dict, List, Tuple

from .lie_algebra import LieAlgebra, LieAlgebraError, SubalgebraSpec
from .scalars import format_rational, re_part, im_part, scalar


def algebra_from_dict(data: dict) -> Tuple[LieAlgebra, Dict[str, SubalgebraSpec]]:
    try:
        names = list(data["names"])
        dim = int(data.get("dim", len(names)))
        records = data.get("brackets", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise LieAlgebraError(f"malformed algebra definition: {exc}") from exc
    if dim != len(names):
        raise LieAlgebraError(f"dim is {dim} but {len(names)} names are given")
    brackets = []
    for n, record in enumerate(records, start=1):
        try:
            i, j, k = int(record["i"]) - 1, int(record["j"]) - 1, int(record["k"]) - 1
            value = scalar(str(record.get("re", 0)), str(record.get("im", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise LieAlgebraError(f"bracket record {n}: {exc}") from exc
        if not all(0 <= x < dim for x in (i, j, k)):
            raise LieAlgebraError(f"bracket record {n}: index out of range 1..{dim}")
        brackets.append((i, j, {k: value}))
    alg = LieAlgebra.from_brackets(names, brackets, coords=data.get("coords"), title=data.get("title", ""))

    subalgebras = {}
    for sub_name, indices in data.get("subalgebras", {}).items():
        idx = [int(x) - 1 for x in indices]
        if not all(0 <= x < dim for x in idx):
            raise LieAlgebraError(f"subalgebra {sub_name}: index out of range 1..{dim}")
        subalgebras[sub_name] = SubalgebraSpec(alg, tuple(sorted(idx)), sub_name)
    return alg, subalgebras


def algebra_to_dict(alg: LieAlgebra, subalgebras: Dict[str, SubalgebraSpec] = None) -> dict:
    brackets: List[dict] = []
    for i, j, terms in alg.constants:
        for k, c in terms:
            brackets.append({
                "i": i + 1,
                "j": j + 1,
                "k": k + 1,
                "re": format_rational(re_part(c)),
                "im": format_rational(im_part(c)),
            })
    data = {"title": alg.title, "dim": alg.dim, "names": list(alg.names), "coords": list(alg.coords),
            "brackets": brackets}
    data["subalgebras"] = {name: [x + 1 for x in spec.indices] for name, spec in (subalgebras or {}).items()}
    return data


def load_algebra(path: str) -> Tuple[LieAlgebra, Dict[str, SubalgebraSpec]]:
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise LieAlgebraError(f"{path}: {exc}") from exc
    return algebra_from_dict(data)


def dump_algebra(alg: LieAlgebra, path: str, subalgebras: Dict[str, SubalgebraSpec] = None) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(algebra_to_dict(alg, subalgebras), f, indent=2)
