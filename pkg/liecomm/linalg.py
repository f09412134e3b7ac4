"""
Exact sparse linear algebra over the Gaussian rationals.

Vectors are sparse dicts ``key -> scalar``. The helpers translate them into ``DomainMatrix``
objects over ``QQ_I`` so that sympy does the elimination. Column order, and hence the choice
of pivots, follows the optional ``order`` of keys and then first appearance.
"""

from __future__ import annotations

from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from .scalars import ZERO

SparseVector = Dict[Hashable, object]
Row = Dict[int, object]


class NoSolutionsExist(ValueError):
    """The linear system is inconsistent; ``residual`` is the target reduced modulo the span."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual or {}


def _matrix(rows: Sequence[Row], ncols: int) -> DomainMatrix:
    data = {i: dict(row) for i, row in enumerate(rows) if row}
    return DomainMatrix(data, (len(rows), ncols), QQ_I)


def rref_rows(rows: Sequence[Row], ncols: int) -> Tuple[List[Row], Tuple[int, ...]]:
    """Reduced row echelon form of sparse integer-keyed rows; zero rows are dropped."""
    rows = [row for row in rows if row]
    if not rows:
        return [], ()
    reduced, pivots = _matrix(rows, ncols).rref()
    sdm = reduced.to_sparse().rep
    out = [dict(sdm[i]) for i in sorted(sdm) if sdm[i]]
    return out, tuple(pivots)


def _key_index(
    vectors: Sequence[SparseVector],
    extra: Sequence[SparseVector] = (),
    order: Optional[Sequence[Hashable]] = None,
) -> Dict[Hashable, int]:
    index: Dict[Hashable, int] = {key: n for n, key in enumerate(order or ())}
    for v in list(vectors) + list(extra):
        for key in v:
            if key not in index:
                index[key] = len(index)
    return index


def _encode(v: SparseVector, index: Dict[Hashable, int]) -> Row:
    return {index[key]: c for key, c in v.items() if c}


def _reduce(row: Row, echelon: Sequence[Row], pivots: Sequence[int]) -> Row:
    """Eliminate the pivot columns of a reduced echelon basis from ``row``."""
    out = dict(row)
    for basis_row, p in zip(echelon, pivots):
        c = out.get(p)
        if not c:
            continue
        for col, value in basis_row.items():
            v = out.get(col, ZERO) - c * value
            if v:
                out[col] = v
            else:
                out.pop(col, None)
    return out


def rank(vectors: Sequence[SparseVector]) -> int:
    index = _key_index(vectors)
    rows = [row for row in (_encode(v, index) for v in vectors) if row]
    if not rows:
        return 0
    return _matrix(rows, len(index)).rank()


def _equations(columns: Sequence[SparseVector], target: Optional[SparseVector] = None) -> List[Row]:
    """Transpose: one sparse equation row per key, unknown n in column n, target in the last."""
    index = _key_index(columns, [target] if target else [])
    equations: Dict[int, Row] = {}
    for col, vector in enumerate(columns):
        for key, c in vector.items():
            if c:
                equations.setdefault(index[key], {})[col] = c
    if target:
        for key, c in target.items():
            if c:
                equations.setdefault(index[key], {})[len(columns)] = c
    return list(equations.values())


def nullspace(columns: Sequence[SparseVector]) -> List[Row]:
    """
    Kernel of the map sending unknown n to ``columns[n]``. Returned vectors are indexed by
    unknown position and are in reduced echelon form in that order.
    """
    n = len(columns)
    reduced, pivots = rref_rows(_equations(columns), n)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = {free: QQ_I.one}
        for row, p in zip(reduced, pivots):
            c = row.get(free)
            if c:
                vec[p] = -c
        basis.append(vec)
    echelon, _ = rref_rows(basis, n)
    return echelon


def solve(columns: Sequence[SparseVector], target: SparseVector) -> Row:
    """
    A solution x of sum_n x_n columns[n] = target. Free unknowns are set to zero, so the
    support sits on the earliest independent columns.
    """
    n = len(columns)
    if not any(target.values()):
        return {}
    reduced, pivots = rref_rows(_equations(columns, target), n + 1)
    if n in pivots:
        raise NoSolutionsExist("target is not in the span of the columns", residual(columns, target))
    solution = {}
    for row, p in zip(reduced, pivots):
        c = row.get(n)
        if c:
            solution[p] = c
    return solution


def residual(
    vectors: Sequence[SparseVector],
    target: SparseVector,
    order: Optional[Sequence[Hashable]] = None,
) -> SparseVector:
    """``target`` reduced modulo the span of ``vectors``."""
    index = _key_index(vectors, [target], order)
    keys = list(index)
    echelon, pivots = rref_rows([_encode(v, index) for v in vectors], len(index))
    out = _reduce(_encode(target, index), echelon, pivots)
    return {keys[col]: c for col, c in out.items()}


def in_span(vectors: Sequence[SparseVector], target: SparseVector) -> bool:
    return not residual(vectors, target)


def independent_subset(base: Sequence[SparseVector], candidates: Sequence[SparseVector]) -> List[int]:
    """Indices of the candidates that, taken greedily in order, raise the rank over ``base``."""
    index = _key_index(base, candidates)
    echelon, pivots = rref_rows([_encode(v, index) for v in base], len(index))
    chosen: List[int] = []
    for n, vector in enumerate(candidates):
        if _reduce(_encode(vector, index), echelon, pivots):
            chosen.append(n)
            echelon, pivots = rref_rows(echelon + [_encode(vector, index)], len(index))
    return chosen


def reduce_modulo(
    vectors: Sequence[SparseVector],
    targets: Sequence[SparseVector],
    order: Optional[Sequence[Hashable]] = None,
) -> List[SparseVector]:
    """
    Normal forms of ``targets`` modulo span(``vectors``), brought to reduced echelon form.
    Zero normal forms drop out; the result spans a complement of span(vectors) inside
    span(vectors + targets).
    """
    index = _key_index(vectors, targets, order)
    keys = list(index)
    echelon, pivots = rref_rows([_encode(v, index) for v in vectors], len(index))
    normal_forms = [_reduce(_encode(t, index), echelon, pivots) for t in targets]
    complement, _ = rref_rows(normal_forms, len(index))
    return [{keys[col]: c for col, c in row.items()} for row in complement]


def generic_points(dim: int, draws: int = 3, seed: Optional[int] = None, sample_range: int = 50):
    """Independent rational points p/q with |p| <= sample_range, 1 <= q <= sample_range."""
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(draws):
        numerators = rng.integers(-sample_range, sample_range + 1, size=dim)
        denominators = rng.integers(1, sample_range + 1, size=dim)
        points.append(
            [QQ_I(QQ(int(p), int(q)), QQ(0)) for p, q in zip(numerators, denominators)]
        )
    return points
