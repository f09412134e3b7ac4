"""
Finite-dimensional Lie algebras given by sparse structure constants over the Gaussian
rationals, subalgebra selections, validation and the generic-rank counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from .linalg import generic_points
from .scalars import ZERO, format_scalar, to_scalar


class LieAlgebraError(ValueError):
    pass


class LabelCountError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """One failed defining identity; ``generators`` names the offending pair or triple."""

    kind: str
    generators: Tuple[str, ...]
    detail: str

    def __str__(self):
        return f"{self.kind} violated for ({', '.join(self.generators)}): {self.detail}"


def _add(vec: Dict[int, object], k: int, c) -> None:
    v = vec.get(k, ZERO) + c
    if v:
        vec[k] = v
    else:
        vec.pop(k, None)


@dataclass(frozen=True)
class LieAlgebra:
    """
    Structure constants C_ij^k with [X_i, X_j] = C_ij^k X_k, stored for i < j only.

    ``coords`` are the names of the linear coordinates on the dual space (by default the
    lowercased generator names); polynomials and reports use them.
    """

    names: Tuple[str, ...]
    constants: Tuple[Tuple[int, int, Tuple[Tuple[int, object], ...]], ...]
    coords: Tuple[str, ...] = ()
    title: str = ""
    defects: Tuple[Violation, ...] = ()
    _table: Dict[Tuple[int, int], Dict[int, object]] = field(
        default=None, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        if not self.names:
            raise LieAlgebraError("a Lie algebra needs at least one generator")
        if len(set(self.names)) != len(self.names):
            raise LieAlgebraError(f"generator names are not unique: {self.names}")
        if not self.coords:
            object.__setattr__(self, "coords", default_coords(self.names))
        if len(self.coords) != len(self.names):
            raise LieAlgebraError(
                f"{len(self.coords)} coordinate names given for {len(self.names)} generators"
            )
        table = {}
        for i, j, terms in self.constants:
            if not 0 <= i < j < self.dim:
                raise LieAlgebraError(f"bracket index pair ({i}, {j}) out of range or unordered")
            if any(not 0 <= k < self.dim for k, _ in terms):
                raise LieAlgebraError(f"bracket [{self.names[i]}, {self.names[j]}] leaves the algebra")
            table[(i, j)] = dict(terms)
        object.__setattr__(self, "_table", table)

    @classmethod
    def from_brackets(
        cls,
        names: Sequence[str],
        brackets: Iterable[Tuple[int, int, Mapping[int, object]]],
        coords: Optional[Sequence[str]] = None,
        title: str = "",
    ) -> "LieAlgebra":
        """
        Build from (i, j, {k: c}) records in any orientation. Pairs given in both orientations
        must agree up to sign; disagreements and nonzero [X_i, X_i] are kept as defects and
        surface in ``validate``.
        """
        names = tuple(names)
        given: Dict[Tuple[int, int], Dict[int, object]] = {}
        defects: List[Violation] = []
        for i, j, terms in brackets:
            bucket = given.setdefault((i, j), {})
            for k, c in terms.items():
                _add(bucket, k, to_scalar(c))
        upper: Dict[Tuple[int, int], Dict[int, object]] = {}
        for (i, j), terms in given.items():
            if i == j:
                if terms:
                    defects.append(Violation("antisymmetry", (names[i], names[i]), "nonzero self-bracket"))
                continue
            if i > j and (j, i) in given:
                if given[(j, i)] != {k: -c for k, c in terms.items()}:
                    defects.append(
                        Violation(
                            "antisymmetry",
                            (names[j], names[i]),
                            "[X_i, X_j] and [X_j, X_i] do not add up to zero",
                        )
                    )
                continue
            upper[(min(i, j), max(i, j))] = terms if i < j else {k: -c for k, c in terms.items()}
        constants = tuple(
            (i, j, tuple(sorted(terms.items())))
            for (i, j), terms in sorted(upper.items())
            if terms
        )
        return cls(
            names=names,
            constants=constants,
            coords=tuple(coords) if coords else (),
            title=title,
            defects=tuple(defects),
        )

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            if name in self.coords:
                return self.coords.index(name)
            raise LieAlgebraError(f"unknown generator {name!r}") from None

    def structure(self, i: int, j: int) -> Dict[int, object]:
        """[X_i, X_j] as a sparse map k -> C_ij^k (the antisymmetric half is synthesized)."""
        if i < j:
            return dict(self._table.get((i, j), {}))
        if i > j:
            return {k: -c for k, c in self._table.get((j, i), {}).items()}
        return {}

    def bracket(self, u: Mapping[int, object], v: Mapping[int, object]) -> Dict[int, object]:
        """Bracket of two elements given as sparse coordinate vectors."""
        out: Dict[int, object] = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.structure(i, j).items():
                    _add(out, k, a * b * c)
        return out

    def nonzero_pairs(self):
        return sorted(self._table)

    def restrict(self, indices: Sequence[int]) -> "LieAlgebra":
        """The span of the selected generators as a Lie algebra of its own."""
        position = {idx: n for n, idx in enumerate(indices)}
        records = []
        for a, b in itertools.combinations(indices, 2):
            terms = self.structure(a, b)
            if any(k not in position for k in terms):
                raise LieAlgebraError(
                    f"[{self.names[a]}, {self.names[b]}] leaves the span of the selection"
                )
            records.append((position[a], position[b], {position[k]: c for k, c in terms.items()}))
        return LieAlgebra.from_brackets(
            [self.names[i] for i in indices],
            records,
            coords=[self.coords[i] for i in indices],
            title=f"{self.title} restricted" if self.title else "",
        )


def default_coords(names: Sequence[str]) -> Tuple[str, ...]:
    coords = tuple(name.lower() for name in names)
    if len(set(coords)) != len(coords) or not all(c.isidentifier() for c in coords):
        return tuple(f"x{i + 1}" for i in range(len(names)))
    return coords


@dataclass(frozen=True)
class SubalgebraSpec:
    parent: LieAlgebra
    indices: Tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        indices = tuple(self.indices)
        object.__setattr__(self, "indices", indices)
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise LieAlgebraError(f"subalgebra indices must be strictly increasing: {indices}")
        if indices and not (0 <= indices[0] and indices[-1] < self.parent.dim):
            raise LieAlgebraError(f"subalgebra indices out of range: {indices}")

    @classmethod
    def from_names(cls, parent: LieAlgebra, names: Sequence[str], name: str = "") -> "SubalgebraSpec":
        return cls(parent, tuple(sorted(parent.index(n) for n in names)), name)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self.parent.names[i] for i in self.indices)

    @property
    def algebra(self) -> LieAlgebra:
        return self.parent.restrict(self.indices)

    def extended(self, extra: Sequence[str], name: str = "") -> "SubalgebraSpec":
        indices = set(self.indices) | {self.parent.index(n) for n in extra}
        return SubalgebraSpec(self.parent, tuple(sorted(indices)), name or f"{self.name}+{'+'.join(extra)}")


def validate(alg: LieAlgebra) -> List[Violation]:
    """Antisymmetry defects recorded at construction plus every failing Jacobi triple."""
    report = list(alg.defects)
    for i, j, k in itertools.combinations(range(alg.dim), 3):
        total: Dict[int, object] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, coeff in alg.structure(a, b).items():
                for l, coeff2 in alg.structure(m, c).items():
                    _add(total, l, coeff * coeff2)
        if total:
            detail = " + ".join(
                f"({format_scalar(c)})*{alg.names[l]}" for l, c in sorted(total.items())
            )
            report.append(
                Violation("jacobi", (alg.names[i], alg.names[j], alg.names[k]), f"cyclic sum = {detail}")
            )
    return report


def check_subalgebra(spec: SubalgebraSpec) -> bool:
    selected = set(spec.indices)
    for a, b in itertools.combinations(spec.indices, 2):
        if any(k not in selected for k in spec.parent.structure(a, b)):
            return False
    return True


def structure_matrix(alg: LieAlgebra, point: Sequence[object]) -> DomainMatrix:
    """The matrix (C_ij^k x_k) at a point of the dual space."""
    rows: Dict[int, Dict[int, object]] = {}
    for (i, j), terms in alg._table.items():
        value = ZERO
        for k, c in terms.items():
            value += c * point[k]
        if value:
            rows.setdefault(i, {})[j] = value
            rows.setdefault(j, {})[i] = -value
    return DomainMatrix(rows, (alg.dim, alg.dim), QQ_I)


def invariant_count(alg: LieAlgebra, draws: int = 3, seed: Optional[int] = None, sample_range: int = 50) -> int:
    """N(g) = dim - generic rank of (C_ij^k x_k), maximal rank over independent rational draws."""
    rank = 0
    for point in generic_points(alg.dim, draws=draws, seed=seed, sample_range=sample_range):
        rank = max(rank, structure_matrix(alg, point).rank())
    return alg.dim - rank


@dataclass(frozen=True)
class LabelCounts:
    i0: int
    n0: int
    M0: int
    ell: int
    ell_sub: int
    ell0: int


def _half(numerator: int, what: str) -> int:
    if numerator % 2:
        raise LabelCountError(f"{what} is not integral ({numerator}/2); check the invariant counts")
    return numerator // 2


def label_counts(
    alg: LieAlgebra,
    sub: SubalgebraSpec,
    ell0: int,
    draws: int = 3,
    seed: Optional[int] = None,
) -> LabelCounts:
    if ell0 < 0:
        raise LabelCountError(f"ell0 must be nonnegative, got {ell0}")
    ell = invariant_count(alg, draws=draws, seed=seed)
    ell_sub = invariant_count(sub.algebra, draws=draws, seed=seed)
    dim, dim_sub = alg.dim, len(sub.indices)
    i0 = _half(dim + ell, "i0")
    n0 = _half(dim - ell - dim_sub - ell_sub, "n0") + ell0
    M0 = dim - dim_sub + ell0
    return LabelCounts(i0=i0, n0=n0, M0=M0, ell=ell, ell_sub=ell_sub, ell0=ell0)


def solve_ell0(alg: LieAlgebra, sub: SubalgebraSpec, n0: int, draws: int = 3, seed: Optional[int] = None) -> int:
    """The ell0 for which ``label_counts`` yields the given n0."""
    base = label_counts(alg, sub, 0, draws=draws, seed=seed)
    ell0 = n0 - base.n0
    if ell0 < 0:
        raise LabelCountError(f"n0 = {n0} is below the ell0 = 0 value {base.n0}")
    return ell0
