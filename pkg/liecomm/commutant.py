"""
Degree-by-degree solution of the commutant system {x_alpha, p} = 0 (x_alpha running over the
subalgebra coordinates), extraction of the genuinely new generators and naming of the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from .lie_algebra import LieAlgebra, SubalgebraSpec
from .linalg import in_span, nullspace, rank, reduce_modulo
from .poisson import PoissonRing, homogeneous_degree, monomial_basis
from .utils import logger


@dataclass
class DegreeSolution:
    degree: int
    full_space: List[object]
    new_generators: List[object] = field(default_factory=list)
    monomials: int = 0
    conditions: int = 0
    product_rank: int = 0


@dataclass(frozen=True)
class BasisEntry:
    name: str
    poly: object
    degree: int
    is_central: bool


def generator_letter(degree: int, central: bool) -> str:
    letter = chr(ord("A") + degree - 1)
    return letter.lower() if central else letter


def assign_names(flags: Sequence[Tuple[int, bool]]) -> List[str]:
    """Names in discovery order: letter by degree, lowercase if central, numbered per letter."""
    counters: Dict[str, int] = {}
    names = []
    for degree, central in flags:
        letter = generator_letter(degree, central)
        counters[letter] = counters.get(letter, 0) + 1
        names.append(f"{letter}{counters[letter]}")
    return names


def centrality_flags(poisson: PoissonRing, polys: Sequence[object]) -> List[bool]:
    flags = [True] * len(polys)
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            if poisson.lp_bracket(polys[a], polys[b]):
                flags[a] = flags[b] = False
    return flags


class CommutantBasis:
    """Ordered named generators of a commutant together with the per-degree solver records."""

    def __init__(self, poisson: PoissonRing, entries: Sequence[BasisEntry], solutions: Optional[Dict[int, DegreeSolution]] = None):
        names = [e.name for e in entries]
        if len(set(names)) != len(names):
            raise ValueError(f"basis names are not unique: {names}")
        self.poisson = poisson
        self.entries = list(entries)
        self.solutions = dict(solutions or {})

    @classmethod
    def from_polynomials(cls, poisson: PoissonRing, polys: Sequence[object], names: Optional[Sequence[str]] = None, solutions=None) -> "CommutantBasis":
        """Degrees from the polynomials, centrality by pairwise brackets, names by convention unless given."""
        degrees = []
        for p in polys:
            d = homogeneous_degree(p)
            if not isinstance(d, int):
                raise ValueError(f"basis element {poisson.format(p)} is not homogeneous")
            degrees.append(d)
        flags = centrality_flags(poisson, polys)
        names = list(names) if names else assign_names(list(zip(degrees, flags)))
        entries = [BasisEntry(n, p, d, c) for n, p, d, c in zip(names, polys, degrees, flags)]
        return cls(poisson, entries, solutions)

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[BasisEntry]:
        return iter(self.entries)

    def __getitem__(self, key):
        if isinstance(key, int):
            return self.entries[key]
        for entry in self.entries:
            if entry.name == key:
                return entry
        raise KeyError(key)

    @property
    def names(self) -> List[str]:
        return [e.name for e in self.entries]

    @property
    def polys(self) -> List[object]:
        return [e.poly for e in self.entries]

    @property
    def degrees(self) -> List[int]:
        return [e.degree for e in self.entries]

    def central(self) -> List[BasisEntry]:
        return [e for e in self.entries if e.is_central]

    def non_central(self) -> List[BasisEntry]:
        return [e for e in self.entries if not e.is_central]


@dataclass(frozen=True)
class MatchResult:
    degree: Optional[int]
    homogeneous: bool
    annihilated: bool
    in_span: bool

    def __bool__(self):
        return self.homogeneous and self.annihilated and self.in_span


class CommutantSolver:
    def __init__(self, alg: LieAlgebra, sub: SubalgebraSpec, poisson: Optional[PoissonRing] = None):
        self.alg = alg
        self.sub = sub
        self.poisson = poisson or PoissonRing(alg)
        self._full: Dict[int, DegreeSolution] = {}

    def annihilates(self, p) -> bool:
        return all(not self.poisson.lp_bracket(self.poisson.gens[a], p) for a in self.sub.indices)

    def solve_degree(self, n: int) -> DegreeSolution:
        """Reduced echelon basis of the homogeneous degree-n solutions."""
        if n < 1:
            raise ValueError(f"degree must be at least 1, got {n}")
        if n in self._full:
            return self._full[n]
        monomials = monomial_basis(self.alg.dim, n)
        columns = []
        for monom in monomials:
            column = {}
            for alpha in self.sub.indices:
                for target, c in self.poisson.bracket_with_coordinate(alpha, monom).items():
                    column[(alpha, target)] = c
            columns.append(column)
        kernel = nullspace(columns)
        full = [self.poisson.from_vector({monomials[pos]: c for pos, c in vec.items()}) for vec in kernel]
        conditions = len({key for column in columns for key in column})
        solution = DegreeSolution(n, full, monomials=len(monomials), conditions=conditions)
        self._full[n] = solution
        return solution

    def products(self, n: int, lower: Sequence[object], lower_degrees: Sequence[int]) -> List[object]:
        """All degree-n products of two or more lower generators (repetition allowed)."""
        out = []

        def extend(start: int, remaining: int, count: int, acc):
            if remaining == 0:
                if count >= 2:
                    out.append(acc)
                return
            for idx in range(start, len(lower)):
                d = lower_degrees[idx]
                if d <= remaining:
                    extend(idx, remaining - d, count + 1, lower[idx] if acc is None else acc * lower[idx])

        extend(0, n, 0, None)
        return out

    def new_generators(self, n: int, lower: Sequence[object]) -> List[object]:
        """Complement, inside the degree-n solutions, of the span of products of ``lower``."""
        solution = self.solve_degree(n)
        lower_degrees = [homogeneous_degree(p) for p in lower]
        products = self.products(n, lower, lower_degrees)
        solution.product_rank = rank([dict(p) for p in products])
        order = monomial_basis(self.alg.dim, n)
        complement = reduce_modulo([dict(p) for p in products], [dict(p) for p in solution.full_space], order)
        solution.new_generators = [self.poisson.from_vector(v) for v in complement]
        return solution.new_generators

    def run(
        self,
        max_degree: int,
        auto_stop: bool = False,
        closed: Optional[Callable[[CommutantBasis], bool]] = None,
    ) -> CommutantBasis:
        """
        Union of the new generators over degrees 1..max_degree. With ``auto_stop`` the loop ends
        once two consecutive degrees bring nothing new and ``closed`` accepts the current basis.
        """
        if max_degree < 1:
            raise ValueError(f"max_degree must be at least 1, got {max_degree}")
        found: List[object] = []
        empty_streak = 0
        for n in tqdm(range(1, max_degree + 1), desc="commutant degree"):
            with logger.profile_kv("solve"):
                new = self.new_generators(n, found)
            solution = self._full[n]
            found.extend(new)
            logger.logkv("degree", n)
            logger.logkv("monomials", solution.monomials)
            logger.logkv("conditions", solution.conditions)
            logger.logkv("full_dim", len(solution.full_space))
            logger.logkv("product_rank", solution.product_rank)
            logger.logkv("new", len(new))
            logger.dumpkvs()
            empty_streak = 0 if new else empty_streak + 1
            if auto_stop and empty_streak >= 2 and found:
                current = CommutantBasis.from_polynomials(self.poisson, found)
                if closed is None or closed(current):
                    logger.log(f"auto-stop after degree {n}: two degrees without new generators")
                    break
        solutions = {d: s for d, s in self._full.items() if d <= n}
        return CommutantBasis.from_polynomials(self.poisson, found, solutions=solutions)

    def match(self, polys: Sequence[object]) -> List[MatchResult]:
        """Check published polynomials against the solver's solution spaces."""
        results = []
        for p in polys:
            d = homogeneous_degree(p)
            if not isinstance(d, int) or d < 1:
                results.append(MatchResult(d if isinstance(d, int) else None, False, False, False))
                continue
            annihilated = self.annihilates(p)
            spanned = in_span([dict(q) for q in self.solve_degree(d).full_space], dict(p))
            results.append(MatchResult(d, True, annihilated, spanned))
        return results


def functional_independence_count(basis: CommutantBasis, draws: int = 3, seed: Optional[int] = None) -> int:
    if not len(basis):
        raise ValueError("functional independence needs a nonempty basis")
    return basis.poisson.jacobian_rank(basis.polys, draws=draws, seed=seed)


def match_named_basis(alg: LieAlgebra, sub: SubalgebraSpec, user_polys: Sequence[object], solver: Optional[CommutantSolver] = None) -> List[MatchResult]:
    solver = solver or CommutantSolver(alg, sub)
    return solver.match(user_polys)


def strict_mode_report(poisson: PoissonRing, named: Sequence[Tuple[str, object]], extra: Sequence[str]) -> Dict[str, List[str]]:
    """For each polynomial, the extra coordinates it fails to Poisson-commute with."""
    report = {}
    for name, p in named:
        failing = [c for c in extra if poisson.lp_bracket(poisson.coordinate(c), p)]
        if failing:
            report[name] = failing
    return report


def commutes_with_algebra(poisson: PoissonRing, p) -> bool:
    return poisson.commutes_with_algebra(p)
