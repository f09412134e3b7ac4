"""
Closing a commutant basis into a polynomial Poisson algebra: abstract generator symbols,
expression of brackets in those symbols, functional relations, central combinations and
basis changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring
from tqdm import tqdm

from .commutant import CommutantBasis, CommutantSolver
from .expressions import evaluate_expression, parse_definitions
from .linalg import NoSolutionsExist, independent_subset, nullspace, solve
from .poisson import format_polynomial, homogeneous_degree
from .utils import logger

SymbolMonomial = Tuple[int, ...]


class NotExpressibleError(ValueError):
    def __init__(self, message, pair=None, residual=None):
        super().__init__(message)
        self.pair = pair
        self.residual = residual


class BasisChangeError(ValueError):
    pass


class _NotExpressible:
    """Marker returned by ``express_bracket`` when more generators are needed."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NOT_EXPRESSIBLE"


NOT_EXPRESSIBLE = _NotExpressible()


@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    weight: int
    is_central: bool

    def __post_init__(self):
        if self.weight < 1:
            raise ValueError(f"generator {self.name} must have weight >= 1, got {self.weight}")


class SymbolRing:
    """
    Commutative polynomials in the basis symbols (abstract polynomials), graded by weight, with
    memoized evaluation into Pol(g*).
    """

    def __init__(self, basis: CommutantBasis):
        self.basis = basis
        self.poisson = basis.poisson
        self.symbols = [GeneratorSymbol(e.name, e.degree, e.is_central) for e in basis]
        self.ring, *gens = ring([s.name for s in self.symbols], QQ_I, grlex)
        self.gens = tuple(gens)
        self.weights = tuple(s.weight for s in self.symbols)
        self._values: Dict[SymbolMonomial, object] = {(0,) * len(self.symbols): self.poisson.one}
        self._generator_brackets: Dict[Tuple[int, int], object] = {}

    def __len__(self):
        return len(self.symbols)

    def index(self, name: str) -> int:
        for n, s in enumerate(self.symbols):
            if s.name == name:
                return n
        raise KeyError(name)

    def symbol(self, name: str):
        return self.gens[self.index(name)]

    def weight_of(self, monom: SymbolMonomial) -> int:
        return sum(e * w for e, w in zip(monom, self.weights))

    def weighted_degree(self, p):
        """Common weight of the terms of p; None if p mixes weights, 0 for constants."""
        weights = {self.weight_of(m) for m in p}
        if len(weights) != 1:
            return None
        return weights.pop()

    def monomials(self, weight: int, allowed: Optional[Sequence[int]] = None) -> List[SymbolMonomial]:
        """Symbol monomials of the given weight in canonical order (graded lex, descending)."""
        allowed = list(range(len(self.symbols))) if allowed is None else list(allowed)
        out = []

        def extend(pos: int, remaining: int, exps: List[int]):
            if remaining == 0:
                out.append(tuple(exps))
                return
            if pos == len(allowed):
                return
            idx = allowed[pos]
            w = self.weights[idx]
            for e in range(remaining // w, -1, -1):
                exps[idx] = e
                extend(pos + 1, remaining - e * w, exps)
            exps[idx] = 0

        extend(0, weight, [0] * len(self.symbols))
        return sorted(out, key=lambda m: (sum(m), m), reverse=True)

    def evaluate_monomial(self, monom: SymbolMonomial):
        value = self._values.get(monom)
        if value is None:
            k = next(i for i, e in enumerate(monom) if e)
            lower = list(monom)
            lower[k] -= 1
            value = self.evaluate_monomial(tuple(lower)) * self.basis.polys[k]
            self._values[monom] = value
        return value

    def evaluate(self, p):
        out = self.poisson.zero
        for monom, c in p.items():
            out += self.evaluate_monomial(monom) * c
        return out

    def from_vector(self, monomials: Sequence[SymbolMonomial], vector: Dict[int, object]):
        return self.ring.from_dict({monomials[pos]: c for pos, c in vector.items() if c})

    def generator_bracket(self, i: int, j: int):
        key = (min(i, j), max(i, j))
        value = self._generator_brackets.get(key)
        if value is None:
            polys = self.basis.polys
            value = self.poisson.lp_bracket(polys[key[0]], polys[key[1]])
            self._generator_brackets[key] = value
        return value if i <= j else -value

    def bracket_with_generator(self, monom: SymbolMonomial, g: int):
        """{eval(monom), p_g} by the Leibniz rule over cached generator brackets."""
        out = self.poisson.zero
        for k, e in enumerate(monom):
            if not e:
                continue
            rest = list(monom)
            rest[k] -= 1
            out += self.evaluate_monomial(tuple(rest)) * self.generator_bracket(k, g) * e
        return out

    def parse(self, text: str):
        env = {s.name: g for s, g in zip(self.symbols, self.gens)}
        return evaluate_expression(text, env, self.ring)

    def format(self, p) -> str:
        return format_polynomial(p)


def express_polynomial(symbols: SymbolRing, target, weight: int, allowed: Optional[Sequence[int]] = None):
    """
    Abstract polynomial of the given weight evaluating to ``target``. Raises NoSolutionsExist
    (residual in monomials of Pol(g*)) when the symbols do not suffice.
    """
    if not target:
        return symbols.ring.zero
    monomials = symbols.monomials(weight, allowed)
    columns = [dict(symbols.evaluate_monomial(m)) for m in monomials]
    return symbols.from_vector(monomials, solve(columns, dict(target)))


def express_bracket(symbols: SymbolRing, i: int, j: int):
    """{p_i, p_j} as an abstract polynomial of weight deg p_i + deg p_j - 1, or NOT_EXPRESSIBLE."""
    target = symbols.generator_bracket(i, j)
    weight = symbols.weights[i] + symbols.weights[j] - 1
    try:
        return express_polynomial(symbols, target, weight)
    except NoSolutionsExist:
        return NOT_EXPRESSIBLE


def find_relations(symbols: SymbolRing, weight: int) -> List[object]:
    """Basis of the abstract polynomials of the given weight that evaluate to zero."""
    monomials = symbols.monomials(weight)
    if not monomials:
        return []
    columns = [dict(symbols.evaluate_monomial(m)) for m in monomials]
    return [symbols.from_vector(monomials, vec) for vec in nullspace(columns)]


def find_central(symbols: SymbolRing, weight: int) -> List[object]:
    """
    Combinations of the given weight whose evaluation Poisson-commutes with every basis entry,
    one representative per independent evaluation (relations are quotiented out).
    """
    monomials = symbols.monomials(weight)
    if not monomials:
        return []
    columns = []
    for m in monomials:
        column = {}
        for g in range(len(symbols)):
            for key, c in symbols.bracket_with_generator(m, g).items():
                column[(g, key)] = c
        columns.append(column)
    kernel = [symbols.from_vector(monomials, vec) for vec in nullspace(columns)]
    values = [dict(symbols.evaluate(z)) for z in kernel]
    return [kernel[n] for n in independent_subset([], values)]


def linear_generators(symbols: SymbolRing, relation) -> List[int]:
    """Indices of the symbols that appear to the first power on their own in ``relation``."""
    out = []
    for monom in relation:
        if sum(monom) == 1:
            out.append(monom.index(1))
    return sorted(out)


@dataclass
class BasisChange:
    basis: CommutantBasis
    discarded: List[Tuple[str, str]]


def change_basis(
    basis: CommutantBasis,
    definitions: Sequence[Tuple[str, str]],
    solver: Optional[CommutantSolver] = None,
) -> BasisChange:
    """
    New basis from ``name = expression`` definitions over the old symbols.

    Old generators that appear linearly in a relation at their own degree are discarded
    (highest index first); every remaining old generator must be expressible in the new
    symbols, otherwise the change is not invertible.
    """
    old = SymbolRing(basis)
    polys, names = [], []
    for name, text in definitions:
        try:
            abstract = old.parse(text)
        except ValueError as exc:
            raise BasisChangeError(f"definition of {name}: {exc}") from exc
        value = old.evaluate(abstract)
        if not value:
            raise BasisChangeError(f"definition of {name} evaluates to zero")
        if not isinstance(homogeneous_degree(value), int):
            raise BasisChangeError(f"definition of {name} is not homogeneous")
        if solver is not None and not solver.annihilates(value):
            raise BasisChangeError(f"definition of {name} is not in the commutant")
        polys.append(value)
        names.append(name)

    discarded: List[Tuple[str, str]] = []
    dropped = set()
    for weight in sorted(set(old.weights)):
        for relation in find_relations(old, weight):
            candidates = [k for k in linear_generators(old, relation) if k not in dropped]
            if candidates:
                k = candidates[-1]
                dropped.add(k)
                discarded.append((basis.names[k], f"{old.format(relation)} = 0"))
                logger.log(f"discarding {basis.names[k]}: {old.format(relation)} = 0")

    new_basis = CommutantBasis.from_polynomials(basis.poisson, polys, names=names)
    new = SymbolRing(new_basis)
    for k, entry in enumerate(basis):
        if k in dropped:
            continue
        try:
            express_polynomial(new, entry.poly, entry.degree)
        except NoSolutionsExist as exc:
            raise BasisChangeError(
                f"{entry.name} is not a polynomial in {', '.join(names)}; the change is not invertible"
            ) from exc
    return BasisChange(new_basis, discarded)


def load_basis_change(path: str) -> List[Tuple[str, str]]:
    with open(path, "r", encoding="utf-8") as f:
        return parse_definitions(f.read())


def closes(basis: CommutantBasis) -> bool:
    """True iff every pairwise bracket of the basis is expressible in the basis symbols."""
    symbols = SymbolRing(basis)
    pairs = [(i, j) for i in range(len(symbols)) for j in range(i + 1, len(symbols))]
    for i, j in tqdm(pairs, desc="closure check", leave=False):
        if express_bracket(symbols, i, j) is NOT_EXPRESSIBLE:
            return False
    return True


def restricted_closure(basis: CommutantBasis, names: Sequence[str], max_count: int) -> Dict[Tuple[str, str], object]:
    """
    Brackets of the named subset expressed with symbol monomials of at most ``max_count``
    factors over the subset and the central symbols.
    """
    symbols = SymbolRing(basis)
    subset = [symbols.index(n) for n in names]
    allowed = sorted(set(subset) | {k for k, s in enumerate(symbols.symbols) if s.is_central})
    out = {}
    for a, i in enumerate(subset):
        for j in subset[a + 1:]:
            weight = symbols.weights[i] + symbols.weights[j] - 1
            monomials = [m for m in symbols.monomials(weight, allowed) if sum(m) <= max_count]
            columns = [dict(symbols.evaluate_monomial(m)) for m in monomials]
            target = symbols.generator_bracket(i, j)
            try:
                solution = solve(columns, dict(target))
            except NoSolutionsExist as exc:
                raise NotExpressibleError(
                    f"{{{basis.names[i]}, {basis.names[j]}}} needs more than {max_count} factors",
                    pair=(basis.names[i], basis.names[j]),
                    residual=basis.poisson.from_vector(exc.residual),
                ) from exc
            out[(basis.names[i], basis.names[j])] = symbols.from_vector(monomials, solution)
    return out
