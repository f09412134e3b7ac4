"""
Presentations of polynomial Poisson algebras in abstract generator symbols: assembly from a
basis, concrete verification, cubic-algebra coefficients and the generating function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Rational
from tqdm import tqdm

from .closure import (
    GeneratorSymbol,
    NotExpressibleError,
    SymbolRing,
    express_polynomial,
    find_central,
    find_relations,
)
from .commutant import CommutantBasis
from .lie_algebra import Violation
from .linalg import NoSolutionsExist
from .scalars import scalar
from .utils import logger

CUBIC_COEFFICIENTS = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta",
                      "lambda", "mu", "nu", "xi", "rho", "sigma", "chi")

# exponent of (A, B) in {A, C} and {B, C} -> coefficient name and scale
_AC_TERMS = {(2, 0): ("alpha", 1), (0, 2): ("beta", 1), (1, 1): ("gamma", Rational(1, 2)),
             (1, 0): ("delta", 1), (0, 1): ("epsilon", 1), (0, 0): ("zeta", 1)}
_BC_TERMS = {(3, 0): ("lambda", 1), (2, 0): ("mu", 1), (0, 2): ("nu", 1), (1, 1): ("xi", Rational(1, 2)),
             (1, 0): ("rho", 1), (0, 1): ("sigma", 1), (0, 0): ("chi", 1)}


class GeneratingFunctionError(ValueError):
    pass


@dataclass
class GeneratingFunction:
    h: object
    casimir: object
    casimir_in_centrals: Optional[object]


@dataclass
class Presentation:
    symbols: SymbolRing
    brackets: Dict[Tuple[int, int], object]
    relations: List[object] = field(default_factory=list)
    central_combinations: List[object] = field(default_factory=list)
    casimirs: List[object] = field(default_factory=list)
    generating_function: Optional[GeneratingFunction] = None

    @property
    def generators(self) -> List[GeneratorSymbol]:
        return self.symbols.symbols

    @property
    def names(self) -> List[str]:
        return [s.name for s in self.generators]

    def bracket(self, a: str, b: str):
        i, j = self.symbols.index(a), self.symbols.index(b)
        if i == j:
            return self.symbols.ring.zero
        if i < j:
            return self.brackets[(i, j)]
        return -self.brackets[(j, i)]

    def non_central(self) -> List[int]:
        return [k for k, s in enumerate(self.generators) if not s.is_central]

    def central(self) -> List[int]:
        return [k for k, s in enumerate(self.generators) if s.is_central]

    def abstract_bracket(self, f, k: int):
        """{F, s_k} for an abstract polynomial F, by the Leibniz rule over the bracket table."""
        out = self.symbols.ring.zero
        for i, gen in enumerate(self.symbols.gens):
            if i == k:
                continue
            entry = self.brackets[(i, k)] if i < k else -self.brackets[(k, i)]
            if entry:
                derivative = f.diff(gen)
                if derivative:
                    out += derivative * entry
        return out


def build_presentation(
    basis: CommutantBasis,
    relation_weights: Optional[Sequence[int]] = None,
    central_weights: Optional[Sequence[int]] = None,
) -> Presentation:
    """
    Express every pairwise bracket of ``basis`` in its own symbols and collect relations and
    central combinations. Three-generator cubic algebras also get their generating function.
    """
    symbols = SymbolRing(basis)
    brackets = {}
    pairs = list(itertools.combinations(range(len(symbols)), 2))
    for i, j in tqdm(pairs, desc="brackets"):
        weight = symbols.weights[i] + symbols.weights[j] - 1
        target = symbols.generator_bracket(i, j)
        try:
            brackets[(i, j)] = express_polynomial(symbols, target, weight)
        except NoSolutionsExist as exc:
            a, b = basis.names[i], basis.names[j]
            logger.log(f"{{{a}, {b}}} is not expressible at weight {weight}")
            raise NotExpressibleError(
                f"{{{a}, {b}}} is not a polynomial in the basis; rerun with a higher max_degree",
                pair=(a, b),
                residual=basis.poisson.from_vector(exc.residual),
            ) from exc

    weights = sorted(set(symbols.weights))
    if relation_weights is None:
        relation_weights = weights + ([weights[-1] + 1] if weights else [])
    relations = []
    for w in relation_weights:
        found = find_relations(symbols, w)
        logger.logkv("relation_weight", w)
        logger.logkv("relations", len(found))
        logger.dumpkvs()
        relations.extend(found)

    if central_weights is None:
        central_weights = sorted({symbols.weights[k] for k, s in enumerate(symbols.symbols) if not s.is_central})
    central_idx = {k for k, s in enumerate(symbols.symbols) if s.is_central}
    centrals = []
    for w in central_weights:
        for z in find_central(symbols, w):
            # combinations of central symbols alone carry no new information
            if any(monom[k] for monom in z for k in range(len(symbols)) if k not in central_idx):
                centrals.append(z)
        logger.logkv("central_weight", w)
        logger.logkv("central", len(centrals))
        logger.dumpkvs()

    pres = Presentation(symbols, brackets, relations, centrals)
    if is_cubic_shape(pres):
        pres.generating_function = casimir_from_h(pres)
        pres.casimirs.append(pres.generating_function.casimir)
    return pres


def is_cubic_shape(pres: Presentation) -> bool:
    """Three non-central generators A < B < C with {A, B} = C and {A, C}, {B, C} free of C."""
    nc = pres.non_central()
    if len(nc) != 3:
        return False
    a, b, c = nc
    if pres.brackets[(a, b)] != pres.symbols.gens[c]:
        return False
    return all(not monom[c] for key in ((a, c), (b, c)) for monom in pres.brackets[key])


def _split(pres: Presentation, poly, a: int, b: int, c: int):
    groups: Dict[Tuple[int, int, int], object] = {}
    ring = pres.symbols.ring
    for monom, coeff in poly.items():
        key = (monom[a], monom[b], monom[c])
        rest = list(monom)
        rest[a] = rest[b] = rest[c] = 0
        groups[key] = groups.get(key, ring.zero) + ring.from_dict({tuple(rest): coeff})
    return groups


def cubic_coefficients(pres: Presentation) -> Dict[str, object]:
    """
    The central-valued coefficients of a cubic algebra

        {A, C} = alpha A^2 + beta B^2 + gamma {A, B}_+ + delta A + epsilon B + zeta
        {B, C} = lambda A^3 + mu A^2 + nu B^2 + xi {A, B}_+ + rho A + sigma B + chi

    where {A, B}_+ = 2AB in the commutative setting.
    """
    if not is_cubic_shape(pres):
        raise ValueError("the presentation is not a three-generator cubic algebra")
    a, b, c = pres.non_central()
    coefficients = {name: pres.symbols.ring.zero for name in CUBIC_COEFFICIENTS}
    for key, table in (((a, c), _AC_TERMS), ((b, c), _BC_TERMS)):
        for (ea, eb, ec), value in _split(pres, pres.brackets[key], a, b, c).items():
            if ec or (ea, eb) not in table:
                pair = "/".join(pres.names[k] for k in key)
                raise ValueError(f"term A^{ea} B^{eb} C^{ec} in {{{pair}}} is outside the cubic form")
            name, scale = table[(ea, eb)]
            coefficients[name] = value * scalar(scale)
    return coefficients


def _integrate(poly, k: int):
    ring = poly.ring
    terms = {}
    for monom, coeff in poly.items():
        exps = list(monom)
        exps[k] += 1
        terms[tuple(exps)] = coeff * scalar(Rational(1, exps[k]))
    return ring.from_dict(terms)


def casimir_from_h(pres: Presentation) -> GeneratingFunction:
    """
    Reconstruct h(A, B) with {A, C} = dh/dB and {B, C} = -dh/dA, form K = C^2 - 2h, check that
    K is central in Pol(g*) and rewrite it in the central symbols when possible.
    """
    if not is_cubic_shape(pres):
        raise GeneratingFunctionError("a generating function needs three generators with {A, B} = C")
    a, b, c = pres.non_central()
    gens = pres.symbols.gens
    p, q = pres.brackets[(a, c)], pres.brackets[(b, c)]
    h1 = _integrate(p, b)
    remainder = -q - h1.diff(gens[a])
    if any(monom[b] for monom in remainder):
        raise GeneratingFunctionError(
            f"mixed partials disagree: d{{A,C}}/dA + d{{B,C}}/dB = {pres.symbols.format(-remainder.diff(gens[b]))}"
        )
    h = h1 + _integrate(remainder, a)
    casimir = gens[c] ** 2 - h * 2

    value = pres.symbols.evaluate(casimir)
    poisson = pres.symbols.poisson
    for k in (a, b, c):
        if poisson.lp_bracket(value, pres.symbols.basis.polys[k]):
            raise GeneratingFunctionError(f"K = C^2 - 2h does not commute with {pres.names[k]}")

    in_centrals = None
    try:
        in_centrals = express_polynomial(pres.symbols, value, 2 * pres.symbols.weights[c], pres.central())
    except NoSolutionsExist:
        logger.log("K is not a polynomial in the central symbols")
    return GeneratingFunction(h, casimir, in_centrals)


def verify_presentation(pres: Presentation, jacobi_limit: int = 5) -> List[Violation]:
    """
    Concrete check of every entry by evaluation in Pol(g*). The Jacobi sweep over triples of
    non-central generators runs only when there are at most ``jacobi_limit`` of them.
    """
    symbols = pres.symbols
    poisson = symbols.poisson
    polys = symbols.basis.polys
    names = pres.names
    report = []
    for (i, j), entry in sorted(pres.brackets.items()):
        if symbols.evaluate(entry) != symbols.generator_bracket(i, j):
            report.append(Violation("bracket", (names[i], names[j]), f"{symbols.format(entry)} does not evaluate to the bracket"))
        expected = symbols.weights[i] + symbols.weights[j] - 1
        if entry and symbols.weighted_degree(entry) != expected:
            report.append(Violation("grading", (names[i], names[j]), f"expected weighted degree {expected}"))
    for relation in pres.relations:
        if symbols.evaluate(relation):
            report.append(Violation("relation", (), f"{symbols.format(relation)} is not zero"))
    for kind, elements in (("central", pres.central_combinations), ("casimir", pres.casimirs)):
        for z in elements:
            value = symbols.evaluate(z)
            for k, g in enumerate(polys):
                if poisson.lp_bracket(value, g):
                    report.append(Violation(kind, (names[k],), f"{symbols.format(z)} does not commute"))
    gf = pres.generating_function
    if gf is not None:
        a, b, c = pres.non_central()
        gens = symbols.gens
        if gf.h.diff(gens[b]) != pres.brackets[(a, c)] or -gf.h.diff(gens[a]) != pres.brackets[(b, c)]:
            report.append(Violation("generating function", (names[a], names[b], names[c]), "h does not reproduce the brackets"))
    nc = pres.non_central()
    if len(nc) <= jacobi_limit:
        for i, j, k in itertools.combinations(nc, 3):
            total = (
                pres.abstract_bracket(pres.abstract_bracket(symbols.gens[j], k), i)
                + pres.abstract_bracket(pres.abstract_bracket(symbols.gens[k], i), j)
                + pres.abstract_bracket(pres.abstract_bracket(symbols.gens[i], j), k)
            )
            if total and symbols.evaluate(total):
                report.append(Violation("jacobi", (names[i], names[j], names[k]), "cyclic sum does not vanish"))
    return report
