"""
Noncommutative layer: ordered (PBW) normal forms in filtered algebras given by swap rules,
the universal enveloping algebra U(g), the symmetrization map and commutator expressions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Rational
from sympy.polys.domains import QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring
from sympy.utilities.iterables import multiset_permutations
from tqdm import tqdm

from .closure import NotExpressibleError
from .expressions import parse_nc_terms
from .lie_algebra import LieAlgebra, Violation
from .linalg import NoSolutionsExist, solve
from .poisson import format_coefficient, format_polynomial
from .scalars import scalar, to_scalar

Word = Tuple[int, ...]

SYMMETRIZE_MAX_DEGREE = 6


class NCPolynomial(dict):
    """Sparse map word -> coefficient; ``normalized`` once every word is non-decreasing."""

    def __init__(self, terms=(), normalized: bool = False):
        super().__init__(terms)
        self.normalized = normalized

    def degree(self) -> int:
        return max((len(w) for w in self), default=0)


def _accumulate(out: Dict[Word, object], word: Word, c) -> None:
    v = out.get(word)
    v = c if v is None else v + c
    if v:
        out[word] = v
    else:
        out.pop(word, None)


class RewritingAlgebra:
    """
    Associative algebra on ordered letters 0 < 1 < ... with rewriting rules
    x_b x_a -> x_a x_b + swap(b, a) for b > a. Normal forms are computed by appending letters
    one at a time to normal words; (word, letter) results are memoized.
    """

    def __init__(self, names: Sequence[str], weights: Optional[Sequence[int]] = None):
        self.names = tuple(names)
        self.weights = tuple(weights) if weights else (1,) * len(self.names)
        self._appended: Dict[Tuple[Word, int], Dict[Word, object]] = {}

    one = QQ_I.one

    def coerce(self, c):
        return to_scalar(c)

    def swap(self, b: int, a: int) -> Dict[Word, object]:
        raise NotImplementedError

    def weight(self, word: Word) -> int:
        return sum(self.weights[k] for k in word)

    def _append(self, word: Word, x: int) -> Dict[Word, object]:
        key = (word, x)
        cached = self._appended.get(key)
        if cached is not None:
            return cached
        if not word or word[-1] <= x:
            out = {word + (x,): self.one}
        else:
            prefix, y = word[:-1], word[-1]
            out: Dict[Word, object] = {}
            for u, c in self._append(prefix, x).items():
                for v, d in self._append(u, y).items():
                    _accumulate(out, v, c * d)
            for v, d in self.swap(y, x).items():
                for u, e in self.mul_words(prefix, v).items():
                    _accumulate(out, u, d * e)
        self._appended[key] = out
        return out

    def mul_words(self, u: Word, v: Word) -> Dict[Word, object]:
        """Normal form of u*v for a normal word u."""
        current: Dict[Word, object] = {u: self.one}
        for letter in v:
            nxt: Dict[Word, object] = {}
            for w, c in current.items():
                for t, d in self._append(w, letter).items():
                    _accumulate(nxt, t, c * d)
            current = nxt
        return current

    def normalize(self, p: Dict[Word, object]) -> NCPolynomial:
        if isinstance(p, NCPolynomial) and p.normalized:
            return p
        out: Dict[Word, object] = {}
        for word, c in p.items():
            for t, d in self.mul_words((), word).items():
                _accumulate(out, t, c * d)
        return NCPolynomial(out, normalized=True)

    def mul(self, p: Dict[Word, object], q: Dict[Word, object]) -> NCPolynomial:
        p, q = self.normalize(p), self.normalize(q)
        out: Dict[Word, object] = {}
        for u, c in p.items():
            for v, d in q.items():
                for t, e in self.mul_words(u, v).items():
                    _accumulate(out, t, c * d * e)
        return NCPolynomial(out, normalized=True)

    def add(self, *parts: Dict[Word, object]) -> NCPolynomial:
        out: Dict[Word, object] = {}
        normalized = True
        for p in parts:
            normalized = normalized and getattr(p, "normalized", False)
            for w, c in p.items():
                _accumulate(out, w, c)
        return NCPolynomial(out, normalized=normalized)

    def scale(self, p: Dict[Word, object], c) -> NCPolynomial:
        c = self.coerce(c)
        out = {}
        for w, d in p.items():
            v = d * c
            if v:
                out[w] = v
        return NCPolynomial(out, normalized=getattr(p, "normalized", False))

    def commutator(self, p, q) -> NCPolynomial:
        return self.add(self.mul(p, q), self.scale(self.mul(q, p), -1))

    def letter(self, name: str) -> NCPolynomial:
        return NCPolynomial({(self.names.index(name),): self.one}, normalized=True)

    def constant(self, c) -> NCPolynomial:
        c = self.coerce(c)
        return NCPolynomial({(): c} if c else {}, normalized=True)

    def power(self, p, n: int) -> NCPolynomial:
        out = self.constant(1)
        for _ in range(n):
            out = self.mul(out, p)
        return out

    def leading_part(self, p: Dict[Word, object], weight: int) -> NCPolynomial:
        return NCPolynomial({w: c for w, c in p.items() if self.weight(w) == weight}, normalized=getattr(p, "normalized", False))

    def format_word(self, word: Word) -> str:
        parts = []
        for k, group in itertools.groupby(word):
            e = len(list(group))
            parts.append(self.names[k] if e == 1 else f"{self.names[k]}^{e}")
        return "*".join(parts)

    def format_coefficient(self, c, has_word: bool) -> Tuple[str, str]:
        return format_coefficient(c, has_word)

    def format(self, p: Dict[Word, object]) -> str:
        if not p:
            return "0"
        pieces = []
        for word in sorted(p, key=lambda w: (-self.weight(w), w)):
            sign, body = self.format_coefficient(p[word], bool(word))
            text = self.format_word(word)
            term = f"{body}*{text}" if body and text else (body or text)
            if not pieces:
                pieces.append(term if sign == "+" else f"-{term}")
            else:
                pieces.append(f" {sign} {term}")
        return "".join(pieces)

    def parse(self, text: str) -> NCPolynomial:
        """Read an expression in the letters (order significant) and normalize it."""
        out: Dict[Word, object] = {}
        for c, letters in parse_nc_terms(text, self.names):
            _accumulate(out, tuple(self.names.index(n) for n in letters), self.coerce(c))
        return self.normalize(NCPolynomial(out))


class EnvelopingAlgebra(RewritingAlgebra):
    """U(g) in the PBW basis of the listed generator order: X_b X_a = X_a X_b + [X_b, X_a]."""

    def __init__(self, alg: LieAlgebra):
        super().__init__(alg.names)
        self.alg = alg

    def swap(self, b: int, a: int) -> Dict[Word, object]:
        return {(k,): c for k, c in self.alg.structure(b, a).items()}

    def generator(self, i: int) -> NCPolynomial:
        return NCPolynomial({(i,): self.one}, normalized=True)


def pbw_normalize(env: RewritingAlgebra, p) -> NCPolynomial:
    return env.normalize(p)


def nc_commutator(env: RewritingAlgebra, p, q) -> NCPolynomial:
    return env.commutator(p, q)


def symmetrize(env: EnvelopingAlgebra, p) -> NCPolynomial:
    """
    The symmetrization map: every monomial goes to the average of the distinct orderings of
    its letters, normalized.
    """
    out: Dict[Word, object] = {}
    for monom, c in p.items():
        letters = [k for k, e in enumerate(monom) for _ in range(e)]
        if len(letters) > SYMMETRIZE_MAX_DEGREE:
            raise ValueError(
                f"symmetrization is limited to degree {SYMMETRIZE_MAX_DEGREE}, got a monomial of degree {len(letters)}"
            )
        orderings = list(multiset_permutations(letters))
        weight = c * scalar(Rational(1, len(orderings)))
        for order in orderings:
            for t, d in env.mul_words((), tuple(order)).items():
                _accumulate(out, t, weight * d)
    return NCPolynomial(out, normalized=True)


def commutative_image(p: Dict[Word, object], dim: int) -> Dict[Tuple[int, ...], object]:
    """Forget the order of the letters: word -> exponent tuple."""
    out: Dict[Tuple[int, ...], object] = {}
    for word, c in p.items():
        exps = [0] * dim
        for k in word:
            exps[k] += 1
        _accumulate(out, tuple(exps), c)
    return out


def ordered_label(exps: Sequence[int], names: Sequence[str]) -> str:
    factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
    if not factors:
        return "1"
    if len(factors) == 1:
        return factors[0]
    return "{" + ",".join(factors) + "}"


def ordered_element(env: RewritingAlgebra, exps: Sequence[int], elements: Sequence[object]) -> NCPolynomial:
    """Sum of the distinct orderings of the factors of a monomial ({A,B} = AB + BA)."""
    letters = [k for k, e in enumerate(exps) for _ in range(e)]
    if not letters:
        return env.constant(1)
    total = []
    for order in multiset_permutations(letters):
        term = elements[order[0]]
        for k in order[1:]:
            term = env.mul(term, elements[k])
        total.append(term)
    return env.add(*total)


def _monomials_up_to(weights: Sequence[int], limit: int) -> List[Tuple[int, ...]]:
    out = []

    def extend(pos, remaining, exps):
        if pos == len(weights):
            out.append(tuple(exps))
            return
        for e in range(remaining // weights[pos] + 1):
            exps.append(e)
            extend(pos + 1, remaining - e * weights[pos], exps)
            exps.pop()

    extend(0, limit, [])
    return sorted(out, key=lambda m: (sum(w * e for w, e in zip(weights, m)), m), reverse=True)


@dataclass
class NCExpression:
    labels: List[str]
    coefficients: Dict[str, object]
    central_ring: object

    def format(self) -> Dict[str, str]:
        return {label: format_polynomial(self.coefficients[label]) for label in self.labels}


def nc_express(
    env: RewritingAlgebra,
    target,
    generators: Sequence[Tuple[str, object, int]],
    centrals: Sequence[Tuple[str, object, int]],
    degree: int,
    ansatz: Optional[Sequence[Tuple[int, ...]]] = None,
) -> NCExpression:
    """
    Coefficients, polynomial in the central symbols, with target = sum_m coeff_m * ordered(m).

    ``generators`` and ``centrals`` are (name, element, weight) triples; central monomials are
    realized by left multiplication. ``ansatz`` lists exponent tuples over the generators and
    defaults to every monomial of weight <= ``degree``.
    """
    gen_names = [g[0] for g in generators]
    gen_weights = [g[2] for g in generators]
    central_names = [z[0] for z in centrals]
    central_weights = [z[2] for z in centrals]
    central_ring = ring(central_names, QQ_I, grlex)[0]
    if ansatz is None:
        ansatz = _monomials_up_to(gen_weights, degree)
    labels = [ordered_label(m, gen_names) for m in ansatz]

    candidates = []
    columns = []
    central_powers: Dict[Tuple[int, ...], NCPolynomial] = {}
    for m, label in tqdm(list(zip(ansatz, labels)), desc="ansatz", leave=False):
        element = ordered_element(env, m, [g[1] for g in generators])
        budget = degree - sum(w * e for w, e in zip(gen_weights, m))
        if budget < 0:
            continue
        for z in _monomials_up_to(central_weights, budget):
            if z not in central_powers:
                value = env.constant(1)
                for (_, zelement, _), e in zip(centrals, z):
                    if e:
                        value = env.mul(value, env.power(zelement, e))
                central_powers[z] = value
            candidates.append((label, z))
            columns.append(dict(env.mul(central_powers[z], element)))

    coefficients = {label: central_ring.zero for label in labels}
    try:
        solution = solve(columns, dict(env.normalize(target)))
    except NoSolutionsExist as exc:
        residual = NCPolynomial(exc.residual, normalized=True)
        raise NotExpressibleError(
            f"target is not a combination of the ansatz; residual {env.format(residual)}",
            residual=residual,
        ) from exc
    for pos, c in solution.items():
        label, z = candidates[pos]
        coefficients[label] += central_ring.from_dict({z: c})
    return NCExpression(labels, coefficients, central_ring)


def nc_casimir_check(env: RewritingAlgebra, K, generators: Sequence[Tuple[str, object]]) -> List[Violation]:
    """[K, g] = 0 for every named generator g."""
    report = []
    for name, g in generators:
        bracket = env.commutator(K, g)
        if bracket:
            report.append(Violation("casimir", (name,), f"[K, {name}] = {env.format(bracket)}"))
    return report
