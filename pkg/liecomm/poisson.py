"""
Pol(g*) as a sparse polynomial ring over QQ_I with the Lie-Poisson bracket

    {f, g} = C_ij^k x_k df/dx_i dg/dx_j.

Polynomials are plain ``sympy.polys.rings.PolyElement`` objects: dicts from dense exponent
tuples to QQ_I coefficients, ordered graded-lexicographically in the listed coordinate order.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from .expressions import evaluate_expression
from .lie_algebra import LieAlgebra, LieAlgebraError
from .linalg import generic_points, rank
from .scalars import ZERO, format_rational, format_scalar

Monomial = Tuple[int, ...]


class _ZeroDegree:
    """Degree of the zero polynomial; it is neither an int nor comparable with one."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_DEGREE"


ZERO_DEGREE = _ZeroDegree()


class PoissonRing:
    def __init__(self, alg: LieAlgebra):
        self.alg = alg
        self.ring, *gens = ring(list(alg.coords), QQ_I, grlex)
        self.gens = tuple(gens)
        self.dim = alg.dim
        self.symbols = tuple(self.ring.symbols)
        # x-linear forms C_ij^k x_k for i < j
        self._forms = {}
        for i, j in alg.nonzero_pairs():
            form = self.ring.zero
            for k, c in alg.structure(i, j).items():
                form += self.gens[k] * c
            self._forms[(i, j)] = form

    def __repr__(self):
        return f"PoissonRing({', '.join(self.alg.coords)})"

    @property
    def zero(self):
        return self.ring.zero

    @property
    def one(self):
        return self.ring.one

    def coordinate(self, name: str):
        return self.gens[self.alg.index(name)]

    def monomial(self, exponents: Monomial):
        return self.ring.from_dict({tuple(exponents): QQ_I.one})

    def from_vector(self, vector: Dict[Monomial, object]):
        return self.ring.from_dict({m: c for m, c in vector.items() if c})

    def check(self, p):
        if getattr(p, "ring", None) != self.ring:
            ngens = getattr(getattr(p, "ring", None), "ngens", None)
            raise LieAlgebraError(
                f"polynomial lives in a ring with {ngens} variables, expected the {self.dim} "
                f"coordinates of {self.alg.title or 'the algebra'}"
            )

    def _partials(self, p):
        used = set()
        for monom in p:
            used.update(i for i, e in enumerate(monom) if e)
        return {i: p.diff(self.gens[i]) for i in sorted(used)}

    def lp_bracket(self, f, g):
        self.check(f)
        self.check(g)
        if not f or not g:
            return self.ring.zero
        df, dg = self._partials(f), self._partials(g)
        out = self.ring.zero
        for (i, j), form in self._forms.items():
            term = self.ring.zero
            if i in df and j in dg:
                term += df[i] * dg[j]
            if j in df and i in dg:
                term -= df[j] * dg[i]
            if term:
                out += form * term
        return out

    def bracket_with_coordinate(self, alpha: int, monom: Monomial) -> Dict[Monomial, object]:
        """{x_alpha, x^monom} as a sparse vector, computed on exponents directly."""
        out: Dict[Monomial, object] = {}
        for j, e in enumerate(monom):
            if not e:
                continue
            for k, c in self.alg.structure(alpha, j).items():
                target = list(monom)
                target[j] -= 1
                target[k] += 1
                target = tuple(target)
                v = out.get(target, ZERO) + c * e
                if v:
                    out[target] = v
                else:
                    out.pop(target)
        return out

    def commutes_with_algebra(self, p) -> bool:
        """True iff p is a g-invariant, i.e. {x_k, p} = 0 for every coordinate."""
        return all(not self.lp_bracket(x, p) for x in self.gens)

    def evaluate(self, p, point: Sequence[object]):
        total = ZERO
        for monom, c in p.items():
            value = c
            for x, e in zip(point, monom):
                if e:
                    value = value * x ** e
            total += value
        return total

    def jacobian_rank(self, polys: Sequence[object], draws: int = 3, seed: Optional[int] = None, sample_range: int = 50) -> int:
        """Generic rank of the Jacobian of ``polys``, maximised over independent rational points."""
        if not polys:
            return 0
        partials = [self._partials(p) for p in polys]
        best = 0
        for point in generic_points(self.dim, draws=draws, seed=seed, sample_range=sample_range):
            rows = []
            for grads in partials:
                values = {i: self.evaluate(d, point) for i, d in grads.items()}
                rows.append({i: v for i, v in values.items() if v})
            best = max(best, rank(rows))
        return best

    def parse(self, text: str, named: Optional[Dict[str, object]] = None):
        return parse_polynomial(text, self, named)

    def format(self, p) -> str:
        return format_polynomial(p)


def homogeneous_degree(p):
    """Total degree if p is homogeneous, ZERO_DEGREE for 0, None otherwise."""
    if not p:
        return ZERO_DEGREE
    degrees = {sum(m) for m in p}
    if len(degrees) > 1:
        return None
    return degrees.pop()


def homogeneous_components(p) -> Dict[int, object]:
    parts: Dict[int, Dict[Monomial, object]] = {}
    for monom, c in p.items():
        parts.setdefault(sum(monom), {})[monom] = c
    return {d: p.ring.from_dict(terms) for d, terms in sorted(parts.items())}


def monomial_basis(d: int, n: int) -> List[Monomial]:
    """All degree-n monomials in d variables, graded-lex descending (x1^n first)."""
    if d < 1 or n < 0:
        raise ValueError(f"monomial basis needs d >= 1 and n >= 0, got d={d}, n={n}")
    out = []
    for combo in combinations_with_replacement(range(d), n):
        exps = [0] * d
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return out


def format_coefficient(c, has_monomial: bool) -> Tuple[str, str]:
    """(sign, body) of a term coefficient; a real unit in front of a monomial has an empty body."""
    re_, im_ = QQ.to_sympy(c.x), QQ.to_sympy(c.y)
    if not im_:
        sign, mag = ("-", -re_) if re_ < 0 else ("+", re_)
        body = "" if mag == 1 and has_monomial else format_rational(mag)
        return sign, body
    if not re_:
        sign, mag = ("-", -im_) if im_ < 0 else ("+", im_)
        return sign, "i" if mag == 1 else f"{format_rational(mag)}i"
    return "+", f"({format_scalar(c)})"


def format_monomial(monom: Monomial, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, monom):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_polynomial(p, names: Optional[Sequence[str]] = None) -> str:
    """Canonical rendering: graded-lex descending terms, e.g. ``l1^2 - 1/2*l2*t11 + 2i*l3``."""
    if not p:
        return "0"
    names = names or [str(s) for s in p.ring.symbols]
    pieces = []
    for monom, c in p.terms():
        mono = format_monomial(monom, names)
        sign, body = format_coefficient(c, bool(mono))
        term = f"{body}*{mono}" if body and mono else (body or mono)
        if not pieces:
            pieces.append(term if sign == "+" else f"-{term}")
        else:
            pieces.append(f" {sign} {term}")
    return "".join(pieces)



def parse_polynomial(text: str, poisson: PoissonRing, named: Optional[Dict[str, object]] = None):
    """Read a polynomial in the coordinates; ``named`` polynomials may be referenced and bracketed."""
    env = dict(zip(poisson.alg.coords, poisson.gens))
    env.update(named or {})
    return evaluate_expression(text, env, poisson.ring, bracket=poisson.lp_bracket)
