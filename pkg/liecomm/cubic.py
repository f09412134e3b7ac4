"""
Abstract cubic commutator algebras on three letters A < B < C:

    [A, B] = C,
    [A, C] = alpha A^2 + beta B^2 + gamma {A, B} + delta A + epsilon B + zeta,
    [B, C] = lambda A^3 + mu A^2 + nu B^2 + xi {A, B} + rho A + sigma B + chi,

with {A, B} = AB + BA and structure coefficients that are polynomials in central symbols.
"""

from __future__ import annotations

from typing import Dict, List, Mapping, Optional, Sequence

from sympy import Rational
from sympy.polys.domains import QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from .enveloping import NCPolynomial, RewritingAlgebra, Word, nc_casimir_check, nc_express, symmetrize
from .expressions import evaluate_expression
from .lie_algebra import Violation
from .poisson import format_polynomial
from .presentation import CUBIC_COEFFICIENTS, Presentation, cubic_coefficients
from .scalars import scalar, to_scalar

A, B, C = 0, 1, 2


class CubicAlgebra(RewritingAlgebra):
    def __init__(
        self,
        coefficients: Mapping[str, object],
        central_names: Sequence[str] = (),
        central_weights: Optional[Sequence[int]] = None,
        weights: Sequence[int] = (1, 1, 1),
        names: Sequence[str] = ("A", "B", "C"),
    ):
        super().__init__(names, weights)
        self.central_names = tuple(central_names)
        self.central_weights = tuple(central_weights) if central_weights else (1,) * len(self.central_names)
        self.ring = ring(list(self.central_names), QQ_I, grlex)[0]
        self.one = self.ring.one
        unknown = set(coefficients) - set(CUBIC_COEFFICIENTS)
        if unknown:
            raise ValueError(f"unknown cubic coefficients {sorted(unknown)}")
        self.coefficients = {name: self.coerce(coefficients.get(name, 0)) for name in CUBIC_COEFFICIENTS}
        self._swaps: Dict[tuple, Dict[Word, object]] = {}

    @classmethod
    def from_presentation(cls, pres: Presentation) -> "CubicAlgebra":
        coefficients = cubic_coefficients(pres)
        central = pres.central()
        converted = {}
        for name, poly in coefficients.items():
            converted[name] = {tuple(m[k] for k in central): c for m, c in poly.items()}
        algebra = cls(
            {},
            central_names=[pres.names[k] for k in central],
            central_weights=[pres.symbols.weights[k] for k in central],
            weights=[pres.symbols.weights[k] for k in pres.non_central()],
            names=[pres.names[k] for k in pres.non_central()],
        )
        algebra.coefficients = {name: algebra.ring.from_dict(terms) for name, terms in converted.items()}
        return algebra

    def coerce(self, c):
        if isinstance(c, PolyElement):
            if c.ring == self.ring:
                return c
            names = [str(s) for s in c.ring.symbols]
            return self.ring.from_dict(
                {tuple(m[names.index(n)] if n in names else 0 for n in self.central_names): v for m, v in c.items()}
            )
        if isinstance(c, str):
            env = dict(zip(self.central_names, self.ring.gens))
            return evaluate_expression(c, env, self.ring)
        return self.ring.ground_new(to_scalar(c))

    def _rational(self, n: int, d: int = 1):
        return self.ring.ground_new(scalar(Rational(n, d)))

    def _right_sides(self):
        k = self.coefficients
        # {A, B} = 2AB + [B, A] = 2AB - C in ordered form
        p = {(A, A): k["alpha"], (B, B): k["beta"], (A, B): k["gamma"] * 2, (C,): -k["gamma"],
             (A,): k["delta"], (B,): k["epsilon"], (): k["zeta"]}
        q = {(A, A, A): k["lambda"], (A, A): k["mu"], (B, B): k["nu"], (A, B): k["xi"] * 2, (C,): -k["xi"],
             (A,): k["rho"], (B,): k["sigma"], (): k["chi"]}
        return p, q

    def swap(self, b: int, a: int) -> Dict[Word, object]:
        key = (b, a)
        if key not in self._swaps:
            p, q = self._right_sides()
            if key == (B, A):
                rule = {(C,): -self.one}
            elif key == (C, A):
                rule = {w: -c for w, c in p.items() if c}
            elif key == (C, B):
                rule = {w: -c for w, c in q.items() if c}
            else:
                raise KeyError(key)
            self._swaps[key] = rule
        return self._swaps[key]

    def format_coefficient(self, c, has_word: bool):
        if len(c) == 1 and not any(next(iter(c))):
            return super().format_coefficient(next(iter(c.values())), has_word)
        return "+", f"({format_polynomial(c)})"

    def generators(self):
        return [(name, self.letter(name)) for name in self.names]

    def jacobi_defect(self) -> NCPolynomial:
        """(CB)A - C(BA) after normalization; zero iff the rewriting rules are consistent."""
        a, b, c = (self.letter(n) for n in self.names)
        left = self.mul(self.mul(c, b), a)
        right = self.mul(c, self.mul(b, a))
        return self.add(left, self.scale(right, -1))

    @property
    def has_casimir_formula(self) -> bool:
        return not (self.coefficients["gamma"] or self.coefficients["nu"])

    def casimir(self) -> NCPolynomial:
        """Quartic Casimir of a cubic algebra with gamma = nu = 0."""
        k = self.coefficients
        if not self.has_casimir_formula:
            raise ValueError("the closed Casimir formula needs gamma = nu = 0")
        al, be, de, ep, ze = k["alpha"], k["beta"], k["delta"], k["epsilon"], k["zeta"]
        la, mu, rh, ch = k["lambda"], k["mu"], k["rho"], k["chi"]
        r = self._rational
        a, b, c = (self.letter(n) for n in self.names)
        aba = self.mul(self.mul(a, b), a)
        ab_ba = self.add(self.mul(a, b), self.mul(b, a))
        terms = [
            (self.power(c, 2), self.one),
            (self.power(a, 4), la * r(1, 2)),
            (self.power(a, 3), mu * r(2, 3)),
            (self.power(b, 3), be * r(-2, 3)),
            (aba, -(al * 2 - be * la)),
            (self.power(a, 2), rh + (al * be + ep) * la * r(1, 2)),
            (self.power(b, 2), -(ep - (be * la - al * 4) * be * r(1, 3))),
            (ab_ba, be * mu * r(1, 3) - de),
            (a, ch * 2 + be * de * la * r(1, 2) + ep * mu * r(1, 3)),
            (b, -(ze * 2 + (al * 3 - be * la) * ep * r(1, 3) - be * rh * r(1, 3))),
        ]
        return self.add(*(self.scale(element, coeff) for element, coeff in terms))

    def classical_image(self, p: Mapping[Word, object], symbol_names: Sequence[str], target_ring, weight: Optional[int] = None):
        """
        Commutative image in ``target_ring`` (symbols named ``symbol_names``), keeping only the
        terms of total weight ``weight`` when given. Central coefficients count with their weights.
        """
        position = {n: k for k, n in enumerate(symbol_names)}
        terms: Dict[tuple, object] = {}
        for word, coeff in p.items():
            for zmonom, c in coeff.items():
                exps = [0] * len(symbol_names)
                total = 0
                for name, e, w in zip(self.central_names, zmonom, self.central_weights):
                    exps[position[name]] += e
                    total += e * w
                for letter in word:
                    exps[position[self.names[letter]]] += 1
                    total += self.weights[letter]
                if weight is not None and total != weight:
                    continue
                key = tuple(exps)
                v = terms.get(key, QQ_I.zero) + c
                if v:
                    terms[key] = v
                else:
                    terms.pop(key, None)
        return target_ring.from_dict(terms)


def cubic_casimir_check(algebra: CubicAlgebra, K: Optional[NCPolynomial] = None, classical=None, symbol_names: Sequence[str] = (), target_ring=None) -> List[Violation]:
    """
    Commutation of K with A, B, C in the cubic algebra, and (given the classical Casimir) the
    collapse of its top-weight part onto it.
    """
    K = algebra.casimir() if K is None else K
    report = []
    defect = algebra.jacobi_defect()
    if defect:
        report.append(Violation("jacobi", tuple(algebra.names), f"(CB)A - C(BA) = {algebra.format(defect)}"))
    report.extend(nc_casimir_check(algebra, K, algebra.generators()))
    if classical is not None:
        top = 2 * algebra.weights[C]
        image = algebra.classical_image(K, symbol_names, target_ring, weight=top)
        if image != classical:
            report.append(Violation("collapse", tuple(algebra.names), f"leading part {format_polynomial(image)}"))
    return report


_AC_LABELS = {"A^2": "alpha", "B^2": "beta", "{A,B}": "gamma", "A": "delta", "B": "epsilon", "1": "zeta"}
_BC_LABELS = {"A^3": "lambda", "A^2": "mu", "B^2": "nu", "{A,B}": "xi", "A": "rho", "B": "sigma", "1": "chi"}


def _ab_ansatz(weights: Sequence[int], degree: int):
    wa, wb = weights[0], weights[1]
    return [(ea, eb) for ea in range(degree // wa + 1) for eb in range((degree - ea * wa) // wb + 1)]


class SymmetrizedCubic:
    """
    Symmetrized generators of a three-generator cubic presentation inside U(g): centrals and
    A, B are images under the symmetrization map, C is defined as [A, B]; the corrected
    structure constants are read off the commutators [A, C] and [B, C].
    """

    def __init__(self, pres: Presentation, env):
        if pres.generating_function is None:
            raise ValueError("symmetrization of the bracket table needs a three-generator cubic presentation")
        self.pres = pres
        self.env = env
        a, b, c = pres.non_central()
        names, weights, polys = pres.names, pres.symbols.weights, pres.symbols.basis.polys
        self.centrals = [(names[k], symmetrize(env, polys[k]), weights[k]) for k in pres.central()]
        A_ = symmetrize(env, polys[a])
        B_ = symmetrize(env, polys[b])
        C_ = env.commutator(A_, B_)
        self.generators = {names[a]: A_, names[b]: B_, names[c]: C_}
        ab = [("A", A_, weights[a]), ("B", B_, weights[b])]
        self.constants: Dict[str, object] = {}
        for pair, labels, degree in (
            ((A_, C_), _AC_LABELS, weights[a] + weights[c] - 1),
            ((B_, C_), _BC_LABELS, weights[b] + weights[c] - 1),
        ):
            target = env.commutator(*pair)
            ansatz = _ab_ansatz([weights[a], weights[b]], degree)
            expression = nc_express(env, target, ab, self.centrals, degree, ansatz=ansatz)
            for label in expression.labels:
                value = expression.coefficients[label]
                if label in labels:
                    self.constants[labels[label]] = value
                elif value:
                    raise ValueError(f"{label} appears in a commutator outside the cubic form")
        self.algebra = CubicAlgebra(
            self.constants,
            central_names=[z[0] for z in self.centrals],
            central_weights=[z[2] for z in self.centrals],
            weights=[weights[a], weights[b], weights[c]],
            names=[names[a], names[b], names[c]],
        )

    def classical_limit(self) -> Dict[str, object]:
        """Each constant restricted to its terms of top weight (the weight of the classical coefficient)."""
        classical = cubic_coefficients(self.pres)
        out = {}
        for name, value in self.algebra.coefficients.items():
            top = self._weight_of(classical[name]) if classical[name] else None
            out[name] = self.algebra.ring.from_dict(
                {m: c for m, c in value.items() if top is not None and self._central_weight(m) == top}
            )
        return out

    def _central_weight(self, monom) -> int:
        return sum(e * w for e, w in zip(monom, self.algebra.central_weights))

    def _weight_of(self, symbol_poly) -> int:
        return max(self.pres.symbols.weight_of(m) for m in symbol_poly)

    def check(self) -> List[Violation]:
        if not self.algebra.has_casimir_formula:
            defect = self.algebra.jacobi_defect()
            if defect:
                return [Violation("jacobi", tuple(self.algebra.names), f"(CB)A - C(BA) = {self.algebra.format(defect)}")]
            return []
        K = self.algebra.casimir()
        return cubic_casimir_check(
            self.algebra,
            K,
            classical=self.pres.generating_function.casimir,
            symbol_names=self.pres.names,
            target_ring=self.pres.symbols.ring,
        )
