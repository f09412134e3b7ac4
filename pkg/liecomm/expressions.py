"""
Small text grammars used by the catalog, the basis-change files and the enveloping layer.

* polynomial expressions: ``+ - * / ^ **``, parentheses, rationals, ``i`` or ``I`` for the
  imaginary unit, and ``{X, Y}`` for the Poisson bracket of two named polynomials;
* basis-change files: one ``name = expression`` per line, ``#`` starts a comment;
* linear forms over generator names (bracket tables);
* noncommutative words over generator names (``L1*T23`` is not ``T23*L1``).
"""

from __future__ import annotations

import re
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import Add, I, Mul, Pow, Symbol
from sympy.core.numbers import Number
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .scalars import to_scalar

_IMAG_AFTER_DIGIT = re.compile(r"(\d)i\b")
_IMAG_ALONE = re.compile(r"\bi\b")
_BRACKET = re.compile(r"\{\s*([A-Za-z_]\w*)\s*,\s*([A-Za-z_]\w*)\s*\}")
_DEFINITION = re.compile(r"^\s*([A-Za-z_]\w*)\s*=\s*(.+?)\s*$")
_TRANSFORMS = standard_transformations + (convert_xor,)


class ExpressionSyntaxError(ValueError):
    pass


def sympify_text(text: str, symbols: Iterable[Symbol]):
    """Parse with the given symbols only; ``i`` and ``I`` both mean the imaginary unit."""
    text = _IMAG_AFTER_DIGIT.sub(r"\1*I", text)
    text = _IMAG_ALONE.sub("I", text)
    local = {str(s): s for s in symbols}
    local["I"] = I
    try:
        return parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, ValueError) as exc:
        raise ExpressionSyntaxError(f"cannot parse {text!r}: {exc}") from exc


def rebuild(expr, mapping: Mapping[Symbol, object], ring):
    """Evaluate a sympy expression in ``ring`` with the symbols replaced by ring elements."""
    if expr in mapping:
        return mapping[expr]
    if isinstance(expr, Add):
        out = ring.zero
        for arg in expr.args:
            out += rebuild(arg, mapping, ring)
        return out
    if isinstance(expr, Mul):
        out = ring.one
        for arg in expr.args:
            out = out * rebuild(arg, mapping, ring)
        return out
    if isinstance(expr, Pow) and expr.exp.is_Integer and expr.exp >= 0:
        return rebuild(expr.base, mapping, ring) ** int(expr.exp)
    if isinstance(expr, Number) or expr == I or expr.is_number:
        return ring.ground_new(to_scalar(expr))
    raise ExpressionSyntaxError(f"{expr} is not a polynomial in {', '.join(map(str, mapping))}")


def evaluate_expression(
    text: str,
    env: Mapping[str, object],
    ring,
    bracket: Optional[Callable[[object, object], object]] = None,
):
    """
    Evaluate ``text`` with the names of ``env`` bound to elements of ``ring``. Poisson brackets
    ``{X, Y}`` of two names are computed first with ``bracket``.
    """
    env = dict(env)
    counter = 0

    def substitute(match):
        nonlocal counter
        if bracket is None:
            raise ExpressionSyntaxError(f"brackets are not allowed here: {text!r}")
        left, right = match.group(1), match.group(2)
        for name in (left, right):
            if name not in env:
                raise ExpressionSyntaxError(f"unknown name {name!r} in {text!r}")
        counter += 1
        key = f"_bracket{counter}"
        env[key] = bracket(env[left], env[right])
        return key

    text = _BRACKET.sub(substitute, text)
    symbols = {name: Symbol(name) for name in env}
    expr = sympify_text(text, symbols.values())
    unknown = sorted(str(s) for s in expr.free_symbols if str(s) not in env)
    if unknown:
        raise ExpressionSyntaxError(f"unknown names {unknown} in {text!r}")
    return rebuild(expr, {symbols[name]: value for name, value in env.items()}, ring)


def parse_definitions(text: str) -> List[Tuple[str, str]]:
    """``name = expression`` lines; blank lines and ``#`` comments are skipped."""
    out = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _DEFINITION.match(line)
        if not match:
            raise ExpressionSyntaxError(f"line {lineno}: expected 'name = expression', got {raw.strip()!r}")
        name, expr = match.group(1), match.group(2)
        if name in seen:
            raise ExpressionSyntaxError(f"line {lineno}: {name} is defined twice")
        seen.add(name)
        out.append((name, expr))
    return out


def parse_linear_form(text: str, names: Sequence[str]) -> Dict[int, object]:
    """A linear combination of generator names, as a sparse map index -> scalar."""
    symbols = [Symbol(n) for n in names]
    expr = sympify_text(text, symbols).expand()
    position = {s: n for n, s in enumerate(symbols)}
    out: Dict[int, object] = {}
    for term, coeff in expr.as_coefficients_dict(*symbols).items():
        if coeff == 0:
            continue
        if term not in position or not coeff.is_number:
            raise ExpressionSyntaxError(f"{text!r} is not a linear form in {', '.join(names)}")
        c = to_scalar(coeff)
        if c:
            out[position[term]] = c
    return out


def parse_nc_terms(text: str, names: Sequence[str]) -> List[Tuple[object, Tuple[str, ...]]]:
    """Expand a noncommutative expression into (coefficient, word) pairs, word letters in order."""
    symbols = [Symbol(n, commutative=False) for n in names]
    expr = sympify_text(text, symbols).expand()
    terms = []
    for term in Add.make_args(expr):
        if term == 0:
            continue
        commutative, factors = term.args_cnc()
        word: List[str] = []
        for factor in factors:
            base, exp = factor.as_base_exp()
            if not (isinstance(base, Symbol) and exp.is_Integer and exp > 0):
                raise ExpressionSyntaxError(f"{factor} is not a power of a generator in {text!r}")
            word.extend([str(base)] * int(exp))
        terms.append((to_scalar(Mul(*commutative)), tuple(word)))
    return terms
