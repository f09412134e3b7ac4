"""
Exact Gaussian rational scalars a + b*i.

All symbolic work is done over sympy's ``QQ_I`` domain; this module only adds the
conversions and the canonical text rendering used in reports.
"""

from __future__ import annotations

from sympy import Rational, nsimplify, sympify
from sympy.polys.domains import QQ, QQ_I

ZERO = QQ_I.zero
IMAG = QQ_I(0, 1)


def scalar(re=0, im=0):
    """Build a Gaussian rational from two rationals (ints, strings like '1/2' or sympy numbers)."""
    return QQ_I(_rational(re), _rational(im))


def _rational(value):
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        value = Rational(value)
    return QQ.from_sympy(Rational(value))


def to_scalar(value):
    """Convert ints, sympy numbers (possibly with I) and QQ_I elements into QQ_I."""
    if isinstance(value, int):
        return QQ_I.convert(value)
    if QQ_I.of_type(value):
        return value
    expr = sympify(value)
    re, im = expr.as_real_imag()
    return QQ_I(QQ.from_sympy(nsimplify(re)), QQ.from_sympy(nsimplify(im)))


def re_part(c):
    return QQ.to_sympy(c.x)


def im_part(c):
    return QQ.to_sympy(c.y)


def format_rational(q) -> str:
    q = Rational(q)
    if q.q == 1:
        return str(q.p)
    return f"{q.p}/{q.q}"


def format_scalar(c) -> str:
    """Render as ``a``, ``a+bi``, ``bi`` (b = 1 and -1 print as ``i`` and ``-i``)."""
    re, im = re_part(c), im_part(c)
    if not im:
        return format_rational(re)
    if im == 1:
        im_str = "i"
    elif im == -1:
        im_str = "-i"
    else:
        im_str = format_rational(im) + "i"
    if not re:
        return im_str
    sign = "" if im_str.startswith("-") else "+"
    return f"{format_rational(re)}{sign}{im_str}"
