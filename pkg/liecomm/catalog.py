"""
Built-in algebras, their subalgebra selections and the published data of the reduction chains
su(3) > so(3), so(5) > su(2)xu(1) and the Schroedinger algebra S(3) > sl(2,R)xso(2).

Bracket tables are written as ``X Y: linear form`` lines (only one orientation per pair).
Polynomials use the lowercase coordinates; later entries may refer to earlier names and to
Poisson brackets ``{X, Y}`` of them.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .commutant import CommutantBasis
from .expressions import parse_linear_form
from .lie_algebra import LieAlgebra, SubalgebraSpec
from .poisson import PoissonRing

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")

SU3_TABLE = """
L1 L2: i*L3
L1 L3: -i*L2
L1 T12: i*T13
L1 T13: -i*T12
L1 T22: 2i*T23
L1 T23: -i*T11 - 2i*T22
L2 L3: i*L1
L2 T11: -2i*T13
L2 T12: -i*T23
L2 T13: 2i*T11 + i*T22
L2 T23: i*T12
L3 T11: 2i*T12
L3 T12: i*T22 - i*T11
L3 T13: i*T23
L3 T22: -2i*T12
L3 T23: -i*T13
T11 T12: 2i*L3
T11 T13: -2i*L2
T12 T13: i*L1
T12 T22: 2i*L3
T12 T23: -i*L2
T13 T23: i*L3
T22 T23: 2i*L1
"""

SO5_TABLE = """
Sm Sp: -U3 - V3
Sm Up: -Vm
Sm Vp: Um
Sm U3: Sm
Sm V3: Sm
Tm Vm: Um
Tm Tp: V3 - U3
Tm Up: -Vp
Tm U3: Tm
Tm V3: -Tm
Um Vm: 2*Sm
Um Sp: -Vp
Um Tp: -Vm
Um Up: -2*U3
Um Vp: 2*Tm
Um U3: Um
Vm Sp: Up
Vm Up: 2*Tp
Vm Vp: -2*V3
Vm V3: Vm
Sp U3: -Sp
Sp V3: -Sp
Tp Vp: -Up
Tp U3: -Tp
Tp V3: Tp
Up Vp: -2*Sp
Up U3: -Up
Vp V3: -Vp
"""

SCHROEDINGER_TABLE = """
J12 J13: J23
J12 J23: -J13
J12 P1: P2
J12 P2: -P1
J12 G1: G2
J12 G2: -G1
J13 J23: J12
J13 P1: P3
J13 P3: -P1
J13 G1: G3
J13 G3: -G1
J23 P2: P3
J23 P3: -P2
J23 G2: G3
J23 G3: -G2
P1 G1: M
P2 G2: M
P3 G3: M
P1 K: G1
P2 K: G2
P3 K: G3
P1 D: P1
P2 D: P2
P3 D: P3
G1 D: -G1
G2 D: -G2
G3 D: -G3
G1 Pt: -P1
G2 Pt: -P2
G3 Pt: -P3
Pt D: 2*Pt
Pt K: D
D K: 2*K
"""

SO3_TABLE = """
L1 L2: L3
L2 L3: L1
L3 L1: L2
"""


def parse_table(names: List[str], table: str, title: str = "", coords: Optional[List[str]] = None) -> LieAlgebra:
    records = []
    for line in table.strip().splitlines():
        pair, form = line.split(":", 1)
        left, right = pair.split()
        records.append((names.index(left), names.index(right), parse_linear_form(form, names)))
    return LieAlgebra.from_brackets(names, records, coords=coords, title=title)


@dataclass(frozen=True)
class ChainData:
    """Published data of one reduction chain; polynomials are texts in the coordinates."""

    algebra: str
    subalgebra: str
    published: Tuple[Tuple[str, str], ...]
    casimirs: Tuple[str, ...] = ()
    relations: Tuple[str, ...] = ()
    central: Tuple[str, ...] = ()
    basis_change: str = ""
    strict_extra: Tuple[str, ...] = ()
    ell0: int = 0
    n0: int = 0
    max_degree: int = 6
    printed_variants: Tuple[Tuple[str, str], ...] = ()
    brackets: Tuple[Tuple[str, str, str], ...] = ()
    quadratic_subset: Tuple[str, ...] = ()
    nc_printed: Tuple[Tuple[str, str], ...] = ()
    relation_weights: Tuple[int, ...] = ()
    extra: Dict[str, str] = field(default_factory=dict)


_ALGEBRAS = {
    "su3": lambda: parse_table(
        ["L1", "L2", "L3", "T11", "T12", "T13", "T22", "T23"], SU3_TABLE, title="su(3)"
    ),
    "so5": lambda: parse_table(
        ["Sm", "Tm", "Um", "Vm", "Sp", "Tp", "Up", "Vp", "U3", "V3"], SO5_TABLE, title="so(5)"
    ),
    "schroedinger3": lambda: parse_table(
        ["J12", "J13", "J23", "P1", "P2", "P3", "G1", "G2", "G3", "Pt", "D", "K", "M"],
        SCHROEDINGER_TABLE,
        title="Schroedinger S(3)",
    ),
    "so3": lambda: parse_table(["L1", "L2", "L3"], SO3_TABLE, title="so(3)"),
}

_ALIASES = {"su3-LT": "su3", "so5-STUV": "so5", "S3": "schroedinger3"}

_SUBALGEBRAS = {
    "su3": {"so3": ["L1", "L2", "L3"]},
    "so5": {"su2xu1": ["Um", "Up", "U3", "V3"]},
    "schroedinger3": {"sl2Rxso2": ["J12", "Pt", "D", "M"]},
    "so3": {"so2": ["L3"]},
}

_ABELIAN = re.compile(r"^abelian-(\d+)$")


def list_algebras() -> List[str]:
    return sorted(_ALGEBRAS) + ["abelian-N"]


def canonical_name(name: str) -> str:
    return _ALIASES.get(name, name)


def get_algebra(name: str) -> LieAlgebra:
    name = canonical_name(name)
    match = _ABELIAN.match(name)
    if match:
        dim = int(match.group(1))
        return LieAlgebra.from_brackets([f"X{i + 1}" for i in range(dim)], [], title=f"abelian({dim})")
    if name not in _ALGEBRAS:
        raise NotImplementedError(f"unknown algebra: {name} (known: {', '.join(list_algebras())})")
    return _ALGEBRAS[name]()


def get_subalgebra(algebra_name: str, sub_name: str, alg: Optional[LieAlgebra] = None) -> SubalgebraSpec:
    algebra_name = canonical_name(algebra_name)
    alg = alg or get_algebra(algebra_name)
    if _ABELIAN.match(algebra_name):
        # subalgebras of the toy algebras are named by generator lists "X1+X3"
        return SubalgebraSpec.from_names(alg, sub_name.split("+"), sub_name)
    try:
        names = _SUBALGEBRAS[algebra_name][sub_name]
    except KeyError:
        raise NotImplementedError(f"unknown subalgebra {sub_name} of {algebra_name}") from None
    return SubalgebraSpec.from_names(alg, names, sub_name)


def subalgebra_names(algebra_name: str) -> List[str]:
    return sorted(_SUBALGEBRAS.get(canonical_name(algebra_name), {}))


SU3_CHAIN = ChainData(
    algebra="su3",
    subalgebra="so3",
    published=(
        ("b1", "l1^2+l2^2+l3^2"),
        ("b2", "t11^2+t12^2+t13^2+t11*t22+t22^2+t23^2"),
        ("C1", "l3^2*(t11+t22)-l1^2*t11-2*l1*(l2*t12+l3*t13)-l2^2*t22-2*l2*l3*t23"),
        ("C2", "t12*t13*t23+(t11*(t12^2-t22^2-t23^2)-t22*(t11^2-t12^2+t13^2))/2"),
        ("D1", "l1^2*(t11^2+t12^2+t13^2)+2*l2*l3*(t12*t13-t11*t23)"
               "+2*l1*(l2*(t12*(t11+t22)+t13*t23)+l3*(t12*t23-t13*t22))"
               "+l2^2*(t12^2+t22^2+t23^2)+l3^2*(t13^2+(t11+t22)^2+t23^2)"),
        ("D2", "l3^2*(t12^2-t11*t22)+l2^2*(t13^2+t11*(t11+t22))+2*l1*l3*(t13*t22-t12*t23)"
               "+l1^2*(t22*(t11+t22)+t23^2)-2*l2*(l1*t12*(t11+t22)+l1*t13*t23+l3*(t12*t13-t11*t23))"),
        ("F1", "(i/4)*{C1, D1}"),
    ),
    casimirs=("b1+b2", "C1+2*C2"),
    relations=("D1 + D2 - b1*b2",),
    central=("C1/2 + C2",),
    basis_change="su3_so3.basis",
    ell0=0,
    n0=1,
    max_degree=6,
    brackets=(("C1", "D1", "-4*i*F1"), ("D1", "D2", "0")),
    nc_printed=(
        ("b1", "L1^2 + L2^2 + L3^2"),
        ("b2", "T11^2 + T12^2 + T13^2 + T11*T22 + T22^2 + T23^2"),
        ("C1", "L3^2*T11 + L3^2*T22 - 2*L1*L2*T12 - 2*L1*L3*T13 - 2*L2*L3*T23"
               " + i*(L1*T23 - L2*T13 + L3*T12) - L1^2*T11 - L2^2*T22"),
        ("C2", "T12*T13*T23 + (T11*T12^2 - T11*T22^2 - T11*T23^2 - T11^2*T22 + T12^2*T22 - T13^2*T22)/2"
               " + 2*T11 - T22 - (i/2)*(L1*T23 - L2*T13 + 5*L3*T12)"),
    ),
    extra={
        # the printed correction of the second cubic has L2*T23 where L2*T13 belongs
        "C2_printed_nc": "T12*T13*T23 + (T11*T12^2 - T11*T22^2 - T11*T23^2 - T11^2*T22 + T12^2*T22 - T13^2*T22)/2"
                         " + 2*T11 - T22 - (i/2)*(L1*T23 - L2*T23 + 5*L3*T12)",
    },
)

SO5_CHAIN = ChainData(
    algebra="so5",
    subalgebra="su2xu1",
    published=(
        ("a1", "v3"),
        ("b1", "u3^2+um*up"),
        ("b2", "2*(sm*sp+tm*tp)+vm*vp"),
        ("C1", "2*(sm*sp-tm*tp)*u3+(tm*up-sp*um)*vm+(tp*um-sm*up)*vp"),
        ("D1", "8*(sm^2*sp^2+tm^2*tp^2+(sm*sp+tm*tp)*vm*vp)+vm^2*vp^2-4*(sp*tm*vm^2+sm*tp*vp^2)"),
        ("D2", "(4*sm*tp+vm^2)*(4*sp*tm+vp^2)"),
        ("D3", "2*(vm*vp-2*(sm*sp+tm*tp))*u3^2+4*(sp*um*vm+tm*up*vm+tp*um*vp+sm*up*vp)*u3"
               "+4*sp*tp*um^2+4*sm*tm*up^2-2*um*vm*up*vp"),
        ("F1", "((vm^2-4*sm*tp)*u3^2+4*(um*tp+sm*up)*vm*u3+2*(tp^2*um^2+sm^2*up^2)-um*up*vm^2)*(4*sp*tm+vp^2)"),
        ("F2", "((vp^2-4*sp*tm)*u3^2+4*(um*sp+tm*up)*vp*u3+2*(sp^2*um^2+tm^2*up^2)-um*up*vp^2)*(4*sm*tp+vm^2)"),
    ),
    casimirs=("a1^2+b1+b2", "D1+D2+4*a1^2*(b1+b2)+4*b1*b2+2*b1^2+2*a1^4"),
    relations=("D1 + D2 - 2*b2^2", "F1 + F2 - 2*C1^2 - b2*D3"),
    central=("D1 + D3 + 4*a1*C1",),
    basis_change="so5.basis",
    ell0=0,
    n0=1,
    max_degree=6,
    brackets=(("C1", "D1", "2*(F1 - F2)"), ("D1", "D3", "8*a1*(F1 - F2)")),
)

_SCHROEDINGER_D2 = ("j13*(k*p2*p3+pt*g2*g3)-j23*(k*p1*p3+pt*g1*g3)"
                    "-d/2*(j13*(p2*g3+p3*g2)-j23*(p1*g3+p3*g1))")
_SCHROEDINGER_E2 = ("k*(j13*p2-j23*p1)*(j13*p1+j23*p2)+pt*(j13*g2-j23*g1)*(j13*g1+j23*g2)"
                    "-d/2*((j13*p2-j23*p1)*(j13*g1+j23*g2)+(j13*p1+j23*p2)*(j13*g2-j23*g1))")

SCHROEDINGER_CHAIN = ChainData(
    algebra="schroedinger3",
    subalgebra="sl2Rxso2",
    published=(
        ("a1", "m"),
        ("a2", "j12"),
        ("B1", "j13^2+j23^2"),
        ("B2", "p1*g2-p2*g1"),
        ("b1", "k*pt-d^2/4"),
        ("C1", "j13*(p1*g3-p3*g1)+j23*(p2*g3-p3*g2)"),
        ("C2", "j13*(p2*g3-p3*g2)+j23*(p3*g1-p1*g3)"),
        ("C3", "k*(p1^2+p2^2)+pt*(g1^2+g2^2)-d*(g1*p1+g2*p2)"),
        ("C4", "k*p3^2+pt*g3^2-d*p3*g3"),
        ("D1", "j13*(k*p1*p3+pt*g1*g3)+j23*(k*p2*p3+pt*g2*g3)-d/2*(j13*(p1*g3+p3*g1)+j23*(p2*g3+p3*g2))"),
        ("D2", _SCHROEDINGER_D2),
        ("D3", "p3^2*(g1^2+g2^2)+g3^2*(p1^2+p2^2)-2*p3*g3*(p1*g1+p2*g2)"),
        ("E1", "k*(j13*p1+j23*p2)^2+pt*(j13*g1+j23*g2)^2-d*(j13*p1+j23*p2)*(j13*g1+j23*g2)"),
        ("E2", _SCHROEDINGER_E2),
        ("E3", "(d/2*(g1^2+g2^2)-k*(p1*g1+p2*g2))*p3^2+(pt*(p1*g1+p2*g2)-d/2*(p1^2+p2^2))*g3^2"
               "+k*(p1^2+p2^2)*g3*p3-pt*(g1^2+g2^2)*g3*p3"),
    ),
    casimirs=(
        "a1",
        "(a1/2)*(a2^2+B1-4*b1)-a2*B2-C1+C3+C4",
        "a1^2*(a2^2+B1)-2*a1*a2*B2+B2^2-2*a1*C1+D3",
    ),
    relations=("C1^2 + C2^2 - B1*D3", "C2*D1 - C1*D2 + B1*B2*C4", "C1*D1 + C2*D2 - B1*E3"),
    strict_extra=("K",),
    ell0=0,
    n0=2,
    max_degree=5,
    printed_variants=(
        ("D2", "j13*(k*p2*p3+pt*g2*g3)-j23*(k*p1*p3+pt*g1*g3)"
               "-d/2*(j13*(p2*g3-p3*g2)-j23*(p1*g3+p3*g1))"),
        ("E2", "pt*(j13*g2-j23*g1)*(j13*g1+j23*g2)-k*(j23*p1-j13*p2)*(j13*p1+j23*p2)"
               "+d*g1*j13*j23*p1+d*g1*p2/2*(j23^2-j13^2)"),
    ),
    brackets=(
        ("B1", "B2", "-2*C2"),
        ("B1", "C1", "2*a2*C2"),
        ("B1", "C2", "2*(B1*B2 - a2*C1)"),
        ("B1", "D3", "4*B2*C2"),
        ("B2", "C1", "a1*C2"),
        ("B2", "C2", "D3 - a1*C1"),
        ("B2", "D3", "0"),
        ("C1", "C2", "a1*B1*B2 - a2*D3"),
        ("C1", "D3", "2*a1*B2*C2"),
        ("C2", "D3", "2*B2*(D3 - a1*C1)"),
    ),
    quadratic_subset=("B1", "B2", "C1", "C2", "D3"),
    relation_weights=(6, 7),
)

SO3_CHAIN = ChainData(
    algebra="so3",
    subalgebra="so2",
    published=(("a1", "l3"), ("b1", "l1^2+l2^2")),
    casimirs=("l1^2+l2^2+l3^2",),
    ell0=0,
    n0=0,
    max_degree=3,
)

_CHAINS = {
    "su3": SU3_CHAIN,
    "so5": SO5_CHAIN,
    "schroedinger3": SCHROEDINGER_CHAIN,
    "so3": SO3_CHAIN,
}


def get_chain(algebra_name: str) -> Optional[ChainData]:
    """Published data for a catalog algebra, None for algebras without a worked chain."""
    return _CHAINS.get(canonical_name(algebra_name))


def published_polynomials(poisson: PoissonRing, chain: ChainData, variants: bool = False) -> List[Tuple[str, object]]:
    """The published basis in order; with ``variants`` the printed forms replace the corrected ones."""
    replaced = dict(chain.printed_variants) if variants else {}
    named: Dict[str, object] = {}
    out = []
    for name, text in chain.published:
        poly = poisson.parse(replaced.get(name, text), named)
        named[name] = poly
        out.append((name, poly))
    return out


def published_basis(poisson: PoissonRing, chain: ChainData) -> CommutantBasis:
    named = published_polynomials(poisson, chain)
    return CommutantBasis.from_polynomials(poisson, [p for _, p in named], names=[n for n, _ in named])


def casimir_polynomials(poisson: PoissonRing, chain: ChainData) -> List[object]:
    named = dict(published_polynomials(poisson, chain))
    return [poisson.parse(text, named) for text in chain.casimirs]


def basis_change_path(chain: ChainData) -> str:
    return os.path.join(DATA_DIR, chain.basis_change) if chain.basis_change else ""
