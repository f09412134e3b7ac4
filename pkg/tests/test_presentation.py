import dataclasses

import pytest

from liecomm.catalog import basis_change_path, get_chain, published_basis
from liecomm.closure import change_basis, load_basis_change
from liecomm.presentation import (
    CUBIC_COEFFICIENTS,
    build_presentation,
    casimir_from_h,
    cubic_coefficients,
    is_cubic_shape,
    verify_presentation,
)

SU3_COEFFICIENTS = {
    "alpha": "-8*(3*c1 + c2)",
    "beta": "24",
    "gamma": "0",
    "delta": "-16*c2*c3",
    "epsilon": "-16*c1*c2",
    "zeta": "8*c3^2*(3*c1 - c2)",
    "lambda": "-32",
    "mu": "-48*c3",
    "nu": "0",
    "xi": "8*(3*c1 + c2)",
    "rho": "-16*c1*(c1 + c2)^2",
    "sigma": "16*c2*c3",
    "chi": "16*c3*(c1*(c1^2 - c2^2) + c3^2)",
}

SO5_COEFFICIENTS = {
    "alpha": "8*(4*c1^2 - 2*c2 - c3)",
    "beta": "6",
    "gamma": "16*c1",
    "delta": "-16*c1*(c3^2 + c4)",
    "epsilon": "4*(4*c2^2 - c3^2 - 2*c4)",
    "zeta": "4*c3^2*(c4 - 6*c2^2) + 2*c4^2",
    "lambda": "-32",
    "mu": "96*c1*c3",
    "nu": "-16*c1",
    "xi": "-8*(4*c1^2 - 2*c2 - c3)",
    "rho": "16*c3*(4*(c1^2 - c2)*c3 - c4)",
    "sigma": "16*c1*(c3^2 + c4)",
    "chi": "-16*c1*c3^2*c4",
}


def chain_presentation(poisson, name):
    chain = get_chain(name)
    basis = published_basis(poisson, chain)
    change = change_basis(basis, load_basis_change(basis_change_path(chain)))
    return build_presentation(change.basis)


@pytest.fixture(scope="module")
def su3_presentation(su3_poisson):
    return chain_presentation(su3_poisson, "su3")


@pytest.fixture(scope="module")
def so5_presentation(so5_poisson):
    return chain_presentation(so5_poisson, "so5")


def test_coefficient_names():
    assert len(CUBIC_COEFFICIENTS) == 13
    assert CUBIC_COEFFICIENTS[:6] == ("alpha", "beta", "gamma", "delta", "epsilon", "zeta")


@pytest.mark.slow
def test_su3_cubic_coefficients(su3_presentation):
    pres = su3_presentation
    assert is_cubic_shape(pres)
    assert pres.names == ["c1", "c2", "c3", "A", "B", "C"]
    coefficients = cubic_coefficients(pres)
    for name, text in SU3_COEFFICIENTS.items():
        assert coefficients[name] == pres.symbols.parse(text), name


@pytest.mark.slow
def test_su3_casimir_and_generating_function(su3_presentation):
    pres = su3_presentation
    gf = pres.generating_function
    assert gf is not None
    assert gf.casimir_in_centrals == pres.symbols.parse("16*c3^2*(c1*(c1 - c2)^2 - c3^2)")
    a, b, c = pres.non_central()
    gens = pres.symbols.gens
    assert gf.h.diff(gens[b]) == pres.brackets[(a, c)]
    assert -gf.h.diff(gens[a]) == pres.brackets[(b, c)]
    assert casimir_from_h(pres).casimir == gf.casimir
    assert verify_presentation(pres) == []


@pytest.mark.slow
def test_perturbed_cubic_constant_is_reported(su3_presentation):
    pres = su3_presentation
    symbols = pres.symbols
    ac = (symbols.index("A"), symbols.index("C"))
    brackets = dict(pres.brackets)
    # beta: 24 -> 25
    brackets[ac] = brackets[ac] + symbols.symbol("B") ** 2
    report = verify_presentation(dataclasses.replace(pres, brackets=brackets))
    assert any(v.kind == "bracket" and v.generators == ("A", "C") for v in report)
    assert not any(v.kind == "bracket" and v.generators != ("A", "C") for v in report)
    assert verify_presentation(pres) == []


@pytest.mark.slow
def test_su3_published_presentation(su3_poisson):
    chain = get_chain("su3")
    basis = published_basis(su3_poisson, chain)
    pres = build_presentation(basis)
    symbols = pres.symbols
    relation_values = [symbols.evaluate(symbols.parse(r)) for r in chain.relations]
    assert all(not v for v in relation_values)
    for text in chain.central:
        z = symbols.evaluate(symbols.parse(text))
        assert all(not su3_poisson.lp_bracket(z, p) for p in basis.polys)
    assert symbols.evaluate(pres.bracket("C1", "D1")) == symbols.evaluate(symbols.parse("-4*i*F1"))
    assert pres.bracket("D1", "D2") == symbols.ring.zero
    assert pres.bracket("D1", "C1") == -pres.bracket("C1", "D1")
    assert len(pres.relations) >= 1


@pytest.mark.slow
def test_so5_cubic_coefficients(so5_presentation):
    pres = so5_presentation
    coefficients = cubic_coefficients(pres)
    for name, text in SO5_COEFFICIENTS.items():
        assert coefficients[name] == pres.symbols.parse(text), name
    gf = pres.generating_function
    assert gf.casimir_in_centrals == pres.symbols.parse("4*c3^2*(8*c2^2*c3^2 - c4^2)")
    assert verify_presentation(pres) == []


@pytest.mark.slow
def test_so5_published_relations(so5_poisson, so5_named):
    chain = get_chain("so5")
    for text in chain.relations:
        assert not so5_poisson.parse(text, so5_named)
    for text in chain.central:
        assert all(not so5_poisson.lp_bracket(so5_poisson.parse(text, so5_named), p) for p in so5_named.values())
    for x, y, expected in chain.brackets:
        assert so5_poisson.lp_bracket(so5_named[x], so5_named[y]) == so5_poisson.parse(expected, so5_named)
