import pytest

from liecomm.catalog import get_algebra, get_subalgebra
from liecomm.closure import (
    NOT_EXPRESSIBLE,
    BasisChangeError,
    NotExpressibleError,
    SymbolRing,
    change_basis,
    closes,
    express_bracket,
    express_polynomial,
    find_central,
    find_relations,
    restricted_closure,
)
from liecomm.commutant import CommutantBasis, CommutantSolver
from liecomm.linalg import NoSolutionsExist, in_span
from liecomm.presentation import build_presentation


def su3_partial_basis(poisson, named, names=("b1", "b2", "C1", "C2", "D1", "D2")):
    return CommutantBasis.from_polynomials(poisson, [named[n] for n in names], names=list(names))


@pytest.fixture(scope="module")
def so3_basis():
    alg = get_algebra("so3")
    return CommutantSolver(alg, get_subalgebra("so3", "so2", alg)).run(2)


def test_symbol_weights_and_monomials(su3_poisson, su3_named):
    symbols = SymbolRing(su3_partial_basis(su3_poisson, su3_named))
    assert symbols.weights == (2, 2, 3, 3, 4, 4)
    monomials = symbols.monomials(4)
    assert len(monomials) == 5
    assert monomials[0] == (2, 0, 0, 0, 0, 0)
    assert all(symbols.weight_of(m) == 4 for m in monomials)


def test_evaluation_is_the_product_of_values(su3_poisson, su3_named):
    symbols = SymbolRing(su3_partial_basis(su3_poisson, su3_named))
    value = symbols.evaluate(symbols.parse("b1*C2 - 3*D1"))
    assert value == su3_named["b1"] * su3_named["C2"] - su3_named["D1"] * 3


def test_express_polynomial(su3_poisson, su3_named):
    symbols = SymbolRing(su3_partial_basis(su3_poisson, su3_named))
    target = su3_named["b1"] * su3_named["b2"] - su3_named["D2"]
    expressed = express_polynomial(symbols, target, 4)
    assert symbols.evaluate(expressed) == target
    with pytest.raises(NoSolutionsExist):
        express_polynomial(symbols, su3_poisson.parse("l1^4"), 4)


def test_quartic_relation_is_found(su3_poisson, su3_named):
    symbols = SymbolRing(su3_partial_basis(su3_poisson, su3_named))
    relations = find_relations(symbols, 4)
    assert len(relations) == 1
    expected = symbols.parse("D1 + D2 - b1*b2")
    ratio = relations[0].LC / expected.LC
    assert relations[0] == expected * ratio
    assert find_relations(symbols, 3) == []


def test_cubic_central_combination(su3_poisson, su3_named):
    symbols = SymbolRing(su3_partial_basis(su3_poisson, su3_named))
    (z,) = find_central(symbols, 3)
    value = symbols.evaluate(z)
    assert in_span([dict(su3_named["C1"] + su3_named["C2"] * 2)], dict(value))


def test_bracket_beyond_the_basis_is_not_expressible(su3_poisson, su3_named):
    basis = su3_partial_basis(su3_poisson, su3_named, ("b1", "b2", "C1", "C2", "D1"))
    symbols = SymbolRing(basis)
    assert express_bracket(symbols, 2, 3) is not NOT_EXPRESSIBLE
    assert express_bracket(symbols, 2, 4) is NOT_EXPRESSIBLE
    assert not closes(basis)
    with pytest.raises(NotExpressibleError) as info:
        build_presentation(basis)
    assert info.value.pair == ("C1", "D1")
    assert info.value.residual


def test_toy_chain_closes(so3_basis):
    assert closes(so3_basis)
    pres = build_presentation(so3_basis)
    assert pres.relations == []
    assert pres.central_combinations == []
    assert pres.generating_function is None


def test_basis_change_on_the_toy_chain(so3_basis):
    change = change_basis(so3_basis, [("w", "a1"), ("z", "b1 + a1^2")])
    assert change.basis.names == ["w", "z"]
    assert change.discarded == []
    poisson = so3_basis.poisson
    assert change.basis["z"].poly == poisson.parse("l1^2 + l2^2 + l3^2")


@pytest.mark.parametrize(
    "definitions",
    [
        [("w", "a1")],
        [("w", "a1"), ("z", "b1 + a1")],
        [("w", "a1"), ("z", "b1 - b1")],
        [("w", "a1"), ("z", "q1")],
    ],
)
def test_bad_basis_changes(so3_basis, definitions):
    with pytest.raises(BasisChangeError):
        change_basis(so3_basis, definitions)


def test_basis_change_outside_the_commutant(su3_poisson):
    alg = get_algebra("su3")
    solver = CommutantSolver(alg, get_subalgebra("su3", "so3", alg), su3_poisson)
    basis = CommutantBasis.from_polynomials(su3_poisson, [su3_poisson.parse("l1")], names=["u"])
    with pytest.raises(BasisChangeError):
        change_basis(basis, [("v", "u")], solver)


def test_basis_change_discards_the_redundant_quartic(su3_poisson, su3_named):
    basis = su3_partial_basis(su3_poisson, su3_named)
    definitions = [("c1", "b1"), ("c2", "b2"), ("c3", "C1/2 + C2"), ("A", "C1/2 - C2"), ("B", "D1")]
    change = change_basis(basis, definitions)
    assert [name for name, _ in change.discarded] == ["D2"]
    assert change.basis.names == ["c1", "c2", "c3", "A", "B"]
    assert [e.is_central for e in change.basis] == [True, True, True, False, False]


@pytest.mark.slow
def test_schroedinger_quadratic_subset(schroedinger_poisson, schroedinger_named):
    from liecomm.catalog import get_chain, published_basis

    chain = get_chain("schroedinger3")
    basis = published_basis(schroedinger_poisson, chain)
    table = restricted_closure(basis, chain.quadratic_subset, 3)
    symbols = SymbolRing(basis)
    for x, y, expected in chain.brackets:
        assert symbols.evaluate(table[(x, y)]) == symbols.evaluate(symbols.parse(expected))


@pytest.mark.slow
def test_schroedinger_relations_at_weights_six_and_seven(schroedinger_poisson):
    from liecomm.catalog import get_chain, published_basis

    chain = get_chain("schroedinger3")
    symbols = SymbolRing(published_basis(schroedinger_poisson, chain))
    found = {w: [dict(r) for r in find_relations(symbols, w)] for w in chain.relation_weights}
    quadratic = symbols.parse("C1^2 + C2^2 - B1*D3")
    assert in_span(found[6], dict(quadratic))
    assert in_span(found[7], dict(symbols.parse("a1") * quadratic))
    assert all(not symbols.evaluate(symbols.ring.from_dict(r)) for r in found[6])


@pytest.mark.slow
def test_so5_central_combination(so5_poisson):
    from liecomm.catalog import get_chain, published_basis

    symbols = SymbolRing(published_basis(so5_poisson, get_chain("so5")))
    values = [dict(symbols.evaluate(z)) for z in find_central(symbols, 4)]
    assert in_span(values, dict(symbols.evaluate(symbols.parse("D1 + D3 + 4*a1*C1"))))
    assert not in_span(values, dict(symbols.evaluate(symbols.parse("D3"))))
