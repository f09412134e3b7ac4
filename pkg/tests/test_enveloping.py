import pytest

from conftest import CATALOG, random_poly, random_scalar
from liecomm.catalog import get_algebra, get_chain
from liecomm.closure import NotExpressibleError
from liecomm.enveloping import (
    SYMMETRIZE_MAX_DEGREE,
    EnvelopingAlgebra,
    NCPolynomial,
    commutative_image,
    nc_casimir_check,
    nc_commutator,
    nc_express,
    pbw_normalize,
    symmetrize,
)
from liecomm.poisson import PoissonRing
from liecomm.scalars import IMAG

SEEDS = range(25)


@pytest.fixture(scope="module")
def algebras():
    out = {}
    for name in CATALOG:
        alg = get_algebra(name)
        out[name] = (EnvelopingAlgebra(alg), PoissonRing(alg))
    return out


@pytest.fixture(scope="module")
def su3_env(su3):
    return EnvelopingAlgebra(su3)


def random_nc(env, rng, max_length=2, terms=3):
    out = {}
    for _ in range(terms):
        length = int(rng.integers(0, max_length + 1))
        word = tuple(int(k) for k in rng.integers(0, len(env.names), size=length))
        out[word] = out.get(word, env.coerce(0)) + random_scalar(rng)
    return NCPolynomial({w: c for w, c in out.items() if c})


def test_generator_commutator(su3_env):
    l1, l2, l3 = (su3_env.letter(n) for n in ("L1", "L2", "L3"))
    assert nc_commutator(su3_env, l1, l2) == su3_env.scale(l3, IMAG)
    assert nc_commutator(su3_env, l2, l1) == su3_env.scale(l3, -IMAG)


def test_pbw_normal_form(su3_env):
    reordered = pbw_normalize(su3_env, NCPolynomial({(1, 0): su3_env.one}))
    assert reordered == {(0, 1): su3_env.one, (2,): -IMAG}
    assert su3_env.parse("L2*L1") == reordered
    assert su3_env.format(reordered) == "L1*L2 - i*L3"


@pytest.mark.parametrize("name", CATALOG)
@pytest.mark.parametrize("rng", SEEDS, indirect=True)
def test_commutator_lowers_the_filtration(algebras, name, rng):
    env, _ = algebras[name]
    p, q = random_nc(env, rng), random_nc(env, rng)
    bracket = env.commutator(p, q)
    if bracket and p and q:
        assert bracket.degree() <= env.normalize(p).degree() + env.normalize(q).degree() - 1


@pytest.mark.parametrize("name", CATALOG)
@pytest.mark.parametrize("rng", SEEDS, indirect=True)
def test_symmetrization_keeps_the_leading_term(algebras, name, rng):
    env, poisson = algebras[name]
    degree = int(rng.integers(1, 4))
    p = random_poly(poisson, rng, homogeneous=degree)
    image = symmetrize(env, p)
    top = env.leading_part(image, degree)
    assert poisson.from_vector(commutative_image(top, poisson.dim)) == p


@pytest.mark.parametrize("name", CATALOG)
@pytest.mark.parametrize("rng", SEEDS, indirect=True)
def test_symmetrization_is_a_homomorphism_on_linear_elements(algebras, name, rng):
    env, poisson = algebras[name]
    x, y = random_poly(poisson, rng, homogeneous=1), random_poly(poisson, rng, homogeneous=1)
    assert symmetrize(env, poisson.lp_bracket(x, y)) == env.commutator(symmetrize(env, x), symmetrize(env, y))


def test_symmetrization_averages_orderings(su3_env, su3_poisson):
    image = symmetrize(su3_env, su3_poisson.parse("l1*l2"))
    expected = su3_env.scale(su3_env.add(su3_env.parse("L1*L2"), su3_env.parse("L2*L1")), "1/2")
    assert image == su3_env.normalize(expected)


def test_symmetrization_degree_limit(su3_env, su3_poisson):
    with pytest.raises(ValueError):
        symmetrize(su3_env, su3_poisson.parse("l1^%d" % (SYMMETRIZE_MAX_DEGREE + 1)))


def test_symmetrized_casimirs_are_central(su3_env, su3_poisson, su3_named):
    casimir = symmetrize(su3_env, su3_poisson.parse("b1 + b2", su3_named))
    generators = [(n, su3_env.letter(n)) for n in su3_env.names]
    assert nc_casimir_check(su3_env, casimir, generators) == []
    broken = su3_env.add(casimir, su3_env.letter("L1"))
    assert nc_casimir_check(su3_env, broken, generators)


def test_printed_ordered_forms(su3_env, su3_named):
    chain = get_chain("su3")
    printed = dict(chain.nc_printed)
    for name in ("b1", "b2", "C1", "C2"):
        assert symmetrize(su3_env, su3_named[name]) == su3_env.parse(printed[name]), name
    assert symmetrize(su3_env, su3_named["C2"]) != su3_env.parse(chain.extra["C2_printed_nc"])


def test_symmetrized_quartic_keeps_its_leading_part(su3_env, su3_poisson, su3_named):
    image = symmetrize(su3_env, su3_named["D1"])
    top = su3_env.leading_part(image, 4)
    assert su3_poisson.from_vector(commutative_image(top, su3_poisson.dim)) == su3_named["D1"]
    casimir_generators = [(n, su3_env.letter(n)) for n in ("L1", "L2", "L3")]
    assert nc_casimir_check(su3_env, image, casimir_generators) == []


def test_nc_express_in_so3():
    env = EnvelopingAlgebra(get_algebra("so3"))
    casimir = env.parse("L1^2 + L2^2 + L3^2")
    target = env.parse("L1*L1 + L2*L2")
    expression = nc_express(env, target, [("A", env.letter("L3"), 1)], [("z", casimir, 2)], 2)
    assert expression.format() == {"A^2": "-1", "A": "0", "1": "z"}


def test_nc_express_reports_the_residual():
    env = EnvelopingAlgebra(get_algebra("so3"))
    with pytest.raises(NotExpressibleError) as info:
        nc_express(env, env.letter("L1"), [("A", env.letter("L3"), 1)], [], 1)
    assert info.value.residual == {(0,): env.one}
