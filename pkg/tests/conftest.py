import numpy as np
import pytest

from liecomm.catalog import get_algebra, get_chain, get_subalgebra, published_polynomials
from liecomm.poisson import PoissonRing, monomial_basis
from liecomm.scalars import scalar

CATALOG = ["su3", "so5", "schroedinger3", "so3"]


@pytest.fixture(scope="session")
def su3():
    return get_algebra("su3")


@pytest.fixture(scope="session")
def so5():
    return get_algebra("so5")


@pytest.fixture(scope="session")
def schroedinger():
    return get_algebra("schroedinger3")


@pytest.fixture(scope="session")
def so3():
    return get_algebra("so3")


@pytest.fixture(scope="session")
def su3_poisson(su3):
    return PoissonRing(su3)


@pytest.fixture(scope="session")
def so5_poisson(so5):
    return PoissonRing(so5)


@pytest.fixture(scope="session")
def schroedinger_poisson(schroedinger):
    return PoissonRing(schroedinger)


@pytest.fixture(scope="session")
def su3_named(su3_poisson):
    return dict(published_polynomials(su3_poisson, get_chain("su3")))


@pytest.fixture(scope="session")
def so5_named(so5_poisson):
    return dict(published_polynomials(so5_poisson, get_chain("so5")))


@pytest.fixture(scope="session")
def schroedinger_named(schroedinger_poisson):
    return dict(published_polynomials(schroedinger_poisson, get_chain("schroedinger3")))


def chain_setup(name):
    alg = get_algebra(name)
    chain = get_chain(name)
    return alg, get_subalgebra(name, chain.subalgebra, alg), chain


def random_scalar(rng, bound=5, complex_part=True):
    re = int(rng.integers(-bound, bound + 1))
    im = int(rng.integers(-bound, bound + 1)) if complex_part and rng.random() < 0.3 else 0
    return scalar(re, im)


def random_poly(poisson, rng, max_degree=2, terms=3, homogeneous=None):
    """A few random monomials with small Gaussian-integer coefficients."""
    out = poisson.zero
    for _ in range(terms):
        degree = homogeneous if homogeneous is not None else int(rng.integers(0, max_degree + 1))
        monomials = monomial_basis(poisson.dim, degree)
        monom = monomials[int(rng.integers(0, len(monomials)))]
        out += poisson.monomial(monom) * random_scalar(rng)
    return out


@pytest.fixture
def rng(request):
    seed = getattr(request, "param", 0)
    return np.random.default_rng(seed)
