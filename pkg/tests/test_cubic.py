import pytest

from liecomm.cubic import CubicAlgebra, SymmetrizedCubic, cubic_casimir_check
from liecomm.enveloping import EnvelopingAlgebra, nc_casimir_check
from liecomm.presentation import cubic_coefficients

# structure constants of the symmetrized su(3) > so(3) commutator algebra
SU3_NC_CONSTANTS = {
    "alpha": "-8*(3*c1 + c2 - 18)",
    "beta": "24",
    "delta": "-16*(c2 - 9)*c3",
    "epsilon": "-(16*c1*c2 + 152*c1 + 24*c2 - 144)",
    "zeta": "8*c3^2*(3*c1 - c2) + 24*c1^3 + 128/3*c1^2*c2 + 24*c1*c2^2 - 358/3*c1^2 - 18*c2^2"
            " - 68*c1*c2 - 24*c1 + 72*c2",
    "lambda": "-32",
    "mu": "-48*c3",
    "xi": "8*(3*c1 + c2 - 18)",
    "rho": "-16*c1*(c1 + c2)^2 + 168*c1^2 + 24*c2^2 + 544/3*c1*c2 + 48*c1 - 144*c2",
    "sigma": "16*(c2 - 9)*c3",
    "chi": "16*c3*(c1^3 - c1*c2^2 + c3^2 - 4*c1^2 + 3/2*c2^2 + 23/6*c1*c2 + 3/2*c1 - 9/2*c2)",
}


def su3_algebra():
    return CubicAlgebra(
        SU3_NC_CONSTANTS,
        central_names=("c1", "c2", "c3"),
        central_weights=(2, 2, 3),
        weights=(3, 4, 6),
    )


def test_unknown_coefficient():
    with pytest.raises(ValueError):
        CubicAlgebra({"omega": 1})


def test_ordering_rules():
    algebra = CubicAlgebra({"zeta": 1})
    a, b, c = (algebra.letter(n) for n in "ABC")
    assert algebra.commutator(a, b) == c
    assert algebra.commutator(a, c) == algebra.constant(1)
    assert not algebra.commutator(b, c)


@pytest.mark.parametrize(
    "coefficients",
    [
        {"alpha": 2, "xi": -2},
        {"gamma": 3, "nu": -3, "delta": 1, "sigma": -1},
        {"beta": 5, "lambda": 1, "mu": 2, "epsilon": 1, "rho": 4, "chi": 7},
    ],
)
def test_jacobi_consistent(coefficients):
    assert not CubicAlgebra(coefficients).jacobi_defect()


@pytest.mark.parametrize("coefficients", [{"alpha": 1}, {"gamma": 1}, {"delta": 2, "sigma": 1}])
def test_jacobi_defect(coefficients):
    assert CubicAlgebra(coefficients).jacobi_defect()


def test_casimir_needs_gamma_and_nu_zero():
    algebra = CubicAlgebra({"gamma": 1, "nu": -1})
    assert not algebra.has_casimir_formula
    with pytest.raises(ValueError):
        algebra.casimir()


@pytest.mark.parametrize(
    "coefficients",
    [
        {"zeta": 1},
        {"chi": 3},
        {"beta": 2},
        {"alpha": 1, "xi": -1, "beta": 2, "lambda": 3, "rho": 1, "chi": 2},
    ],
)
def test_casimir_commutes_numeric(coefficients):
    algebra = CubicAlgebra(coefficients)
    assert cubic_casimir_check(algebra) == []


def test_casimir_commutes_su3_constants():
    algebra = su3_algebra()
    assert algebra.has_casimir_formula
    assert not algebra.jacobi_defect()
    assert nc_casimir_check(algebra, algebra.casimir(), algebra.generators()) == []


def test_casimir_leading_term():
    algebra = su3_algebra()
    K = algebra.casimir()
    c = algebra.names.index("C")
    assert K[(c, c)] == algebra.one
    assert max(algebra.weight(w) for w in K) == 12


@pytest.mark.slow
def test_symmetrized_su3(su3_poisson):
    from test_presentation import chain_presentation

    pres = chain_presentation(su3_poisson, "su3")
    symmetrized = SymmetrizedCubic(pres, EnvelopingAlgebra(su3_poisson.alg))
    assert set(symmetrized.generators) == {"A", "B", "C"}
    assert symmetrized.algebra.central_names == ("c1", "c2", "c3")
    classical = cubic_coefficients(pres)
    limit = symmetrized.classical_limit()
    for name, value in limit.items():
        expected = {tuple(m[k] for k in pres.central()): c for m, c in classical[name].items()}
        assert dict(value) == expected, name
    assert symmetrized.check() == []
    constants = symmetrized.algebra.coefficients
    assert not constants["gamma"]
    assert not constants["nu"]
    for name, text in SU3_NC_CONSTANTS.items():
        assert constants[name] == symmetrized.algebra.coerce(text), name
    assert constants["xi"] == -constants["alpha"]
