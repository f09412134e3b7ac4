from .catalog import get_algebra, get_chain, get_subalgebra
from .commutant import CommutantBasis, CommutantSolver
from .lie_algebra import LieAlgebra, SubalgebraSpec, invariant_count, label_counts, validate
from .poisson import PoissonRing

__version__ = "0.1.0"
