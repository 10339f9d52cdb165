"""Exact and asymptotic Haar-measure integrals over the classical
compact groups, with the quantum-information layer they support.

The monomial engines (`moments`), representation matrix elements
(`irreps`), spin-j closed forms (`su2`), bipartite entropy tools
(`entropy`), and the samplers behind every Monte Carlo cross-check
(`sampling`) are importable directly; the most used entry points are
re-exported here.
"""

from .entropy import (
    mc_average_entropy,
    page_entropy_approx,
    page_entropy_exact,
    page_entropy_fraction,
    partial_trace,
    schmidt,
    von_neumann_entropy,
)
from .irreps import (
    RepFactor,
    RepMatrixElementSpec,
    asymptotic_irrep,
    build_irrep_basis,
    integrate_irrep_exact,
    integrate_irrep_mc,
    rho_matrix,
)
from .moments import (
    Factor,
    MonomialSpec,
    UnsupportedIntegralError,
    asymptotic_leading,
    exact_integral,
)
from .sampling import RngStream, mc_expectation, sample_group
from .su2 import (
    Su2Factor,
    Su2MonomialSpec,
    su2_integral_closed,
    su2_integral_quadrature,
    wigner_D,
    wigner_small_d,
)
from .tableaux import (
    enumerate_gl_tableaux,
    enumerate_o_tableaux,
    enumerate_sp_tableaux,
)
from .tensors import CostGateError

__version__ = "0.1.0"

__all__ = [
    "CostGateError",
    "Factor",
    "MonomialSpec",
    "RepFactor",
    "RepMatrixElementSpec",
    "RngStream",
    "Su2Factor",
    "Su2MonomialSpec",
    "UnsupportedIntegralError",
    "asymptotic_irrep",
    "asymptotic_leading",
    "build_irrep_basis",
    "enumerate_gl_tableaux",
    "enumerate_o_tableaux",
    "enumerate_sp_tableaux",
    "exact_integral",
    "integrate_irrep_exact",
    "integrate_irrep_mc",
    "mc_average_entropy",
    "mc_expectation",
    "page_entropy_approx",
    "page_entropy_exact",
    "page_entropy_fraction",
    "partial_trace",
    "rho_matrix",
    "sample_group",
    "schmidt",
    "su2_integral_closed",
    "su2_integral_quadrature",
    "von_neumann_entropy",
    "wigner_D",
    "wigner_small_d",
    "__version__",
]
