"""Feasibility analysis of quantum linear solvers for radar cross section problems."""

__version__ = "0.1.0"

from .cost_models import (  # noqa: E402
    CostParams,
    KappaScalingLaw,
    ModelVariant,
    cg_runtime,
    cjs_cks_runtime,
    cjs_runtime,
    kappa_scaling,
    rcs_from_solution,
)
from .crossover import Regime, classify_regime, crossover_exact, crossover_parameter, runtime_curves  # noqa: E402
from .lambertw import lambert_w  # noqa: E402
from .mesh import MeshTopology, build_mesh, edge_count, row_nonzero_counts, sparsity_parameter  # noqa: E402
from .precision import DbConvention, crossover_vs_precision, delta_db, range_error_pct, regime_table  # noqa: E402
from .resources import (  # noqa: E402
    AnchorEstimate,
    HardwareProfile,
    extrapolate,
    fit_prefactor,
    hamiltonian_accounting,
    improvement_scenario,
    wall_clock,
)
