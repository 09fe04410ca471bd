"""Concrete resource anchoring, wall-clock conversion and bottleneck accounting.

The CJS prefactor is fitted to one published resource estimate (Scherer et
al. 2017, 2D toy RCS problem) and then extrapolated with the asymptotic form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cost_models import CostParams, ModelVariant, runtime

CAVEAT_SINGLE_POINT_FIT = "prefactor fitted to a single published data point; extrapolation may not be in the asymptotic regime"
CAVEAT_NO_QEC = "quantum error correction overhead is not modeled beyond the seconds-per-logical-step hardware profile"


@dataclass(frozen=True)
class OracleCosts:
    logical_qubits: float
    steps: float
    toffoli: float


@dataclass(frozen=True)
class AnchorEstimate:
    n: float = 3.32e8
    kappa: float = 1e4
    d: int = 7
    epsilon: float = 1e-2
    with_oracles: OracleCosts = OracleCosts(logical_qubits=3e8, steps=1.8e29, toffoli=9.5e28)
    without_oracles: OracleCosts = OracleCosts(logical_qubits=341, steps=3.30e25, toffoli=1.29e25)

    def __post_init__(self):
        for name in ("logical_qubits", "steps", "toffoli"):
            w, wo = getattr(self.with_oracles, name), getattr(self.without_oracles, name)
            if not (w > 0 and wo > 0):
                raise ValueError(f"anchor {name} must be positive")
            if w < wo:
                raise ValueError(f"anchor {name} with oracles must not be below the oracle-free figure")

    def cost_params(self, c_cg: float = 1.0, c_cjs: float = 1.0) -> CostParams:
        return CostParams(n=self.n, d=self.d, kappa=self.kappa, epsilon=self.epsilon, c_cg=c_cg, c_cjs=c_cjs)


SCHERER_ANCHOR = AnchorEstimate()

# Grid behind the anchor: 12,885 vertices per side of a square lattice.
SCHERER_GRID_SIDE = 12885
SCHERER_N_EXACT = 332_020_680


@dataclass(frozen=True)
class HardwareProfile:
    seconds_per_logical_step: float = 25e-6
    universe_age_years: float = 1.38e10
    seconds_per_year: float = 365.25 * 86400.0

    def __post_init__(self):
        if not (self.seconds_per_logical_step > 0 and self.universe_age_years > 0 and self.seconds_per_year > 0):
            raise ValueError("hardware profile constants must be positive")


@dataclass(frozen=True)
class WallClock:
    steps: float
    seconds: float
    years: float
    universe_ages: float
    caveats: tuple[str, ...] = field(default=(CAVEAT_NO_QEC,))

    def as_dict(self) -> dict:
        return {
            "steps": self.steps,
            "seconds": self.seconds,
            "years": self.years,
            "universe_ages": self.universe_ages,
            "caveats": list(self.caveats),
        }


def scaling_denominator(anchor: AnchorEstimate) -> float:
    """kappa * d^7 * eps^-2 * ln N at the anchor."""
    return anchor.kappa * float(anchor.d) ** 7 / anchor.epsilon**2 * math.log(anchor.n)


def fit_prefactor(anchor: AnchorEstimate = SCHERER_ANCHOR) -> float:
    return anchor.with_oracles.steps / scaling_denominator(anchor)


@dataclass(frozen=True)
class Extrapolation:
    steps: float
    variant: ModelVariant
    params: CostParams
    caveats: tuple[str, ...] = (CAVEAT_SINGLE_POINT_FIT,)


def extrapolate(c_cjs: float, p: CostParams, variant: ModelVariant | str = ModelVariant.CJS) -> Extrapolation:
    variant = ModelVariant.parse(variant)
    q = p.with_(c_cjs=c_cjs)
    return Extrapolation(steps=runtime(q, variant), variant=variant, params=q)


def wall_clock(steps: float, hw: HardwareProfile = HardwareProfile()) -> WallClock:
    if not steps > 0:
        raise ValueError(f"steps must be positive, got {steps}")
    seconds = steps * hw.seconds_per_logical_step
    years = seconds / hw.seconds_per_year
    return WallClock(steps=steps, seconds=seconds, years=years, universe_ages=years / hw.universe_age_years)


def improvement_scenario(base_steps: float, orders_of_magnitude: float, hw: HardwareProfile = HardwareProfile()) -> WallClock:
    """Wall clock after an algorithmic speedup of 10**orders_of_magnitude."""
    if not base_steps > 0:
        raise ValueError(f"base_steps must be positive, got {base_steps}")
    if orders_of_magnitude < 0:
        raise ValueError(f"orders_of_magnitude must be >= 0, got {orders_of_magnitude}")
    return wall_clock(base_steps / 10.0**orders_of_magnitude, hw)


# Published magnitudes at the anchor for the Hamiltonian simulation subroutine.
ANCHOR_PER_CALL_STEPS = 2.5e12
ANCHOR_MATRIX_ORACLE_QUERIES = 1e20
ANCHOR_ORACLE_CIRCUIT_STEPS = 1e8
NARRATIVE_CALLS = 2e5


def dominant_time_resolution(p: CostParams) -> float:
    """kappa^(5/4) / eps^(3/2), the leading term of the per-call time discretization."""
    return p.kappa**1.25 / p.epsilon**1.5


@dataclass(frozen=True)
class HamiltonianAccounting:
    subroutine_calls: float
    per_call_time_steps: float
    total_sequential_steps: float
    matrix_oracle_queries: float
    oracle_circuit_steps: float
    narrative_calls: float = NARRATIVE_CALLS

    def __post_init__(self):
        if self.total_sequential_steps != self.subroutine_calls * self.per_call_time_steps:
            raise ValueError("total_sequential_steps must equal subroutine_calls * per_call_time_steps")

    def as_dict(self) -> dict:
        return {
            "subroutine_calls": self.subroutine_calls,
            "per_call_time_steps": self.per_call_time_steps,
            "total_sequential_steps": self.total_sequential_steps,
            "matrix_oracle_queries": self.matrix_oracle_queries,
            "oracle_circuit_steps": self.oracle_circuit_steps,
            "narrative_calls": self.narrative_calls,
        }


DEFAULT_CALLS_COEFFICIENT = 12.0
DEFAULT_PER_CALL_COEFFICIENT = ANCHOR_PER_CALL_STEPS / dominant_time_resolution(SCHERER_ANCHOR.cost_params())


def _sequential_steps(p: CostParams, calls_coefficient: float, per_call_coefficient: float) -> tuple[float, float]:
    calls = calls_coefficient / p.epsilon**2
    per_call = per_call_coefficient * dominant_time_resolution(p)
    return calls, per_call


def hamiltonian_accounting(
    p: CostParams,
    calls_coefficient: float = DEFAULT_CALLS_COEFFICIENT,
    per_call_coefficient: float = DEFAULT_PER_CALL_COEFFICIENT,
) -> HamiltonianAccounting:
    """Sequential Hamiltonian-simulation cost: ~12/eps^2 calls, each c_h * kappa^(5/4)/eps^(3/2) steps.

    Oracle queries scale with total steps from the anchor ratio; the oracle
    circuit depth is held at its anchor value.
    """
    calls, per_call = _sequential_steps(p, calls_coefficient, per_call_coefficient)
    total = calls * per_call
    a_calls, a_per_call = _sequential_steps(SCHERER_ANCHOR.cost_params(), calls_coefficient, per_call_coefficient)
    queries = ANCHOR_MATRIX_ORACLE_QUERIES * total / (a_calls * a_per_call)
    return HamiltonianAccounting(
        subroutine_calls=calls,
        per_call_time_steps=per_call,
        total_sequential_steps=total,
        matrix_oracle_queries=queries,
        oracle_circuit_steps=ANCHOR_ORACLE_CIRCUIT_STEPS,
    )
