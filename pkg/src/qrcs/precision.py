"""Solver precision in radar-engineering units.

A multiplicative RCS error eps maps to an additive dB error, and through the
fourth-root dependence of detection range on RCS to a range error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .cost_models import CostParams
from .crossover import CrossoverResult, crossover_exact, runtime_curves

CAVEAT_DB_CONVENTION = (
    "dB error uses -10*log10(1-eps) (worst side of the error band), which matches the published "
    "table; the published closed form 10*log10(1+eps) gives 0.41 dB instead of 0.46 dB at eps=0.1"
)
CAVEAT_RANGE_FORMULA = "range error 100*(10**(delta/40)-1) is reconstructed from the radar range equation, ignoring atmospheric loss"


class DbConvention(str, Enum):
    PLUS_SIDE = "PlusSide"
    WORST_SIDE = "WorstSide"

    @classmethod
    def parse(cls, tag) -> "DbConvention":
        if isinstance(tag, cls):
            return tag
        for v in cls:
            if str(tag).lower() in (v.value.lower(), v.name.lower(), v.name.lower().replace("_", "-")):
                return v
        raise ValueError(f"unknown dB convention {tag!r}; expected one of {[v.value for v in cls]}")


def delta_db(epsilon: float, convention: DbConvention | str = DbConvention.WORST_SIDE) -> float:
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie strictly inside (0, 1), got {epsilon}")
    if DbConvention.parse(convention) is DbConvention.PLUS_SIDE:
        return 10.0 * math.log1p(epsilon) / math.log(10.0)
    return -10.0 * math.log1p(-epsilon) / math.log(10.0)


def range_error_pct(delta: float) -> float:
    """Detection range error in percent for an RCS error of ``delta`` dB."""
    if delta < 0:
        raise ValueError(f"dB error must be >= 0, got {delta}")
    return 100.0 * math.expm1(delta / 40.0 * math.log(10.0))


@dataclass(frozen=True)
class PrecisionRegime:
    epsilon: float
    delta_db: float
    range_error_pct: float
    use_case: str = ""


TABLE_EPSILONS = (1e-4, 1e-3, 1e-2, 1e-1)
TABLE_USE_CASES = ("", "Verification and validation", "Route planning", "Operational research")
# As printed: (delta dB, range error %, range error is an upper bound)
PUBLISHED_TABLE = (
    (0.00043, 0.01, True),
    (0.0043, 0.03, False),
    (0.044, 0.25, False),
    (0.46, 2.67, False),
)


def regime_table(convention: DbConvention | str = DbConvention.WORST_SIDE) -> list[PrecisionRegime]:
    rows = []
    for eps, use in zip(TABLE_EPSILONS, TABLE_USE_CASES):
        delta = delta_db(eps, convention)
        rows.append(PrecisionRegime(eps, delta, range_error_pct(delta), use))
    return rows


def sig_round(value: float, digits: int = 2) -> float:
    if value == 0:
        return 0.0
    return round(value, digits - 1 - math.floor(math.log10(abs(value))))


def _sig_digits(printed: float) -> int:
    digits = f"{printed:.10g}".replace(".", "").replace("-", "").lstrip("0")
    return max(len(digits), 1)


def matches_printed(computed: float, printed: float, max_digits: int = 2) -> bool:
    """True when ``computed`` rounds to ``printed`` at min(its printed significant figures, max_digits)."""
    digits = min(_sig_digits(printed), max_digits)
    return math.isclose(sig_round(computed, digits), sig_round(printed, digits), rel_tol=1e-9)


def format_table(rows: list[PrecisionRegime]) -> str:
    header = ("epsilon", "delta_db", "range_error_pct", "use_case")
    body = []
    for r in rows:
        rng = sig_round(r.range_error_pct)
        body.append((f"{r.epsilon:.0e}", f"{sig_round(r.delta_db):g} dB", f"{rng:g}%", r.use_case))
    widths = [max(len(h), *(len(b[i]) for b in body)) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(b, widths)).rstrip() for b in body]
    return "\n".join(lines) + "\n"


def delta_series(epsilons, convention: DbConvention | str = DbConvention.WORST_SIDE) -> list[tuple[float, float]]:
    """(epsilon, delta_db) pairs for the conversion curve."""
    return [(float(e), delta_db(float(e), convention)) for e in epsilons]


def crossover_vs_precision(d: int, epsilon_list, prefactor_ratio: float = 1.0) -> list[CrossoverResult]:
    """Crossover per precision level; ``prefactor_ratio`` is C_CJS / C_CG."""
    return [
        crossover_exact(CostParams(n=2.0, d=d, kappa=1.0, epsilon=float(e), c_cg=1.0, c_cjs=prefactor_ratio))
        for e in epsilon_list
    ]


def precision_curves(d: int, epsilon_list, n_min: float = 1e6, n_max: float = 1e13, points: int = 200,
                     prefactor_ratio: float = 1.0, kappa: float = 1.0):
    """Long-format (epsilon, algorithm, N, t) rows on a log-log grid, one CG and one CJS curve per epsilon."""
    rows = []
    for eps in epsilon_list:
        p = CostParams(n=2.0, d=d, kappa=kappa, epsilon=float(eps), c_cg=1.0, c_cjs=prefactor_ratio)
        series = runtime_curves(p, n_min, n_max, points, "loglog")
        rows += [(float(eps), "CG", n, t) for n, t in zip(series.n_values, series.t_cg)]
        rows += [(float(eps), "CJS", n, t) for n, t in zip(series.n_values, series.t_cjs)]
    return rows
