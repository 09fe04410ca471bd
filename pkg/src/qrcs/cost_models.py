"""Asymptotic runtime models for the classical CG and quantum CJS solvers.

All logarithms are natural logarithms. Runtimes are in abstract logical
time steps and are returned as floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np


@dataclass(frozen=True)
class CostParams:
    """Inputs shared by every cost model.

    :param n: linear-system dimension (number of mesh edges), at least 2
    :param d: sparsity parameter, max nonzeros per matrix row
    :param kappa: condition number
    :param epsilon: relative solution precision, strictly inside (0, 1)
    :param c_cg: classical prefactor in logical time steps
    :param c_cjs: quantum prefactor in logical time steps
    """

    n: float
    d: int
    kappa: float
    epsilon: float
    c_cg: float = 1.0
    c_cjs: float = 1.0

    def __post_init__(self):
        if not self.n >= 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"d must be an integer >= 1, got {self.d}")
        object.__setattr__(self, "d", int(self.d))
        if not self.kappa > 0:
            raise ValueError(f"kappa must be > 0, got {self.kappa}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie strictly inside (0, 1), got {self.epsilon}")
        if not self.c_cg > 0:
            raise ValueError(f"c_cg must be > 0, got {self.c_cg}")
        if not self.c_cjs > 0:
            raise ValueError(f"c_cjs must be > 0, got {self.c_cjs}")

    def with_(self, **changes) -> "CostParams":
        return replace(self, **changes)


class ModelVariant(str, Enum):
    CG = "CG"
    CJS = "CJS"
    CJS_WITH_CORRECTION = "CJSWithCorrection"
    CJS_CKS = "CJS_CKS"

    @classmethod
    def parse(cls, tag) -> "ModelVariant":
        if isinstance(tag, cls):
            return tag
        for v in cls:
            if v.value.lower() == str(tag).lower() or v.name.lower() == str(tag).lower():
                return v
        raise ValueError(f"unknown model variant {tag!r}; expected one of {[v.value for v in cls]}")


KAPPA_MODES = ("fixed", "unpreconditioned", "scherer2d", "scherer3d")


@dataclass(frozen=True)
class KappaScalingLaw:
    """How the condition number grows with problem size.

    ``fixed`` uses ``value``; ``unpreconditioned`` is N^(M/2) for ``dims`` M;
    ``scherer2d`` is N and ``scherer3d`` is N^(2/3). Big-O constants are 1.
    """

    mode: str = "fixed"
    value: float | None = 1e4
    dims: int | None = None

    def __post_init__(self):
        mode = self.mode.lower()
        object.__setattr__(self, "mode", mode)
        if mode not in KAPPA_MODES:
            raise ValueError(f"unknown kappa mode {self.mode!r}; expected one of {KAPPA_MODES}")
        if mode == "fixed" and not (self.value is not None and self.value > 0):
            raise ValueError("fixed kappa law requires value > 0")
        if mode == "unpreconditioned" and self.dims not in (1, 2, 3):
            raise ValueError(f"unpreconditioned kappa law requires dims in {{1, 2, 3}}, got {self.dims}")

    @classmethod
    def fixed(cls, value: float) -> "KappaScalingLaw":
        return cls("fixed", value=value)

    @classmethod
    def unpreconditioned(cls, dims: int) -> "KappaScalingLaw":
        return cls("unpreconditioned", value=None, dims=dims)


def cg_runtime(p: CostParams) -> float:
    """C_CG * kappa * d * ln(1/eps) * N."""
    return p.c_cg * p.kappa * p.d * math.log(1.0 / p.epsilon) * p.n


def correction_factor(p: CostParams) -> float:
    """Subleading factor exp(2 sqrt(ln 5 * ln(d^2 kappa / eps^2))) hidden by the soft-O in the CJS bound."""
    arg = p.d**2 * p.kappa / p.epsilon**2
    if arg <= 1.0:
        raise ValueError(f"correction factor needs d^2*kappa/eps^2 > 1, got {arg}")
    return math.exp(2.0 * math.sqrt(math.log(5.0) * math.log(arg)))


def cjs_runtime(p: CostParams, with_correction: bool = False) -> float:
    """C_CJS * kappa * d^7 * eps^-2 * ln N, optionally times :func:`correction_factor`."""
    t = p.c_cjs * p.kappa * float(p.d) ** 7 / p.epsilon**2 * math.log(p.n)
    if with_correction:
        t *= correction_factor(p)
    return t


def cjs_cks_runtime(p: CostParams) -> float:
    """CJS with the inner linear solver swapped for CKS: eps^-2 becomes ln(1/eps)/eps."""
    return p.c_cjs * p.kappa * float(p.d) ** 7 * math.log(p.n) * math.log(1.0 / p.epsilon) / p.epsilon


def runtime(p: CostParams, variant: ModelVariant | str) -> float:
    variant = ModelVariant.parse(variant)
    if variant is ModelVariant.CG:
        return cg_runtime(p)
    if variant is ModelVariant.CJS:
        return cjs_runtime(p)
    if variant is ModelVariant.CJS_WITH_CORRECTION:
        return cjs_runtime(p, with_correction=True)
    return cjs_cks_runtime(p)


def kappa_scaling(law: KappaScalingLaw, n: float) -> float:
    if not n >= 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if law.mode == "fixed":
        return float(law.value)
    if law.mode == "unpreconditioned":
        return float(n) ** (law.dims / 2.0)
    if law.mode == "scherer2d":
        return float(n)
    return float(n) ** (2.0 / 3.0)


def rcs_from_solution(r_vec, x_vec) -> float:
    """Scalar RCS sigma = |<R, x>|^2 / (4 pi).

    The inner product conjugates ``r_vec`` (``numpy.vdot``); for real R the
    choice is immaterial.
    """
    r = np.asarray(r_vec, dtype=complex).ravel()
    x = np.asarray(x_vec, dtype=complex).ravel()
    if r.size == 0 or r.shape != x.shape:
        raise ValueError(f"R and x must be nonempty and equal length, got {r.size} and {x.size}")
    return float(abs(np.vdot(r, x)) ** 2 / (4.0 * math.pi))
