"""Real Lambert W on the principal (W0) and lower (W-1) branches.

Halley iteration from a branch-point series or asymptotic starting guess.
"""

from __future__ import annotations

import math

BRANCH_POINT = -math.exp(-1.0)
# x may undershoot -1/e by a few ulps after round-off
_BRANCH_SLACK = 4 * 2.0**-53

_SERIES_WINDOW = 1e-4
_TOL = 1e-13
_MAX_ITER = 100

# W = sum c_k p^k around the branch point, p = +-sqrt(2(e x + 1))
_BRANCH_SERIES = (
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680863.0 / 43545600.0,
    -1963.0 / 204120.0,
)


def _branch_series(x: float, sign: float) -> float:
    p = sign * math.sqrt(max(2.0 * (math.e * x + 1.0), 0.0))
    w = 0.0
    for c in reversed(_BRANCH_SERIES):
        w = w * p + c
    return w


def _parse_branch(branch) -> int:
    if branch in (0, "principal", "0"):
        return 0
    if branch in (-1, "nonprincipal", "-1"):
        return -1
    raise ValueError(f"unknown Lambert W branch {branch!r}; use 'principal' or 'nonprincipal'")


def _initial_guess(x: float, k: int) -> float:
    if k == 0:
        if x < -0.25:
            return _branch_series(x, 1.0)
        if x <= math.e:
            return math.log1p(x)
        l1 = math.log(x)
        l2 = math.log(l1)
        return l1 - l2 + l2 / l1
    if x < -0.25:
        return _branch_series(x, -1.0)
    l1 = math.log(-x)
    l2 = math.log(-l1)
    return l1 - l2 + l2 / l1


def lambert_w(branch, x: float) -> float:
    """Solve w * exp(w) = x on the requested branch.

    :param branch: ``"principal"`` (w >= -1, x >= -1/e) or ``"nonprincipal"``
        (w <= -1, -1/e <= x < 0); ``0`` and ``-1`` are accepted too
    :raises ValueError: if x lies outside the branch's domain
    """
    k = _parse_branch(branch)
    x = float(x)
    name = "principal" if k == 0 else "nonprincipal"
    if math.isnan(x) or x < BRANCH_POINT - _BRANCH_SLACK:
        raise ValueError(f"{name} branch of Lambert W requires x >= -1/e, got {x!r}")
    if k == -1 and x >= 0.0:
        raise ValueError(f"nonprincipal branch of Lambert W requires x in [-1/e, 0), got {x!r}")
    if math.isinf(x):
        raise ValueError(f"{name} branch of Lambert W requires a finite x, got {x!r}")
    if x == 0.0:
        return 0.0
    if x <= BRANCH_POINT:
        return -1.0

    near_branch = abs(x - BRANCH_POINT) < _SERIES_WINDOW
    w = _initial_guess(x, k)
    if near_branch:
        w = _branch_series(x, 1.0 if k == 0 else -1.0)

    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0:
            return w
        wp1 = w + 1.0
        if wp1 == 0.0:
            # flat at the branch point; series value is already exact to round-off
            return w
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w_new = w - step
        if near_branch:
            # Halley is ill-conditioned here: keep the branch and only accept improvements
            if (k == 0 and w_new < -1.0) or (k == -1 and w_new > -1.0):
                return w
            if abs(w_new * math.exp(w_new) - x) >= abs(f):
                return w
        if abs(w_new - w) <= _TOL * max(abs(w_new), 1e-300):
            return w_new
        w = w_new
    raise RuntimeError(f"Lambert W ({name}) did not converge for x={x!r}")
