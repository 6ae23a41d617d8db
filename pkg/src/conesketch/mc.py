"""Monte Carlo verification of the concentration behavior.

Estimates come back with a Wilson 95% lower confidence limit
(one-sided, z = 1.6449) so that comparisons against the closed-form
bounds stay honest at finite sample sizes: an empirical rate of
10000/10000 still only certifies a rate of about 0.99973.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CalibrationError, UsageError
from .gen import INFEASIBLE_TARGET, LabeledInstance
from .instance import IP
from .linalg import two_norm
from .projector import apply, apply_to_instance, sample_projector
from .rng import generator, mix
from .solver import (
    INFEASIBLE,
    SolverOptions,
    solve_ip_feasibility,
    solve_lp_feasibility,
)

Z_95_ONE_SIDED = 1.6448536269514722


@dataclass(frozen=True)
class McEstimate:
    successes: int
    trials: int
    rate: float
    wilson_low: float


def wilson_lower(successes: int, trials: int, z: float = Z_95_ONE_SIDED) -> float:
    """One-sided Wilson score lower confidence limit for a proportion."""
    if trials < 1:
        raise UsageError(f"need at least one trial, got {trials}")
    if not 0 <= successes <= trials:
        raise UsageError(f"successes {successes} outside [0, {trials}]")
    phat = successes / trials
    z2 = z * z
    center = phat + z2 / (2.0 * trials)
    radius = z * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
    return max(0.0, (center - radius) / (1.0 + z2 / trials))


def _estimate(successes: int, trials: int) -> McEstimate:
    return McEstimate(
        successes=successes,
        trials=trials,
        rate=successes / trials,
        wilson_low=wilson_lower(successes, trials),
    )


def _random_unit(rng: np.random.Generator, m: int) -> np.ndarray:
    while True:
        x = rng.standard_normal(m)
        nx = two_norm(x)
        if nx > 1e-12:
            return x / nx


def estimate_distortion(
    family: str, k: int, m: int, eps: float, trials: int, seed: int
) -> McEstimate:
    """Rate at which a fresh sketch keeps a fresh unit vector's norm
    within [1 - eps, 1 + eps]."""
    if not 0.0 < eps < 1.0:
        raise UsageError(f"eps must lie in (0, 1), got {eps}")
    if trials < 1:
        raise UsageError(f"need at least one trial, got {trials}")
    successes = 0
    for t in range(trials):
        st = mix(seed, t)
        x = _random_unit(generator(mix(st, 1)), m)
        proj = sample_projector(family, k, m, mix(st, 0))
        norm = two_norm(apply(proj, x))
        if 1.0 - eps <= norm <= 1.0 + eps:
            successes += 1
    return _estimate(successes, trials)


def estimate_kernel_avoidance(
    family: str, k: int, m: int, trials: int, seed: int
) -> McEstimate:
    """Rate at which a fresh sketch keeps a fresh nonzero vector
    nonzero (norm above 1e-12)."""
    if trials < 1:
        raise UsageError(f"need at least one trial, got {trials}")
    successes = 0
    for t in range(trials):
        st = mix(seed, t)
        rng = generator(mix(st, 1))
        x = rng.standard_normal(m)
        while two_norm(x) <= 1e-12:
            x = rng.standard_normal(m)
        proj = sample_projector(family, k, m, mix(st, 0))
        if two_norm(apply(proj, x)) > 1e-12:
            successes += 1
    return _estimate(successes, trials)


def estimate_infeasibility_preservation(
    labeled: LabeledInstance,
    family: str,
    k: int,
    projectors: int,
    seed: int,
    opts: SolverOptions | None = None,
) -> McEstimate:
    """Rate at which sketching keeps a certified-infeasible instance
    infeasible, over fresh projectors."""
    if projectors < 1:
        raise UsageError(f"need at least one projector, got {projectors}")
    if labeled.label != INFEASIBLE_TARGET:
        warnings.warn(
            "instance is not labeled infeasible; this measures the wrong direction",
            stacklevel=2,
        )
    opts = opts or SolverOptions()
    inst = labeled.instance
    solve = solve_ip_feasibility if inst.domain == IP else solve_lp_feasibility
    successes = 0
    for j in range(projectors):
        proj = sample_projector(family, k, inst.m, mix(seed, j))
        verdict = solve(apply_to_instance(proj, inst), opts)
        if verdict.status == INFEASIBLE:
            successes += 1
    return _estimate(successes, projectors)


def calibrate_c(
    family: str,
    eps_grid,
    k_grid,
    trials: int,
    seed: int,
    m: int | None = None,
) -> float:
    """Largest constant compatible with the measured distortion rates.

    For each grid point the bound 1 - 2 exp(-c eps^2 k) must stay at or
    below the Wilson lower limit of the measured rate; the binding
    constraint over the grid gives the calibrated constant. The ambient
    dimension defaults to the largest k in the grid.
    """
    eps_grid = list(eps_grid)
    k_grid = list(k_grid)
    if not eps_grid or not k_grid:
        raise UsageError("eps_grid and k_grid must be nonempty")
    if m is None:
        m = max(k_grid)
    best = math.inf
    idx = 0
    for eps in eps_grid:
        for k in k_grid:
            est = estimate_distortion(family, k, m, eps, trials, mix(seed, idx))
            idx += 1
            # bound <= wilson_low  <=>  c <= ln(2/(1-w)) / (eps^2 k)
            cap = math.log(2.0 / (1.0 - est.wilson_low)) / (eps * eps * k)
            best = min(best, cap)
    if not math.isfinite(best) or best <= 0.0:
        raise CalibrationError("no positive constant fits the measured rates")
    return best
