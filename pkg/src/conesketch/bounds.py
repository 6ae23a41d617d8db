"""Closed-form success probability lower bounds for sketched feasibility.

Every evaluator returns a BoundReport whose lower_bound is clamped to
[0, 1]; a bound whose raw value is nonpositive carries no information
and is flagged vacuous. The constant c_const is the exponent constant
of the concentration inequality; 0.25 matches the classical
sub-Gaussian analysis and can be replaced by a Monte Carlo calibrated
value (see the mc module).

k is accepted as a real number: the evaluators are pure formulas and
are also used at fractional k when inverting for sketch sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UsageError

SATURATION_CAP = 2**63 - 1


@dataclass(frozen=True)
class BoundReport:
    kind: str
    inputs: dict
    lower_bound: float
    vacuous: bool


def _report(kind: str, inputs: dict, raw: float) -> BoundReport:
    return BoundReport(
        kind=kind,
        inputs=inputs,
        lower_bound=min(1.0, max(0.0, raw)),
        vacuous=raw <= 0.0,
    )


def _check_eps(eps: float) -> None:
    if not 0.0 < eps < 1.0:
        raise UsageError(f"eps must lie in (0, 1), got {eps}")


def _check_k(k: float) -> None:
    # k = 0 is allowed and yields a vacuous (clamped) bound
    if k < 0.0:
        raise UsageError(f"sketch dimension k must be nonnegative, got {k}")


def _check_c(c_const: float) -> None:
    if c_const <= 0.0:
        raise UsageError(f"concentration constant must be positive, got {c_const}")


def pair_distortion_bound(
    points: int, eps: float, k: float, c_const: float = 0.25
) -> BoundReport:
    """Probability that all pairwise distances among `points` points
    survive sketching within a (1 +- eps) factor:
    1 - points*(points-1)*exp(-c eps^2 k)."""
    if points < 2:
        raise UsageError(f"need at least 2 points, got {points}")
    _check_eps(eps)
    _check_k(k)
    _check_c(c_const)
    raw = 1.0 - points * (points - 1) * math.exp(-c_const * eps * eps * k)
    return _report(
        "pair", {"points": points, "eps": eps, "k": k, "c_const": c_const}, raw
    )


def rlm_finite_bound(card_x: int, k: float, c_const: float = 0.25) -> BoundReport:
    """Probability that a sketch maps no point of a finite set of size
    card_x into its kernel: 1 - 2*card_x*exp(-c k).

    An empty set cannot fail, so card_x = 0 gives probability 1.
    """
    if card_x < 0:
        raise UsageError(f"set cardinality must be nonnegative, got {card_x}")
    _check_k(k)
    _check_c(c_const)
    raw = 1.0 - 2.0 * card_x * math.exp(-c_const * k)
    return _report("rlm", {"card_x": card_x, "k": k, "c_const": c_const}, raw)


def pointed_cone_bound(
    n: int, eps: float, k: float, c_const: float = 0.25
) -> BoundReport:
    """Probability that sketching keeps a point with separation margin
    eps outside a cone on n generators: 1 - 4*(n+1)*exp(-c (eps^2-eps^3) k)."""
    if n < 1:
        raise UsageError(f"need at least 1 generator, got {n}")
    _check_eps(eps)
    _check_k(k)
    _check_c(c_const)
    raw = 1.0 - 4.0 * (n + 1) * math.exp(-c_const * (eps**2 - eps**3) * k)
    return _report(
        "pointed", {"n": n, "eps": eps, "k": k, "c_const": c_const}, raw
    )


def convhull_bound(
    n: int, eps: float, k: float, c_const: float = 0.25
) -> BoundReport:
    """Probability that sketching keeps a point outside the convex hull
    of n points: 1 - 2*n^2*exp(-c (eps^2-eps^3) k).

    Valid for eps below d^2/D^2, with d the hull distance and D the
    largest point distance; the caller owns that threshold.
    """
    if n < 1:
        raise UsageError(f"need at least 1 hull point, got {n}")
    _check_eps(eps)
    _check_k(k)
    _check_c(c_const)
    raw = 1.0 - 2.0 * n * n * math.exp(-c_const * (eps**2 - eps**3) * k)
    return _report("hull", {"n": n, "eps": eps, "k": k, "c_const": c_const}, raw)


def cone_geometry_bound(
    n: int, eps: float, k: float, c_const: float = 0.25
) -> BoundReport:
    """Probability that sketching keeps a unit point outside a cone on
    n unit generators: 1 - 2*n*(n+1)*exp(-c (eps^2-eps^3) k), with eps
    set from the cone geometry by eps_threshold_cone."""
    if n < 1:
        raise UsageError(f"need at least 1 generator, got {n}")
    _check_eps(eps)
    _check_k(k)
    _check_c(c_const)
    raw = 1.0 - 2.0 * n * (n + 1) * math.exp(-c_const * (eps**2 - eps**3) * k)
    return _report("cone", {"n": n, "eps": eps, "k": k, "c_const": c_const}, raw)


def eps_threshold_cone(d: float, p_norm: float, mu_a: float) -> float:
    """Admissible eps for the cone bound, from the instance geometry.

    d is the distance from the (unit-norm) right-hand side to the cone,
    p_norm the norm of its projection onto the cone, and mu_a the
    norm-equivalence constant of the generator matrix:

        eps = d^2 / (mu_a^2 + 2 p_norm mu_a + 1)
    """
    if mu_a < 1.0:
        raise UsageError(
            f"norm-equivalence constant is at least 1 by definition, got {mu_a}"
        )
    if not 0.0 < d <= 1.0:
        raise UsageError(f"cone distance of a unit vector must lie in (0, 1], got {d}")
    if p_norm < 0.0:
        raise UsageError(f"projection norm must be nonnegative, got {p_norm}")
    return d * d / (mu_a * mu_a + 2.0 * p_norm * mu_a + 1.0)


def restricted_cardinality_bound(alpha, d: float, n: int) -> tuple[int, int]:
    """Cardinality cap for binary solution sets of a knapsack row.

    For X = {x in {0,1}^n : sum_i alpha_i x_i <= d} with alpha > 0,
    every member has at most dbar = max_i floor(d / alpha_i) ones, so
    |X| is at most the number of binary vectors of weight <= dbar,
    which is below n**dbar for n >= 3 and dbar >= 2. Returns
    (dbar, n**dbar), the count saturated at 2^63 - 1.
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    if alpha.ndim != 1 or alpha.size == 0:
        raise UsageError("alpha must be a nonempty 1-d vector")
    if np.any(alpha <= 0.0) or not np.all(np.isfinite(alpha)):
        raise UsageError("alpha entries must be positive and finite")
    if n < 1:
        raise UsageError(f"need at least 1 variable, got {n}")
    if d < 0.0:
        raise UsageError(f"budget d must be nonnegative, got {d}")
    dbar = int(max(math.floor(d / a) for a in alpha))
    # saturate without powering when the exponent alone guarantees overflow
    if n > 1 and dbar * math.log2(n) > 64.0:
        return dbar, SATURATION_CAP
    return dbar, min(n**dbar, SATURATION_CAP)
