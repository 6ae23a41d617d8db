"""Random projection maps for dimension reduction on the row space.

Three families, all scaled so that E||T(x)||^2 = ||x||^2:

  gaussian    entries N(0,1), scaled by 1/sqrt(k)
  rademacher  entries +-1 equiprobable, scaled by 1/sqrt(k)
  sparse      entries +1/0/-1 with probabilities 1/6, 2/3, 1/6,
              scaled by sqrt(3/k)

A projector is fully determined by (family, k, m, seed); resampling
with the same tuple reproduces the same matrix bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .instance import FeasInstance
from .linalg import matvec
from .rng import generator

GAUSSIAN = "gaussian"
RADEMACHER = "rademacher"
SPARSE = "sparse"
FAMILIES = (GAUSSIAN, RADEMACHER, SPARSE)


@dataclass(frozen=True)
class Projector:
    family: str
    k: int
    m: int
    seed: int
    matrix: np.ndarray


def sample_projector(family: str, k: int, m: int, seed: int) -> Projector:
    """Draw a k x m projection matrix from the given family."""
    if family not in FAMILIES:
        raise UsageError(f"unknown projector family {family!r}, pick one of {FAMILIES}")
    if k < 1:
        raise UsageError(f"target dimension k must be positive, got {k}")
    if k > m:
        raise UsageError(f"target dimension k={k} exceeds source dimension m={m}")
    rng = generator(seed)
    if family == GAUSSIAN:
        mat = rng.standard_normal((k, m)) / math.sqrt(k)
    elif family == RADEMACHER:
        mat = (2.0 * rng.integers(0, 2, size=(k, m)) - 1.0) / math.sqrt(k)
    else:
        # +-1 with prob 1/6 each, zero otherwise
        cells = rng.integers(0, 6, size=(k, m))
        mat = ((cells == 0).astype(np.float64) - (cells == 1)) * math.sqrt(3.0 / k)
    return Projector(family=family, k=k, m=m, seed=seed, matrix=mat)


def apply(proj: Projector, x: np.ndarray) -> np.ndarray:
    """Image of a length-m vector under the projection."""
    return matvec(proj.matrix, x)


def apply_to_instance(proj: Projector, inst: FeasInstance) -> FeasInstance:
    """Sketch a feasibility instance: (A, b) -> (TA, Tb), same domain."""
    if proj.m != inst.m:
        raise UsageError(
            f"projector maps from dimension {proj.m} but instance has {inst.m} rows"
        )
    return FeasInstance(proj.matrix @ inst.a, matvec(proj.matrix, inst.b), inst.domain)


def choose_k_jll(points: int, eps: float, delta: float, c_const: float = 0.25) -> int:
    """Smallest k with points*(points-1)*exp(-c eps^2 k) <= delta.

    Sized so a union bound over all ordered point pairs keeps every
    pairwise distance within (1 +- eps) except with probability delta.
    """
    if points < 2:
        raise UsageError(f"need at least 2 points, got {points}")
    if not 0.0 < eps < 1.0:
        raise UsageError(f"eps must lie in (0, 1), got {eps}")
    if not 0.0 < delta < 1.0:
        raise UsageError(f"delta must lie in (0, 1), got {delta}")
    if c_const <= 0.0:
        raise UsageError(f"concentration constant must be positive, got {c_const}")
    return math.ceil(math.log(points * (points - 1) / delta) / (c_const * eps * eps))


def choose_k_rlm(card_x: int, delta: float, c_const: float = 0.25) -> int:
    """Smallest k with 2*card_x*exp(-c k) <= delta.

    Sized so a sketch separates every nonzero point of a finite set of
    cardinality card_x from the kernel, except with probability delta.
    """
    if card_x < 1:
        raise UsageError(f"set cardinality must be at least 1, got {card_x}")
    if not 0.0 < delta < 1.0:
        raise UsageError(f"delta must lie in (0, 1), got {delta}")
    if c_const <= 0.0:
        raise UsageError(f"concentration constant must be positive, got {c_const}")
    return math.ceil((math.log(2.0 / delta) + math.log(card_x)) / c_const)
