"""Random instance generation with certified labels.

Feasible instances are built from a drawn nonnegative witness x* and
b = A x*, so the label needs no solver. Infeasible instances draw b
from the same distribution, negate one uniformly chosen coordinate
(which pushes b out of the cone of the nonnegative columns), and then
certify the label with the feasibility solver, resampling on the rare
failure.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

import numpy as np

from .errors import GenerationError, UsageError
from .instance import DOMAINS, IP, LP, FeasInstance
from .linalg import normalize_columns, two_norm
from .rng import generator, mix
from .solver import INFEASIBLE, SolverOptions, solve_lp_feasibility

UNIFORM = "uniform"
EXP = "exp"
GAMMA = "gamma"
DISTS = (UNIFORM, EXP, GAMMA)

FEASIBLE_TARGET = "feasible"
INFEASIBLE_TARGET = "infeasible"
TARGETS = (FEASIBLE_TARGET, INFEASIBLE_TARGET)

MAX_ATTEMPTS = 100


@dataclass(frozen=True)
class GenSpec:
    dist: str
    m: int
    n: int
    target: str = INFEASIBLE_TARGET
    domain: str = LP
    normalize: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.dist not in DISTS:
            raise UsageError(f"dist must be one of {DISTS}, got {self.dist!r}")
        if self.target not in TARGETS:
            raise UsageError(f"target must be one of {TARGETS}, got {self.target!r}")
        if self.domain not in DOMAINS:
            raise UsageError(f"domain must be one of {DOMAINS}, got {self.domain!r}")
        if self.m < 1 or self.n < 1:
            raise UsageError(f"need m, n >= 1, got m={self.m}, n={self.n}")
        if self.target == FEASIBLE_TARGET and self.m > self.n:
            raise UsageError(
                f"feasible targets need m <= n, got m={self.m}, n={self.n}"
            )
        if self.target == FEASIBLE_TARGET and self.domain == IP and self.normalize:
            raise UsageError(
                "unit-norm rescaling breaks integer witnesses; "
                "drop normalize for feasible integer targets"
            )


@dataclass(frozen=True)
class LabeledInstance:
    instance: FeasInstance
    label: str | None
    witness: np.ndarray | None = None
    certificate: np.ndarray | None = None
    provenance: dict | None = None


def _draw(rng: np.random.Generator, dist: str, size) -> np.ndarray:
    if dist == UNIFORM:
        return rng.random(size)
    if dist == EXP:
        return rng.standard_exponential(size)
    return rng.gamma(2.0, 1.0, size)


def generate(spec: GenSpec, opts: SolverOptions | None = None) -> LabeledInstance:
    """One instance with a certified label, reproducible from the seed."""
    opts = opts or SolverOptions()
    rng = generator(spec.seed)
    a = _draw(rng, spec.dist, (spec.m, spec.n))
    if spec.normalize:
        a, _ = normalize_columns(a)
    if spec.target == FEASIBLE_TARGET:
        for _ in range(MAX_ATTEMPTS):
            x = _draw(rng, spec.dist, spec.n)
            if spec.domain == IP:
                x = np.rint(x)
            b = a @ x
            if spec.normalize:
                nb = two_norm(b)
                if nb < 1e-12:
                    continue  # witness rounded to zero; redraw
                b = b / nb
                x = x / nb
            inst = FeasInstance(a, b, spec.domain)
            return LabeledInstance(
                instance=inst,
                label=FEASIBLE_TARGET,
                witness=x,
                provenance=asdict(spec),
            )
        raise GenerationError(
            f"no usable witness after {MAX_ATTEMPTS} draws for seed {spec.seed}"
        )
    for _ in range(MAX_ATTEMPTS):
        b = _draw(rng, spec.dist, spec.m)
        flip = int(rng.integers(0, spec.m))
        b[flip] = -b[flip]
        if spec.normalize:
            nb = two_norm(b)
            if nb < 1e-12:
                continue
            b = b / nb
        inst = FeasInstance(a, b, spec.domain)
        # certify against the continuous relaxation; relaxation
        # infeasibility covers the integer domain as well
        verdict = solve_lp_feasibility(FeasInstance(a, b, LP), opts)
        if verdict.status == INFEASIBLE:
            return LabeledInstance(
                instance=inst,
                label=INFEASIBLE_TARGET,
                certificate=verdict.certificate,
                provenance=asdict(spec),
            )
    raise GenerationError(
        f"could not certify an infeasible instance in {MAX_ATTEMPTS} attempts "
        f"for seed {spec.seed}"
    )


def generate_suite(
    spec: GenSpec, count: int, opts: SolverOptions | None = None
) -> list[LabeledInstance]:
    """count instances with per-index derived seeds mix(seed, i)."""
    if count < 1:
        raise UsageError(f"need count >= 1, got {count}")
    return [
        generate(replace(spec, seed=mix(spec.seed, i)), opts) for i in range(count)
    ]
