"""Benchmark harness: original-vs-sketched feasibility at scale.

One experiment fixes (dist, mode, m, n, k) and runs a grid of
certified instances times fresh projectors. Accuracy is the percentage
of sketched solves that agree with the (certified) label; timings are
wall-clock solver seconds, with the sketch multiplication counted into
the sketched side since the user pays for it there.
"""

from __future__ import annotations

import io
import math
import time
from dataclasses import dataclass, field

from .errors import UsageError
from .gen import DISTS, INFEASIBLE_TARGET, TARGETS, GenSpec, generate_suite
from .instance import DOMAINS, IP, LP
from .projector import FAMILIES, GAUSSIAN, apply_to_instance, sample_projector
from .rng import mix
from .solver import SolverOptions, solve_ip_feasibility, solve_lp_feasibility

CSV_COLUMNS = (
    "dist,mode,m,n,k,instances,projectors,accuracy_pct,avg_orig_s,avg_proj_s"
)

RULE_EPS = 0.15
RULE_C = 0.25


@dataclass(frozen=True)
class ExperimentConfig:
    dist: str
    m: int
    n: int
    mode: str = LP
    k: int | None = None  # None -> ceil(2 ln n / (c eps^2)), eps=0.15
    instances: int = 10
    projectors_per_instance: int = 100
    family: str = GAUSSIAN
    master_seed: int = 0
    target: str = INFEASIBLE_TARGET

    def __post_init__(self):
        if self.dist not in DISTS:
            raise UsageError(f"dist must be one of {DISTS}, got {self.dist!r}")
        if self.mode not in DOMAINS:
            raise UsageError(f"mode must be one of {DOMAINS}, got {self.mode!r}")
        if self.family not in FAMILIES:
            raise UsageError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.target not in TARGETS:
            raise UsageError(f"target must be one of {TARGETS}, got {self.target!r}")
        if self.instances < 1 or self.projectors_per_instance < 1:
            raise UsageError("instances and projectors_per_instance must be >= 1")
        if self.resolve_k() > self.m:
            raise UsageError(
                f"sketch dimension k={self.resolve_k()} exceeds m={self.m}; "
                "pass an explicit smaller k"
            )

    def resolve_k(self) -> int:
        if self.k is not None:
            if self.k < 1:
                raise UsageError(f"k must be positive, got {self.k}")
            return self.k
        return math.ceil(2.0 * math.log(self.n) / (RULE_C * RULE_EPS * RULE_EPS))


@dataclass(frozen=True)
class TrialRecord:
    instance: int
    projector: int
    status: str
    seconds: float


@dataclass(frozen=True)
class Report:
    config: ExperimentConfig
    k: int
    trials: list[TrialRecord]
    orig_status: list[str]
    orig_seconds: list[float]
    accuracy_pct: float = field(init=False)
    avg_orig_s: float = field(init=False)
    avg_proj_s: float = field(init=False)

    def __post_init__(self):
        hits = sum(1 for t in self.trials if t.status == self.config.target)
        object.__setattr__(self, "accuracy_pct", 100.0 * hits / len(self.trials))
        object.__setattr__(
            self, "avg_orig_s", sum(self.orig_seconds) / len(self.orig_seconds)
        )
        object.__setattr__(
            self, "avg_proj_s", sum(t.seconds for t in self.trials) / len(self.trials)
        )


def run_experiment(
    cfg: ExperimentConfig, opts: SolverOptions | None = None
) -> Report:
    """Solve every instance once directly and once per fresh sketch."""
    opts = opts or SolverOptions()
    k = cfg.resolve_k()
    solve = solve_ip_feasibility if cfg.mode == IP else solve_lp_feasibility
    suite = generate_suite(
        GenSpec(
            dist=cfg.dist,
            m=cfg.m,
            n=cfg.n,
            target=cfg.target,
            domain=cfg.mode,
            seed=cfg.master_seed,
        ),
        cfg.instances,
        opts,
    )
    trials: list[TrialRecord] = []
    orig_status: list[str] = []
    orig_seconds: list[float] = []
    for i, labeled in enumerate(suite):
        t0 = time.perf_counter()
        verdict = solve(labeled.instance, opts)
        orig_seconds.append(time.perf_counter() - t0)
        orig_status.append(verdict.status)
        for j in range(cfg.projectors_per_instance):
            proj = sample_projector(cfg.family, k, cfg.m, mix(cfg.master_seed, i, j))
            t0 = time.perf_counter()
            sketched = apply_to_instance(proj, labeled.instance)
            pv = solve(sketched, opts)
            trials.append(
                TrialRecord(i, j, pv.status, time.perf_counter() - t0)
            )
    return Report(
        config=cfg, k=k, trials=trials, orig_status=orig_status,
        orig_seconds=orig_seconds,
    )


def _csv_row(r: Report) -> str:
    c = r.config
    return (
        f"{c.dist},{c.mode},{c.m},{c.n},{r.k},{c.instances},"
        f"{c.projectors_per_instance},{r.accuracy_pct:.1f},"
        f"{r.avg_orig_s:.6f},{r.avg_proj_s:.6f}"
    )


def emit_report(reports, fmt: str = "csv") -> str:
    """Render one report or a list of them as csv or markdown."""
    if isinstance(reports, Report):
        reports = [reports]
    if not reports:
        raise UsageError("nothing to report")
    if fmt == "csv":
        return "\n".join([CSV_COLUMNS] + [_csv_row(r) for r in reports]) + "\n"
    if fmt != "markdown":
        raise UsageError(f"format must be csv or markdown, got {fmt!r}")
    # markdown pivots rows to (mode, m, n) and spreads distributions
    # across column groups
    dists = []
    for r in reports:
        if r.config.dist not in dists:
            dists.append(r.config.dist)
    keys = []
    cell = {}
    for r in reports:
        key = (r.config.mode, r.config.m, r.config.n, r.k)
        if key not in keys:
            keys.append(key)
        cell[(key, r.config.dist)] = r
    out = io.StringIO()
    head = ["mode", "m", "n", "k"]
    for d in dists:
        head += [f"{d} acc (%)", f"{d} orig (s)", f"{d} proj (s)"]
    out.write("| " + " | ".join(head) + " |\n")
    out.write("|" + "|".join(["---"] * len(head)) + "|\n")
    for key in keys:
        mode, m, n, k = key
        row = [mode, str(m), str(n), str(k)]
        for d in dists:
            r = cell.get((key, d))
            if r is None:
                row += ["-", "-", "-"]
            else:
                row += [f"{r.accuracy_pct:.1f}", f"{r.avg_orig_s:.4f}", f"{r.avg_proj_s:.4f}"]
        out.write("| " + " | ".join(row) + " |\n")
    return out.getvalue()
