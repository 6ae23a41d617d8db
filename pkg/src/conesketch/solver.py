"""Feasibility solvers for Ax = b, x >= 0, continuous and integer.

The continuous path is a two-phase dense tableau simplex. Phase one
minimizes the total artificial mass; a strictly positive optimum is an
infeasibility proof and its dual values form a separating certificate
y with y'A <= 0 and y'b > 0. Rank deficiency needs no special casing:
a redundant row keeps its artificial basic at level zero and is marked
inactive.

Degeneracy: pivoting starts under Dantzig's rule and switches to
Bland's rule permanently once 2(m+n) consecutive iterations fail to
improve the objective, which restores the termination guarantee.

The integer path is depth-first branch and bound on the relaxation,
branching on the most fractional coordinate (ties to the lowest
index), with per-variable upper bounds obtained by maximizing each
coordinate over the relaxation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, UsageError
from .instance import IP, LP, FeasInstance
from .linalg import two_norm, vector

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class SolverOptions:
    tau_feas: float = 1e-7
    tau_pivot: float = 1e-9
    max_iters: int | None = None  # None -> 50 * (rows + cols)
    bnb_node_cap: int = 1_000_000
    bnb_bound_cap: float = 1e6
    int_tol: float = 1e-6


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: np.ndarray | None = None
    certificate: np.ndarray | None = None
    iterations: int = 0
    nodes: int | None = None


@dataclass(frozen=True)
class LpResult:
    status: str
    x: np.ndarray | None = None
    objective: float | None = None
    ray: np.ndarray | None = None
    iterations: int = 0


class _Simplex:
    """Dense tableau over columns [A | I]; artificials never re-enter."""

    def __init__(self, a: np.ndarray, b: np.ndarray, opts: SolverOptions):
        m, n = a.shape
        self.m, self.n = m, n
        self.opts = opts
        # flip rows so the right-hand side is nonnegative; sigma maps
        # dual values back to the caller's row orientation
        self.sigma = np.where(b < 0.0, -1.0, 1.0)
        at = a * self.sigma[:, None]
        bt = b * self.sigma
        self.tab = np.zeros((m + 1, n + m + 1))
        self.tab[:m, :n] = at
        self.tab[:m, n : n + m] = np.eye(m)
        self.tab[:m, -1] = bt
        self.basis = list(range(n, n + m))
        self.active = np.ones(m, dtype=bool)
        self.iterations = 0
        self.bland = False
        self._stalled = 0
        # phase-one reduced costs: cost 1 on artificials, 0 on structurals
        self.tab[m, :n] = -at.sum(axis=0)
        self.tab[m, -1] = -bt.sum()

    @property
    def objective(self) -> float:
        return -float(self.tab[self.m, -1])

    def _entering(self) -> int | None:
        costs = self.tab[self.m, : self.n]
        if self.bland:
            idx = np.where(costs < -self.opts.tau_pivot)[0]
            return int(idx[0]) if idx.size else None
        j = int(np.argmin(costs))
        return j if costs[j] < -self.opts.tau_pivot else None

    def _leaving(self, j: int) -> int | None:
        col = self.tab[: self.m, j]
        rhs = np.maximum(self.tab[: self.m, -1], 0.0)
        ok = self.active & (col > self.opts.tau_pivot)
        if not ok.any():
            return None
        ratios = np.full(self.m, np.inf)
        ratios[ok] = rhs[ok] / col[ok]
        best = ratios.min()
        near = np.where(ratios <= best + 1e-12 * (1.0 + best))[0]
        # among ties prefer the smallest basis index (anti-cycling aid)
        return int(min(near, key=lambda r: self.basis[r]))

    def _pivot(self, r: int, j: int) -> None:
        piv = self.tab[r, j]
        self.tab[r] /= piv
        col = self.tab[:, j].copy()
        col[r] = 0.0
        self.tab -= np.outer(col, self.tab[r])
        self.basis[r] = j

    def _iterate(self, phase: str):
        cap = self.opts.max_iters
        if cap is None:
            cap = 50 * (self.m + self.n)
        while True:
            j = self._entering()
            if j is None:
                return OPTIMAL, None
            r = self._leaving(j)
            if r is None:
                return UNBOUNDED, j
            if self.iterations >= cap:
                raise ConvergenceError(
                    f"simplex {phase} hit the iteration cap of {cap}",
                    best=self.witness(),
                )
            before = self.objective
            self._pivot(r, j)
            self.iterations += 1
            if before - self.objective <= 1e-12 * (1.0 + abs(self.objective)):
                self._stalled += 1
                if self._stalled >= 2 * (self.m + self.n):
                    self.bland = True
            else:
                self._stalled = 0

    def run_phase1(self) -> float:
        status, _ = self._iterate("phase one")
        if status != OPTIMAL:
            # the artificial mass is bounded below by zero, so an
            # unbounded signal here can only be numerical breakdown
            raise ConvergenceError("phase one lost boundedness numerically")
        return self.objective

    def farkas(self) -> np.ndarray:
        # dual values sit under the artificial columns: cost 1 minus
        # reduced cost; undo the row flips on the way out
        y = 1.0 - self.tab[self.m, self.n : self.n + self.m]
        return self.sigma * y

    def witness(self) -> np.ndarray:
        x = np.zeros(self.n)
        rhs = self.tab[: self.m, -1]
        for r, col in enumerate(self.basis):
            if col < self.n:
                x[col] = max(rhs[r], 0.0)
        return x

    def prep_phase2(self, c: np.ndarray) -> None:
        tau = self.opts.tau_pivot
        for r in range(self.m):
            if self.basis[r] < self.n:
                continue
            row = np.abs(self.tab[r, : self.n])
            j = int(np.argmax(row))
            if row[j] > tau:
                self._pivot(r, j)  # degenerate pivot, rhs ~ 0
            else:
                self.active[r] = False  # redundant row
        obj = np.zeros(self.n + self.m + 1)
        obj[: self.n] = c
        for r, col in enumerate(self.basis):
            if col < self.n and c[col] != 0.0:
                obj -= c[col] * self.tab[r]
        self.tab[self.m] = obj

    def run_phase2(self):
        status, j = self._iterate("phase two")
        if status == OPTIMAL:
            return OPTIMAL, None
        ray = np.zeros(self.n)
        ray[j] = 1.0
        for r in range(self.m):
            if self.active[r] and self.basis[r] < self.n:
                ray[self.basis[r]] = max(0.0, -self.tab[r, j])
        return UNBOUNDED, ray


def _require_domain(inst: FeasInstance, domain: str, op: str) -> None:
    if inst.domain != domain:
        raise UsageError(
            f"{op} expects a {domain!r} instance, got {inst.domain!r}; "
            "build a relaxed copy if that is intended"
        )


def solve_lp_feasibility(inst: FeasInstance, opts: SolverOptions | None = None) -> Verdict:
    """Decide Ax = b, x >= 0. Feasible verdicts carry a witness,
    infeasible ones a separating certificate."""
    _require_domain(inst, LP, "solve_lp_feasibility")
    opts = opts or SolverOptions()
    sx = _Simplex(inst.a, inst.b, opts)
    mass = sx.run_phase1()
    if mass <= opts.tau_feas * (1.0 + two_norm(inst.b)):
        return Verdict(FEASIBLE, witness=sx.witness(), iterations=sx.iterations)
    return Verdict(INFEASIBLE, certificate=sx.farkas(), iterations=sx.iterations)


def solve_lp(c, inst: FeasInstance, opts: SolverOptions | None = None) -> LpResult:
    """Minimize c'x over Ax = b, x >= 0."""
    _require_domain(inst, LP, "solve_lp")
    opts = opts or SolverOptions()
    c = vector(c)
    if c.shape[0] != inst.n:
        raise UsageError(
            f"cost vector has {c.shape[0]} entries but instance has {inst.n} columns"
        )
    sx = _Simplex(inst.a, inst.b, opts)
    mass = sx.run_phase1()
    if mass > opts.tau_feas * (1.0 + two_norm(inst.b)):
        return LpResult(INFEASIBLE, iterations=sx.iterations)
    sx.prep_phase2(c)
    status, ray = sx.run_phase2()
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED, ray=ray, iterations=sx.iterations)
    x = sx.witness()
    return LpResult(OPTIMAL, x=x, objective=float(c @ x), iterations=sx.iterations)


def check_witness(inst: FeasInstance, x, tol: float = 1e-7) -> bool:
    """Residual, nonnegativity, and (integer domain) integrality check."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (inst.n,):
        return False
    if two_norm(inst.a @ x - inst.b) > tol * (1.0 + two_norm(inst.b)):
        return False
    if x.min(initial=0.0) < -tol:
        return False
    if inst.domain == IP and np.abs(x - np.rint(x)).max(initial=0.0) > tol:
        return False
    return True


def check_farkas(inst: FeasInstance, y, tol: float = 1e-7) -> bool:
    """Certificate check: y'a_j below tolerance for every column while
    y'b clears a strictly positive margin at the same scale."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (inst.m,):
        return False
    col_norms = np.linalg.norm(inst.a, axis=0)
    if np.any(y @ inst.a > tol * col_norms):
        return False
    return float(y @ inst.b) >= tol * two_norm(inst.b)


def _box_lp(inst: FeasInstance, lo: np.ndarray, hi: np.ndarray, opts: SolverOptions):
    """Feasibility of Ax = b with lo <= x <= hi, via shift-and-slack."""
    m, n = inst.m, inst.n
    width = hi - lo
    a_ext = np.zeros((m + n, 2 * n))
    a_ext[:m, :n] = inst.a
    a_ext[m:, :n] = np.eye(n)
    a_ext[m:, n:] = np.eye(n)
    b_ext = np.concatenate([inst.b - inst.a @ lo, width])
    sx = _Simplex(a_ext, b_ext, opts)
    mass = sx.run_phase1()
    feasible = mass <= opts.tau_feas * (1.0 + two_norm(b_ext))
    x = lo + sx.witness()[:n] if feasible else None
    return feasible, x, sx.iterations


def _relaxation_bounds(inst: FeasInstance, opts: SolverOptions):
    """Upper bound per variable from maximizing it over the relaxation."""
    hi = np.zeros(inst.n, dtype=np.int64)
    capped = False
    iters = 0
    for j in range(inst.n):
        c = np.zeros(inst.n)
        c[j] = -1.0
        res = solve_lp(c, inst, opts)
        iters += res.iterations
        if res.status == UNBOUNDED or -res.objective > opts.bnb_bound_cap:
            hi[j] = int(opts.bnb_bound_cap)
            capped = True
        else:
            hi[j] = max(0, int(np.floor(-res.objective + opts.int_tol)))
    return hi, capped, iters


def solve_ip_feasibility(inst: FeasInstance, opts: SolverOptions | None = None) -> Verdict:
    """Decide Ax = b, x >= 0, x integer, by branch and bound.

    Returns Unknown when the node cap is hit, or when the tree is
    exhausted but some variable bound had to be capped (exhaustion is
    then not a proof)."""
    _require_domain(inst, IP, "solve_ip_feasibility")
    opts = opts or SolverOptions()
    relaxed = FeasInstance(inst.a, inst.b, LP)
    root = solve_lp_feasibility(relaxed, opts)
    if root.status == INFEASIBLE:
        return Verdict(
            INFEASIBLE,
            certificate=root.certificate,
            iterations=root.iterations,
            nodes=0,
        )
    hi0, capped, iters = _relaxation_bounds(relaxed, opts)
    iters += root.iterations
    scale = two_norm(inst.b)
    slack = np.abs(inst.a).sum(axis=1).max(initial=0.0) * opts.int_tol
    stack = [(np.zeros(inst.n, dtype=np.int64), hi0)]
    nodes = 0
    while stack:
        lo, hi = stack.pop()
        if np.any(lo > hi):
            continue
        if nodes >= opts.bnb_node_cap:
            return Verdict(UNKNOWN, iterations=iters, nodes=nodes)
        nodes += 1
        feasible, x, it = _box_lp(inst, lo.astype(np.float64), hi.astype(np.float64), opts)
        iters += it
        if not feasible:
            continue
        frac = np.abs(x - np.rint(x))
        j = int(np.argmax(frac))
        if frac[j] <= opts.int_tol:
            xi = np.rint(x)
            resid = two_norm(inst.a @ xi - inst.b)
            if resid <= opts.tau_feas * (1.0 + scale) + slack:
                return Verdict(FEASIBLE, witness=xi, iterations=iters, nodes=nodes)
            continue  # rounding broke the residual: treat as pruned
        split = int(np.floor(x[j]))
        up_lo = lo.copy()
        up_lo[j] = split + 1
        down_hi = hi.copy()
        down_hi[j] = split
        if up_lo[j] <= hi[j]:
            stack.append((up_lo, hi))
        if down_hi[j] >= lo[j]:
            stack.append((lo, down_hi))  # floor branch explored first
    if capped:
        return Verdict(UNKNOWN, iterations=iters, nodes=nodes)
    # exhaustion proof; no single-vector certificate exists for it
    return Verdict(INFEASIBLE, iterations=iters, nodes=nodes)
