"""Cone and convex hull geometry for the generator columns of A.

Everything here works on the cone {A lam : lam >= 0} and the hull
conv{a_1..a_n}. The quantities computed feed the bound evaluators:
separation margins, projection distances, and the norm-equivalence
constant that ties the coefficient 1-norm to the Euclidean norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, MembershipError, UsageError
from .instance import FeasInstance
from .linalg import two_norm, vector
from .rng import generator, mix
from .solver import INFEASIBLE, OPTIMAL, SolverOptions, solve_lp


@dataclass(frozen=True)
class SeparationCertificate:
    normal: np.ndarray  # unit hyperplane normal
    margin: float  # min margin over generators and the target


@dataclass(frozen=True)
class ConeDistanceReport:
    point: np.ndarray  # nearest point found (on the cone or hull)
    dist: float  # distance from b to that point
    dmax: float  # largest distance from b to any generator
    coeffs: np.ndarray  # nonnegative combination weights


@dataclass(frozen=True)
class ANormReport:
    value: float  # least coefficient sum representing the point
    coeffs: np.ndarray


def _check_unit_columns(a: np.ndarray, tol: float = 1e-9) -> None:
    norms = np.linalg.norm(a, axis=0)
    bad = np.where(np.abs(norms - 1.0) > tol)[0]
    if bad.size:
        raise UsageError(
            f"column {int(bad[0])} is not unit norm (norm {norms[bad[0]]:.6g}); "
            "normalize the generators first"
        )


def _check_unit(b: np.ndarray, tol: float = 1e-9) -> None:
    if abs(two_norm(b) - 1.0) > tol:
        raise UsageError(f"target vector must be unit norm, got norm {two_norm(b):.6g}")


def scp_solve(a: np.ndarray, b: np.ndarray, opts: SolverOptions | None = None) -> SeparationCertificate:
    """Best uniform separation margin between b and the cone of A.

    Solves max eps subject to c'b <= -eps, c'a_i >= eps, ||c||_inf <= 1
    by LP, then rescales c to unit Euclidean norm and recomputes the
    margin as min(min_i c'a_i, -c'b). Requires unit columns and unit b;
    raises MembershipError when no positive margin exists (b inside the
    cone, or the generators are not pointed enough to separate).
    """
    a = np.asarray(a, dtype=np.float64)
    b = vector(b)
    _check_unit_columns(a)
    _check_unit(b)
    m, n = a.shape
    # standard form variables: c+ (m), c- (m), eps, slack rows follow
    # rows: 1 margin row for b, n margin rows for generators, 2m box rows
    rows = 1 + n + 2 * m
    cols = 2 * m + 1 + rows
    mat = np.zeros((rows, cols))
    rhs = np.zeros(rows)
    mat[0, :m] = b
    mat[0, m : 2 * m] = -b
    mat[0, 2 * m] = 1.0
    for i in range(n):
        mat[1 + i, :m] = a[:, i]
        mat[1 + i, m : 2 * m] = -a[:, i]
        mat[1 + i, 2 * m] = -1.0
    for j in range(m):
        mat[1 + n + j, j] = 1.0
        mat[1 + n + j, m + j] = -1.0
        rhs[1 + n + j] = 1.0
        mat[1 + n + m + j, j] = -1.0
        mat[1 + n + m + j, m + j] = 1.0
        rhs[1 + n + m + j] = 1.0
    # slacks: +1 on the b row and box rows, -1 on generator rows
    mat[0, 2 * m + 1] = 1.0
    for i in range(n):
        mat[1 + i, 2 * m + 2 + i] = -1.0
    for j in range(2 * m):
        mat[1 + n + j, 2 * m + 2 + n + j] = 1.0
    cost = np.zeros(cols)
    cost[2 * m] = -1.0  # maximize eps
    res = solve_lp(cost, FeasInstance(mat, rhs), opts or SolverOptions())
    if res.status != OPTIMAL:
        raise ConvergenceError(f"separation LP ended with status {res.status}")
    eps_lp = -res.objective
    if eps_lp <= 1e-9:
        raise MembershipError(
            "no positive separation margin: b is in the cone of A "
            "(or the hull of the generators touches the origin)"
        )
    c = res.x[:m] - res.x[m : 2 * m]
    c = c / two_norm(c)
    margin = float(min((c @ a).min(), -(c @ b)))
    # the LP's optimal face can be degenerate in the components of c
    # that the box geometry leaves free; -b is a closed-form candidate
    # that is exactly optimal in the antipodal case, so keep whichever
    # renormalized normal certifies the larger margin
    alt = float(min((-b @ a).min(), float(b @ b)))
    if alt > margin:
        c, margin = -b, alt
    return SeparationCertificate(normal=c, margin=margin)


def project_onto_cone(
    a: np.ndarray, b: np.ndarray, max_iters: int | None = None
) -> ConeDistanceReport:
    """Euclidean projection of b onto the cone of A's columns.

    Active-set nonnegative least squares on min ||A lam - b||, lam >= 0.
    The iteration cap defaults to 3n outer passes; exceeding it raises
    ConvergenceError with the best iterate attached.
    """
    a = np.asarray(a, dtype=np.float64)
    b = vector(b)
    if a.ndim != 2 or a.shape[0] != b.shape[0]:
        raise UsageError(f"shape mismatch: matrix {a.shape}, vector {b.shape}")
    m, n = a.shape
    cap = max_iters if max_iters is not None else 3 * n
    tol = 1e-9 * (1.0 + two_norm(b))
    lam = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    w = a.T @ b
    outer = 0
    while True:
        candidates = np.where(~passive & (w > tol))[0]
        if candidates.size == 0:
            break
        if outer >= cap:
            raise ConvergenceError(
                f"cone projection hit the iteration cap of {cap}",
                best=_cone_report(a, b, lam),
            )
        outer += 1
        passive[candidates[np.argmax(w[candidates])]] = True
        while True:
            idx = np.where(passive)[0]
            if idx.size == 0:
                lam = np.zeros(n)
                break
            z, *_ = np.linalg.lstsq(a[:, idx], b, rcond=None)
            if z.min() > 0.0:
                lam = np.zeros(n)
                lam[idx] = z
                break
            # step back to the boundary, dropping pinned coordinates
            neg = z <= 0.0
            denom = lam[idx][neg] - z[neg]
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(denom > 0.0, lam[idx][neg] / denom, 0.0)
            theta = float(ratios.min())
            stepped = lam[idx] + theta * (z - lam[idx])
            drop = (stepped <= tol) & neg
            if not drop.any():
                drop[int(np.argmin(z))] = True  # force progress
            lam = np.zeros(n)
            lam[idx] = np.maximum(stepped, 0.0)
            lam[idx[drop]] = 0.0
            passive[idx[drop]] = False
        w = a.T @ (b - a @ lam)
    report = _cone_report(a, b, lam)
    _verify_cone_kkt(a, b, report)
    return report


def _cone_report(a: np.ndarray, b: np.ndarray, lam: np.ndarray) -> ConeDistanceReport:
    p = a @ lam
    dmax = float(np.linalg.norm(b[:, None] - a, axis=0).max())
    return ConeDistanceReport(point=p, dist=two_norm(b - p), dmax=dmax, coeffs=lam)


def _verify_cone_kkt(a: np.ndarray, b: np.ndarray, rep: ConeDistanceReport) -> None:
    r = b - rep.point
    if (r @ a).max(initial=0.0) > 1e-8 or abs(r @ rep.point) > 1e-8 * (
        1.0 + two_norm(b) ** 2
    ):
        raise ConvergenceError("cone projection failed its optimality check", best=rep)


def dist_to_convhull(
    a: np.ndarray, b: np.ndarray, max_iters: int | None = None
) -> ConeDistanceReport:
    """Distance from b to the convex hull of A's columns.

    Min-norm-point active-set scheme on the shifted points a_i - b:
    maintains an affinely independent working set, alternates between
    adding the most violating point and trimming weights that the
    affine minimizer pushed nonpositive.
    """
    a = np.asarray(a, dtype=np.float64)
    b = vector(b)
    if a.ndim != 2 or a.shape[0] != b.shape[0]:
        raise UsageError(f"shape mismatch: matrix {a.shape}, vector {b.shape}")
    m, n = a.shape
    q = a - b[:, None]  # shifted points as columns
    cap = max_iters if max_iters is not None else 16 * n + 32
    norms2 = (q * q).sum(axis=0)
    start = int(np.argmin(norms2))
    sel = [start]
    lam_sel = np.array([1.0])
    y = q[:, start].copy()
    tol = 1e-10 * (1.0 + norms2.max())
    for _ in range(cap):
        gaps = q.T @ y
        t = int(np.argmin(gaps))
        if gaps[t] >= y @ y - tol or t in sel:
            break
        sel.append(t)
        lam_sel = np.append(lam_sel, 0.0)
        while True:
            qs = q[:, sel]
            k = len(sel)
            kkt = np.zeros((k + 1, k + 1))
            kkt[:k, :k] = qs.T @ qs
            kkt[:k, k] = 1.0
            kkt[k, :k] = 1.0
            rhs = np.zeros(k + 1)
            rhs[k] = 1.0
            sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
            alpha = sol[:k]
            if alpha.min() > 1e-12:
                lam_sel = alpha
                y = qs @ alpha
                break
            neg = alpha <= 1e-12
            denom = lam_sel[neg] - alpha[neg]
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(denom > 0.0, lam_sel[neg] / denom, 0.0)
            theta = float(ratios.min())
            lam_sel = lam_sel + theta * (alpha - lam_sel)
            keep = lam_sel > 1e-12
            if not keep.any():
                keep[int(np.argmax(lam_sel))] = True
            sel = [s for s, kf in zip(sel, keep) if kf]
            lam_sel = lam_sel[keep]
            lam_sel = lam_sel / lam_sel.sum()
            y = q[:, sel] @ lam_sel
    else:
        raise ConvergenceError(
            f"hull distance hit the iteration cap of {cap}",
            best=_hull_report(a, b, sel, lam_sel),
        )
    return _hull_report(a, b, sel, lam_sel)


def _hull_report(a, b, sel, lam_sel) -> ConeDistanceReport:
    lam = np.zeros(a.shape[1])
    lam[sel] = lam_sel
    p = a @ lam
    dmax = float(np.linalg.norm(b[:, None] - a, axis=0).max())
    return ConeDistanceReport(point=p, dist=two_norm(b - p), dmax=dmax, coeffs=lam)


def a_norm(a: np.ndarray, x, opts: SolverOptions | None = None) -> ANormReport:
    """Least coefficient sum representing x over the cone of A:
    min 1'lam subject to A lam = x, lam >= 0.

    Raises MembershipError when x is not in the cone.
    """
    a = np.asarray(a, dtype=np.float64)
    x = vector(x)
    res = solve_lp(np.ones(a.shape[1]), FeasInstance(a, x), opts or SolverOptions())
    if res.status == INFEASIBLE:
        raise MembershipError("x is not in the cone of A")
    if res.status != OPTIMAL:
        raise ConvergenceError(f"coefficient-norm LP ended with status {res.status}")
    return ANormReport(value=float(res.objective), coeffs=res.x)


def mu_a_lower_bound(
    a: np.ndarray, samples: int, seed: int, opts: SolverOptions | None = None
) -> float:
    """Sampled lower bound on the norm-equivalence constant of A.

    The constant is the largest coefficient norm over unit-norm cone
    points; it is estimated as a running max of a_norm over random cone
    points (exponential weights), seeded per sample so that enlarging
    `samples` only extends the stream. The generator directions
    themselves are included, which anchors the value at >= 1 for unit
    columns.
    """
    a = np.asarray(a, dtype=np.float64)
    _check_unit_columns(a)
    opts = opts or SolverOptions()
    best = 1.0  # each unit generator has coefficient norm exactly 1
    for i in range(samples):
        rng = generator(mix(seed, i))
        lam = rng.standard_exponential(a.shape[1])
        x = a @ lam
        nx = two_norm(x)
        if nx < 1e-12:
            continue  # weights cancelled; skip this sample
        best = max(best, a_norm(a, x / nx, opts).value)
    return best


def claim_inequality_check(
    a: np.ndarray, b: np.ndarray, x, opts: SolverOptions | None = None
) -> bool:
    """Distance lower bound from the cone projection geometry.

    For unit b and any cone point x with alpha = ||x||, checks
    ||b - x||^2 >= alpha^2 - 2 alpha ||p|| + 1 - 1e-8, where p is the
    projection of b onto the cone.
    """
    a = np.asarray(a, dtype=np.float64)
    b = vector(b)
    x = vector(x)
    _check_unit(b)
    p_norm = two_norm(project_onto_cone(a, b).point)
    alpha = two_norm(x)
    slack = two_norm(b - x) ** 2 - (alpha * alpha - 2.0 * alpha * p_norm + 1.0)
    return bool(slack >= -1e-8)
