"""Brute-force ground-truth oracles used by unit and acceptance tests.

These intentionally share no code with the solvers they check: LP
feasibility is decided by enumerating basis subsets, integer
feasibility by enumerating the full (pruned) integer grid.
"""

import itertools

import numpy as np


def lp_feasible_by_basis_enumeration(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """Feasibility of Ax=b, x>=0 via basic solutions.

    If the system is feasible, some basic feasible solution exists whose
    basis is a nonsingular m-column subset (A full row rank, which holds
    almost surely for the random instances this oracle is used on).
    """
    m, n = a.shape
    if np.linalg.norm(b) <= tol:
        return True
    for cols in itertools.combinations(range(n), m):
        sub = a[:, cols]
        try:
            x = np.linalg.solve(sub, b)
        except np.linalg.LinAlgError:
            continue
        if np.linalg.norm(sub @ x - b) > tol * (1.0 + np.linalg.norm(b)):
            continue  # numerically singular basis
        if np.all(x >= -tol):
            return True
    return False


def ip_feasible_by_enumeration(a: np.ndarray, b: np.ndarray) -> bool:
    """Integer feasibility by pruned exhaustive search.

    Requires every entry of A to be a positive integer and b integer:
    then any solution satisfies x_j <= min_i b_i / a_ij, so the product
    grid below is complete.
    """
    m, n = a.shape
    if np.any(b < 0):
        return False
    caps = np.min(np.floor(b[:, None] / a), axis=0).astype(int)
    if np.any(caps < 0):
        return False
    for combo in itertools.product(*(range(c + 1) for c in caps)):
        x = np.array(combo, dtype=float)
        if np.array_equal(a @ x, b.astype(float)):
            return True
    return False
