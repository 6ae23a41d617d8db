import numpy as np
import pytest
from oracles import lp_feasible_by_basis_enumeration

from conesketch.errors import ConvergenceError, UsageError
from conesketch.instance import FeasInstance
from conesketch.rng import generator
from conesketch.solver import (
    FEASIBLE,
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    UNKNOWN,
    SolverOptions,
    check_farkas,
    check_witness,
    solve_ip_feasibility,
    solve_lp,
    solve_lp_feasibility,
)


def _inst(a, b, domain="lp"):
    return FeasInstance(np.asarray(a, dtype=float), np.asarray(b, dtype=float), domain)


class TestLpFeasibility:
    def test_identity_system(self):
        v = solve_lp_feasibility(_inst(np.eye(2), [1.0, 2.0]))
        assert v.status == FEASIBLE
        assert np.allclose(v.witness, [1.0, 2.0], atol=1e-9)

    def test_negative_rhs_infeasible(self):
        inst = _inst([[1.0, 1.0]], [-1.0])
        v = solve_lp_feasibility(inst)
        assert v.status == INFEASIBLE
        assert check_farkas(inst, v.certificate)
        # the canonical certificate direction works too
        assert check_farkas(inst, np.array([-1.0]))

    def test_negative_coefficient_needed(self):
        # b = -a1 + a2 forces a negative weight
        inst = _inst([[1.0, 1.0], [0.0, 1.0]], [0.0, 1.0])
        v = solve_lp_feasibility(inst)
        assert v.status == INFEASIBLE
        assert check_farkas(inst, v.certificate)

    def test_zero_rhs_feasible(self):
        v = solve_lp_feasibility(_inst([[3.0, 1.0]], [0.0]))
        assert v.status == FEASIBLE
        assert np.all(v.witness >= -1e-9)

    def test_redundant_rows(self):
        a = np.array([[1.0, 2.0], [2.0, 4.0]])  # second row dependent
        v = solve_lp_feasibility(_inst(a, [1.0, 2.0]))
        assert v.status == FEASIBLE
        assert check_witness(_inst(a, [1.0, 2.0]), v.witness)

    def test_every_verdict_carries_artifact(self):
        rng = generator(17)
        for trial in range(50):
            a = rng.uniform(0.0, 1.0, size=(4, 6))
            b = rng.uniform(0.0, 1.0, size=4)
            if trial % 2:
                b[int(rng.integers(0, 4))] *= -1.0
            inst = _inst(a, b)
            v = solve_lp_feasibility(inst)
            if v.status == FEASIBLE:
                assert check_witness(inst, v.witness)
            else:
                assert v.status == INFEASIBLE
                assert check_farkas(inst, v.certificate)

    def test_iteration_cap_raises(self):
        rng = generator(18)
        inst = _inst(rng.uniform(size=(6, 12)), rng.uniform(size=6))
        with pytest.raises(ConvergenceError):
            solve_lp_feasibility(inst, SolverOptions(max_iters=1))

    def test_ip_domain_rejected(self):
        with pytest.raises(UsageError):
            solve_lp_feasibility(_inst([[1.0]], [1.0], domain="ip"))


class TestSolveLp:
    def test_fixed_sum(self):
        res = solve_lp(np.array([1.0, 1.0]), _inst([[1.0, 1.0]], [1.0]))
        assert res.status == OPTIMAL
        assert res.objective == pytest.approx(1.0, abs=1e-9)

    def test_unbounded_with_ray(self):
        res = solve_lp(np.array([-1.0]), _inst([[0.0]], [0.0]))
        assert res.status == UNBOUNDED
        assert res.ray is not None
        assert float(res.ray @ np.array([-1.0])) < 0.0
        assert np.allclose(np.array([[0.0]]) @ res.ray, 0.0, atol=1e-9)
        assert np.all(res.ray >= -1e-12)

    def test_slack_encoded_inequality(self):
        # min x2 subject to x1 + x2 = 2 and x1 <= 3
        a = np.array([[1.0, 1.0, 0.0], [1.0, 0.0, 1.0]])
        res = solve_lp(np.array([0.0, 1.0, 0.0]), _inst(a, [2.0, 3.0]))
        assert res.status == OPTIMAL
        assert res.objective == pytest.approx(0.0, abs=1e-9)
        assert np.allclose(res.x, [2.0, 0.0, 1.0], atol=1e-8)

    def test_infeasible_passthrough(self):
        res = solve_lp(np.array([1.0, 1.0]), _inst([[1.0, 1.0]], [-2.0]))
        assert res.status == INFEASIBLE

    def test_cost_length_checked(self):
        with pytest.raises(UsageError):
            solve_lp(np.array([1.0]), _inst([[1.0, 1.0]], [1.0]))


class TestIntegerFeasibility:
    def test_parity_infeasible(self):
        v = solve_ip_feasibility(_inst([[2.0]], [3.0], domain="ip"))
        assert v.status == INFEASIBLE

    def test_two_var_witness(self):
        v = solve_ip_feasibility(_inst([[2.0, 3.0]], [7.0], domain="ip"))
        assert v.status == FEASIBLE
        assert np.allclose(v.witness, np.rint(v.witness), atol=1e-9)
        assert float(np.array([2.0, 3.0]) @ v.witness) == pytest.approx(7.0)

    def test_three_five_four(self):
        v = solve_ip_feasibility(_inst([[3.0, 5.0]], [4.0], domain="ip"))
        assert v.status == INFEASIBLE

    def test_lp_relaxation_infeasible_gives_certificate(self):
        inst = _inst([[1.0, 1.0]], [-1.0], domain="ip")
        v = solve_ip_feasibility(inst)
        assert v.status == INFEASIBLE
        assert v.certificate is not None
        assert check_farkas(inst, v.certificate)

    def test_unknown_on_node_cap(self):
        # x1 - x2 = 0.5 has no integer solution but an unbounded
        # relaxation; a tiny node budget must yield Unknown, not a loop
        inst = _inst([[1.0, -1.0]], [0.5], domain="ip")
        v = solve_ip_feasibility(inst, SolverOptions(bnb_node_cap=30))
        assert v.status == UNKNOWN
        assert v.nodes is not None and v.nodes <= 30

    def test_unknown_on_capped_exhaustion(self):
        inst = _inst([[1.0, -1.0]], [0.5], domain="ip")
        v = solve_ip_feasibility(inst, SolverOptions(bnb_bound_cap=4.0))
        assert v.status == UNKNOWN

    def test_lp_domain_rejected(self):
        with pytest.raises(UsageError):
            solve_ip_feasibility(_inst([[1.0]], [1.0], domain="lp"))

    def test_fractional_rhs_infeasible_via_search(self):
        # bounded relaxation, no integer point
        v = solve_ip_feasibility(_inst([[2.0, 2.0]], [5.0], domain="ip"))
        assert v.status == INFEASIBLE


class TestCheckers:
    def test_witness_identity(self):
        assert check_witness(_inst(np.eye(2), [1.0, 2.0]), np.array([1.0, 2.0]))

    def test_witness_sign_violation(self):
        tol = 1e-7
        inst = _inst([[1.0, 1.0]], [0.0])
        assert not check_witness(inst, np.array([10 * tol, -10 * tol]), tol=tol)

    def test_witness_integer_check(self):
        inst = _inst([[1.0]], [1.5], domain="ip")
        assert not check_witness(inst, np.array([1.5]))

    def test_farkas_zero_rejected(self):
        assert not check_farkas(_inst([[1.0, 1.0]], [-1.0]), np.zeros(1))

    def test_farkas_wrong_length_is_false(self):
        # checkers are predicates: a malformed certificate fails the
        # check rather than raising
        assert not check_farkas(_inst([[1.0, 1.0]], [-1.0]), np.zeros(2))
        assert not check_witness(_inst([[1.0, 1.0]], [1.0]), np.zeros(3))


class TestAgainstBruteForce:
    def test_verdicts_match_basis_enumeration(self):
        rng = generator(19)
        agree = 0
        for trial in range(80):
            a = rng.uniform(0.0, 1.0, size=(4, 6))
            b = rng.uniform(0.0, 1.0, size=4)
            if trial % 2:
                b[int(rng.integers(0, 4))] *= -1.0
            inst = _inst(a, b)
            got = solve_lp_feasibility(inst).status == FEASIBLE
            want = lp_feasible_by_basis_enumeration(a, b)
            assert got == want
            agree += 1
        assert agree == 80

    def test_scale_invariance(self):
        rng = generator(20)
        for trial in range(40):
            a = rng.uniform(0.0, 1.0, size=(4, 6))
            b = rng.uniform(0.0, 1.0, size=4)
            if trial % 2:
                b[int(rng.integers(0, 4))] *= -1.0
            s1 = solve_lp_feasibility(_inst(a, b)).status
            s2 = solve_lp_feasibility(_inst(1e3 * a, 1e3 * b)).status
            assert s1 == s2

    def test_degenerate_duplicated_columns_terminate(self):
        rng = generator(21)
        for _ in range(20):
            base = rng.uniform(0.0, 1.0, size=(5, 3))
            a = np.hstack([base, base, base])  # heavy degeneracy
            x = np.zeros(9)
            x[:2] = rng.uniform(0.0, 1.0, size=2)
            inst = _inst(a, a @ x)
            v = solve_lp_feasibility(inst)
            assert v.status == FEASIBLE
            assert check_witness(inst, v.witness)
