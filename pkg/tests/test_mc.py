import math

import numpy as np
import pytest

from conesketch.bounds import pair_distortion_bound
from conesketch.errors import UsageError
from conesketch.gen import GenSpec, generate
from conesketch.linalg import two_norm
from conesketch.mc import (
    calibrate_c,
    estimate_distortion,
    estimate_infeasibility_preservation,
    estimate_kernel_avoidance,
    wilson_lower,
)
from conesketch.projector import GAUSSIAN, RADEMACHER, SPARSE, apply, sample_projector
from conesketch.rng import generator, mix


class TestWilsonLower:
    def test_saturated_value(self):
        # full successes: lower limit is t / (t + z^2)
        assert wilson_lower(10000, 10000) == pytest.approx(
            0.9997295188344452, rel=1e-12
        )
        assert wilson_lower(300, 300) == pytest.approx(0.9910621278248719, rel=1e-12)

    def test_near_saturated_value(self):
        assert wilson_lower(9990, 10000) == pytest.approx(0.9983279753269353, rel=1e-12)

    def test_below_point_estimate(self):
        for s, t in [(1, 10), (50, 100), (999, 1000)]:
            assert wilson_lower(s, t) < s / t

    def test_monotone_in_successes(self):
        vals = [wilson_lower(s, 200) for s in range(0, 201, 10)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_tightens_with_trials(self):
        assert wilson_lower(50, 100) < wilson_lower(500, 1000)
        assert wilson_lower(50, 100) == pytest.approx(0.41884779611252954, rel=1e-12)

    def test_zero_successes(self):
        assert wilson_lower(0, 50) == 0.0

    def test_validation(self):
        with pytest.raises(UsageError):
            wilson_lower(1, 0)
        with pytest.raises(UsageError):
            wilson_lower(11, 10)
        with pytest.raises(UsageError):
            wilson_lower(-1, 10)


class TestEstimateDistortion:
    def test_large_k_concentrates(self):
        est = estimate_distortion(GAUSSIAN, 200, 200, 0.2, 400, seed=1)
        assert est.trials == 400
        assert est.rate >= 0.97
        assert est.wilson_low <= est.rate

    def test_k_one_rarely_within_band(self):
        # a single projected coordinate is standard normal, so landing in
        # [0.9, 1.1] by magnitude happens with probability about 0.097
        est = estimate_distortion(GAUSSIAN, 1, 50, 0.1, 300, seed=2)
        assert est.rate < 0.3

    def test_rate_improves_with_k(self):
        lo = estimate_distortion(GAUSSIAN, 10, 100, 0.2, 500, seed=3)
        hi = estimate_distortion(GAUSSIAN, 100, 100, 0.2, 500, seed=3)
        assert hi.rate >= lo.rate - 0.02

    @pytest.mark.parametrize("family", [RADEMACHER, SPARSE])
    def test_other_families_concentrate(self, family):
        est = estimate_distortion(family, 150, 150, 0.25, 300, seed=4)
        assert est.rate >= 0.95

    def test_deterministic(self):
        e1 = estimate_distortion(GAUSSIAN, 20, 40, 0.3, 100, seed=5)
        e2 = estimate_distortion(GAUSSIAN, 20, 40, 0.3, 100, seed=5)
        assert e1 == e2

    def test_validation(self):
        with pytest.raises(UsageError):
            estimate_distortion(GAUSSIAN, 10, 20, 0.0, 10, seed=0)
        with pytest.raises(UsageError):
            estimate_distortion(GAUSSIAN, 10, 20, 1.5, 10, seed=0)
        with pytest.raises(UsageError):
            estimate_distortion(GAUSSIAN, 10, 20, 0.2, 0, seed=0)


class TestSquaredVersusPlainCriterion:
    def test_squared_band_implies_plain_band(self):
        # checking norm^2 against 1 +/- (2 eps - eps^2) is strictly more
        # demanding than checking norm against 1 +/- eps
        eps = 0.3
        eps_sq = 2.0 * eps - eps * eps
        squared = plain = 0
        for t in range(300):
            rng = generator(mix(77, t, 1))
            x = rng.standard_normal(40)
            x = x / two_norm(x)
            proj = sample_projector(GAUSSIAN, 30, 40, mix(77, t, 0))
            nrm = two_norm(apply(proj, x))
            ok_sq = 1.0 - eps_sq <= nrm * nrm <= 1.0 + eps_sq
            ok_pl = 1.0 - eps <= nrm <= 1.0 + eps
            if ok_sq:
                assert ok_pl
                squared += 1
            if ok_pl:
                plain += 1
        assert 0 < squared <= plain


class TestKernelAvoidance:
    def test_gaussian_never_hits_kernel(self):
        est = estimate_kernel_avoidance(GAUSSIAN, 3, 12, 500, seed=6)
        assert est.successes == 500

    def test_rademacher_never_hits_kernel(self):
        est = estimate_kernel_avoidance(RADEMACHER, 2, 6, 300, seed=7)
        assert est.successes == 300

    def test_validation(self):
        with pytest.raises(UsageError):
            estimate_kernel_avoidance(GAUSSIAN, 3, 12, 0, seed=0)


class TestInfeasibilityPreservation:
    def test_square_sketch_preserves_always(self):
        lab = generate(GenSpec(dist="uniform", m=15, n=25, seed=8))
        est = estimate_infeasibility_preservation(lab, GAUSSIAN, 15, 40, seed=9)
        assert est.successes == 40

    def test_tiny_k_mostly_loses_infeasibility(self):
        # in two dimensions the projected generators almost surely span
        # the whole plane positively, which makes every target reachable
        lab = generate(GenSpec(dist="uniform", m=15, n=25, seed=10))
        est = estimate_infeasibility_preservation(lab, GAUSSIAN, 2, 40, seed=11)
        assert est.rate <= 0.2

    def test_feasible_instance_warns_and_never_counts(self):
        lab = generate(GenSpec(dist="uniform", m=6, n=12, target="feasible", seed=12))
        with pytest.warns(UserWarning, match="wrong direction"):
            est = estimate_infeasibility_preservation(lab, GAUSSIAN, 6, 10, seed=13)
        assert est.successes == 0

    def test_validation(self):
        lab = generate(GenSpec(dist="uniform", m=4, n=8, seed=14))
        with pytest.raises(UsageError):
            estimate_infeasibility_preservation(lab, GAUSSIAN, 4, 0, seed=0)


class TestCalibrateC:
    def test_deterministic(self):
        c1 = calibrate_c(GAUSSIAN, [0.5], [60], trials=200, seed=20)
        c2 = calibrate_c(GAUSSIAN, [0.5], [60], trials=200, seed=20)
        assert c1 == c2

    def test_single_point_cap(self):
        # at eps = 0.5, k = 60 the norm sits ~5 sigma inside the band, so
        # 300 trials saturate and the constant equals the Wilson cap
        chat = calibrate_c(GAUSSIAN, [0.5], [60], trials=300, seed=21)
        cap = math.log(2.0 / (1.0 - wilson_lower(300, 300))) / (0.25 * 60)
        assert cap == pytest.approx(0.36070699402777234, rel=1e-12)
        assert chat <= cap + 1e-15
        assert chat >= 0.7 * cap

    def test_stable_across_seeds(self):
        c1 = calibrate_c(GAUSSIAN, [0.5], [60], trials=300, seed=22)
        c2 = calibrate_c(GAUSSIAN, [0.5], [60], trials=300, seed=23)
        assert abs(c1 - c2) <= 0.2 * max(c1, c2)

    def test_saturated_cap_at_reference_grid(self):
        # arithmetic-only check of the cap the calibration would report if
        # every one of 10^4 trials succeeded at the widest grid point
        cap = math.log(2.0 / (1.0 - wilson_lower(10000, 10000))) / (0.25 * 800)
        assert cap == pytest.approx(0.044542276354622566, rel=1e-12)

    def test_bound_with_calibrated_constant_stays_below_fresh_rate(self):
        chat = calibrate_c(GAUSSIAN, [0.5], [60], trials=300, seed=24)
        bound = pair_distortion_bound(2, 0.5, 60, c_const=chat)
        held_out = estimate_distortion(GAUSSIAN, 60, 60, 0.5, 400, seed=25)
        assert held_out.rate >= bound.lower_bound - 0.02

    def test_validation(self):
        with pytest.raises(UsageError):
            calibrate_c(GAUSSIAN, [], [60], trials=10, seed=0)
        with pytest.raises(UsageError):
            calibrate_c(GAUSSIAN, [0.5], [], trials=10, seed=0)
