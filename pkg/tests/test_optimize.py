import math

import numpy as np
import pytest

from qcap import channels as chn
from qcap.info import coherent_information_any, private_information_value
from qcap.optimize import (
    OptimizerConfig,
    gradient_selfcheck,
    maximize_coherent_information,
    maximize_private_information,
)
from conftest import random_channel

FAST = OptimizerConfig(restarts=4, max_iters=400, seed=0)


class TestCoherentMaximization:
    def test_erasure_quarter(self):
        res = maximize_coherent_information(chn.make_erasure(0.25, 2), FAST)
        assert res.value == pytest.approx(0.5, abs=1e-6)

    def test_erasure_half_is_flat_zero(self):
        res = maximize_coherent_information(chn.make_erasure(0.5, 2), FAST)
        assert abs(res.value) < 1e-9

    def test_platypus_complement_near_log2(self):
        cfg = OptimizerConfig(restarts=6, max_iters=800, seed=0)
        res = maximize_coherent_information(chn.complement(chn.make_platypus(3)), cfg)
        assert res.value == pytest.approx(1.0, abs=2e-3)

    def test_platypus_below_known_ceiling(self):
        res = maximize_coherent_information(chn.make_platypus(3), FAST)
        ceiling = math.log2(1 + 1 / math.sqrt(2))
        assert 0.68 < res.value <= ceiling + 1e-9

    def test_value_is_sound_lower_bound(self, rng):
        ch = random_channel(3, 3, 2, rng)
        res = maximize_coherent_information(ch, FAST)
        recomputed = coherent_information_any(ch, res.argmax)
        assert res.value == pytest.approx(recomputed, abs=1e-9)
        np.testing.assert_allclose(res.argmax, res.argmax.conj().T)
        assert np.trace(res.argmax).real == pytest.approx(1.0)

    def test_deterministic(self):
        a = maximize_coherent_information(chn.make_erasure(0.3, 2), FAST)
        b = maximize_coherent_information(chn.make_erasure(0.3, 2), FAST)
        assert a.value == pytest.approx(b.value, abs=1e-12)
        assert np.abs(a.argmax - b.argmax).max() < 1e-12

    def test_best_of_restarts(self):
        res = maximize_coherent_information(chn.make_erasure(0.25, 2), FAST)
        assert len(res.restarts_summary) == FAST.restarts
        assert res.value >= max(res.restarts_summary) - 1e-9

    def test_flagged_channel(self):
        h = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
        fch = chn.make_rocket_flagged(2, [(np.eye(2), np.eye(2)), (h, h)])
        res = maximize_coherent_information(fch, OptimizerConfig(restarts=3, max_iters=300))
        recomputed = coherent_information_any(fch, res.argmax)
        assert res.value == pytest.approx(recomputed, abs=1e-9)
        assert res.value <= 2.0 + 1e-9

    def test_two_copies_at_least_twice_single(self):
        e = chn.make_erasure(0.25, 2)
        single = maximize_coherent_information(e, FAST).value
        double = maximize_coherent_information(chn.tensor(e, e), FAST).value
        assert double >= 2 * single - 1e-3

    def test_rank_restriction(self):
        cfg = OptimizerConfig(restarts=4, max_iters=400, rank=1)
        res = maximize_coherent_information(chn.make_erasure(0.25, 2), cfg)
        vals = np.linalg.eigvalsh(res.argmax)
        assert vals[:-1].max() < 1e-9  # rank-1 argmax


class TestPrivateMaximization:
    def test_erasure_quarter(self):
        cfg = OptimizerConfig(restarts=3, max_iters=500, ensemble_size=2)
        res = maximize_private_information(chn.make_erasure(0.25, 2), cfg)
        assert res.value == pytest.approx(0.5, abs=1e-3)

    def test_erasure_half_exactly_zero(self):
        cfg = OptimizerConfig(restarts=2, max_iters=200, ensemble_size=2)
        res = maximize_private_information(chn.make_erasure(0.5, 2), cfg)
        # channel and complement coincide at p = 1/2: every ensemble gives 0
        assert abs(res.value) < 1e-12

    def test_value_is_sound_lower_bound(self):
        cfg = OptimizerConfig(restarts=2, max_iters=200, ensemble_size=2)
        res = maximize_private_information(chn.make_erasure(0.3, 2), cfg)
        recomputed = private_information_value(chn.make_erasure(0.3, 2), res.argmax)
        assert res.value == pytest.approx(recomputed, abs=1e-9)

    def test_deterministic(self):
        cfg = OptimizerConfig(restarts=2, max_iters=200, ensemble_size=2)
        a = maximize_private_information(chn.make_erasure(0.3, 2), cfg)
        b = maximize_private_information(chn.make_erasure(0.3, 2), cfg)
        assert a.value == pytest.approx(b.value, abs=1e-12)

    def test_private_at_least_coherent(self):
        # the maximized private information dominates the coherent value
        ch = chn.make_erasure(0.25, 2)
        cfg = OptimizerConfig(restarts=3, max_iters=500, ensemble_size=2)
        pv = maximize_private_information(ch, cfg).value
        cv = maximize_coherent_information(ch, FAST).value
        assert pv >= cv - 1e-3


class TestGradientSelfcheck:
    def test_erasure(self):
        report = gradient_selfcheck(chn.make_erasure(0.25, 2), rho_seed=1)
        assert report.max_rel_error < 1e-4

    def test_platypus(self):
        report = gradient_selfcheck(chn.make_platypus(3), rho_seed=2)
        assert report.max_rel_error < 1e-4

    def test_random_channel(self, rng):
        ch = random_channel(3, 2, 4, rng)
        report = gradient_selfcheck(ch, rho_seed=3)
        assert report.max_rel_error < 1e-4

    def test_reports_all_points(self):
        report = gradient_selfcheck(chn.make_erasure(0.25, 2), rho_seed=1, points=3)
        assert len(report.per_point) == 3
        assert report.max_rel_error == max(report.per_point)
