import math

import numpy as np
import pytest
from pydantic import ValidationError

from noma_outage.config import Config
from noma_outage.link import (
    SPEED_OF_LIGHT,
    db_to_linear,
    derive_thresholds,
    eta_from_carrier,
    linear_to_db,
    sinr_m,
    sinr_n,
    sinr_n_to_m,
    target_threshold,
)
from noma_outage.models import Scheme, SicMode, SystemConfig

EPS = 2.0 ** 0.01 - 1.0


class TestConversions:
    def test_db_round_trip_values(self):
        assert db_to_linear(30) == pytest.approx(1000.0)
        assert linear_to_db(100.0) == pytest.approx(20.0)
        np.testing.assert_allclose(db_to_linear([0, 10, -20]), [1.0, 10.0, 0.01])

    def test_eta_from_carrier(self):
        expected = (SPEED_OF_LIGHT / (4 * math.pi * 1e9)) ** 2
        assert eta_from_carrier(1e9) == pytest.approx(expected, rel=1e-12)

    def test_eta_rejects_non_positive_carrier(self):
        with pytest.raises(ValueError):
            eta_from_carrier(0.0)

    def test_target_threshold(self):
        assert target_threshold(1.0) == pytest.approx(1.0)
        assert target_threshold(0.01) == pytest.approx(EPS)
        assert target_threshold(0.0) == 0.0


class TestSystemConfig:
    def test_defaults(self, base_config):
        assert (base_config.M, base_config.K) == (3, 2)
        assert (base_config.m_index, base_config.n_index) == (1, 2)
        assert base_config.varpi == 0

    def test_defaults_follow_config_constants(self, base_config):
        assert base_config.R_D == Config.DISK_RADIUS
        assert base_config.alpha == Config.PATH_LOSS_EXPONENT
        assert (base_config.a_m, base_config.a_n) == (Config.POWER_M, Config.POWER_N)
        assert base_config.R_m == base_config.R_n == Config.TARGET_RATE
        assert (base_config.U, base_config.L) == (Config.CHEBYSHEV_NODES, Config.LAGUERRE_NODES)

    def test_varpi_follows_sic_mode(self, ipsic_config):
        assert ipsic_config.varpi == 1

    @pytest.mark.parametrize("fields", [
        {"m_index": 2, "n_index": 2},
        {"n_index": 4},
        {"scheme": Scheme.PD, "K": 2},
        {"a_m": 0.4, "a_n": 0.6},
        {"a_m": 0.7, "a_n": 0.2},
        {"L": 257},
        {"U": 0},
        {"alpha": math.inf},
        {"R_D": math.inf},
        {"omega_I": math.nan},
    ])
    def test_rejects_invalid_fields(self, base_config, fields):
        with pytest.raises(ValidationError):
            base_config.with_updates(**fields)

    def test_rejects_unknown_field(self):
        with pytest.raises(ValidationError):
            SystemConfig(eta=1e-3, bogus=1)

    def test_is_frozen(self, base_config):
        with pytest.raises(ValidationError):
            base_config.K = 3

    def test_with_updates_returns_new_instance(self, base_config):
        updated = base_config.with_updates(K=3)
        assert updated.K == 3
        assert base_config.K == 2


class TestThresholds:
    def test_default_thresholds(self, base_config):
        rho = 1000.0
        thresholds = derive_thresholds(base_config, rho)

        assert thresholds.feasible_m
        assert thresholds.eps_m == pytest.approx(EPS)
        assert thresholds.tau == pytest.approx(EPS / (rho * (0.8 - EPS * 0.2)))
        assert thresholds.beta == pytest.approx(EPS / (rho * 0.2))
        assert thresholds.theta_coeff == 0.0

    def test_weak_user_threshold_example(self, base_config):
        thresholds = derive_thresholds(base_config, 10.0)
        assert thresholds.tau == pytest.approx(8.7097e-4, rel=1e-4)

    def test_zero_rate_weak_user(self, base_config):
        thresholds = derive_thresholds(base_config.with_updates(R_m=0.0), 100.0)
        assert thresholds.feasible_m
        assert thresholds.eps_m == 0.0
        assert thresholds.tau == 0.0

    def test_doubling_snr_halves_thresholds(self, ipsic_config):
        low = derive_thresholds(ipsic_config, 100.0)
        high = derive_thresholds(ipsic_config, 200.0)
        assert high.beta == pytest.approx(low.beta / 2, rel=1e-15)
        assert high.tau == pytest.approx(low.tau / 2, rel=1e-15)
        assert high.theta_coeff == low.theta_coeff

    def test_imperfect_sic_coefficient(self, ipsic_config):
        thresholds = derive_thresholds(ipsic_config, 100.0)
        assert thresholds.theta_coeff == pytest.approx(EPS / 0.2)

    def test_infeasible_split(self, base_config):
        config = base_config.with_updates(a_m=0.6, a_n=0.4, R_m=2.0)
        thresholds = derive_thresholds(config, 100.0)
        assert not thresholds.feasible_m
        assert thresholds.tau is None

    @pytest.mark.parametrize("rho", [0.0, -1.0])
    def test_rejects_non_positive_rho(self, base_config, rho):
        with pytest.raises(ValueError):
            derive_thresholds(base_config, rho)


class TestSinr:
    def test_weak_user_threshold_is_tau(self, base_config):
        thresholds = derive_thresholds(base_config, 500.0)
        value = sinr_m(thresholds.tau, 500.0, base_config.a_m, base_config.a_n)
        assert value == pytest.approx(thresholds.eps_m, rel=1e-12)

    def test_strong_user_threshold_is_beta(self, base_config):
        thresholds = derive_thresholds(base_config, 500.0)
        value = sinr_n(thresholds.beta, 0.0, 500.0, base_config.a_n, SicMode.PERFECT)
        assert value == pytest.approx(thresholds.eps_n, rel=1e-12)

    def test_perfect_sic_ignores_residual_power(self):
        a = sinr_n(1e-3, 0.0, 100.0, 0.2, SicMode.PERFECT)
        b = sinr_n(1e-3, 5.0, 100.0, 0.2, SicMode.PERFECT)
        assert a == b

    def test_imperfect_sic_residual_power_lowers_sinr(self):
        clean = sinr_n(1e-3, 0.0, 100.0, 0.2, SicMode.IMPERFECT)
        dirty = sinr_n(1e-3, 1e-3, 100.0, 0.2, SicMode.IMPERFECT)
        assert dirty == pytest.approx(clean / 1.1)

    def test_vectorized(self):
        z = np.array([1e-4, 1e-3, 1e-2])
        values = sinr_n_to_m(z, 100.0, 0.8, 0.2)
        assert values.shape == (3,)
        assert np.all(np.diff(values) > 0)
        # saturates at a_m / a_n
        assert sinr_n_to_m(1e12, 100.0, 0.8, 0.2) == pytest.approx(4.0)
