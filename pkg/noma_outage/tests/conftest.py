import logging

import pytest

from noma_outage.config import Config
from noma_outage.link import db_to_linear, eta_from_carrier
from noma_outage.models import Scheme, SicMode, SystemConfig


@pytest.fixture
def base_config():
    """Numerical-results defaults: M=3, (m, n)=(1, 2), K=2, CD-NOMA, pSIC"""
    return SystemConfig(eta=eta_from_carrier(Config.CARRIER_FREQUENCY))


@pytest.fixture
def ipsic_config(base_config):
    return base_config.with_updates(sic_mode=SicMode.IMPERFECT, omega_I=float(db_to_linear(-20)))


@pytest.fixture
def pd_config(base_config):
    return base_config.with_updates(scheme=Scheme.PD, K=1)


@pytest.fixture(autouse=True)
def reset_package_logger():
    yield
    # the CLI installs its own handlers; undo them between tests
    package_logger = logging.getLogger('noma_outage')
    package_logger.handlers.clear()
    package_logger.propagate = True
    package_logger.setLevel(logging.NOTSET)
