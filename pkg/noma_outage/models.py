"""
System parameters and derived decision thresholds for a NOMA user pair
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from noma_outage.config import Config

# Tolerance for the a_m + a_n = 1 power constraint
POWER_SUM_TOLERANCE = 1e-9


class SicMode(str, Enum):
    PERFECT = "perfect"
    IMPERFECT = "imperfect"


class Scheme(str, Enum):
    CD = "CD"
    PD = "PD"


class RatePairing(str, Enum):
    """How throughput pairs success probabilities with target rates"""
    AS_WRITTEN = "as_written"   # (1 - P_m) R_n + (1 - P_n) R_m
    SWAPPED = "swapped"         # (1 - P_m) R_m + (1 - P_n) R_n


class SystemConfig(BaseModel):
    """
    Physical and protocol parameters of one downlink cluster.

    Users are uniformly distributed in a disk of radius R_D around the base
    station; the m-th and n-th weakest users (1-based, m < n) form the NOMA
    pair. Each user spreads over K subcarriers; PD-NOMA is the K = 1 case.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", use_enum_values=False, allow_inf_nan=False)

    M: int = Field(Config.NUM_USERS, ge=1, description="Users in the cluster")
    K: int = Field(Config.NUM_SUBCARRIERS, ge=1, description="Subcarriers / resource elements per user")
    m_index: int = Field(Config.M_INDEX, ge=1, description="Order index of the weak user")
    n_index: int = Field(Config.N_INDEX, ge=1, description="Order index of the strong user")
    R_D: float = Field(Config.DISK_RADIUS, gt=0, description="Disk radius (m)")
    alpha: float = Field(Config.PATH_LOSS_EXPONENT, gt=0, description="Path-loss exponent")
    eta: float = Field(..., gt=0, description="Frequency dependent factor (linear)")
    a_m: float = Field(Config.POWER_M, gt=0, lt=1)
    a_n: float = Field(Config.POWER_N, gt=0, lt=1)
    R_m: float = Field(Config.TARGET_RATE, ge=0, description="Target rate of user m (BPCU)")
    R_n: float = Field(Config.TARGET_RATE, ge=0, description="Target rate of user n (BPCU)")
    omega_I: float = Field(0.0, ge=0, description="Residual-interference mean power per subcarrier")
    sic_mode: SicMode = SicMode.PERFECT
    scheme: Scheme = Scheme.CD
    U: int = Field(Config.CHEBYSHEV_NODES, ge=1, description="Chebyshev nodes")
    L: int = Field(Config.LAGUERRE_NODES, ge=1, le=Config.MAX_LAGUERRE_NODES, description="Laguerre nodes")
    throughput_pairing: RatePairing = RatePairing.AS_WRITTEN

    @model_validator(mode="after")
    def _check_pair(self):
        if not (self.m_index < self.n_index <= self.M):
            raise ValueError(
                f"need 1 <= m_index < n_index <= M, got m={self.m_index}, n={self.n_index}, M={self.M}"
            )
        if self.scheme is Scheme.PD and self.K != 1:
            raise ValueError(f"PD scheme requires K = 1, got K={self.K}")
        if not self.a_m > self.a_n:
            raise ValueError(f"a_m must exceed a_n (got a_m={self.a_m}, a_n={self.a_n})")
        if abs(self.a_m + self.a_n - 1.0) > POWER_SUM_TOLERANCE:
            raise ValueError(f"a_m + a_n must equal 1 (got {self.a_m + self.a_n})")
        return self

    @property
    def varpi(self) -> int:
        """0 under perfect SIC, 1 under imperfect SIC"""
        return 1 if self.sic_mode is SicMode.IMPERFECT else 0

    def with_updates(self, **fields) -> "SystemConfig":
        """Return a re-validated copy with some fields replaced"""
        return SystemConfig(**{**self.model_dump(), **fields})


@dataclass(frozen=True)
class ThresholdSet:
    """Decision thresholds of a configuration at one transmit SNR"""

    rho: float
    eps_m: float
    eps_n: float
    tau: Optional[float]     # None when the power split is infeasible
    beta: float
    theta_coeff: float
    feasible_m: bool
