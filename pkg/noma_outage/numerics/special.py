"""
Gamma(K, 1) distribution kernel for integer shape K.

F(y) = 1 - e^{-y} sum_{i<K} y^i / i!  is evaluated with running products.
For y < 1 the equivalent tail form e^{-y} sum_{i>=K} y^i / i! is used so
that tiny CDF values (high-SNR outage) keep their relative precision.
"""

import numpy as np

# Tail-series terms past y^K / K!; y < 1 makes term ratios < 1/K
TAIL_TERMS = 40
TAIL_SWITCH = 1.0


def gamma_cdf_unit(y, K: int):
    """CDF of a Gamma(K, 1) variable at ``y`` (scalar or array, y >= 0)"""
    if K < 1:
        raise ValueError(f"shape K must be >= 1, got {K}")

    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise ValueError("gamma_cdf_unit requires y >= 0")

    head = _head_form(y, K)
    small = y < TAIL_SWITCH
    if np.any(small):
        result = np.where(small, _tail_form(np.where(small, y, 0.0), K), head)
    else:
        result = head
    return np.clip(result, 0.0, 1.0)


def _head_form(y: np.ndarray, K: int) -> np.ndarray:
    term = np.ones_like(y)
    partial = np.ones_like(y)
    for i in range(1, K):
        term = term * y / i
        partial = partial + term
    return 1.0 - np.exp(-y) * partial


def _tail_form(y: np.ndarray, K: int) -> np.ndarray:
    # y^K / K! as a running product
    term = np.ones_like(y)
    for i in range(1, K + 1):
        term = term * y / i
    tail = term.copy()
    for i in range(K + 1, K + 1 + TAIL_TERMS):
        term = term * y / i
        tail = tail + term
    return np.exp(-y) * tail
