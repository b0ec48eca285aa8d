from noma_outage.numerics.quadrature import (
    ChebyshevRule,
    LaguerreRule,
    adaptive_integrate,
    chebyshev_rule,
    laguerre_rule,
)
from noma_outage.numerics.special import gamma_cdf_unit

__all__ = [
    'ChebyshevRule',
    'LaguerreRule',
    'adaptive_integrate',
    'chebyshev_rule',
    'gamma_cdf_unit',
    'laguerre_rule',
]
