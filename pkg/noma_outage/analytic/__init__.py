from noma_outage.analytic.asymptotics import (
    asymptotic_outage_m,
    asymptotic_outage_n,
    diversity_order_estimate,
)
from noma_outage.analytic.curves import AsymptoteResult, OutageCurve
from noma_outage.analytic.distributions import (
    order_statistic_cdf,
    rules_for,
    sorted_cdf,
    unsorted_cdf,
    unsorted_cdf_exact,
)
from noma_outage.analytic.grid import (
    asymptote_curve,
    curve_from_points,
    evaluate_on_grid,
    outage_curve,
    throughput_curve,
)
from noma_outage.analytic.outage import (
    max_throughput,
    outage_m,
    outage_n,
    residual_interference_average,
    residual_interference_average_oracle,
    throughput,
    throughput_from_outage,
)

__all__ = [
    'AsymptoteResult',
    'OutageCurve',
    'asymptote_curve',
    'asymptotic_outage_m',
    'asymptotic_outage_n',
    'curve_from_points',
    'diversity_order_estimate',
    'evaluate_on_grid',
    'max_throughput',
    'order_statistic_cdf',
    'outage_curve',
    'outage_m',
    'outage_n',
    'residual_interference_average',
    'residual_interference_average_oracle',
    'rules_for',
    'sorted_cdf',
    'throughput',
    'throughput_curve',
    'throughput_from_outage',
    'unsorted_cdf',
    'unsorted_cdf_exact',
]
