from noma_outage.montecarlo.channel import ChannelDraw, sample_batch, sample_draw
from noma_outage.montecarlo.simulator import (
    OutageEstimate,
    SweepEstimates,
    estimate_oma,
    estimate_outage,
    estimate_outage_sweep,
    estimate_throughput,
    oma_outage,
    oma_threshold,
    trial_outage,
)

__all__ = [
    'ChannelDraw',
    'OutageEstimate',
    'SweepEstimates',
    'estimate_oma',
    'estimate_outage',
    'estimate_outage_sweep',
    'estimate_throughput',
    'oma_outage',
    'oma_threshold',
    'sample_batch',
    'sample_draw',
    'trial_outage',
]
