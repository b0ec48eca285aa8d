from noma_outage.experiments.outputs import build_metadata, curves_to_frame, write_outputs
from noma_outage.experiments.spec import (
    PRESET_DESCRIPTIONS,
    PRESETS,
    CurveSpec,
    ExperimentSpec,
    SweepGrid,
    parse_experiment,
)
from noma_outage.experiments.sweep import SweepRunner, run_sweep

__all__ = [
    'CurveSpec',
    'ExperimentSpec',
    'PRESETS',
    'PRESET_DESCRIPTIONS',
    'SweepGrid',
    'SweepRunner',
    'build_metadata',
    'curves_to_frame',
    'parse_experiment',
    'run_sweep',
    'write_outputs',
]
