"""
Experiment definitions: flat ``key = value`` files, flag overrides and
the figure presets built on top of a base system configuration.
"""

import logging
import math
from pathlib import Path
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

import numpy as np
from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from noma_outage.config import Config
from noma_outage.exceptions import ConfigError
from noma_outage.link import db_to_linear, eta_from_carrier
from noma_outage.models import RatePairing, Scheme, SicMode, SystemConfig

logger = logging.getLogger(__name__)

METHODS = ("exact", "asymptotic", "mc")
QUANTITIES = ("outage_m", "outage_n", "oma", "throughput")

# Rate set swept by the fig3 preset; a tool default
FIG3_RATES = (0.01, 0.5, 1.0)
FIG3_NOTE = "rate set (0.01, 0.5, 1) BPCU is a tool default, not taken from published data"


class SweepGrid(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    start: float = Config.SNR_START_DB
    stop: float = Config.SNR_STOP_DB
    step: float = Field(Config.SNR_STEP_DB, gt=0)

    @model_validator(mode="after")
    def _check_order(self):
        if self.stop < self.start:
            raise ValueError(f"snr_stop ({self.stop}) must be >= snr_start ({self.start})")
        return self

    def points(self) -> np.ndarray:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return np.round(self.start + self.step * np.arange(count), 12)


class CurveSpec(BaseModel):
    """One curve of a run: a quantity, a method and config overrides"""

    model_config = ConfigDict(frozen=True)

    quantity: str
    method: str
    variant: str
    overrides: Dict[str, object] = Field(default_factory=dict)

    @property
    def label(self) -> str:
        return f"{self.quantity}:{self.variant}:{self.method}"

    def config_for(self, base: SystemConfig) -> SystemConfig:
        return base.with_updates(**self.overrides) if self.overrides else base


class ExperimentSpec(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    base: SystemConfig
    grid: SweepGrid = SweepGrid()
    curves: FrozenSet[str] = frozenset(METHODS)
    trials: int = Field(Config.DEFAULT_TRIALS, ge=1)
    seed: int = Field(Config.DEFAULT_SEED, ge=0)
    out_dir: Path = Config.OUTPUT_DIR
    preset: Optional[str] = None
    svg: bool = False

    @model_validator(mode="after")
    def _check_selection(self):
        unknown = set(self.curves) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown curve methods {sorted(unknown)}; choose from {list(METHODS)}")
        if self.preset is not None and self.preset not in PRESETS:
            raise ValueError(f"unknown preset {self.preset!r}; choose from {sorted(PRESETS)}")
        if "mc" in self.curves and self.trials < Config.MIN_TRIALS_WITH_MC:
            raise ValueError(
                f"Monte Carlo curves need trials >= {Config.MIN_TRIALS_WITH_MC}, got {self.trials}"
            )
        if not self.curve_specs():
            raise ValueError(
                f"curve selection {sorted(self.curves)} yields no curves for {self.name}"
            )
        return self

    @property
    def name(self) -> str:
        return self.preset or "custom"

    def curve_specs(self) -> List[CurveSpec]:
        builder = PRESETS.get(self.preset, _custom_curves)
        return [c for c in builder(self.base) if c.method in self.curves]

    def notes(self) -> List[str]:
        return [FIG3_NOTE] if self.preset == "fig3" else []


# --------------------------------------------------------------------------
# Presets

def _sic_variants(scheme: str) -> List[Tuple[str, dict]]:
    variants = [(f"{scheme}:pSIC", {"sic_mode": SicMode.PERFECT})]
    for omega_db in (-30, -20):
        variants.append((
            f"{scheme}:ipSIC({omega_db}dB)",
            {"sic_mode": SicMode.IMPERFECT, "omega_I": float(db_to_linear(omega_db))},
        ))
    return variants


def _user_curves(scheme: str, K: int, sic_variants) -> List[CurveSpec]:
    layout = {"scheme": Scheme(scheme), "K": K}
    curves = [
        CurveSpec(quantity="outage_m", method=method, variant=scheme, overrides=layout)
        for method in METHODS
    ]
    for variant, sic in sic_variants:
        curves.extend(
            CurveSpec(quantity="outage_n", method=method, variant=variant,
                      overrides={**layout, **sic})
            for method in METHODS
        )
    return curves


def _fig1(base: SystemConfig) -> List[CurveSpec]:
    curves = _user_curves("CD", 2, _sic_variants("CD"))
    curves.append(CurveSpec(quantity="oma", method="mc", variant="OMA",
                            overrides={"scheme": Scheme.CD, "K": 2}))
    return curves


def _fig2(base: SystemConfig) -> List[CurveSpec]:
    curves = []
    for scheme, K in (("PD", 1), ("CD", 3)):
        variants = [v for v in _sic_variants(scheme) if "-30dB" not in v[0]]
        curves.extend(_user_curves(scheme, K, variants))
    return curves


def _fig3(base: SystemConfig) -> List[CurveSpec]:
    curves = []
    for rate in FIG3_RATES:
        overrides = {"scheme": Scheme.CD, "K": 2, "R_m": rate, "R_n": rate,
                     "sic_mode": SicMode.PERFECT}
        for quantity in ("outage_m", "outage_n"):
            curves.extend(
                CurveSpec(quantity=quantity, method=method, variant=f"CD:pSIC:R={rate:g}",
                          overrides=overrides)
                for method in ("exact", "mc")
            )
    return curves


def _fig4(base: SystemConfig) -> List[CurveSpec]:
    curves = []
    for scheme, K in (("CD", 2), ("PD", 1)):
        for variant, sic in _sic_variants(scheme):
            curves.extend(
                CurveSpec(quantity="throughput", method=method, variant=variant,
                          overrides={"scheme": Scheme(scheme), "K": K, **sic})
                for method in ("exact", "mc")
            )
    return curves


def _custom_curves(base: SystemConfig) -> List[CurveSpec]:
    sic = "ipSIC" if base.sic_mode is SicMode.IMPERFECT else "pSIC"
    variant = f"{base.scheme.value}:{sic}"
    curves = [CurveSpec(quantity="outage_m", method=m, variant=base.scheme.value) for m in METHODS]
    curves += [CurveSpec(quantity="outage_n", method=m, variant=variant) for m in METHODS]
    curves.append(CurveSpec(quantity="oma", method="mc", variant="OMA"))
    curves += [CurveSpec(quantity="throughput", method=m, variant=variant) for m in ("exact", "mc")]
    return curves


PRESETS = {
    "fig1": _fig1,
    "fig2": _fig2,
    "fig3": _fig3,
    "fig4": _fig4,
}

PRESET_DESCRIPTIONS = {
    "fig1": "CD-NOMA K=2: user m, user n with pSIC and ipSIC (-30/-20 dB), OMA baseline",
    "fig2": "PD-NOMA (K=1) against CD-NOMA (K=3): user m, user n pSIC/ipSIC(-20 dB)",
    "fig3": "CD-NOMA K=2 pSIC for target rates 0.01, 0.5, 1 BPCU",
    "fig4": "throughput of CD/PD-NOMA with pSIC and ipSIC (-30/-20 dB)",
}


# --------------------------------------------------------------------------
# Parsing

SYSTEM_KEYS = {
    "M": ("M", int),
    "K": ("K", int),
    "m": ("m_index", int),
    "n": ("n_index", int),
    "R_D": ("R_D", float),
    "alpha": ("alpha", float),
    "a_m": ("a_m", float),
    "a_n": ("a_n", float),
    "R_m": ("R_m", float),
    "R_n": ("R_n", float),
    "U": ("U", int),
    "L": ("L", int),
    "sic": ("sic_mode", SicMode),
    "scheme": ("scheme", Scheme),
    "throughput_pairing": ("throughput_pairing", RatePairing),
}

EXPERIMENT_KEYS = {
    "f_c": float,
    "eta": float,
    "omega_I_db": float,
    "snr_start": float,
    "snr_stop": float,
    "snr_step": float,
    "curves": str,
    "trials": int,
    "seed": int,
    "out": str,
    "preset": str,
    "svg": str,
}

TRUE_VALUES = {"1", "true", "yes", "on"}
FALSE_VALUES = {"0", "false", "no", "off", ""}


def _convert(key: str, raw: Optional[str], kind):
    if raw is None:
        raise ConfigError(f"key {key!r} has no value", fields=[key])
    text = raw.strip()
    try:
        if kind is int:
            return int(float(text)) if float(text).is_integer() else int(text)
        return kind(text)
    except ValueError:
        raise ConfigError(f"malformed value {raw!r} for {key!r}", fields=[key]) from None


def _as_bool(key: str, raw: str) -> bool:
    text = raw.strip().lower()
    if text in TRUE_VALUES:
        return True
    if text in FALSE_VALUES:
        return False
    raise ConfigError(f"malformed boolean {raw!r} for {key!r}", fields=[key])


def _fields_of(error: ValidationError) -> List[str]:
    fields = []
    for item in error.errors():
        loc = ".".join(str(part) for part in item.get("loc", ()))
        fields.append(loc or "config")
    return fields


def load_settings(path: Optional[str]) -> Dict[str, Optional[str]]:
    """Read a flat key = value file (``#`` comments)"""
    if path is None:
        return {}
    source = Path(path)
    if not source.is_file():
        raise ConfigError(f"config file not found: {source}", fields=["config"])
    return dict(dotenv_values(source))


def parse_experiment(path: Optional[str] = None,
                     overrides: Optional[Mapping[str, str]] = None) -> ExperimentSpec:
    """
    Build a validated ExperimentSpec from an optional config file and flag
    overrides (flags win). Missing keys take the numerical-results defaults.
    """
    settings = load_settings(path)
    settings.update(overrides or {})

    unknown = sorted(set(settings) - set(SYSTEM_KEYS) - set(EXPERIMENT_KEYS))
    if unknown:
        raise ConfigError(f"unknown configuration key {unknown[0]!r}", fields=unknown)

    system = {}
    for key, (field, kind) in SYSTEM_KEYS.items():
        if key in settings:
            system[field] = _convert(key, settings[key], kind)

    extra = {key: _convert(key, settings[key], kind)
             for key, kind in EXPERIMENT_KEYS.items() if key in settings and kind is not str}
    text = {key: (settings[key] or "").strip()
            for key, kind in EXPERIMENT_KEYS.items() if key in settings and kind is str}

    try:
        if "eta" in extra:
            system["eta"] = extra["eta"]
        else:
            system["eta"] = eta_from_carrier(extra.get("f_c", Config.CARRIER_FREQUENCY))
    except ValueError as exc:
        raise ConfigError(str(exc), fields=["f_c"]) from None

    omega_db = extra.get("omega_I_db", Config.RESIDUAL_INTERFERENCE_DB)
    system["omega_I"] = float(db_to_linear(omega_db))

    experiment = {}
    if "trials" in extra:
        experiment["trials"] = extra["trials"]
    if "seed" in extra:
        experiment["seed"] = extra["seed"]
    if text.get("out"):
        experiment["out_dir"] = Path(text["out"])
    if text.get("preset"):
        experiment["preset"] = text["preset"]
    if "curves" in text:
        experiment["curves"] = frozenset(
            token.strip() for token in text["curves"].split(",") if token.strip()
        )
    if "svg" in text:
        experiment["svg"] = _as_bool("svg", text["svg"])

    grid = {name: extra[key] for key, name in
            (("snr_start", "start"), ("snr_stop", "stop"), ("snr_step", "step")) if key in extra}

    try:
        spec = ExperimentSpec(
            base=SystemConfig(**system),
            grid=SweepGrid(**grid),
            **experiment,
        )
    except ValidationError as exc:
        raise ConfigError(f"invalid configuration: {exc.errors()[0]['msg']}",
                          fields=_fields_of(exc)) from None

    logger.debug(f"Parsed experiment {spec.name}: {len(spec.curve_specs())} curves")
    return spec
