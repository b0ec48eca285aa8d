import json

import numpy as np
import pandas as pd
import pytest

from noma_outage.config import Config
from noma_outage.exceptions import ConfigError, OutputError
from noma_outage.experiments import (
    PRESETS,
    SweepGrid,
    curves_to_frame,
    parse_experiment,
    run_sweep,
    write_outputs,
)
from noma_outage.link import eta_from_carrier
from noma_outage.models import Scheme, SicMode


def write_config(tmp_path, text):
    path = tmp_path / "experiment.cfg"
    path.write_text(text)
    return str(path)


class TestSweepGrid:
    def test_points_include_stop(self):
        np.testing.assert_allclose(SweepGrid(start=0, stop=10, step=2.5).points(),
                                   [0, 2.5, 5, 7.5, 10])

    def test_default_grid(self):
        points = SweepGrid().points()
        assert points[0] == 0 and points[-1] == 50 and points.size == 11

    def test_single_point(self):
        np.testing.assert_allclose(SweepGrid(start=30, stop=30, step=5).points(), [30])

    def test_rejects_reversed_grid(self):
        with pytest.raises(ValueError):
            SweepGrid(start=10, stop=0, step=5)


class TestParseExperiment:
    def test_defaults(self):
        spec = parse_experiment()
        base = spec.base
        assert (base.M, base.K, base.m_index, base.n_index) == (3, 2, 1, 2)
        assert base.eta == pytest.approx(eta_from_carrier(1e9))
        assert base.omega_I == pytest.approx(0.01)
        assert base.sic_mode is SicMode.PERFECT
        assert spec.trials == Config.DEFAULT_TRIALS
        assert spec.curves == {"exact", "asymptotic", "mc"}
        assert spec.name == "custom"

    def test_reads_flat_file(self, tmp_path):
        path = write_config(tmp_path, "# cluster\nM = 4\nK=3\nn=3\nsic=imperfect\n"
                                      "omega_I_db=-30\nsnr_stop=20\ntrials=2000\n")
        spec = parse_experiment(path)
        assert (spec.base.M, spec.base.K, spec.base.n_index) == (4, 3, 3)
        assert spec.base.sic_mode is SicMode.IMPERFECT
        assert spec.base.omega_I == pytest.approx(1e-3)
        assert spec.grid.points()[-1] == 20
        assert spec.trials == 2000

    def test_overrides_win_over_file(self, tmp_path):
        path = write_config(tmp_path, "K=3\nseed=5\n")
        spec = parse_experiment(path, {"K": "1", "scheme": "PD"})
        assert spec.base.K == 1
        assert spec.base.scheme is Scheme.PD
        assert spec.seed == 5

    def test_carrier_frequency_sets_eta(self):
        spec = parse_experiment(overrides={"f_c": "2e9"})
        assert spec.base.eta == pytest.approx(eta_from_carrier(2e9))

    def test_unknown_key_is_named(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_experiment(overrides={"Kappa": "2"})
        assert "Kappa" in str(excinfo.value)
        assert excinfo.value.fields == ("Kappa",)

    def test_malformed_value_is_named(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_experiment(overrides={"K": "two"})
        assert excinfo.value.fields == ("K",)

    def test_model_errors_name_fields(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_experiment(overrides={"R_D": "-1"})
        assert "R_D" in excinfo.value.fields

    @pytest.mark.parametrize("overrides", [
        {"scheme": "PD", "K": "2"},
        {"m": "2", "n": "2"},
        {"a_m": "0.3", "a_n": "0.7"},
        {"f_c": "0"},
        {"snr_step": "0"},
        {"preset": "fig9"},
        {"curves": "exact,magic"},
        {"trials": "10"},
        {"sic": "partial"},
        {"svg": "maybe"},
        {"alpha": "inf"},
        {"R_D": "inf"},
        {"snr_stop": "inf"},
        {"omega_I_db": "inf"},
        {"preset": "fig4", "curves": "asymptotic"},
        {"curves": ""},
    ])
    def test_rejects_invalid_settings(self, overrides):
        with pytest.raises(ConfigError):
            parse_experiment(overrides=overrides)

    def test_small_trial_count_allowed_without_monte_carlo(self):
        spec = parse_experiment(overrides={"curves": "exact,asymptotic", "trials": "10"})
        assert spec.trials == 10

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            parse_experiment(str(tmp_path / "absent.cfg"))


class TestPresets:
    @pytest.mark.parametrize("preset, count", [("fig1", 13), ("fig2", 18), ("fig3", 12), ("fig4", 12)])
    def test_curve_counts(self, preset, count):
        spec = parse_experiment(overrides={"preset": preset})
        assert len(spec.curve_specs()) == count

    def test_method_selection_filters_curves(self):
        spec = parse_experiment(overrides={"preset": "fig1", "curves": "exact"})
        labels = [c.label for c in spec.curve_specs()]
        assert labels == [
            "outage_m:CD:exact",
            "outage_n:CD:pSIC:exact",
            "outage_n:CD:ipSIC(-30dB):exact",
            "outage_n:CD:ipSIC(-20dB):exact",
        ]

    def test_labels_are_unique(self):
        for preset in PRESETS:
            labels = [c.label for c in parse_experiment(overrides={"preset": preset}).curve_specs()]
            assert len(labels) == len(set(labels))

    def test_presets_build_valid_configs(self):
        for preset in PRESETS:
            spec = parse_experiment(overrides={"preset": preset})
            for curve in spec.curve_specs():
                config = curve.config_for(spec.base)
                assert config.K >= 1

    def test_fig2_compares_schemes(self):
        spec = parse_experiment(overrides={"preset": "fig2"})
        schemes = {(c.config_for(spec.base).scheme, c.config_for(spec.base).K) for c in spec.curve_specs()}
        assert schemes == {(Scheme.PD, 1), (Scheme.CD, 3)}

    def test_fig3_carries_note(self):
        assert parse_experiment(overrides={"preset": "fig3"}).notes()
        assert parse_experiment(overrides={"preset": "fig1"}).notes() == []


class TestRunSweep:
    def test_analytic_preset(self):
        spec = parse_experiment(overrides={
            "preset": "fig1", "curves": "exact,asymptotic",
            "snr_start": "20", "snr_stop": "40", "snr_step": "10",
        })
        curves = run_sweep(spec, n_jobs=1)
        assert len(curves) == 8
        for curve in curves:
            assert curve.values.shape == (3,)
            assert np.all((curve.values >= 0) & (curve.values <= 1))

        by_label = {c.label: c for c in curves}
        floor = by_label["outage_n:CD:ipSIC(-20dB):asymptotic"].values
        assert np.all(floor == floor[0])

    def test_monte_carlo_is_deterministic(self):
        spec = parse_experiment(overrides={
            "preset": "fig1", "curves": "mc", "trials": "2000",
            "snr_start": "0", "snr_stop": "20", "snr_step": "10",
        })
        first = curves_to_frame(run_sweep(spec, n_jobs=1))
        second = curves_to_frame(run_sweep(spec, n_jobs=1))
        assert list(first.columns)[0] == "snr_db"
        assert len(first.columns) == 1 + 5
        pd.testing.assert_frame_equal(first, second)

    def test_csv_identical_across_worker_counts(self, tmp_path):
        common = {
            "preset": "fig1", "curves": "mc,exact", "trials": "3000",
            "snr_start": "0", "snr_stop": "20", "snr_step": "10",
        }
        serial = parse_experiment(overrides={**common, "out": str(tmp_path / "serial")})
        parallel = parse_experiment(overrides={**common, "out": str(tmp_path / "parallel")})
        first = write_outputs(run_sweep(serial, n_jobs=1), serial)[0]
        second = write_outputs(run_sweep(parallel, n_jobs=2), parallel)[0]
        assert first.read_bytes() == second.read_bytes()

    def test_throughput_curves(self):
        spec = parse_experiment(overrides={
            "preset": "fig4", "curves": "exact",
            "snr_start": "30", "snr_stop": "50", "snr_step": "10",
        })
        curves = run_sweep(spec, n_jobs=1)
        assert all(c.kind == "throughput" for c in curves)
        assert all(np.all(c.values <= 0.02 + 1e-12) for c in curves)

    def test_errors_carry_curve_label(self):
        spec = parse_experiment(overrides={
            "curves": "asymptotic", "a_m": "0.6", "a_n": "0.4", "R_m": "2",
            "snr_start": "30", "snr_stop": "30",
        })
        with pytest.raises(ValueError, match="outage_m:CD:asymptotic"):
            run_sweep(spec, n_jobs=1)


class TestWriteOutputs:
    def make_spec(self, tmp_path, **extra):
        overrides = {
            "preset": "fig1", "curves": "exact,asymptotic",
            "snr_start": "20", "snr_stop": "30", "snr_step": "10", "out": str(tmp_path / "out"),
        }
        overrides.update(extra)
        return parse_experiment(overrides=overrides)

    def test_csv_and_metadata(self, tmp_path):
        spec = self.make_spec(tmp_path)
        curves = run_sweep(spec, n_jobs=1)
        paths = write_outputs(curves, spec)

        assert [p.name for p in paths] == ["fig1.csv", "fig1.json"]
        frame = pd.read_csv(paths[0])
        assert list(frame.columns) == ["snr_db"] + [c.label for c in curves]
        np.testing.assert_allclose(frame["snr_db"], [20, 30])
        np.testing.assert_allclose(frame[curves[0].label], curves[0].values, rtol=1e-8)

        metadata = json.loads(paths[1].read_text())
        assert metadata["name"] == "fig1"
        assert [c["label"] for c in metadata["columns"]] == [c.label for c in curves]
        assert metadata["experiment"]["curves"] == ["asymptotic", "exact"]

    def test_rerun_is_byte_identical(self, tmp_path):
        spec = self.make_spec(tmp_path)
        first = [p.read_bytes() for p in write_outputs(run_sweep(spec, n_jobs=1), spec)]
        second = [p.read_bytes() for p in write_outputs(run_sweep(spec, n_jobs=1), spec)]
        assert first == second

    def test_svg(self, tmp_path):
        spec = self.make_spec(tmp_path, svg="true")
        paths = write_outputs(run_sweep(spec, n_jobs=1), spec)
        assert paths[-1].suffix == ".svg"
        assert "<svg" in paths[-1].read_text()

    def test_unwritable_directory(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        spec = self.make_spec(tmp_path, out=str(blocker / "out"))
        with pytest.raises(OutputError):
            write_outputs(run_sweep(spec, n_jobs=1), spec)

    def test_rejects_empty_selection(self):
        with pytest.raises(OutputError):
            curves_to_frame([])
