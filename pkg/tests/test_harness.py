"""
Tests for config parsing, result emission and the command line entry point.
"""

import io
import json
from pathlib import Path

import pytest

from ttsac.core.errors import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    InvalidArgumentError,
    OutputError,
    UsageError,
)
from ttsac.main import main
from ttsac.routes.parser import build_parser, overrides_from_args, parse_args
from ttsac.routes.suites import deep_merge, parse_config
from ttsac.schemas.experiment import (
    Estimate,
    ExperimentRecord,
    Family,
    OutputFormat,
    PlotSeries,
    PlotSpec,
    Suite,
    SuiteOutcome,
)
from ttsac.utils.emitters import columns, emit, format_cell, render_csv, render_json, render_svg


def _record(**values: float) -> ExperimentRecord:
    return ExperimentRecord(
        suite=Suite.COVARIANCE,
        seed=42,
        params={"k": 4, "dim": 1},
        estimates={"variance": Estimate(value=0.25, reference=0.25, standard_error=0.01)},
        values=dict(values),
        checks={"within_band": True},
    )


class TestParseConfig:
    def test_defaults(self) -> None:
        cfg = parse_config(None, {"suite": "covariance"})
        assert cfg.suite is Suite.COVARIANCE
        assert cfg.dim == 8
        assert cfg.seed == 42
        assert cfg.trials == 50_000
        assert cfg.format is OutputFormat.CSV
        assert cfg.output is None

    def test_suite_from_document(self) -> None:
        cfg = parse_config('{"suite": "k-sweep", "k_max": 6}')
        assert cfg.suite is Suite.K_SWEEP
        assert cfg.k_max == 6
        assert cfg.system.family is Family.LINEAR_PIPELINE

    def test_flags_win_over_document(self) -> None:
        text = json.dumps({"suite": "covariance", "seed": 42, "system": {"rho": 0.3}})
        cfg = parse_config(text, {"seed": 7, "system": {"sigma2": 2.0}})
        assert cfg.seed == 7
        assert cfg.system.rho == 0.3
        assert cfg.system.sigma2 == 2.0

    def test_rho_out_of_range(self) -> None:
        with pytest.raises(UsageError) as info:
            parse_config(None, {"suite": "covariance", "system": {"rho": 1.2}})
        assert "rho" in info.value.message
        assert "[0, 1)" in info.value.message

    @pytest.mark.parametrize(
        "text",
        ['{"suite": "covariance",', "[1, 2]", '{"suite": "covariance", "colour": "red"}'],
    )
    def test_bad_documents(self, text: str) -> None:
        with pytest.raises(UsageError):
            parse_config(text)

    def test_unknown_suite(self) -> None:
        with pytest.raises(UsageError, match="unknown suite"):
            parse_config(None, {"suite": "variance"})

    def test_missing_suite(self) -> None:
        with pytest.raises(UsageError, match="suite"):
            parse_config('{"dim": 2}')

    def test_family_flag_narrows_bound_suite(self) -> None:
        cfg = parse_config(None, {"suite": "bound", "system": {"family": "nonlinear"}})
        assert cfg.families == [Family.NONLINEAR]

    def test_identity_stream_always_present(self) -> None:
        cfg = parse_config(None, {"suite": "pipeline", "streams": ["motion"]})
        assert cfg.streams == ["identity", "motion"]

    def test_deep_merge_keeps_nested_keys(self) -> None:
        merged = deep_merge({"system": {"rho": 0.5, "drift": 0.1}}, {"system": {"rho": 0.0}})
        assert merged == {"system": {"rho": 0.0, "drift": 0.1}}


class TestParser:
    def test_overrides_only_for_set_flags(self) -> None:
        args = parse_args(["covariance", "--seed", "7", "--rho", "0.2", "--streams", "identity,motion"])
        assert overrides_from_args(args) == {
            "seed": 7,
            "streams": ["identity", "motion"],
            "system": {"rho": 0.2},
        }

    def test_k_and_k_max_are_exclusive(self) -> None:
        with pytest.raises(UsageError):
            parse_args(["k-sweep", "--k", "2", "--k-max", "5"])

    def test_unknown_suite(self) -> None:
        with pytest.raises(UsageError):
            parse_args(["nope"])

    def test_help_explains_suite_specific_flags(self) -> None:
        text = " ".join(build_parser().format_help().split())
        assert "bound suite sweeps k_values" in text
        assert "identity pull rate" in text


class TestEmitters:
    def test_column_order(self) -> None:
        header = columns([_record(oracle_max_error=0.0)])
        assert header[:4] == ["suite", "seed", "dim", "k"]
        assert header[4:] == sorted(header[4:])

    def test_one_record_csv(self) -> None:
        text = render_csv([_record()])
        lines = text.split("\n")
        assert text.endswith("\n")
        assert len(lines) == 3 and lines[2] == ""
        assert lines[0].startswith("suite,seed,dim,k,")
        assert lines[1].startswith("covariance,42,1,4,")

    def test_format_cell(self) -> None:
        assert format_cell(True) == "true"
        assert format_cell(None) == ""
        assert format_cell(0.1) == "0.1"
        assert format_cell(3) == "3"

    def test_json_nulls_non_finite(self) -> None:
        payload = json.loads(render_json([_record(ratio=float("nan"))]))
        assert payload[0]["ratio"] is None
        assert payload[0]["variance_reference"] == 0.25
        assert payload[0]["check_within_band"] is True

    def test_emit_to_stream(self) -> None:
        stream = io.StringIO()
        text = emit([_record()], OutputFormat.CSV, stream=stream)
        assert stream.getvalue() == text

    def test_emit_nothing(self) -> None:
        with pytest.raises(InvalidArgumentError):
            emit([], OutputFormat.CSV, stream=io.StringIO())

    def test_unwritable_path(self, tmp_path: Path) -> None:
        with pytest.raises(OutputError):
            emit([_record()], OutputFormat.JSON, tmp_path / "missing" / "out.json")

    def test_svg_has_one_polyline_per_series(self) -> None:
        plot = PlotSpec(
            title="t",
            x_label="x",
            y_label="y",
            series=[
                PlotSeries(name="a", x=[1.0, 2.0], y=[0.5, 0.25]),
                PlotSeries(name="b", x=[1.0, 2.0], y=[0.4, 0.3]),
            ],
        )
        svg = render_svg(plot)
        assert svg.count("<polyline") == 2
        assert 'version="1.1"' in svg
        assert svg == render_svg(plot)


class TestMain:
    fast_covariance = ["covariance", "--dim", "2", "--trials", "5000"]

    def test_failed_check_exit_code(
        self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path
    ) -> None:
        failing = _record().model_copy(update={"checks": {"within_band": False}})

        class FailingController:
            def execute(self, cfg: object) -> SuiteOutcome:
                return SuiteOutcome(records=[failing])

        monkeypatch.setattr(
            "ttsac.routes.suites.get_controller", lambda suite: FailingController()
        )
        out = tmp_path / "out.json"
        assert main(["covariance", "--format", "json", "--out", str(out)]) == EXIT_CHECK_FAILED
        payload = json.loads(out.read_text())
        assert payload[0]["passed"] is False
        assert payload[0]["check_within_band"] is False

    def test_single_entry_k_sweep_exits_ok(self, tmp_path: Path) -> None:
        out = tmp_path / "sweep.csv"
        assert main(["k-sweep", "--k-max", "1", "--trials", "2000", "--out", str(out)]) == EXIT_OK

    def test_unknown_suite_exit_code(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["nope"]) == EXIT_USAGE
        error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert error["error"] == "UsageError"

    def test_invalid_rho_exit_code(self) -> None:
        assert main(["covariance", "--rho", "1.2"]) == EXIT_USAGE

    def test_missing_config_file(self, tmp_path: Path) -> None:
        assert main(["covariance", "--config", str(tmp_path / "absent.json")]) == EXIT_USAGE

    def test_unwritable_output(self, tmp_path: Path) -> None:
        out = tmp_path / "missing" / "out.csv"
        assert main([*self.fast_covariance, "--out", str(out)]) == EXIT_USAGE

    def test_csv_is_reproducible(self, tmp_path: Path) -> None:
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main([*self.fast_covariance, "--out", str(first)]) == EXIT_OK
        assert main([*self.fast_covariance, "--out", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()
        assert first.read_text().count("\n") == 2

    def test_stdout_json(self, capsys: pytest.CaptureFixture) -> None:
        assert main([*self.fast_covariance, "--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload[0]["suite"] == "covariance"
        assert payload[0]["passed"] is True

    def test_config_file_and_seed_flag(self, tmp_path: Path) -> None:
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"suite": "covariance", "seed": 42, "dim": 2, "trials": 5000}))
        out = tmp_path / "out.json"
        main(["covariance", "--config", str(config), "--seed", "7", "--format", "json", "--out", str(out)])
        assert json.loads(out.read_text())[0]["seed"] == 7

    def test_k_sweep_plot(self, tmp_path: Path) -> None:
        plot, out = tmp_path / "sweep.svg", tmp_path / "sweep.csv"
        code = main(["k-sweep", "--trials", "2000", "--plot", str(plot), "--out", str(out)])
        assert code != EXIT_USAGE
        assert plot.read_text().count("<polyline") == 2

    def test_plot_ignored_without_series(self, tmp_path: Path) -> None:
        plot = tmp_path / "none.svg"
        assert main([*self.fast_covariance, "--plot", str(plot), "--out", str(tmp_path / "o.csv")]) == EXIT_OK
        assert not plot.exists()
