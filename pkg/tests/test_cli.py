import json
import math

import pytest

from circletrace.cli import (
    ExperimentConfig,
    main,
    parse_int_expr,
    rule_from_obj,
    run_experiment,
    symbol_from_arg,
    symbol_from_obj,
)
from circletrace.errors import ParameterError, ResourceLimitError
from circletrace.report import Report, emit_report


def test_parse_int_expr():
    assert parse_int_expr(17) == 17
    assert parse_int_expr("17") == 17
    assert parse_int_expr("2**10") == 1024
    assert parse_int_expr("4^5") == 1024
    with pytest.raises(ParameterError):
        parse_int_expr("two")


def test_rule_parsing():
    assert rule_from_obj("constant:2.5").head == (2.5,)
    assert rule_from_obj("block-indicator:3").base == 3
    assert rule_from_obj("sqrt-log-cos").extension == "sqrt-log-cos"
    assert rule_from_obj({"head": [1, 2], "extension": "periodic"}).head == (1.0, 2.0)
    assert rule_from_obj([1.0, 2.0]).extension == "constant"
    with pytest.raises(ParameterError):
        rule_from_obj("nonsense:1")


def test_symbol_parsing(tmp_path):
    assert symbol_from_arg("z^3").coeffs == {3: 1.0 + 0j}
    inline = '{"modes": [[1, 1.0, 0.0], [-1, 0.5, 0.0]]}'
    assert symbol_from_arg(inline)[-1] == 0.5
    path = tmp_path / "sym.json"
    path.write_text(inline)
    assert symbol_from_arg(str(path))[1] == 1.0
    with pytest.raises(ParameterError):
        symbol_from_arg("/does/not/exist.json")
    w = symbol_from_obj(
        {"weierstrass": {"alpha": 0.5, "gamma": 2, "c": "constant:1", "cutoff": 8}}
    )
    assert sorted(k for k in w.coeffs if k > 0) == [1, 2, 4, 8]


def test_reports_are_deterministic():
    config = ExperimentConfig(
        "WeierstrassTrace", {"gamma": 2, "c": "constant:1", "N": "2**20"}
    )
    first = emit_report(run_experiment(config), "json")
    second = emit_report(run_experiment(config), "json")
    assert first == second
    parsed = json.loads(first)
    assert parsed["kind"] == "WeierstrassTrace"
    assert parsed["checks"][0]["abs_discrepancy"] < 1e-3


def test_float_formatting_has_17_significant_digits():
    report = Report(kind="HnCheck")
    report.add_scalar("third", 1.0 / 3.0)
    payload = emit_report(report, "json").decode()
    assert "0.33333333333333331" in payload


def test_csv_empty_report_is_header_only():
    assert emit_report(Report(kind="Winding"), "csv") == b"series,point,value_re,value_im\n"


def test_json_reparse_reproduces_report_body():
    report = Report(kind="HnCheck", inputs={"N": 8})
    report.add_scalar("value", 0.125, "none")
    report.add_sequence("seq", "expr", "none", [2, 3], [0.5, 0.25])
    parsed = json.loads(emit_report(report, "json"))
    assert parsed == report.body()


def test_csv_rows_per_sequence_index():
    report = Report(kind="FourierTrace")
    report.add_sequence("trace", "expr", "1/log(M)", [2, 3], [1.5, -2.5])
    lines = emit_report(report, "csv").decode().strip().split("\n")
    assert lines[0] == "series,point,value_re,value_im"
    assert lines[1] == "trace,2,1.5,0"
    assert lines[2] == "trace,3,-2.5,0"


def test_winding_experiment_report():
    config = ExperimentConfig("Winding", {"a": {"modes": [[1, 1.0, 0.0]]}, "N": 64})
    report = run_experiment(config)
    values = {s["expression"]: s["value"] for s in report.scalars}
    assert values["tr((2P-1)[P,a][P,a^-1])"] == pytest.approx(-1.0, abs=1e-8)
    assert values["nearest integer"] == -1


def test_kernel_check_experiment():
    config = ExperimentConfig(
        "KernelCheck",
        {
            "a": {"modes": [[1, 1.0, 0.0], [2, 0.3, 0.0]]},
            "b": {"modes": [[-1, 1.0, 0.0], [-2, 0.3, 0.0]]},
            "N": 16,
            "grid": 256,
        },
    )
    report = run_experiment(config)
    assert report.checks[0]["abs_discrepancy"] < 1e-6


def test_measurability_experiment_kinds():
    config = ExperimentConfig(
        "Measurability",
        {
            "N": "4**7",
            "entries": [
                {"label": "flat", "gamma": 2, "c": "constant:1"},
                {"label": "blocks", "gamma": 2, "c": "block-indicator:2"},
            ],
        },
    )
    report = run_experiment(config)
    verdicts = [s["verdict"]["kind"] for s in report.scalars]
    assert verdicts[0] == "convergent"
    assert verdicts[1] == "oscillating"


def test_singular_sweep_resource_cap():
    config = ExperimentConfig(
        "SingularValueSweep", {"alpha": 0.5, "gamma": 2, "N": 8192}
    )
    with pytest.raises(ResourceLimitError):
        run_experiment(config)
    small = ExperimentConfig(
        "SingularValueSweep",
        {"alpha": 0.5, "gamma": 2, "N": 128, "k_lo": 4, "k_hi": 32},
    )
    report = run_experiment(small)
    assert report.sequences[0]["name"] == "mu"


def test_nctorus_reports_are_deterministic_and_csv_capable():
    params = {
        "n": 2,
        "N": 12,
        "T": "grading-dirac",
        "theta": {"random": 3},
        "symbols": [{"pair": [1, 0]}, {"pair": [0, 1]}, {"pair": [1, 1]}],
    }
    config = ExperimentConfig("NcTorus", params)
    first = emit_report(run_experiment(config), "json")
    second = emit_report(run_experiment(config), "json")
    assert first == second
    csv_payload = emit_report(run_experiment(config), "csv").decode()
    assert csv_payload.startswith("series,point,value_re,value_im")
    assert any(line.split(",")[3] not in ("0", "") for line in csv_payload.splitlines()[1:])


def test_nctorus_experiment_reports_twist_control():
    config = ExperimentConfig(
        "NcTorus",
        {
            "n": 2,
            "N": 16,
            "T": "grading-dirac",
            "theta": {"random": 7},
            "symbols": [{"pair": [1, 0]}, {"pair": [0, 1]}, {"pair": [1, 1]}],
        },
    )
    report = run_experiment(config)
    names = [s["name"] for s in report.sequences]
    assert names == ["partial_sums", "partial_sums_zero_twist"]
    gap = report.scalars[0]["value"]
    assert gap >= 0.0


def test_invalid_kind_rejected():
    with pytest.raises(ParameterError):
        ExperimentConfig("Nonsense", {})


def test_alpha_other_than_half_rejected():
    config = ExperimentConfig("WeierstrassTrace", {"alpha": 0.4, "N": 1024})
    with pytest.raises(ParameterError):
        run_experiment(config)


def test_main_exit_codes(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["hn", "--m-max", "2", "--N", "8", "--out", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["kind"] == "HnCheck"
    assert main(["weierstrass-trace", "--alpha", "0.4", "--out", str(out)]) == 2
    assert main(["singular-sweep", "--N", "8192", "--out", str(out)]) == 3
    capsys.readouterr()


def test_main_weierstrass_csv(tmp_path):
    out = tmp_path / "trace.csv"
    code = main(
        [
            "weierstrass-trace",
            "--gamma",
            "2",
            "--N",
            "2**20",
            "--format",
            "csv",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "series,point,value_re,value_im"
    assert any(line.startswith("partial_sums,1048576,") for line in lines)


def test_main_winding_dump_operator(tmp_path):
    dump = tmp_path / "op.json"
    code = main(
        ["winding", "--a", "z^1", "--N", "4", "--dump-operator", str(dump), "--out", str(tmp_path / "w.json")]
    )
    assert code == 0
    obj = json.loads(dump.read_text())
    assert obj["row_basis"]["ordering"] == "full-by-modulus"
    assert len(obj["rows"]) == 9
    assert obj["rows"][0][2] == [1.0, 0.0]  # entry (mode 0, mode -1)


def test_run_batch_config(tmp_path):
    cfg = {
        "experiments": [
            {
                "kind": "HnCheck",
                "params": {"m_max": 2, "N": 8},
                "output": {"path": str(tmp_path / "a.json"), "format": "json"},
            },
            {
                "kind": "Winding",
                "params": {"a": {"power": 2}, "N": 32},
                "output": {"path": str(tmp_path / "b.csv"), "format": "csv"},
            },
        ]
    }
    cfg_path = tmp_path / "batch.json"
    cfg_path.write_text(json.dumps(cfg))
    assert main(["run", "--config", str(cfg_path)]) == 0
    assert json.loads((tmp_path / "a.json").read_text())["kind"] == "HnCheck"
    assert (tmp_path / "b.csv").read_text().startswith("series,")


def test_fourier_trace_cli(tmp_path):
    out = tmp_path / "ft.json"
    code = main(
        [
            "fourier-trace",
            "--a",
            '{"modes": [[4, 0.5, 0.0], [-4, 0.5, 0.0]]}',
            "--b",
            '{"modes": [[4, 0.5, 0.0], [-4, 0.5, 0.0]]}',
            "--N",
            "16",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    points = doc["sequences"][0]["points"]
    values = doc["sequences"][0]["values"]
    idx = points.index(8)
    assert values[idx][0] == pytest.approx(1.0 / math.log(8))
