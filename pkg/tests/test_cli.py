import json

import pytest

from docfootprint.cli import main


def _read_tree(root):
    return {p.name: p.read_bytes() for p in sorted(root.iterdir()) if p.is_file()}


def test_scenario_compare_markdown(tmp_path, capsys):
    out = tmp_path / "reports"
    assert main(["scenario-compare", "--out", str(out)]) == 0
    table = (out / "scenario_table.md").read_text()
    assert "| hitl | 7 -- 28 | 6.1 -- 16.2 | 1.8 -- 4.7 | 1.1 -- 4.9 | 0.000545 |" in table
    reductions = (out / "reduction_table.md").read_text()
    assert "| energy | 83 -- 92 | 72 -- 90 | +25 -- +66 |" in reductions
    stdout = capsys.readouterr().out
    assert "scenario_table.md" in stdout and "reduction_table.md" in stdout


def test_scenario_compare_json_bundle(tmp_path, config):
    out = tmp_path / "reports"
    assert main(["scenario-compare", "--out", str(out), "--format", "json"]) == 0
    bundle = json.loads((out / "bundle.json").read_text())
    assert bundle["metadata"]["config_hash"] == config.config_hash
    assert len(bundle["plot_data"]) == 9


def test_scenario_compare_csv(tmp_path):
    out = tmp_path / "reports"
    assert main(["scenario-compare", "--out", str(out), "--format", "csv"]) == 0
    lines = (out / "reduction_table.csv").read_text().strip().split("\n")
    assert len(lines) == 4


def test_scenario_compare_unknown_baseline(tmp_path, capsys):
    code = main(["scenario-compare", "--baseline", "robotic", "--out", str(tmp_path)])
    assert code == 2
    assert "unknown scenario" in capsys.readouterr().err


def test_scenario_compare_bad_config(tmp_path, capsys):
    bad = tmp_path / "config.json"
    bad.write_text("{}")
    code = main(["scenario-compare", "--config", str(bad), "--out", str(tmp_path)])
    assert code == 2
    assert "/profiles" in capsys.readouterr().err


def test_usecase_run_measured(tmp_path, fixtures_dir):
    out = tmp_path / "reports"
    assert main(["usecase-run", "--ledger", "bundled", "--out", str(out)]) == 0
    produced = (out / "extraction_output.json").read_bytes()
    reference = (fixtures_dir / "extraction_output.json").read_bytes()
    assert produced == reference
    report = json.loads((out / "usecase_report.json").read_text())
    assert report["ledger"]["total"] == 11_906
    assert report["footprint"]["energy_kwh"] == pytest.approx(0.35718, abs=1e-12)
    assert report["footprint"]["co2_g"] == pytest.approx(102.87, abs=0.01)
    assert report["verification"] == {"items": 15, "failures": []}


def test_usecase_run_estimated(tmp_path):
    out = tmp_path / "reports"
    assert main(["usecase-run", "--out", str(out)]) == 0
    report = json.loads((out / "usecase_report.json").read_text())
    assert report["ledger"]["source"] == "estimated"
    assert report["ledger"]["thinking"] == 0


def test_usecase_run_verification_failure(tmp_path, invoice_text, capsys):
    corrupted = invoice_text.replace(
        "ITEM 03 | Integration service | 40 | 85.00 | 3400.00 | EUR",
        "ITEM 03 | Integration service | 40 | 85.00 | 3402.00 | EUR")
    doc = tmp_path / "invoice.txt"
    doc.write_text(corrupted)
    code = main(["usecase-run", "--document", str(doc), "--ledger", "bundled",
                 "--out", str(tmp_path / "reports")])
    assert code == 3
    err = capsys.readouterr().err
    assert "ITEM 03" in err and "verification failed" in err


def test_usecase_run_parse_failure(tmp_path, capsys):
    doc = tmp_path / "invoice.txt"
    doc.write_text("ITEM 01 | Widget | 5 | 2.00 | EUR\n")
    code = main(["usecase-run", "--document", str(doc),
                 "--out", str(tmp_path / "reports")])
    assert code == 2
    assert "line 1" in capsys.readouterr().err


def test_usecase_run_missing_ledger_file(tmp_path, capsys):
    code = main(["usecase-run", "--ledger", str(tmp_path / "nope.json"),
                 "--out", str(tmp_path / "reports")])
    assert code == 2
    assert "ledger file not found" in capsys.readouterr().err


def test_thinking_delta_reference_output(capsys):
    assert main(["thinking-delta", "18000", "10000"]) == 0
    out = capsys.readouterr().out
    assert out == ("delta_energy_wh: 2.4\n"
                   "pct_increase: 55.6\n"
                   "delta_co2_g: 0.69\n"
                   "delta_water_ml: 0.43 -- 0.72\n")


def test_thinking_delta_zero(capsys):
    assert main(["thinking-delta", "18000", "0"]) == 0
    out = capsys.readouterr().out
    assert "delta_energy_wh: 0.0" in out
    assert "pct_increase: 0.0" in out


def test_thinking_delta_undefined_ratio(capsys):
    assert main(["thinking-delta", "0", "100"]) == 0
    assert "undefined" in capsys.readouterr().out


def test_thinking_delta_negative_rejected(capsys):
    assert main(["thinking-delta", "-1", "100"]) == 2
    assert "must be >= 0" in capsys.readouterr().err


def test_thinking_delta_unknown_profile(capsys):
    assert main(["thinking-delta", "1", "1", "--profile", "nope"]) == 2
    assert "unknown profile" in capsys.readouterr().err


def test_tokens_count(tmp_path, capsys, fixtures_dir):
    assert main(["tokens-count", str(fixtures_dir / "proforma_invoice.txt")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("569\t")


def test_tokens_count_missing_file(tmp_path, capsys):
    assert main(["tokens-count", str(tmp_path / "absent.txt")]) == 2
    assert "file not found" in capsys.readouterr().err


def test_report_emit_writes_everything(tmp_path):
    out = tmp_path / "reports"
    assert main(["report-emit", "--ledger", "bundled", "--out", str(out)]) == 0
    names = {p.name for p in out.iterdir()}
    assert names == {"scenario_table.md", "reduction_table.md", "token_table.md",
                     "plot_data.json", "bundle.json"}


def test_outputs_byte_identical_across_runs(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    for target in (first, second):
        assert main(["report-emit", "--ledger", "bundled", "--format", "json",
                     "--out", str(target)]) == 0
        assert main(["scenario-compare", "--out", str(target / "cmp")]) == 0
        assert main(["usecase-run", "--ledger", "bundled",
                     "--out", str(target / "uc")]) == 0
    assert _read_tree(first) == _read_tree(second)
    assert _read_tree(first / "cmp") == _read_tree(second / "cmp")
    assert _read_tree(first / "uc") == _read_tree(second / "uc")


def test_no_subcommand_shows_help(capsys):
    assert main([]) == 2
    assert "COMMAND" in capsys.readouterr().err
