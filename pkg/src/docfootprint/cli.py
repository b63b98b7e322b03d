"""Command line interface.

Subcommands map onto the three modeled experiments: scenario-compare
(workforce footprints and reductions), usecase-run (the extraction
pipeline with token accounting), and thinking-delta (marginal cost of
reasoning tokens), plus tokens-count and report-emit utilities.

Exit codes are a stable contract: 0 success, 2 input error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import json
import sys
from pathlib import Path

from .core import thinking_delta
from .pipeline import (
    COMPLEXITY_NORMALIZATION_FACTOR,
    THINKING_NORMALIZATION_FACTOR,
    InvoiceParseError,
    TokenLedger,
    count_tokens,
    normalize_energy,
    ledger_shares,
    render_output_json,
    run_pipeline,
)
from .reporting import (
    ConfigError,
    build_bundle,
    emit_bundle_json,
    emit_plot_data,
    emit_table,
    load_config,
    present,
)

DATA_DIR = Path(__file__).resolve().parent / "data"
DEFAULT_CONFIG = DATA_DIR / "config.json"
FIXTURES_DIR = DATA_DIR / "fixtures"

_TABLE_EXT = {"markdown": "md", "csv": "csv", "json": "json"}


def _write(out_dir: Path, filename: str, text: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    target = out_dir / filename
    target.write_text(text, encoding="utf-8")
    print(f"wrote {target}")


def _resolve_ledger(value: str | None) -> TokenLedger | None:
    if value is None:
        return None
    path = FIXTURES_DIR / "ledger.json" if value == "bundled" else Path(value)
    if not path.is_file():
        raise ValueError(f"ledger file not found: {path}")
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
        return TokenLedger.from_json_obj(obj)
    except (json.JSONDecodeError, ValueError) as exc:
        raise ValueError(f"bad ledger file {path}: {exc}") from None


def _profile_from(config, name: str | None, default_binding: str):
    chosen = name if name is not None else default_binding
    if chosen not in config.profiles:
        raise ValueError(
            f"unknown profile {chosen!r}; choices: {', '.join(sorted(config.profiles))}")
    return config.profiles[chosen]


def _cmd_scenario_compare(args) -> int:
    config = load_config(args.config)
    bundle = build_bundle(config, args.baseline)
    out_dir = Path(args.out)
    if args.format == "json":
        _write(out_dir, "bundle.json", emit_bundle_json(bundle))
    else:
        ext = _TABLE_EXT[args.format]
        _write(out_dir, f"scenario_table.{ext}", emit_table(bundle, "scenario_table", args.format))
        _write(out_dir, f"reduction_table.{ext}", emit_table(bundle, "reduction_table", args.format))
    return 0


def _run_usecase(args):
    config = load_config(args.config)
    profile = _profile_from(config, args.profile, config.usecase_profile)
    document = Path(args.document).read_text(encoding="utf-8")
    prompt = Path(args.prompt).read_text(encoding="utf-8")
    ledger = _resolve_ledger(args.ledger)
    result = run_pipeline(document, prompt, profile, ledger_override=ledger)
    return config, profile, result


def _usecase_report_obj(profile, result) -> dict:
    energy_kwh = result.footprint.energy.kwh
    water = result.footprint.water.liters
    failures = [r.item_id for r in result.verification if not r.ok]
    return {
        "profile": profile.name,
        "ledger": {**result.ledger.to_json_obj(), "total": result.ledger.total()},
        "shares_pct": ledger_shares(result.ledger),
        "thinking_to_output_ratio": result.ledger.thinking_to_output_ratio(),
        "footprint": {
            "energy_kwh": energy_kwh,
            "co2_g": result.footprint.co2.grams,
            "water_l": [water.lo, water.hi],
        },
        "normalized_energy_kwh": normalize_energy(
            energy_kwh, THINKING_NORMALIZATION_FACTOR, COMPLEXITY_NORMALIZATION_FACTOR),
        "normalization_factors": {
            "thinking": THINKING_NORMALIZATION_FACTOR,
            "complexity": COMPLEXITY_NORMALIZATION_FACTOR,
        },
        "verification": {"items": len(result.verification), "failures": failures},
    }


def _cmd_usecase_run(args) -> int:
    config, profile, result = _run_usecase(args)
    out_dir = Path(args.out)
    _write(out_dir, "extraction_output.json", render_output_json(result.items))
    _write(out_dir, "usecase_report.json",
           json.dumps(_usecase_report_obj(profile, result), indent=2) + "\n")
    failures = [r for r in result.verification if not r.ok]
    if failures:
        for record in failures:
            print(f"verification failed: {record.item_id} (delta {record.delta})",
                  file=sys.stderr)
        return 3
    return 0


def _cmd_thinking_delta(args) -> int:
    if args.base_tokens < 0 or args.thinking_tokens < 0:
        raise ValueError("token counts must be >= 0")
    config = load_config(args.config)
    profile = _profile_from(config, args.profile, config.scenario_profile)
    delta = thinking_delta(args.base_tokens, args.thinking_tokens, profile)
    pct = ("undefined (base tokens = 0)" if delta.pct_increase is None
           else str(present(delta.pct_increase, 1)))
    print(f"delta_energy_wh: {delta.delta_energy_wh}")
    print(f"pct_increase: {pct}")
    print(f"delta_co2_g: {present(delta.delta_co2_g, 2)}")
    print(f"delta_water_ml: {present(delta.delta_water_ml.lo, 2)}"
          f" -- {present(delta.delta_water_ml.hi, 2)}")
    return 0


def _cmd_tokens_count(args) -> int:
    for name in args.files:
        path = Path(name)
        if not path.is_file():
            raise ValueError(f"file not found: {path}")
        print(f"{count_tokens(path.read_text(encoding='utf-8'))}\t{name}")
    return 0


def _cmd_report_emit(args) -> int:
    config, profile, result = _run_usecase(args)
    bundle = build_bundle(config, args.baseline, usecase=result)
    out_dir = Path(args.out)
    ext = _TABLE_EXT[args.format]
    for table in ("scenario_table", "reduction_table", "token_table"):
        _write(out_dir, f"{table}.{ext}", emit_table(bundle, table, args.format))
    _write(out_dir, "plot_data.json", emit_plot_data(bundle))
    _write(out_dir, "bundle.json", emit_bundle_json(bundle))
    return 0


def _add_common_config(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=str(DEFAULT_CONFIG),
                        help="config file (default: bundled reproduction config)")


def _add_usecase_inputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--document", default=str(FIXTURES_DIR / "proforma_invoice.txt"),
                        help="invoice document (default: bundled fixture)")
    parser.add_argument("--prompt", default=str(FIXTURES_DIR / "extraction_prompt.txt"),
                        help="extraction prompt (default: bundled fixture)")
    parser.add_argument("--ledger", default=None,
                        help="measured token ledger JSON; 'bundled' selects the "
                             "packaged ledger; omit to estimate counts")
    parser.add_argument("--profile", default=None,
                        help="profile name (default: the config's usecase binding)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="docfootprint",
        description="Energy, CO2, and water footprint modeling for "
                    "document-processing workflows.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("scenario-compare",
                       help="evaluate scenarios and compare against a baseline")
    _add_common_config(p)
    p.add_argument("--baseline", default="manual", help="baseline scenario name")
    p.add_argument("--out", default="reports", help="output directory")
    p.add_argument("--format", default="markdown", choices=["markdown", "csv", "json"])
    p.set_defaults(func=_cmd_scenario_compare)

    p = sub.add_parser("usecase-run",
                       help="run the extraction pipeline and report its footprint")
    _add_common_config(p)
    _add_usecase_inputs(p)
    p.add_argument("--out", default="reports", help="output directory")
    p.set_defaults(func=_cmd_usecase_run)

    p = sub.add_parser("thinking-delta",
                       help="marginal energy/CO2/water of reasoning tokens")
    p.add_argument("base_tokens", type=int)
    p.add_argument("thinking_tokens", type=int)
    _add_common_config(p)
    p.add_argument("--profile", default=None,
                   help="profile name (default: the config's scenario binding)")
    p.set_defaults(func=_cmd_thinking_delta)

    p = sub.add_parser("tokens-count", help="estimate token counts for text files")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.set_defaults(func=_cmd_tokens_count)

    p = sub.add_parser("report-emit", help="emit every table plus plot data")
    _add_common_config(p)
    _add_usecase_inputs(p)
    p.add_argument("--baseline", default="manual", help="baseline scenario name")
    p.add_argument("--out", default="reports", help="output directory")
    p.add_argument("--format", default="markdown", choices=["markdown", "csv", "json"])
    p.set_defaults(func=_cmd_report_emit)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help(sys.stderr)
        return 2
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ConfigError, InvoiceParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
