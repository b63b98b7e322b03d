"""Config ingestion and report emission.

All numeric presentation rounding lives here: internal values stay at
full precision until a table or plot series is rendered. Published
table digits are reproduced by rounding energy to one decimal first
and deriving the CO2 and water cells from those presented figures in
decimal arithmetic, exactly as the reference tables were produced.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from decimal import Decimal, ROUND_HALF_UP
from pathlib import Path

from .core import FootprintProfile, Interval
from .pipeline import ExtractionResult, ledger_shares
from .scenarios import (
    DailyFootprint,
    Scenario,
    ScenarioComparison,
    compare_scenarios,
    evaluate_scenario,
    increase_pct,
)

TABLES = ("scenario_table", "reduction_table", "token_table")
FORMATS = ("markdown", "csv", "json")

_TENTH = Decimal("0.1")
_ONE = Decimal("1")


class ConfigError(ValueError):
    """Configuration file problem; message starts with a JSON-pointer path."""


def _dec(x: float) -> Decimal:
    return Decimal(repr(x))


def present(x: float, ndigits: int = 1) -> Decimal:
    """Half-up presentation rounding of a float, returned as a Decimal."""
    quantum = _ONE.scaleb(-ndigits) if ndigits > 0 else _ONE
    return _dec(x).quantize(quantum, rounding=ROUND_HALF_UP)


def present_pct(x: float) -> int:
    """Integer percent presentation: half-up to one decimal, then to whole."""
    return int(present(x, 1).quantize(_ONE, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class Config:
    profiles: dict[str, FootprintProfile]
    scenario_profile: str
    usecase_profile: str
    scenarios: tuple[Scenario, ...]
    config_hash: str


def _load_json(path: Path, pointer: str) -> object:
    if not path.is_file():
        raise ConfigError(f"{pointer}: file not found: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{pointer}: invalid JSON: {exc}") from None


def load_config(path: str | Path) -> Config:
    """Load and validate a config file plus the scenario files it references.

    Unknown keys are rejected everywhere; error messages carry the
    JSON-pointer of the offending element.
    """
    path = Path(path)
    raw = _load_json(path, "/")
    if not isinstance(raw, dict):
        raise ConfigError("/: expected a JSON object")
    for key in ("profiles", "scenario_profile", "usecase_profile", "scenarios"):
        if key not in raw:
            raise ConfigError(f"/{key}: missing required key")
    unknown = sorted(set(raw) - {"profiles", "scenario_profile", "usecase_profile", "scenarios"})
    if unknown:
        raise ConfigError(f"/{unknown[0]}: unknown key")

    if not isinstance(raw["profiles"], dict) or not raw["profiles"]:
        raise ConfigError("/profiles: expected a non-empty object")
    profiles = {}
    for name, obj in raw["profiles"].items():
        try:
            profiles[name] = FootprintProfile.from_json_obj(name, obj)
        except ValueError as exc:
            raise ConfigError(f"/profiles/{name}: {exc}") from None

    for key in ("scenario_profile", "usecase_profile"):
        if raw[key] not in profiles:
            raise ConfigError(f"/{key}: references unknown profile {raw[key]!r}")

    if not isinstance(raw["scenarios"], list):
        raise ConfigError("/scenarios: expected a list of file paths")
    scenarios = []
    scenario_raws = []
    seen = set()
    for i, ref in enumerate(raw["scenarios"]):
        if not isinstance(ref, str):
            raise ConfigError(f"/scenarios/{i}: expected a file path string")
        scenario_path = (path.parent / ref).resolve()
        scenario_raw = _load_json(scenario_path, f"/scenarios/{i}")
        scenario_raws.append(scenario_raw)
        try:
            scenario = Scenario.from_json_obj(scenario_raw)
        except ValueError as exc:
            raise ConfigError(f"/scenarios/{i}: {exc}") from None
        if scenario.name in seen:
            raise ConfigError(f"/scenarios/{i}: duplicate scenario name {scenario.name!r}")
        seen.add(scenario.name)
        scenarios.append(scenario)

    digest = hashlib.sha256(json.dumps(
        {"config": raw, "scenario_files": scenario_raws},
        sort_keys=True, separators=(",", ":")).encode("utf-8")).hexdigest()

    return Config(
        profiles=profiles,
        scenario_profile=raw["scenario_profile"],
        usecase_profile=raw["usecase_profile"],
        scenarios=tuple(scenarios),
        config_hash=digest,
    )


@dataclass(frozen=True)
class ScenarioEntry:
    name: str
    footprint: DailyFootprint


@dataclass(frozen=True)
class ComparisonEntry:
    candidate: str
    comparison: ScenarioComparison


@dataclass(frozen=True)
class IncrementalEntry:
    base: str
    candidate: str
    energy_pct: Interval
    co2_pct: Interval
    water_pct: Interval


@dataclass(frozen=True)
class ReportMetadata:
    profile_name: str
    config_hash: str
    generated_at: str  # kept in memory only; never serialized into outputs


@dataclass(frozen=True)
class ReportBundle:
    entries: tuple[ScenarioEntry, ...]
    baseline: str
    comparisons: tuple[ComparisonEntry, ...]
    incrementals: tuple[IncrementalEntry, ...]
    profile: FootprintProfile
    metadata: ReportMetadata
    usecase: ExtractionResult | None = None


def build_bundle(config: Config, baseline: str,
                 usecase: ExtractionResult | None = None) -> ReportBundle:
    """Evaluate every scenario and compare the rest against the baseline.

    Consecutive non-baseline scenarios additionally get incremental
    cost records (each candidate against the one before it).
    """
    names = [s.name for s in config.scenarios]
    if baseline not in names:
        raise ValueError(f"unknown scenario {baseline!r}; choices: {', '.join(names)}")
    profile = config.profiles[config.scenario_profile]
    footprints = {s.name: evaluate_scenario(s, profile) for s in config.scenarios}

    comparisons = []
    candidates = [n for n in names if n != baseline]
    for name in candidates:
        comparisons.append(ComparisonEntry(
            candidate=name,
            comparison=compare_scenarios(footprints[baseline], footprints[name])))

    incrementals = []
    for prev, nxt in zip(candidates, candidates[1:]):
        base_fp, cand_fp = footprints[prev], footprints[nxt]
        incrementals.append(IncrementalEntry(
            base=prev,
            candidate=nxt,
            energy_pct=increase_pct(base_fp.energy_kwh, cand_fp.energy_kwh),
            co2_pct=increase_pct(base_fp.co2_kg, cand_fp.co2_kg),
            water_pct=increase_pct(base_fp.water_l, cand_fp.water_l),
        ))

    return ReportBundle(
        entries=tuple(ScenarioEntry(n, footprints[n]) for n in names),
        baseline=baseline,
        comparisons=tuple(comparisons),
        incrementals=tuple(incrementals),
        profile=profile,
        metadata=ReportMetadata(
            profile_name=config.scenario_profile,
            config_hash=config.config_hash,
            generated_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        ),
        usecase=usecase,
    )


@dataclass(frozen=True)
class _ScenarioRow:
    name: str
    operators: tuple[int, int]
    energy: tuple[Decimal, Decimal]
    co2: tuple[Decimal, Decimal]
    water: tuple[Decimal, Decimal]
    energy_per_doc: float


def _scenario_rows(bundle: ReportBundle) -> list[_ScenarioRow]:
    """Presented scenario rows.

    CO2 and water cells are derived from the one-decimal energy cell
    in decimal arithmetic rather than from the full-precision chain;
    this matches how the published tables were rounded (e.g. a 16.2
    energy bound gives 16.2 * 0.30 = 4.86 -> 4.9 L, where the exact
    chain would show 4.8).
    """
    ef = _dec(bundle.profile.emission_factor_g_per_kwh) / Decimal(1000)
    wue_lo = _dec(bundle.profile.wue.lo)
    wue_hi = _dec(bundle.profile.wue.hi)
    rows = []
    for entry in bundle.entries:
        fp = entry.footprint
        e_lo = present(fp.energy_kwh.lo, 1)
        e_hi = present(fp.energy_kwh.hi, 1)
        rows.append(_ScenarioRow(
            name=entry.name,
            operators=(int(fp.operators.lo), int(fp.operators.hi)),
            energy=(e_lo, e_hi),
            co2=((e_lo * ef).quantize(_TENTH, rounding=ROUND_HALF_UP),
                 (e_hi * ef).quantize(_TENTH, rounding=ROUND_HALF_UP)),
            water=((e_lo * wue_lo).quantize(_TENTH, rounding=ROUND_HALF_UP),
                   (e_hi * wue_hi).quantize(_TENTH, rounding=ROUND_HALF_UP)),
            energy_per_doc=fp.energy_per_doc_kwh,
        ))
    return rows


def _scenario_table_obj(bundle: ReportBundle) -> dict:
    rows = []
    for row in _scenario_rows(bundle):
        rows.append({
            "scenario": row.name,
            "operators": [row.operators[0], row.operators[1]],
            "energy_kwh_per_day": [float(row.energy[0]), float(row.energy[1])],
            "co2_kg_per_day": [float(row.co2[0]), float(row.co2[1])],
            "water_l_per_day": [float(row.water[0]), float(row.water[1])],
            "energy_per_doc_kwh": row.energy_per_doc,
        })
    return {"table": "scenario_table", "rows": rows}


def _reduction_rows(bundle: ReportBundle) -> list[dict]:
    metrics = (
        ("energy", "energy_reduction_pct", "energy_pct"),
        ("co2", "co2_reduction_pct", "co2_pct"),
        ("water", "water_reduction_pct", "water_pct"),
    )
    rows = []
    for metric, reduction_attr, increase_attr in metrics:
        reductions = {}
        for entry in bundle.comparisons:
            iv = getattr(entry.comparison, reduction_attr)
            reductions[entry.candidate] = (present_pct(iv.lo), present_pct(iv.hi))
        increases = {}
        for entry in bundle.incrementals:
            iv = getattr(entry, increase_attr)
            increases[f"{entry.candidate}_vs_{entry.base}"] = (
                present_pct(iv.lo), present_pct(iv.hi))
        rows.append({"metric": metric, "reductions": reductions, "increases": increases})
    return rows


def _reduction_table_obj(bundle: ReportBundle) -> dict:
    rows = []
    for row in _reduction_rows(bundle):
        rows.append({
            "metric": row["metric"],
            "reductions": {k: list(v) for k, v in row["reductions"].items()},
            "increases": {k: list(v) for k, v in row["increases"].items()},
        })
    return {"table": "reduction_table", "baseline": bundle.baseline, "rows": rows}


def _token_rows(result: ExtractionResult) -> tuple[list[dict], int, float]:
    shares = ledger_shares(result.ledger)
    rows = [{"component": name, "tokens": getattr(result.ledger, name),
             "share_pct": shares[name]}
            for name in ("document", "prompt", "output", "thinking")]
    total_share = float(sum(_dec(shares[name]) for name in shares))
    return rows, result.ledger.total(), total_share


def _token_table_obj(bundle: ReportBundle) -> dict:
    rows, total, total_share = _token_rows(bundle.usecase)
    return {
        "table": "token_table",
        "source": bundle.usecase.ledger.source,
        "rows": rows,
        "total_tokens": total,
        "total_share_pct": total_share,
    }


def _markdown_table(header: list[str], rows: list[list[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |",
             "| " + " | ".join("---" for _ in header) + " |"]
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def _csv_table(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _range_cell(lo, hi) -> str:
    return f"{lo} -- {hi}"


def emit_table(bundle: ReportBundle, which: str, fmt: str = "markdown") -> str:
    """Render one of the bundle's tables as markdown, CSV, or JSON text.

    All three formats encode the same presented numbers; emission is a
    pure function of the bundle.
    """
    if which not in TABLES:
        raise ValueError(f"unknown table {which!r}; choices: {', '.join(TABLES)}")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choices: {', '.join(FORMATS)}")
    if which in ("scenario_table", "reduction_table") and not bundle.entries:
        raise ValueError("no scenarios")
    if which == "token_table" and bundle.usecase is None:
        raise ValueError("no usecase data in bundle")

    if which == "scenario_table":
        rows = _scenario_rows(bundle)
        if fmt == "json":
            return json.dumps(_scenario_table_obj(bundle), indent=2) + "\n"
        if fmt == "csv":
            header = ["scenario", "operators_lo", "operators_hi",
                      "energy_kwh_lo", "energy_kwh_hi", "co2_kg_lo", "co2_kg_hi",
                      "water_l_lo", "water_l_hi", "energy_per_doc_kwh"]
            data = [[r.name, str(r.operators[0]), str(r.operators[1]),
                     str(r.energy[0]), str(r.energy[1]), str(r.co2[0]), str(r.co2[1]),
                     str(r.water[0]), str(r.water[1]), f"{r.energy_per_doc:.6f}"]
                    for r in rows]
            return _csv_table(header, data)
        header = ["Scenario", "Operators", "Energy (kWh/day)", "CO2 (kg/day)",
                  "Water (L/day)", "Energy per doc (kWh)"]
        data = [[r.name, _range_cell(r.operators[0], r.operators[1]),
                 _range_cell(r.energy[0], r.energy[1]), _range_cell(r.co2[0], r.co2[1]),
                 _range_cell(r.water[0], r.water[1]), f"{r.energy_per_doc:.6f}"]
                for r in rows]
        return _markdown_table(header, data)

    if which == "reduction_table":
        rows = _reduction_rows(bundle)
        if fmt == "json":
            return json.dumps(_reduction_table_obj(bundle), indent=2) + "\n"
        reduction_keys = [e.candidate for e in bundle.comparisons]
        increase_keys = [f"{e.candidate}_vs_{e.base}" for e in bundle.incrementals]
        if fmt == "csv":
            header = ["metric"]
            for key in reduction_keys:
                header += [f"{key}_vs_{bundle.baseline}_reduction_lo",
                           f"{key}_vs_{bundle.baseline}_reduction_hi"]
            for key in increase_keys:
                header += [f"{key}_increase_lo", f"{key}_increase_hi"]
            data = []
            for row in rows:
                cells = [row["metric"]]
                for key in reduction_keys:
                    cells += [str(v) for v in row["reductions"][key]]
                for key in increase_keys:
                    cells += [str(v) for v in row["increases"][key]]
                data.append(cells)
            return _csv_table(header, data)
        header = ["Metric"]
        header += [f"{key} vs {bundle.baseline} (reduction %)" for key in reduction_keys]
        header += [f"{key.replace('_vs_', ' vs ')} (increase %)" for key in increase_keys]
        data = []
        for row in rows:
            cells = [row["metric"]]
            for key in reduction_keys:
                lo, hi = row["reductions"][key]
                cells.append(_range_cell(lo, hi))
            for key in increase_keys:
                lo, hi = row["increases"][key]
                cells.append(f"+{lo} -- +{hi}" if lo >= 0 else _range_cell(lo, hi))
            data.append(cells)
        return _markdown_table(header, data)

    # token_table
    rows, total, total_share = _token_rows(bundle.usecase)
    if fmt == "json":
        return json.dumps(_token_table_obj(bundle), indent=2) + "\n"
    if fmt == "csv":
        header = ["component", "tokens", "share_pct"]
        data = [[r["component"], str(r["tokens"]), str(r["share_pct"])] for r in rows]
        data.append(["total", str(total), str(total_share)])
        return _csv_table(header, data)
    header = ["Component", "Tokens", "Share (%)"]
    data = [[r["component"], f"{r['tokens']:,}", str(r["share_pct"])] for r in rows]
    data.append(["TOTAL", f"{total:,}", str(total_share)])
    return _markdown_table(header, data)


def plot_data_obj(bundle: ReportBundle) -> list[dict]:
    """Series records (scenario x metric) carrying the presented bounds."""
    if not bundle.entries:
        raise ValueError("no scenarios")
    records = []
    for row in _scenario_rows(bundle):
        for metric, (lo, hi) in (
            ("energy_kwh_per_day", row.energy),
            ("co2_kg_per_day", row.co2),
            ("water_l_per_day", row.water),
        ):
            records.append({
                "scenario": row.name,
                "metric": metric,
                "lo": float(lo),
                "hi": float(hi),
                "mid": float((lo + hi) / 2),
            })
    return records


def emit_plot_data(bundle: ReportBundle) -> str:
    return json.dumps(plot_data_obj(bundle), indent=2) + "\n"


def emit_bundle_json(bundle: ReportBundle) -> str:
    """Machine-readable bundle: metadata plus every table it can carry."""
    obj = {
        "metadata": {
            "profile": bundle.metadata.profile_name,
            "config_hash": bundle.metadata.config_hash,
        },
        "scenario_table": _scenario_table_obj(bundle),
        "reduction_table": _reduction_table_obj(bundle),
        "plot_data": plot_data_obj(bundle),
    }
    if bundle.usecase is not None:
        obj["token_table"] = _token_table_obj(bundle)
    return json.dumps(obj, indent=2) + "\n"
