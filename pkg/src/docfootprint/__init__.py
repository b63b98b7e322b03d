"""Footprint modeling for document-processing workflows.

Converts token counts, workforce parameters, and data-center
efficiency factors into energy, CO2, and water footprints for manual,
AI-assisted, and agentic scenarios, and ships a deterministic invoice
extraction pipeline with full token and energy accounting.
"""

from .core import (
    Carbon,
    Energy,
    EnergyRate,
    FootprintProfile,
    Interval,
    ThinkingDelta,
    Water,
    apply_pue,
    co2_from_energy,
    inference_energy,
    interval_add,
    interval_scale,
    prompt_co2,
    thinking_delta,
    water_from_energy,
)
from .pipeline import (
    ExtractionResult,
    Footprint,
    InvoiceParseError,
    LineItem,
    TokenLedger,
    VerificationRecord,
    count_tokens,
    footprint_from_ledger,
    ledger_shares,
    normalize_energy,
    parse_invoice,
    render_output_json,
    run_pipeline,
    verify_items,
)
from .reference import DEVIATIONS, Deviation, get_deviation
from .reporting import (
    Config,
    ConfigError,
    ReportBundle,
    build_bundle,
    emit_bundle_json,
    emit_plot_data,
    emit_table,
    load_config,
)
from .scenarios import (
    DailyFootprint,
    PipelineStage,
    Scenario,
    ScenarioComparison,
    WorkforceParams,
    cloud_energy_per_doc,
    compare_scenarios,
    docs_per_operator_day,
    evaluate_scenario,
    incremental_cost,
    operators_required,
)

__version__ = "0.1.0"

__all__ = [
    "Carbon", "Config", "ConfigError", "DEVIATIONS", "DailyFootprint",
    "Deviation", "Energy", "EnergyRate", "ExtractionResult", "Footprint",
    "FootprintProfile", "Interval", "InvoiceParseError", "LineItem",
    "PipelineStage", "ReportBundle", "Scenario", "ScenarioComparison",
    "ThinkingDelta", "TokenLedger", "VerificationRecord", "Water",
    "WorkforceParams", "apply_pue", "build_bundle", "cloud_energy_per_doc",
    "co2_from_energy", "compare_scenarios", "count_tokens",
    "docs_per_operator_day", "emit_bundle_json", "emit_plot_data",
    "emit_table", "evaluate_scenario", "footprint_from_ledger",
    "get_deviation", "incremental_cost", "inference_energy", "interval_add",
    "interval_scale", "ledger_shares", "load_config", "normalize_energy",
    "operators_required", "parse_invoice", "prompt_co2",
    "render_output_json", "run_pipeline", "thinking_delta", "verify_items",
    "water_from_energy",
]
