"""Workforce scenarios and daily footprint evaluation.

A Scenario bundles workforce parameters, per-document pipeline stage
energies, and a daily volume. Evaluating it against a FootprintProfile
yields a DailyFootprint; two footprints can then be compared for
reduction percentages or incremental cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal

from .core import (
    FootprintProfile,
    Interval,
    _require_number,
    interval_add,
    interval_scale,
    water_from_energy,
)

SECONDS_PER_HOUR = 3600.0


@dataclass(frozen=True)
class WorkforceParams:
    """Operator workday model: an 8-hour shift with 7 productive hours,
    a capacity buffer on top of raw demand, and a flat laptop draw per
    operator-day."""

    per_doc_time_s: Interval
    shift_hours: float = 8.0
    productive_hours: float = 7.0
    buffer: float = 1.15
    laptop_kwh_per_day: float = 0.48

    def __post_init__(self):
        for name in ("shift_hours", "productive_hours", "buffer", "laptop_kwh_per_day"):
            object.__setattr__(self, name, _require_number(getattr(self, name), name))
        if self.shift_hours <= 0:
            raise ValueError("shift_hours must be > 0")
        if self.productive_hours <= 0 or self.productive_hours > self.shift_hours:
            raise ValueError("productive_hours must be in (0, shift_hours]")
        if self.buffer < 1.0:
            raise ValueError(f"buffer >= 1 required, got {self.buffer}")
        if self.per_doc_time_s.lo <= 0:
            raise ValueError("per_doc_time_s.lo must be > 0")
        if self.laptop_kwh_per_day < 0:
            raise ValueError("laptop_kwh_per_day must be >= 0")

    @classmethod
    def from_json_obj(cls, obj: dict) -> "WorkforceParams":
        if not isinstance(obj, dict):
            raise ValueError(f"expected an object, got {type(obj).__name__}")
        allowed = {"shift_hours", "productive_hours", "buffer",
                   "per_doc_time_s", "laptop_kwh_per_day"}
        unknown = sorted(set(obj) - allowed)
        if unknown:
            raise ValueError(f"{unknown[0]}: unknown key")
        if "per_doc_time_s" not in obj:
            raise ValueError("per_doc_time_s: missing required key")
        span = obj["per_doc_time_s"]
        if not (isinstance(span, list) and len(span) == 2):
            raise ValueError("per_doc_time_s: expected [lo, hi]")
        kwargs = {"per_doc_time_s": Interval(
            _require_number(span[0], "per_doc_time_s[0]"),
            _require_number(span[1], "per_doc_time_s[1]"))}
        for name in ("shift_hours", "productive_hours", "buffer", "laptop_kwh_per_day"):
            if name in obj:
                kwargs[name] = _require_number(obj[name], name)
        return cls(**kwargs)

    def to_json_obj(self) -> dict:
        return {
            "shift_hours": self.shift_hours,
            "productive_hours": self.productive_hours,
            "buffer": self.buffer,
            "per_doc_time_s": [self.per_doc_time_s.lo, self.per_doc_time_s.hi],
            "laptop_kwh_per_day": self.laptop_kwh_per_day,
        }


@dataclass(frozen=True)
class PipelineStage:
    """One per-document processing stage and its facility-side energy."""

    name: str
    energy_wh_per_doc: float

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValueError("stage name must be a non-empty string")
        energy = _require_number(self.energy_wh_per_doc, "energy_wh_per_doc")
        object.__setattr__(self, "energy_wh_per_doc", energy)
        if energy < 0:
            raise ValueError("energy_wh_per_doc must be >= 0")


@dataclass(frozen=True)
class Scenario:
    """A named workload configuration evaluating to a DailyFootprint."""

    name: str
    daily_volume: int
    workforce: WorkforceParams
    stages: tuple[PipelineStage, ...] = ()
    overhead_kwh_per_day: float = 0.0
    operators_override: Interval | None = None

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValueError("scenario name must be a non-empty string")
        if isinstance(self.daily_volume, bool) or not isinstance(self.daily_volume, int):
            raise ValueError("daily_volume must be an integer")
        if self.daily_volume < 0:
            raise ValueError("daily_volume must be >= 0")
        object.__setattr__(self, "stages", tuple(self.stages))
        overhead = _require_number(self.overhead_kwh_per_day, "overhead_kwh_per_day")
        object.__setattr__(self, "overhead_kwh_per_day", overhead)
        if overhead < 0:
            raise ValueError("overhead_kwh_per_day must be >= 0")
        ov = self.operators_override
        if ov is not None:
            if ov.lo < 0 or ov.lo != int(ov.lo) or ov.hi != int(ov.hi):
                raise ValueError("operators_override endpoints must be integers >= 0")

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Scenario":
        if not isinstance(obj, dict):
            raise ValueError(f"expected an object, got {type(obj).__name__}")
        required = {"name", "daily_volume", "workforce", "stages",
                    "overhead_kwh_per_day", "operators_override"}
        for key in ("name", "daily_volume", "workforce"):
            if key not in obj:
                raise ValueError(f"{key}: missing required key")
        unknown = sorted(set(obj) - required)
        if unknown:
            raise ValueError(f"{unknown[0]}: unknown key")
        stages = []
        for i, raw in enumerate(obj.get("stages", [])):
            if not isinstance(raw, dict) or set(raw) != {"name", "energy_wh_per_doc"}:
                raise ValueError(f"stages[{i}]: expected {{name, energy_wh_per_doc}}")
            stages.append(PipelineStage(raw["name"], _require_number(
                raw["energy_wh_per_doc"], f"stages[{i}].energy_wh_per_doc")))
        override = obj.get("operators_override")
        if override is not None:
            if not (isinstance(override, list) and len(override) == 2):
                raise ValueError("operators_override: expected [lo, hi] or null")
            override = Interval(_require_number(override[0], "operators_override[0]"),
                                _require_number(override[1], "operators_override[1]"))
        return cls(
            name=obj["name"],
            daily_volume=obj["daily_volume"],
            workforce=WorkforceParams.from_json_obj(obj["workforce"]),
            stages=tuple(stages),
            overhead_kwh_per_day=_require_number(
                obj.get("overhead_kwh_per_day", 0.0), "overhead_kwh_per_day"),
            operators_override=override,
        )

    def to_json_obj(self) -> dict:
        override = self.operators_override
        return {
            "name": self.name,
            "daily_volume": self.daily_volume,
            "workforce": self.workforce.to_json_obj(),
            "stages": [{"name": s.name, "energy_wh_per_doc": s.energy_wh_per_doc}
                       for s in self.stages],
            "overhead_kwh_per_day": self.overhead_kwh_per_day,
            "operators_override": None if override is None else [override.lo, override.hi],
        }


@dataclass(frozen=True)
class DailyFootprint:
    operators: Interval
    energy_kwh: Interval
    co2_kg: Interval
    water_l: Interval
    energy_per_doc_kwh: float

    def __post_init__(self):
        for name in ("operators", "energy_kwh", "co2_kg", "water_l"):
            if getattr(self, name).lo < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.energy_per_doc_kwh < 0:
            raise ValueError("energy_per_doc_kwh must be >= 0")


def docs_per_operator_day(w: WorkforceParams) -> Interval:
    """Documents one operator clears per day, floored to whole documents."""
    productive_seconds = w.productive_hours * SECONDS_PER_HOUR
    lo = math.floor(productive_seconds / w.per_doc_time_s.hi)
    hi = math.floor(productive_seconds / w.per_doc_time_s.lo)
    return Interval(float(lo), float(hi))


def operators_required(volume: int, throughput: Interval, buffer: float) -> Interval:
    """Operator headcount needed for a daily volume, with capacity buffer.

    The fast-throughput endpoint needs the fewest operators, so the
    result pairs volume/throughput.hi with the low bound.
    """
    if volume < 0:
        raise ValueError("volume must be >= 0")
    buffer = _require_number(buffer, "buffer")
    if buffer < 1.0:
        raise ValueError(f"buffer >= 1 required, got {buffer}")
    if throughput.lo < 1:
        raise ValueError("throughput.lo must be >= 1 (zero throughput)")
    lo = math.ceil(volume / throughput.hi * buffer)
    hi = math.ceil(volume / throughput.lo * buffer)
    return Interval(float(lo), float(hi))


def cloud_energy_per_doc(stages: list[PipelineStage] | tuple[PipelineStage, ...],
                         pue: float = 1.0) -> float:
    """Summed per-document stage energy, in kWh.

    Stage energies are facility-side figures and are summed as given;
    pue is validated for interface parity but intentionally not applied
    (a stage defined from an IT-side number should be expanded with
    apply_pue before it is put in a stage list). Summation is done in
    decimal so that stage order can never perturb the result.
    """
    pue = _require_number(pue, "pue")
    if pue < 1.0:
        raise ValueError(f"pue >= 1 required, got {pue}")
    if not stages:
        return 0.0
    total_wh = sum(Decimal(repr(s.energy_wh_per_doc)) for s in stages)
    return float(total_wh / Decimal(1000))


def evaluate_scenario(s: Scenario, profile: FootprintProfile) -> DailyFootprint:
    """Daily energy/CO2/water footprint of a scenario under a profile.

    energy = operators * laptop_kwh + cloud_per_doc * volume + overhead,
    with the operator interval either taken from the override or derived
    from the workforce throughput formula.
    """
    if s.operators_override is not None:
        operators = s.operators_override
    else:
        operators = operators_required(
            s.daily_volume, docs_per_operator_day(s.workforce), s.workforce.buffer)
    laptop = interval_scale(operators, s.workforce.laptop_kwh_per_day)
    per_doc_kwh = cloud_energy_per_doc(s.stages, profile.pue)
    cloud = per_doc_kwh * s.daily_volume
    energy = interval_add(
        interval_add(laptop, Interval.point(cloud)),
        Interval.point(s.overhead_kwh_per_day))
    co2_kg = interval_scale(energy, profile.emission_factor_g_per_kwh / 1000.0)
    water_l = water_from_energy(energy, profile.wue)
    return DailyFootprint(
        operators=operators,
        energy_kwh=energy,
        co2_kg=co2_kg,
        water_l=water_l,
        energy_per_doc_kwh=per_doc_kwh,
    )


@dataclass(frozen=True)
class ScenarioComparison:
    energy_reduction_pct: Interval
    co2_reduction_pct: Interval
    water_reduction_pct: Interval


def _reduction_pct(baseline: Interval, candidate: Interval) -> Interval:
    if baseline.lo <= 0 or baseline.hi <= 0:
        raise ValueError("zero baseline")
    # Endpoint-matched ratios; the pair need not arrive ordered, so sort.
    at_hi = (1.0 - candidate.hi / baseline.hi) * 100.0
    at_lo = (1.0 - candidate.lo / baseline.lo) * 100.0
    return Interval(min(at_hi, at_lo), max(at_hi, at_lo))


def compare_scenarios(baseline: DailyFootprint, candidate: DailyFootprint) -> ScenarioComparison:
    """Percentage reductions of a candidate footprint against a baseline."""
    return ScenarioComparison(
        energy_reduction_pct=_reduction_pct(baseline.energy_kwh, candidate.energy_kwh),
        co2_reduction_pct=_reduction_pct(baseline.co2_kg, candidate.co2_kg),
        water_reduction_pct=_reduction_pct(baseline.water_l, candidate.water_l),
    )


def incremental_cost(base: DailyFootprint, candidate: DailyFootprint) -> Interval:
    """Energy cost increase of candidate over base, in percent (endpoint-matched)."""
    if base.energy_kwh.lo <= 0 or base.energy_kwh.hi <= 0:
        raise ValueError("zero baseline")
    at_hi = (candidate.energy_kwh.hi / base.energy_kwh.hi - 1.0) * 100.0
    at_lo = (candidate.energy_kwh.lo / base.energy_kwh.lo - 1.0) * 100.0
    return Interval(min(at_hi, at_lo), max(at_hi, at_lo))


def increase_pct(base: Interval, candidate: Interval) -> Interval:
    """Endpoint-matched percentage increase of one interval over another."""
    if base.lo <= 0 or base.hi <= 0:
        raise ValueError("zero baseline")
    at_hi = (candidate.hi / base.hi - 1.0) * 100.0
    at_lo = (candidate.lo / base.lo - 1.0) * 100.0
    return Interval(min(at_hi, at_lo), max(at_hi, at_lo))
