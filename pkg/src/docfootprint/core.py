"""Core quantities and conversion formulas.

Everything in this module is a pure function over immutable values.
Range-valued quantities (operator counts, kWh per day, liters per day)
travel as closed intervals. Energy flows tokens -> Wh -> kWh and fans
out to grams of CO2 and liters of water through a FootprintProfile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

WH_PER_KWH = 1000.0


def _require_number(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{name}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name}: must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Interval:
    """Closed numeric range [lo, hi]. A point value has lo == hi."""

    lo: float
    hi: float

    def __post_init__(self):
        lo = _require_number(self.lo, "lo")
        hi = _require_number(self.hi, "hi")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo > hi:
            raise ValueError(f"invalid interval: lo {lo} > hi {hi}")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    def width(self) -> float:
        return self.hi - self.lo

    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2.0

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def as_tuple(self) -> tuple[float, float]:
        return (self.lo, self.hi)


def interval_add(a: Interval, b: Interval) -> Interval:
    """Endpoint-wise sum of two intervals."""
    return Interval(a.lo + b.lo, a.hi + b.hi)


def interval_scale(a: Interval, k: float) -> Interval:
    """Scale an interval by a non-negative factor.

    Every scaled quantity here (energy, emissions, water) is sign
    preserving, so negative factors are rejected rather than handled
    by endpoint swapping.
    """
    k = _require_number(k, "k")
    if k < 0:
        raise ValueError(f"scale factor must be >= 0, got {k}")
    return Interval(a.lo * k, a.hi * k)


@dataclass(frozen=True)
class EnergyRate:
    """Per-token inference energy, expressed in Wh per 1,000 tokens."""

    wh_per_kilo_token: float

    def __post_init__(self):
        rate = _require_number(self.wh_per_kilo_token, "wh_per_kilo_token")
        object.__setattr__(self, "wh_per_kilo_token", rate)
        if rate <= 0:
            raise ValueError(f"wh_per_kilo_token must be > 0, got {rate}")


@dataclass(frozen=True)
class FootprintProfile:
    """Physical conversion constants for one modeled deployment.

    pue is the facility-to-IT energy ratio (1.0 is ideal), wue the
    water draw per kWh, emission_factor the grid carbon intensity,
    and co2_per_prompt_g a published per-prompt emission shortcut.
    """

    name: str
    rate: EnergyRate
    pue: float
    wue: Interval
    emission_factor_g_per_kwh: float
    co2_per_prompt_g: float

    def __post_init__(self):
        pue = _require_number(self.pue, "pue")
        factor = _require_number(self.emission_factor_g_per_kwh, "emission_factor_g_per_kwh")
        per_prompt = _require_number(self.co2_per_prompt_g, "co2_per_prompt_g")
        object.__setattr__(self, "pue", pue)
        object.__setattr__(self, "emission_factor_g_per_kwh", factor)
        object.__setattr__(self, "co2_per_prompt_g", per_prompt)
        if pue < 1.0:
            raise ValueError(f"pue >= 1 required, got {pue}")
        if self.wue.lo <= 0:
            raise ValueError(f"wue.lo must be > 0, got {self.wue.lo}")
        if factor <= 0:
            raise ValueError(f"emission_factor_g_per_kwh must be > 0, got {factor}")
        if per_prompt < 0:
            raise ValueError(f"co2_per_prompt_g must be >= 0, got {per_prompt}")

    @classmethod
    def from_json_obj(cls, name: str, obj: dict) -> "FootprintProfile":
        """Build a profile from its JSON object form; unknown keys are rejected."""
        if not isinstance(obj, dict):
            raise ValueError(f"expected an object, got {type(obj).__name__}")
        required = {
            "rate_wh_per_ktok",
            "pue",
            "wue_l_per_kwh",
            "emission_factor_g_per_kwh",
            "co2_per_prompt_g",
        }
        for key in required:
            if key not in obj:
                raise ValueError(f"{key}: missing required key")
        unknown = sorted(set(obj) - required)
        if unknown:
            raise ValueError(f"{unknown[0]}: unknown key")
        wue = obj["wue_l_per_kwh"]
        if not (isinstance(wue, list) and len(wue) == 2):
            raise ValueError("wue_l_per_kwh: expected [lo, hi]")
        return cls(
            name=name,
            rate=EnergyRate(_require_number(obj["rate_wh_per_ktok"], "rate_wh_per_ktok")),
            pue=_require_number(obj["pue"], "pue"),
            wue=Interval(_require_number(wue[0], "wue_l_per_kwh[0]"),
                         _require_number(wue[1], "wue_l_per_kwh[1]")),
            emission_factor_g_per_kwh=_require_number(
                obj["emission_factor_g_per_kwh"], "emission_factor_g_per_kwh"),
            co2_per_prompt_g=_require_number(obj["co2_per_prompt_g"], "co2_per_prompt_g"),
        )

    def to_json_obj(self) -> dict:
        return {
            "rate_wh_per_ktok": self.rate.wh_per_kilo_token,
            "pue": self.pue,
            "wue_l_per_kwh": [self.wue.lo, self.wue.hi],
            "emission_factor_g_per_kwh": self.emission_factor_g_per_kwh,
            "co2_per_prompt_g": self.co2_per_prompt_g,
        }


def _check_non_negative(value: float | Interval, what: str) -> None:
    low = value.lo if isinstance(value, Interval) else value
    if low < 0:
        raise ValueError(f"{what} must be non-negative")


@dataclass(frozen=True)
class Energy:
    """An amount of energy; canonical unit is kilowatt-hours."""

    kwh: float | Interval

    def __post_init__(self):
        _check_non_negative(self.kwh, "energy")

    @classmethod
    def from_wh(cls, wh: float | Interval) -> "Energy":
        if isinstance(wh, Interval):
            return cls(Interval(wh.lo / WH_PER_KWH, wh.hi / WH_PER_KWH))
        return cls(wh / WH_PER_KWH)

    @property
    def wh(self) -> float | Interval:
        if isinstance(self.kwh, Interval):
            return interval_scale(self.kwh, WH_PER_KWH)
        return self.kwh * WH_PER_KWH


@dataclass(frozen=True)
class Carbon:
    """A mass of CO2; canonical unit is grams."""

    grams: float | Interval

    def __post_init__(self):
        _check_non_negative(self.grams, "carbon")

    @property
    def kg(self) -> float | Interval:
        if isinstance(self.grams, Interval):
            return Interval(self.grams.lo / 1000.0, self.grams.hi / 1000.0)
        return self.grams / 1000.0


@dataclass(frozen=True)
class Water:
    """A volume of water; canonical unit is liters."""

    liters: float | Interval

    def __post_init__(self):
        _check_non_negative(self.liters, "water")

    @property
    def ml(self) -> float | Interval:
        if isinstance(self.liters, Interval):
            return interval_scale(self.liters, 1000.0)
        return self.liters * 1000.0


def inference_energy(tokens: int, rate: EnergyRate) -> float:
    """IT-side inference energy in Wh for a token count.

    The evaluation order tokens * rate / 1000 keeps the reference
    workloads exact in binary floating point (18,000 tokens at
    0.24 Wh/kTok is exactly 4.32 Wh); do not refactor to a
    pre-divided rate.
    """
    if tokens < 0:
        raise ValueError(f"tokens must be >= 0, got {tokens}")
    return tokens * rate.wh_per_kilo_token / 1000.0


def apply_pue(it_energy: float | Interval, pue: float) -> float | Interval:
    """Expand IT-side energy to facility energy by the PUE factor."""
    pue = _require_number(pue, "pue")
    if pue < 1.0:
        raise ValueError(f"pue >= 1 required, got {pue}")
    if isinstance(it_energy, Interval):
        return interval_scale(it_energy, pue)
    if it_energy < 0:
        raise ValueError("energy must be >= 0")
    return it_energy * pue


def co2_from_energy(energy_kwh: float | Interval, factor_g_per_kwh: float) -> float | Interval:
    """Grid CO2 in grams for an energy amount in kWh; endpoint-wise on intervals."""
    factor = _require_number(factor_g_per_kwh, "factor_g_per_kwh")
    if factor <= 0:
        raise ValueError(f"emission factor must be > 0, got {factor}")
    if isinstance(energy_kwh, Interval):
        return interval_scale(energy_kwh, factor)
    if energy_kwh < 0:
        raise ValueError("energy must be >= 0")
    return energy_kwh * factor


def water_from_energy(energy_kwh: float | Interval, wue: Interval) -> Interval:
    """Water draw in liters for an energy amount in kWh.

    Point energies span the full WUE range. Interval energies use the
    endpoint-matched pairing [e.lo * wue.lo, e.hi * wue.hi]: the low
    consumption case is taken together with the low water intensity,
    and likewise for the high case.
    """
    if isinstance(energy_kwh, Interval):
        return Interval(energy_kwh.lo * wue.lo, energy_kwh.hi * wue.hi)
    if energy_kwh < 0:
        raise ValueError("energy must be >= 0")
    return Interval(energy_kwh * wue.lo, energy_kwh * wue.hi)


def prompt_co2(prompts: int, co2_per_prompt_g: float) -> float:
    """Total CO2 in grams for a prompt count under a per-prompt factor."""
    if prompts < 0:
        raise ValueError(f"prompts must be >= 0, got {prompts}")
    per_prompt = _require_number(co2_per_prompt_g, "co2_per_prompt_g")
    if per_prompt < 0:
        raise ValueError(f"co2_per_prompt_g must be >= 0, got {per_prompt}")
    return prompts * per_prompt


@dataclass(frozen=True)
class ThinkingDelta:
    """Marginal cost of extended reasoning tokens on top of a base run.

    pct_increase is None when the base token count is zero and the
    ratio is undefined; it is never reported as infinity.
    """

    delta_energy_wh: float
    pct_increase: float | None
    delta_co2_g: float
    delta_water_ml: Interval


def thinking_delta(base_tokens: int, thinking_tokens: int,
                   profile: FootprintProfile) -> ThinkingDelta:
    """Energy, CO2, and water added by thinking tokens.

    The percentage convention is token-ratio based
    (thinking / base * 100), which equals the energy ratio under a
    linear rate.
    """
    if base_tokens < 0 or thinking_tokens < 0:
        raise ValueError("token counts must be >= 0")
    delta_wh = inference_energy(thinking_tokens, profile.rate)
    delta_kwh = delta_wh / WH_PER_KWH
    if base_tokens == 0:
        pct = 0.0 if thinking_tokens == 0 else None
    else:
        pct = thinking_tokens / base_tokens * 100.0
    delta_co2 = co2_from_energy(delta_kwh, profile.emission_factor_g_per_kwh)
    water_l = water_from_energy(delta_kwh, profile.wue)
    return ThinkingDelta(
        delta_energy_wh=delta_wh,
        pct_increase=pct,
        delta_co2_g=delta_co2,
        delta_water_ml=interval_scale(water_l, 1000.0),
    )
