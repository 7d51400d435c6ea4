"""Scenario configuration: parsing, validation, derived scales, hashing.

A scenario is one JSON document holding the crystal, cavity, pump, and
frequency blocks plus optional output preferences::

    {
      "crystal": {
        "length_l": 0.01, "chi": 2e-12, "cross_section_A": 1e-8,
        "dispersion_signal": {"kind": "constant", "parameters": [1.8],
                               "validity_range": [1e14, 1e16]},
        "dispersion_idler": {...}, "dispersion_pump": {...}
      },
      "cavity": {"resonator_length_Lr": 0.05, "loss_rate_gamma": 8.12e8},
      "pump": {"field_amplitude_EP": 1e-16},
      "frequencies": {"omega_P": 3.5e15, "omega_S": 2.0e15},
      "output": {"directory": "out", "format": "csv",
                  "normalization": "peak_unity"}
    }

``frequencies`` either fixes the split explicitly (``omega_S`` and/or
``omega_I``) or supplies a ``bracket`` for the phase-matching solver; the two
styles are mutually exclusive.  Every physical field enters the scenario
hash; output preferences do not.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .biphoton import PumpParams, _rate_prefactor
from .cavity import (
    DEFAULT_REGIME_THRESHOLD,
    CavityParams,
    DerivedScales,
    RegimeReport,
    check_regime,
    free_spectral_range,
    round_trip_time,
)
from .constants import TWO_PI
from .dispersion import (
    CrystalParams,
    DispersionKind,
    DispersionModel,
    FrequencyTriple,
    phase_match,
    transit_time_diff,
)
from .errors import ScenarioParseError, ScenarioValidationError
from .trace import Normalization


@dataclass(frozen=True)
class ScenarioConfig:
    crystal: CrystalParams
    cavity: CavityParams
    pump: PumpParams
    freqs: FrequencyTriple
    scales: DerivedScales
    regime: RegimeReport
    scenario_hash: str
    output_directory: str
    output_format: str
    normalization: Normalization
    regime_threshold: float


def derive_scales(
    crystal: CrystalParams,
    cavity: CavityParams,
    pump: PumpParams,
    freqs: FrequencyTriple,
    regime_threshold: float = DEFAULT_REGIME_THRESHOLD,
) -> DerivedScales:
    """Assemble the scale table: tau0, T, fsr, gamma, kappa, regime verdict."""
    tau0 = transit_time_diff(crystal, freqs)
    T = round_trip_time(crystal, cavity, freqs)
    fsr = free_spectral_range(T)
    gamma = cavity.loss_rate_gamma
    if tau0 == 0.0:
        kappa = math.inf
    else:
        kappa = _rate_prefactor(crystal, pump, freqs) * TWO_PI / abs(tau0)
    ratios = (kappa / gamma, gamma / fsr, fsr * abs(tau0))
    regime_ok = all(r <= regime_threshold for r in ratios)
    return DerivedScales(tau0, T, fsr, gamma, kappa, regime_ok, ratios)


def _physical_fingerprint(
    crystal: CrystalParams,
    cavity: CavityParams,
    pump: PumpParams,
    freqs: FrequencyTriple,
) -> dict:
    def model(m: DispersionModel) -> dict:
        return {
            "kind": m.kind.value,
            "parameters": list(m.parameters),
            "validity_range": list(m.validity_range),
        }

    return {
        "crystal": {
            "length_l": crystal.length_l,
            "chi": crystal.chi,
            "cross_section_A": crystal.cross_section_A,
            "dispersion_signal": model(crystal.dispersion_signal),
            "dispersion_idler": model(crystal.dispersion_idler),
            "dispersion_pump": model(crystal.dispersion_pump),
        },
        "cavity": {
            "resonator_length_Lr": cavity.resonator_length_lr,
            "loss_rate_gamma": cavity.loss_rate_gamma,
        },
        "pump": {"field_amplitude_EP": pump.field_amplitude_ep},
        "frequencies": {
            "omega_P": freqs.omega_p,
            "omega_S": freqs.omega_s,
            "omega_I": freqs.omega_i,
        },
    }


def scenario_hash(
    crystal: CrystalParams,
    cavity: CavityParams,
    pump: PumpParams,
    freqs: FrequencyTriple,
) -> str:
    """Stable 16-hex-digit digest of every physical field."""
    canonical = json.dumps(
        _physical_fingerprint(crystal, cavity, pump, freqs),
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("ascii")).hexdigest()[:16]


def _expect_mapping(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        raise ScenarioValidationError(f"{path}: expected an object")
    return obj


def _get(obj: dict, key: str, path: str):
    if key not in obj:
        raise ScenarioValidationError(f"{path}.{key}: missing required field")
    return obj[key]


def _number(obj: dict, key: str, path: str, positive: bool = True) -> float:
    value = _get(obj, key, path)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioValidationError(f"{path}.{key}: expected a number")
    value = float(value)
    if positive and value <= 0:
        raise ScenarioValidationError(f"{path}.{key}: must be positive")
    return value


def _dispersion(obj: dict, path: str) -> DispersionModel:
    obj = _expect_mapping(obj, path)
    kind = _get(obj, "kind", path)
    try:
        kind = DispersionKind(kind)
    except ValueError:
        allowed = ", ".join(k.value for k in DispersionKind)
        raise ScenarioValidationError(
            f"{path}.kind: unknown kind {kind!r} (allowed: {allowed})"
        ) from None
    params = _get(obj, "parameters", path)
    rng = _get(obj, "validity_range", path)
    if not isinstance(params, list) or not all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in params
    ):
        raise ScenarioValidationError(f"{path}.parameters: expected a list of numbers")
    if (
        not isinstance(rng, list)
        or len(rng) != 2
        or not all(isinstance(v, (int, float)) for v in rng)
    ):
        raise ScenarioValidationError(
            f"{path}.validity_range: expected [omega_min, omega_max]"
        )
    try:
        return DispersionModel(kind, tuple(params), (rng[0], rng[1]))
    except ValueError as exc:
        raise ScenarioValidationError(f"{path}: {exc}") from exc


def _resolve_frequencies(obj: dict, crystal: CrystalParams) -> FrequencyTriple:
    path = "frequencies"
    obj = _expect_mapping(obj, path)
    omega_p = _number(obj, "omega_P", path)
    explicit = "omega_S" in obj or "omega_I" in obj
    if explicit and "bracket" in obj:
        raise ScenarioValidationError(
            f"{path}: explicit frequencies and a phase-match bracket are "
            "mutually exclusive"
        )
    if explicit:
        if "omega_S" in obj:
            omega_s = _number(obj, "omega_S", path)
            omega_i = omega_p - omega_s
        else:
            omega_i = _number(obj, "omega_I", path)
            omega_s = omega_p - omega_i
        if "omega_S" in obj and "omega_I" in obj:
            omega_i = _number(obj, "omega_I", path)
        try:
            return FrequencyTriple(omega_p, omega_s, omega_i)
        except ValueError as exc:
            raise ScenarioValidationError(f"{path}: {exc}") from exc
    if "bracket" not in obj:
        raise ScenarioValidationError(
            f"{path}: provide omega_S/omega_I or a bracket for phase matching"
        )
    bracket = obj["bracket"]
    if (
        not isinstance(bracket, list)
        or len(bracket) != 2
        or not all(isinstance(v, (int, float)) for v in bracket)
    ):
        raise ScenarioValidationError(f"{path}.bracket: expected [omega_lo, omega_hi]")
    return phase_match(crystal, omega_p, (bracket[0], bracket[1]))


def scenario_from_dict(data: dict, source: str = "<dict>") -> ScenarioConfig:
    data = _expect_mapping(data, source)

    crystal_obj = _expect_mapping(_get(data, "crystal", source), "crystal")
    crystal = CrystalParams(
        length_l=_number(crystal_obj, "length_l", "crystal"),
        chi=_number(crystal_obj, "chi", "crystal"),
        cross_section_A=_number(crystal_obj, "cross_section_A", "crystal"),
        dispersion_signal=_dispersion(
            _get(crystal_obj, "dispersion_signal", "crystal"),
            "crystal.dispersion_signal",
        ),
        dispersion_idler=_dispersion(
            _get(crystal_obj, "dispersion_idler", "crystal"),
            "crystal.dispersion_idler",
        ),
        dispersion_pump=_dispersion(
            _get(crystal_obj, "dispersion_pump", "crystal"),
            "crystal.dispersion_pump",
        ),
    )

    cavity_obj = _expect_mapping(_get(data, "cavity", source), "cavity")
    lr = _number(cavity_obj, "resonator_length_Lr", "cavity")
    if lr < crystal.length_l:
        raise ScenarioValidationError(
            "cavity.resonator_length_Lr: must be at least crystal.length_l "
            f"({lr!r} < {crystal.length_l!r})"
        )
    cavity = CavityParams(
        resonator_length_lr=lr,
        loss_rate_gamma=_number(cavity_obj, "loss_rate_gamma", "cavity"),
    )

    pump_obj = _expect_mapping(_get(data, "pump", source), "pump")
    pump = PumpParams(field_amplitude_ep=_number(pump_obj, "field_amplitude_EP", "pump"))

    freqs = _resolve_frequencies(_get(data, "frequencies", source), crystal)

    out = data.get("output", {})
    out = _expect_mapping(out, "output")
    directory = out.get("directory", ".")
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ScenarioValidationError("output.format: must be 'csv' or 'json'")
    norm_name = out.get("normalization", Normalization.PEAK_UNITY.value)
    try:
        normalization = Normalization(norm_name)
    except ValueError:
        raise ScenarioValidationError(
            f"output.normalization: unknown value {norm_name!r}"
        ) from None

    threshold = data.get("regime_threshold", DEFAULT_REGIME_THRESHOLD)
    if isinstance(threshold, bool) or not isinstance(threshold, (int, float)):
        raise ScenarioValidationError("regime_threshold: expected a number")

    scales = derive_scales(crystal, cavity, pump, freqs, float(threshold))
    regime = check_regime(scales, float(threshold))
    digest = scenario_hash(crystal, cavity, pump, freqs)
    return ScenarioConfig(
        crystal=crystal,
        cavity=cavity,
        pump=pump,
        freqs=freqs,
        scales=scales,
        regime=regime,
        scenario_hash=digest,
        output_directory=str(directory),
        output_format=str(fmt),
        normalization=normalization,
        regime_threshold=float(threshold),
    )


def load_scenario(path: str | Path) -> ScenarioConfig:
    """Parse and validate a scenario file; fails with a field-path message."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioParseError(f"{path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return scenario_from_dict(data, source=str(path))
