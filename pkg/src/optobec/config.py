"""JSON configuration ingestion.

A configuration is a single JSON document with a ``units`` mode and the
parameter sections; an optional ``sweep`` section turns it into a sweep
description.  Two unit modes exist:

* ``si``          every quantity in base SI units (rad/s, m, kg, K, W)
* ``normalized``  the mirror frequency stays in rad/s and acts as the
                  reference; every other frequency-like rate (condensate
                  coupling, collisional frequency, recoil, damping, xi
                  override) is a multiple of the mirror frequency, while
                  detunings are multiples of the cavity decay rate kappa.
                  Lengths, masses, temperatures and powers stay SI.

Sweep bounds follow the same convention per variable: ``delta_c`` in kappa
units, ``Delta_effective`` / ``omega_sw`` / ``xi`` in mirror-frequency
units, ``power`` always in watts.

When the ``bec`` section is omitted the condensate is absent; its decoupled
reference mode keeps a nonzero recoil and damping (0.1 mirror frequencies
and 1e-3 kappa) so the full covariance solve stays well-posed.
"""

from __future__ import annotations

import json
import math
from dataclasses import replace
from typing import Dict, Optional, Tuple

from .model import (C_LIGHT, BecParams, CavityParams, DriveParams,
                    MirrorParams, ParameterError, SystemParams)
from .sweep import SweepSpec


class ConfigError(ParameterError):
    """A configuration document is malformed or names invalid values."""


def _section(doc: Dict, name: str, required: bool) -> Optional[Dict]:
    if name not in doc:
        if required:
            raise ConfigError(f"{name}: section is required")
        return None
    value = doc[name]
    if not isinstance(value, dict):
        raise ConfigError(f"{name}: must be an object")
    return value


def _number(section: Dict, path: str, key: str, default=None):
    if key not in section:
        if default is None:
            raise ConfigError(f"{path}.{key}: value is required")
        return default
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: must be a number")
    return float(value)


def _check_keys(section: Dict, path: str, allowed) -> None:
    for key in section:
        if key not in allowed:
            raise ConfigError(f"{path}: unknown key {key!r}")


def params_from_dict(doc: Dict) -> SystemParams:
    """Build :class:`SystemParams` from a parsed configuration document."""
    _check_keys(doc, "config",
                ("units", "cavity", "mirror", "bec", "drive", "xi_override", "sweep"))
    units = doc.get("units", "si")
    if units not in ("si", "normalized"):
        raise ConfigError(f"units: {units!r} is not one of ('si', 'normalized')")
    normalized = units == "normalized"

    cav = _section(doc, "cavity", required=True)
    _check_keys(cav, "cavity", ("length", "wavelength", "finesse", "detuning"))
    mir = _section(doc, "mirror", required=True)
    _check_keys(mir, "mirror", ("mass", "frequency", "quality", "temperature"))
    drv = _section(doc, "drive", required=True)
    _check_keys(drv, "drive", ("power",))
    bec = _section(doc, "bec", required=False)

    cavity = CavityParams(
        length=_number(cav, "cavity", "length"),
        wavelength=_number(cav, "cavity", "wavelength"),
        finesse=_number(cav, "cavity", "finesse"),
        detuning=0.0)
    kappa = math.pi * C_LIGHT / (cavity.length * cavity.finesse)
    omega_m = _number(mir, "mirror", "frequency")
    freq_unit = omega_m if normalized else 1.0
    det_unit = kappa if normalized else 1.0
    cavity = replace(cavity, detuning=_number(cav, "cavity", "detuning", 0.0) * det_unit)

    mirror = MirrorParams(
        mass=_number(mir, "mirror", "mass"),
        frequency=omega_m,
        quality=_number(mir, "mirror", "quality"),
        temperature=_number(mir, "mirror", "temperature", 0.0))
    if bec is None:
        condensate = BecParams(present=False, coupling=0.0, sw_frequency=0.0,
                               recoil=0.1 * omega_m, damping=1e-3 * kappa,
                               temperature=0.0)
    else:
        _check_keys(bec, "bec", ("present", "coupling", "sw_frequency",
                                 "recoil", "damping", "temperature"))
        present = bec.get("present", True)
        if not isinstance(present, bool):
            raise ConfigError("bec.present: must be a boolean")
        condensate = BecParams(
            present=present,
            coupling=_number(bec, "bec", "coupling", 0.0) * freq_unit,
            sw_frequency=_number(bec, "bec", "sw_frequency", 0.0) * freq_unit,
            recoil=_number(bec, "bec", "recoil", 0.0) * freq_unit,
            damping=_number(bec, "bec", "damping", 0.0) * freq_unit,
            temperature=_number(bec, "bec", "temperature", 0.0))
    drive = DriveParams(power=_number(drv, "drive", "power"))

    xi_override = None
    if doc.get("xi_override") is not None:
        raw = doc["xi_override"]
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ConfigError("xi_override: must be a number")
        xi_override = float(raw) * freq_unit

    return SystemParams(cavity=cavity, mirror=mirror, bec=condensate,
                        drive=drive, xi_override=xi_override)


def sweep_from_dict(doc: Dict, params: SystemParams) -> SweepSpec:
    """Build the sweep description from the ``sweep`` section."""
    section = _section(doc, "sweep", required=True)
    _check_keys(section, "sweep", ("variable", "lo", "hi", "points", "mode", "bec"))
    variable = section.get("variable")
    if not isinstance(variable, str):
        raise ConfigError("sweep.variable: value is required")

    normalized = doc.get("units", "si") == "normalized"
    unit = 1.0
    if normalized:
        if variable == "delta_c":
            unit = math.pi * C_LIGHT / (params.cavity.length * params.cavity.finesse)
        elif variable in ("Delta_effective", "omega_sw", "xi"):
            unit = params.mirror.frequency

    points = section.get("points", 600)
    if isinstance(points, bool) or not isinstance(points, int):
        raise ConfigError("sweep.points: must be an integer")

    return SweepSpec(
        variable=variable,
        lo=_number(section, "sweep", "lo") * unit,
        hi=_number(section, "sweep", "hi") * unit,
        points=points,
        params=params,
        mode=section.get("mode", "mean_field"),
        bec=section.get("bec", "present"),
    )


def load_config(path) -> Tuple[SystemParams, Optional[SweepSpec]]:
    """Read a configuration file; returns (params, sweep-or-None)."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config: top-level document must be an object")
    params = params_from_dict(doc)
    sweep = sweep_from_dict(doc, params) if "sweep" in doc else None
    return params, sweep
