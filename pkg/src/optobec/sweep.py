"""One-dimensional parameter sweeps over the steady-state pipeline and
deterministic CSV/JSON emission.

A sweep evaluates every point of a grid independently (pure functions all
the way down), so the engine may fan the points out over threads; the
environment variable ``OPTOMECH_THREADS`` caps the fan-out (0 or unset means
serial).  Row order, and therefore emitted bytes, never depends on the
execution schedule.

Swept variables:

* ``delta_c``          detuning offset, full self-consistent branch solve
* ``power``            drive power, full self-consistent branch solve
* ``Delta_effective``  effective detuning taken as the independent input;
                       the photon number follows directly from the field
                       fixed point and the self-consistency loop is
                       bypassed (single branch per point)
* ``omega_sw``         collisional frequency
* ``xi``               mirror coupling rate (installed as an override)

``Delta_effective`` differs qualitatively from a ``delta_c`` sweep: the
branch structure of the cubic never enters, which is the natural x-axis for
cooling and entanglement curves.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import gaussian_measures as gm
from .linear_dynamics import (characteristic_polynomial, diffusion_matrix,
                              drift_matrix, is_stable, solve_lyapunov)
from .model import ParameterError, SystemParams, derive_quantities
from .steady_state import MeanFieldBranch, solve_mean_field

SWEEP_VARIABLES = ("delta_c", "power", "Delta_effective", "omega_sw", "xi")
SWEEP_MODES = ("mean_field", "full")
BEC_CHOICES = ("present", "absent", "both")

CSV_COLUMNS = (
    "config", "value", "branch", "n", "alpha", "Delta", "stability",
    "degenerate", "delta_n_m", "delta_n_c",
    "e_n_mirror_field", "e_n_atom_field", "e_n_mirror_atom",
)

THREADS_ENV = "OPTOMECH_THREADS"


@dataclass(frozen=True)
class Variant:
    """A named parameter override inside one sweep (for multi-curve figures)."""

    label: str
    params: SystemParams


@dataclass(frozen=True)
class SweepSpec:
    """Declarative description of a 1-D sweep.

    ``bec`` selects the condensate handling: ``present`` sweeps every
    configuration as given, ``absent`` force-decouples the condensate in
    all of them, ``both`` duplicates each configuration into a coupled and
    a decoupled curve.  ``variants`` optionally multiplies the sweep over
    named parameter sets; when empty, ``params`` alone is swept.
    """

    variable: str
    lo: float
    hi: float
    points: int
    params: SystemParams
    mode: str = "mean_field"
    bec: str = "present"
    variants: Tuple[Variant, ...] = ()

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ParameterError(
                f"sweep.variable: {self.variable!r} is not one of {SWEEP_VARIABLES}")
        if self.mode not in SWEEP_MODES:
            raise ParameterError(
                f"sweep.mode: {self.mode!r} is not one of {SWEEP_MODES}")
        if self.bec not in BEC_CHOICES:
            raise ParameterError(
                f"sweep.bec: {self.bec!r} is not one of {BEC_CHOICES}")
        if self.points < 2:
            raise ParameterError("sweep.points: must be >= 2")
        if not (self.lo < self.hi):
            raise ParameterError("sweep.lo: must be < sweep.hi")


@dataclass
class SweepRow:
    """One branch at one sweep point of one configuration.

    Measure fields stay None unless the point is RH-stable and the sweep
    runs in full mode; unstable and marginal points only carry the flag.
    """

    config: str
    value: float
    branch: str
    n: float
    alpha: float
    Delta: float
    stability: str
    degenerate: bool
    delta_n_m: Optional[float] = None
    delta_n_c: Optional[float] = None
    e_n_mirror_field: Optional[float] = None
    e_n_atom_field: Optional[float] = None
    e_n_mirror_atom: Optional[float] = None


def _expand_configs(spec: SweepSpec) -> List[Tuple[str, SystemParams]]:
    base = list(spec.variants) if spec.variants else [Variant("base", spec.params)]
    configs: List[Tuple[str, SystemParams]] = []
    for variant in base:
        if spec.bec == "both":
            present = variant.params
            if not present.bec.present:
                present = replace(present, bec=replace(present.bec, present=True))
            configs.append((f"{variant.label}/bec", present))
            configs.append((f"{variant.label}/no_bec", variant.params.without_bec()))
        elif spec.bec == "absent":
            configs.append((variant.label, variant.params.without_bec()))
        else:
            configs.append((variant.label, variant.params))
    return configs


def _direct_branch(value: float, params: SystemParams) -> MeanFieldBranch:
    """Branch for a directly imposed effective detuning (no cubic solve)."""
    d = derive_quantities(params)
    n = d.eta ** 2 / (value ** 2 + d.kappa ** 2)
    q_s = (d.xi / d.omega_m) * n
    if d.zeta > 0.0:
        qc = -d.zeta * n / (d.Omega_c + d.omega_sw + d.gamma_c ** 2 / d.Omega_c)
        pc = (d.gamma_c / d.Omega_c) * qc
    else:
        qc = pc = 0.0
    return MeanFieldBranch(n=n, alpha=math.sqrt(n), Delta=value, q_s=q_s,
                           p_s=0.0, Q_s=qc, P_s=pc, label="unique")


def _branches_at(variable: str, value: float,
                 params: SystemParams) -> Tuple[List[MeanFieldBranch], SystemParams]:
    if variable == "delta_c":
        return solve_mean_field(params, delta_c=value), params
    if variable == "power":
        return solve_mean_field(params, power=value), params
    if variable == "Delta_effective":
        return [_direct_branch(value, params)], params
    if variable == "omega_sw":
        swept = replace(params, bec=replace(params.bec, sw_frequency=value))
        return solve_mean_field(swept), swept
    swept = replace(params, xi_override=value)  # variable == "xi"
    return solve_mean_field(swept), swept


def _evaluate_point(config: str, variable: str, value: float,
                    params: SystemParams, mode: str) -> List[SweepRow]:
    branches, local = _branches_at(variable, value, params)
    d = derive_quantities(local)
    diffusion = diffusion_matrix(d) if mode == "full" else None
    rows = []
    for branch in branches:
        a = drift_matrix(branch, d)
        verdict = is_stable(characteristic_polynomial(a))
        branch.stability = verdict
        row = SweepRow(config=config, value=value, branch=branch.label,
                       n=branch.n, alpha=branch.alpha, Delta=branch.Delta,
                       stability=verdict, degenerate=branch.degenerate)
        if mode == "full" and verdict == "stable":
            v = solve_lyapunov(a, diffusion)
            row.delta_n_m = gm.mirror_phonons(v)
            row.delta_n_c = gm.bogoliubov_excitations(v)
            for bp, attr in ((gm.MIRROR_FIELD, "e_n_mirror_field"),
                             (gm.ATOM_FIELD, "e_n_atom_field"),
                             (gm.MIRROR_ATOM, "e_n_mirror_atom")):
                result = gm.log_negativity(gm.reduce_bipartition(v, bp))
                setattr(row, attr, result.log_negativity)
        rows.append(row)
    return rows


def run_sweep(spec: SweepSpec) -> List[SweepRow]:
    """Evaluate the sweep; rows are grouped by configuration, ascending value.

    The result is deterministic and identical for serial and threaded
    execution (thread count from ``OPTOMECH_THREADS``).
    """
    values = np.linspace(spec.lo, spec.hi, spec.points)
    configs = _expand_configs(spec)
    tasks = [(label, spec.variable, float(v), params, spec.mode)
             for label, params in configs for v in values]

    raw_threads = os.environ.get(THREADS_ENV, "0") or "0"
    try:
        threads = int(raw_threads)
    except ValueError:
        raise ParameterError(f"{THREADS_ENV}: not an integer: {raw_threads!r}")
    if threads > 0:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda t: _evaluate_point(*t), tasks))
    else:
        chunks = [_evaluate_point(*t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


def _format_number(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return format(float(x), ".12g")


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    """CSV text: fixed header, 12 significant digits, LF line endings."""
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join((
            row.config, _format_number(row.value), row.branch,
            _format_number(row.n), _format_number(row.alpha),
            _format_number(row.Delta), row.stability,
            _format_number(row.degenerate),
            _format_number(row.delta_n_m), _format_number(row.delta_n_c),
            _format_number(row.e_n_mirror_field),
            _format_number(row.e_n_atom_field),
            _format_number(row.e_n_mirror_atom),
        )))
    return "\n".join(lines) + "\n"


def _spec_to_dict(spec: SweepSpec) -> Dict:
    doc = {
        "variable": spec.variable, "lo": spec.lo, "hi": spec.hi,
        "points": spec.points, "mode": spec.mode, "bec": spec.bec,
        "params": dataclasses.asdict(spec.params),
        "variants": [
            {"label": v.label, "params": dataclasses.asdict(v.params)}
            for v in spec.variants
        ],
    }
    return doc


def report_dict(rows: Sequence[SweepRow], spec: Optional[SweepSpec] = None) -> Dict:
    """JSON-ready report object: sweep description, derived rates, rows."""
    doc: Dict = {"rows": [dataclasses.asdict(r) for r in rows]}
    if spec is not None:
        doc["spec"] = _spec_to_dict(spec)
        doc["derived_quantities"] = {
            label: dataclasses.asdict(derive_quantities(params))
            for label, params in _expand_configs(spec)
        }
    return doc


def emit(rows: Sequence[SweepRow], fmt: str, destination,
         spec: Optional[SweepSpec] = None) -> int:
    """Write rows as ``csv`` or ``json``; returns the number of bytes written.

    ``destination`` is a path or a binary file object.  Identical inputs
    produce byte-identical output.
    """
    if fmt == "csv":
        payload = rows_to_csv(rows).encode()
    elif fmt == "json":
        payload = (json.dumps(report_dict(rows, spec), indent=2, sort_keys=True)
                   + "\n").encode()
    else:
        raise ParameterError(f"format: {fmt!r} is not one of ('csv', 'json')")

    if hasattr(destination, "write"):
        destination.write(payload)
    else:
        with open(destination, "wb") as handle:
            handle.write(payload)
    return len(payload)
