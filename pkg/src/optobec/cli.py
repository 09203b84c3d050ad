"""Command-line interface.

Subcommands:

* ``point --config FILE``            single-configuration JSON report
* ``sweep --config FILE``            run the configured sweep, CSV or JSON
* ``figure ID [--out DIR]``          run a bundled preset, writes ``ID.csv``
* ``threshold --config FILE``        bistability window in mW

Exit codes: 0 success, 1 invalid configuration or usage, 2 numerical
failure (marginal stability or a singular covariance solve).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from typing import List, Optional

from . import gaussian_measures as gm
from .config import ConfigError, load_config
from .linear_dynamics import (NumericalError, characteristic_polynomial,
                              diffusion_matrix, drift_matrix, is_stable,
                              solve_lyapunov)
from .model import ParameterError, derive_quantities
from .presets import FIGURE_IDS, figure_preset
from .steady_state import bistability_window, solve_mean_field
from .sweep import emit, run_sweep


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; route them through the
    # invalid-configuration path instead (2 is reserved for numerical failure)
    def error(self, message):
        raise ConfigError(f"usage: {message}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="optobec",
                     description="Steady states, stability, cooling and "
                                 "entanglement of a condensate-filled "
                                 "optomechanical cavity.")
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="single-configuration report")
    point.add_argument("--config", required=True)
    point.add_argument("--out", default=None, help="output file (default stdout)")

    sweep = sub.add_parser("sweep", help="run the sweep described by the config")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--out", default=None, help="output file (default stdout)")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")

    figure = sub.add_parser("figure", help="run a bundled dataset preset")
    figure.add_argument("id", choices=FIGURE_IDS, metavar="ID",
                        help=f"one of: {', '.join(FIGURE_IDS)}")
    figure.add_argument("--out", default=".", help="output directory")

    threshold = sub.add_parser("threshold", help="print the bistability window in mW")
    threshold.add_argument("--config", required=True)
    return parser


def _point_report(params) -> dict:
    d = derive_quantities(params)
    branches = solve_mean_field(params)
    diffusion = diffusion_matrix(d)
    entries = []
    for branch in branches:
        a = drift_matrix(branch, d)
        branch.stability = is_stable(characteristic_polynomial(a))
        entry = dataclasses.asdict(branch)
        entry["measures"] = None
        if branch.stability == "stable":
            v = solve_lyapunov(a, diffusion)
            entry["measures"] = {
                "delta_n_m": gm.mirror_phonons(v),
                "delta_n_c": gm.bogoliubov_excitations(v),
                "e_n_mirror_field": gm.log_negativity(
                    gm.reduce_bipartition(v, gm.MIRROR_FIELD)).log_negativity,
                "e_n_atom_field": gm.log_negativity(
                    gm.reduce_bipartition(v, gm.ATOM_FIELD)).log_negativity,
                "e_n_mirror_atom": gm.log_negativity(
                    gm.reduce_bipartition(v, gm.MIRROR_ATOM)).log_negativity,
            }
        entries.append(entry)
    return {
        "params": dataclasses.asdict(params),
        "derived_quantities": dataclasses.asdict(d),
        "branches": entries,
    }


def _write_text(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "point":
            params, _ = load_config(args.config)
            report = _point_report(params)
            _write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
        elif args.command == "sweep":
            params, spec = load_config(args.config)
            if spec is None:
                raise ConfigError("sweep: config file has no sweep section")
            rows = run_sweep(spec)
            if args.out is None:
                buffer = sys.stdout.buffer
                emit(rows, args.format, buffer, spec=spec)
            else:
                emit(rows, args.format, args.out, spec=spec)
        elif args.command == "figure":
            spec = figure_preset(args.id)
            rows = run_sweep(spec)
            os.makedirs(args.out, exist_ok=True)
            path = os.path.join(args.out, f"{args.id}.csv")
            emit(rows, "csv", path, spec=spec)
            print(path)
        elif args.command == "threshold":
            params, _ = load_config(args.config)
            window = bistability_window(params, params.cavity.detuning)
            if window is None:
                print("no bistability window")
            else:
                print(f"{window.power_low * 1e3:.6g} {window.power_high * 1e3:.6g}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
