"""Command line experiment runner.

Usage examples::

    noonsim scaling --protocol noon --n 1,2,4,...,1024 --mode closed_form
    noonsim montecarlo --protocol noon --n 10 --batches 2000 --shots 1000 --seed 7
    noonsim rosetta --points 64 --verify-eq8
    noonsim litho --n 2 --lambda-nm 400 --span-nm 2000 --points 4096 --svg litho.svg

Parameters may also come from a JSON config file (``--config``) with the
keys ``command``, ``params``, ``seed``, ``out_path`` and ``format``; flags
given on the command line override the file.  The seed defaults to the
``NOON_SEED`` environment variable, then 0.

Exit status: 0 on success, 2 for usage or input errors, 3 when a
numerical contract is violated.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from noonsim import __version__
from noonsim.errors import NoonsimError
from noonsim.estimation import FIT_MODES, fit_scaling, sample_measurements, sensitivity
from noonsim.lithography import (
    SubstrateGrid,
    compare_classical,
    line_plot_svg,
    measure_fringes,
)
from noonsim.metrology import PROTOCOLS
from noonsim.rosetta import MAX_EQ8_N, RosettaSweep, equivalence_sweep, verify_eq8
from noonsim.tables import Table, render

EXIT_OK, EXIT_USAGE, EXIT_CONTRACT = 0, 2, 3
ROSETTA_MAX_DEV = 1e-9
EQ8_MAX_DEV = 1e-12
CONFIG_KEYS = {"command", "params", "seed", "out_path", "format"}


class UsageError(Exception):
    pass


def parse_n_list(text) -> list:
    """Parse ``"1,2,4,...,1024"`` style lists of strictly increasing integers.

    An ellipsis (``...`` or the single character) continues the arithmetic
    or geometric progression set by the preceding terms up to the final
    term.
    """
    if isinstance(text, int):
        return [text]
    if isinstance(text, list):
        text = ",".join(str(v) for v in text)
    tokens = [tok.strip() for tok in str(text).split(",")]
    out: list = []
    for i, tok in enumerate(tokens):
        if tok in ("...", "…"):
            if len(out) < 2 or i != len(tokens) - 2:
                raise UsageError(f"ellipsis needs two leading terms and one final term: {text!r}")
            continue
        try:
            val = int(tok)
        except ValueError:
            raise UsageError(f"invalid integer token {tok!r} in N list") from None
        if i > 0 and tokens[i - 1] in ("...", "…"):
            a, b = out[-2], out[-1]
            nxt = []
            if b - a == out[1] - out[0] and all(
                    y - x == b - a for x, y in zip(out, out[1:])):
                step = b - a
                cur = b + step
                while step > 0 and cur < val:
                    nxt.append(cur)
                    cur += step
            elif a > 0 and b % a == 0 and all(y == x * (b // a) for x, y in zip(out, out[1:])):
                ratio = b // a
                cur = b * ratio
                while ratio > 1 and cur < val:
                    nxt.append(cur)
                    cur *= ratio
            else:
                raise UsageError(f"cannot infer progression before ellipsis in {text!r}")
            if cur != val:
                raise UsageError(f"final term {val} does not continue the progression in {text!r}")
            out.extend(nxt)
        out.append(val)
    if not out or out[0] < 1 or any(b <= a for a, b in zip(out, out[1:])):
        raise UsageError(f"N list must be strictly increasing positive integers: {text!r}")
    return out


# command -> {param: (type, default)}; default None means "resolved later"
PARAMS = {
    "sensitivity": {
        "protocol": (str, "noon"),
        "n": (str, "1,2,4,8,16"),
        "phi": (float, 0.1),
        "mode": (str, "closed_form"),
    },
    "scaling": {
        "protocol": (str, "noon"),
        "n": (str, "1,2,4,...,1024"),
        "mode": (str, "closed_form"),
        "phi": (float, math.pi / 2),
        "batches": (int, 2000),
        "shots": (int, 1000),
        "workers": (int, 1),
    },
    "montecarlo": {
        "protocol": (str, "noon"),
        "n": (int, 10),
        "phi": (float, None),
        "batches": (int, 2000),
        "shots": (int, 1000),
        "workers": (int, 1),
    },
    "rosetta": {
        "points": (int, 64),
        "verify_eq8": (bool, False),
        "eq8_max_n": (int, MAX_EQ8_N),
    },
    "litho": {
        "n": (int, 2),
        "lambda_nm": (float, 400.0),
        "span_nm": (float, 2000.0),
        "x_min_nm": (float, 0.0),
        "points": (int, 4096),
        "svg": (str, None),
    },
}
# parameters that name files; not echoed into the output header
PATH_PARAMS = {"svg"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noonsim", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"noonsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, params in PARAMS.items():
        sp = sub.add_parser(name, argument_default=argparse.SUPPRESS)
        for key, (typ, default) in params.items():
            flag = "--" + key.replace("_", "-")
            helptext = f"default: {default}" if default is not None else None
            if typ is bool:
                sp.add_argument(flag, dest=key, action="store_true", help=helptext)
            else:
                choices = None
                if key == "protocol":
                    choices = PROTOCOLS
                elif key == "mode":
                    choices = FIT_MODES if name == "scaling" else FIT_MODES[:2]
                sp.add_argument(flag, dest=key, type=str if key == "n" else typ,
                                choices=choices, help=helptext)
        sp.add_argument("--seed", type=int, help="Monte Carlo seed (default: $NOON_SEED or 0)")
        sp.add_argument("--out", dest="out_path", help="output file (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), help="default: from --out suffix, else csv")
        sp.add_argument("--config", help="JSON config file mirroring the run configuration")
    return parser


def _load_config(path: str, command: str) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError("config file must hold a JSON object")
    unknown = set(doc) - CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    if doc.get("command", command) != command:
        raise UsageError(f"config is for command {doc['command']!r}, not {command!r}")
    params = doc.get("params", {})
    bad = set(params) - set(PARAMS[command])
    if bad:
        raise UsageError(f"unknown params for {command}: {sorted(bad)}")
    return doc


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge defaults, config file and flags into a fully-resolved config."""
    command = args.command
    given = vars(args)
    doc = _load_config(given["config"], command) if "config" in given else {}
    params = {k: default for k, (_, default) in PARAMS[command].items()}
    params.update(doc.get("params", {}))
    params.update({k: v for k, v in given.items() if k in PARAMS[command]})

    seed = given.get("seed", doc.get("seed"))
    if seed is None:
        env = os.environ.get("NOON_SEED")
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise UsageError(f"NOON_SEED is not an integer: {env!r}") from None
    if not 0 <= int(seed) < 2 ** 64:
        raise UsageError(f"seed must be a 64-bit unsigned integer, got {seed}")

    out_path = given.get("out_path", doc.get("out_path"))
    fmt = given.get("format", doc.get("format"))
    if fmt is None:
        fmt = "json" if out_path and str(out_path).endswith(".json") else "csv"

    for key, (typ, _) in PARAMS[command].items():
        val = params[key]
        if val is None or key == "n" and command in ("sensitivity", "scaling"):
            continue
        try:
            params[key] = typ(val)
        except (TypeError, ValueError):
            raise UsageError(f"invalid value {val!r} for {key}") from None
    if "n" in params and command in ("sensitivity", "scaling"):
        params["n"] = parse_n_list(params["n"])
    if command == "montecarlo" and params["phi"] is None:
        # mid-fringe operating point
        params["phi"] = math.pi / 2 / (params["n"] if params["protocol"] == "noon" else 1)
    for key in ("protocol", "mode"):
        if key in params and key in PARAMS[command]:
            allowed = PROTOCOLS if key == "protocol" else (
                FIT_MODES if command == "scaling" else FIT_MODES[:2])
            if params[key] not in allowed:
                raise UsageError(f"invalid {key} {params[key]!r}; choose from {allowed}")
    return {"command": command, "params": params, "seed": int(seed),
            "out_path": out_path, "format": fmt}


def _echo(cfg: dict) -> dict:
    params = {k: v for k, v in cfg["params"].items() if k not in PATH_PARAMS}
    return {"command": cfg["command"], "params": params, "seed": cfg["seed"],
            "format": cfg["format"], "version": __version__}


def run_sensitivity(cfg):
    p = cfg["params"]
    rows = []
    for n in p["n"]:
        r = sensitivity(p["protocol"], n, p["phi"], p["mode"])
        rows.append((r.n, r.phi, r.mean, r.std_dev, r.derivative, r.delta_phi))
    cols = ["N", "phi", "mean", "std_dev", "derivative", "delta_phi"]
    return Table("sensitivity", _echo(cfg), cols, rows), EXIT_OK


def run_scaling(cfg):
    p = cfg["params"]
    fit = fit_scaling(p["protocol"], p["n"], p["phi"], p["mode"], batches=p["batches"],
                      outcomes_per_batch=p["shots"], seed=cfg["seed"], workers=p["workers"])
    rows = [(n, d, math.log10(n), math.log10(d)) for n, d in zip(fit.n_values, fit.delta_phis)]
    table = Table("scaling", _echo(cfg), ["N", "delta_phi", "log10N", "log10dphi"], rows,
                  footer={"slope": fit.slope, "intercept": fit.intercept,
                          "r_squared": fit.r_squared})
    return table, EXIT_OK


def run_montecarlo(cfg):
    p = cfg["params"]
    rec = sample_measurements(p["protocol"], p["n"], p["phi"], p["batches"], p["shots"],
                              cfg["seed"], workers=p["workers"])
    rows = np.column_stack([np.arange(rec.batches), rec.phi_hats])
    expected = (1 / math.sqrt(p["n"] * p["shots"]) if p["protocol"] == "separable"
                else 1 / (p["n"] * math.sqrt(p["shots"])))
    table = Table("montecarlo", _echo(cfg), ["batch", "phi_hat"], rows,
                  meta={"predicted_std": expected},
                  footer={"empirical_std": rec.empirical_std,
                          "mean_phi_hat": rec.mean_phi_hat})
    return table, EXIT_OK


def run_rosetta(cfg):
    p = cfg["params"]
    if p["points"] < 8:
        raise UsageError(f"--points must be >= 8, got {p['points']}")
    phis = 2 * np.pi * np.arange(p["points"]) / p["points"]
    sweep = RosettaSweep(equivalence_sweep(phis), {})
    meta = {"max_dev": sweep.max_deviation}
    status = EXIT_OK if sweep.max_deviation <= ROSETTA_MAX_DEV else EXIT_CONTRACT
    if p["verify_eq8"]:
        devs = {str(n): verify_eq8(n) for n in range(1, p["eq8_max_n"] + 1)}
        meta["eq8_deviation"] = devs
        if max(devs.values()) > EQ8_MAX_DEV:
            status = EXIT_CONTRACT
    return Table("rosetta", _echo(cfg), list(RosettaSweep.COLUMNS), sweep.rows, meta), status


def run_litho(cfg):
    p = cfg["params"]
    grid = SubstrateGrid(p["x_min_nm"], p["x_min_nm"] + p["span_nm"], p["points"])
    quantum, classical = compare_classical(p["n"], p["lambda_nm"], grid)
    meta = {
        "x_min_nm": grid.x_min,
        "x_max_nm": grid.x_max,
        "grid_step_nm": grid.spacing,
        "fringe_period_nm": quantum.fringe_period,
        "feature_size_nm": quantum.feature_size,
        "classical_fringe_period_nm": classical.fringe_period,
        "classical_feature_size_nm": classical.feature_size,
    }
    try:
        m = measure_fringes(quantum)
        meta["measured_period_nm"] = m.period
        meta["contrast"] = m.contrast
    except NoonsimError:
        pass  # span too short to measure; closed forms still reported
    rows = np.column_stack([grid.coordinates(), quantum.deposition, classical.deposition])
    if p["svg"]:
        svg = line_plot_svg(grid.coordinates(), {
            f"N={p['n']}": quantum.deposition, "classical": classical.deposition})
        Path(p["svg"]).write_text(svg)
    cols = ["x_nm", "deposition_quantum", "deposition_classical"]
    return Table("litho", _echo(cfg), cols, rows, meta), EXIT_OK


RUNNERS = {
    "sensitivity": run_sensitivity,
    "scaling": run_scaling,
    "montecarlo": run_montecarlo,
    "rosetta": run_rosetta,
    "litho": run_litho,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        table, status = RUNNERS[cfg["command"]](cfg)
    except (UsageError, NoonsimError) as exc:
        print(f"noonsim {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(table, cfg["format"])
    if cfg["out_path"] and cfg["out_path"] != "-":
        with open(cfg["out_path"], "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status == EXIT_CONTRACT:
        print(f"noonsim {args.command}: numerical contract violated", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
