"""Machine-readable result tables (CSV and JSON) and their readers.

CSV dialect: comma separated, ``.`` decimal point, LF line endings, one
header row, floats with 17 significant digits.  Metadata lines start with
``#`` and hold ``key: <json>`` pairs; metadata before the header row
describes the run, ``# footer.*`` lines after the data hold summary
values.  No timestamps are written, so identical runs produce identical
bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

FORMAT_TAG = "noonsim-table/1"


@dataclass
class Table:
    command: str
    config: dict
    columns: list
    rows: np.ndarray
    meta: dict = field(default_factory=dict)
    footer: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=float).reshape(-1, len(self.columns))

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _dumps(value: Any) -> str:
    return json.dumps(value, sort_keys=True, allow_nan=False)


def to_csv(t: Table) -> str:
    lines = [
        f"# format: {_dumps(FORMAT_TAG)}",
        f"# command: {_dumps(t.command)}",
        f"# config: {_dumps(t.config)}",
    ]
    lines += [f"# meta.{k}: {_dumps(v)}" for k, v in sorted(t.meta.items())]
    lines.append(",".join(t.columns))
    lines += [",".join(fmt_float(v) for v in row) for row in t.rows]
    lines += [f"# footer.{k}: {_dumps(v)}" for k, v in sorted(t.footer.items())]
    return "\n".join(lines) + "\n"


def to_json(t: Table) -> str:
    doc = {
        "format": FORMAT_TAG,
        "command": t.command,
        "config": t.config,
        "meta": t.meta,
        "columns": list(t.columns),
        "rows": t.rows.tolist(),
        "footer": t.footer,
    }
    return json.dumps(doc, sort_keys=True, indent=1, allow_nan=False) + "\n"


def render(t: Table, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(t)
    if fmt == "json":
        return to_json(t)
    raise ValueError(f"unknown format {fmt!r}")


def parse_csv(text: str) -> Table:
    head: dict = {}
    meta: dict = {}
    footer: dict = {}
    columns = None
    rows = []
    for line in text.splitlines():
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(": ")
            value = json.loads(value)
            if key.startswith("meta."):
                meta[key[5:]] = value
            elif key.startswith("footer."):
                footer[key[7:]] = value
            else:
                head[key] = value
        elif columns is None:
            columns = line.split(",")
        else:
            rows.append([float(v) for v in line.split(",")])
    if head.get("format") != FORMAT_TAG or columns is None:
        raise ValueError("not a noonsim table")
    return Table(head["command"], head["config"], columns, rows, meta, footer)


def parse_json(text: str) -> Table:
    doc = json.loads(text)
    if doc.get("format") != FORMAT_TAG:
        raise ValueError("not a noonsim table")
    return Table(doc["command"], doc["config"], doc["columns"], doc["rows"],
                 doc["meta"], doc["footer"])


def read_table(path) -> Table:
    text = Path(path).read_text()
    return parse_json(text) if text.lstrip().startswith("{") else parse_csv(text)


def to_records(t: Table):
    """Rebuild the library record(s) a table was emitted from.

    ============  ==================================================
    command       returns
    ============  ==================================================
    sensitivity   list of SensitivityReport
    scaling       ScalingFit
    montecarlo    MeasurementRecord
    rosetta       RosettaSweep
    litho         (quantum ExposurePattern, classical ExposurePattern)
    ============  ==================================================
    """
    from noonsim.estimation import MeasurementRecord, ScalingFit, SensitivityReport
    from noonsim.lithography import ExposurePattern, SubstrateGrid
    from noonsim.rosetta import RosettaSweep

    p = t.config["params"]
    if t.command == "sensitivity":
        return [
            SensitivityReport(p["protocol"], int(r[0]), *map(float, r[1:]))
            for r in t.rows
        ]
    if t.command == "scaling":
        return ScalingFit(
            protocol=p["protocol"],
            mode=p["mode"],
            n_values=tuple(int(v) for v in t.column("N")),
            delta_phis=tuple(float(v) for v in t.column("delta_phi")),
            slope=t.footer["slope"],
            intercept=t.footer["intercept"],
            r_squared=t.footer["r_squared"],
        )
    if t.command == "montecarlo":
        phi_hats = t.column("phi_hat").copy()
        phi_hats.setflags(write=False)
        return MeasurementRecord(
            seed=t.config["seed"],
            protocol=p["protocol"],
            n=p["n"],
            phi_true=p["phi"],
            batches=p["batches"],
            outcomes_per_batch=p["shots"],
            phi_hats=phi_hats,
            empirical_std=t.footer["empirical_std"],
        )
    if t.command == "rosetta":
        return RosettaSweep(
            rows=t.rows.copy(),
            eq8_deviations={int(k): v for k, v in t.meta.get("eq8_deviation", {}).items()},
        )
    if t.command == "litho":
        grid = SubstrateGrid(t.meta["x_min_nm"], t.meta["x_max_nm"], p["points"])
        lam = float(p["lambda_nm"])
        out = []
        for n, col in ((p["n"], "deposition_quantum"), (1, "deposition_classical")):
            dep = t.column(col).copy()
            dep.setflags(write=False)
            out.append(ExposurePattern(grid, n, lam, dep, lam / (2 * n), lam / (4 * n)))
        return tuple(out)
    raise ValueError(f"unknown command {t.command!r}")
