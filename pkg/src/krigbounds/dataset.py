"""External I/O sample files: plain CSV with a two-line header.

Line 1 names the columns: ``param:<name>`` for each input parameter, then
``theta:<angle-in-degrees>`` for each response sample.  Line 2 carries roles:
under each param column ``nominal=<v>;delta=<d>`` (or
``nominal=<v>;lo=<a>;hi=<b>`` for an explicit interval), under the theta
columns an optional cut label such as ``cut=phi=0 deg`` (first non-empty cell
wins).  Every following row holds N input values and K output values.
Numbers are written with full round-trip precision.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .interval import Interval, IntervalVector
from .validation import find_duplicate_rows


@dataclass
class ExternalDataset:
    """Validated I/O samples of a system with unknown transfer function."""

    param_names: list[str]
    nominal: np.ndarray          # (N,)
    deltas: np.ndarray           # (N,) relative tolerances (nan when interval given)
    intervals: dict[int, Interval] = field(default_factory=dict)
    inputs: np.ndarray = None    # (S, N)
    outputs: np.ndarray = None   # (S, K)
    theta_grid_deg: np.ndarray = None  # (K,)
    cut_label: str = ""

    @property
    def n_params(self) -> int:
        return len(self.param_names)

    @property
    def n_samples(self) -> int:
        return self.inputs.shape[0]

    @property
    def n_grid(self) -> int:
        return self.theta_grid_deg.shape[0]

    def box(self) -> IntervalVector:
        """Parameter box from the nominal values, tolerances and overrides."""
        half = np.where(np.isnan(self.deltas), 0.0, np.abs(self.nominal) * self.deltas)
        lo = self.nominal - half
        hi = self.nominal + half
        for n, entry in self.intervals.items():
            lo[n], hi[n] = entry.lo, entry.hi
        return IntervalVector(lo, hi)


def _parse_meta(cell: str, col: int):
    fields = {}
    for part in cell.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ValueError(f"column {col}: malformed metadata field {part!r}")
        key, _, value = part.partition("=")
        fields[key.strip()] = value.strip()
    if "nominal" not in fields:
        raise ValueError(f"column {col}: parameter metadata needs a nominal= field")
    nominal = float(fields["nominal"])
    if "lo" in fields or "hi" in fields:
        if not ("lo" in fields and "hi" in fields):
            raise ValueError(f"column {col}: interval metadata needs both lo= and hi=")
        return nominal, float("nan"), Interval(float(fields["lo"]), float(fields["hi"]))
    return nominal, float(fields.get("delta", "0")), None


def read_dataset(path) -> ExternalDataset:
    """Ingest and validate an external dataset file."""
    path = Path(path)
    with path.open(newline="") as handle:
        rows = list(csv.reader(handle))
    if len(rows) < 3:
        raise ValueError(f"{path}: need a two-line header plus at least one sample row")

    names = [cell.strip() for cell in rows[0]]
    n_params = 0
    while n_params < len(names) and names[n_params].startswith("param:"):
        n_params += 1
    if n_params == 0:
        raise ValueError(f"{path}: line 1 must start with param:<name> columns")
    theta = []
    for col in range(n_params, len(names)):
        if not names[col].startswith("theta:"):
            raise ValueError(f"{path}: line 1 column {col}: expected theta:<deg>, got {names[col]!r}")
        theta.append(float(names[col].split(":", 1)[1]))
    if not theta:
        raise ValueError(f"{path}: no theta:<deg> columns found")
    param_names = [name.split(":", 1)[1] for name in names[:n_params]]

    meta = rows[1]
    if len(meta) != len(names):
        raise ValueError(f"{path}: line 2 has {len(meta)} cells, header has {len(names)}")
    nominal = np.empty(n_params)
    deltas = np.empty(n_params)
    intervals: dict[int, Interval] = {}
    for col in range(n_params):
        nominal[col], deltas[col], override = _parse_meta(meta[col], col)
        if override is not None:
            intervals[col] = override
    cut_label = ""
    for cell in meta[n_params:]:
        cell = cell.strip()
        if cell:
            cut_label = cell.removeprefix("cut=")
            break

    table = np.empty((len(rows) - 2, len(names)))
    for i, row in enumerate(rows[2:], start=3):
        if len(row) != len(names):
            raise ValueError(f"{path}: line {i} has {len(row)} cells, expected {len(names)}")
        for j, cell in enumerate(row):
            try:
                table[i - 3, j] = float(cell)
            except ValueError as err:
                raise ValueError(f"{path}: line {i} column {j}: not a number: {cell!r}") from err
    if not np.isfinite(table).all():
        i, j = np.argwhere(~np.isfinite(table))[0]
        raise ValueError(f"{path}: line {i + 3} column {j}: non-finite value")

    inputs = table[:, :n_params]
    dup = find_duplicate_rows(inputs)
    if dup is not None:
        raise ValueError(f"{path}: duplicate input rows at lines {dup[0] + 3} and {dup[1] + 3}")
    return ExternalDataset(
        param_names=param_names,
        nominal=nominal,
        deltas=deltas,
        intervals=intervals,
        inputs=inputs,
        outputs=table[:, n_params:],
        theta_grid_deg=np.asarray(theta, dtype=float),
        cut_label=cut_label,
    )


def write_dataset(path, dataset: ExternalDataset) -> None:
    """Write a dataset in the ingest format (values at full precision)."""
    path = Path(path)
    header = [f"param:{name}" for name in dataset.param_names]
    header += [f"theta:{repr(float(t))}" for t in dataset.theta_grid_deg]
    meta = []
    for n in range(dataset.n_params):
        if n in dataset.intervals:
            ivn = dataset.intervals[n]
            meta.append(f"nominal={dataset.nominal[n]!r};lo={ivn.lo!r};hi={ivn.hi!r}")
        else:
            meta.append(f"nominal={dataset.nominal[n]!r};delta={dataset.deltas[n]!r}")
    cut = f"cut={dataset.cut_label}" if dataset.cut_label else ""
    meta += [cut] + [""] * (dataset.n_grid - 1)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerow(meta)
        for s in range(dataset.n_samples):
            row = [repr(float(v)) for v in dataset.inputs[s]]
            row += [repr(float(v)) for v in dataset.outputs[s]]
            writer.writerow(row)


def read_validation_curves(path, n_params: int, n_grid: int) -> np.ndarray:
    """Read a validation sample file (same format); returns its (m, K) curves."""
    ds = read_dataset(path)
    if ds.n_params != n_params or ds.n_grid != n_grid:
        raise ValueError(
            f"{path}: validation file shape ({ds.n_params} params, {ds.n_grid} angles) "
            f"does not match the training dataset ({n_params}, {n_grid})"
        )
    return ds.outputs
