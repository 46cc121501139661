"""Field and norm-record serialization.

Fields are stored as a header ``(d, n, dx)`` followed by the row-major
complex samples as ``(re, im)`` pairs.  In CSV form the header is the first
data row after a ``d,n,dx`` label row; in binary form everything is
little-endian float64.  Time-frequency fields carry two headers, position
grid first.
"""

import csv
import json
import math
import os

import numpy as np

from .field import Grid, SampledField
from .tfa import TimeFrequencyField

__all__ = [
    "save_field", "load_field", "save_tf_field", "load_tf_field",
    "norm_record", "write_records", "output_dir", "OUTPUT_ENV",
]

OUTPUT_ENV = "ORLICZMOD_OUTPUT"
_DTYPE = "<f8"


def output_dir(default="."):
    """Default output directory, taken from ``$ORLICZMOD_OUTPUT`` when set."""
    return os.environ.get(OUTPUT_ENV) or default


def _fmt(path):
    ext = os.path.splitext(str(path))[1].lower()
    return "csv" if ext == ".csv" else "bin"


def _grid_header(grid):
    return [float(grid.d), float(grid.n), float(grid.dx)]


def _grid_from(header):
    d, n, dx = header
    if d != int(d) or n != int(n):
        raise ValueError(f"malformed grid header {header}")
    return Grid(int(d), int(n), float(dx))


def _write(path, headers, values):
    flat = np.asarray(values, dtype=complex).ravel()
    if _fmt(path) == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            for h in headers:
                w.writerow(["d", "n", "dx"])
                w.writerow([int(h[0]), int(h[1]), repr(h[2])])
            w.writerow(["re", "im"])
            w.writerows((repr(float(z.real)), repr(float(z.imag))) for z in flat)
        return
    pairs = np.empty(2 * flat.size)
    pairs[0::2], pairs[1::2] = flat.real, flat.imag
    np.concatenate([np.ravel(headers), pairs]).astype(_DTYPE).tofile(path)


def _read(path, n_headers):
    if _fmt(path) == "csv":
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        headers = [[float(v) for v in rows[2 * i + 1]] for i in range(n_headers)]
        body = np.array(rows[2 * n_headers + 1:], dtype=float).reshape(-1, 2)
        return headers, body[:, 0] + 1j * body[:, 1]
    raw = np.fromfile(path, dtype=_DTYPE)
    headers = raw[:3 * n_headers].reshape(n_headers, 3).tolist()
    body = raw[3 * n_headers:]
    return headers, body[0::2] + 1j * body[1::2]


def save_field(f, path):
    """Write a `SampledField`; ``.csv`` selects the text format, anything else binary."""
    _write(path, [_grid_header(f.grid)], f.values)


def load_field(path):
    (header,), values = _read(path, 1)
    grid = _grid_from(header)
    if values.size != grid.n ** grid.d:
        raise ValueError(f"{path}: expected {grid.n ** grid.d} samples, found {values.size}")
    return SampledField(grid, values.reshape(grid.shape))


def save_tf_field(F, path):
    _write(path, [_grid_header(F.position_grid), _grid_header(F.frequency_grid)], F.values)


def load_tf_field(path):
    headers, values = _read(path, 2)
    pos, freq = (_grid_from(h) for h in headers)
    shape = pos.shape + freq.shape
    if values.size != int(np.prod(shape)):
        raise ValueError(f"{path}: sample count does not match the two grid headers")
    return TimeFrequencyField(pos, freq, values.reshape(shape))


def norm_record(norm_name, spec, value, grid, boundary_mass):
    """Record ``{norm_name, spec, value, grid, boundary_mass}`` for one norm."""
    return {"norm_name": norm_name, "spec": _finite_json(spec), "value": float(value),
            "grid": grid.describe(), "boundary_mass": float(boundary_mass)}


def _finite_json(obj):
    """Replace non-finite floats by strings so the record is strict JSON."""
    if isinstance(obj, dict):
        return {k: _finite_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite_json(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def _cell(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v


def write_records(records, path):
    """Write norm records as JSON (``.json``) or CSV (anything else)."""
    keys = ["norm_name", "spec", "value", "grid", "boundary_mass"]
    if str(path).lower().endswith(".json"):
        with open(path, "w") as fh:
            json.dump(records, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(keys)
        for rec in records:
            w.writerow([_cell(rec[k]) for k in keys])
