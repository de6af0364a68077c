"""
Table and report writers.

CSV tables carry a one-line header with the column names. A collection of
tables goes either to a directory of CSV files or, when the target ends in
.h5/.hdf5, into one HDF5 file with a group per table, one dataset per
column, and the run metadata as root attributes.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Sequence, Tuple, Union

import h5py
import numpy as np

logger = logging.getLogger(__name__)

HDF5_SUFFIXES = (".h5", ".hdf5")

SEQUENCE_COLUMNS = ("n", "re", "im", "abs", "arg")
MEASURE_COLUMNS = ("angle", "weight")
ATOM_COLUMNS = ("angle", "mass")
SAMPLE_COLUMNS = ("re_z", "im_z", "re_m", "im_m")

Table = Tuple[Sequence[str], np.ndarray]


def sequence_table(seq) -> Table:
    return SEQUENCE_COLUMNS, seq.table()


def measure_tables(mu) -> Dict[str, Table]:
    return {"measure": (MEASURE_COLUMNS, mu.table()), "atoms": (ATOM_COLUMNS, mu.atom_table())}


def sample_table(z, m) -> Table:
    z = np.asarray(z, dtype=complex)
    m = np.asarray(m, dtype=complex)
    return SAMPLE_COLUMNS, np.column_stack([z.real, z.imag, m.real, m.imag])


def write_csv(path: Union[str, Path], columns: Sequence[str], rows: np.ndarray) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = np.asarray(rows, dtype=float).reshape(-1, len(columns))
    np.savetxt(path, rows, delimiter=",", header=",".join(columns), comments="", fmt="%.17g")
    return path


def write_sequence_csv(path: Union[str, Path], seq) -> Path:
    return write_csv(path, *sequence_table(seq))


def _json_default(value):
    if isinstance(value, (np.integer, np.floating, np.bool_)):
        return value.item()
    if isinstance(value, (complex, np.complexfloating)):
        return [value.real, value.imag]
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return np.stack([value.real, value.imag], axis=-1).tolist()
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def write_json(path: Union[str, Path], report: Dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(report, f, indent=2, default=_json_default, allow_nan=True)
        f.write("\n")
    return path


def write_hdf5(path: Union[str, Path], tables: Dict[str, Table],
               metadata: Dict[str, Any] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with h5py.File(path, "w") as f:
        for key, value in (metadata or {}).items():
            if value is None:
                continue
            f.attrs[key] = value if isinstance(value, (int, float, str, bool)) else json.dumps(
                value, default=_json_default)
        for name, (columns, rows) in tables.items():
            group = f.create_group(name)
            rows = np.asarray(rows, dtype=float).reshape(-1, len(columns))
            for k, column in enumerate(columns):
                group.create_dataset(column, data=rows[:, k])
            group.attrs["columns"] = ",".join(columns)
    return path


def read_hdf5(path: Union[str, Path]) -> Tuple[Dict[str, Table], Dict[str, Any]]:
    """Tables and root attributes written by write_hdf5."""
    tables = {}
    with h5py.File(path, "r") as f:
        metadata = {key: f.attrs[key] for key in f.attrs}
        for name in f.keys():
            group = f[name]
            columns = str(group.attrs["columns"]).split(",")
            rows = np.column_stack([group[c][:] for c in columns]) if len(group[columns[0]]) else \
                np.zeros((0, len(columns)))
            tables[name] = (columns, rows)
    return tables, metadata


def emit_tables(target: Union[str, Path], tables: Dict[str, Table],
                metadata: Dict[str, Any] = None) -> Sequence[Path]:
    """Write tables to an HDF5 file or, otherwise, as <name>.csv into a directory."""
    target = Path(target)
    if target.suffix.lower() in HDF5_SUFFIXES:
        written = [write_hdf5(target, tables, metadata)]
    else:
        written = [write_csv(target / f"{name}.csv", columns, rows)
                   for name, (columns, rows) in tables.items()]
    logger.info("wrote %d table(s) to %s", len(tables), target)
    return written
