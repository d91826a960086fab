"""File formats: map CSV, MSR archives, comparison reports and PGM previews.

Every writer goes through a temporary file (or directory) that is renamed
into place, so readers never see a half-written result.
"""
from __future__ import annotations

import csv
import io
import json
import os
import shutil
import tempfile
from pathlib import Path

import numpy as np

from .forward import MSRMatrix
from .grid import ImagingGrid
from .scenario_io import scenario_from_document, scenario_hash, scenario_to_document

ARCHIVE_FORMAT = "halfspace-msr-archive/1"
MAP_DIGITS = "%.9g"
EXACT_DIGITS = "%.17g"


def atomic_write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- maps ---------------------------------------------------------------

def map_csv_text(image) -> str:
    x1, x2 = image.grid.x1, image.grid.x2
    lines = ["x1,x2,value"]
    for i, b in enumerate(x2):
        row = image.values[i]
        for j, a in enumerate(x1):
            lines.append(f"{MAP_DIGITS % a},{MAP_DIGITS % b},{MAP_DIGITS % row[j]}")
    return "\n".join(lines) + "\n"


def map_metadata(image, scenario=None) -> dict:
    g = image.grid
    meta = {
        "method": image.method,
        "params": image.params,
        "tag": image.tag,
        "grid": {"bounds": [[g.x1_min, g.x1_max], [g.x2_min, g.x2_max]], "step": g.step,
                 "shape": list(g.shape)},
        "provenance": image.provenance,
    }
    if scenario is not None:
        meta["scenario_hash"] = scenario_hash(scenario)
    return meta


def write_map(image, path, scenario=None) -> tuple[Path, Path]:
    """Write ``path`` (CSV) and ``path.meta.json`` next to it."""
    path = Path(path)
    meta_path = path.with_name(path.name + ".meta.json")
    atomic_write_text(path, map_csv_text(image))
    atomic_write_text(meta_path, _dump_json(map_metadata(image, scenario)))
    return path, meta_path


def read_map(path):
    """Return ``(x1, x2, values)`` columns of a map CSV."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["x1", "x2", "value"]:
            raise ValueError(f"{path}: unexpected header {header}")
        rows = np.array([[float(v) for v in r] for r in reader])
    return rows[:, 0], rows[:, 1], rows[:, 2]


def pgm_text(image) -> str:
    """8-bit ASCII (P2) preview, min-max normalized, shallowest row first."""
    v = image.values[::-1]
    lo, hi = float(v.min()), float(v.max())
    scaled = np.zeros(v.shape, dtype=int) if hi == lo else np.rint((v - lo) / (hi - lo) * 255).astype(int)
    n2, n1 = v.shape
    out = io.StringIO()
    out.write(f"P2\n{n1} {n2}\n255\n")
    for row in scaled:
        out.write(" ".join(str(int(x)) for x in row))
        out.write("\n")
    return out.getvalue()


def write_pgm(image, path) -> Path:
    return atomic_write_text(path, pgm_text(image))


# -- MSR archives -------------------------------------------------------

def _matrix_csv(m: MSRMatrix) -> str:
    lines = ["j,l,re,im"]
    for j, row in enumerate(m.data):
        for l, z in enumerate(row):
            lines.append(f"{j},{l},{EXACT_DIGITS % z.real},{EXACT_DIGITS % z.imag}")
    return "\n".join(lines) + "\n"


def write_archive(msrs, scenario, out_dir) -> Path:
    """Directory with ``manifest.json`` and one ``msr_XX.csv`` per frequency.

    An existing archive at ``out_dir`` is replaced as a whole.
    """
    out_dir = Path(out_dir)
    out_dir.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=f".{out_dir.name}.", dir=out_dir.parent))
    try:
        entries = []
        for f, m in enumerate(msrs):
            name = f"msr_{f:02d}.csv"
            (tmp / name).write_text(_matrix_csv(m))
            entries.append({
                "index": f,
                "omega": m.omega,
                "file": name,
                "shape": list(m.shape),
                "provenance": m.provenance,
                "snr_db": m.snr_db,
                "seed": m.seed,
            })
        manifest = {
            "format": ARCHIVE_FORMAT,
            "scenario": scenario_to_document(scenario),
            "scenario_hash": scenario_hash(scenario),
            "frequencies": entries,
        }
        (tmp / "manifest.json").write_text(_dump_json(manifest))
        backup = None
        if out_dir.exists():
            backup = out_dir.with_name(f".{out_dir.name}.old")
            if backup.exists():
                shutil.rmtree(backup)
            os.replace(out_dir, backup)
        os.replace(tmp, out_dir)
        if backup is not None:
            shutil.rmtree(backup)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
    return out_dir


def read_archive(path):
    """Return ``(scenario, [MSRMatrix, ...])`` from an archive directory."""
    path = Path(path)
    manifest_path = path / "manifest.json"
    if not manifest_path.is_file():
        raise FileNotFoundError(f"no MSR archive at {path} (missing manifest.json)")
    manifest = json.loads(manifest_path.read_text())
    if manifest.get("format") != ARCHIVE_FORMAT:
        raise ValueError(f"{manifest_path}: unsupported archive format {manifest.get('format')!r}")
    scenario = scenario_from_document(manifest["scenario"])
    msrs = []
    for entry in manifest["frequencies"]:
        n_obs, n_inc = entry["shape"]
        data = np.zeros((n_obs, n_inc), dtype=complex)
        with open(path / entry["file"], newline="") as fh:
            reader = csv.reader(fh)
            next(reader)
            for j, l, re_, im_ in reader:
                data[int(j), int(l)] = complex(float(re_), float(im_))
        seed = entry.get("seed")
        msrs.append(MSRMatrix(data, float(entry["omega"]), seed=seed, snr_db=entry.get("snr_db")))
    return scenario, msrs


# -- comparison reports -------------------------------------------------

def report_csv_text(table) -> str:
    n_truth = len(table.rows[0].report.truths) if table.rows else 0
    header = ["method", "seed"] + [f"err_z{i + 1}" for i in range(n_truth)] + ["mean_error"]
    lines = [",".join(header)]
    for r in table.rows:
        errs = ["" if d is None else MAP_DIGITS % d for d in r.report.distances]
        lines.append(",".join([r.method, str(r.seed)] + errs + [MAP_DIGITS % r.report.mean]))
    return "\n".join(lines) + "\n"


def write_report(table, path) -> Path:
    return atomic_write_text(path, report_csv_text(table))


def grid_from_metadata(meta: dict) -> ImagingGrid:
    (a1, b1), (a2, b2) = meta["grid"]["bounds"]
    return ImagingGrid(a1, b1, a2, b2, meta["grid"]["step"])
