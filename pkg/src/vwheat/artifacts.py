"""Deterministic artifact writers: CSV snapshots, JSON reports, manifests.

Numbers are written with 12 significant digits and LF endings so that
reruns of the same configuration produce bitwise identical files. The
manifest lists every artifact under a directory with its sha256, itself
excluded.
"""

from __future__ import annotations

import hashlib
import json
import os

import numpy as np


def format_quantity(x: float) -> str:
    """12-significant-digit decimal rendering used across all artifacts."""
    return "%.12g" % float(x)


def snapshot_filename(t: float, eps: float) -> str:
    """Canonical name for a solution snapshot file."""
    return f"u_t{format_quantity(t)}_eps{format_quantity(eps)}.csv"


def _write_text(path: str, text: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def write_field_csv(path: str, x: np.ndarray, values: np.ndarray,
                    header: str = "x,u") -> None:
    """Write one grid function as a two-column CSV."""
    lines = [header]
    for xi, vi in zip(x, values):
        lines.append(f"{format_quantity(xi)},{format_quantity(vi)}")
    _write_text(path, "\n".join(lines) + "\n")


def write_snapshot_csv(path: str, grid, interior_values: np.ndarray) -> None:
    """Write a snapshot over the full closed grid, walls included as zeros."""
    full = np.zeros(grid.nx + 2)
    full[1:-1] = interior_values
    write_field_csv(path, grid.x_full, full, header="x,u")


def write_kernel_csv(path: str, kernel) -> None:
    """Export a kernel profile on its internal grid (columns x,psi)."""
    write_field_csv(path, kernel.internal_grid(), kernel.samples, header="x,psi")


def write_potential_csv(path: str, grid, potential) -> None:
    """Export regularized potential samples (columns x,q_eps)."""
    write_field_csv(path, grid.x_interior, potential.samples, header="x,q_eps")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, float) and obj != obj:  # NaN has no JSON form
        return None
    return obj


def write_json(path: str, payload: dict) -> None:
    """Write a JSON document with sorted keys and a trailing newline."""
    _write_text(path, json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")


def sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(directory: str) -> str:
    """Hash every file under a directory into manifest.json, sorted by path.

    Returns the manifest path. The manifest itself is excluded from the
    listing so consecutive invocations agree byte for byte.
    """
    entries = []
    for root, _, files in os.walk(directory):
        for name in sorted(files):
            path = os.path.join(root, name)
            rel = os.path.relpath(path, directory)
            if rel == "manifest.json":
                continue
            entries.append({"path": rel.replace(os.sep, "/"), "sha256": sha256_file(path)})
    entries.sort(key=lambda e: e["path"])
    manifest_path = os.path.join(directory, "manifest.json")
    _write_text(manifest_path, json.dumps(entries, indent=2, sort_keys=True) + "\n")
    return manifest_path
