"""Panel ingestion from manifest files and JSON serialization of results.

A manifest is a JSON file describing the space, the number of periods and
one record per unit with its treatment path and per-period outcomes. Each
outcome is either inline data or a path (relative to the manifest) to a data
file in the declared format.
"""

import csv
import json
from pathlib import Path

import numpy as np

from .errors import (
    InvariantViolationError,
    MissingOutcomeError,
    ParseError,
)
from .panel import PanelDataset
from .spaces.matrix import SymmetricMatrixPoint, KIND_FREE
from .spaces.sphere import UnitCompositionPoint, embed_composition, unembed
from .spaces.wasserstein import QuantileCurve, quantile_from_samples

SCHEMA_VERSION = 1

FORMAT_SAMPLES = "samples-csv"
FORMAT_QUANTILE = "quantile-csv"
FORMAT_COMPOSITION = "composition-csv"
FORMAT_MATRIX_CSV = "matrix-csv"
FORMAT_MATRIX_JSON = "matrix-json"
FORMAT_INLINE = "inline"

_SPACE_FORMATS = {
    "wasserstein": {FORMAT_SAMPLES, FORMAT_QUANTILE, FORMAT_INLINE},
    "sphere": {FORMAT_COMPOSITION, FORMAT_INLINE},
    "frobenius": {FORMAT_MATRIX_CSV, FORMAT_MATRIX_JSON, FORMAT_INLINE},
}


def _read_numbers_csv(path):
    try:
        rows = []
        with open(path, newline="") as fh:
            for line_no, row in enumerate(csv.reader(fh), start=1):
                cells = [cell for cell in row if cell.strip()]
                if not cells:
                    continue
                try:
                    rows.append([float(cell) for cell in cells])
                except ValueError as exc:
                    raise ParseError(f"{path}:{line_no}: {exc}") from None
        return rows
    except OSError as exc:
        raise MissingOutcomeError(f"cannot read {path}: {exc}") from None


def _build_point(space, data, manifest, where):
    try:
        if space == "wasserstein":
            fmt = manifest.get("format", FORMAT_QUANTILE)
            flat = np.asarray(data, dtype=float).ravel()
            if fmt == FORMAT_SAMPLES:
                return quantile_from_samples(
                    flat, manifest.get("grid_size", 100)
                )
            return QuantileCurve(flat)
        if space == "sphere":
            return embed_composition(np.asarray(data, dtype=float).ravel())
        return SymmetricMatrixPoint(
            np.asarray(data, dtype=float),
            kind=manifest.get("matrix_kind", KIND_FREE),
        )
    except InvariantViolationError as exc:
        raise InvariantViolationError(f"{where}: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def _load_outcome(space, spec, manifest, base_dir, where):
    if spec is None:
        raise MissingOutcomeError(f"{where}: outcome missing")
    if isinstance(spec, str):
        path = Path(base_dir) / spec
        fmt = manifest.get("format", FORMAT_INLINE)
        if fmt == FORMAT_MATRIX_JSON:
            try:
                with open(path) as fh:
                    data = json.load(fh)
            except OSError as exc:
                raise MissingOutcomeError(f"{where}: {exc}") from None
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path}: {exc}") from None
        else:
            rows = _read_numbers_csv(path)
            if fmt in (FORMAT_SAMPLES, FORMAT_QUANTILE, FORMAT_COMPOSITION):
                data = [x for row in rows for x in row]
            else:
                data = rows
        return _build_point(space, data, manifest, where)
    return _build_point(space, spec, manifest, where)


def load_panel(manifest_path):
    """Load a PanelDataset from a manifest file, validating all invariants."""
    manifest_path = Path(manifest_path)
    try:
        with open(manifest_path) as fh:
            manifest = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read manifest: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{manifest_path}: invalid JSON: {exc}") from None

    space = manifest.get("space")
    if space not in _SPACE_FORMATS:
        raise ParseError(f"unknown or missing space {space!r}")
    fmt = manifest.get("format", FORMAT_INLINE)
    if fmt not in _SPACE_FORMATS[space]:
        raise ParseError(f"format {fmt!r} is not valid for space {space!r}")
    units = manifest.get("units")
    if not units:
        raise ParseError("manifest has no units")
    periods = manifest.get("periods")
    if periods is None:
        raise ParseError("manifest lacks 'periods'")

    base_dir = manifest_path.parent
    outcomes, treatment, ids = [], [], []
    for k, unit in enumerate(units):
        uid = unit.get("id", f"unit{k}")
        treat = unit.get("treatment")
        if treat is None or len(treat) != periods:
            raise ParseError(
                f"unit {uid}: treatment must list {periods} indicators"
            )
        outs = unit.get("outcomes")
        if outs is None or len(outs) != periods:
            raise MissingOutcomeError(
                f"unit {uid}: expected {periods} outcomes, got "
                f"{0 if outs is None else len(outs)}"
            )
        row = [
            _load_outcome(space, spec, manifest, base_dir, f"unit {uid} period {t}")
            for t, spec in enumerate(outs)
        ]
        outcomes.append(tuple(row))
        treatment.append(list(treat))
        ids.append(uid)
    return PanelDataset(tuple(outcomes), np.array(treatment), unit_ids=tuple(ids))


def save_panel(panel, manifest_path, fmt=FORMAT_INLINE, matrix_kind=None):
    """Write a panel back to a manifest (plus per-cell data files if not inline)."""
    manifest_path = Path(manifest_path)
    space = panel.space_id
    if fmt not in _SPACE_FORMATS[space] or fmt == FORMAT_SAMPLES:
        raise ValueError(f"cannot save space {space!r} in format {fmt!r}")
    manifest = {
        "space": space,
        "periods": panel.n_periods,
        "format": fmt,
        "units": [],
    }
    if space == "wasserstein":
        manifest["grid_size"] = panel.outcomes[0][0].grid_size
    if space == "frobenius":
        manifest["matrix_kind"] = matrix_kind or panel.outcomes[0][0].kind
    base_dir = manifest_path.parent
    for i in range(panel.n_units):
        uid = str(panel._name(i))
        record = {
            "id": uid,
            "treatment": [int(x) for x in panel.treatment[i]],
            "outcomes": [],
        }
        for t in range(panel.n_periods):
            point = panel.outcomes[i][t]
            data = _point_data(point)
            if fmt == FORMAT_INLINE:
                record["outcomes"].append(data)
                continue
            ext = "json" if fmt == FORMAT_MATRIX_JSON else "csv"
            rel = f"{manifest_path.stem}_{uid}_t{t}.{ext}"
            _write_data_file(base_dir / rel, data, fmt)
            record["outcomes"].append(rel)
        manifest["units"].append(record)
    with open(manifest_path, "w") as fh:
        json.dump(manifest, fh, indent=1)
    return manifest_path


def _point_data(point):
    if point.space_id == "wasserstein":
        return [float(x) for x in point.values]
    if point.space_id == "sphere":
        return [float(x) for x in unembed(point)]
    return [[float(x) for x in row] for row in point.entries]


def _write_data_file(path, data, fmt):
    if fmt == FORMAT_MATRIX_JSON:
        with open(path, "w") as fh:
            json.dump(data, fh)
        return
    rows = data if fmt == FORMAT_MATRIX_CSV else [data]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in rows:
            writer.writerow([repr(float(x)) for x in row])


def point_to_jsonable(point):
    """Serialize a point; floats round-trip exactly through json."""
    if point.space_id == "wasserstein":
        return {"space": "wasserstein", "quantiles": [float(x) for x in point.values]}
    if point.space_id == "sphere":
        return {
            "space": "sphere",
            "coords": [float(x) for x in point.coords],
            "shares": [float(x) for x in unembed(point)],
        }
    return {
        "space": "frobenius",
        "kind": point.kind,
        "entries": [[float(x) for x in row] for row in point.entries],
    }


def gatt_to_jsonable(estimate, space):
    means = {
        f"nu_{d}{t}": point_to_jsonable(p) for (d, t), p in sorted(estimate.means.items())
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "space": space,
        "estimate": {
            "start": point_to_jsonable(estimate.effect.start),
            "end": point_to_jsonable(estimate.effect.end),
            "magnitude": estimate.magnitude,
            "means": means,
        },
    }


def staggered_to_jsonable(results, space, delta, comparison):
    return {
        "schema_version": SCHEMA_VERSION,
        "space": space,
        "delta": delta,
        "comparison": comparison,
        "cells": [
            {
                "g": r.cell.g,
                "t": r.cell.t,
                "estimator_form": r.estimator_form,
                "magnitude": r.magnitude,
                "effect": {
                    "start": point_to_jsonable(r.effect.start),
                    "end": point_to_jsonable(r.effect.end),
                },
                "beta_path": [point_to_jsonable(p) for p in r.beta_path],
            }
            for r in results
        ],
    }


def report_to_jsonable(report):
    return {
        "schema_version": SCHEMA_VERSION,
        "space": report.space,
        "seed": report.seed,
        "q": report.q,
        "n_values": list(report.n_values),
        "errors": {str(n): errs for n, errs in report.errors.items()},
        "mean_error": {str(n): e for n, e in report.mean_error.items()},
        "excluded": {str(n): c for n, c in report.excluded.items()},
        "slope": report.slope,
        "intercept": report.intercept,
    }


def write_errors_csv(report, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "run", "error"])
        for n in sorted(report.errors):
            for run, err in enumerate(report.errors[n]):
                writer.writerow([n, run, repr(err)])
