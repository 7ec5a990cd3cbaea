"""
File formats read and written by the command line.

* length spectra: JSON lines or CSV with columns length, multiplicity, word, primitive;
* sampled functions: two-column CSV whose header names the variable (r or t);
* mollified traces: a sampled-function CSV plus a JSON sidecar next to it;
* structures: signature JSON with optional generator matrices.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

import numpy as np

from orbispec.errors import InvalidInput
from orbispec.services.geodesics import LengthSpectrum, SpectrumEntry
from orbispec.services.orbisurface import HyperbolicStructure
from orbispec.services.psi import SampledFunction
from orbispec.services.wave_trace import MollifiedTrace

from .formatting import dumps_line, format_float

SPECTRUM_COLUMNS = ("length", "multiplicity", "word", "primitive")


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"Cannot read JSON from {path}: {exc}") from exc


def read_structure(path: str | Path) -> HyperbolicStructure:
    return HyperbolicStructure.from_dict(read_json(path))


def spectrum_jsonl(spectrum: LengthSpectrum) -> str:
    return "".join(dumps_line(entry.to_dict()) + "\n" for entry in spectrum)


def spectrum_csv(spectrum: LengthSpectrum) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SPECTRUM_COLUMNS)
    for entry in spectrum:
        writer.writerow(
            [format_float(entry.length), entry.multiplicity, entry.word, "true"]
        )
    return buffer.getvalue()


def read_spectrum(path: str | Path) -> LengthSpectrum:
    """Read a spectrum written as JSON lines or CSV (chosen by suffix)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"Cannot read spectrum from {path}: {exc}") from exc
    try:
        if path.suffix.lower() == ".csv":
            rows = list(csv.DictReader(io.StringIO(text)))
        else:
            rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        entries = tuple(
            SpectrumEntry(float(row["length"]), int(row["multiplicity"]), row.get("word") or "")
            for row in rows
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"Malformed spectrum file {path}: {exc}") from exc
    return LengthSpectrum(tuple(sorted(entries, key=lambda e: e.length)))


def sampled_csv(samples: SampledFunction) -> str:
    lines = [f"{samples.variable},value"]
    lines += [
        f"{format_float(x)},{format_float(y)}"
        for x, y in zip(samples.grid, samples.values, strict=True)
    ]
    return "\n".join(lines) + "\n"


def read_sampled(path: str | Path) -> SampledFunction:
    """Read a two-column CSV whose header names the variable."""
    try:
        with open(path, encoding="utf-8") as handle:
            header = handle.readline().strip().split(",")
            data = np.loadtxt(handle, delimiter=",", ndmin=2)
    except (OSError, ValueError) as exc:
        raise InvalidInput(f"Cannot read samples from {path}: {exc}") from exc
    if len(header) != 2 or data.shape[1] != 2:
        raise InvalidInput("Sample files have exactly two columns", path=str(path))
    return SampledFunction(data[:, 0], data[:, 1], header[0].strip())


def sidecar_path(path: str | Path) -> Path:
    return Path(path).with_suffix(".json")


def write_trace(trace: MollifiedTrace, path: str | Path) -> Path:
    """Write the CSV and its sidecar; returns the sidecar path."""
    path = Path(path)
    path.write_text(sampled_csv(trace.samples), encoding="utf-8")
    sidecar = sidecar_path(path)
    sidecar.write_text(dumps_line(trace.sidecar()) + "\n", encoding="utf-8")
    return sidecar


def read_trace(path: str | Path) -> MollifiedTrace:
    samples = read_sampled(path)
    if samples.variable != "t":
        raise InvalidInput("A trace file is sampled in t", variable=samples.variable)
    meta = read_json(sidecar_path(path))
    try:
        sigma = float(meta["sigma"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"Trace sidecar needs sigma: {exc}") from exc
    area = meta.get("area")
    extra = {
        k: v
        for k, v in meta.items()
        if k not in ("sigma", "area", "parts", "identity_method")
    }
    return MollifiedTrace(
        sigma=sigma,
        samples=samples,
        parts=tuple(meta.get("parts", ("identity", "singular", "smooth"))),
        area=None if area is None else float(area),
        identity_method=meta.get("identity_method", "spectral"),
        metadata=extra,
    )
