"""CSV/JSON writers and readers for spectra, reports and analysis tables.

Rational arguments travel as integer pairs; ``xi_real`` is written for
plotting only and is never read back. Floats are written with ``repr`` so
every file reconstructs the in-memory values exactly.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Optional, Sequence, TextIO

from gaussfactor import __version__
from gaussfactor.rational import ReducedFraction
from gaussfactor.strategies import FactorReport, SpectrumSample

SPECTRUM_COLUMNS = ("xi_num", "xi_den", "xi_real", "re", "im", "mag2")
GHOST_COLUMNS = ("M", "max_nonfactor_mag", "ghost_count")
SCALING_COLUMNS = ("N", "M_min", "ratio")
DEGENERACY_COLUMNS = ("value_num", "value_den", "D")


def make_header(**fields: Any) -> dict:
    header = {"version": __version__}
    header.update(fields)
    return header


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def spectrum_rows(samples: Iterable[SpectrumSample]) -> list[dict]:
    rows = []
    for s in samples:
        rows.append(
            {
                "xi_num": s.argument.numerator,
                "xi_den": s.argument.denominator,
                "xi_real": float(s.argument),
                "re": s.amplitude.real,
                "im": s.amplitude.imag,
                "mag2": s.magnitude_sq,
            }
        )
    return rows


def format_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        cells = []
        for col in columns:
            if col == "xi_real":
                cells.append(format(row[col], ".17g"))
            else:
                cells.append(_cell(row[col]))
        writer.writerow(cells)
    return buf.getvalue()


def format_json(header: dict, rows: Optional[Sequence[dict]] = None, report: Optional[dict] = None) -> str:
    doc: dict[str, Any] = {"header": header}
    if rows is not None:
        doc["rows"] = list(rows)
    if report is not None:
        doc["report"] = report
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def format_spectrum(samples: Sequence[SpectrumSample], header: dict, fmt: str = "csv") -> str:
    rows = spectrum_rows(samples)
    if fmt == "csv":
        return format_csv(rows, SPECTRUM_COLUMNS)
    return format_json(header, rows=rows)


def report_dict(report: FactorReport, wall_time: Optional[float] = None) -> dict:
    out = {
        "n": report.n,
        "method": report.method,
        "factors": list(report.factors),
        "samples_evaluated": report.samples_evaluated,
        "m_used": report.m_used,
        "ghost_candidates": report.ghost_candidates,
        "peaks": [
            {
                "xi_num": p.argument.numerator,
                "xi_den": p.argument.denominator,
                "peak_class": p.peak_class,
                "candidate_factor": p.candidate_factor,
                "verified": p.verified,
            }
            for p in report.peaks
        ],
    }
    if wall_time is not None:
        out["wall_time_s"] = wall_time
    return out


def _parse_csv(text: str) -> tuple[list[str], list[dict]]:
    reader = csv.DictReader(io.StringIO(text))
    return list(reader.fieldnames or []), list(reader)


def parse_spectrum(text: str) -> tuple[Optional[dict], list[SpectrumSample]]:
    """Rebuild samples from CSV or JSON spectrum output.

    Returns ``(header, samples)``; CSV files carry no header object.
    """
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        header, rows = doc["header"], doc["rows"]
    else:
        header = None
        _, rows = _parse_csv(text)
    samples = [
        SpectrumSample(
            ReducedFraction(int(r["xi_num"]), int(r["xi_den"])),
            complex(float(r["re"]), float(r["im"])),
        )
        for r in rows
    ]
    return header, samples


def read_spectrum(stream: TextIO) -> tuple[Optional[dict], list[SpectrumSample]]:
    return parse_spectrum(stream.read())


def parse_table(text: str) -> tuple[Optional[dict], list[dict]]:
    """Read a CSV or JSON table back as typed rows (ints, floats, ``None``)."""
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        return doc["header"], doc.get("rows", [])
    _, rows = _parse_csv(text)
    return None, [{k: _typed(v) for k, v in row.items()} for row in rows]


def _typed(value: str):
    if value == "":
        return None
    try:
        return int(value)
    except ValueError:
        return float(value)
