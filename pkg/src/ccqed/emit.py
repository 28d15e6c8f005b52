"""
CSV / JSON / gnuplot output for sweeps and phase diagrams.

CSV columns (one row per grid point, ``.`` decimal separator, 17
significant digits so every float round-trips)::

    delta_over_g,hop_over_g,energy,gap,degenerate,S_site,S_atom,S_cavity,
    S_atoms,S_cross,mean_n1,var_n1,mean_na1,var_na1,status

``degenerate`` is 0/1, ``status`` one of ok/degenerate/failed, and failed
points carry ``nan``. Phase boundaries go to ``<stem>_boundary_<name>.csv``
with columns ``segment,delta_over_g,hop_over_g``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .sweep import PhaseDiagram, SweepRow

SCHEMA_VERSION = 1
CSV_HEADER = (
    "delta_over_g", "hop_over_g", "energy", "gap", "degenerate",
    "S_site", "S_atom", "S_cavity", "S_atoms", "S_cross",
    "mean_n1", "var_n1", "mean_na1", "var_na1", "status",
)
BOUNDARY_HEADER = ("segment", "delta_over_g", "hop_over_g")

_NUMBER = {"type": ["number", "null"]}
JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "params", "rows"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "params": {"type": "object"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": list(CSV_HEADER),
                "additionalProperties": False,
                "properties": {
                    **{k: _NUMBER for k in CSV_HEADER},
                    "degenerate": {"type": "boolean"},
                    "status": {"enum": ["ok", "degenerate", "failed"]},
                },
            },
        },
        "boundaries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "segments"],
                "properties": {
                    "name": {"type": "string"},
                    "segments": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "items": {"type": "array", "items": {"type": "number"},
                                      "minItems": 2, "maxItems": 2},
                        },
                    },
                },
            },
        },
    },
}


class EmitError(OSError):
    pass


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


def _csv_fields(row: SweepRow) -> list[str]:
    out = []
    for name in CSV_HEADER:
        val = getattr(row, name)
        if name == "degenerate":
            out.append("1" if val else "0")
        elif name == "status":
            out.append(val)
        else:
            out.append(fmt_float(val))
    return out


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(_csv_fields(row))
    return buf.getvalue()


def rows_from_csv(text: str) -> list[SweepRow]:
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    rows = []
    for rec in reader:
        vals = dict(zip(header, rec))
        kwargs = {k: float(v) for k, v in vals.items() if k not in ("degenerate", "status")}
        rows.append(SweepRow(**kwargs, degenerate=vals["degenerate"] == "1",
                             status=vals["status"]))
    return rows


def _json_number(x):
    return float(x) if math.isfinite(x) else None


def _row_to_json(row: SweepRow) -> dict:
    out = {}
    for name in CSV_HEADER:
        val = getattr(row, name)
        out[name] = val if name in ("degenerate", "status") else _json_number(val)
    return out


def boundaries_payload(boundaries: dict) -> list[dict]:
    return [
        {"name": name, "segments": [[[float(d), float(a)] for d, a in seg] for seg in segs]}
        for name, segs in boundaries.items()
    ]


def to_json(rows, params: dict | None = None, boundaries: dict | None = None) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "params": params or {},
        "rows": [_row_to_json(r) for r in rows],
    }
    if boundaries is not None:
        doc["boundaries"] = boundaries_payload(boundaries)
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def rows_from_json(text: str) -> list[SweepRow]:
    doc = json.loads(text)
    import jsonschema

    jsonschema.validate(doc, JSON_SCHEMA)
    rows = []
    for rec in doc["rows"]:
        kwargs = {k: (math.nan if v is None else v) for k, v in rec.items()}
        rows.append(SweepRow(**kwargs))
    return rows


def boundary_to_csv(polylines) -> str:
    lines = [",".join(BOUNDARY_HEADER)]
    for k, seg in enumerate(polylines):
        lines.extend(f"{k},{fmt_float(d)},{fmt_float(a)}" for d, a in seg)
    return "\n".join(lines) + "\n"


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise EmitError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def boundary_path(out: Path, name: str) -> Path:
    return out.with_name(f"{out.stem}_boundary_{name}.csv")


def sweep_gnuplot(csv_name: str, title: str = "") -> str:
    cols = ["S_site", "S_atom", "S_cavity", "S_atoms", "S_cross"]
    plots = ", \\\n     ".join(
        f"'{csv_name}' using 1:{CSV_HEADER.index(c) + 1} with lines title '{c}'" for c in cols
    )
    return (
        "# regenerate: gnuplot <this script>\n"
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        f"set title '{title}'\n"
        "set xlabel 'Delta / g'\n"
        "set ylabel 'entropy (bits)'\n"
        "set yrange [0:*]\n"
        f"plot {plots}\n"
    )


# (delta/g, A/g) anchors for region labels on the default phase grid
REGION_LABELS = (
    ("atomic insulator", -20.0, 0.03),
    ("polaritonic insulator", 0.0, 0.03),
    ("photonic superfluid", 5.0, 3.0),
    ("polaritonic superfluid", -14.0, 14.0),
)


def phase_gnuplot(csv_name: str, boundary_names: dict[str, str]) -> str:
    var_col = CSV_HEADER.index("var_n1") + 1
    labels = "\n".join(
        f"set label {k + 1} '{text}' at {d},{a} front center"
        for k, (text, d, a) in enumerate(REGION_LABELS)
    )
    extra = "".join(
        f", \\\n     '{path}' using 2:3:(0) with lines lw 2 title '{name} boundary'"
        for name, path in boundary_names.items()
    )
    return (
        "# regenerate: gnuplot <this script>\n"
        "set datafile separator ','\n"
        "set view map\n"
        "set logscale y\n"
        "set xlabel 'Delta / g'\n"
        "set ylabel 'A / g'\n"
        "set cblabel 'var(n_1)'\n"
        f"{labels}\n"
        f"splot '{csv_name}' every ::1 using 1:2:{var_col} with points pt 5 ps 0.6 palette "
        f"notitle{extra}\n"
    )


def emit(result, fmt: str = "csv", destination=None, params: dict | None = None,
         gnuplot: bool = False, plot: bool = False, stream=None) -> list[Path]:
    """Write a sweep (list of rows) or a :class:`PhaseDiagram`.

    With ``destination=None`` the table goes to ``stream`` and no side files
    are produced. Returns the paths written.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    diagram = result if isinstance(result, PhaseDiagram) else None
    rows = diagram.rows if diagram else list(result)
    bounds = diagram.boundaries if diagram else None
    body = rows_to_csv(rows) if fmt == "csv" else to_json(rows, params, bounds)
    if destination is None:
        if stream is None:
            import sys
            stream = sys.stdout
        stream.write(body)
        return []

    out = Path(destination)
    written = [_write(out, body)]
    side = {}
    if diagram:
        for name, segs in diagram.boundaries.items():
            side[name] = _write(boundary_path(out, name), boundary_to_csv(segs))
            written.append(side[name])
    if gnuplot:
        if fmt != "csv":
            raise ValueError("gnuplot scripts reference the CSV output; use --format csv")
        script = (phase_gnuplot(out.name, {k: p.name for k, p in side.items()}) if diagram
                  else sweep_gnuplot(out.name, title=_title(rows)))
        written.append(_write(out.with_suffix(".gp"), script))
    if plot:
        from . import plotting

        try:
            if diagram:
                written.append(plotting.phase_figure(diagram, out.with_suffix(".png")))
            else:
                written.append(plotting.entropy_figure(rows, out.with_suffix(".png")))
        except OSError as exc:
            raise EmitError(f"cannot write {out.with_suffix('.png')}: {exc}") from exc
    return written


def _title(rows) -> str:
    hops = sorted({r.hop_over_g for r in rows})
    return f"A = {hops[0]:g} g" if len(hops) == 1 else ""
