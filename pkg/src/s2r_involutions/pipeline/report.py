"""Byte-stable report files: the classification table and the covering graph."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .classify import ClassificationReport

FORMATS = ("csv", "md", "json", "dot")
CSV_COLUMNS = ("theorem_case", "base", "phi_v", "phi_h", "cover", "involution", "index", "equiv_class")
CROSS_CHECK_COLUMNS = ("base", "phi_v", "phi_h", "computed", "literal", "both_nonzero", "reference",
                       "disagreements")


def _phi_cells(values) -> tuple[str, str]:
    m = dict(values)
    return (str(m["v"]) if "v" in m else "", str(m["h"]) if "h" in m else "")


def table_rows(report: ClassificationReport) -> list[tuple[str, ...]]:
    rows = []
    for r in report.records:
        v, h = _phi_cells(r.phi_values)
        rows.append((r.theorem_case, r.base, v, h, r.cover, r.involution_label, str(r.index),
                     str(r.equivalence_class)))
    return rows


def _cross_check_rows(report: ClassificationReport) -> list[tuple[str, ...]]:
    rows = []
    for c in report.discrepancies:
        names = ("v", "h") if len(c.phi) == 2 else ("h",)
        v, h = _phi_cells(zip(names, c.phi))
        ref = "" if c.reference is None else str(int(c.reference))
        rows.append((c.base, v, h, str(int(c.computed)), str(int(c.literal)), str(int(c.both_nonzero)), ref,
                     " ".join(c.disagreements)))
    return rows


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def graph_nodes(report: ClassificationReport) -> list[str]:
    nodes = list(report.nodes)
    for r in report.records:
        for n in (r.cover, r.base):
            if n not in nodes:
                nodes.append(n)
    return nodes


def render_csv(report: ClassificationReport) -> str:
    return _csv(CSV_COLUMNS, table_rows(report))


def render_cross_check_csv(report: ClassificationReport) -> str:
    return _csv(CROSS_CHECK_COLUMNS, _cross_check_rows(report))


def _md_table(header, rows) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return lines


def render_md(report: ClassificationReport, cross_check: bool = False) -> str:
    lines = ["# Free involutions and their Z/2-index", ""]
    lines += _md_table(("case", "cover M", "involution", "base N", "phi(v)", "phi(h)", "index", "class"),
                       [(r[0], r[4], r[5], r[1], r[2], r[3], r[6], r[7]) for r in table_rows(report)])
    if cross_check:
        lines += ["", "## Cube rule cross-check", "",
                  "1 means a nonzero cup cube.  `literal` sums phi(v) and phi(h) in Z/2, "
                  "`both_nonzero` asks for both values nonzero, `reference` follows the published index.",
                  ""]
        lines += _md_table(CROSS_CHECK_COLUMNS, _cross_check_rows(report))
    return "\n".join(lines) + "\n"


def render_json(report: ClassificationReport, cross_check: bool = False) -> str:
    doc = {
        "records": [
            {
                "base": r.base,
                "phi": dict(r.phi_values),
                "cover": r.cover,
                "involution_label": r.involution_label,
                "theorem_case": r.theorem_case,
                "index": r.index,
                "equivalence_class": r.equivalence_class,
            }
            for r in report.records
        ],
        "graph": {
            "nodes": graph_nodes(report),
            "edges": [{"from": e.cover, "to": e.base, "index": e.index, "involution": e.involution}
                      for e in report.edges],
        },
    }
    if cross_check:
        doc["cross_check"] = [
            {"base": c.base, "phi": list(c.phi), "computed": c.computed, "literal": c.literal,
             "both_nonzero": c.both_nonzero, "reference": c.reference,
             "disagreements": list(c.disagreements)}
            for c in report.discrepancies
        ]
    return json.dumps(doc, indent=2) + "\n"


def render_dot(report: ClassificationReport) -> str:
    lines = ["digraph covers {", "  rankdir=LR;"]
    for n in graph_nodes(report):
        lines.append(f'  "{n}";')
    for e in report.edges:
        lines.append(f'  "{e.cover}" -> "{e.base}" [label="ind={e.index}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_reports(report: ClassificationReport, fmt: str, out_dir, cross_check: bool = False) -> list[Path]:
    """Write ``classification.<fmt>`` (and ``cross_check.csv`` when asked for
    a format that cannot hold it) into ``out_dir``."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {}
    if fmt == "csv":
        files["classification.csv"] = render_csv(report)
    elif fmt == "md":
        files["classification.md"] = render_md(report, cross_check)
    elif fmt == "json":
        files["classification.json"] = render_json(report, cross_check)
    else:
        files["classification.dot"] = render_dot(report)
    if cross_check and fmt in ("csv", "dot"):
        files["cross_check.csv"] = render_cross_check_csv(report)
    written = []
    for name, text in files.items():
        path = out / name
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        written.append(path)
    return written
