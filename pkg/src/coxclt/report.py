"""CSV / JSON / SVG emission for moment tables and random-model series."""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Sequence

from .moments import MomentReport
from .random_model import ConvergenceSeries

MOMENT_HEADER = ["N", "k", "moment_num", "moment_den", "moment_float", "limit", "abs_diff"]
SERIES_HEADER = [
    "N", "k", "partition", "crossings", "x_num", "x_den", "x_float",
    "expectation", "variance_bound", "within_3sigma",
]


def frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def moment_rows(report: MomentReport) -> list[list]:
    return [
        [r.N, r.k, r.moment.numerator, r.moment.denominator, repr(r.moment_float), frac(r.limit), frac(r.abs_diff)]
        for r in report.rows
    ]


def moment_csv(report: MomentReport) -> str:
    return _csv(MOMENT_HEADER, moment_rows(report))


def moment_json(report: MomentReport) -> str:
    rows = [dict(zip(MOMENT_HEADER, row)) for row in moment_rows(report)]
    return json.dumps({"metadata": report.metadata(), "rows": rows}, indent=2, sort_keys=True) + "\n"


def series_rows(series: Sequence[ConvergenceSeries]) -> list[list]:
    out = []
    for s in series:
        v = s.partition
        for r in s.rows:
            out.append([
                r.N, v.k, str(v), v.crossing_number, r.value.numerator, r.value.denominator,
                repr(float(r.value)), frac(r.expectation), frac(r.variance_bound), int(r.within()),
            ])
    return out


def series_csv(series: Sequence[ConvergenceSeries]) -> str:
    return _csv(SERIES_HEADER, series_rows(series))


def series_json(series: Sequence[ConvergenceSeries], summary: list[dict], metadata: dict) -> str:
    rows = [dict(zip(SERIES_HEADER, row)) for row in series_rows(series)]
    doc = {"metadata": metadata, "rows": rows, "summary": summary}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def convergence_svg(points: dict[int, list[tuple[int, float]]], title: str = "") -> str:
    """Log-log chart of |moment - limit| against N, one polyline per k.

    Each polyline carries ``data-k`` and ``data-values`` ("N:diff;...") so the
    numbers can be read back without inverting the axis transform.  Zero
    differences cannot sit on a log axis and are left out of the drawn points.
    """
    width, height, pad = 640, 420, 60
    drawable = [(n, d) for pts in points.values() for n, d in pts if d > 0]
    if drawable:
        xs = [math.log10(n) for n, _ in drawable]
        ys = [math.log10(d) for _, d in drawable]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
    else:
        x0 = y0 = 0.0
        x1 = y1 = 1.0
    x1 = x1 if x1 > x0 else x0 + 1
    y1 = y1 if y1 > y0 else y0 + 1

    def sx(n):
        return pad + (math.log10(n) - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(d):
        return height - pad - (math.log10(d) - y0) / (y1 - y0) * (height - 2 * pad)

    colours = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<title>{title}</title>',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{width / 2}" y="{height - 15}" text-anchor="middle">N (log scale)</text>',
        f'<text x="15" y="{height / 2}" transform="rotate(-90 15 {height / 2})" text-anchor="middle">|moment - limit| (log scale)</text>',
    ]
    for i, (k, pts) in enumerate(sorted(points.items())):
        values = ";".join(f"{n}:{d!r}" for n, d in pts)
        drawn = " ".join(f"{sx(n):.2f},{sy(d):.2f}" for n, d in pts if d > 0)
        colour = colours[i % len(colours)]
        lines.append(
            f'<polyline data-k="{k}" data-values="{values}" points="{drawn}" fill="none" stroke="{colour}" stroke-width="2"/>'
        )
        lines.append(f'<text x="{width - pad + 5}" y="{pad + 18 * i}" fill="{colour}">k={k}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def moment_svg(report: MomentReport) -> str:
    points: dict[int, list[tuple[int, float]]] = {}
    for r in report.rows:
        points.setdefault(r.k, []).append((r.N, float(r.abs_diff)))
    return convergence_svg(points, f"{report.family} moments")
