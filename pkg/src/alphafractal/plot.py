"""Sampling and static CSV/SVG output."""
from __future__ import annotations

import csv
import io
from html import escape

import numpy as np

from .core import AlphaFractalSpec
from .evaluate import depth_for_tolerance, error_bound, eval_points
from .expr import eval_expr

__all__ = ["mirror_samples", "sample_curves", "write_csv", "render_svg", "write_svg"]

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def mirror_samples(x0: float, xN: float, n: int) -> np.ndarray:
    """``n`` equally spaced points, bitwise mirror-symmetric about the midpoint.

    Sampling ``[-xN, -x0]`` gives exactly the negated, reversed samples of
    ``[x0, xN]``.
    """
    if n < 2:
        raise ValueError("need at least two samples")
    k = np.arange(n, dtype=float)
    t = (2.0 * k - (n - 1)) / (n - 1)
    c, h = 0.5 * (x0 + xN), 0.5 * (xN - x0)
    xs = c + h * t
    xs[0], xs[-1] = x0, xN
    return xs


def sample_curves(spec: AlphaFractalSpec, n: int, tol: float = 1e-8):
    """Abscissae, germ and fractal values, and the certified error bound."""
    xs = mirror_samples(*spec.interval, n)
    depth = depth_for_tolerance(spec, tol)
    return xs, eval_expr(spec.f, xs), eval_points(spec, xs, depth), error_bound(spec, depth)


def _fmt(v):
    return format(float(v), ".17g")


def write_csv(path, xs, fs, fas) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "f", "f_alpha"])
    for row in zip(xs, fs, fas):
        w.writerow([_fmt(v) for v in row])
    with open(path, "w", newline="") as fh:
        fh.write(buf.getvalue())


def _ticks(lo, hi, count=5):
    if hi == lo:
        return [lo]
    return list(np.linspace(lo, hi, count))


def render_svg(xs, series, title="", width=720, height=440) -> str:
    """Self-contained SVG line chart.

    ``series`` is a list of ``(label, ys)`` pairs sharing the abscissae ``xs``.
    """
    ml, mr, mt, mb = 70, 20, 40, 50
    pw, ph = width - ml - mr, height - mt - mb
    xs = np.asarray(xs, dtype=float)
    allys = np.concatenate([np.asarray(ys, dtype=float) for _, ys in series])
    xlo, xhi = float(xs.min()), float(xs.max())
    ylo, yhi = float(allys.min()), float(allys.max())
    if yhi == ylo:
        ylo, yhi = ylo - 0.5, yhi + 0.5
    pad = 0.05 * (yhi - ylo)
    ylo, yhi = ylo - pad, yhi + pad

    def sx(x):
        return ml + (x - xlo) / (xhi - xlo) * pw

    def sy(y):
        return mt + (yhi - y) / (yhi - ylo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14">'
                   f'{escape(title)}</text>')
    out.append(f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    for t in _ticks(xlo, xhi):
        X = sx(t)
        out.append(f'<line x1="{X:.2f}" y1="{mt + ph}" x2="{X:.2f}" y2="{mt + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{X:.2f}" y="{mt + ph + 18}" text-anchor="middle">{t:.3g}</text>')
    for t in _ticks(ylo, yhi):
        Y = sy(t)
        out.append(f'<line x1="{ml - 5}" y1="{Y:.2f}" x2="{ml}" y2="{Y:.2f}" stroke="black"/>')
        out.append(f'<text x="{ml - 8}" y="{Y + 4:.2f}" text-anchor="end">{t:.3g}</text>')
    for k, (label, ys) in enumerate(series):
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        color = COLORS[k % len(COLORS)]
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}">'
                   f'<title>{escape(label)}</title></polyline>')
        ly = mt + 16 + 18 * k
        out.append(f'<line x1="{ml + 12}" y1="{ly}" x2="{ml + 40}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{ml + 46}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, xs, series, title="") -> None:
    with open(path, "w") as fh:
        fh.write(render_svg(xs, series, title))
