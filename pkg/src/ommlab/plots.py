"""Self-contained SVG plots, byte-identical for identical input.

Hand-rolled rather than a plotting library so the output carries no
timestamps, random ids, or version strings.  Three kinds: a log-log scaling
scatter with a fitted line, and the two per-run trace polylines.
"""

from __future__ import annotations

import math

from .harness import fit_scaling, mean_generations_by_key

WIDTH, HEIGHT = 640, 440
MARGIN = 60


def _fmt(x: float) -> str:
    return f"{x:.3f}"


class _Frame:
    """Maps data coordinates onto the drawing area."""

    def __init__(self, xs, ys, log_x=False, log_y=False):
        if not xs:
            raise ValueError("nothing to plot: empty table")
        self.log_x, self.log_y = log_x, log_y
        tx = [math.log10(v) for v in xs] if log_x else list(xs)
        ty = [math.log10(v) for v in ys] if log_y else list(ys)
        self.x0, self.x1 = min(tx), max(tx)
        self.y0, self.y1 = min(ty), max(ty)
        if self.x1 == self.x0:
            self.x1 += 1.0
        if self.y1 == self.y0:
            self.y1 += 1.0

    def px(self, x: float) -> float:
        if self.log_x:
            x = math.log10(x)
        frac = (x - self.x0) / (self.x1 - self.x0)
        return MARGIN + frac * (WIDTH - 2 * MARGIN)

    def py(self, y: float) -> float:
        if self.log_y:
            y = math.log10(y)
        frac = (y - self.y0) / (self.y1 - self.y0)
        return HEIGHT - MARGIN - frac * (HEIGHT - 2 * MARGIN)


def _document(body: list[str], title: str, xlabel: str, ylabel: str) -> str:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 16}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{xlabel}</text>',
        f'<text x="18" y="{HEIGHT // 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {HEIGHT // 2})">{ylabel}</text>',
    ]
    parts.extend(body)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _polyline(frame: _Frame, xs, ys, color: str) -> str:
    pts = " ".join(
        f"{_fmt(frame.px(x))},{_fmt(frame.py(y))}" for x, y in zip(xs, ys)
    )
    return f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'


def _dots(frame: _Frame, xs, ys, color: str) -> list[str]:
    return [
        f'<circle cx="{_fmt(frame.px(x))}" cy="{_fmt(frame.py(y))}" r="3.5" '
        f'fill="{color}"/>'
        for x, y in zip(xs, ys)
    ]


def scaling_svg(rows: list[dict]) -> str:
    """Log-log mean generations vs n, one series, plus the fitted power law."""
    means = mean_generations_by_key(rows, keys=("n", "mu"))
    pts = sorted(
        ((int(n), stats["mean"]) for (n, _mu), stats in means.items()
         if stats["count"] > 0),
    )
    if not pts:
        raise ValueError("nothing to plot: empty table")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    frame = _Frame(xs, ys, log_x=True, log_y=True)
    body = _dots(frame, xs, ys, "#1f4e9c")
    if len(set(xs)) >= 3:
        fit = fit_scaling(rows, "n_pow")
        fit_ys = [
            math.exp(fit["intercept"] + fit["exponent"] * math.log(x))
            for x in xs
        ]
        body.insert(0, _polyline(frame, xs, fit_ys, "#c03a2b"))
    return _document(
        body, "Generations to full coverage", "n (log)", "mean generations (log)"
    )


def trace_svg(rows: list[dict], column: str, title: str) -> str:
    xs = [int(r["t"]) for r in rows]
    ys = [float(r[column]) for r in rows]
    if not xs:
        raise ValueError("nothing to plot: empty table")
    frame = _Frame(xs, ys)
    body = [_polyline(frame, xs, ys, "#1f4e9c")]
    return _document(body, title, "generation", column)


def emit_plot(rows: list[dict], kind: str, out_path: str) -> None:
    """Write one SVG; ``kind`` is scaling, beta_trace, or coverage_trace."""
    if kind == "scaling":
        svg = scaling_svg(rows)
    elif kind == "beta_trace":
        svg = trace_svg(rows, "beta", "Maximum cover number per generation")
    elif kind == "coverage_trace":
        svg = trace_svg(rows, "coverage_fraction", "Front coverage per generation")
    else:
        raise ValueError(f"unknown plot kind {kind!r}")
    with open(out_path, "w") as fh:
        fh.write(svg)
