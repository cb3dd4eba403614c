"""Static SVG line plots: one polyline per series, axes box, legend."""

from navsim.errors import EmptyTrace

PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
)

_WIDTH, _HEIGHT = 800.0, 600.0
_LEFT, _RIGHT, _TOP, _BOTTOM = 70.0, 20.0, 20.0, 50.0


def _extent(values) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if hi - lo <= 0.0:
        lo, hi = lo - 1.0, hi + 1.0
    margin = 0.05 * (hi - lo)
    return lo - margin, hi + margin


def render_svg_to_string(series) -> str:
    """Build the SVG document for named (x, y) polylines.

    ``series`` is a list of (name, xs, ys) with nonempty coordinate lists.
    The viewport is sized from the joint data extents with a 5% margin, so
    every data point lands inside the declared viewBox.
    """
    series = list(series)
    if not series or any(len(xs) == 0 or len(ys) == 0 for _, xs, ys in series):
        raise EmptyTrace("plotting needs at least one nonempty series")
    xmin, xmax = _extent([float(x) for _, xs, _ in series for x in xs])
    ymin, ymax = _extent([float(y) for _, _, ys in series for y in ys])
    plot_w = _WIDTH - _LEFT - _RIGHT
    plot_h = _HEIGHT - _TOP - _BOTTOM

    def sx(x: float) -> float:
        return _LEFT + (x - xmin) / (xmax - xmin) * plot_w

    def sy(y: float) -> float:
        return _TOP + (ymax - y) / (ymax - ymin) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_WIDTH:g} {_HEIGHT:g}">',
        f'<rect x="{_LEFT:g}" y="{_TOP:g}" width="{plot_w:g}" height="{plot_h:g}" '
        'fill="white" stroke="black" stroke-width="1"/>',
    ]
    for i, (name, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(f"{sx(float(x)):.2f},{sy(float(y)):.2f}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>'
        )
    # Axis extent labels.
    parts.append(
        f'<text x="{_LEFT:g}" y="{_HEIGHT - _BOTTOM + 18:g}" font-size="12">{xmin:.4g}</text>'
    )
    parts.append(
        f'<text x="{_WIDTH - _RIGHT - 40:g}" y="{_HEIGHT - _BOTTOM + 18:g}" font-size="12">{xmax:.4g}</text>'
    )
    parts.append(
        f'<text x="{_LEFT - 60:g}" y="{_HEIGHT - _BOTTOM:g}" font-size="12">{ymin:.4g}</text>'
    )
    parts.append(f'<text x="{_LEFT - 60:g}" y="{_TOP + 12:g}" font-size="12">{ymax:.4g}</text>')
    # Legend: swatch line plus name per series, top-right of the plot area.
    for i, (name, _, _) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        ly = _TOP + 16.0 + 16.0 * i
        lx = _WIDTH - _RIGHT - 150.0
        parts.append(
            f'<line x1="{lx:g}" y1="{ly:g}" x2="{lx + 20:g}" y2="{ly:g}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{lx + 26:g}" y="{ly + 4:g}" font-size="12">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_svg_plot(series, path) -> None:
    """Write the plot for named (x, y) polylines to ``path``."""
    document = render_svg_to_string(series)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(document)
