"""Hand-rolled SVG output for sweep results: axes, polylines, legend.

The sweep plot is a row of panels, one per environment size, each showing
average entanglement of formation, its consensus bound, and average
classical correlations against the gate parameter a. Everything is plain
string assembly; no plotting dependency.
"""

from __future__ import annotations

from collections import OrderedDict

PANEL_W = 320
PANEL_H = 280
MARGIN_L = 52
MARGIN_R = 16
MARGIN_T = 34
MARGIN_B = 44

_SERIES = (
    ("avg_eof", "avg EoF", "#c0392b", None),
    ("bound", "bound", "#2c3e50", "6,4"),
    ("avg_classical", "avg J", "#2980b9", None),
)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _polyline(points, color: str, dash: str | None) -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return (
        f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"{dash_attr}/>'
    )


def _panel(rows, x_off: float, y_max: float) -> list[str]:
    n = rows[0].n_env
    a_vals = [r.a for r in rows]
    a_min, a_max = min(a_vals), max(a_vals)
    a_span = (a_max - a_min) or 1.0
    plot_w = PANEL_W - MARGIN_L - MARGIN_R
    plot_h = PANEL_H - MARGIN_T - MARGIN_B

    def to_xy(a, v):
        return (
            x_off + MARGIN_L + (a - a_min) / a_span * plot_w,
            MARGIN_T + (1.0 - v / y_max) * plot_h,
        )

    parts = [
        f'<rect x="{_fmt(x_off + MARGIN_L)}" y="{MARGIN_T}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="#444" stroke-width="1"/>',
        f'<text x="{_fmt(x_off + MARGIN_L + plot_w / 2)}" y="{MARGIN_T - 12}" '
        f'text-anchor="middle" font-size="13" font-family="sans-serif">N = {n}</text>',
        f'<text x="{_fmt(x_off + MARGIN_L + plot_w / 2)}" y="{PANEL_H - 10}" '
        f'text-anchor="middle" font-size="12" font-family="sans-serif">a</text>',
    ]
    for frac in (0.0, 0.5, 1.0):
        a_tick = a_min + frac * a_span
        x, _ = to_xy(a_tick, 0.0)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{MARGIN_T + plot_h}" x2="{_fmt(x)}" '
            f'y2="{MARGIN_T + plot_h + 4}" stroke="#444" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{MARGIN_T + plot_h + 18}" text-anchor="middle" '
            f'font-size="11" font-family="sans-serif">{a_tick:g}</text>'
        )
        v_tick = frac * y_max
        _, y = to_xy(a_min, v_tick)
        parts.append(
            f'<line x1="{_fmt(x_off + MARGIN_L - 4)}" y1="{_fmt(y)}" '
            f'x2="{_fmt(x_off + MARGIN_L)}" y2="{_fmt(y)}" stroke="#444" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x_off + MARGIN_L - 8)}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-size="11" font-family="sans-serif">{v_tick:g}</text>'
        )
    for attr, _, color, dash in _SERIES:
        pts = [(r.a, getattr(r, attr)) for r in rows if getattr(r, attr) is not None]
        if pts:
            parts.append(_polyline([to_xy(a, v) for a, v in pts], color, dash))
    return parts


def sweep_plot_svg(rows) -> str:
    """Render sweep rows (grouped by n_env) as a complete SVG document."""
    groups = OrderedDict()
    for r in rows:
        groups.setdefault(r.n_env, []).append(r)
    if not groups:
        raise ValueError("no rows to plot")
    values = [
        getattr(r, attr)
        for r in rows
        for attr, _, _, _ in _SERIES
        if getattr(r, attr) is not None
    ]
    y_max = max(1.0, max(values) * 1.05)

    width = PANEL_W * len(groups)
    height = PANEL_H + 24
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    for k, panel_rows in enumerate(groups.values()):
        parts.extend(_panel(panel_rows, k * PANEL_W, y_max))
    x = MARGIN_L
    y = PANEL_H + 10
    for _, name, color, dash in _SERIES:
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        parts.append(
            f'<line x1="{x}" y1="{y}" x2="{x + 26}" y2="{y}" stroke="{color}" '
            f'stroke-width="1.5"{dash_attr}/>'
        )
        parts.append(
            f'<text x="{x + 32}" y="{y + 4}" font-size="12" font-family="sans-serif">'
            f"{name}</text>"
        )
        x += 120
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
