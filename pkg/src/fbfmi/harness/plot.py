"""Static SVG boxplots of inclusion probabilities, one file per rate."""

from pathlib import Path
from xml.sax.saxutils import escape

COLORS = {"listwise": "#2ca02c", "imputed": "#1f77b4", "oracle": "#d62728"}
BOX_METHODS = ("listwise", "imputed")

WIDTH_PER_VAR = 70
HEIGHT = 360
LEFT, RIGHT, TOP, BOTTOM = 60, 20, 40, 50


def _y(v):
    return TOP + (1.0 - v) * (HEIGHT - TOP - BOTTOM)


def _box(x, w, s, color):
    q1, q3 = _y(s["q1"]), _y(s["q3"])
    mid = x + w / 2
    return [
        f'<line x1="{mid:.2f}" y1="{_y(s["max"]):.2f}" x2="{mid:.2f}" y2="{q3:.2f}" stroke="{color}"/>',
        f'<line x1="{mid:.2f}" y1="{q1:.2f}" x2="{mid:.2f}" y2="{_y(s["min"]):.2f}" stroke="{color}"/>',
        f'<rect x="{x:.2f}" y="{q3:.2f}" width="{w:.2f}" height="{max(q1 - q3, 0.5):.2f}" '
        f'fill="{color}" fill-opacity="0.35" stroke="{color}"/>',
        f'<line x1="{x:.2f}" y1="{_y(s["median"]):.2f}" x2="{x + w:.2f}" y2="{_y(s["median"]):.2f}" '
        f'stroke="{color}" stroke-width="2"/>',
    ]


def render_rate(summary, rate):
    variables = summary["variables"]
    corrupted = set(summary.get("corrupted", []))
    stats = {(s["method"], s["variable"]): s for s in summary["stats"] if s["rate"] == rate}
    width = LEFT + RIGHT + WIDTH_PER_VAR * len(variables)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{HEIGHT}" '
        f'viewBox="0 0 {width} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle">missing proportion {rate:g}</text>',
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{_y(0):.2f}" stroke="black"/>',
        f'<line x1="{LEFT}" y1="{_y(0):.2f}" x2="{width - RIGHT}" y2="{_y(0):.2f}" stroke="black"/>',
    ]
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        out.append(f'<text x="{LEFT - 6}" y="{_y(tick) + 4:.2f}" text-anchor="end">{tick:.2f}</text>')
        out.append(f'<line x1="{LEFT - 3}" y1="{_y(tick):.2f}" x2="{LEFT}" y2="{_y(tick):.2f}" stroke="black"/>')
    out.append(f'<text transform="translate(15 {HEIGHT / 2}) rotate(-90)" text-anchor="middle">'
               'inclusion probability</text>')

    present = [m for m in BOX_METHODS if any(k[0] == m for k in stats)]
    for i, var in enumerate(variables):
        x0 = LEFT + i * WIDTH_PER_VAR
        slot = (WIDTH_PER_VAR - 10) / max(len(present), 1)
        group = [f'<g class="variable" data-variable="{escape(var)}">']
        for j, method in enumerate(present):
            s = stats.get((method, var))
            if s is not None:
                group.extend(_box(x0 + 5 + j * slot + 4, slot - 8, s, COLORS[method]))
        oracle = stats.get(("oracle", var))
        if oracle is not None:
            cx, cy = x0 + WIDTH_PER_VAR / 2, _y(oracle["median"])
            group.append(f'<rect class="oracle" x="{cx - 4:.2f}" y="{cy - 4:.2f}" width="8" height="8" '
                         f'fill="{COLORS["oracle"]}"/>')
        label = var + ("*" if var in corrupted else "")
        group.append(f'<text x="{x0 + WIDTH_PER_VAR / 2:.2f}" y="{_y(0) + 18:.2f}" '
                     f'text-anchor="middle">{escape(label)}</text>')
        group.append("</g>")
        out.extend(group)

    legend_x = LEFT + 10
    for method in [*present, "oracle"]:
        if method == "oracle" and not any(k[0] == "oracle" for k in stats):
            continue
        out.append(f'<rect x="{legend_x}" y="{HEIGHT - 18}" width="10" height="10" fill="{COLORS[method]}"/>')
        out.append(f'<text x="{legend_x + 14}" y="{HEIGHT - 9}">{method}</text>')
        legend_x += 90
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_boxplot_svg(summary, out_dir, prefix="inclusion"):
    """Write one SVG per rate found in ``summary``; return the paths."""
    if not summary.get("stats"):
        raise ValueError("summary has no statistics to plot")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for rate in sorted({s["rate"] for s in summary["stats"]}):
        path = out_dir / f"{prefix}_rate_{rate:g}.svg"
        path.write_text(render_rate(summary, rate), encoding="utf-8")
        paths.append(path)
    return paths
