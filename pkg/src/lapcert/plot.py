"""Self-contained SVG scatter of eigenvalue drift against boundary norm."""

from __future__ import annotations

from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 480
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 40, 60


def _ticks(hi: float, count: int = 5) -> list[float]:
    return [hi * i / count for i in range(count + 1)]


def scatter_svg(pairs, title: str = "Eigenvalue drift vs boundary norm") -> str:
    """SVG text with one circle per (x, y) pair and the dashed line y = 2x."""
    xs = [x for x, _ in pairs]
    ys = [y for _, y in pairs]
    x_hi = 1.25 * max(xs, default=1.0) or 1.0
    y_hi = 1.05 * max([2 * x_hi] + ys)
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(x):
        return LEFT + pw * x / x_hi

    def sy(y):
        return TOP + ph * (1 - y / y_hi)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.2f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<line x1="{LEFT}" y1="{TOP + ph}" x2="{LEFT + pw}" y2="{TOP + ph}" stroke="black"/>',
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + ph}" stroke="black"/>',
    ]
    for t in _ticks(x_hi):
        out.append(f'<line x1="{sx(t):.2f}" y1="{TOP + ph}" x2="{sx(t):.2f}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(t):.2f}" y="{TOP + ph + 18}" text-anchor="middle">{t:.3g}</text>')
    for t in _ticks(y_hi):
        out.append(f'<line x1="{LEFT - 5}" y1="{sy(t):.2f}" x2="{LEFT}" y2="{sy(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{sy(t) + 4:.2f}" text-anchor="end">{t:.3g}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.2f}" y="{HEIGHT - 15}" text-anchor="middle">boundary norm</text>')
    out.append(f'<text x="18" y="{TOP + ph / 2:.2f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {TOP + ph / 2:.2f})">eigenvalue drift</text>')
    # bound line y = 2x, clipped at the top of the plot area
    x_end = min(x_hi, y_hi / 2)
    out.append(f'<line class="bound" x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(x_end):.2f}" '
               f'y2="{sy(2 * x_end):.2f}" stroke="red" stroke-width="1.5" stroke-dasharray="6,4"/>')
    for x, y in pairs:
        out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" fill="none" stroke="steelblue"/>')
    out.append(f'<text x="{LEFT + pw - 4}" y="{TOP + 14}" text-anchor="end" fill="red">y = 2x</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
