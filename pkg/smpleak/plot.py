"""
Minimal self-contained SVG line plots of bound curves (log scale on x).
"""
import math

from smpleak.errors import ValidationError
from smpleak.utils import format_number

WIDTH = 640
HEIGHT = 400
MARGIN = 50
COLORS = ('#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e')


def _scale(value, low, high, start, end):
    if high == low:
        return (start + end) / 2.0
    return start + (value - low) * (end - start) / (high - low)


def svg_plot(xs, series, title='', x_label='n', y_label='bits'):
    """
    :param xs: x values (positive, plotted as log10)
    :param series: list of (name, ys) pairs aligned with xs
    :return: SVG document as a string
    """
    if not xs or any(x <= 0 for x in xs):
        raise ValidationError("x values must be positive")
    log_xs = [math.log10(x) for x in xs]
    all_ys = [y for _, ys in series for y in ys] or [0.0]
    x_low, x_high = min(log_xs), max(log_xs)
    y_low, y_high = min(min(all_ys), 0.0), max(all_ys)

    def point(lx, y):
        px = _scale(lx, x_low, x_high, MARGIN, WIDTH - MARGIN)
        py = _scale(y, y_low, y_high, HEIGHT - MARGIN, MARGIN)
        return '{:.2f},{:.2f}'.format(px, py)

    parts = ['<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">'.format(
        WIDTH, HEIGHT, WIDTH, HEIGHT),
        '<rect width="100%" height="100%" fill="white"/>',
        '<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>'.format(WIDTH // 2, title),
        '<line x1="{m}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/>'.format(m=MARGIN, b=HEIGHT - MARGIN,
                                                                          r=WIDTH - MARGIN),
        '<line x1="{m}" y1="{t}" x2="{m}" y2="{b}" stroke="black"/>'.format(m=MARGIN, t=MARGIN, b=HEIGHT - MARGIN),
        '<text x="{}" y="{}" text-anchor="middle" font-size="12">log10 {}</text>'.format(
            WIDTH // 2, HEIGHT - 15, x_label),
        '<text x="15" y="{}" font-size="12" transform="rotate(-90 15 {})">{}</text>'.format(
            HEIGHT // 2, HEIGHT // 2, y_label)]
    for tick in (x_low, x_high):
        parts.append('<text x="{:.2f}" y="{}" text-anchor="middle" font-size="10">{}</text>'.format(
            _scale(tick, x_low, x_high, MARGIN, WIDTH - MARGIN), HEIGHT - MARGIN + 14, format_number(tick)))
    for tick in (y_low, y_high):
        parts.append('<text x="{}" y="{:.2f}" text-anchor="end" font-size="10">{}</text>'.format(
            MARGIN - 4, _scale(tick, y_low, y_high, HEIGHT - MARGIN, MARGIN), format_number(tick)))
    for k, (name, ys) in enumerate(series):
        color = COLORS[k % len(COLORS)]
        points = ' '.join(point(lx, y) for lx, y in zip(log_xs, ys))
        parts.append('<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>'.format(color, points))
        parts.append('<text x="{}" y="{}" font-size="11" fill="{}">{}</text>'.format(
            WIDTH - MARGIN - 120, MARGIN + 14 * (k + 1), color, name))
    parts.append('</svg>')
    return '\n'.join(parts) + '\n'


def curve_svg(curve):
    """
    Plot of cc_lower, il_lower and qil_upper from a BoundCurve.
    """
    xs = [row.n for row in curve.rows]
    series = [(name, [getattr(row, name) for row in curve.rows]) for name in ('cc_lower', 'il_lower', 'qil_upper')]
    return svg_plot(xs, series, title='epsilon = {}'.format(format_number(curve.epsilon)))
