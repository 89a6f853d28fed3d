"""Dependency-free SVG rendering for waveform stacks and BER waterfalls."""
import math
from xml.sax.saxutils import escape

import numpy as np

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"]
WIDTH = 740
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 90, 20, 30, 45


def _fmt(v):
    return f"{v:.2f}"


def _polyline(xs, ys, color, width=1.2):
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(xs, ys))
    return (f'<polyline fill="none" stroke="{color}" stroke-width="{width}" '
            f'points="{pts}"/>')


def _text(x, y, s, size=11, anchor="middle", extra=""):
    return (f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}" '
            f'font-family="sans-serif" text-anchor="{anchor}"{extra}>{escape(s)}</text>')


def _document(width, height, body, title):
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">\n'
            f'<rect width="{width}" height="{height}" fill="white"/>\n')
    if title:
        head += _text(width / 2, 18, title, size=14) + "\n"
    return head + "\n".join(body) + "\n</svg>\n"


def _decimate(t, y, max_points=4000):
    if len(t) <= max_points:
        return t, y
    step = math.ceil(len(t) / max_points)
    return t[::step], y[::step]


def waveform_stack(panels, title="", panel_height=110):
    """Stack of time-aligned traces.

    ``panels`` is a list of ``(label, t, y, style)``; style ``"step"`` draws
    a bit sequence as a zero-order hold, anything else a line.
    """
    if not panels:
        raise ValueError("waveform stack needs at least one panel")
    height = MARGIN_T + len(panels) * panel_height + MARGIN_B
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    t_max = max(float(p[1][-1]) if len(p[1]) else 0.0 for p in panels) or 1.0
    body = []
    for k, (label, t, y, style) in enumerate(panels):
        t = np.asarray(t, dtype=float)
        y = np.asarray(y, dtype=float)
        top = MARGIN_T + k * panel_height + 8
        h = panel_height - 20
        lo, hi = (float(y.min()), float(y.max())) if len(y) else (0.0, 1.0)
        if hi - lo < 1e-12:
            lo, hi = lo - 1.0, hi + 1.0
        pad = 0.08 * (hi - lo)
        lo, hi = lo - pad, hi + pad

        def sx(v):
            return MARGIN_L + plot_w * v / t_max

        def sy(v):
            return top + h * (hi - v) / (hi - lo)

        body.append(f'<rect x="{MARGIN_L}" y="{_fmt(top)}" width="{plot_w}" height="{h}" '
                    f'fill="none" stroke="#999" stroke-width="0.6"/>')
        if lo < 0 < hi:
            body.append(f'<line x1="{MARGIN_L}" y1="{_fmt(sy(0))}" x2="{MARGIN_L + plot_w}" '
                        f'y2="{_fmt(sy(0))}" stroke="#ccc" stroke-width="0.6"/>')
        if style == "step" and len(t):
            dt = t[1] - t[0] if len(t) > 1 else 1.0
            xs = np.repeat(np.append(t, t[-1] + dt), 2)[1:-1]
            ys = np.repeat(y, 2)
        else:
            xs, ys = _decimate(t, y)
        color = PALETTE[k % len(PALETTE)]
        body.append(_polyline([sx(v) for v in xs], [sy(v) for v in ys], color))
        body.append(_text(MARGIN_L - 6, top + h / 2, label, size=10, anchor="end"))
    body.append(_text(MARGIN_L + plot_w / 2, height - 12, "time (s)"))
    return _document(WIDTH, height, body, title)


def ber_waterfall(series, title="", height=480):
    """Log-scale BER against Eb/N0.

    ``series`` is a list of ``(label, points)`` with ``points`` a list of
    SweepPoint-like objects. Zero-error points cannot sit on a log axis, so
    they are drawn as open markers on a floor row labelled ``<1/N``.
    """
    if not series or not any(pts for _, pts in series):
        raise ValueError("waterfall needs at least one sweep series")
    all_pts = [p for _, pts in series for p in pts]
    xs = [p.ebn0_db for p in all_pts]
    x_lo, x_hi = min(xs), max(xs)
    if x_hi - x_lo < 1e-9:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    nonzero = [p.ber for p in all_pts if p.ber > 0]
    floor = 1.0 / max(p.bits_sent for p in all_pts)
    dec_hi = 0 if not nonzero else math.ceil(math.log10(max(nonzero)) + 1e-12)
    has_zero = any(p.ber == 0 for p in all_pts)
    dec_lo = math.floor(math.log10(min(nonzero + ([floor] if has_zero else []))))
    dec_hi = max(dec_hi, dec_lo + 1)
    row_lo = dec_lo - (0.5 if has_zero else 0.0)

    plot_w = WIDTH - MARGIN_L - MARGIN_R - 110
    plot_h = height - MARGIN_T - MARGIN_B

    def sx(v):
        return MARGIN_L + plot_w * (v - x_lo) / (x_hi - x_lo)

    def sy(logv):
        return MARGIN_T + plot_h * (dec_hi - logv) / (dec_hi - row_lo)

    body = [f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
            f'fill="none" stroke="#555" stroke-width="0.8"/>']
    for d in range(dec_lo, dec_hi + 1):
        y = sy(d)
        body.append(f'<line x1="{MARGIN_L}" y1="{_fmt(y)}" x2="{MARGIN_L + plot_w}" y2="{_fmt(y)}" '
                    f'stroke="#ddd" stroke-width="0.6"/>')
        body.append(_text(MARGIN_L - 6, y + 4, f"1e{d}", size=10, anchor="end"))
    if has_zero:
        body.append(_text(MARGIN_L - 6, sy(row_lo) + 4, "<1/N", size=10, anchor="end"))
    for tick in _ticks(x_lo, x_hi):
        x = sx(tick)
        body.append(f'<line x1="{_fmt(x)}" y1="{MARGIN_T}" x2="{_fmt(x)}" y2="{MARGIN_T + plot_h}" '
                    f'stroke="#eee" stroke-width="0.6"/>')
        body.append(_text(x, MARGIN_T + plot_h + 16, f"{tick:g}", size=10))
    body.append(_text(MARGIN_L + plot_w / 2, height - 10, "Eb/N0 (dB)"))
    body.append(_text(18, MARGIN_T + plot_h / 2, "BER", extra=' transform="rotate(-90 18 '
                      f'{_fmt(MARGIN_T + plot_h / 2)})"'))

    for k, (label, pts) in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        pts = sorted(pts, key=lambda p: p.ebn0_db)
        line_x, line_y = [], []
        for p in pts:
            x = sx(p.ebn0_db)
            if p.ber > 0:
                y = sy(math.log10(p.ber))
                line_x.append(x)
                line_y.append(y)
                body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="{color}"/>')
            else:
                y = sy(row_lo)
                body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="white" '
                            f'stroke="{color}"/>')
        if len(line_x) > 1:
            body.append(_polyline(line_x, line_y, color, 1.5))
        ly = MARGIN_T + 14 + 18 * k
        lx = MARGIN_L + plot_w + 12
        body.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" '
                    f'stroke-width="2"/>')
        body.append(_text(lx + 26, ly + 4, label, size=11, anchor="start"))
    return _document(WIDTH, height, body, title)


def _ticks(lo, hi):
    span = hi - lo
    step = 10 ** (math.floor(math.log10(span)) - 1)
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= 10:
            step *= mult
            break
    first = math.ceil(lo / step - 1e-9) * step
    out = []
    v = first
    while v <= hi + 1e-9:
        out.append(round(v, 10))
        v += step
    return out
