"""Gantt rendering: a text grid and a deterministic SVG document."""

from __future__ import annotations

from fractions import Fraction


def render_text(inst, sch, width=72):
    """One band per machine; idle time shown as dots."""
    horizon = sch.makespan()
    if horizon == 0:
        return "\n".join("M%d |" % i for i in range(1, inst.m + 1)) + "\n"
    scale = Fraction(width, horizon)
    lines = []
    for i in range(1, inst.m + 1):
        row = ["."] * width
        for p in sch.machine_pieces(i):
            a = int(p.start * scale)
            b = max(a + 1, int(p.end * scale))
            label = str(p.job % 10)
            for x in range(a, min(b, width)):
                row[x] = label
        lines.append("M%d |%s|" % (i, "".join(row)))
    ruler = "    0" + " " * (width - len(str(horizon))) + str(horizon)
    lines.append(ruler)
    return "\n".join(lines) + "\n"


_PALETTE = ["#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2",
            "#eeca3b", "#b279a2", "#ff9da6", "#9d755d", "#bab0ac"]

_PX_PER_UNIT = 40
_BAND_H = 28
_BAND_GAP = 10
_MARGIN = 42


def render_svg(inst, sch):
    """Deterministic SVG: one <g> per machine band, one <rect> per interval,
    title attribute J<id>[op<h>]. No timestamps; ids are stable."""
    horizon = sch.makespan()
    width = _MARGIN * 2 + int(max(Fraction(1), horizon) * _PX_PER_UNIT)
    height = _MARGIN * 2 + inst.m * (_BAND_H + _BAND_GAP)
    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
               'viewBox="0 0 %d %d">' % (width, height, width, height))
    out.append('<rect x="0" y="0" width="%d" height="%d" fill="#ffffff"/>' % (width, height))
    for idx in range(1, inst.m + 1):
        y = _MARGIN + (idx - 1) * (_BAND_H + _BAND_GAP)
        out.append('<g id="machine-%d">' % idx)
        # idle background for the band makes gaps visible
        out.append('<rect x="%d" y="%d" width="%d" height="%d" fill="#e8e8e8"/>'
                   % (_MARGIN, y, width - 2 * _MARGIN, _BAND_H))
        out.append('<text x="%d" y="%d" font-size="12" font-family="monospace">M%d</text>'
                   % (6, y + _BAND_H - 9, idx))
        for p in sch.machine_pieces(idx):
            x = _MARGIN + float(p.start) * _PX_PER_UNIT
            w = float(p.end - p.start) * _PX_PER_UNIT
            color = _PALETTE[p.job % len(_PALETTE)]
            title = "J%d" % p.job if p.op is None else "J%d[op%d]" % (p.job, p.op)
            out.append('<rect x="%.3f" y="%d" width="%.3f" height="%d" fill="%s" '
                       'stroke="#333333" title="%s"/>' % (x, y, w, _BAND_H, color, title))
            if w >= 14:
                out.append('<text x="%.3f" y="%d" font-size="11" font-family="monospace" '
                           'fill="#ffffff">%d</text>' % (x + 3, y + _BAND_H - 9, p.job))
        out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"


def render_gantt(inst, sch, format="text"):
    if format == "text":
        return render_text(inst, sch)
    if format == "svg":
        return render_svg(inst, sch)
    raise ValueError("unknown format %r" % format)
