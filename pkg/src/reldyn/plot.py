"""Spacetime diagrams as plain SVG.

Time runs up the page.  The mapping is fixed: ``SCALE`` pixels per
coordinate unit, with the view box rounded out to whole units around
everything drawn.  Output depends only on the scenario and options, so the
same input always gives the same bytes.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

from . import dynamics as dyn
from .errors import DimensionTooLow, UnknownObserver
from .minkowski import Point
from .quantity import ONE, Quantity
from .transforms import PoincareMap

SCALE = 40
MARGIN = 30
LEGEND_LINE = 14
MIN_HALF_WIDTH = 3
ARROW_SCALE = Quantity("1/2")

AXIS_NAMES = ("t", "x", "y", "z")

COLORS = {
    "observer": "#1f5fa8",
    "photon": "#d08000",
    "inertial": "#202020",
    "plain": "#707070",
    "center": "#909090",
}


def axis_index(name: str) -> int:
    name = name.strip()
    if name in AXIS_NAMES:
        return AXIS_NAMES.index(name)
    if name.startswith("x") and name[1:].isdigit():
        return int(name[1:])
    raise ValueError(f"unknown axis {name!r}")


def axis_name(i: int) -> str:
    return AXIS_NAMES[i] if i < len(AXIS_NAMES) else f"x{i}"


def parse_axes(text: str) -> Tuple[int, int]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 2:
        raise ValueError("--axes takes two comma-separated names, e.g. t,x")
    a, b = axis_index(parts[0]), axis_index(parts[1])
    if a == b:
        raise ValueError("the two projection axes must differ")
    return a, b


def _f(q) -> float:
    return float(q)


class _Canvas:
    def __init__(self, vi: int, hi: int):
        self.vi, self.hi = vi, hi
        self.segments = []  # (kind, label, p, q, dashed)
        self.dots = []
        self.arrows = []

    def proj(self, p: Point) -> Tuple[float, float]:
        return _f(p[self.hi]), _f(p[self.vi])


def _clip(lo, hi, t_lo, t_hi):
    """Intersect the parameter range [lo, hi] (None = unbounded) with [t_lo, t_hi]."""
    a = t_lo if lo is None or lo < t_lo else lo
    b = t_hi if hi is None or hi > t_hi else hi
    return None if a > b else (a, b)


def _visible_params(w, t_lo, t_hi):
    if w.horizontal:
        # simultaneity line; draw a unit stretch around its base
        return _clip(w.lo, w.hi, -ONE, ONE)
    # parameter equals time for non-horizontal normalized world-lines
    return _clip(w.lo, w.hi, t_lo, t_hi)


def _time_extent(s, k_frame, bodies):
    times = [0.0]
    for b in bodies:
        w = b.worldline.map(k_frame)
        if w.horizontal:
            times.append(_f(w.base.time))
            continue
        for t in (w.lo, w.hi):
            if t is not None:
                times.append(_f(t))
    for c in s.collisions:
        times.append(_f(k_frame.apply(c.vertex).time))
    lo = math.floor(min(times)) - 1
    hi = math.ceil(max(times)) + 1
    if hi - lo < 2 * MIN_HALF_WIDTH:
        mid = (hi + lo) // 2
        lo, hi = mid - MIN_HALF_WIDTH, mid + MIN_HALF_WIDTH
    return Quantity(lo), Quantity(hi)


def render_svg(s, observer: Optional[str] = None, axes: Sequence[int] = (0, 1), title: Optional[str] = None) -> str:
    """Diagram of ``s`` in ``observer``'s coordinates projected on ``axes``.

    ``axes`` is (vertical, horizontal).  With no observers at all the
    identity frame is used, which lets an empty scenario draw its axes.
    """
    if s.dimension < 2:
        raise DimensionTooLow("need d >= 2 to draw")
    vi, hi = axes
    if max(vi, hi) >= s.dimension:
        raise ValueError(f"axis {axis_name(max(vi, hi))} not present in d = {s.dimension}")
    if observer is None:
        obs = s.observers
        observer = obs[0] if obs else None
    if observer is None:
        frame = PoincareMap.identity(s.dimension)
    else:
        if observer not in s.frames:
            raise UnknownObserver(observer)
        frame = s.frames[observer]

    bodies = sorted(s.bodies.values(), key=lambda b: b.id)
    t_lo, t_hi = _time_extent(s, frame, bodies)
    cv = _Canvas(vi, hi)

    for b in bodies:
        w = s.wl(observer, b.id) if observer is not None else b.worldline
        rng = _visible_params(w, t_lo, t_hi)
        if rng is None:
            continue
        p, q = w.at(rng[0]), w.at(rng[1])
        cv.segments.append((b.kind, b.id, cv.proj(p), cv.proj(q), b.kind == "photon"))

    for c in s.collisions:
        v = frame.apply(c.vertex)
        cv.dots.append(cv.proj(v))
        if observer is None:
            continue
        ins = [x for x in c.incoming if x in s.bodies]
        if len(ins) >= 2 and all((observer, x) in s.masses for x in ins):
            line = dyn.center_line(s, observer, ins)
            span = None if line.empty else _clip(line.lo, line.hi, t_lo, t_hi)
            if span is not None:
                p, q = line.at(span[0]), line.at(span[1])
                if p is not None and q is not None:
                    cv.segments.append(("center", "cen(" + ",".join(ins) + ")", cv.proj(p), cv.proj(q), True))
        for x in (*c.incoming, *c.outgoing):
            if x not in s.bodies or (observer, x) not in s.masses:
                continue
            mom = dyn.four_momentum(s, observer, x)
            if mom is None:
                continue
            tip = v + mom * ARROW_SCALE if x in c.outgoing else v - mom * ARROW_SCALE
            base = v if x in c.outgoing else tip
            head = tip if x in c.outgoing else v
            cv.arrows.append((x, cv.proj(base), cv.proj(head)))

    return _emit(s, cv, observer, (t_lo, t_hi), title)


def _num(x: float) -> str:
    r = f"{x:.2f}"
    return "0.00" if r == "-0.00" else r


def _emit(s, cv: _Canvas, observer, t_range, title) -> str:
    xs = [0.0]
    for _, _, p, q, _ in cv.segments:
        xs += [p[0], q[0]]
    xs += [p[0] for p in cv.dots]
    for _, p, q in cv.arrows:
        xs += [p[0], q[0]]
    x_lo, x_hi = math.floor(min(xs)) - 1, math.ceil(max(xs)) + 1
    x_lo, x_hi = min(x_lo, -MIN_HALF_WIDTH), max(x_hi, MIN_HALF_WIDTH)
    t_lo, t_hi = _f(t_range[0]), _f(t_range[1])

    dropped = [axis_name(i) for i in range(s.dimension) if i not in (cv.vi, cv.hi)]
    legend = [
        f"observer: {observer if observer is not None else '(identity frame)'}",
        f"vertical {axis_name(cv.vi)}, horizontal {axis_name(cv.hi)}; {SCALE} px per unit",
    ]
    if dropped:
        legend.append("dropped axes: " + ", ".join(dropped))
    kinds = sorted({seg[0] for seg in cv.segments})
    for kd in kinds:
        legend.append(f"{kd}: {'dashed ' if kd in ('photon', 'center') else ''}{COLORS.get(kd, '#909090')}")
    if cv.arrows:
        legend.append(f"arrows: four-momentum x {ARROW_SCALE}")
    if title:
        legend.insert(0, title)

    width = (x_hi - x_lo) * SCALE + 2 * MARGIN
    plot_h = (t_hi - t_lo) * SCALE + 2 * MARGIN
    height = plot_h + LEGEND_LINE * (len(legend) + 1)

    def X(x):
        return _num(MARGIN + (x - x_lo) * SCALE)

    def Y(t):
        return _num(MARGIN + (t_hi - t) * SCALE)

    out: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}" font-family="monospace" font-size="11">',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        '<g id="axes" stroke="#b0b0b0" stroke-width="1">',
        f'<line x1="{X(x_lo)}" y1="{Y(0)}" x2="{X(x_hi)}" y2="{Y(0)}"/>',
        f'<line x1="{X(0)}" y1="{Y(t_lo)}" x2="{X(0)}" y2="{Y(t_hi)}"/>',
        "</g>",
        f'<text x="{X(x_hi)}" y="{_num(float(Y(0)) - 4)}" text-anchor="end">{axis_name(cv.hi)}</text>',
        f'<text x="{_num(float(X(0)) + 4)}" y="{Y(t_hi)}" dominant-baseline="hanging">{axis_name(cv.vi)}</text>',
        '<g id="worldlines" stroke-width="1.5">',
    ]
    for kind, label, p, q, dashed in cv.segments:
        color = COLORS.get(kind, "#909090")
        dash = ' stroke-dasharray="5,3"' if dashed else ""
        out.append(
            f'<line x1="{X(p[0])}" y1="{Y(p[1])}" x2="{X(q[0])}" y2="{Y(q[1])}" stroke="{color}"{dash}>'
            f"<title>{escape(label)}</title></line>"
        )
        out.append(f'<text x="{X(q[0])}" y="{_num(float(Y(q[1])) - 3)}" fill="{color}">{escape(label)}</text>')
    out.append("</g>")
    out.append('<g id="momenta" stroke="#a02020" stroke-width="1">')
    for label, p, q in cv.arrows:
        out.append(
            f'<line x1="{X(p[0])}" y1="{Y(p[1])}" x2="{X(q[0])}" y2="{Y(q[1])}" marker-end="url(#head)">'
            f"<title>P({escape(label)})</title></line>"
        )
    out.append("</g>")
    out.append('<g id="vertices" fill="#a02020">')
    for p in cv.dots:
        out.append(f'<circle cx="{X(p[0])}" cy="{Y(p[1])}" r="3"/>')
    out.append("</g>")
    out.append(
        '<defs><marker id="head" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto">'
        '<path d="M0,0 L6,3 L0,6 z" fill="#a02020"/></marker></defs>'
    )
    out.append('<g id="legend">')
    for i, line in enumerate(legend):
        out.append(f'<text x="{MARGIN}" y="{_num(plot_h + LEGEND_LINE * (i + 1))}">{escape(line)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
