"""Force-directed embedding of window networks and SVG rendering by narrative order."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .mesonet import MesoNetwork

EPS = 1e-9
GRADIENT_START = (33, 102, 172)  # blue: first windows
GRADIENT_END = (26, 152, 80)  # green: last windows


@dataclass(frozen=True)
class LayoutConfig:
    f_a: float = 0.0002
    f_r: float = 1.25
    f_g: float = 0.001
    iterations: int = 1000
    seed: int = 0
    cooling: float = 0.995
    temperature: float = 1.0

    def __post_init__(self):
        if min(self.f_a, self.f_r, self.f_g, self.temperature) < 0:
            raise ValueError("force coefficients and temperature must be non-negative")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")


@dataclass
class Embedding:
    coords: np.ndarray
    displacement: list[float] = field(default_factory=list)


def forces(pos, edges, config: LayoutConfig) -> np.ndarray:
    """Net force per node: f_r/d^2 repulsion, f_a d^2 attraction, f_g d gravity."""
    x, y = pos[:, 0], pos[:, 1]
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    d = np.sqrt(dx * dx + dy * dy)
    np.maximum(d, EPS, out=d)
    coef = config.f_r / (d * d * d)
    np.fill_diagonal(coef, 0.0)
    fx = (dx * coef).sum(axis=1)
    fy = (dy * coef).sum(axis=1)
    if len(edges):
        i, j = edges[:, 0], edges[:, 1]
        ex = pos[j, 0] - pos[i, 0]
        ey = pos[j, 1] - pos[i, 1]
        dist = np.sqrt(ex * ex + ey * ey)
        pull = config.f_a * dist  # unit vector times f_a d^2
        n = len(pos)
        fx += np.bincount(i, weights=pull * ex, minlength=n) - np.bincount(j, weights=pull * ex, minlength=n)
        fy += np.bincount(i, weights=pull * ey, minlength=n) - np.bincount(j, weights=pull * ey, minlength=n)
    centre = pos.mean(axis=0)
    fx -= config.f_g * (x - centre[0])
    fy -= config.f_g * (y - centre[1])
    return np.column_stack([fx, fy])


def fr_layout(net: MesoNetwork, config: LayoutConfig = LayoutConfig(), initial=None) -> Embedding:
    """Synchronous Fruchterman-Reingold style simulation.

    Each step moves every node along its net force, with the step length
    capped by a temperature that shrinks by ``config.cooling`` per step.
    """
    n = net.node_count
    if n < 1:
        raise ValueError("empty network")
    if initial is None:
        pos = np.random.default_rng(config.seed).random((n, 2))
    else:
        pos = np.array(initial, dtype=np.float64)
    edges = np.asarray(net.edges, dtype=np.int64).reshape(-1, 2)
    temp = config.temperature
    history = []
    for _ in range(config.iterations):
        f = forces(pos, edges, config)
        length = np.sqrt((f * f).sum(axis=1))
        scale = np.divide(np.minimum(length, temp), length, out=np.zeros_like(length), where=length > 0)
        step = f * scale[:, None]
        pos = pos + step
        history.append(float(np.sqrt((step * step).sum(axis=1)).sum()))
        temp *= config.cooling
    return Embedding(pos, history)


def gradient_color(t: float) -> str:
    rgb = [round(a + (b - a) * t) for a, b in zip(GRADIENT_START, GRADIENT_END)]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def render_svg(net: MesoNetwork, embedding: Embedding, node_order=None, width: int = 800) -> str:
    """SVG with edges as thin lines and nodes coloured blue to green by window index."""
    coords = np.asarray(embedding.coords, dtype=np.float64)
    n = net.node_count
    if coords.shape != (n, 2) or not np.all(np.isfinite(coords)):
        raise ValueError(f"embedding has {coords.shape[0]} coordinates for {n} nodes")
    order = np.arange(n) if node_order is None else np.asarray(node_order)
    lo, hi = coords.min(axis=0), coords.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-6))
    margin = 0.05 * span
    x0, y0 = lo[0] - margin, lo[1] - margin
    vw = hi[0] - lo[0] + 2 * margin
    vh = hi[1] - lo[1] + 2 * margin
    legend_h = 0.08 * span
    total_h = vh + legend_h
    height = int(round(width * total_h / vw)) if vw > 0 else width
    r = 0.006 * span
    sw = 0.0015 * span

    def f(v):
        return f"{v:.4f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="{f(x0)} {f(y0)} {f(vw)} {f(total_h)}">',
        "<defs>",
        '<linearGradient id="order" x1="0" y1="0" x2="1" y2="0">',
        f'<stop offset="0" stop-color="{gradient_color(0.0)}"/>',
        f'<stop offset="1" stop-color="{gradient_color(1.0)}"/>',
        "</linearGradient>",
        "</defs>",
        f'<rect x="{f(x0)}" y="{f(y0)}" width="{f(vw)}" height="{f(total_h)}" fill="white"/>',
        f'<g stroke="#999999" stroke-width="{f(sw)}" stroke-opacity="0.6">',
    ]
    for i, j in np.asarray(net.edges).reshape(-1, 2):
        out.append(
            f'<line x1="{f(coords[i, 0])}" y1="{f(coords[i, 1])}" x2="{f(coords[j, 0])}" y2="{f(coords[j, 1])}"/>'
        )
    out.append("</g>")
    out.append('<g stroke="none">')
    denom = max(n - 1, 1)
    for v in range(n):
        color = gradient_color(float(order[v]) / denom)
        out.append(f'<circle cx="{f(coords[v, 0])}" cy="{f(coords[v, 1])}" r="{f(r)}" fill="{color}"/>')
    out.append("</g>")
    ly = y0 + vh + 0.2 * legend_h
    lw = 0.4 * vw
    lx = x0 + 0.3 * vw
    bar_h = 0.3 * legend_h
    font = 0.35 * legend_h
    out += [
        f'<rect x="{f(lx)}" y="{f(ly)}" width="{f(lw)}" height="{f(bar_h)}" fill="url(#order)"/>',
        f'<text x="{f(lx - 0.02 * vw)}" y="{f(ly + bar_h)}" font-size="{f(font)}" text-anchor="end">1</text>',
        f'<text x="{f(lx + lw + 0.02 * vw)}" y="{f(ly + bar_h)}" font-size="{f(font)}">N</text>',
        "</svg>",
    ]
    return "\n".join(out) + "\n"


def coords_csv(embedding: Embedding) -> str:
    lines = ["node,x,y"]
    lines += [f"{i},{x!r},{y!r}" for i, (x, y) in enumerate(embedding.coords.tolist())]
    return "\n".join(lines) + "\n"
