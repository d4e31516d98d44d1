"""Deterministic SVG drawings of horoball diagrams seen from B_∞."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .horoball import CuspType, Placement, tau_for

MAX_DEPTH = 6
WIDTH = 800
HEIGHT = 800
SCALE = 160.0


@dataclass(frozen=True)
class RenderSpec:
    cusp_type: CuspType
    d: float
    placement: Placement
    depth: int = 1
    theta: float = 0.0
    w: float | None = None
    width: int = WIDTH
    height: int = HEIGHT
    scale: float = SCALE
    title: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "cusp_type", CuspType.parse(self.cusp_type))
        if isinstance(self.placement, str):
            object.__setattr__(self, "placement", Placement(self.placement))
        if not 0 <= self.depth <= MAX_DEPTH:
            raise ValueError(f"depth must lie in [0, {MAX_DEPTH}]")
        if not self.d >= 1.0:
            raise ValueError("d ≥ 1")
        if tau_for(self.cusp_type, self.placement, self.d) is None:
            raise ValueError(f"cannot render placement {self.placement.value} for {self.cusp_type.value}")


def _f(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _lattice(spec: RenderSpec) -> tuple[list[tuple[float, float]], list[tuple[float, float]]]:
    """Full-sized ball centres in view and the diagram polygon D."""
    tau = tau_for(spec.cusp_type, spec.placement, spec.d)
    if spec.cusp_type is CuspType.T236:
        e1, e2 = (tau, 0.0), (tau / 2, tau * math.sqrt(3) / 2)
        polygon = [(0.0, 0.0), e1, e2]
        offsets = {
            Placement.A6: [(0.0, 0.0)],
            Placement.A3: [(tau / 2, tau / (2 * math.sqrt(3))), (tau, tau / math.sqrt(3))],
            Placement.A2: [(tau / 2, 0.0), (tau / 4, tau * math.sqrt(3) / 4), (3 * tau / 4, tau * math.sqrt(3) / 4)],
        }[spec.placement]
    else:
        e1, e2 = (tau, 0.0), (0.0, tau)
        polygon = [(0.0, 0.0), e1, (tau, tau), e2]
        offsets = {
            Placement.A4: [(0.0, 0.0)],
            Placement.A2: [(tau / 2, 0.0), (0.0, tau / 2)],
        }[spec.placement]
    cx = sum(p[0] for p in polygon) / len(polygon)
    cy = sum(p[1] for p in polygon) / len(polygon)
    half_w = spec.width / (2 * spec.scale) + 1
    half_h = spec.height / (2 * spec.scale) + 1
    n = int(max(half_w, half_h) / tau) + 3
    pts = set()
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            for ox, oy in offsets:
                x = i * e1[0] + j * e2[0] + ox - cx
                y = i * e1[1] + j * e2[1] + oy - cy
                if abs(x) <= half_w and abs(y) <= half_h:
                    pts.add((round(x, 9), round(y, 9)))
    poly = [(x - cx, y - cy) for x, y in polygon]
    return sorted(pts), poly


def _neighbour_directions(p: tuple[float, float], pts: list[tuple[float, float]], d: float) -> list[float]:
    out = []
    for q in pts:
        r = math.hypot(q[0] - p[0], q[1] - p[1])
        if abs(r - d) <= 1e-6:
            out.append(math.atan2(q[1] - p[1], q[0] - p[0]))
    return sorted(out)


def _chain(d: float, depth: int) -> list[tuple[float, float]]:
    """(offset from the full-sized centre, diameter) for aligned levels 1..depth."""
    out = []
    dk, h_prev, s = d, 1.0, 0.0
    h = 1.0
    for _ in range(depth):
        h = h_prev / (dk * dk)
        s += math.sqrt(h_prev * h)
        out.append((s, h))
        nxt = d - 1.0 / dk
        if nxt <= 1e-9:
            break
        h_prev, dk = h, nxt
    return out


def render_svg(spec: RenderSpec) -> str:
    pts, poly = _lattice(spec)
    W, H, k = spec.width, spec.height, spec.scale

    def X(x: float) -> str:
        return _f(W / 2 + k * x)

    def Y(y: float) -> str:
        return _f(H / 2 - k * y)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f"<title>{spec.title or f'{spec.cusp_type.value} d={_f(spec.d)} at {spec.placement.value}'}</title>",
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
    ]
    for x, y in pts:
        lines.append(
            f'<circle cx="{X(x)}" cy="{Y(y)}" r="{_f(k)}" fill="none" stroke="gray" '
            f'stroke-width="0.750000" stroke-dasharray="4 4"/>'
        )
    for x, y in pts:
        lines.append(f'<circle cx="{X(x)}" cy="{Y(y)}" r="{_f(k / 2)}" fill="#dde6f5" stroke="black" stroke-width="1.000000"/>')
    if spec.depth > 0:
        chain = _chain(spec.d, spec.depth)
        for x, y in pts:
            for phi in _neighbour_directions((x, y), pts, spec.d):
                a = phi + spec.theta
                for s, h in chain:
                    bx, by = x + s * math.cos(a), y + s * math.sin(a)
                    lines.append(
                        f'<circle cx="{X(bx)}" cy="{Y(by)}" r="{_f(k * h / 2)}" fill="#f5e0c8" '
                        f'stroke="black" stroke-width="0.500000"/>'
                    )
    if spec.w is not None:
        r = 1.0 / (2 * spec.w * spec.w * spec.d * spec.d)
        cx = sum(p[0] for p in poly) / len(poly)
        cy = sum(p[1] for p in poly) / len(poly)
        lines.append(f'<circle cx="{X(cx)}" cy="{Y(cy)}" r="{_f(k * r)}" fill="#c8f0d0" stroke="black" stroke-width="0.500000"/>')
    # diagram D on top so its boundary stays visible
    lines.append(
        '<polygon points="' + " ".join(f"{X(x)},{Y(y)}" for x, y in poly)
        + '" fill="none" stroke="#b00000" stroke-width="2.000000"/>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
