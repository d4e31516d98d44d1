"""Horoball geometry in the upper half space.

B_∞ sits at height 1, so full-sized horoballs have Euclidean diameter 1.
Distances d, w, u, v are measured in the horosphere plane between ball centres.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .lobachevsky import lob_value

SQRT3 = math.sqrt(3.0)
MU3 = 3.0 * lob_value(math.pi / 3)
D3_INF = SQRT3 / (2.0 * MU3)
ROOT_TOL = 1e-12


class CuspType(enum.Enum):
    T236 = "2,3,6"
    T244 = "2,4,4"
    T333 = "3,3,3"

    @classmethod
    def parse(cls, text: str | CuspType) -> CuspType:
        if isinstance(text, CuspType):
            return text
        key = text.strip().strip("{}").replace(" ", "")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown cusp type {text!r}")


class Placement(enum.Enum):
    A2 = "a2"
    A3 = "a3"
    A4 = "a4"
    A6 = "a6"
    NONE = "none"


# ---------------------------------------------------------------- root finding


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float = ROOT_TOL) -> float:
    """Bracketed bisection; f(lo) and f(hi) must differ in sign."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------- lemmas


@dataclass(frozen=True)
class Horoball:
    """Finite centre with Euclidean diameter, or ``center=None`` for a ball at ∞ with a height."""

    center: tuple[float, float] | None
    diameter: float | None = None
    height: float | None = None

    def __post_init__(self) -> None:
        if self.center is None:
            if self.height is None or not self.height > 0:
                raise ValueError("a horoball at ∞ needs a positive height")
        elif self.diameter is None or not self.diameter > 0:
            raise ValueError("a horoball needs a positive diameter")

    @property
    def full_sized(self) -> bool:
        return self.center is not None and abs(self.diameter - 1.0) <= 1e-12


def _positive(*xs: float) -> None:
    if any(not (x > 0 and math.isfinite(x)) for x in xs):
        raise ValueError("arguments must be positive and finite")


def tangent_center_distance(r1: float, r2: float) -> float:
    """Horizontal distance between centres of tangent horoballs of radii r1, r2."""
    _positive(r1, r2)
    return 2.0 * math.sqrt(r1 * r2)


def image_diameter(h: float, k: float, r: float) -> float:
    """Diameter hk/r² of the image ball under the inversion exchanging B_∞ and a ball of diameter h."""
    _positive(h, k, r)
    return h * k / (r * r)


@dataclass(frozen=True)
class TransferReport:
    ratios: dict[str, float]
    induced_distance: float
    max_deviation: float
    tangent: bool


def horoball_transfer(delta0: float, h: float, k: float, tol: float = 1e-9) -> TransferReport:
    """Check √h/√k = δ₀/k = h/δ₀ = hδ/k = 1/δ (δ = δ₀/h) for balls of diameters h, k at distance δ₀."""
    _positive(delta0, h, k)
    delta = delta0 / h
    ratios = {
        "sqrt(h)/sqrt(k)": math.sqrt(h) / math.sqrt(k),
        "delta0/k": delta0 / k,
        "h/delta0": h / delta0,
        "h*delta/k": h * delta / k,
        "1/delta": 1.0 / delta,
    }
    vals = list(ratios.values())
    ref = vals[0]
    dev = max(abs(v - ref) for v in vals) / max(1.0, abs(ref))
    return TransferReport(ratios, 1.0 / delta0, dev, dev <= tol)


def uvw(d: float, theta: float, cusp_type: CuspType | str = CuspType.T236, theta_max: float | None = None) -> tuple[float, float, float]:
    """Distances u, v, w from the law of cosines in the cusp triangle.

    θ ranges over [0, π/6] for {2,3,6}; callers pass ``theta_max`` = π/4 or π/3
    for the square diagram and for the order-2 placement.
    """
    ct = CuspType.parse(cusp_type)
    if not d > 1.0 - 1e-15:
        raise ValueError("uvw needs d > 1")
    if theta_max is None:
        theta_max = math.pi / 6 if ct is CuspType.T236 else math.pi / 4
    if not (-1e-15 <= theta <= theta_max + 1e-15):
        raise ValueError(f"θ must lie in [0, {theta_max}]")
    d2 = d * d
    u2 = d2 + 3.0 / d2 - 2.0 * SQRT3 * math.cos(math.pi / 6 - theta)
    v2 = d2 + 4.0 / d2 - 4.0 * math.cos(theta)
    w2 = d2 + 1.0 / d2 - 2.0 * math.cos(theta)
    return tuple(math.sqrt(max(x, 0.0)) for x in (u2, v2, w2))  # type: ignore[return-value]


# ---------------------------------------------------------------- recursion


class InvalidRegime(ValueError):
    pass


def recursion_ds(d: float, kmax: int) -> list[float]:
    """[d_1, ..., d_kmax] with d_1 = d and d_{k+1} = d − 1/d_k."""
    if not d > 1.0:
        raise ValueError("recursion needs d > 1")
    if kmax < 1:
        raise ValueError("kmax must be ≥ 1")
    ds = [d]
    for _ in range(kmax - 1):
        nxt = d - 1.0 / ds[-1]
        if not nxt > 1e-12:
            raise InvalidRegime(f"d_k reaches {nxt} ≤ 0 at d = {d}")
        ds.append(nxt)
    return ds


def _inverse_chain(d: float, kmax: int) -> float:
    # q_k = 1/d_k with q_0 = 0 (d_0 = ∞), so kmax = 0 is covered
    q = 0.0
    for _ in range(kmax):
        den = d - q
        if den <= 0.0:
            raise InvalidRegime(f"d_k ≤ 0 at d = {d}")
        q = 1.0 / den
    return q


def end_condition_residual(d: float, kmax: int, case: str) -> float:
    """Case A: 1/d_kmax − d/2.  Case B: d − 1/d_kmax − 1."""
    q = _inverse_chain(d, kmax)
    if case == "A":
        return q - d / 2.0
    if case == "B":
        return d - q - 1.0
    raise ValueError("case must be 'A' or 'B'")


def d_from_end_condition(kmax: int, case: str) -> float:
    if kmax < 0:
        raise ValueError("kmax must be ≥ 0")
    if case == "A":
        return 2.0 * math.cos(math.pi / (2 * kmax + 2))
    if case == "B":
        return 2.0 * math.cos(math.pi / (2 * kmax + 3))
    raise ValueError("case must be 'A' or 'B'")


def d_end_condition_bisection(kmax: int, case: str) -> float:
    """Largest root in [1, 2) of the end condition, found by bracketed bisection.

    The chain stays finite on [d_lo, 2] where d_lo is the previous family
    member, so the bracket is chosen between consecutive closed forms.
    """
    if case == "A" and kmax == 0:
        return 0.0
    n = 2 * kmax + (2 if case == "A" else 3)
    lo = 2.0 * math.cos(math.pi / (n - 1)) + 1e-9
    hi = 2.0 * math.cos(math.pi / (n + 1)) - 1e-9
    return bisect(lambda x: end_condition_residual(x, kmax, case), lo, hi)


def family_symbol(kmax: int, case: str) -> str:
    """Coxeter symbol [n,3,6] attached to the aligned Chebyshev diagram."""
    n = 2 * kmax + (2 if case == "A" else 3)
    return f"[{n},3,6]"


def bisector_height(d: float, a: float) -> float:
    """Height √(2r − a²) of the bisector touching a ball at distance a from the triangle boundary."""
    if not d > 0 or a < 0:
        raise ValueError("need d > 0 and a ≥ 0")
    two_r = d * d / 4.0 + a * a - 1.0
    if two_r < 0 or two_r - a * a < -1e-15:
        raise ValueError("bisector regime needs d ≥ 2")
    return math.sqrt(max(two_r - a * a, 0.0))


def beta_from_d(d: float) -> float:
    """Angle β of the truncated orthoscheme R_t(β, π/6): cos β = d/(2√(d² − 3))."""
    if not d > math.sqrt(3.0):
        raise ValueError("β(d) needs d > √3")
    if not d > 2.0:
        raise ValueError("β(d) is used in the regime d > 2")
    return math.acos(d / (2.0 * math.sqrt(d * d - 3.0)))


# ---------------------------------------------------------------- cusp volume


@dataclass(frozen=True)
class CuspDiagram:
    cusp_type: CuspType
    d: float
    placement: Placement
    tau: float | None = None
    classes: int = 1
    mirror: bool = True
    e: float | None = None
    placements: tuple[Placement, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "cusp_type", CuspType.parse(self.cusp_type))
        if isinstance(self.placement, str):
            object.__setattr__(self, "placement", Placement(self.placement))
        if self.d < 1.0 - 1e-12:
            raise ValueError("d ≥ 1: full-sized balls do not overlap")
        if self.classes < 1:
            raise ValueError("classes ≥ 1")
        expected = tau_for(self.cusp_type, self.placement, self.d) if self.classes == 1 else None
        if self.tau is None:
            object.__setattr__(self, "tau", expected)
        elif expected is not None and abs(self.tau - expected) > 1e-9 * max(1.0, expected):
            raise ValueError(f"τ = {self.tau} incompatible with d = {self.d} at {self.placement.value}")


_TAU_FACTOR = {
    (CuspType.T236, Placement.A6): 1.0,
    (CuspType.T236, Placement.A3): SQRT3,
    (CuspType.T236, Placement.A2): 2.0,
    (CuspType.T244, Placement.A4): 1.0,
    (CuspType.T244, Placement.A2): math.sqrt(2.0),
}


def tau_for(cusp_type: CuspType, placement: Placement, d: float) -> float | None:
    f = _TAU_FACTOR.get((cusp_type, placement))
    return None if f is None else f * d


# (type, placement) -> (mirror divisor, formula id): vol = c·d² with c = √3/48 etc.
_ONE_CLASS = {
    (CuspType.T236, Placement.A6): (SQRT3 / 48, "sqrt3*d^2/48"),
    (CuspType.T236, Placement.A3): (SQRT3 / 16, "sqrt3*d^2/16"),
    (CuspType.T236, Placement.A2): (SQRT3 / 12, "sqrt3*d^2/12"),
    (CuspType.T244, Placement.A4): (1 / 16, "d^2/16"),
    (CuspType.T244, Placement.A2): (1 / 8, "d^2/8"),
}


@dataclass(frozen=True)
class CuspVolume:
    value: float
    formula: str


def cusp_volume(diag: CuspDiagram) -> CuspVolume:
    """½ the area of a fundamental domain for Γ_∞, per registered placement.

    Without a mirror the rotation subgroup has a domain twice as large.
    Two- and three-class diagrams are oriented; their area is read from τ.
    """
    ct, pl = diag.cusp_type, diag.placement
    if ct is CuspType.T333:
        raise ValueError("no registered {3,3,3} cusp-volume formula")
    if diag.classes == 1:
        if pl is Placement.NONE:
            if ct is CuspType.T236:
                return CuspVolume(SQRT3 / 12 * (1 + SQRT3 / 2), "sqrt3/12*(1+sqrt3/2)")
            return CuspVolume(0.25, "1/4")
        key = (ct, pl)
        if key not in _ONE_CLASS:
            raise ValueError(f"unregistered placement {pl.value} for {ct.value}")
        c, fid = _ONE_CLASS[key]
        vol = c * diag.d * diag.d
        if not diag.mirror:
            return CuspVolume(2 * vol, "2*" + fid)
        return CuspVolume(vol, fid)
    # oriented multi-class diagrams: vol = ½·area(Γ∞⁺ domain), expressed in τ
    if diag.tau is None:
        raise ValueError("multi-class diagrams need τ")
    tau = diag.tau
    if ct is CuspType.T236:
        return CuspVolume(SQRT3 * tau * tau / 24, "sqrt3*tau^2/24")
    return CuspVolume(tau * tau / 8, "tau^2/8")


def min_orbifold_volume_bound(cusp_vol: float, cover_degree: int = 1) -> float:
    """vol(V) ≥ vol(C)/d₃(∞); ``cover_degree`` = 2 when vol(C) belongs to an index-2 cover."""
    if not cusp_vol > 0:
        raise ValueError("cusp volume must be positive")
    return cusp_vol / (cover_degree * D3_INF)
