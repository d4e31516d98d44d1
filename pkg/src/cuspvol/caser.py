"""Registry of cusp configurations and the certification of the minimal volume.

Every row solves its constraint for d (or e), evaluates the cusp volume and the
density lower bound, and derives a verdict from volume comparison and the exact
arithmeticity test. Nothing in the verdict path is looked up.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import horoball as hb
from .coxeter import Verdict, is_arithmetic
from .horoball import CuspDiagram, CuspType, Placement
from .volume import L, Orthoscheme, PI, bianchi_covolume, v_star, vol_named, vol_orthoscheme

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
CROSSCHECK_TOL = 1e-9
EQUAL_TOL = 1e-9


class RegistryError(RuntimeError):
    """A row whose constraint cannot be solved or whose two solutions disagree."""


class CaseVerdict(enum.Enum):
    REALIZED_BY = "REALIZED_BY"
    EXCLUDED_VOLUME = "EXCLUDED_VOLUME"
    EXCLUDED_ARITHMETIC = "EXCLUDED_ARITHMETIC"
    IMPOSSIBLE = "IMPOSSIBLE"
    UNRESOLVED = "UNRESOLVED"


# ---------------------------------------------------------------- constraints


@dataclass(frozen=True)
class Constraint:
    """d from a closed form, from a monotone residual on a bracket, or both."""

    description: str
    closed_form: Callable[[], float] | None = None
    residual: Callable[[float], float] | None = None
    bracket: tuple[float, float] | None = None

    def solve(self) -> tuple[float, float | None]:
        """Return (value, |closed − bisection|) with the cross-check enforced."""
        root = None
        if self.residual is not None:
            if self.bracket is None:
                raise RegistryError(f"{self.description}: residual without bracket")
            try:
                root = hb.bisect(self.residual, *self.bracket)
            except ValueError as exc:
                raise RegistryError(f"{self.description}: {exc}") from None
        if self.closed_form is None:
            if root is None:
                raise RegistryError(f"{self.description}: nothing to solve")
            return root, None
        value = self.closed_form()
        if root is None:
            return value, None
        diff = abs(value - root)
        if diff > CROSSCHECK_TOL:
            raise RegistryError(f"{self.description}: closed form {value} vs bisection {root}")
        return value, diff


def fixed(value: float, description: str) -> Constraint:
    return Constraint(description, closed_form=lambda: value)


def _cubic_root(p: float, q: float) -> float:
    """Real root of x³ + px + q with positive discriminant."""
    disc = (q / 2) ** 2 + (p / 3) ** 3
    s = math.sqrt(disc)
    return float(np.cbrt(-q / 2 + s) + np.cbrt(-q / 2 - s))


# closed forms and residuals for the scenario constants

def coincide_a3_residual(d: float) -> float:
    """(1/w)-balls meet at a₃: w = √3/d fixes θ, then u = 1/d.

    θ ≤ π/6 needs d ≥ 1.5888 and cos θ ≤ 1 needs d ≤ 1.6529; the bracket stays inside.
    """
    c = (d * d - 2.0 / (d * d)) / 2.0
    u2 = d * d + 3.0 / (d * d) - SQRT3 * math.sqrt(max(1.0 - c * c, 0.0)) - 3.0 * c
    return u2 - 1.0 / (d * d)


def coincide_a3_theta(d: float) -> float:
    return math.acos((d * d - 2.0 / (d * d)) / 2.0)


def coincide_a4_residual(d: float) -> float:
    """(1/w)-balls meet at the square centre: w = √2/d fixes θ, then |y − k| = 1/d.

    θ ≤ π/4 needs d ≥ 1.3899 and cos θ ≤ 1 needs d ≤ 1.5538.
    """
    c = (d * d - 1.0 / (d * d)) / 2.0
    s = math.sqrt(max(1.0 - c * c, 0.0))
    return 2.0 / (d * d) + d * d - 2.0 * (c + s) - 1.0 / (d * d)


def coincide_a4_theta(d: float) -> float:
    return math.acos((d * d - 1.0 / (d * d)) / 2.0)


def w_sq(d: float, theta: float) -> float:
    return d * d + 1.0 / (d * d) - 2.0 * math.cos(theta)


def truncated_pi3(n: float) -> float:
    return vol_orthoscheme(Orthoscheme(PI / n, PI / 3, truncated=True))


def truncated_pi6(n: float) -> float:
    return vol_orthoscheme(Orthoscheme(PI / n, PI / 6, truncated=True))


def cusp_threshold(coefficient: float) -> float:
    """d solving c·d²/d₃ = v*, where the cusp volume is c·d²."""
    target = v_star() * hb.D3_INF
    return hb.bisect(lambda d: coefficient * d * d - target, 1.0, 3.0)


# ---------------------------------------------------------------- scenarios


@dataclass(frozen=True)
class Exact:
    """Exact orbifold volume; ``orientable`` values allow an index-2 quotient."""

    label: str
    evaluate: Callable[[], float]
    orientable: bool = False

    @classmethod
    def named(cls, symbol: str, orientable: bool = False) -> Exact:
        entry = vol_named(symbol)
        return cls(entry.symbol, lambda: entry.volume, orientable)


@dataclass(frozen=True)
class Scenario:
    id: str
    row: int
    cusp_type: str
    classes: int
    placement: Placement
    tangency_pattern: str
    mirror: bool
    constraint: Constraint | None
    argument: str
    theta: Callable[[float], float] | None = None
    tau: Callable[[float], float] | None = None
    cover_degree: int = 1
    bound: Callable[[float], float] | None = None
    bound_label: str = ""
    exact: Exact | None = None
    witness: str | None = None
    impossible: str | None = None
    notes: str = ""


@dataclass(frozen=True)
class ScenarioSolution:
    id: str
    row: int
    cusp_type: str
    classes: int
    placement: str
    d: float | None
    theta: float | None
    cusp_volume: float | None
    cusp_formula: str | None
    volume_bound: float | None
    exact_volume: float | None
    compared_value: float | None
    verdict: CaseVerdict
    realized_by: str | None
    arithmetic: str | None
    margin: float | None
    crosscheck: float | None
    argument: str
    notes: str

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "row": self.row,
            "cusp_type": self.cusp_type,
            "classes": self.classes,
            "placement": self.placement,
            "d": _r(self.d),
            "theta": _r(self.theta),
            "cusp_volume": _r(self.cusp_volume),
            "cusp_formula": self.cusp_formula,
            "volume_bound": _r(self.volume_bound),
            "exact_volume": _r(self.exact_volume),
            "compared_value": _r(self.compared_value),
            "verdict": self.verdict.value,
            "realized_by": self.realized_by,
            "arithmetic": self.arithmetic,
            "margin": _r(self.margin),
            "crosscheck": _r(self.crosscheck),
            "argument": self.argument,
            "notes": self.notes,
        }


def _r(x: float | None, places: int = 12) -> float | None:
    return None if x is None else round(x, places)


def _cusp_type(s: Scenario) -> CuspType | None:
    try:
        return CuspType.parse(s.cusp_type)
    except ValueError:
        return None


def witness_arithmetic(witness: str) -> Verdict:
    """``coxeter:<symbol>`` runs the exact cycle test; ``bianchi:<d>`` is arithmetic by construction."""
    kind, _, arg = witness.partition(":")
    if kind == "coxeter":
        return is_arithmetic(arg)
    if kind == "bianchi":
        d = int(arg)
        bianchi_covolume(d)  # validates d
        return Verdict.ARITHMETIC
    raise RegistryError(f"unknown witness {witness!r}")


def solve_scenario(s: Scenario) -> ScenarioSolution:
    d = crosscheck = theta = None
    if s.constraint is not None:
        d, crosscheck = s.constraint.solve()
    if s.theta is not None and d is not None:
        theta = s.theta(d)
    cusp_vol = formula = bound = None
    ct = _cusp_type(s)
    if ct is not None and d is not None and ct is not CuspType.T333:
        tau = s.tau(d) if s.tau is not None else None
        diag = CuspDiagram(ct, d, s.placement, tau=tau, classes=s.classes, mirror=s.mirror)
        cv = hb.cusp_volume(diag)
        cusp_vol, formula = cv.value, cv.formula
        bound = hb.min_orbifold_volume_bound(cusp_vol, s.cover_degree)
    elif ct is not None and ct is not CuspType.T333 and s.placement is Placement.NONE:
        cv = hb.cusp_volume(CuspDiagram(ct, 1.0, Placement.NONE))
        cusp_vol, formula = cv.value, cv.formula
        bound = hb.min_orbifold_volume_bound(cusp_vol, s.cover_degree)
    if s.bound is not None:
        bound = s.bound(d) if d is not None else s.bound(float("nan"))
        formula = (formula + "; " if formula else "") + s.bound_label
    exact = s.exact.evaluate() if s.exact is not None else None
    compared = None
    if exact is not None:
        compared = exact / 2.0 if s.exact.orientable else exact
    elif bound is not None:
        compared = bound

    arith = witness_arithmetic(s.witness) if s.witness else None
    vs = v_star()
    realized = None
    margin = None if compared is None else compared - vs
    if s.impossible is not None:
        verdict = CaseVerdict.IMPOSSIBLE
    elif arith is Verdict.ARITHMETIC:
        verdict = CaseVerdict.EXCLUDED_ARITHMETIC
    elif compared is None:
        verdict = CaseVerdict.UNRESOLVED
    elif compared > vs + EQUAL_TOL:
        verdict = CaseVerdict.EXCLUDED_VOLUME
    elif abs(compared - vs) <= EQUAL_TOL and s.witness and exact is not None:
        verdict = CaseVerdict.REALIZED_BY
        realized = s.witness.partition(":")[2]
    else:
        verdict = CaseVerdict.UNRESOLVED
    notes = s.notes
    if s.impossible:
        notes = (notes + " " if notes else "") + s.impossible
    return ScenarioSolution(
        id=s.id,
        row=s.row,
        cusp_type=s.cusp_type,
        classes=s.classes,
        placement=s.placement.value,
        d=d,
        theta=theta,
        cusp_volume=cusp_vol,
        cusp_formula=formula,
        volume_bound=bound,
        exact_volume=exact,
        compared_value=compared,
        verdict=verdict,
        realized_by=realized,
        arithmetic=None if arith is None else arith.value,
        margin=margin,
        crosscheck=crosscheck,
        argument=s.argument,
        notes=notes,
    )


# ---------------------------------------------------------------- registry

A2, A3, A4, A6, NONE = Placement.A2, Placement.A3, Placement.A4, Placement.A6, Placement.NONE


def _mu3() -> float:
    return 3.0 * L(PI / 3)


def _omega3() -> float:
    return 8.0 * L(PI / 4)


def _chebyshev_rows() -> list[Scenario]:
    rows = []
    for kmax in range(0, 21):
        for case in "AB":
            n = 2 * kmax + (2 if case == "A" else 3)
            # n = 2 has no diagram, n = 3 is the touching case d = 1, n = 5 is the aligned tangent pair
            if n in (2, 3, 5):
                continue
            cons = Constraint(
                f"end condition {case}, kmax = {kmax}",
                closed_form=lambda k=kmax, c=case: hb.d_from_end_condition(k, c),
                residual=lambda x, k=kmax, c=case: hb.end_condition_residual(x, k, c),
                bracket=(2 * math.cos(PI / (n - 1)) + 1e-9, 2 * math.cos(PI / (n + 1)) - 1e-9),
            )
            common = dict(
                row=11,
                cusp_type="2,3,6",
                classes=1,
                placement=A6,
                tangency_pattern=f"ALIGNED_CHEBYSHEV({kmax},{case})",
                mirror=True,
                constraint=cons,
                argument="aligned (1/d_k)-balls, end conditions A/B and the reflection proposition",
            )
            if n <= 6:
                sym = f"[{n},3,6]"
                rows.append(Scenario(
                    id=f"chebyshev-{kmax}{case}/{sym}", exact=Exact.named(sym),
                    witness=f"coxeter:{sym}", **common,
                ))
            else:
                rows.append(Scenario(
                    id=f"chebyshev-{kmax}{case}/Rt(pi/{n},pi/3)",
                    bound=lambda _d, n=n: truncated_pi3(n),
                    bound_label=f"vol R_t(π/{n}, π/3)",
                    notes="[n,3,6] has infinite covolume for n ≥ 7; the polar truncation is the smallest admissible polyhedron.",
                    **common,
                ))
    return rows


def scenario_registry() -> list[Scenario]:
    rows: list[Scenario] = []
    add = rows.append

    # 1. several cusps
    for sid, val, wit in [
        ("multi-cusp/mu3-6", lambda: _mu3() / 6, "coxeter:[3,6,3]"),
        ("multi-cusp/5mu3-24", lambda: 5 * _mu3() / 24, None),
        ("multi-cusp/omega3-16", lambda: _omega3() / 16, None),
        ("multi-cusp/mu3-4", lambda: _mu3() / 4, None),
    ]:
        add(Scenario(sid, 1, "multi", 1, NONE, "MULTI_CUSP", True, None,
                     "smallest volumes of orbifolds with at least two cusps",
                     exact=Exact(sid.split("/")[1], val), witness=wit))

    # 2. one non-rigid cusp; volumes of orientable orbifolds
    for sid, val, wit in [
        ("non-rigid/omega3-12", lambda: _omega3() / 12, "bianchi:1"),
        ("non-rigid/0.444457", lambda: bianchi_covolume(7) / 2, "bianchi:7"),
        ("non-rigid/0.457983", lambda: _omega3() / 8, "bianchi:1"),
    ]:
        add(Scenario(sid, 2, "non-rigid", 1, NONE, "NON_RIGID_LIMIT", False, None,
                     "three smallest limit volumes for one non-rigid cusp",
                     exact=Exact(sid.split("/")[1], val, orientable=True), witness=wit,
                     notes="group named by the limit-volume classification; arithmetic as a Bianchi group."))

    # 3. {3,3,3}; orientable double covers
    for sid, val, wit in [
        ("333/mu3-6", lambda: _mu3() / 6, "coxeter:[3,3^{[3]}]"),
        ("333/mu3-3", lambda: _mu3() / 3, "coxeter:[3,6,3]"),
        ("333/5mu3-12", lambda: 5 * _mu3() / 12, None),
    ]:
        add(Scenario(sid, 3, "3,3,3", 1, NONE, "CUSP_333", False, None,
                     "a minimal non-arithmetic orbifold has no {3,3,3} cusp",
                     exact=Exact(sid.split("/")[1], val, orientable=True), witness=wit))

    # 4. full-sized balls away from singular points
    for ct in ("2,3,6", "2,4,4"):
        add(Scenario(f"{ct.replace(',', '')}-nonsingular", 4, ct, 1, NONE, "NON_SINGULAR", True, None,
                     "full-sized balls not centred at singular points"))

    # 5. {2,3,6}, touching full-sized balls
    add(Scenario("236-a6-d1/[3,3,6]", 5, "2,3,6", 1, A6, "FULLSIZED_TOUCH", True,
                 fixed(1.0, "d = 1"), "{2,3,6}, case (i) at a₆",
                 exact=Exact.named("[3,3,6]"), witness="coxeter:[3,3,6]"))
    add(Scenario("236-a3-d1/[3,6,3]xZ2", 5, "2,3,6", 1, A3, "FULLSIZED_TOUCH", True,
                 fixed(1.0, "d = 1"), "{2,3,6}, case (i) at a₃",
                 exact=Exact.named("[3,6,3]⋊Z2"), witness="coxeter:[3,6,3]"))
    add(Scenario("236-a2-d1/[4,3,6]", 5, "2,3,6", 1, A2, "FULLSIZED_TOUCH", True,
                 fixed(1.0, "d = 1"), "{2,3,6}, case (i) at a₂",
                 exact=Exact.named("[4,3,6]"), witness="coxeter:[4,3,6]",
                 notes="halving [3^{1,1},6] along its symmetry plane gives [4,3,6]."))

    # 6. a (1/d)-ball touching three full-sized balls
    add(Scenario("single-1d-touches-3/[3,6,3]", 6, "2,3,6", 1, A6, "SINGLE_1D_TOUCHES_3", True,
                 Constraint("1/d = d/√3", lambda: 3 ** 0.25, lambda d: d / SQRT3 - 1 / d, (1.0, 2.0)),
                 "a (1/d)-ball touching at least two full-sized balls",
                 witness="coxeter:[3,6,3]"))

    # 7. aligned tangent pair: the minimum
    add(Scenario("two-1d-tangent-aligned/[5,3,6]", 7, "2,3,6", 1, A6, "TWO_1D_TANGENT_ALIGNED", True,
                 Constraint("d = 2/d + 1/d²", lambda: 2 * math.cos(PI / 5),
                            lambda d: d ** 3 - 2 * d - 1, (1.2, 2.0)),
                 "two tangent (1/d)-balls with centres on an edge",
                 exact=Exact.named("[5,3,6]"), witness="coxeter:[5,3,6]"))

    # 8. tangent pair off the edge, and the w ≥ 1 consequence without mirror
    add(Scenario("two-1d-tangent-nonaligned", 8, "2,3,6", 1, A6, "TWO_1D_TANGENT_NONALIGNED", False,
                 Constraint("d⁶ − 2d⁴ − 2d² + 1 ≥ 0", lambda: 2 * math.cos(PI / 5),
                            lambda d: d ** 6 - 2 * d ** 4 - 2 * d * d + 1, (1.2, 2.0)),
                 "tangency at a₂ with w ≥ 1; rotations only off the edge",
                 notes="lower bound on d; the bound grows with d."))
    sigma = math.sqrt(3 + SQRT3)
    add(Scenario("236-a6-no-mirror-w-ge-1", 8, "2,3,6", 1, A6, "NO_MIRROR_W_GE_1", False,
                 Constraint("w ≥ 1 at θ = π/6", lambda: (sigma + math.sqrt(sigma ** 2 - 4)) / 2,
                            lambda d: w_sq(d, PI / 6) - 1, (1.2, 2.0)),
                 "w ≥ 1 consequence for orientation-preserving Γ∞",
                 notes="lower bound on d; the bound grows with d."))

    # 9. (1/w)-balls coinciding at a₃
    coincide = Constraint("w = √3/d and u = 1/d", lambda: 7 ** 0.25, coincide_a3_residual, (1.59, 1.65))
    add(Scenario("1w-coincide-a3", 9, "2,3,6", 1, A6, "1W_COINCIDE_AT_A3", False, coincide,
                 "three (1/w)-balls meeting at a₃", theta=coincide_a3_theta,
                 notes="no mirror symmetry; the orbifold itself is arithmetic (arithmetic orbifold row)."))
    add(Scenario("1w-coincide-a3/arithmetic-orbifold", 9, "2,3,6", 1, A6, "1W_COINCIDE_AT_A3", False, coincide,
                 "oriented orbifold of the a₃ coincidence", theta=coincide_a3_theta,
                 exact=Exact.named("L(pi/3)"), witness="coxeter:[3,3,6]",
                 notes="commensurable with [3,3,6]; volume Л(π/3)."))

    # 10. two (1/w)-balls coinciding at a₂
    add(Scenario("1w-coincide-a2/[6,3,6]", 10, "2,3,6", 1, A6, "1W_COINCIDE_AT_A2", True,
                 Constraint("d = 2/w at θ = 0", lambda: SQRT3, lambda d: d ** 4 - 2 * d * d - 3, (1.2, 2.0)),
                 "two (1/w)-balls meeting at an edge midpoint", theta=lambda d: 0.0,
                 exact=Exact.named("[6,3,6]/2"), witness="coxeter:[6,3,6]"))

    # 11. aligned Chebyshev family and its closure
    rows.extend(_chebyshev_rows())
    add(Scenario("chebyshev-closure-sqrt3-2", 11, "2,3,6", 1, A6, "ALIGNED_CHEBYSHEV(closure)", True,
                 fixed(2.0, "√3 < d ≤ 2"),
                 "truncated orthoscheme bound for √3 < d ≤ 2",
                 bound=lambda _d: truncated_pi3(7), bound_label="vol R_t(π/7, π/3)",
                 notes="volume increases as α decreases, so π/7 is the worst case."))
    add(Scenario("chebyshev-closure-d-gt-2", 11, "2,3,6", 1, A6, "BISECTOR", True,
                 Constraint("√3d²/(48 d₃) = v*", lambda: cusp_threshold(SQRT3 / 48)),
                 "truncated orthoscheme R_t(β, π/6) for 2 < d ≤ 2.013813",
                 theta=lambda d: hb.beta_from_d(d),
                 bound=lambda _d: truncated_pi6(15), bound_label="vol R_t(π/15, π/6)",
                 notes="theta column holds β(d) < π/15 at the threshold."))

    # 12. (1/d)-balls on the bisectors
    add(Scenario("bisector/[(3^3,6)]", 12, "2,3,6", 1, A6, "BISECTOR", True,
                 Constraint("w = 1/w + 1/(wd²) at θ = π/6", lambda: math.sqrt(1 + SQRT3),
                            lambda d: w_sq(d, PI / 6) - 1 - 1 / (d * d), (1.2, 2.0)),
                 "twelve (1/w)-balls around a full-sized ball", theta=lambda d: PI / 6,
                 exact=Exact.named("[(3^3,6)]/2"), witness="coxeter:[(3^3,6)]",
                 notes="Γ is the extension of [(3^3,6)] by the order-2 symmetry r."))
    for k in (4, 5, 6):
        sym = f"[(3,{k},3,6)]"
        entry = vol_named(sym)
        add(Scenario(f"bisector-P(pi/{k})/{entry.symbol}", 12, "2,3,6", 1, A6, "BISECTOR", True, None,
                     "reflection subgroup Γ' with polyhedron P(π/k)",
                     exact=Exact(f"½ vol {entry.symbol}", lambda e=entry: e.volume / 2), witness=f"coxeter:{sym}",
                     notes="Γ' has index at most 2 in Γ."))
    add(Scenario("bisector-P(pi/k)-k-ge-6", 12, "2,3,6", 1, A6, "BISECTOR", True,
                 fixed(2 * SQRT3, "e = d + √3 ≥ 2√3"),
                 "cusp volume of Γ' for d ≥ √3", cover_degree=2,
                 notes="d column holds the side e of the diagram of Γ'."))

    # 13. case (b)
    add(Scenario("bisector-case-b", 13, "2,3,6", 1, A6, "BISECTOR_CASE_B", True, None,
                 "two touching deepest balls on the bisector",
                 impossible="rsr sends (1/d_k)-balls to (1/d_{k+2})-balls, so the last two levels lie on different lines."))

    # 14. {2,3,6}, full-sized balls at a₃
    add(Scenario("236-a3-no-mirror", 14, "2,3,6", 1, A3, "ORIENTATION_PRESERVING", False,
                 fixed(1.0, "d > 1"), "orientation-preserving Γ∞ at a₃",
                 notes="strict lower bound d > 1."))
    add(Scenario("236-a3-x-on-e23", 14, "2,3,6", 1, A3, "SINGLE_1D_ON_E23", True,
                 Constraint("d/2 ≥ 1/d", lambda: SQRT2, lambda d: d * d - 2, (1.0, 2.0)),
                 "(1/d)-ball centre on the segment a₃a₂"))
    add(Scenario("236-a3-x-on-e36", 14, "2,3,6", 1, A3, "SINGLE_1D_ON_E36", True,
                 Constraint("d ≥ 1/d² + 1/d", lambda: _cubic_root(-1.0, -1.0),
                            lambda d: d ** 3 - d - 1, (1.0, 2.0)),
                 "(1/d)-ball centre on the segment a₃a₆, tangent to the boundary"))

    # 15. {2,3,6}, full-sized balls at a₂
    add(Scenario("236-a2-no-mirror", 15, "2,3,6", 1, A2, "ORIENTATION_PRESERVING", False,
                 fixed(1.0, "d > 1"), "orientation-preserving Γ∞ at a₂",
                 notes="strict lower bound d > 1."))
    add(Scenario("236-a2-touches-3", 15, "2,3,6", 1, A2, "SINGLE_1D_TOUCHES_3", True,
                 Constraint("1/d = d/√3", lambda: 3 ** 0.25, lambda d: d / SQRT3 - 1 / d, (1.0, 2.0)),
                 "(1/d)-ball at a₃ touching three full-sized balls"))
    add(Scenario("236-a2-touches-pair", 15, "2,3,6", 1, A2, "SINGLE_1D_TOUCHES_2", True,
                 Constraint("1/d = d/2", lambda: SQRT2, lambda d: d * d - 2, (1.0, 2.0)),
                 "(1/d)-ball aligned with the pair it touches"))
    add(Scenario("236-a2-ptolemy", 15, "2,3,6", 1, A2, "PTOLEMY", True,
                 Constraint("w² = 1/d + 1/d²", lambda: _cubic_root(-1.0, -1.0),
                            lambda d: d ** 3 - d - 1, (1.0, 2.0)),
                 "tangent (1/d)-balls forming an isosceles trapezoid",
                 notes="also covers non-touching balls, where w² = μd + 1/d² is larger."))

    # 16. {2,4,4}, touching full-sized balls
    add(Scenario("244-a4-d1/[3,4,4]", 16, "2,4,4", 1, A4, "FULLSIZED_TOUCH", True,
                 fixed(1.0, "d = 1"), "{2,4,4}, case (i) at a₄",
                 exact=Exact.named("[3,4,4]"), witness="coxeter:[3,4,4]"))
    add(Scenario("244-a2-d1/[4^{1,1},3]", 16, "2,4,4", 1, A2, "FULLSIZED_TOUCH", True,
                 fixed(1.0, "d = 1"), "{2,4,4}, case (i) at a₂",
                 exact=Exact.named("[4^{1,1},3]"), witness="coxeter:[4^{1,1},3]"))

    # 17. (1/d)-ball touching four
    add(Scenario("244-a2-touches-4", 17, "2,4,4", 1, A2, "SINGLE_1D_TOUCHES_4", True,
                 Constraint("d/√2 = 1/d", lambda: 2 ** 0.25, lambda d: d * d - SQRT2, (1.0, 2.0)),
                 "(1/d)-ball at the centre, full-sized balls at a₂"))
    add(Scenario("244-a4-touches-4/[(4^4)]", 17, "2,4,4", 1, A4, "SINGLE_1D_TOUCHES_4", True,
                 Constraint("d/√2 = 1/d", lambda: 2 ** 0.25, lambda d: d * d - SQRT2, (1.0, 2.0)),
                 "(1/d)-ball at the centre, full-sized balls at a₄", witness="coxeter:[(4^4)]"))

    # 18. (1/d)-ball touching two
    add(Scenario("244-a2-touches-2", 18, "2,4,4", 1, A2, "SINGLE_1D_TOUCHES_2", True,
                 Constraint("d/2 = 1/d", lambda: SQRT2, lambda d: d * d - 2, (1.0, 2.0)),
                 "(1/d)-ball aligned with two full-sized balls at a₂"))
    add(Scenario("244-a4-touches-2", 18, "2,4,4", 1, A4, "SINGLE_1D_TOUCHES_2", True,
                 Constraint("d/2 = 1/d", lambda: SQRT2, lambda d: d * d - 2, (1.0, 2.0)),
                 "(1/d)-ball aligned with two full-sized balls at a₄",
                 impossible="halving [4,4,4] by the plane through p₂p₃ cuts the cusp sector, contradicting maximality."))

    # 19. single touching at a₂ and a₄, orientation-preserving cases
    add(Scenario("244-a2-ptolemy", 19, "2,4,4", 1, A2, "PTOLEMY", True,
                 Constraint("d³ − √2d − 1 ≥ 0", lambda: _cubic_root(-SQRT2, -1.0),
                            lambda d: d ** 3 - SQRT2 * d - 1, (1.0, 2.0)),
                 "isosceles trapezoid at a₂ with 0 ≤ θ ≤ π/4"))
    add(Scenario("244-a2-no-mirror", 19, "2,4,4", 1, A2, "ORIENTATION_PRESERVING", False,
                 fixed(1.0, "d > 1"), "orientation-preserving Γ∞, s = 2",
                 notes="strict lower bound d > 1."))
    add(Scenario("244-a4-no-mirror-w-ge-1", 19, "2,4,4", 1, A4, "NO_MIRROR_W_GE_1", False,
                 Constraint("d⁴ − (1+√2)d² + 1 ≥ 0",
                            lambda: math.sqrt((1 + SQRT2 + math.sqrt((1 + SQRT2) ** 2 - 4)) / 2),
                            lambda d: d ** 4 - (1 + SQRT2) * d * d + 1, (1.2, 2.0)),
                 "orientation-preserving Γ∞, s = 4, w ≥ 1"))
    add(Scenario("244-a4-tangent-aligned", 19, "2,4,4", 1, A4, "TWO_1D_TANGENT_ALIGNED", True,
                 Constraint("d = 2/d + 1/d²", lambda: 2 * math.cos(PI / 5),
                            lambda d: d ** 3 - 2 * d - 1, (1.2, 2.0)),
                 "tangent (1/d)-balls at a₂, full-sized balls at a₄"))

    # 20. (1/w)-balls coinciding at the centre of the square
    coincide4 = Constraint("w = √2/d and |y − k| = 1/d", lambda: 5 ** 0.25, coincide_a4_residual, (1.39, 1.55))
    add(Scenario("244-1w-coincide-centre", 20, "2,4,4", 1, A4, "1W_COINCIDE_AT_A4", False, coincide4,
                 "four (1/w)-balls meeting at the centre", theta=coincide_a4_theta,
                 notes="no mirror symmetry; the orbifold itself is arithmetic (arithmetic orbifold row)."))
    add(Scenario("244-1w-coincide-centre/arithmetic-orbifold", 20, "2,4,4", 1, A4, "1W_COINCIDE_AT_A4", False, coincide4,
                 "oriented orbifold of the centre coincidence", theta=coincide_a4_theta,
                 exact=Exact.named("L(pi/4)"), witness="coxeter:[3,4,4]",
                 notes="commensurable with [3,4,4]; volume Л(π/4)."))

    # 21. (1/w)-balls on edges or diagonals
    add(Scenario("244-1w-edges", 21, "2,4,4", 1, A4, "1W_ON_EDGES", True,
                 Constraint("1/w = d/2 at θ = 0", lambda: SQRT3, lambda d: d - 1 / d - 2 / d, (1.2, 2.0)),
                 "(1/w)-ball touching two (1/d)-balls on an edge", theta=lambda d: 0.0))
    add(Scenario("244-1w-diagonals/[(4^3,3)]", 21, "2,4,4", 1, A4, "1W_ON_DIAGONALS", True,
                 Constraint("w = 1/w + 1/(wd²) at θ = π/4", lambda: math.sqrt(1 + SQRT2),
                            lambda d: w_sq(d, PI / 4) - 1 - 1 / (d * d), (1.2, 2.0)),
                 "(1/w)-ball touching two (1/d)-balls on the diagonals", theta=lambda d: PI / 4,
                 exact=Exact.named("[(4^3,3)]/2"), witness="coxeter:[(3,4^3)]"))

    # 22. several classes, {2,3,6}; oriented cusp volumes, index-2 cover
    mc = dict(row=22, cusp_type="2,3,6", mirror=False, cover_degree=2)
    add(Scenario("236-3classes", classes=3, placement=A2, tangency_pattern="THREE_CLASSES",
                 constraint=fixed(1.0, "d₀(a₂, a₃) = 1"), argument="three classes of full-sized balls",
                 tau=lambda e: 2 * SQRT3 * e, **mc))
    add(Scenario("236-a6a3-e1/[3,3,6]", classes=2, placement=A6, tangency_pattern="TWO_CLASS_E",
                 constraint=fixed(1.0, "e = 1"), argument="classes at a₆ and a₃ touching",
                 tau=lambda e: SQRT3 * e, witness="coxeter:[3,3,6]",
                 exact=Exact("½Л(π/3)", lambda: L(PI / 3) / 2),
                 notes="side pairing of the regular ideal tetrahedron; volume from six copies.", **mc))
    add(Scenario("236-a6a3-e-big", classes=2, placement=A6, tangency_pattern="TWO_CLASS_E",
                 constraint=Constraint("e² = 2cos(π/6)", lambda: 3 ** 0.25,
                                       lambda e: e * e - 2 * math.cos(PI / 6), (1.0, 2.0)),
                 argument="classes at a₆ and a₃, (1/e)-ball touching both",
                 tau=lambda e: SQRT3 * e, **mc))
    add(Scenario("236-a6a2-e1", classes=2, placement=A6, tangency_pattern="TWO_CLASS_E",
                 constraint=fixed(1.0, "e = 1"), argument="classes at a₆ and a₂ touching",
                 tau=lambda e: 2 * e,
                 impossible="the order-2 rotations force one axis to have orders 2 and 6 at once.", **mc))
    add(Scenario("236-a6a2-e-big", classes=2, placement=A6, tangency_pattern="TWO_CLASS_E",
                 constraint=Constraint("(1/e)-ball on the bisector touching three", lambda: 3 ** 0.25,
                                       lambda e: e * e - SQRT3, (1.0, 2.0)),
                 argument="classes at a₆ and a₂, e > 1",
                 tau=lambda e: 2 * e, **mc))
    add(Scenario("236-a2a3", classes=2, placement=A2, tangency_pattern="TWO_CLASS_E",
                 constraint=fixed(1.0, "d₀(a₂, a₃) ≥ 1"), argument="classes at a₂ and a₃",
                 tau=lambda e: 2 * SQRT3 * e,
                 notes="τ taken as 2√3 so that √3τ²/24 gives the stated √3/2.", **mc))

    # 23. several classes, {2,4,4}
    mc = dict(row=23, cusp_type="2,4,4", mirror=False, cover_degree=2)
    for case in (1, 2):
        add(Scenario(f"244-2classes-e1-case{case}/[4,4,4]", classes=2, placement=A4,
                     tangency_pattern="TWO_CLASS_E", constraint=fixed(1.0, "e = 1"),
                     argument=f"two classes at 4-fold points touching, case {case}",
                     tau=lambda e: SQRT2 * e, witness="coxeter:[4,4,4]",
                     notes="side pairing of the regular ideal octahedron commensurable with [4,4,4].", **mc))
    add(Scenario("244-2classes-e-big", classes=2, placement=A4, tangency_pattern="TWO_CLASS_E",
                 constraint=Constraint("e² = 2cos(π/4)", lambda: 2 ** 0.25,
                                       lambda e: e * e - SQRT2, (1.0, 2.0)),
                 argument="two classes at 4-fold points, e > 1", tau=lambda e: SQRT2 * e, **mc))
    add(Scenario("244-2classes-a4a2", classes=2, placement=A4, tangency_pattern="TWO_CLASS_E",
                 constraint=fixed(2.0, "τ ≥ 2"), argument="classes at 4- and 2-fold points",
                 tau=lambda t: t, notes="d column holds τ.", **mc))
    add(Scenario("244-3classes", classes=3, placement=A4, tangency_pattern="THREE_CLASSES",
                 constraint=fixed(2.0, "τ ≥ 2"), argument="three classes of full-sized balls",
                 tau=lambda t: t, notes="d column holds τ.", **mc))

    return rows


# ---------------------------------------------------------------- report


@dataclass
class Report:
    rows: list[ScenarioSolution]
    minimum: float | None
    argmin: str | None
    failures: list[str] = field(default_factory=list)
    thresholds: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "rows": [r.to_json() for r in self.rows],
            "minimum": _r(self.minimum),
            "argmin": self.argmin,
            "v_star": _r(v_star()),
            "thresholds": {k: _r(v) for k, v in self.thresholds.items()},
            "ok": self.ok,
            "failures": self.failures,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, indent=2, sort_keys=False)


MINIMUM_ROW = "two-1d-tangent-aligned/[5,3,6]"


def thresholds() -> dict[str, float]:
    return {
        "d_max_mirror": cusp_threshold(SQRT3 / 48),
        "d_max_orientation_preserving": cusp_threshold(SQRT3 / 24),
    }


def run_case_analysis(
    only: str | None = None,
    registry: Sequence[Scenario] | None = None,
) -> Report:
    """Solve every row and certify the minimum among non-arithmetic rows."""
    scenarios = list(scenario_registry() if registry is None else registry)
    if only is not None:
        key = only.strip().strip("{}").replace(" ", "")
        scenarios = [s for s in scenarios if s.cusp_type == key]
    failures: list[str] = []
    rows: list[ScenarioSolution] = []
    seen: set[str] = set()
    order = {s.id: i for i, s in enumerate(scenarios)}
    for s in scenarios:
        if s.id in seen:
            failures.append(f"{s.id}: duplicate id")
            continue
        seen.add(s.id)
        try:
            rows.append(solve_scenario(s))
        except (RegistryError, ValueError) as exc:
            failures.append(f"{s.id}: {exc}")
    rows.sort(key=lambda r: (r.row, order[r.id]))

    candidates = [r for r in rows if r.verdict in (CaseVerdict.REALIZED_BY, CaseVerdict.EXCLUDED_VOLUME)]
    for r in rows:
        if r.verdict is CaseVerdict.UNRESOLVED:
            failures.append(f"{r.id}: value {r.compared_value} does not exceed v*")
        if r.verdict is CaseVerdict.EXCLUDED_VOLUME and not (r.margin is not None and r.margin > 0):
            failures.append(f"{r.id}: non-positive margin")
    minimum = argmin = None
    if candidates:
        best = min(candidates, key=lambda r: (r.compared_value, r.id))
        minimum, argmin = best.compared_value, best.id
    realized = [r.id for r in rows if r.verdict is CaseVerdict.REALIZED_BY]
    if only is None and registry is None:
        if realized != [MINIMUM_ROW]:
            failures.append(f"minimum realized by {realized}, expected [{MINIMUM_ROW}]")
        if argmin != MINIMUM_ROW or minimum is None or abs(minimum - v_star()) > EQUAL_TOL:
            failures.append(f"argmin {argmin} with minimum {minimum}")
    return Report(rows, minimum, argmin, failures, thresholds())


# ---------------------------------------------------------------- identities


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    theta: float
    lhs: float
    rhs: float
    residual: float
    printed_lhs: tuple[str, ...]
    matches: dict[str, bool]
    variants: dict[str, float]
    notes: str

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "theta": _r(self.theta),
            "lhs": _r(self.lhs),
            "rhs": _r(self.rhs),
            "residual": _r(self.residual, 15),
            "printed_lhs": list(self.printed_lhs),
            "matches": self.matches,
            "variants": {k: _r(v) for k, v in self.variants.items()},
            "notes": self.notes,
        }


def _matches(value: float, printed: str) -> bool:
    places = len(printed.split(".")[1])
    return abs(value - float(printed)) <= 0.5 * 10.0 ** (-places)


def verify_appendix_identities() -> list[IdentityCheck]:
    out = []
    t = math.acos(5 / (2 * math.sqrt(7)))
    lhs = L(PI / 3)
    rhs = 0.75 * L(t) + 0.5 * L(PI / 6 - t) + 0.25 * L(2 * PI / 3 - t) - 0.25 * L(PI / 6)
    grouped = 0.25 * (2 * (L(t) + L(PI / 6 - t) + L(5 * PI / 6)) + L(t) + L(2 * PI / 3 - t) + L(PI / 6))
    blue = L(t) + L(PI / 6 - t) + L(5 * PI / 6)
    red = L(t) + L(PI / 3 - t) + L(2 * PI / 3)
    out.append(IdentityCheck(
        name="A",
        theta=t,
        lhs=lhs,
        rhs=rhs,
        residual=abs(lhs - rhs),
        printed_lhs=("0.338314",),
        matches={"0.338314": _matches(lhs, "0.338314")},
        variants={
            "grouped_form": grouped,
            "tetrahedra_quarter_2blue_red": 0.25 * (2 * blue + red),
            "rhs_minus_lhs_over_L(pi/3)": (rhs - lhs) / lhs,
        },
        notes="both printed right-hand sides equal (9/8)Л(π/3); the tetrahedra with the stated angles give another value.",
    ))
    t = math.acos(2 / math.sqrt(5))
    lhs = L(PI / 4)
    grouped = 0.25 * (2 * (L(t) + L(PI / 4 - t) + L(3 * PI / 4)) + L(t) + L(PI / 2 - t) + L(PI / 2))
    expanded = 0.75 * L(t) + 0.5 * L(PI / 4 - t) + 0.25 * L(PI / 2 - t) - 0.25 * L(PI / 4)
    out.append(IdentityCheck(
        name="B",
        theta=t,
        lhs=lhs,
        rhs=grouped,
        residual=abs(lhs - grouped),
        printed_lhs=("0.457983", "0.45983"),
        matches={p: _matches(lhs, p) for p in ("0.457983", "0.45983")},
        variants={
            "expanded_form_as_printed": expanded,
            "expanded_with_half_coefficient": expanded - 0.25 * L(PI / 4),
        },
        notes="grouped form holds; the expanded line needs −½Л(π/4) instead of −¼Л(π/4).",
    ))
    return out


def registry_rows(rows: Iterable[Scenario]) -> set[int]:
    return {s.row for s in rows}
