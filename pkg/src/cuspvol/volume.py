"""Volumes of orthoschemes, ideal tetrahedra and the named Coxeter catalog."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .coxeter import (
    CoxeterSymbolError,
    Verdict,
    count_cusps,
    is_arithmetic,
    parse_coxeter_symbol,
    print_coxeter_symbol,
)
from .lobachevsky import DEFAULT_TOL, lob_value

PI = math.pi
ANGLE_TOL = 1e-12


def L(x: float) -> float:
    return lob_value(x, DEFAULT_TOL)


@dataclass(frozen=True)
class Orthoscheme:
    """R(α, β) with dihedral angles α, β, β′ = π/2 − β; truncated when α + β < π/2."""

    alpha: float
    beta: float
    truncated: bool | None = None

    def __post_init__(self) -> None:
        a, b = self.alpha, self.beta
        if not (0.0 < a < PI / 2 and 0.0 < b < PI / 2):
            raise ValueError("orthoscheme angles must lie in (0, π/2)")
        regime = a + b < PI / 2 - ANGLE_TOL
        if self.truncated is None:
            object.__setattr__(self, "truncated", regime)
        elif self.truncated != regime:
            kind = "truncated" if self.truncated else "non-truncated"
            raise ValueError(f"α + β = {a + b:.15g} is inconsistent with a {kind} orthoscheme")


@dataclass(frozen=True)
class IdealTetrahedron:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        if min(self.alpha, self.beta, self.gamma) <= 0.0:
            raise ValueError("ideal tetrahedron angles must be positive")
        if abs(self.alpha + self.beta + self.gamma - PI) > ANGLE_TOL:
            raise ValueError("ideal tetrahedron angles must sum to π")


def vol_orthoscheme(R: Orthoscheme | tuple[float, float]) -> float:
    """¼{Л(π/2+α−β) − Л(π/2+α+β) + 2Л(β)}; the same formula covers the truncated case."""
    if not isinstance(R, Orthoscheme):
        R = Orthoscheme(*R)
    a, b = R.alpha, R.beta
    return 0.25 * (L(PI / 2 + a - b) - L(PI / 2 + a + b) + 2.0 * L(b))


def vol_ideal_tetrahedron(T: IdealTetrahedron | tuple[float, float, float]) -> float:
    if not isinstance(T, IdealTetrahedron):
        T = IdealTetrahedron(*T)
    return L(T.alpha) + L(T.beta) + L(T.gamma)


def family_pi3(k: float) -> float:
    """Closed form of vol R(π/k, π/3): ½Л(π/3) + ¼{Л(π/6+π/k) + Л(π/6−π/k)}."""
    return 0.5 * L(PI / 3) + 0.25 * (L(PI / 6 + PI / k) + L(PI / 6 - PI / k))


def family_pi6(k: float) -> float:
    """Closed form of vol R(π/k, π/6): ½Л(π/6) + ¼{Л(π/3+π/k) + Л(π/3−π/k)}."""
    return 0.5 * L(PI / 6) + 0.25 * (L(PI / 3 + PI / k) + L(PI / 3 - PI / k))


def schlafli_monotonicity_check(
    beta: float, alpha_grid: Sequence[float], truncated: bool | None = None
) -> bool:
    """True iff vol R(α, β) strictly decreases along the increasing α grid.

    The formula is the same on both sides of α + β = π/2, so a grid may cross
    it; pinning ``truncated`` rejects any α from the other regime.
    """
    alphas = list(alpha_grid)
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("alpha grid must be strictly increasing")
    regimes = {Orthoscheme(a, beta).truncated for a in alphas}
    if truncated is not None and regimes != {truncated}:
        raise ValueError("grid mixes truncated and non-truncated orthoschemes")
    vols = [vol_orthoscheme(Orthoscheme(a, beta)) for a in alphas]
    return all(v1 > v2 for v1, v2 in zip(vols, vols[1:]))


def _kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n ≥ 1."""
    if math.gcd(D, n) != 1:
        return 0
    sign = 1
    while n % 2 == 0:
        n //= 2
        if D % 8 in (3, 5):
            sign = -sign
    a, m = D % n, n
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                sign = -sign
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            sign = -sign
        a %= m
    return sign if m == 1 else 0


def bianchi_covolume(d: int) -> float:
    """Covolume of PSL(2, O_d): |D|^{3/2} ζ(2) L(2, χ_D) / (4π²), with L(2, χ_D) through Л."""
    if d < 1 or any(d % (p * p) == 0 for p in range(2, int(math.isqrt(d)) + 1)):
        raise ValueError("d must be a positive squarefree integer")
    D = -d if d % 4 == 3 else -4 * d
    n = -D
    l2 = 2.0 / math.sqrt(n) * sum(_kronecker(D, k) * L(PI * k / n) for k in range(1, n))
    return n**1.5 * (PI**2 / 6) * l2 / (4 * PI**2)


# ---------------------------------------------------------------- catalog


def _fan(gamma: float, da: float, db: float) -> float:
    """∫_{δa}^{δb} of the column volume over a right-angled fan: F(δb) − F(δa)."""

    def F(d: float) -> float:
        return 0.25 * (L(gamma + d) - L(gamma - d) + 2.0 * L(PI / 2 - d))

    return F(db) - F(da)


V_STAR_EXPR = "¼{2Л(π/3) + Л(π/6+π/5) + Л(π/6−π/5)}"


def v_star() -> float:
    return vol_orthoscheme(Orthoscheme(PI / 5, PI / 3))


_PHI = (1 + math.sqrt(5)) / 2


@dataclass(frozen=True)
class CatalogEntry:
    symbol: str
    closed_form: str
    evaluate: Callable[[], float]
    decimal: str
    cusps: int | None
    arithmetic: Verdict | None
    kind: str = "tetrahedron"

    @property
    def volume(self) -> float:
        return self.evaluate()

    def to_json(self) -> dict:
        return {
            "symbol": self.symbol,
            "closed_form": self.closed_form,
            "decimal": self.decimal,
            "cusps": self.cusps,
            "arithmetic": None if self.arithmetic is None else self.arithmetic.value,
        }


def _L3() -> float:
    return L(PI / 3)


def _L4() -> float:
    return L(PI / 4)


# (symbol, closed form, evaluator, printed decimal, kind)
# decimals: the published value where one exists, otherwise the closed form rounded to 6 places
_TETRAHEDRA: list[tuple[str, str, Callable[[], float], str]] = [
    ("[3,3,6]", "(1/8)Л(π/3)", lambda: _L3() / 8, "0.042289"),
    ("[3,4,4]", "(1/6)Л(π/4)", lambda: _L4() / 6, "0.076330"),
    ("[3,3^{[3]}]", "(1/4)Л(π/3)", lambda: _L3() / 4, "0.084579"),
    ("[4,3,6]", "(5/16)Л(π/3)", lambda: 5 * _L3() / 16, "0.105723"),
    ("[4^{1,1},3]", "(1/3)Л(π/4)", lambda: _L4() / 3, "0.152661"),
    ("[3,6,3]", "(1/2)Л(π/3) = μ₃/6", lambda: _L3() / 2, "0.169157"),
    ("[5,3,6]", V_STAR_EXPR, v_star, "0.171502"),
    ("[3^{1,1},6]", "(5/8)Л(π/3)", lambda: 5 * _L3() / 8, "0.211446"),
    ("[4,3^{[3]}]", "(5/8)Л(π/3)", lambda: 5 * _L3() / 8, "0.211446"),
    ("[4,4,4]", "(1/2)Л(π/4) = ω₃/16", lambda: _L4() / 2, "0.228991"),
    ("[6,3,6]", "(3/4)Л(π/3)", lambda: 3 * _L3() / 4, "0.253735"),
    ("[(3^2,4^2)]", "(2/3)Л(π/4) = ω₃/12", lambda: 2 * _L4() / 3, "0.305322"),
    ("[5,3^{[3]}]", "2v* = " + "½{2Л(π/3) + Л(π/6+π/5) + Л(π/6−π/5)}", lambda: 2 * v_star(), "0.343003"),
    ("[(3^3,6)]", "(5/8)Л(π/3) + (1/3)Л(π/4)", lambda: 5 * _L3() / 8 + _L4() / 3, "0.364107"),
    ("[3^{[ ]x[ ]}]", "(5/4)Л(π/3)", lambda: 5 * _L3() / 4, "0.422892"),
    ("[4^{1,1,1}]", "Л(π/4)", _L4, "0.457983"),
    ("[6,3^{[3]}]", "(3/2)Л(π/3)", lambda: 3 * _L3() / 2, "0.507471"),
    (
        "[(3,4,3,6)]",
        "F(π/3; −π/3, arctan√2) + F(π/4; −arctan(1/√2), π/6)",
        lambda: _fan(PI / 3, -PI / 3, math.atan(math.sqrt(2)))
        + _fan(PI / 4, -math.atan(1 / math.sqrt(2)), PI / 6),
        "0.525840",
    ),
    (
        "[(3,4^3)]",
        "F(π/4; −π/4, arctan(1/√2)) + F(π/3; −arctan√2, π/4)",
        lambda: _fan(PI / 4, -PI / 4, math.atan(1 / math.sqrt(2)))
        + _fan(PI / 3, -math.atan(math.sqrt(2)), PI / 4),
        "0.556282",
    ),
    (
        "[(3,5,3,6)]",
        "F(π/3; −π/3, arctan φ) + F(π/5; −arctan(1/φ), π/6)",
        lambda: _fan(PI / 3, -PI / 3, math.atan(_PHI)) + _fan(PI / 5, -math.atan(1 / _PHI), PI / 6),
        "0.672986",
    ),
    ("[(3,6,3,6)]", "(5/2)Л(π/3)", lambda: 5 * _L3() / 2, "0.845785"),
    ("[(4^4)]", "2Л(π/4) = ω₃/4", lambda: 2 * _L4(), "0.915966"),
    ("[3^{[3,3]}]", "3Л(π/3) = μ₃", lambda: 3 * _L3(), "1.014942"),
]

FAN_NOTE = "F(γ; a, b) = G(b) − G(a), G(δ) = ¼{Л(γ+δ) − Л(γ−δ) + 2Л(π/2−δ)}"

# derived values used by the case analysis: (name, closed form, evaluator, decimal, cusps, arithmetic)
_DERIVED: list[tuple[str, str, Callable[[], float], str, int | None, Verdict | None]] = [
    ("[∞,3,6,∞]", "(5/4)Л(π/3)", lambda: 5 * _L3() / 4, "0.42289", 2, None),
    ("μ₃", "3Л(π/3)", lambda: 3 * _L3(), "1.014942", None, None),
    ("ω₃", "8Л(π/4)", lambda: 8 * _L4(), "3.663862", None, None),
    ("v*", V_STAR_EXPR, v_star, "0.171502", 1, Verdict.NON_ARITHMETIC),
    ("[6,3,6]/2", "(3/8)Л(π/3)", lambda: 3 * _L3() / 8, "0.126868", None, Verdict.ARITHMETIC),
    ("[3,6,3]⋊Z2", "(1/4)Л(π/3)", lambda: _L3() / 4, "0.084579", 1, Verdict.ARITHMETIC),
    ("[(3^3,6)]/2", "(5/16)Л(π/3) + (1/6)Л(π/4)", lambda: (5 * _L3() / 8 + _L4() / 3) / 2, "0.182054", None, Verdict.NON_ARITHMETIC),
    (
        "[(4^3,3)]/2",
        "½[F(π/4; −π/4, arctan(1/√2)) + F(π/3; −arctan√2, π/4)]",
        lambda: _catalog_tetra_value("[(3,4^3)]") / 2,
        "0.27814",
        None,
        Verdict.NON_ARITHMETIC,
    ),
    ("120v*", "120v*", lambda: 120 * v_star(), "20.580199", None, None),
    ("24vol[(3^3,6)]", "15Л(π/3) + 8Л(π/4)", lambda: 24 * (5 * _L3() / 8 + _L4() / 3), "8.738570", None, None),
    ("L(pi/3)", "Л(π/3)", _L3, "0.338314", 1, Verdict.ARITHMETIC),
    ("L(pi/4)", "Л(π/4) = ω₃/8", _L4, "0.457983", 1, Verdict.ARITHMETIC),
]


def _catalog_tetra_value(symbol: str) -> float:
    for s, _, f, _ in _TETRAHEDRA:
        if s == symbol:
            return f()
    raise KeyError(symbol)


def _build_catalog() -> dict[str, CatalogEntry]:
    out: dict[str, CatalogEntry] = {}
    for sym, form, f, dec in _TETRAHEDRA:
        out[sym] = CatalogEntry(sym, form, f, dec, count_cusps(sym), is_arithmetic(sym))
    for name, form, f, dec, cusps, ar in _DERIVED:
        kind = "pyramid" if name == "[∞,3,6,∞]" else "derived"
        out[name] = CatalogEntry(name, form, f, dec, cusps, ar, kind)
    return out


_CATALOG: dict[str, CatalogEntry] | None = None


def catalog() -> dict[str, CatalogEntry]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return _CATALOG


def tetrahedron_symbols() -> list[str]:
    return [s for s, *_ in _TETRAHEDRA]


def canonical_name(symbol: str) -> str:
    cat = catalog()
    if symbol in cat:
        return symbol
    try:
        canon = print_coxeter_symbol(parse_coxeter_symbol(symbol))
    except (CoxeterSymbolError, ValueError):
        raise KeyError(f"unknown symbol {symbol!r}") from None
    if canon not in cat:
        raise KeyError(f"{symbol!r} is not in the catalog")
    return canon


def vol_named(symbol: str) -> CatalogEntry:
    return catalog()[canonical_name(symbol)]


def catalog_json() -> str:
    return json.dumps([e.to_json() for e in catalog().values()], ensure_ascii=False, indent=2)
