import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspvol.horoball import (
    D3_INF,
    MU3,
    CuspDiagram,
    CuspType,
    Horoball,
    InvalidRegime,
    Placement,
    beta_from_d,
    bisect,
    bisector_height,
    cusp_volume,
    d_end_condition_bisection,
    d_from_end_condition,
    end_condition_residual,
    family_symbol,
    horoball_transfer,
    image_diameter,
    min_orbifold_volume_bound,
    recursion_ds,
    tangent_center_distance,
    uvw,
)

S3 = math.sqrt(3)
PHI = 2 * math.cos(math.pi / 5)


def circle_through(p, q, r):
    # circumcircle of three points in the plane
    A = np.array([[q[0] - p[0], q[1] - p[1]], [r[0] - p[0], r[1] - p[1]]]) * 2
    b = np.array([q @ q - p @ p, r @ r - p @ p])
    c = np.linalg.solve(A, b)
    return c, float(np.linalg.norm(p - c))


def inverted_diameter(h, k, dist):
    """Diameter of the image of a ball of diameter k tangent at distance dist, under x ↦ h·x/|x|²."""
    centre = np.array([dist, k / 2])
    pts = [centre + k / 2 * np.array([math.cos(t), math.sin(t)]) for t in (0.3, 1.7, 2.9)]
    img = [h * p / (p @ p) for p in pts]
    _, rad = circle_through(*img)
    return 2 * rad


# ---------------------------------------------------------------- lemmas


def test_constants():
    assert D3_INF == pytest.approx(0.853276, abs=1e-6)
    assert MU3 == pytest.approx(1.014942, abs=1e-6)


def test_horoball_type():
    assert Horoball((0.0, 0.0), 1.0).full_sized
    assert not Horoball((0.0, 0.0), 0.5).full_sized
    assert not Horoball(None, height=1.0).full_sized
    with pytest.raises(ValueError):
        Horoball((0.0, 0.0), 0.0)
    with pytest.raises(ValueError):
        Horoball(None)


@pytest.mark.parametrize(
    "r1, r2, expected",
    [(0.5, 0.5, 1.0), (0.5, 1 / (2 * PHI**2), 1 / PHI), (1.0, 1.0, 2.0)],
)
def test_tangent_center_distance(r1, r2, expected):
    assert tangent_center_distance(r1, r2) == pytest.approx(expected, abs=1e-12)
    # Euclidean oracle: spheres resting on the plane touch when x² + (r1 − r2)² = (r1 + r2)²
    x = expected
    assert math.hypot(x, r1 - r2) == pytest.approx(r1 + r2, abs=1e-12)


def test_tangent_rejects_nonpositive():
    with pytest.raises(ValueError):
        tangent_center_distance(0.0, 1.0)


@pytest.mark.parametrize("h, k, r", [(1, 1, PHI), (1, 1, 1), (1 / PHI**2, 1, 1.3), (0.7, 0.2, 2.5)])
def test_image_diameter_matches_inversion(h, k, r):
    assert image_diameter(h, k, r) == pytest.approx(h * k / r**2)
    assert image_diameter(h, k, r) == pytest.approx(inverted_diameter(h, k, r), rel=1e-9)


def test_image_diameter_rejects_nonpositive():
    with pytest.raises(ValueError):
        image_diameter(1, -1, 1)


def test_transfer_reports():
    r = horoball_transfer(1.0, 1.0, 1.0)
    assert r.tangent and all(v == pytest.approx(1.0) for v in r.ratios.values())
    d0 = 1.7
    r = horoball_transfer(d0, 1.0, d0**2)
    assert r.tangent
    assert r.induced_distance == pytest.approx(1 / d0)
    r = horoball_transfer(2.0, 1.0, 1.0)
    assert not r.tangent and r.max_deviation > 0.5


# ---------------------------------------------------------------- u, v, w


def test_uvw_coincidence_point():
    d = 7**0.25
    theta = math.acos(5 / (2 * math.sqrt(7)))
    u, v, w = uvw(d, theta)
    assert w == pytest.approx(S3 / d, abs=1e-12)
    assert u == pytest.approx(1 / d, abs=1e-12)


def test_uvw_boundaries():
    _, _, w = uvw(S3, 0.0)
    assert w == pytest.approx(2 / S3, abs=1e-12)
    for d in (1.1, 1.5, 2.3):
        assert uvw(d, 0.0)[2] == pytest.approx(abs(d - 1 / d), abs=1e-12)


def test_uvw_range():
    with pytest.raises(ValueError):
        uvw(1.5, math.pi / 4)
    uvw(1.5, math.pi / 4, CuspType.T244)
    uvw(1.5, math.pi / 3, theta_max=math.pi / 3)
    with pytest.raises(ValueError):
        uvw(0.5, 0.0)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1.0001, max_value=5.0), st.floats(min_value=0.0, max_value=math.pi / 6))
def test_w_identity(d, theta):
    _, _, w = uvw(d, theta)
    assert abs(w * w + 2 * math.cos(theta) - 1 / d**2 - d**2) < 1e-12 * max(1.0, d * d)


# ---------------------------------------------------------------- recursion


def test_recursion_examples():
    ds = recursion_ds(PHI, 1)
    assert PHI - 1 / ds[-1] == pytest.approx(1.0, abs=1e-12)
    ds = recursion_ds(S3, 2)
    assert 1 / ds[-1] == pytest.approx(S3 / 2, abs=1e-12)


def test_recursion_at_two_is_monotone():
    ds = recursion_ds(2.0, 200)
    assert all(b < a for a, b in zip(ds, ds[1:]))
    assert ds[-1] > 1.0
    # fixed point of x = 2 − 1/x is (d + √(d² − 4))/2 = 1
    assert ds[-1] - 1.0 < 0.01


def test_recursion_blowup():
    with pytest.raises(InvalidRegime):
        recursion_ds(1.2, 10)
    with pytest.raises(ValueError):
        recursion_ds(0.9, 2)


@pytest.mark.parametrize(
    "k, case, expected",
    [(1, "B", PHI), (2, "A", S3), (1, "A", math.sqrt(2)), (0, "B", 1.0)],
)
def test_end_condition_examples(k, case, expected):
    assert d_from_end_condition(k, case) == pytest.approx(expected, abs=1e-12)


def test_chebyshev_closed_form_satisfies_end_conditions():
    for k in range(0, 21):
        for case in "AB":
            d = d_from_end_condition(k, case)
            assert abs(end_condition_residual(d, k, case)) < 1e-9


def test_chebyshev_closed_form_vs_bisection():
    for k in range(1, 21):
        for case in "AB":
            assert d_end_condition_bisection(k, case) == pytest.approx(d_from_end_condition(k, case), abs=1e-9)


def test_family_symbols():
    assert family_symbol(1, "B") == "[5,3,6]"
    assert family_symbol(2, "A") == "[6,3,6]"
    assert family_symbol(1, "A") == "[4,3,6]"


def test_end_condition_case_validation():
    with pytest.raises(ValueError):
        d_from_end_condition(1, "C")
    with pytest.raises(ValueError):
        d_from_end_condition(-1, "A")


# ---------------------------------------------------------------- thresholds


def test_golden_threshold_from_sextic():
    d = bisect(lambda x: x**6 - 2 * x**4 - 2 * x**2 + 1, 1.2, 1.9)
    assert d == pytest.approx(PHI, abs=1e-9)
    d = bisect(lambda x: x - 2 / x - 1 / x**2, 1.2, 1.9)
    assert d == pytest.approx(PHI, abs=1e-9)


def test_w_threshold():
    sigma = math.sqrt(3 + S3)
    closed = (sigma + math.sqrt(sigma**2 - 4)) / 2
    assert closed == pytest.approx(1.515464, abs=1e-6)
    # w = 1 at θ = π/6
    root = bisect(lambda d: uvw(d, math.pi / 6)[2] - 1.0, 1.2, 2.0)
    assert root == pytest.approx(closed, abs=1e-9)


def test_bisect_requires_sign_change():
    with pytest.raises(ValueError):
        bisect(lambda x: x * x + 1, -1.0, 1.0)


def test_bisector_height_independent_of_a():
    for d in (2.013813, 2.1, 2.5, 3.1):
        hs = [bisector_height(d, a) for a in np.linspace(0.0, 1.5, 100)]
        assert max(hs) - min(hs) < 1e-12
        assert hs[0] == pytest.approx(math.sqrt(max(d * d / 4 - 1, 0.0)), abs=1e-12)


def test_bisector_height_examples():
    assert bisector_height(2.0, 0.0) == 0.0
    assert bisector_height(2.1, 0.5) == pytest.approx(math.sqrt(2.1**2 / 4 - 1))
    with pytest.raises(ValueError):
        bisector_height(1.5, 0.0)


def test_beta_from_d():
    assert beta_from_d(2.013813) < math.pi / 15
    assert beta_from_d(2.2) == pytest.approx(math.acos(2.2 / (2 * math.sqrt(1.84))))
    with pytest.raises(ValueError):
        beta_from_d(2.0)
    with pytest.raises(ValueError):
        beta_from_d(1.5)


# ---------------------------------------------------------------- cusp volumes


@pytest.mark.parametrize(
    "ct, pl, d, mirror, expected",
    [
        ("2,3,6", "a6", 1.0, True, S3 / 48),
        ("2,3,6", "a3", 1.0, True, S3 / 16),
        ("2,3,6", "a2", 1.0, True, S3 / 12),
        ("2,3,6", "a6", 7**0.25, False, math.sqrt(21) / 24),
        ("2,4,4", "a4", 1.0, True, 1 / 16),
        ("2,4,4", "a2", 1.0, True, 1 / 8),
        ("2,4,4", "a2", 2**0.25, True, math.sqrt(2) / 8),
        ("2,4,4", "a4", 2**0.25, True, math.sqrt(2) / 16),
        ("2,4,4", "a4", 5**0.25, False, math.sqrt(5) / 8),
        ("2,3,6", "none", 1.0, True, 0.269338),
        ("2,4,4", "none", 1.0, True, 0.25),
    ],
)
def test_cusp_volumes(ct, pl, d, mirror, expected):
    cv = cusp_volume(CuspDiagram(ct, d, pl, mirror=mirror))
    assert cv.value == pytest.approx(expected, abs=1e-6)


def test_cusp_volume_is_half_the_domain_area():
    # {2,3,6} at a₆ with mirror: Δ is a [3,6] right triangle with short leg d/2
    d = 1.37
    area_hex_cell = S3 / 2 * d * d  # lattice cell of the a₆ translations
    # 12 copies of Δ per cell, half the Δ area is vol(C)
    assert cusp_volume(CuspDiagram("2,3,6", d, "a6")).value == pytest.approx(area_hex_cell / 12 / 2, rel=1e-12)
    # {2,4,4} at a₄: square cell d², 8 copies of Δ
    assert cusp_volume(CuspDiagram("2,4,4", d, "a4")).value == pytest.approx(d * d / 8 / 2, rel=1e-12)


def test_cusp_diagram_validation():
    with pytest.raises(ValueError):
        CuspDiagram("2,3,6", 0.9, "a6")
    with pytest.raises(ValueError):
        CuspDiagram("2,3,6", 1.0, "a2", tau=1.0)
    assert CuspDiagram("2,3,6", 1.0, "a2").tau == pytest.approx(2.0)
    with pytest.raises(ValueError):
        cusp_volume(CuspDiagram("3,3,3", 1.0, "a6"))
    with pytest.raises(ValueError):
        cusp_volume(CuspDiagram("2,4,4", 1.0, "a6"))
    assert CuspType.parse("{2, 4, 4}") is CuspType.T244
    with pytest.raises(ValueError):
        CuspType.parse("2,2,2")
    assert Placement("a3") is Placement.A3


def test_density_bound_examples():
    assert min_orbifold_volume_bound(S3 / 48) == pytest.approx(0.042289, abs=1e-6)
    assert min_orbifold_volume_bound(S3 / 48) == pytest.approx(MU3 / 24, abs=1e-12)
    assert min_orbifold_volume_bound(math.sqrt(21) / 24) > 0.19
    with pytest.raises(ValueError):
        min_orbifold_volume_bound(0.0)
