"""Numerical volume of a Coxeter tetrahedron with an ideal vertex.

Independent of the Lobachevsky evaluator: the facet normals are realised in
Minkowski space R^{3,1}, the ideal vertex is sent to ∞ in the upper half
space, and the volume is integrated directly as

    vol = ∫_Δ du / (2 (R² − |u − c|²)),

where Δ is the projected triangle and (c, R) the hemisphere carrying the
bottom face.  The area integral is split into triangles fanned from c; on
each the radial integral is closed-form and the angular one goes to quad.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .coxeter import CoxeterGraph, GramMatrix, as_graph, gram_matrix

J = np.diag([1.0, 1.0, 1.0, -1.0])


def mink(x: np.ndarray, y: np.ndarray) -> float:
    return float(x @ J @ y)


def facet_normals(G: np.ndarray) -> np.ndarray:
    """Rows e_i in R^{3,1} with ⟨e_i, e_j⟩ = G_ij."""
    w, Q = np.linalg.eigh(G)
    if np.sum(w < 0) != 1 or np.sum(w > 0) != 3:
        raise ValueError("Gram matrix must have signature (3,1)")
    order = np.argsort(-w)  # negative eigenvalue last ↔ time coordinate
    w, Q = w[order], Q[:, order]
    return Q * np.sqrt(np.abs(w))


def vertices(G: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(normals, vertices, ⟨v_i, v_i⟩) with v_i opposite facet i, in the future sheet."""
    E = facet_normals(G)
    Ginv = np.linalg.inv(G)
    V = -(Ginv @ E)  # ⟨v_i, e_k⟩ = −δ_ik, so v_i lies inside facet i's half-space
    norms = np.diag(Ginv).copy()
    causal = [k for k in range(4) if norms[k] <= 1e-9]
    if causal and V[causal[0], 3] < 0:
        # time reversal is an isometry of R^{3,1} carrying the past sheet to the future one
        flip = np.diag([1.0, 1.0, 1.0, -1.0])
        E, V = E @ flip, V @ flip
    return E, V, norms


def _fan_integral(c: np.ndarray, R2: float, a: np.ndarray, b: np.ndarray) -> float:
    """Signed ∫ over triangle (c, a, b) of r dr dφ / (2(R² − r²))."""
    pa, pb = a - c, b - c
    cross = pa[0] * pb[1] - pa[1] * pb[0]
    if abs(cross) < 1e-15:
        return 0.0
    sign = 1.0 if cross > 0 else -1.0
    phi_a = math.atan2(pa[1], pa[0])
    dphi = math.atan2(cross, float(pa @ pb))
    d = b - a
    normal = np.array([d[1], -d[0]]) / np.linalg.norm(d)
    h = abs(float(normal @ pa))  # distance from c to the edge line
    phi_n = math.atan2(*(normal * (1 if normal @ pa > 0 else -1))[::-1])

    def radial(phi: float) -> float:
        rho = h / math.cos(phi - phi_n)
        x = max(1.0 - rho * rho / R2, 1e-300)
        return -0.25 * math.log(x)

    lo, hi = sorted((phi_a, phi_a + dphi))
    val, _ = integrate.quad(radial, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=400)
    return sign * val


def upper_half_space_data(g: CoxeterGraph | str | GramMatrix) -> tuple[np.ndarray, float, list[np.ndarray]]:
    """Send an ideal vertex to ∞; return hemisphere centre c, R² and the projected triangle."""
    if isinstance(g, GramMatrix):
        G = np.array(g.entries)
    else:
        G = np.array(gram_matrix(as_graph(g)).entries)
    E, V, norms = vertices(G)
    ideal = [k for k in range(4) if abs(norms[k]) <= 1e-9]
    if not ideal or any(nv > 1e-9 for nv in norms):
        raise ValueError("needs an ideal vertex and no ultraideal vertex")
    i = ideal[0]
    q = V[i]
    T = np.array([0.0, 0.0, 0.0, 1.0])
    n0 = T + q / (2.0 * mink(q, T))
    n0 *= -2.0 / mink(q, n0)
    basis: list[np.ndarray] = []
    for cand in np.eye(4):
        # project off span{q, n0}; the pair has Gram [[0, −2], [−2, 0]]
        x = cand + 0.5 * mink(cand, n0) * q + 0.5 * mink(cand, q) * n0
        for b in basis:
            x = x - mink(x, b) * b
        nn = mink(x, x)
        if nn > 1e-10:
            basis.append(x / math.sqrt(nn))
        if len(basis) == 2:
            break
    e1, e2 = basis

    pts = []
    for k in range(4):
        if k == i:
            continue
        X = V[k] / math.sqrt(-norms[k]) if norms[k] < -1e-9 else V[k]
        # height t = −1/⟨X,q⟩; ideal points have no height and u = ⟨X,e⟩/(−⟨X,q⟩)
        s = -mink(X, q)
        pts.append(np.array([mink(X, e1), mink(X, e2)]) / s)
    e = E[i]
    beta = -mink(e, q) / 2.0
    alpha = -mink(e, n0) / 2.0
    w = np.array([mink(e, e1), mink(e, e2)])
    c = w / (2.0 * beta)
    R2 = float(w @ w) / (4.0 * beta * beta) - alpha / beta
    return c, R2, pts


def tetrahedron_volume_numeric(g: CoxeterGraph | str | GramMatrix) -> float:
    """Volume of a Coxeter tetrahedron with at least one ideal and no ultraideal vertex."""
    c, R2, pts = upper_half_space_data(g)
    total = 0.0
    for a, b in ((pts[0], pts[1]), (pts[1], pts[2]), (pts[2], pts[0])):
        total += _fan_integral(c, R2, a, b)
    return abs(total)


def fan_angles(g: CoxeterGraph | str | GramMatrix) -> list[tuple[float, float, float, float]]:
    """(sign, γ, δ_a, δ_b) for each fan triangle (c, a, b).

    γ = arccos(h/R) with h the distance from c to the edge line; δ are the
    signed angles of a and b measured from the foot of the perpendicular.
    """
    c, R2, pts = upper_half_space_data(g)
    R = math.sqrt(R2)
    out = []
    for a, b in ((pts[0], pts[1]), (pts[1], pts[2]), (pts[2], pts[0])):
        pa, pb = a - c, b - c
        cross = pa[0] * pb[1] - pa[1] * pb[0]
        if abs(cross) < 1e-15:
            continue
        d = (b - a) / np.linalg.norm(b - a)
        foot = pa - float(pa @ d) * d
        h = float(np.linalg.norm(foot))
        gamma = math.acos(min(1.0, h / R))
        da = float(pa @ d) / h
        db = float(pb @ d) / h
        out.append((1.0 if cross > 0 else -1.0, gamma, math.atan(da), math.atan(db)))
    return out
