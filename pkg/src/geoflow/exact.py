"""Closed-form geometry for constant-curvature charts.

The constant chart ds^2 = cosh(k y)^2 dx^2 + dy^2 (curvature -k^2) embeds
into the unit hyperboloid via

    P(x, y) = (cosh(ky) cosh(kx), cosh(ky) sinh(kx), sinh(ky)),

with Minkowski product <A,B> = -A0 B0 + A1 B1 + A2 B2, and hyperboloid
distances equal k times chart distances.  All routines are vectorized
over a leading axis and degenerate to the Euclidean formulas for k = 0.

These serve both as fast paths (entropy sweeps, busemann probes) and as
independent oracles against which the generic shooting/integration code
is tested.
"""

from __future__ import annotations

import numpy as np

from .metric import MetricChart

__all__ = [
    "exact_distance",
    "exact_dir",
    "exact_flow",
    "band_euclidean_distance",
]


def _k(chart: MetricChart) -> float:
    if chart.kind != "constant":
        raise ValueError("closed-form geometry requires a constant-curvature chart")
    return chart.kappa


def _embed(k, x, y):
    ky, kx = k * np.asarray(y, float), k * np.asarray(x, float)
    chy = np.cosh(ky)
    return np.stack([chy * np.cosh(kx), chy * np.sinh(kx), np.sinh(ky)], axis=-1)


def _embed_vel(k, x, y, vx, vy):
    ky, kx = k * np.asarray(y, float), k * np.asarray(x, float)
    chy, shy = np.cosh(ky), np.sinh(ky)
    chx, shx = np.cosh(kx), np.sinh(kx)
    vx = np.asarray(vx, float)
    vy = np.asarray(vy, float)
    return np.stack([
        chy * shx * vx + shy * chx * vy,
        chy * chx * vx + shy * shx * vy,
        chy * vy,
    ], axis=-1)


def _mink(a, b):
    return -a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2]


def _unembed(k, P):
    y = np.arcsinh(P[..., 2]) / k
    # P0 +- P1 = cosh(ky) e^{+-kx}, both positive: stable for large |kx|
    x = 0.5 * (np.log(P[..., 0] + P[..., 1]) - np.log(P[..., 0] - P[..., 1])) / k
    return x, y

def _unembed_vel(k, P, W):
    ky = np.arcsinh(P[..., 2])
    chy = np.cosh(ky)
    x, y = _unembed(k, P)
    kx = k * x
    chx, shx = np.cosh(kx), np.sinh(kx)
    Px = np.stack([chy * shx, chy * chx, np.zeros_like(chx)], axis=-1)
    Py = np.stack([np.sinh(ky) * chx, np.sinh(ky) * shx, chy], axis=-1)
    vx = _mink(W, Px) / (chy * chy)
    vy = _mink(W, Py)
    return vx, vy


def exact_distance(chart: MetricChart, p, q):
    """Geodesic distance between chart points; vectorized."""
    k = _k(chart)
    p = np.asarray(p, float)
    q = np.asarray(q, float)
    if k == 0.0:
        return np.hypot(p[..., 0] - q[..., 0], p[..., 1] - q[..., 1])
    # longdouble guards against overflow of cosh products at large separations
    yp = np.asarray(p[..., 1], np.longdouble) * k
    yq = np.asarray(q[..., 1], np.longdouble) * k
    dx = (np.asarray(p[..., 0], np.longdouble) - np.asarray(q[..., 0], np.longdouble)) * k
    c = np.cosh(yp) * np.cosh(yq) * np.cosh(dx) - np.sinh(yp) * np.sinh(yq)
    c = np.maximum(c, 1.0)
    d = np.log(c + np.sqrt(c * c - 1.0)) / k
    return np.asarray(d, float)


def exact_dir(chart: MetricChart, p, q):
    """(distance, unit chart direction at p toward q); scalar points."""
    k = _k(chart)
    p = np.asarray(p, float)
    q = np.asarray(q, float)
    if k == 0.0:
        delta = q - p
        d = float(np.hypot(delta[0], delta[1]))
        if d == 0.0:
            return 0.0, (1.0, 0.0)
        return d, (float(delta[0]) / d, float(delta[1]) / d)
    P = _embed(k, p[0], p[1])
    Q = _embed(k, q[0], q[1])
    c = float(-_mink(P, Q))
    c = max(c, 1.0)
    d = float(np.arccosh(np.longdouble(c))) / k if c < 1e15 else float(np.log(2 * c)) / k
    QT = Q + _mink(Q, P)[..., None] * P
    nrm = np.sqrt(max(float(_mink(QT, QT)), 0.0))
    if nrm < 1e-300:
        return 0.0, (1.0 / float(chart.g(p[1])), 0.0)
    W = QT / nrm
    vx, vy = _unembed_vel(k, P, W)
    # renormalize in the chart metric to absorb roundoff
    gv = float(chart.g(p[1]))
    s = float(np.hypot(gv * vx, vy))
    return d, (float(vx) / s, float(vy) / s)


def exact_flow(chart: MetricChart, states, t):
    """Flow chart states (..., 4) by chart time t (scalar or broadcastable)."""
    k = _k(chart)
    states = np.asarray(states, float)
    t = np.asarray(t, float)
    x, y, vx, vy = (states[..., i] for i in range(4))
    if k == 0.0:
        xt = x + t * vx
        yt = y + t * vy
        return np.stack([xt, yt, np.broadcast_to(vx, xt.shape),
                         np.broadcast_to(vy, xt.shape)], axis=-1)
    P = _embed(k, x, y)
    W = _embed_vel(k, x, y, vx, vy)
    s = (k * t)[..., None] if t.ndim else k * t
    Pt = np.cosh(s) * P + np.sinh(s) * W
    Wt = np.sinh(s) * P + np.cosh(s) * W
    xt, yt = _unembed(k, Pt)
    vxt, vyt = _unembed_vel(k, Pt, Wt)
    # renormalize to unit chart speed
    gv = np.cosh(k * yt)
    nrm = np.hypot(gv * vxt, vyt)
    return np.stack([xt, yt, vxt / nrm, vyt / nrm], axis=-1)


def band_euclidean_distance(chart: MetricChart, p, q):
    """Distance fast path for the flat-band chart: Euclidean when both
    points lie in the closed band (the band is a convex flat strip).
    Returns None when the fast path does not apply."""
    b = chart.band
    if b is None:
        return None
    p = np.asarray(p, float)
    q = np.asarray(q, float)
    if abs(p[1]) <= b and abs(q[1]) <= b:
        return float(np.hypot(p[0] - q[0], p[1] - q[1]))
    return None
