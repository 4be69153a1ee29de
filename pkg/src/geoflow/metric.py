"""Surface metric models on a global planar chart.

Three families are supported, all with nonpositive Gaussian curvature so
that the no-conjugate-point hypothesis is certifiable by a pointwise sign
check:

* ``constant``   -- constant curvature K0 <= 0, realized as the warped
  metric  ds^2 = cosh(k y)^2 dx^2 + dy^2  with k = sqrt(-K0) (Fermi
  coordinates along the geodesic y = 0).  Euclidean for K0 = 0.  These
  charts carry closed-form geodesics and distances via the hyperboloid
  model, used as fast paths and oracles.
* ``conformal``  -- ds^2 = e^{2 phi}(dx^2 + dy^2) with subharmonic phi.
* ``warped``     -- ds^2 = g(y)^2 dx^2 + dy^2 with convex positive g;
  named profiles "cosh", "exp_neg" and the C^1 "flat_band" profile
  (g = 1 on |y| <= band, cosh(|y| - band) outside), which realizes a
  genuine flat strip with closed-form geodesics inside the band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ChartDomainError

__all__ = [
    "MetricChart",
    "TangentVector",
    "make_constant_chart",
    "make_conformal_chart",
    "make_warped_chart",
    "chart_from_config",
    "curvature_at",
    "christoffel",
    "metric_norm",
    "metric_tensor",
    "frame_components",
    "chart_components",
]


@dataclass(frozen=True)
class TangentVector:
    """A chart point plus direction components, no normalization implied."""

    base: tuple[float, float]
    dir: tuple[float, float]


@dataclass(frozen=True)
class MetricChart:
    kind: str
    kappa: float
    window: tuple[float, float, float, float]
    params: dict = field(compare=False)
    # warped data (also backs the constant kind)
    g: Optional[Callable] = field(default=None, compare=False)
    dg: Optional[Callable] = field(default=None, compare=False)
    ddg: Optional[Callable] = field(default=None, compare=False)
    # conformal data
    phi: Optional[Callable] = field(default=None, compare=False)
    phi_x: Optional[Callable] = field(default=None, compare=False)
    phi_y: Optional[Callable] = field(default=None, compare=False)
    phi_xx: Optional[Callable] = field(default=None, compare=False)
    phi_yy: Optional[Callable] = field(default=None, compare=False)
    # constant-curvature fast-path data
    K0: Optional[float] = None
    # flat-band fast-path data (half-width of the flat band, or None)
    band: Optional[float] = None

    # -- window handling --------------------------------------------------

    def in_window(self, p, pad: float = 0.0) -> bool:
        x, y = p
        xmin, xmax, ymin, ymax = self.window
        return (xmin - pad <= x <= xmax + pad) and (ymin - pad <= y <= ymax + pad)

    def require_in_window(self, p, pad: float = 0.0) -> None:
        if not self.in_window(p, pad):
            raise ChartDomainError(
                f"point {tuple(p)} outside chart window {self.window} (pad={pad})"
            )

    # -- structural predicates --------------------------------------------

    @property
    def has_exact_geometry(self) -> bool:
        """True when closed-form distances and geodesics are available."""
        return self.kind == "constant"

    def descriptor(self) -> dict:
        """JSON-able description, used for cache keys and provenance."""
        return {
            "kind": self.kind,
            "kappa": self.kappa,
            "window": list(self.window),
            "params": dict(self.params),
        }


# -- factories -------------------------------------------------------------

_DEFAULT_WINDOW = (-8.0, 8.0, -8.0, 8.0)


def make_constant_chart(K0: float, window=_DEFAULT_WINDOW) -> MetricChart:
    if K0 > 0:
        raise ValueError(f"constant chart requires K0 <= 0, got {K0}")
    k = math.sqrt(-K0)
    if k == 0.0:
        g = np.cosh  # unused branch guard; replaced below
        g = lambda y: np.ones_like(np.asarray(y, dtype=float))  # noqa: E731
        dg = lambda y: np.zeros_like(np.asarray(y, dtype=float))  # noqa: E731
        ddg = dg
    else:
        g = lambda y: np.cosh(k * y)  # noqa: E731
        dg = lambda y: k * np.sinh(k * y)  # noqa: E731
        ddg = lambda y: k * k * np.cosh(k * y)  # noqa: E731
    return MetricChart(
        kind="constant",
        kappa=k,
        window=tuple(float(w) for w in window),
        params={"K0": float(K0)},
        g=g,
        dg=dg,
        ddg=ddg,
        K0=float(K0),
    )


def make_warped_chart(profile: str = "cosh", band: float = 1.0,
                      scale: float = 1.0, window=_DEFAULT_WINDOW,
                      g=None, dg=None, ddg=None, kappa=None) -> MetricChart:
    """Warped chart ds^2 = g(y)^2 dx^2 + dy^2.

    ``profile`` selects a named profile; pass explicit callables (with
    ``kappa``) for anything else.
    """
    params: dict = {"profile": profile}
    bandval: Optional[float] = None
    if g is not None:
        if kappa is None:
            raise ValueError("custom warped profile requires an explicit kappa")
        params = {"profile": "custom"}
    elif profile == "cosh":
        k = float(scale)
        params["scale"] = k
        g = lambda y: np.cosh(k * y)  # noqa: E731
        dg = lambda y: k * np.sinh(k * y)  # noqa: E731
        ddg = lambda y: k * k * np.cosh(k * y)  # noqa: E731
        kappa = k
    elif profile == "exp_neg":
        g = lambda y: np.exp(-np.asarray(y, dtype=float))  # noqa: E731
        dg = lambda y: -np.exp(-np.asarray(y, dtype=float))  # noqa: E731
        ddg = lambda y: np.exp(-np.asarray(y, dtype=float))  # noqa: E731
        kappa = 1.0
    elif profile == "flat_band":
        b = float(band)
        params["band"] = b
        bandval = b

        def g(y, _b=b):
            y = np.asarray(y, dtype=float)
            return np.where(np.abs(y) <= _b, 1.0, np.cosh(np.abs(y) - _b))

        def dg(y, _b=b):
            y = np.asarray(y, dtype=float)
            return np.where(np.abs(y) <= _b, 0.0,
                            np.sign(y) * np.sinh(np.abs(y) - _b))

        def ddg(y, _b=b):
            y = np.asarray(y, dtype=float)
            return np.where(np.abs(y) <= _b, 0.0, np.cosh(np.abs(y) - _b))

        kappa = 1.0
    else:
        raise ValueError(f"unknown warped profile {profile!r}")
    return MetricChart(
        kind="warped",
        kappa=float(kappa),
        window=tuple(float(w) for w in window),
        params=params,
        g=g,
        dg=dg,
        ddg=ddg,
        band=bandval,
    )


def make_conformal_chart(phi=None, phi_x=None, phi_y=None, phi_xx=None,
                         phi_yy=None, constant: Optional[float] = None,
                         kappa: Optional[float] = None,
                         window=_DEFAULT_WINDOW) -> MetricChart:
    """Conformal chart ds^2 = e^{2 phi}(dx^2 + dy^2).

    ``constant`` builds phi == const (flat); otherwise supply phi and its
    first and second partials plus the curvature bound kappa.
    """
    if constant is not None:
        c = float(constant)
        zero = lambda x, y: 0.0 * np.asarray(x, dtype=float)  # noqa: E731
        return MetricChart(
            kind="conformal",
            kappa=0.0,
            window=tuple(float(w) for w in window),
            params={"phi": "constant", "value": c},
            phi=lambda x, y, _c=c: _c + 0.0 * np.asarray(x, dtype=float),
            phi_x=zero, phi_y=zero, phi_xx=zero, phi_yy=zero,
        )
    if phi is None or kappa is None:
        raise ValueError("conformal chart requires phi (with partials) and kappa")
    return MetricChart(
        kind="conformal",
        kappa=float(kappa),
        window=tuple(float(w) for w in window),
        params={"phi": "custom"},
        phi=phi, phi_x=phi_x, phi_y=phi_y, phi_xx=phi_xx, phi_yy=phi_yy,
    )


def chart_from_config(block: dict) -> MetricChart:
    """Build a chart from a config metric block (see experiments module)."""
    kind = block.get("kind")
    window = tuple(block.get("window", _DEFAULT_WINDOW))
    if kind == "constant":
        return make_constant_chart(float(block["K0"]), window=window)
    if kind == "warped":
        return make_warped_chart(
            profile=block.get("profile", "cosh"),
            band=float(block.get("band", 1.0)),
            scale=float(block.get("scale", 1.0)),
            window=window,
        )
    if kind == "conformal":
        if block.get("phi") == "constant" or "value" in block:
            return make_conformal_chart(constant=float(block.get("value", 0.0)),
                                        window=window)
        raise ValueError("config conformal charts support only constant phi")
    raise ValueError(f"unknown metric kind {kind!r}")


# -- pointwise geometry -----------------------------------------------------

def _curvature(chart: MetricChart, p) -> float:
    x, y = float(p[0]), float(p[1])
    if chart.g is not None:
        return float(-chart.ddg(y) / chart.g(y))
    lap = chart.phi_xx(x, y) + chart.phi_yy(x, y)
    return float(-math.exp(-2.0 * chart.phi(x, y)) * lap)


def curvature_at(chart: MetricChart, p, pad: float = 0.0) -> float:
    """Gaussian curvature at p; raises ChartDomainError outside the window."""
    chart.require_in_window(p, pad)
    return _curvature(chart, p)


def _christoffel(chart: MetricChart, p) -> np.ndarray:
    """Levi-Civita coefficients Gamma[i, j, k], symmetric in (j, k)."""
    x, y = float(p[0]), float(p[1])
    G = np.zeros((2, 2, 2))
    if chart.g is not None:
        gv = float(chart.g(y))
        dgv = float(chart.dg(y))
        G[0, 0, 1] = G[0, 1, 0] = dgv / gv
        G[1, 0, 0] = -gv * dgv
        return G
    px = float(chart.phi_x(x, y))
    py = float(chart.phi_y(x, y))
    G[0, 0, 0] = px
    G[0, 0, 1] = G[0, 1, 0] = py
    G[0, 1, 1] = -px
    G[1, 0, 0] = -py
    G[1, 0, 1] = G[1, 1, 0] = px
    G[1, 1, 1] = py
    return G


def christoffel(chart: MetricChart, p, pad: float = 0.0) -> np.ndarray:
    chart.require_in_window(p, pad)
    return _christoffel(chart, p)


def metric_tensor(chart: MetricChart, p) -> np.ndarray:
    x, y = float(p[0]), float(p[1])
    if chart.g is not None:
        gv = float(chart.g(y))
        return np.array([[gv * gv, 0.0], [0.0, 1.0]])
    lam = math.exp(2.0 * chart.phi(x, y))
    return np.array([[lam, 0.0], [0.0, lam]])


def metric_norm(chart: MetricChart, p, v) -> float:
    """g-norm of the chart components v at p."""
    x, y = float(p[0]), float(p[1])
    vx, vy = float(v[0]), float(v[1])
    if chart.g is not None:
        gv = float(chart.g(y))
        return math.hypot(gv * vx, vy)
    lam = math.exp(float(chart.phi(x, y)))
    return lam * math.hypot(vx, vy)


def frame_components(chart: MetricChart, p, v) -> tuple[float, float]:
    """Components of v in the g-orthonormal coordinate frame at p."""
    x, y = float(p[0]), float(p[1])
    vx, vy = float(v[0]), float(v[1])
    if chart.g is not None:
        return (float(chart.g(y)) * vx, vy)
    lam = math.exp(float(chart.phi(x, y)))
    return (lam * vx, lam * vy)


def chart_components(chart: MetricChart, p, a) -> tuple[float, float]:
    """Inverse of frame_components: orthonormal-frame components to chart."""
    x, y = float(p[0]), float(p[1])
    ax, ay = float(a[0]), float(a[1])
    if chart.g is not None:
        return (ax / float(chart.g(y)), ay)
    lam = math.exp(float(chart.phi(x, y)))
    return (ax / lam, ay / lam)
