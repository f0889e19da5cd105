"""Numeric verification of the four-dimensional tile-volume bounds.

A tile of M-diameter d* sits inside the solid simplex of radius d*.  The
volume argument splits on whether the tile has a notch.  Without one, the
wasted volume under the far facet is at least four copies of a projected
region integral whose closed form is d*^4/384, giving the tile at most
d*^4/32.  With a notch at (v, v, v, v) the same integral shrinks to
2v^4 - (4 d*/3) v^3 + (d*^2/4) v^2, a pocket of volume (d* - 4v)^4/24 is
also lost, and the resulting quartic bound peaks at v = d*/7 with value
11 d*^4/343.

This module provides the region membership predicates, Monte-Carlo and
nested-quadrature estimates of the integrals, and exact rational twins of
every closed form so the polynomial identities can be checked with no
floating error at all.  Monte-Carlo streams are keyed by (seed, chunk), so
estimates are reproducible regardless of how chunks are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import BadSampleCount, DimensionMismatch

DEFAULT_SEED = 1729

# pass gates used by the verification battery
MC_SIGMA_GATE = 3.0
MC_REL_TOL = 1e-2
QUAD_REL_TOL = 1e-6

_MC_CHUNK = 1 << 16


def _exact(x):
    """Coerce to Fraction for exact arithmetic; floats stay floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return float(x)


@dataclass(frozen=True)
class NotchConfig:
    """Diameter d* and notch coordinate v, with the notch at (v, v, v, v)."""

    d_star: object
    v: object

    def __post_init__(self):
        d = _exact(self.d_star)
        v = _exact(self.v)
        if d <= 0:
            raise ValueError("d_star must be positive")
        if not 0 <= v <= d / 4:
            raise ValueError("v must lie in [0, d_star / 4]")


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    std_error: float
    samples: int
    method: str
    seed: Optional[int]

    def __post_init__(self):
        if self.std_error < 0:
            raise ValueError("std_error must be nonnegative")
        if self.method == "monte_carlo" and self.samples < 1:
            raise ValueError("monte_carlo estimates need at least one sample")


# ---------------------------------------------------------------------------
# region membership

def in_region_no_notch(x: Sequence, d_star) -> bool:
    """Projected far-facet region: x >= 0, sum <= d*, d* - sum <= min(x).

    All inequalities are closed; the boundary has measure zero, so the
    convention cannot move any integral.
    """
    if len(x) != 3:
        raise DimensionMismatch("region membership takes a 3-vector")
    s = x[0] + x[1] + x[2]
    return all(xi >= 0 for xi in x) and s <= d_star and d_star - s <= min(x)


def in_region_notch(x: Sequence, config: NotchConfig) -> bool:
    """No-notch region minus the pocket {x_i >= v for all i, d* - sum >= v}."""
    if not in_region_no_notch(x, config.d_star):
        return False
    s = x[0] + x[1] + x[2]
    v = config.v
    in_pocket = min(x) >= v and config.d_star - s >= v
    return not in_pocket


def _no_notch_values(x: np.ndarray, d: float) -> np.ndarray:
    s = x.sum(axis=1)
    mn = x.min(axis=1)
    mask = (s <= d) & (d - s <= mn)
    return np.where(mask, d - s, 0.0)


def _notch_values(x: np.ndarray, d: float, v: float) -> np.ndarray:
    s = x.sum(axis=1)
    mn = x.min(axis=1)
    mask = (s <= d) & (d - s <= mn) & ~((mn >= v) & (d - s >= v))
    return np.where(mask, d - s, 0.0)


# ---------------------------------------------------------------------------
# Monte Carlo

def _philox(seed: int, chunk: int) -> np.random.Generator:
    key = ((seed & 0xFFFFFFFFFFFFFFFF) << 64) | chunk
    return np.random.Generator(np.random.Philox(key=key))


def _mc_over_simplex(dim, d_star, values_of, samples, seed):
    """Mean of an integrand over the solid simplex {x >= 0, sum <= d*}.

    Samples via sorted-uniform spacings (uniform on the simplex), evaluates
    ``values_of`` per chunk, and scales by the simplex volume.  Chunk sums
    are combined with exact float summation, so results do not depend on
    how chunks would be distributed across workers.
    """
    if samples < 1:
        raise BadSampleCount(f"need at least one sample, got {samples}")
    d = float(d_star)
    volume = d**dim / math.factorial(dim)
    sums = []
    sums_sq = []
    done = 0
    chunk = 0
    while done < samples:
        m = min(_MC_CHUNK, samples - done)
        rng = _philox(seed, chunk)
        u = rng.random((m, dim))
        u.sort(axis=1)
        x = np.diff(u, axis=1, prepend=0.0) * d
        vals = values_of(x)
        sums.append(float(vals.sum()))
        sums_sq.append(float(np.square(vals).sum()))
        done += m
        chunk += 1
    mean = math.fsum(sums) / samples
    var = max(0.0, math.fsum(sums_sq) / samples - mean * mean)
    if samples > 1:
        var *= samples / (samples - 1)
    return volume * mean, volume * math.sqrt(var / samples)


# ---------------------------------------------------------------------------
# nested quadrature over the explicit iterated limits

def _leggauss(nodes: int):
    return np.polynomial.legendre.leggauss(nodes)


Piece = tuple[float, float, Callable, Callable, Callable, Callable]


def _no_notch_pieces(d: float) -> list[Piece]:
    q = d / 4.0
    return [
        (0.0, q, lambda u: d - 3 * u, lambda u: d - u,
         lambda u, w: 0.5 * (d - u - w), lambda u, w: d - u - w),
        (q, d, lambda u: (d - u) / 3.0, lambda u: d - u,
         lambda u, w: 0.5 * (d - u - w), lambda u, w: d - u - w),
        # two symmetric wings, one along each of the first two axes
        (0.0, q, lambda u: u, lambda u: d - 3 * u,
         lambda u, w: d - 2 * u - w, lambda u, w: d - u - w),
        (0.0, q, lambda u: u, lambda u: d - 3 * u,
         lambda u, w: d - 2 * u - w, lambda u, w: d - u - w),
    ]


def _notch_pieces(d: float, v: float) -> list[Piece]:
    return [
        (0.0, v, lambda u: d - 3 * u, lambda u: d - u,
         lambda u, w: 0.5 * (d - u - w), lambda u, w: d - u - w),
        (v, d - 3 * v, lambda u: d - u - 2 * v, lambda u: d - u,
         lambda u, w: 0.5 * (d - u - w), lambda u, w: d - u - w),
        (d - 3 * v, d, lambda u: (d - u) / 3.0, lambda u: d - u,
         lambda u, w: 0.5 * (d - u - w), lambda u, w: d - u - w),
        (v, d - 3 * v, lambda u: v, lambda u: d - u - 2 * v,
         lambda u, w: d - u - w - v, lambda u, w: d - u - w),
        (0.0, v, lambda u: u, lambda u: d - 3 * u,
         lambda u, w: d - 2 * u - w, lambda u, w: d - u - w),
        (0.0, v, lambda u: u, lambda u: d - 3 * u,
         lambda u, w: d - 2 * u - w, lambda u, w: d - u - w),
    ]


def _nested_quadrature(pieces: list[Piece], d: float, nodes: int) -> float:
    """Gauss-Legendre in each of the three nested variables of every piece."""
    xg, wg = _leggauss(nodes)
    total = 0.0
    for a, b, clo, chi, glo, ghi in pieces:
        if not b > a:
            continue
        hu = 0.5 * (b - a)
        for ui, wu in zip(0.5 * (a + b) + hu * xg, wg):
            c, e = clo(ui), chi(ui)
            if not e > c:
                continue
            hw = 0.5 * (e - c)
            w = 0.5 * (c + e) + hw * xg
            g = glo(ui, w)
            h = ghi(ui, w)
            ht = 0.5 * (h - g)
            t = (0.5 * (g + h))[:, None] + ht[:, None] * xg[None, :]
            f = d - ui - w[:, None] - t
            inner = ht * (f * wg[None, :]).sum(axis=1)
            total += float(hu * wu * hw * (wg * inner).sum())
    return total


def _normalize_method(method: str) -> str:
    token = method.lower()
    if token in ("monte_carlo", "mc"):
        return "monte_carlo"
    if token in ("nested_quadrature", "quad"):
        return "nested_quadrature"
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# integral estimates

def integral_no_notch(
    d_star,
    method: str = "monte_carlo",
    samples: int = 1_000_000,
    seed: int = DEFAULT_SEED,
    nodes: int = 96,
) -> IntegralEstimate:
    """Estimate of the no-notch region integral; closed form d*^4/384."""
    kind = _normalize_method(method)
    d = float(d_star)
    if kind == "monte_carlo":
        value, err = _mc_over_simplex(
            3, d, lambda x: _no_notch_values(x, d), samples, seed
        )
        return IntegralEstimate(value, err, samples, kind, seed)
    value = _nested_quadrature(_no_notch_pieces(d), d, nodes)
    return IntegralEstimate(value, 0.0, nodes, kind, None)


def integral_notch(
    config: NotchConfig,
    method: str = "monte_carlo",
    samples: int = 1_000_000,
    seed: int = DEFAULT_SEED,
    nodes: int = 96,
) -> IntegralEstimate:
    """Estimate of the notch-case region integral.

    Closed form 2v^4 - (4 d*/3) v^3 + (d*^2/4) v^2.
    """
    kind = _normalize_method(method)
    d = float(config.d_star)
    v = float(config.v)
    if kind == "monte_carlo":
        value, err = _mc_over_simplex(
            3, d, lambda x: _notch_values(x, d, v), samples, seed
        )
        return IntegralEstimate(value, err, samples, kind, seed)
    value = _nested_quadrature(_notch_pieces(d, v), d, nodes)
    return IntegralEstimate(value, 0.0, nodes, kind, None)


def notch_region_volume_estimate(
    config: NotchConfig,
    samples: int = 1_000_000,
    seed: int = DEFAULT_SEED,
) -> IntegralEstimate:
    """Monte-Carlo volume of the pocket {p in simplex : p >= (v, v, v, v)}."""
    d = float(config.d_star)
    v = float(config.v)

    def values(x: np.ndarray) -> np.ndarray:
        return (x.min(axis=1) >= v).astype(np.float64)

    value, err = _mc_over_simplex(4, d, values, samples, seed)
    return IntegralEstimate(value, err, samples, "monte_carlo", seed)


# ---------------------------------------------------------------------------
# closed forms (exact for int/Fraction inputs)

def no_notch_integral_value(d_star):
    d = _exact(d_star)
    return d**4 / 384


def notch_integral_value(d_star, v):
    d, w = _exact(d_star), _exact(v)
    return 2 * w**4 - 4 * d * w**3 / 3 + d**2 * w**2 / 4


def notch_region_volume(config: NotchConfig):
    """Volume of the pocket above the notch: (d* - 4v)^4 / 24."""
    d, v = _exact(config.d_star), _exact(config.v)
    return (d - 4 * v) ** 4 / 24


def notch_volume_bound(d_star, v):
    """Tile-volume bound in the notch case, as a quartic in v."""
    d, w = _exact(d_star), _exact(v)
    return -56 * w**4 / 3 + 16 * d * w**3 - 5 * d**2 * w**2 + 2 * d**3 * w / 3


def notch_volume_bound_derivative(d_star, v):
    d, w = _exact(d_star), _exact(v)
    return -224 * w**3 / 3 + 48 * d * w**2 - 10 * d**2 * w + 2 * d**3 / 3


def no_notch_volume_bound(d_star):
    """Tile-volume bound without a notch: d*^4/24 - 4 (d*^4/384) = d*^4/32."""
    d = _exact(d_star)
    return d**4 / 24 - 4 * no_notch_integral_value(d)


def notch_identity_residual(d_star, v):
    """Assembled bound minus its expanded quartic; identically zero."""
    d, w = _exact(d_star), _exact(v)
    assembled = (
        d**4 / 24
        - 4 * notch_integral_value(d, w)
        - (d - 4 * w) ** 4 / 24
    )
    return assembled - notch_volume_bound(d, w)


def derivative_factorization_residual(d_star, v):
    """Derivative of the quartic bound minus -224/3 (v - d*/4)^2 (v - d*/7)."""
    d, w = _exact(d_star), _exact(v)
    factored = -224 * (w - d / 4) ** 2 * (w - d / 7) / 3
    return notch_volume_bound_derivative(d, w) - factored


@dataclass(frozen=True)
class NotchOptimum:
    v_max: object
    max_value: object
    v_local_min: object
    local_min_value: object


def optimize_notch(d_star) -> NotchOptimum:
    """Stationary structure of the quartic bound on [0, d*/4].

    The maximum sits at v = d*/7 with value 11 d*^4/343; v = d*/4 is a local
    minimum with value d*^4/32.  A grid scan of the quartic double-checks
    that nothing on the interval exceeds the reported maximum.
    """
    d = _exact(d_star)
    if d <= 0:
        raise ValueError("d_star must be positive")
    optimum = NotchOptimum(
        v_max=d / 7,
        max_value=11 * d**4 / 343,
        v_local_min=d / 4,
        local_min_value=d**4 / 32,
    )
    steps = 1024
    cushion = 0 if isinstance(d, Fraction) else 1e-9 * abs(optimum.max_value)
    for i in range(steps + 1):
        value = notch_volume_bound(d, d * i / (4 * steps))
        if value > optimum.max_value + cushion:
            raise AssertionError(
                f"grid value {value} exceeds the stated maximum {optimum.max_value}"
            )
    return optimum


def tile_volume_bound_dim4(d: int) -> Fraction:
    """Largest admissible tile volume at diameter d+4: 11(d+4)^4/343.

    The notch-case maximum dominates the no-notch bound (11/343 > 1/32), so
    the overall bound is the notch maximum.
    """
    if d < 0:
        raise ValueError("need d >= 0")
    d_star = Fraction(d + 4)
    return max(no_notch_volume_bound(d_star), optimize_notch(d_star).max_value)
