"""Conformable derivative operators on sampled grids.

The conformable derivative of order alpha acts on functions of a positive
variable as D^a f(s) = s^(1-a) f'(s), and reduces to the ordinary derivative
at alpha = 1.  This module provides the grid-based (finite-difference)
versions of the first and second conformable derivatives, the conformable
exponential, and the small value types everything downstream shares.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Grids must stay strictly positive: s^(1-2a) is singular at s = 0.
MIN_COORDINATE = 1e-6


@dataclass(frozen=True)
class FractionalOrder:
    """Derivative order alpha, restricted to 0 < alpha <= 1."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (0.0 < a <= 1.0):
            raise ValueError(f"fractional order must satisfy 0 < alpha <= 1, got {self.alpha}")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True)
class Grid1D:
    """Strictly increasing, strictly positive 1D coordinate grid."""

    points: np.ndarray
    min_coordinate: float = MIN_COORDINATE

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 3:
            raise ValueError("grid needs at least 3 points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("grid points must be finite")
        if pts[0] < self.min_coordinate:
            raise ValueError(
                f"grid points must be >= {self.min_coordinate} (conformable operators "
                f"are defined for positive coordinates), got {pts[0]}"
            )
        if not np.all(np.diff(pts) > 0):
            raise ValueError("grid points must be strictly increasing")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def uniform(cls, lo: float, hi: float, count: int) -> "Grid1D":
        return cls(np.linspace(lo, hi, count))

    @classmethod
    def geometric(cls, lo: float, hi: float, count: int) -> "Grid1D":
        return cls(np.geomspace(lo, hi, count))

    def __len__(self):
        return self.points.size


@dataclass(frozen=True)
class SampledField:
    """Function values (real or complex) on a Grid1D, one per node."""

    grid: Grid1D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values)
        if not np.iscomplexobj(vals):
            vals = vals.astype(float)
        if vals.shape != self.grid.points.shape:
            raise ValueError("value count must equal grid node count")
        if not np.all(np.isfinite(vals)):
            raise ValueError("field values must be finite")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, grid: Grid1D, fn) -> "SampledField":
        return cls(grid, np.asarray(fn(grid.points)))


def _fd_weights(x0: float, xs: np.ndarray, m: int) -> np.ndarray:
    """Fornberg weights for the m-th derivative at x0 from nodes xs."""
    n = len(xs)
    c = np.zeros((n, m + 1))
    c1 = 1.0
    c4 = xs[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = xs[i] - x0
        for j in range(i):
            c3 = xs[i] - xs[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def fd_derivative(points: np.ndarray, values: np.ndarray, order: int) -> np.ndarray:
    """Second-order finite-difference derivative on a (possibly non-uniform) grid.

    Interior nodes use the 3-point central stencil; boundaries use one-sided
    stencils of matching order (3 points for f', 4 points for f'').
    """
    x = np.asarray(points, dtype=float)
    v = np.asarray(values)
    n = x.size
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if n < 3 + (order - 1):
        raise ValueError(f"need at least {3 + (order - 1)} points for order-{order} derivative")

    out = np.empty_like(v, dtype=complex if np.iscomplexobj(v) else float)
    h1 = x[1:-1] - x[:-2]
    h2 = x[2:] - x[1:-1]
    if order == 1:
        out[1:-1] = (
            -h2 / (h1 * (h1 + h2)) * v[:-2]
            + (h2 - h1) / (h1 * h2) * v[1:-1]
            + h1 / (h2 * (h1 + h2)) * v[2:]
        )
        wl = _fd_weights(x[0], x[:3], 1)
        wr = _fd_weights(x[-1], x[-3:], 1)
        out[0] = wl @ v[:3]
        out[-1] = wr @ v[-3:]
    else:
        out[1:-1] = (
            2.0 / (h1 * (h1 + h2)) * v[:-2]
            - 2.0 / (h1 * h2) * v[1:-1]
            + 2.0 / (h2 * (h1 + h2)) * v[2:]
        )
        wl = _fd_weights(x[0], x[:4], 2)
        wr = _fd_weights(x[-1], x[-4:], 2)
        out[0] = wl @ v[:4]
        out[-1] = wr @ v[-4:]
    return out


def conformable_derivative(f: SampledField, order: FractionalOrder) -> SampledField:
    """D^a f on the grid: s^(1-a) times the finite-difference f'."""
    s = f.grid.points
    dv = fd_derivative(s, f.values, 1)
    return SampledField(f.grid, s ** (1.0 - order.alpha) * dv)


def conformable_second_derivative(f: SampledField, order: FractionalOrder) -> SampledField:
    """D^a D^a f via the expansion (1-a) s^(1-2a) f' + s^(2-2a) f''."""
    s = f.grid.points
    if s.size < 5:
        raise ValueError("second conformable derivative needs at least 5 grid points")
    a = order.alpha
    dv = fd_derivative(s, f.values, 1)
    d2v = fd_derivative(s, f.values, 2)
    return SampledField(f.grid, (1.0 - a) * s ** (1.0 - 2.0 * a) * dv + s ** (2.0 - 2.0 * a) * d2v)


def conformable_exp(rate: float, order: FractionalOrder, t: float) -> float:
    """exp(rate * t^a / a), the eigenfunction of D^a with eigenvalue `rate`."""
    t = float(t)
    if t <= 0.0:
        raise ValueError(f"conformable exponential requires t > 0, got {t}")
    return float(np.exp(rate * t ** order.alpha / order.alpha))
