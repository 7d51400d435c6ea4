"""Small numerical building blocks: sinc, composite quadrature, compensated sums."""

from __future__ import annotations

import functools

import numpy as np

from .constants import TWO_PI


def sinc(z):
    """sin(z)/z with the removable singularity filled in (sinc(0) = 1)."""
    return np.sinc(np.asarray(z, dtype=float) / np.pi)


@functools.lru_cache(maxsize=None)
def _leggauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def composite_gauss_nodes(a: float, b: float, n_panels: int, order: int = 8):
    """Nodes and weights of a composite Gauss-Legendre rule on [a, b]."""
    x, w = _leggauss(order)
    edges = np.linspace(a, b, n_panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halves = 0.5 * np.diff(edges)
    nodes = (mids[:, None] + halves[:, None] * x[None, :]).ravel()
    weights = (halves[:, None] * w[None, :]).ravel()
    return nodes, weights


class KahanAccumulator:
    """Compensated (Kahan) summation over numpy arrays, element-wise.

    Accumulation order is the call order, so results are deterministic.
    """

    def __init__(self, shape):
        self._sum = np.zeros(shape)
        self._comp = np.zeros(shape)

    def add(self, value) -> None:
        y = value - self._comp
        t = self._sum + y
        self._comp = (t - self._sum) - y
        self._sum = t

    @property
    def total(self) -> np.ndarray:
        return self._sum


def dirichlet_kernel(theta, m_max: int):
    """sum_{m=-M}^{M} exp(i m theta), which is real: sin((M+1/2)t)/sin(t/2).

    The argument is reduced mod 2*pi first; the reduction leaves the value
    unchanged because 2M+1 is odd.
    """
    th = np.remainder(np.asarray(theta, dtype=float) + np.pi, TWO_PI) - np.pi
    small = np.abs(th) < 1e-4 / (m_max + 0.5)
    denom = np.where(small, 1.0, np.sin(0.5 * th))
    num = np.sin((m_max + 0.5) * th)
    return np.where(small, 2.0 * m_max + 1.0, num / denom)


def ensure_uniform_axis(axis: np.ndarray, what: str = "axis") -> float:
    """Check a grid is strictly increasing and uniform; return the spacing."""
    axis = np.asarray(axis, dtype=float)
    if axis.ndim != 1 or axis.size < 2:
        raise ValueError(f"{what} must be a 1-d grid with at least two points")
    steps = np.diff(axis)
    if np.any(steps <= 0):
        raise ValueError(f"{what} must be strictly increasing")
    spacing = float(axis[-1] - axis[0]) / (axis.size - 1)
    if np.max(np.abs(steps - spacing)) > 1e-9 * abs(spacing):
        raise ValueError(f"{what} must be uniformly spaced")
    return spacing
