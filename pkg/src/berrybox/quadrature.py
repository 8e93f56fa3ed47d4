"""Composite Gauss-Legendre rules and sampled functions on quadrature grids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_ORDER = 16


def panel_rule(a: float, b: float, panels: int, order: int = DEFAULT_ORDER):
    """Composite Gauss-Legendre rule on [a, b] split into equal panels.

    Returns (nodes, weights); nodes are strictly increasing.
    """
    if not b > a:
        raise ValueError(f"empty integration interval [{a}, {b}]")
    if panels < 1:
        raise ValueError("panels must be >= 1")
    xg, wg = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return nodes, weights


def oscillatory_rule(a: float, b: float, wavenumber: float, order: int = DEFAULT_ORDER):
    """Panel rule sized for trigonometric integrands exp(i*wavenumber*x).

    At least four panels per wavelength (64+ nodes per wavelength at the
    default order), which is well past the accuracy knee of Gauss-Legendre
    for oscillatory integrands.
    """
    cycles = abs(wavenumber) * (b - a) / (2.0 * np.pi)
    panels = max(2, int(np.ceil(4.0 * cycles)) + 2)
    return panel_rule(a, b, panels, order=order)


def piecewise_rule(breakpoints, panels_per_piece, order: int = DEFAULT_ORDER):
    """Concatenation of panel rules between consecutive breakpoints.

    `panels_per_piece` may be an int or a sequence matching the pieces.
    """
    pts = np.asarray(breakpoints, dtype=float)
    if pts.ndim != 1 or pts.size < 2 or np.any(np.diff(pts) <= 0):
        raise ValueError("breakpoints must be strictly increasing")
    npieces = pts.size - 1
    if np.isscalar(panels_per_piece):
        panels_per_piece = [int(panels_per_piece)] * npieces
    nodes, weights = [], []
    for lo, hi, p in zip(pts[:-1], pts[1:], panels_per_piece):
        x, w = panel_rule(lo, hi, p, order=order)
        nodes.append(x)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


@dataclass(frozen=True)
class GridFunction:
    """Complex samples of a function on a fixed quadrature grid.

    Invariants: at least two strictly increasing nodes, positive weights,
    matching array lengths.
    """

    nodes: np.ndarray
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.size < 2:
            raise ValueError("grid needs at least two nodes")
        if nodes.shape != values.shape or nodes.shape != weights.shape:
            raise ValueError("nodes, values and weights must have equal shapes")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("quadrature weights must be positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def sample(cls, fn, nodes, weights) -> "GridFunction":
        nodes = np.asarray(nodes, dtype=float)
        return cls(nodes=nodes, values=np.asarray(fn(nodes), dtype=complex), weights=np.asarray(weights, dtype=float))

    def inner(self, other: "GridFunction") -> complex:
        """L2 inner product <self|other>, conjugate-linear in self."""
        if not np.array_equal(self.nodes, other.nodes):
            raise ValueError("grid functions live on different grids")
        return complex(np.sum(self.weights * np.conj(self.values) * other.values))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.weights * np.abs(self.values) ** 2)))
