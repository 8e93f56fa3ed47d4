"""Berry connection, curvature and loop phases for the nondegenerate levels.

Since the box eigenfunctions stop abruptly at the walls, the naive parameter
derivative of an eigenfunction is not square integrable and the connection
integral needs a prescription.  Three independent evaluations are provided
and cross-checked against the closed form a_c = (k/l) sin(alpha), a_l = 0:

* `connection_interior`   - differentiate the smooth extension and integrate
                            strictly inside the box (finite differences in
                            the parameter);
* `connection_mollified`  - embed in L2(R) with a smoothed characteristic
                            function of the box and let its width go to zero;
* `loop_phase_overlap`    - gauge-invariant discrete phase from overlaps of
                            neighboring eigenfunctions along the loop, which
                            never differentiates anything.

Loop phases follow the convention Phi = i * contour integral of <psi|d psi>;
for the counterclockwise axis-aligned rectangle [l1, l2] x [c1, c2] this
gives Phi = k (1/l1 - 1/l2)(c2 - c1) sin(alpha).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .paths import ParameterPath, rectangle_corners
from .quadrature import GridFunction, oscillatory_rule, panel_rule, piecewise_rule
from .spectrum import (
    Geometry,
    Mode,
    eigenfunction_physical,
    extension_physical,
    extension_physical_grad,
)

__all__ = [
    "MeshTooCoarseError",
    "Mollifier",
    "standard_mollifier",
    "ConnectionSample",
    "CurvatureSample",
    "connection_analytic",
    "connection_interior",
    "connection_mollified",
    "LoopPhaseResult",
    "loop_phase_analytic",
    "loop_phase_connection",
    "loop_phase_overlap",
    "state_overlap",
    "curvature",
    "stokes_defect",
    "commutator_defect",
    "power_law_extrapolate",
]


class MeshTooCoarseError(ValueError):
    """Raised when neighboring loop states barely overlap."""


# ---------------------------------------------------------------------------
# mollifier


def _flat_exp(t):
    """exp(-1/t) for t > 0, zero otherwise; flat to all orders at t = 0."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(t > 0.0, np.exp(-1.0 / np.where(t > 0.0, t, 1.0)), 0.0)


@dataclass(frozen=True)
class Mollifier:
    """Smooth monotone cutoff profile rho on [0, inf).

    Required shape: rho(0) = 1, rho(1) = 0, nonnegative, decreasing, smooth,
    with every derivative vanishing at 0 (so pasting it onto the flat top of
    a characteristic function stays smooth).
    """

    profile: Callable

    def __call__(self, t):
        return self.profile(np.asarray(t, dtype=float))


def standard_mollifier() -> Mollifier:
    """The standard smooth partition profile rho(t) = f(1-t)/(f(t) + f(1-t)).

    Built from f(t) = exp(-1/t); identically 1 for t <= 0 and 0 for t >= 1.
    A plain bump like exp(1 - 1/(1-t^2)) would fail the flatness requirement
    at t = 0.
    """

    def rho(t):
        up = _flat_exp(1.0 - t)
        down = _flat_exp(t)
        return up / (up + down + 1e-300)

    return Mollifier(profile=rho)


# ---------------------------------------------------------------------------
# connection samples


@dataclass(frozen=True)
class ConnectionSample:
    """Components Im<psi|d_l psi>, Im<psi|d_c psi> at one parameter point."""

    a_l: float
    a_c: float
    geometry: Geometry
    mode: Mode


@dataclass(frozen=True)
class CurvatureSample:
    """Coefficient of dl ^ dc in the curvature two-form at one point."""

    f_lc: float
    geometry: Geometry
    mode: Mode


def connection_analytic(m: Mode, g: Geometry) -> ConnectionSample:
    """Closed-form connection: a_l = 0 and a_c = (k/l) sin(alpha).

    Real eta has sin(alpha) = 0 and the connection vanishes identically
    (time-reversal-invariant boundary conditions carry no geometric phase).
    """
    return ConnectionSample(
        a_l=0.0,
        a_c=m.k / g.l * np.sin(m.alpha),
        geometry=g,
        mode=m,
    )


def _interior_component(m: Mode, g: Geometry, plus: Geometry, minus: Geometry, h: float, lo: float, hi: float) -> float:
    if hi - lo <= 0:
        raise ValueError("parameter step too large: shifted boxes do not overlap")
    x, w = oscillatory_rule(lo, hi, 2.0 * m.k / g.l)
    base = eigenfunction_physical(m, g, x)
    diff = (eigenfunction_physical(m, plus, x) - eigenfunction_physical(m, minus, x)) / (2.0 * h)
    num = np.sum(w * np.imag(np.conj(base) * diff))
    den = np.sum(w * np.abs(base) ** 2)
    return float(num / den)


def connection_interior(m: Mode, g: Geometry, h: float | None = None) -> ConnectionSample:
    """Connection from parameter finite differences, integrated inside the box.

    The derivative is formed from the eigenfunction at parameters +/- h and
    the integrand is evaluated strictly inside the intersection of the
    shifted boxes, where all three functions are smooth.  The quotient is
    normalized by the norm captured in the same window: the window clips an
    O(h) sliver off the box, and without the renormalization that sliver
    would dominate the finite-difference truncation error.  Converges to the
    closed form at second order in h.

    The default step shrinks with the wavenumber: the truncation error grows
    like h^2 k^3, so a k-independent step loses the high modes long before
    roundoff becomes relevant.
    """
    l, c = g.l, g.c
    if h is None:
        h = 1e-4 * l / (1.0 + abs(m.k))
    if not 0 < h < l / 4:
        raise ValueError("need 0 < h < l/4")
    a_c = _interior_component(
        m, g, Geometry(l, c + h), Geometry(l, c - h), h, c - l / 2 + h, c + l / 2 - h
    )
    a_l = _interior_component(
        m, g, Geometry(l + h, c), Geometry(l - h, c), h, c - (l - h) / 2, c + (l - h) / 2
    )
    return ConnectionSample(a_l=a_l, a_c=a_c, geometry=g, mode=m)


def _mollified_grid(g: Geometry, m: Mode, eps: float):
    # panels split at the box walls where the cutoff profile kicks in
    inner_panels = max(2, int(np.ceil(4.0 * abs(m.k) / (2.0 * np.pi))) + 2)
    x, w = piecewise_rule(
        [g.left - eps, g.left, g.right, g.right + eps],
        [12, inner_panels, 12],
    )
    return x, w


def connection_mollified(m: Mode, g: Geometry, eps: float, rho: Mollifier | None = None) -> ConnectionSample:
    """Connection from the smoothed-box embedding at regularization width eps.

    The eigenfunction is written as (smooth whole-line extension) times a
    normalized, mollified characteristic function of the box; the connection
    integrand uses the analytic parameter derivative of the extension and
    the square of the cutoff.  As eps -> 0 the c-component tends to
    (k/l) sin(alpha) and the l-component to zero (its limiting integrand is
    odd around the box center).

    For this particular eigenfunction family the convergence is in fact
    instantaneous: Im(conj(phi) d_c phi) is constant in x and the cutoff is
    reflection symmetric about the box center, so the normalization quotient
    cancels the eps dependence exactly and every width returns the limit up
    to quadrature error.  The sweep over eps still exercises the embedding
    end to end.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if rho is None:
        rho = standard_mollifier()
    x, w = _mollified_grid(g, m, eps)
    chi = np.where(
        (x >= g.left) & (x <= g.right),
        1.0,
        rho((np.abs(x - g.c) - 0.5 * g.l) / eps),
    )
    ext = extension_physical(m, g, x)
    d_dl, d_dc = extension_physical_grad(m, g, x)
    weight = w * chi ** 2
    norm2 = np.sum(weight * np.abs(ext) ** 2)
    a_l = np.sum(weight * np.imag(np.conj(ext) * d_dl)) / norm2
    a_c = np.sum(weight * np.imag(np.conj(ext) * d_dc)) / norm2
    return ConnectionSample(a_l=float(a_l), a_c=float(a_c), geometry=g, mode=m)


# ---------------------------------------------------------------------------
# loop phases


def _require_closed(path: ParameterPath):
    if not path.closed:
        raise ValueError("loop phase requires a closed parameter path")


def loop_phase_connection(m: Mode, path: ParameterPath, sampler, order: int = 16) -> float:
    """Line integral Phi = -contour integral of (a_l dl + a_c dc).

    `sampler(mode, geometry) -> ConnectionSample` supplies the connection
    components; the minus sign converts Im<psi|d psi> into i<psi|d psi>.
    """
    _require_closed(path)
    nseg = len(path.segments)
    xg, wg = np.polynomial.legendre.leggauss(order)
    total = 0.0
    for i in range(nseg):
        s0, s1 = i / nseg, (i + 1) / nseg
        mid, half = 0.5 * (s0 + s1), 0.5 * (s1 - s0)
        for xj, wj in zip(xg, wg):
            s = mid + half * xj
            sample = sampler(m, path.point(s))
            vl, vc = path.velocity(s)
            total += wj * half * (sample.a_l * vl + sample.a_c * vc)
    return -total


def loop_phase_analytic(m: Mode, path: ParameterPath) -> float:
    """Loop phase from the closed-form connection.

    For the counterclockwise rectangle [l1, l2] x [c1, c2] only the constant-l
    sides contribute and Phi = k (1/l1 - 1/l2)(c2 - c1) sin(alpha).
    """
    return loop_phase_connection(m, path, lambda mm, g: connection_analytic(mm, g))


def state_overlap(m: Mode, ga: Geometry, gb: Geometry) -> complex:
    """L2(R) overlap of the eigenfunction at two parameter points.

    Both states vanish outside their boxes, so the integral runs over the
    box intersection only.
    """
    lo = max(ga.left, gb.left)
    hi = min(ga.right, gb.right)
    if hi - lo <= 0:
        return 0.0 + 0.0j
    x, w = oscillatory_rule(lo, hi, m.k / ga.l + m.k / gb.l)
    va = eigenfunction_physical(m, ga, x)
    vb = eigenfunction_physical(m, gb, x)
    return complex(np.sum(w * np.conj(va) * vb))


@dataclass(frozen=True)
class LoopPhaseResult:
    """Discrete loop phase with its mesh and a mesh-halving error estimate."""

    phase: float
    mesh: int
    err_estimate: float


def _overlap_chain_phase(m: Mode, points) -> float:
    prod = 1.0 + 0.0j
    for ga, gb in zip(points[:-1], points[1:]):
        ov = state_overlap(m, ga, gb)
        if abs(ov) < 1e-6:
            raise MeshTooCoarseError(
                f"neighboring states overlap only |<.|.>| = {abs(ov):.2e}; refine the mesh"
            )
        prod *= ov / abs(ov)
    return float(-np.angle(prod))


def loop_phase_overlap(m: Mode, path: ParameterPath, mesh: int) -> LoopPhaseResult:
    """Gauge-invariant discrete loop phase from neighboring-state overlaps.

    The path is sampled at `mesh` points p_j and the phase is
    -Arg prod_j <psi(p_j)|psi(p_j+1)>; multiplying any sampled state by a
    phase cancels between the two factors it enters, so the product is
    exactly gauge invariant.  The error estimate compares against the
    half-mesh evaluation.
    """
    _require_closed(path)
    if mesh < 8:
        raise ValueError("mesh must be at least 8")

    def chain(n):
        pts = [path.point(j / n) for j in range(n)]
        pts.append(pts[0])
        return _overlap_chain_phase(m, pts)

    phase = chain(mesh)
    coarse = chain(mesh // 2)
    delta = np.angle(np.exp(1j * (phase - coarse)))
    return LoopPhaseResult(phase=phase, mesh=mesh, err_estimate=float(abs(delta)))


# ---------------------------------------------------------------------------
# curvature


def curvature(m: Mode, g: Geometry) -> CurvatureSample:
    """Curvature two-form coefficient f_lc = (k/l^2) sin(alpha).

    This is k sin(alpha) times the hyperbolic area density 1/l^2 of the
    (l, c) half-plane, and vanishes for every real eta.
    """
    return CurvatureSample(f_lc=m.k * np.sin(m.alpha) / g.l ** 2, geometry=g, mode=m)


def stokes_defect(m: Mode, rect: ParameterPath) -> float:
    """|loop phase - enclosed curvature flux| for an axis-aligned rectangle.

    Both sides are evaluated numerically (line quadrature of the one-form,
    tensor Gauss quadrature of f_lc over the enclosed area) and must agree
    up to quadrature error.
    """
    lmin, lmax, cmin, cmax, sign = rectangle_corners(rect)
    line = loop_phase_analytic(m, rect)
    if lmax - lmin <= 0 or cmax - cmin <= 0:
        return abs(line)
    xl, wl = panel_rule(lmin, lmax, 8)
    xc, wc = panel_rule(cmin, cmax, 2)
    f = np.array([[curvature(m, Geometry(l, c)).f_lc for c in xc] for l in xl])
    flux = float(wl @ f @ wc)
    return abs(line - sign * flux)


# ---------------------------------------------------------------------------
# dilation-generator commutator check


def commutator_defect(sample: GridFunction) -> float:
    """Grid norm of ([x o p, p] - i p) applied to a test function.

    x o p = (xp + px)/2 is the dilation generator; the identity
    [x o p, p] = i p is checked with second-order central differences, so
    the defect decays like the squared grid step.  The sample must be
    smooth and supported away from the grid edges.
    """
    x, f = sample.nodes, sample.values
    steps = np.diff(x)
    h = steps[0]
    if not np.allclose(steps, h, rtol=1e-10, atol=0.0):
        raise ValueError("commutator check needs a uniform grid")
    edge = max(5, int(0.02 * x.size))
    tail = max(np.max(np.abs(f[:edge])), np.max(np.abs(f[-edge:])))
    if tail > 1e-10 * max(np.max(np.abs(f)), 1e-300):
        raise ValueError("test function support touches the grid boundary")

    def ddx(arr):
        return (arr[2:] - arr[:-2]) / (2.0 * h)

    def momentum(arr):
        return -1j * ddx(arr)

    def dilation(arr, nodes):
        return -1j * (nodes[1:-1] * ddx(arr) + 0.5 * arr[1:-1])

    pf = momentum(f)                      # on x[1:-1]
    xpf = dilation(f, x)                  # on x[1:-1]
    lhs = dilation(pf, x[1:-1]) - momentum(xpf)   # on x[2:-2]
    rhs = 1j * pf[1:-1]
    return float(np.sqrt(h * np.sum(np.abs(lhs - rhs) ** 2)))


# ---------------------------------------------------------------------------
# extrapolation helper


def power_law_extrapolate(params, values):
    """Extrapolate samples a(eps) = a* + C eps^q to eps -> 0.

    `params` must decrease geometrically (constant ratio).  Returns
    (limit, order); when successive differences sit at the noise floor the
    last sample is returned with the order capped at 8.
    """
    eps = np.asarray(params, dtype=float)
    a = np.asarray(values, dtype=float)
    if eps.size < 3 or eps.size != a.size:
        raise ValueError("need at least three matching samples")
    ratios = eps[1:] / eps[:-1]
    if np.any(ratios >= 1.0) or np.max(np.abs(ratios - ratios[0])) > 1e-8:
        raise ValueError("params must decrease at a constant ratio")
    r = ratios[0]
    d = np.diff(a)
    floor = 1e-12 * max(np.max(np.abs(a)), 1.0)
    if np.max(np.abs(d)) < floor:
        return float(a[-1]), 8.0
    qs = []
    for d0, d1 in zip(d[:-1], d[1:]):
        if abs(d1) < floor or abs(d0) < floor or d0 * d1 <= 0:
            continue
        qs.append(np.log(d0 / d1) / np.log(1.0 / r))
    if not qs:
        return float(a[-1]), 8.0
    q = min(float(np.mean(qs)), 8.0)
    rho = r ** q
    limit = a[-1] + (a[-1] - a[-2]) * rho / (1.0 - rho)
    return float(limit), q
