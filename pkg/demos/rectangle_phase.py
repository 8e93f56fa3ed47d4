#!/usr/bin/env python3
"""The rectangle loop phase, four independent ways.

A box of length l centered at c carries the boundary condition eta = i.
Dragging (l, c) counterclockwise around the rectangle [1, 2] x [0, 1] and
bringing the ground state back should imprint the geometric phase

    Phi = k (1/l1 - 1/l2)(c2 - c1) sin(alpha) = pi/4.

The closed form, the interior-derivative prescription, the mollified
embedding, and the derivative-free overlap product must all agree on this
number; their convergence behavior is tabulated below and optionally drawn
into an SVG.
"""

import sys

import numpy as np

from berrybox import (
    connection_interior,
    connection_mollified,
    loop_phase_analytic,
    loop_phase_connection,
    loop_phase_overlap,
    mode,
    power_law_extrapolate,
    rectangle_loop,
)
from berrybox.svgplot import line_plot


def main(svg_path=None):
    eta = 2j   # cos(alpha) != 0, so no prescription is trivially exact
    m = mode(0, eta)
    rect = rectangle_loop(1.0, 2.0, 0.0, 1.0)
    exact = loop_phase_analytic(m, rect)
    print(f"eta = {eta}, level n = 0, rectangle l: 1 -> 2, c: 0 -> 1")
    print(f"closed-form loop phase: {exact:.12f}")
    print()

    print("interior prescription (finite differences inside the box)")
    for h in (1e-3, 5e-4, 2.5e-4):
        phase = loop_phase_connection(m, rect, lambda mm, g, hh=h: connection_interior(mm, g, hh * g.l))
        print(f"  h/l = {h:.1e}   phase = {phase:.12f}   error = {abs(phase - exact):.2e}")

    print("mollified embedding (smoothed box edge of width eps)")
    eps_list = [0.2, 0.1, 0.05, 0.025]
    phases = []
    for eps in eps_list:
        phase = loop_phase_connection(m, rect, lambda mm, g, ee=eps: connection_mollified(mm, g, ee * g.l))
        phases.append(phase)
        print(f"  eps/l = {eps:<6} phase = {phase:.12f}   error = {abs(phase - exact):.2e}")
    limit, order = power_law_extrapolate(eps_list, phases)
    print(f"  extrapolated: {limit:.12f} (observed order {order:.1f})")

    print("overlap product (no derivatives at all)")
    meshes = [32, 64, 128, 256, 512]
    errs = []
    for mesh in meshes:
        res = loop_phase_overlap(m, rect, mesh)
        errs.append(abs(res.phase - exact))
        print(f"  mesh = {mesh:<5} phase = {res.phase:.12f}   error = {errs[-1]:.2e}   "
              f"half-mesh estimate = {res.err_estimate:.2e}")

    if svg_path:
        line_plot(
            [
                {"x": meshes, "y": [max(e, 1e-16) for e in errs], "label": "overlap |error|"},
                {"x": meshes, "y": [errs[0] * meshes[0] ** 2 / mm ** 2 for mm in meshes],
                 "label": "second-order reference", "dashed": True},
            ],
            title="overlap loop-phase convergence",
            xlabel="mesh points",
            ylabel="|phase - closed form|",
            path=svg_path,
            logx=True,
            logy=True,
        )
        print(f"wrote {svg_path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else None)
