"""Moving-frame Hamiltonian and dynamical phase extraction."""

import numpy as np
import pytest

from berrybox import (
    DegenerateEtaError,
    Geometry,
    Schedule,
    effective_hamiltonian,
    eigenvalue,
    loop_phase_analytic,
    mode,
    mode_window,
    momentum_matrix,
    point_loop,
    propagate,
    rectangle_loop,
    virial_matrix,
)

RECT = rectangle_loop(1.0, 2.0, 0.0, 1.0)


def test_static_hamiltonian_is_diagonal():
    modes = mode_window(1j, 4)
    g = Geometry(1.3, 0.0)
    h = effective_hamiltonian(modes, g, 0.0, 0.0, mass=0.9)
    lam = np.array([eigenvalue(m, g, 0.9) for m in modes])
    assert np.max(np.abs(h - np.diag(lam))) < 1e-12


def test_velocity_blocks_hermitian():
    for eta in (1j, 0.0, 0.5, -0.3 + 0.4j):
        modes = mode_window(eta, 8)
        p = momentum_matrix(modes)
        xp = virial_matrix(modes)
        assert np.max(np.abs(p - p.conj().T)) < 1e-10
        assert np.max(np.abs(xp - xp.conj().T)) < 1e-10
        h = effective_hamiltonian(modes, Geometry(1.2, 0.4), 0.3, -0.7)
        assert np.max(np.abs(h - h.conj().T)) < 1e-10


def test_diagonal_momentum_matches_connection():
    # <phi_n|p|phi_n> = -k sin(alpha): the diagonal that feeds the geometric phase
    for eta in (1j, 2j, -0.3 + 0.4j):
        modes = mode_window(eta, 3)
        p = momentum_matrix(modes)
        for i, m in enumerate(modes):
            assert p[i, i].real == pytest.approx(-m.k * np.sin(m.alpha), abs=1e-10)


def test_length_scaling_of_static_block():
    modes = mode_window(1j, 3)
    h1 = effective_hamiltonian(modes, Geometry(1.0, 0.0), 0.0, 0.0)
    h2 = effective_hamiltonian(modes, Geometry(2.0, 0.0), 0.0, 0.0)
    assert np.allclose(h2, h1 / 4.0, atol=1e-13)


def test_degenerate_eta_rejected():
    with pytest.raises(DegenerateEtaError):
        mode_window(1.0, 4)
    with pytest.raises(DegenerateEtaError):
        propagate(Schedule(RECT, 10.0, 200), 0, -1.0, 4)


def test_constant_path_trivial():
    rep = propagate(Schedule(point_loop(1.0, 0.0), 10.0, 500), 0, 1j, 4)
    assert abs(rep.geometric_phase) < 1e-9
    assert rep.fidelity == pytest.approx(1.0, abs=1e-9)
    assert rep.norm_drift < 1e-9
    assert not rep.adiabatic_warning


def test_rectangle_loop_converges_to_berry_phase():
    target = loop_phase_analytic(mode(0, 1j), RECT)
    errs = []
    for T in (25.0, 50.0):
        rep = propagate(Schedule(RECT, T, int(100 * T)), 0, 1j, 8)
        assert rep.fidelity > 0.99
        assert rep.norm_drift < 1e-9
        errs.append(abs(rep.geometric_phase - target))
    assert errs[1] < 0.6 * errs[0]
    assert errs[1] < 0.05


def test_real_eta_loop_has_no_geometric_phase():
    # vanishing curvature: the residual phase is pure second-order velocity
    # effect and dies off like 1/T
    geo = []
    for T in (250.0, 500.0):
        rep = propagate(Schedule(RECT, T, 2000), 0, 0.0, 8)
        assert rep.fidelity > 0.999
        geo.append(abs(rep.geometric_phase))
    assert geo[1] < 0.6 * geo[0]
    assert geo[1] < 0.01


def test_global_phase_does_not_shift_geometric_phase():
    # the return overlap carries the dressed state on both sides, so a
    # global phase on the initial state cancels identically
    rep1 = propagate(Schedule(RECT, 20.0, 1000), 0, 1j, 6)
    rep2 = propagate(Schedule(RECT, 20.0, 1000), 0, 1j, 6, initial_phase=1.234)
    assert rep1.geometric_phase == pytest.approx(rep2.geometric_phase, abs=1e-12)
    assert rep1.total_phase == pytest.approx(rep2.total_phase, abs=1e-12)


def test_window_convergence():
    # at the slow end of the acceptance sweep the loop barely couples to the
    # window edge: widening the window from 8 to 16 moves the geometric
    # phase by less than 1e-4
    sched = Schedule(RECT, 200.0, 20000)
    narrow = propagate(sched, 0, 1j, 8)
    wide = propagate(sched, 0, 1j, 16)
    assert abs(narrow.geometric_phase - wide.geometric_phase) < 1e-4
    assert wide.edge_weight < 1e-3


def test_window_out_of_range():
    with pytest.raises(ValueError):
        propagate(Schedule(RECT, 10.0, 200), 7, 1j, 4)


def test_schedule_validation():
    with pytest.raises(ValueError):
        Schedule(RECT, -1.0, 500)
    with pytest.raises(ValueError):
        Schedule(RECT, 10.0, 50)
    from berrybox import polyline_path
    with pytest.raises(ValueError):
        Schedule(polyline_path([(1.0, 0.0), (2.0, 0.0)]), 10.0, 500)
