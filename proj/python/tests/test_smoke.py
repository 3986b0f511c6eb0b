import math

import numpy as np
import pytest

import modsplit as ms


def test_quartic_push_fixed_point():
    P, report = ms.solve_push(ms.QuarticOscillator(), [0.0], [1.0], ms.SchemeConfig(order=4, tau=0.1))
    x = 1.0
    for _ in range(100):
        x = 1.0 + 0.1**4 * x**3 / 4.0
    assert P[0] == pytest.approx(x, rel=1e-15)
    assert report.converged
    assert report.iterations <= 5


def test_harmonic_step_matches_closed_form():
    tau = 0.3
    state, _ = ms.step(ms.PhaseState([1.0], [0.0]), ms.QuadraticModel.harmonic(), ms.SchemeConfig(2, tau))
    assert state.q[0] == pytest.approx(1 - tau**2 / 2, rel=1e-15)
    assert state.p[0] == pytest.approx(-(1 - tau**2 / 4) * tau, rel=1e-15)


def test_quartic_period():
    rec = ms.record_run(ms.QuarticOscillator(), ms.PhaseState([0.0], [1.0]), ms.SchemeConfig(8, 0.05), 800)
    assert len(rec) == 801
    assert rec.q.shape == (801, 1)
    assert abs(ms.period_estimate(rec) - 6.236339) <= 1e-5


def test_fpu_energy_and_words():
    chain = ms.FPUChain(d=9, beta=1.0)
    s0 = ms.fpu_initial_state(chain, 1.425)
    assert chain.hamiltonian(s0) == pytest.approx(1.425, abs=1e-12)
    rng = np.random.default_rng(3)
    q, p = rng.uniform(-0.5, 0.5, 9), rng.uniform(-1, 1, 9)
    for w in ms.required_words(8):
        fast = ms.word_value(chain, w, q, p)
        slow = ms.word_value_generic(chain, w, q, p)
        assert fast == pytest.approx(slow, rel=1e-11, abs=1e-300)
    end = ms.integrate(s0, chain, ms.SchemeConfig(6, 0.05), 200)
    assert abs(chain.hamiltonian(end) - 1.425) < 1e-6


def test_global_error_scaling_quartic():
    model, s0 = ms.QuarticOscillator(), ms.PhaseState([0.0], [1.0])
    ref = ms.reference_trajectory(model, s0, 10.0, 10.0, precision="extended")
    errs = []
    for tau in (0.1, 0.05):
        n = round(10 / tau)
        run = ms.record_run(model, s0, ms.SchemeConfig(4, tau), n, stride=n, precision="extended")
        errs.append((tau, ms.global_error(run, ref)[-1]))
    assert ms.convergence_order(errs) == pytest.approx(4.0, abs=0.5)


def test_modified_coefficients_rotate_exactly():
    tau = 1.0
    m, k = ms.modified_coeffs_1d(tau)
    s = ms.linear_step(ms.PhaseState([1.0], [0.0]), np.array([[m]]), np.array([[k]]), tau)
    assert s.q[0] == pytest.approx(math.cos(tau), abs=1e-14)
    assert s.p[0] == pytest.approx(-math.sin(tau), abs=1e-14)


def test_optimal_order():
    assert ms.optimal_order(8, 100) == pytest.approx(4.0)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ms.ConfigError):
        ms.SchemeConfig(order=3)
    with pytest.raises(ValueError):
        ms.word_value(ms.QuarticOscillator(), "Dx", [0.0], [1.0])
    with pytest.raises(ms.NumericalError):
        ms.solve_push(ms.QuarticOscillator(), [1.5], [2.0], ms.SchemeConfig(8, 2.5, push_max_iter=3))
