"""Airy-matching resonances, variational times, and square-barrier checks."""

import cmath
import math

import numpy as np
import pytest

from tunnelclock import HELIUM_IP, NonConvergenceError, params_from_kappa
from tunnelclock import variational


PARAMS = params_from_kappa(HELIUM_IP, 3.0)


def test_resonance_near_bound_state():
    res = variational.find_resonance(PARAMS)
    assert res.energy.real == pytest.approx(-PARAMS.ip, rel=0.05)
    assert res.energy.imag < 0.0
    assert res.width == pytest.approx(-2.0 * res.energy.imag, rel=1e-12)
    assert res.lifetime == pytest.approx(1.0 / res.width, rel=1e-12)


def test_resonance_defect_vanishes_at_root():
    res = variational.find_resonance(PARAMS)
    d0 = abs(variational.consistency_determinant(PARAMS, res.energy))
    d1 = abs(variational.consistency_determinant(PARAMS, res.energy + 1e-3))
    assert d0 <= 1e-10 * d1


def test_residual_landscape_quadratic_in_squared_defect():
    """|det|^2 grows quadratically around the root along complex rays."""
    res = variational.find_resonance(PARAMS)
    for direction in (1.0, 1j, cmath.exp(0.7j)):
        hs = np.array([1e-4, 2e-4, 4e-4, 8e-4])
        vals = np.array([
            abs(variational.consistency_determinant(
                PARAMS, res.energy + h * direction)) ** 2
            for h in hs])
        slope = np.polyfit(np.log(hs), np.log(vals), 1)[0]
        assert 1.8 <= slope <= 2.2


def test_width_exponent_in_kappa():
    """ln Gamma falls linearly in kappa with slope approx. -4/3.

    Gamma ~ exp(-2 kappa_tilde^3 / (3 F)) gives d ln Gamma / d kappa = -4/3
    at fixed ip (kappa changes through the field).
    """
    kappas = np.array([3.0, 4.0, 5.0, 6.0])
    lng = np.array([
        math.log(variational.find_resonance(
            params_from_kappa(HELIUM_IP, k)).width)
        for k in kappas])
    slope = np.polyfit(kappas, lng, 1)[0]
    assert slope == pytest.approx(-4.0 / 3.0, rel=0.10)


def test_matching_solution_reproduces_continuity():
    res = variational.find_resonance(PARAMS)
    sol = variational.solve_matching(PARAMS, res.energy)
    # defect per component must be tiny at the resonance energy
    assert sol.residual <= 1e-9


def test_variational_time_positive_and_stable():
    tau = variational.larmor_time_variational(PARAMS)
    assert tau > 0.0
    tau2 = variational.larmor_time_variational(PARAMS, dv=2e-5 * PARAMS.ip)
    assert tau2 == pytest.approx(tau, rel=1e-3)


def test_square_barrier_unitarity_and_wronskians():
    for (v0, a, k) in [(1.0, 1.0, 0.8), (2.5, 0.7, 1.2), (0.9, 2.0, 0.5)]:
        b = variational.square_barrier(v0, a, k)
        assert abs(b.r) ** 2 + abs(b.t) ** 2 == pytest.approx(1.0, abs=1e-13)
        assert abs(b.t - b.t_t) <= 1e-13
        assert abs(b.r * np.conj(b.t) + np.conj(b.r_t) * b.t) <= 1e-13


def test_square_barrier_wavefunctions_satisfy_matching():
    b = variational.square_barrier(1.0, 1.0, 0.8)
    # transmitted-conjugate state times initial state integrates to the
    # weak-value numerator; just check continuity at the right edge
    eps = 1e-9
    inside = b.psi_initial(1.0 - eps)
    outside = b.psi_initial(1.0 + eps)
    assert abs(inside - outside) <= 1e-6


def test_weak_equals_variational_time():
    tau_weak, tau_var = variational.scattering_equivalence(1.0, 1.0, 0.8)
    assert tau_weak.real == pytest.approx(tau_var, rel=1e-6)


def test_hartman_saturation():
    """Opaque-barrier phase time saturates at k/(q V0), independent of a."""
    k, v0 = 0.8, 1.0
    q = math.sqrt(2.0 * v0 - k * k)
    times = []
    for a in (2.0, 4.0, 8.0):
        _, tau_var = variational.scattering_equivalence(v0, a, k)
        times.append(tau_var)
    saturated = k / (q * v0)
    assert times[-1] == pytest.approx(saturated, rel=1e-2)
    assert abs(times[2] - times[1]) < abs(times[1] - times[0])


def test_nonconvergence_reported():
    with pytest.raises(NonConvergenceError):
        variational.find_resonance(PARAMS, start=10.0 + 0j, max_iter=3)
