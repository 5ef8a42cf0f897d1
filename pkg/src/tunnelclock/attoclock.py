"""Attoclock time as the weak value of temporal delay for the static model.

tau_A(u) = tau_tilde * Re[ N(u) / D(u) ]

with the half-line cubic-phase integrals (lower limit -u, prefactors
u'^2/(u'^2+1)^2 and u'/(u'^2+1)^2) evaluated on a rotated contour.  The
drift p/F has already been subtracted, so tau_A is a pure tunneling delay;
it is non-zero at the tunnel exit and vanishes at the detector by parity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oscquad, sfa
from .errors import DegenerateDenominatorError, DomainError
from .model import ModelParams


@dataclass(frozen=True)
class AttoTrace:
    """tau_A sampled on a momentum grid with the classical position map."""

    u_values: np.ndarray
    tau_a: np.ndarray
    xi_values: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u_values, dtype=float)
        t = np.asarray(self.tau_a, dtype=float)
        xi = np.asarray(self.xi_values, dtype=float)
        if not (u.shape == t.shape == xi.shape):
            raise DomainError("trace arrays must have matching shapes")
        if not np.array_equal(xi, 1.0 + u * u):
            raise DomainError("xi values must equal 1 + u^2")


def _g_delay(t):
    """Numerator prefactor u'^2/(u'^2+1)^2 (even)."""
    t = np.asarray(t, dtype=complex)
    return t * t / (t * t + 1.0) ** 2


def delay_integrals(params: ModelParams, u: float) -> tuple[complex, complex]:
    """Numerator and denominator cubic-phase integrals at momentum u."""
    n = oscquad.cubic_phase_integral(
        params.kappa, 1.0, lower=-float(u), g=_g_delay, poles=sfa.OVERLAP_POLES)
    d = oscquad.cubic_phase_integral(
        params.kappa, 1.0, lower=-float(u), g=sfa._overlap_g,
        poles=sfa.OVERLAP_POLES)
    return n, d


def attoclock_time(params: ModelParams, u: float) -> float:
    """Weak-value attoclock delay at scaled momentum u (a.u.)."""
    n, d = delay_integrals(params, u)
    if abs(d) < 1e-300:
        raise DegenerateDenominatorError(
            f"ionization amplitude underflows at u = {u}")
    return params.tau_tilde * float((n / d).real)


def attoclock_time_via_delay(params: ModelParams, u: float) -> float:
    """Same observable assembled in the ionization-time domain.

    Integrates over the field-on time t_D with the bound-state coupling
    matrix element, forms the mean delay <t_D>, and subtracts the drift
    p/F explicitly.  Cross-check for the scaled-momentum form.
    """
    kt = params.kappa_tilde
    p_det = kt * u

    def coupling(up):
        # matrix element as a function of u'(t_D); constants cancel in the
        # ratio, kept for fidelity to the time-domain reading.
        return sfa.bound_overlap(params, up)

    def g_num(up):
        # t_D * coupling with t_D = (kappa_tilde*u' + p)/F
        return (kt * up + p_det) / params.field * coupling(up)

    num = oscquad.cubic_phase_integral(
        params.kappa, 1.0, lower=-float(u), g=g_num, poles=sfa.OVERLAP_POLES)
    den = oscquad.cubic_phase_integral(
        params.kappa, 1.0, lower=-float(u), g=coupling, poles=sfa.OVERLAP_POLES)
    if abs(den) < 1e-300:
        raise DegenerateDenominatorError(
            f"ionization amplitude underflows at u = {u}")
    return float((num / den).real) - p_det / params.field


def asymptotic_parity_split(params: ModelParams, u_cut: float = 12.0):
    """Even/odd bookkeeping of the u -> infinity integrals.

    Returns (numerator_full, denominator_full) over the whole line; parity
    forces the numerator to be purely real and the denominator purely
    imaginary, so their Im/Re parts are the forbidden residuals.  The left
    half-line pieces follow from conjugation symmetry of the real
    prefactors (even g -> +conj, odd g -> -conj of the right tail).
    """
    k = params.kappa
    num_main = oscquad.cubic_phase_integral(
        k, 1.0, lower=-u_cut, g=_g_delay, poles=sfa.OVERLAP_POLES)
    num_tail = oscquad.cubic_phase_integral(
        k, 1.0, lower=u_cut, g=_g_delay, poles=sfa.OVERLAP_POLES)
    den_main = oscquad.cubic_phase_integral(
        k, 1.0, lower=-u_cut, g=sfa._overlap_g, poles=sfa.OVERLAP_POLES)
    den_tail = oscquad.cubic_phase_integral(
        k, 1.0, lower=u_cut, g=sfa._overlap_g, poles=sfa.OVERLAP_POLES)
    num_full = num_main + np.conj(num_tail)
    den_full = den_main - np.conj(den_tail)
    return num_full, den_full


def attoclock_trace(params: ModelParams, u_max: float, n: int = 64) -> AttoTrace:
    """Sample tau_A on u in [0, u_max] with the classical position map."""
    if n < 16:
        raise DomainError("need at least 16 trace points")
    u = np.linspace(0.0, float(u_max), n)
    tau = np.array([attoclock_time(params, ui) for ui in u])
    return AttoTrace(u_values=u, tau_a=tau, xi_values=1.0 + u * u)
