"""Position-resolved Larmor time as a weak value.

tau_L(x) = sigma * integral_0^x dx' theta_B(x') psi_f*(x') psi_i(x')

with the barrier projector theta_B supported on [0, x0], the final state
psi_f = Ai(kappa^{2/3}(1 - xi)), and sigma the asymptotic normalization
that makes the large-xi Larmor velocity coincide with the classical one.
Real part: in-plane precession time; imaginary part: spin alignment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import sfa, specfun
from .errors import DomainError
from .model import ModelParams


@dataclass(frozen=True)
class TimeTrace:
    """Cumulative complex Larmor time sampled along position."""

    positions: np.ndarray  # x in a.u., strictly increasing, starts at 0
    times: np.ndarray      # complex; Re = precession time, Im = alignment
    params: ModelParams

    def __post_init__(self):
        x = np.asarray(self.positions, dtype=float)
        t = np.asarray(self.times, dtype=complex)
        if x.ndim != 1 or t.shape != x.shape:
            raise DomainError("positions and times must be matching 1D arrays")
        if not np.all(np.diff(x) > 0.0):
            raise DomainError("positions must be strictly increasing")
        if x[0] != 0.0 or t[0] != 0.0:
            raise DomainError("trace must start at x = 0 with time 0")
        object.__setattr__(self, "positions", x)
        object.__setattr__(self, "times", t)


def final_state(params: ModelParams, xi):
    """Post-selected transmitted state Ai(kappa^{2/3}(1 - xi)).

    Decays for xi -> -infinity and oscillates beyond the tunnel exit.
    """
    arg = params.kappa ** (2.0 / 3.0) * (1.0 - np.asarray(xi, dtype=float))
    return specfun.ai_real(arg)


def _asymptotic_prefactor(params: ModelParams, source: str) -> complex:
    """C such that psi_i(xi) -> C * [Ai - i Gi](kappa^{2/3}(1 - xi)).

    For the saddle-form initial state C is closed-form; for the numeric
    transform it carries the exact (finite-kappa) ionization amplitude.
    """
    k = params.kappa
    if source == "saddle":
        return 1j * math.sqrt(2.0) * math.pi * params.x0 * k ** (-5.0 / 6.0) \
            * math.exp(-2.0 * k / 3.0)
    if source == "numeric":
        transform = sfa._converged_transform(params, 6.0)
        return (4.0 * params.x0 / k) * transform.i_infinity \
            * math.pi * k ** (-1.0 / 3.0) / math.sqrt(2.0 * math.pi)
    raise DomainError(f"unknown initial-state source {source!r}")


def scaling_factor(params: ModelParams, source: str = "numeric") -> complex:
    """sigma = 2^{2/3} pi / (F^{1/3} C) for the chosen initial-state source.

    Equivalently the oscillation-averaged limit of 1/(v(xi) psi_f psi_i)
    as xi -> infinity with v(xi) = sqrt(2 ip xi).
    """
    if params.kappa < 1.0:
        raise DomainError(f"scaling factor requires kappa >= 1, got {params.kappa}")
    c = _asymptotic_prefactor(params, source)
    return 2.0 ** (2.0 / 3.0) * math.pi / (params.field ** (1.0 / 3.0) * c)


def scaling_factor_limit(params: ModelParams, source: str = "saddle",
                         xi_eval: float = 40.0) -> complex:
    """Direct numeric evaluation of the defining limit of sigma.

    Averages v(xi) psi_f(xi) psi_i(xi) over one local Airy oscillation
    period centred at xi_eval (the numeric analogue of dropping the
    oscillatory terms) and inverts the average.
    """
    k = params.kappa
    if source == "saddle":
        def psi_i(xi):
            return sfa.psi_position_saddle(params, xi)
    else:
        transform = sfa._converged_transform(params, max(xi_eval + 2.0, 6.0))

        def psi_i(xi):
            return transform.psi(xi)

    # Local oscillation period of Ai(kappa^{2/3}(1-xi)): phase
    # (2/3) kappa (xi-1)^{3/2} advances by 2 pi over delta below.
    delta = 2.0 * math.pi / (k * math.sqrt(xi_eval - 1.0))
    xi = np.linspace(xi_eval - 0.5 * delta, xi_eval + 0.5 * delta, 257)
    v = params.kappa_tilde * np.sqrt(xi)
    product = v * final_state(params, xi) * psi_i(xi)
    mean = np.trapezoid(product, xi) / delta
    return 1.0 / complex(mean)


def larmor_time_trace(params: ModelParams, x_max: float, n: int = 64,
                      source: str = "numeric",
                      integration_points: int = 513) -> TimeTrace:
    """Cumulative weak-value Larmor time on positions linspace(0, x_max, n).

    The projector theta_B truncates the integrand at the tunnel exit, so
    the trace is exactly flat beyond x0.  The cumulative integral over the
    smooth barrier region is taken on a dense Simpson grid and interpolated
    onto the requested positions, which keeps it exactly additive over
    subintervals.
    """
    if x_max <= params.x0:
        raise DomainError("x_max must exceed the tunnel exit x0")
    if n < 16:
        raise DomainError("need at least 16 trace points")
    if integration_points % 2 == 0:
        integration_points += 1

    sigma = scaling_factor(params, source)
    xi_dense = np.linspace(0.0, 1.0, integration_points)
    if source == "saddle":
        psi_i = sfa.psi_position_saddle(params, xi_dense)
    else:
        psi_i = sfa._converged_transform(params, 6.0).psi(xi_dense)
    integrand = final_state(params, xi_dense) * psi_i

    # Cumulative Simpson on the uniform dense grid (composite over pairs,
    # trapezoid closing for odd offsets keeps interpolation smooth).
    h = xi_dense[1] - xi_dense[0]
    cum = np.zeros(integration_points, dtype=complex)
    pair = (h / 3.0) * (integrand[:-2:2] + 4.0 * integrand[1:-1:2]
                        + integrand[2::2])
    cum[2::2] = np.cumsum(pair)
    cum[1::2] = cum[:-1:2] + 0.5 * h * (integrand[:-1:2] + integrand[1::2])

    positions = np.linspace(0.0, x_max, n)
    xi_pos = np.minimum(positions / params.x0, 1.0)
    times = sigma * params.x0 * (
        np.interp(xi_pos, xi_dense, cum.real)
        + 1j * np.interp(xi_pos, xi_dense, cum.imag))
    times[0] = 0.0
    return TimeTrace(positions=positions, times=times, params=params)


def plateau_time(params: ModelParams, source: str = "numeric") -> complex:
    """Converged Larmor time (the trace value anywhere beyond the exit)."""
    trace = larmor_time_trace(params, x_max=2.0 * params.x0, n=16, source=source)
    return complex(trace.times[-1])
