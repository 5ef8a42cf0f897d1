"""Circular-field attoclock photoelectron spectrum via complex saddle points.

Short-range (PPT-style) ionization amplitudes for a circularly polarized
vector potential with a cos^4 envelope: complex saddle points of the
Volkov action, imaginary action along the vertical contour, and the polar
photoelectron spectrum whose offset angle realizes the attoclock reading.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergenceError, NumericalWarning


@dataclass(frozen=True)
class PulseParams:
    """Circular pulse: A(t) = -A0(t) [cos(wt) e_x + sin(wt) e_y]."""

    a0: float
    omega: float
    ip: float
    gamma: float
    envelope: str  # "constant" | "cos4"

    def __post_init__(self):
        if min(self.a0, self.omega, self.ip) <= 0.0:
            raise DomainError("pulse parameters must be positive")
        if self.envelope not in ("constant", "cos4"):
            raise DomainError(f"unknown envelope {self.envelope!r}")
        expected = math.sqrt(2.0 * self.ip) / self.a0
        if abs(self.gamma - expected) > 1e-12 * expected:
            raise DomainError("gamma inconsistent with sqrt(2 ip)/a0")


def pulse_from_gamma(ip: float, omega: float, gamma: float,
                     envelope: str = "cos4") -> PulseParams:
    """Build pulse parameters with the amplitude fixed by the adiabaticity gamma."""
    a0 = math.sqrt(2.0 * ip) / gamma
    return PulseParams(a0=a0, omega=omega, ip=ip, gamma=gamma, envelope=envelope)


@dataclass(frozen=True)
class SaddlePoint:
    """Complex ionization time t_s = t_i + i tau."""

    t_s: complex
    residual: float
    branch: int


def _envelope_amp(pulse: PulseParams, t, blend: float = 1.0):
    """A0(t); `blend` homotopy-interpolates constant -> cos4."""
    if pulse.envelope == "constant":
        return pulse.a0 * np.ones_like(np.asarray(t, dtype=complex))
    t = np.asarray(t, dtype=complex)
    env = np.cos(pulse.omega * t / 4.0) ** 4
    return pulse.a0 * ((1.0 - blend) + blend * env)


def _envelope_amp_prime(pulse: PulseParams, t, blend: float = 1.0):
    if pulse.envelope == "constant":
        return np.zeros_like(np.asarray(t, dtype=complex))
    t = np.asarray(t, dtype=complex)
    w4 = pulse.omega / 4.0
    return -pulse.a0 * blend * 4.0 * w4 * np.cos(w4 * t) ** 3 * np.sin(w4 * t)


def saddle_function(pulse: PulseParams, p, theta, t, blend: float = 1.0):
    """f(t) = p^2 + A0(t)^2 - 2 p A0(t) cos(w t - theta) + 2 ip."""
    amp = _envelope_amp(pulse, t, blend)
    t = np.asarray(t, dtype=complex)
    return (p * p + amp * amp
            - 2.0 * p * amp * np.cos(pulse.omega * t - theta)
            + 2.0 * pulse.ip)


def _saddle_function_prime(pulse: PulseParams, p, theta, t, blend: float = 1.0):
    amp = _envelope_amp(pulse, t, blend)
    amp_p = _envelope_amp_prime(pulse, t, blend)
    t = np.asarray(t, dtype=complex)
    phase = pulse.omega * t - theta
    return (2.0 * amp * amp_p
            - 2.0 * p * (amp_p * np.cos(phase) - amp * pulse.omega * np.sin(phase)))


def _residual_scale(pulse: PulseParams, p: float) -> float:
    return p * p + 2.0 * pulse.ip


def saddle_analytic(pulse: PulseParams, p: float, theta: float,
                    branch: int = 0) -> SaddlePoint:
    """Closed-form constant-envelope saddle.

    w t_i = theta + 2 pi N,  w tau = arcosh((A0/2p)[(p/A0)^2 + gamma^2 + 1]).
    """
    if pulse.envelope != "constant":
        raise DomainError("analytic saddle requires the constant envelope")
    if p <= 0.0:
        raise DomainError("require p > 0")
    arg = (pulse.a0 / (2.0 * p)) * ((p / pulse.a0) ** 2 + pulse.gamma ** 2 + 1.0)
    if arg < 1.0:
        raise DomainError(f"arcosh argument {arg} < 1")
    t_i = (theta + 2.0 * math.pi * branch) / pulse.omega
    tau = math.acosh(arg) / pulse.omega
    t_s = complex(t_i, tau)
    res = abs(complex(saddle_function(pulse, p, theta, t_s)))
    return SaddlePoint(t_s=t_s, residual=res, branch=branch)


def _newton_roots(pulse: PulseParams, p, theta, seeds, blend_steps=(1.0,),
                  max_iter: int = 60):
    """Vectorized complex Newton with envelope homotopy; NaN on failure."""
    roots = np.asarray(seeds, dtype=complex).copy()
    # divergent iterates overflow harmlessly; the residual filter drops them
    with np.errstate(all="ignore"):
        for blend in blend_steps:
            for _ in range(max_iter):
                f = saddle_function(pulse, p, theta, roots, blend)
                fp = _saddle_function_prime(pulse, p, theta, roots, blend)
                step = f / fp
                step = np.where(np.isfinite(step), step, 0.1)
                roots = roots - step
                if np.all(np.abs(step) < 1e-14 * (1.0 + np.abs(roots))):
                    break
        res = np.abs(saddle_function(pulse, p, theta, roots))
    scale = np.asarray(_residual_scale(pulse, np.asarray(p, dtype=float)))
    bad = ~(res < 1e-10 * scale)
    roots = np.where(bad, np.nan + 1j * np.nan, roots)
    return roots


def _blend_steps(pulse: PulseParams):
    return (1.0,) if pulse.envelope == "constant" else (0.25, 0.5, 0.75, 1.0)


def saddle_numeric(pulse: PulseParams, p: float, theta: float,
                   seeds=None) -> SaddlePoint:
    """Newton saddle with the paper's selection rule.

    Seeds default to the constant-envelope analytic saddles on the branches
    whose real time lies within one optical cycle; the envelope is then
    switched on in homotopy steps.  Among converged physical roots
    (Im > 0) the one with smallest Im, then smallest |Re|, is selected.
    """
    const_pulse = PulseParams(a0=pulse.a0, omega=pulse.omega, ip=pulse.ip,
                              gamma=pulse.gamma, envelope="constant")
    if seeds is None:
        seeds = []
        for branch in (-1, 0, 1):
            sp = saddle_analytic(const_pulse, p, theta, branch)
            if abs(sp.t_s.real) <= 2.0 * math.pi / pulse.omega:
                seeds.append(sp.t_s)
    seeds = np.asarray(seeds, dtype=complex)
    roots = _newton_roots(pulse, p, theta, seeds, _blend_steps(pulse))
    ok = np.isfinite(roots.real)
    if not np.any(ok):
        raise NonConvergenceError("no saddle converged from any seed")
    roots = roots[ok]
    physical = roots[roots.imag > 0.0]
    if physical.size == 0:
        raise NonConvergenceError("all converged saddles are unphysical (Im <= 0)")
    order = np.lexsort((np.abs(physical.real), physical.imag))
    t_s = complex(physical[order[0]])
    res = abs(complex(saddle_function(pulse, p, theta, t_s)))
    return SaddlePoint(t_s=t_s, residual=res, branch=0)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(40)


def action_im(pulse: PulseParams, p, theta, t_s) -> float:
    """Im S along the vertical contour from t_i + i tau down to t_i.

    Im S = Re{ (1/2) int_tau^0 [f(t_i + i tau') - 2 ip] dtau' } - ip tau
    with f the saddle function (the integrand is its bracketed part).
    """
    t_s = complex(t_s)
    if t_s.imag <= 0.0:
        raise DomainError("action contour requires Im t_s > 0")
    t_i, tau = t_s.real, t_s.imag
    # Gauss-Legendre on tau' in [0, tau], oriented tau -> 0 (sign flip).
    tp = 0.5 * tau * (_GL_NODES + 1.0)
    vals = saddle_function(pulse, p, theta, t_i + 1j * tp) - 2.0 * pulse.ip
    integral = -0.5 * tau * np.sum(_GL_WEIGHTS * vals)
    return float(0.5 * integral.real) - pulse.ip * tau


@dataclass(frozen=True)
class SpectrumGrid:
    """Polar photoelectron spectrum with per-node saddle bookkeeping."""

    p_values: np.ndarray
    theta_values: np.ndarray
    weights: np.ndarray        # (n_p, n_theta), max-normalized to 1
    saddle_times: np.ndarray   # complex (n_p, n_theta); NaN where no saddle
    saddle_residuals: np.ndarray
    flags: np.ndarray          # True where no physical saddle was found


def spectrum(pulse: PulseParams, p_grid, theta_grid) -> SpectrumGrid:
    """Single-saddle spectrum weights = exp(2 Im S), normalized to max 1."""
    p_grid = np.asarray(p_grid, dtype=float)
    theta_grid = np.asarray(theta_grid, dtype=float)
    if p_grid.size == 0 or theta_grid.size == 0:
        raise DomainError("grids must be non-empty")
    pp, tt = np.meshgrid(p_grid, theta_grid, indexing="ij")

    # Vectorized over the whole grid, one branch at a time.
    branch_roots = []
    cycle = 2.0 * math.pi / pulse.omega
    arg = (pulse.a0 / (2.0 * pp)) * ((pp / pulse.a0) ** 2
                                     + pulse.gamma ** 2 + 1.0)
    tau0 = np.arccosh(np.maximum(arg, 1.0)) / pulse.omega
    for branch in (-1, 0, 1):
        t_i0 = (tt + 2.0 * math.pi * branch) / pulse.omega
        seeds = np.where(np.abs(t_i0) <= cycle, t_i0 + 1j * tau0,
                         np.nan + 1j * np.nan)
        branch_roots.append(
            _newton_roots(pulse, pp, tt, seeds, _blend_steps(pulse)))
    roots = np.stack(branch_roots)  # (3, n_p, n_theta)
    roots = np.where(roots.imag > 0.0, roots, np.nan + 1j * np.nan)
    # selection: smallest Im, then smallest |Re| (lexicographic)
    key = roots.imag + 1e-9 * pulse.omega * np.abs(roots.real)
    key = np.where(np.isfinite(key), key, np.inf)
    pick = np.argmin(key, axis=0)
    sel = np.take_along_axis(roots, pick[None, ...], axis=0)[0]
    flags = ~np.isfinite(sel.real)

    # action on all valid nodes at once
    t_i, tau = sel.real, sel.imag
    tp = 0.5 * tau[..., None] * (_GL_NODES + 1.0)
    with np.errstate(invalid="ignore"):
        vals = saddle_function(pulse, pp[..., None], tt[..., None],
                               t_i[..., None] + 1j * tp) - 2.0 * pulse.ip
        integral = -0.5 * tau * np.sum(_GL_WEIGHTS * vals, axis=-1)
        im_s = 0.5 * integral.real - pulse.ip * tau
    weights = np.where(flags, 0.0, np.exp(2.0 * np.where(flags, 0.0, im_s)))
    top = weights.max()
    if top > 0.0:
        weights = weights / top
    resid = np.abs(saddle_function(pulse, pp, tt, sel))
    resid = np.where(flags, np.inf, resid)
    return SpectrumGrid(p_values=p_grid, theta_values=theta_grid,
                        weights=weights, saddle_times=sel,
                        saddle_residuals=resid, flags=flags)


def offset_angle(grid: SpectrumGrid) -> float:
    """theta of the spectrum maximum, refined by a local quadratic fit."""
    th = grid.theta_values
    if th.min() > -math.pi + 1e-9 or th.max() < math.pi - 1e-9:
        raise DomainError("offset extraction needs theta coverage of [-pi, pi]")
    w = grid.weights
    med = np.median(w)
    if med > 0.0 and w.max() / med < 10.0:
        raise DomainError("spectrum too flat for a meaningful offset angle")
    i, j = np.unravel_index(np.argmax(w), w.shape)
    row = w[i]
    if j == 0 or j == th.size - 1:
        return float(th[j])
    # quadratic vertex through the three samples around the maximum
    y0, y1, y2 = row[j - 1], row[j], row[j + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return float(th[j])
    shift = 0.5 * (y0 - y2) / denom
    step = th[j + 1] - th[j]
    if abs(shift) > 1.0:
        warnings.warn("quadratic refinement outside the local cell",
                      NumericalWarning, stacklevel=2)
    return float(th[j] + shift * step)
