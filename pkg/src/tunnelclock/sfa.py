"""Strong-field-approximation solution of the 1D static-field model.

Provides the exact momentum-space wavefunction as a cubic-phase integral,
its numeric Fourier transform to position space, and the closed saddle-point
forms used as analytic cross-checks.  The global phase exp(i*ip*t) of the
stationary solution is dropped throughout; only relative phases enter the
time observables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import oscquad, specfun
from .errors import DomainError, NonConvergenceError
from .model import ModelParams

# Poles of the bound-state overlap prefactor u/(u^2+1)^2.
OVERLAP_POLES = (1j, -1j)


@dataclass(frozen=True)
class ComplexGrid1D:
    """Sampled complex-valued function of one real coordinate."""

    coordinate_kind: str  # "momentum_u" | "position_xi" | "time"
    coordinates: np.ndarray
    values: np.ndarray
    params: ModelParams

    def __post_init__(self):
        c = np.asarray(self.coordinates, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if self.coordinate_kind not in ("momentum_u", "position_xi", "time"):
            raise DomainError(f"unknown coordinate kind {self.coordinate_kind!r}")
        if c.ndim != 1 or v.shape != c.shape:
            raise DomainError("coordinates and values must be matching 1D arrays")
        if not np.all(np.diff(c) > 0.0):
            raise DomainError("coordinates must be strictly increasing")
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(v.real))
                and np.all(np.isfinite(v.imag))):
            raise DomainError("grid contains non-finite entries")
        object.__setattr__(self, "coordinates", c)
        object.__setattr__(self, "values", v)


def _overlap_g(u):
    """Dimensionless odd prefactor of the ionization integral."""
    u = np.asarray(u, dtype=complex)
    return u / (u * u + 1.0) ** 2


def bound_overlap(params: ModelParams, u_prime):
    """Length-gauge coupling of the bound state to the momentum u'.

    Closed form F*x0^2/(i*kappa^2) * 4u'/(u'^2+1)^2; odd in u'.
    """
    u_prime = np.asarray(u_prime, dtype=complex)
    pref = params.field * params.x0 ** 2 / (1j * params.kappa ** 2)
    val = pref * 4.0 * _overlap_g(u_prime)
    return complex(val) if val.ndim == 0 else val


def ionization_integral(params: ModelParams, u: float) -> complex:
    """I(u) = integral_{-u}^{infty} dt exp(-i kappa (t^3/3+t)) t/(t^2+1)^2."""
    return oscquad.cubic_phase_integral(
        params.kappa, 1.0, lower=-float(u), g=_overlap_g, poles=OVERLAP_POLES)


def psi_momentum(params: ModelParams, u: float) -> complex:
    """Stationary momentum-space wavefunction psi(u) (global phase dropped)."""
    phase = np.exp(-1j * params.kappa * (u ** 3 / 3.0 + u))
    return (4.0 * params.x0 / params.kappa) * complex(phase) * ionization_integral(params, u)


def amplitude_A(params: ModelParams) -> float:
    """Saddle-point value of the even-part ionization integral."""
    if params.kappa < 1.0:
        raise DomainError(f"amplitude_A requires kappa >= 1, got {params.kappa}")
    return -0.5 * math.sqrt(params.kappa * math.pi) * math.exp(-2.0 * params.kappa / 3.0)


def psi_momentum_saddle(params: ModelParams, u: float) -> complex:
    """Closed saddle form: 2 i x0 sqrt(pi/kappa) e^{-2k/3} e^{-i k phi(u)} theta(u)."""
    if u < 0.0:
        return 0j
    pref = 2j * params.x0 * math.sqrt(math.pi / params.kappa) \
        * math.exp(-2.0 * params.kappa / 3.0)
    return pref * complex(np.exp(-1j * params.kappa * (u ** 3 / 3.0 + u)))


def psi_position_saddle(params: ModelParams, xi):
    """Fourier transform of the saddle form: Airy/Scorer closed expression.

    psi_S(xi) = i sqrt(2) pi x0 kappa^{-5/6} e^{-2k/3}
                * [Ai - i Gi](kappa^{2/3} (1 - xi))
    """
    k = params.kappa
    pref = 1j * math.sqrt(2.0) * math.pi * params.x0 * k ** (-5.0 / 6.0) \
        * math.exp(-2.0 * k / 3.0)
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    out = np.empty(xi_arr.shape, dtype=complex)
    for i, x in enumerate(xi_arr):
        arg = k ** (2.0 / 3.0) * (1.0 - x)
        out[i] = pref * (specfun.airy(arg).ai.real - 1j * specfun.scorer_gi(arg))
    return complex(out[0]) if np.isscalar(xi) else out


class PositionTransform:
    """Numeric Fourier transform u -> xi of the exact SFA wavefunction.

    psi(xi) = (1/sqrt(2 pi)) * integral du psi(u) e^{+i kappa u xi}

    The factored integrand e^{-i kappa (u^3/3 + (1-xi) u)} I(u) is integrated
    over a finite window [-U, U] on frequency-matched Gauss-Legendre panels;
    I(u) is accumulated incrementally along the node sequence (one rotated
    tail evaluation at the left edge, short real segments between nodes).
    The neglected right tail u > U is restored analytically through the
    constant limit I(inf) times a rotated-contour cubic-phase integral; the
    left tail is a boundary-dominated O(1/(kappa^2 U^7)) remainder.
    """

    def __init__(self, params: ModelParams, u_max: float = 12.0,
                 xi_abs_max: float = 6.0, phase_budget: float = 20.0):
        self.params = params
        self.u_max = float(u_max)
        self.xi_abs_max = float(xi_abs_max)
        k = params.kappa
        w_max = 1.0 + abs(1.0 - xi_abs_max)

        # Frequency-matched panels: 16-node Gauss-Legendre per panel, panel
        # width limited so the local phase advance stays within phase_budget
        # radians (well inside the resolving power of 16 nodes).
        edges = [-self.u_max]
        while edges[-1] < self.u_max:
            freq = k * (edges[-1] ** 2 + w_max)
            edges.append(min(self.u_max, edges[-1] + phase_budget / max(freq, 1.0)))
        edges = np.asarray(edges)
        gl_x, gl_w = np.polynomial.legendre.leggauss(16)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        self.nodes = (mid[:, None] + half[:, None] * gl_x[None, :]).ravel()
        self.gl_weights = (half[:, None] * gl_w[None, :]).ravel()

        # I at the ascending nodes: tail start, then panel-rule increments
        # over the short gaps [-u_{j+1}, -u_j].
        tail_left = oscquad.cubic_phase_integral(
            k, 1.0, lower=self.u_max, g=_overlap_g, poles=OVERLAP_POLES)
        i_first = oscquad.cubic_phase_integral(
            k, 1.0, lower=-self.nodes[0], g=_overlap_g, poles=OVERLAP_POLES)
        seg_a = -self.nodes[1:]
        seg_b = -self.nodes[:-1]
        sh = 0.5 * (seg_b - seg_a)
        sm = 0.5 * (seg_a + seg_b)
        increments = np.empty(sh.size, dtype=complex)
        chunk = 65536
        for lo in range(0, sh.size, chunk):
            hi = min(lo + chunk, sh.size)
            t = sm[lo:hi, None] + sh[lo:hi, None] * gl_x[None, :]
            denom = t * t + 1.0
            amp = t / (denom * denom)
            ph = -k * (t * t * t / 3.0 + t)
            fvals = amp * np.cos(ph) + 1j * (amp * np.sin(ph))
            increments[lo:hi] = sh[lo:hi] * (fvals @ gl_w)
        self.i_nodes = i_first + np.concatenate([[0.0], np.cumsum(increments)])
        # Full-line limit I(inf); the left half-line piece is -conj of the
        # right tail because the prefactor is odd and real on the real axis.
        self.i_infinity = self.i_nodes[-1] + tail_left - np.conj(tail_left)

        pref = (4.0 * params.x0 / k) / math.sqrt(2.0 * math.pi)
        self._base = pref * self.gl_weights * self.i_nodes \
            * np.exp(-1j * k * (self.nodes ** 3 / 3.0 + self.nodes))
        self._tail_pref = pref * self.i_infinity

    def psi(self, xi):
        """Evaluate psi(xi) for scalar or array xi inside the window."""
        xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
        if np.any(np.abs(xi_arr) > self.xi_abs_max):
            raise DomainError(
                f"xi outside transform window |xi| <= {self.xi_abs_max}")
        k = self.params.kappa
        out = np.empty(xi_arr.shape, dtype=complex)
        steps = np.diff(xi_arr)
        uniform = xi_arr.size >= 4 and np.allclose(steps, steps[0],
                                                   rtol=0.0, atol=1e-13)
        if uniform:
            # Uniform grids: advance the plane-wave kernel by one complex
            # multiply per point instead of a fresh exponential.
            kernel = np.exp(1j * k * self.nodes * xi_arr[0])
            advance = np.exp(1j * k * self.nodes * steps[0])
            for i in range(xi_arr.size):
                out[i] = np.dot(self._base, kernel)
                if i + 1 < xi_arr.size:
                    kernel *= advance
        else:
            for i, x in enumerate(xi_arr):
                out[i] = np.dot(self._base, np.exp(1j * k * self.nodes * x))
        for i, x in enumerate(xi_arr):
            out[i] += self._tail_pref * oscquad.cubic_phase_integral(
                k, 1.0 - x, lower=self.u_max)
        return complex(out[0]) if np.isscalar(xi) else out


@lru_cache(maxsize=8)
def _converged_transform(params: ModelParams, xi_abs_max: float,
                         rel_tol: float = 1e-7) -> PositionTransform:
    """Window-doubling until psi on a probe grid is stable to rel_tol."""
    probe = np.linspace(-min(xi_abs_max, 4.0), min(xi_abs_max, 4.0), 9)
    u_max = 6.0
    current = PositionTransform(params, u_max=u_max, xi_abs_max=xi_abs_max)
    ref = current.psi(probe)
    scale = np.max(np.abs(ref))
    for _ in range(4):
        u_max *= 2.0
        wider = PositionTransform(params, u_max=u_max, xi_abs_max=xi_abs_max)
        new = wider.psi(probe)
        change = np.max(np.abs(new - ref)) / scale
        if change < rel_tol:
            return wider
        current, ref = wider, new
    raise NonConvergenceError(
        f"position transform window failed to converge (last change {change:.3g})")


def psi_position(params: ModelParams, xi, xi_abs_max: float = 6.0):
    """psi(xi) from the converged numeric transform (cached per params)."""
    return _converged_transform(params, float(xi_abs_max)).psi(xi)
