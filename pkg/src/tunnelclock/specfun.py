"""Complex-argument Airy functions and the real Scorer function Gi.

Production evaluation delegates to the AMOS implementation behind
scipy.special.airy, which is uniformly accurate in all Stokes sectors.
Two independent in-house representations are kept for validation: the
Maclaurin series (accurate inside SERIES_RADIUS away from the dominant
cancellation sector) and the Poincare asymptotic expansions with DLMF
connection formulas (accurate outside).  Near the positive real axis at
moderate radius neither plain double-precision representation can reach
full accuracy by itself -- the series loses e^{2 Re zeta} in cancellation
while the asymptotic error is ~e^{-2 zeta} -- which is exactly the regime
the mature library handles by different means.

Gi is needed for real argument only and is computed from absolutely
convergent integral representations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.special
from scipy.integrate import quad

from .errors import DomainError

# Crossover radius between the validation Maclaurin series and asymptotic
# representations; on this circle (outside the dominant cancellation sector,
# |arg z| >= pi/3) the two agree to <= 1e-9 relative.
SERIES_RADIUS = 8.0

# Validity envelopes.
AIRY_MAX_ABS = 1.0e4
GI_MAX_ABS = 1.0e3

_AI0 = 0.3550280538878172392600631860041831763980  # Ai(0) = 3^(-2/3)/Gamma(2/3)
_AIP0 = -0.2588194037928067984051835601892039634793  # Ai'(0) = -3^(-1/3)/Gamma(1/3)
_SQRT3 = math.sqrt(3.0)

# Direct-asymptotic sector half-opening; beyond it, connection formulas rotate
# the argument back toward the anti-Stokes-safe sector.
_DIRECT_ARG = 0.75 * math.pi

_OMEGA = cmath.exp(2j * math.pi / 3.0)


@dataclass(frozen=True)
class AiryBundle:
    """Ai, Bi and derivatives at one complex argument."""

    ai: complex
    ai_prime: complex
    bi: complex
    bi_prime: complex

    def wronskian(self) -> complex:
        return self.ai * self.bi_prime - self.ai_prime * self.bi


def _series_fg(z: complex) -> tuple[complex, complex, complex, complex]:
    """Maclaurin sums f, g, f', g' of the standard Airy building blocks."""
    z3 = z * z * z
    # f = sum a_k, g = sum b_k, f' = sum c_k, g' = sum d_k
    a = 1.0 + 0j
    b = z
    c = 0.0 + 0j  # first nonzero f' term is k=1
    d = 1.0 + 0j
    f, g, fp, gp = a, b, c, d
    ck = z * z / 2.0  # c_1
    fp += ck
    for k in range(1, 220):
        a = a * z3 / ((3 * k - 1) * (3 * k))
        b = b * z3 / ((3 * k) * (3 * k + 1))
        d = d * z3 / ((3 * k - 2) * (3 * k))
        f += a
        g += b
        gp += d
        if k >= 1:
            ck_next = ck * z3 * (k + 1) / (k * (3 * k + 2) * (3 * k + 3))
            fp += ck_next
            ck = ck_next
        tol = 1e-18 * (abs(f) + abs(g) + abs(fp) + abs(gp) + 1.0)
        if abs(a) < tol and abs(b) < tol and abs(ck) < tol and abs(d) < tol:
            break
    return f, g, fp, gp


def _airy_series(z: complex) -> AiryBundle:
    f, g, fp, gp = _series_fg(z)
    c1, c2 = _AI0, -_AIP0
    ai = c1 * f - c2 * g
    aip = c1 * fp - c2 * gp
    bi = _SQRT3 * (c1 * f + c2 * g)
    bip = _SQRT3 * (c1 * fp + c2 * gp)
    return AiryBundle(ai=ai, ai_prime=aip, bi=bi, bi_prime=bip)


def _ai_asymptotic_direct(z: complex) -> tuple[complex, complex]:
    """(Ai, Ai') by the Poincare expansion, |arg z| bounded away from pi."""
    zeta = (2.0 / 3.0) * z ** 1.5
    # Sums with optimal truncation: u_k and v_k coefficient recurrences.
    s_ai = 1.0 + 0j
    s_aip = 1.0 + 0j
    uk = 1.0
    term_prev = abs(uk)
    inv = -1.0 / zeta
    p = 1.0 + 0j
    for k in range(1, 60):
        uk = uk * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        vk = uk * (6 * k + 1) / (1.0 - 6 * k)
        p = p * inv
        t_ai = uk * p
        if abs(t_ai) > term_prev:  # divergence onset: stop at smallest term
            break
        s_ai += t_ai
        s_aip += vk * p
        term_prev = abs(t_ai)
        if abs(t_ai) < 1e-18 * abs(s_ai):
            break
    pref = cmath.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    z14 = z ** 0.25
    ai = pref / z14 * s_ai
    aip = -pref * z14 * s_aip
    return ai, aip


def _ai_asymptotic(z: complex) -> tuple[complex, complex]:
    """(Ai, Ai') for |z| > SERIES_RADIUS, any sector."""
    if abs(cmath.phase(z)) <= _DIRECT_ARG:
        return _ai_asymptotic_direct(z)
    # Rotate toward the principal sector: Ai(z) = -w*Ai(wz) - w^2*Ai(w^2 z)
    w = _OMEGA
    a1, a1p = _ai_asymptotic_direct(z * w)
    a2, a2p = _ai_asymptotic_direct(z / w)
    ai = -w * a1 - w.conjugate() * a2
    aip = -(w * w) * a1p - (w * w).conjugate() * a2p
    return ai, aip


def _airy_asymptotic(z: complex) -> AiryBundle:
    ai, aip = _ai_asymptotic(z)
    # Bi(z) = e^{i pi/6} Ai(z w) + e^{-i pi/6} Ai(z/w), w = e^{2 pi i/3}
    ph = cmath.exp(1j * math.pi / 6.0)
    b1, b1p = _ai_asymptotic(z * _OMEGA)
    b2, b2p = _ai_asymptotic(z / _OMEGA)
    bi = ph * b1 + b2 / ph
    bip = ph * _OMEGA * b1p + (b2p / ph) / _OMEGA
    return AiryBundle(ai=ai, ai_prime=aip, bi=bi, bi_prime=bip)


def _airy_two_regime(z: complex) -> AiryBundle:
    """Series/asymptotic evaluation used for cross-validation of airy()."""
    return _airy_series(z) if abs(z) <= SERIES_RADIUS else _airy_asymptotic(z)


def airy(z: complex) -> AiryBundle:
    """Ai, Bi, Ai', Bi' at complex z. Valid for |z| <= 1e4."""
    z = complex(z)
    if abs(z) > AIRY_MAX_ABS:
        raise DomainError(f"|z| = {abs(z):.3g} outside airy envelope {AIRY_MAX_ABS:g}")
    ai, aip, bi, bip = scipy.special.airy(z)
    bundle = AiryBundle(ai=complex(ai), ai_prime=complex(aip),
                        bi=complex(bi), bi_prime=complex(bip))
    vals = (bundle.ai, bundle.ai_prime, bundle.bi, bundle.bi_prime)
    if not all(cmath.isfinite(v) for v in vals):
        raise OverflowError(f"Airy overflow at z = {z}")
    return bundle


def _gi_nonnegative(x: float) -> float:
    """Gi(x) for x >= 0 by a contour rotated to the descent direction."""
    rot = cmath.exp(1j * math.pi / 6.0)

    def f_re(s: float) -> float:
        return (rot * cmath.exp(-(s ** 3) / 3.0 + 1j * x * rot * s)).real

    def f_im(s: float) -> float:
        return (rot * cmath.exp(-(s ** 3) / 3.0 + 1j * x * rot * s)).imag

    # Integrand decays like exp(-x s/2) exp(-s^3/3); cut where it underflows.
    upper = (3.0 * 745.0) ** (1.0 / 3.0)
    re, _ = quad(f_re, 0.0, upper, limit=200, epsabs=1e-14, epsrel=1e-12)
    im, _ = quad(f_im, 0.0, upper, limit=200, epsabs=1e-14, epsrel=1e-12)
    return complex(re, im).imag / math.pi


def _hi_negative(x: float) -> float:
    """Scorer Hi(x) for x <= 0 (monotone decaying integrand)."""

    def f(t: float) -> float:
        return math.exp(-(t ** 3) / 3.0 + x * t)

    upper = (3.0 * 745.0) ** (1.0 / 3.0)
    val, _ = quad(f, 0.0, upper, limit=200, epsabs=1e-14, epsrel=1e-12)
    return val / math.pi


def scorer_gi(x: float) -> float:
    """Scorer function Gi(x), the particular solution of y'' - x y = -1/pi."""
    x = float(x)
    if abs(x) > GI_MAX_ABS:
        raise DomainError(f"|x| = {abs(x):.3g} outside scorer_gi envelope {GI_MAX_ABS:g}")
    if x >= 0.0:
        return _gi_nonnegative(x)
    # Gi = Bi - Hi; for x < 0 both terms are O(1) (no cancellation blow-up).
    bi = airy(x).bi.real
    return bi - _hi_negative(x)


def ai_real(x: np.ndarray | float) -> np.ndarray | float:
    """Vectorized Ai over real arguments (convenience wrapper)."""
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > AIRY_MAX_ABS):
        raise DomainError(f"argument outside airy envelope {AIRY_MAX_ABS:g}")
    ai = scipy.special.airy(arr)[0]
    return float(ai) if np.isscalar(x) else ai
