"""1D static-field ionization model: derived scales and classical kinematics.

Atomic units throughout. The model is an electron bound by a delta potential
of strength sqrt(2*ip), ionized by a static field `field`. All other modules
take their unit conventions from :class:`ModelParams`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Default ionization potential of helium (a.u.).
HELIUM_IP = 0.9036


@dataclass(frozen=True)
class ModelParams:
    """Derived scales of the static-field model.

    kappa_tilde = sqrt(2*ip)          characteristic bound momentum
    kappa       = ip*kappa_tilde/field  barrier (adiabaticity) parameter
    x0          = ip/field            tunnel exit (classical turning point)
    tau_tilde   = kappa_tilde/field   natural time unit
    """

    ip: float
    field: float
    kappa_tilde: float
    kappa: float
    x0: float
    tau_tilde: float


def derive_params(ip: float, field: float) -> ModelParams:
    """Build ModelParams from ionization potential and static field (a.u.)."""
    if ip <= 0.0 or field <= 0.0:
        raise DomainError(f"ip and field must be positive, got ip={ip}, field={field}")
    kt = math.sqrt(2.0 * ip)
    return ModelParams(
        ip=ip,
        field=field,
        kappa_tilde=kt,
        kappa=ip * kt / field,
        x0=ip / field,
        tau_tilde=kt / field,
    )


def params_from_kappa(ip: float, kappa: float) -> ModelParams:
    """Build ModelParams by inverting kappa = ip*sqrt(2*ip)/field."""
    if ip <= 0.0 or kappa <= 0.0:
        raise DomainError(f"ip and kappa must be positive, got ip={ip}, kappa={kappa}")
    field = ip * math.sqrt(2.0 * ip) / kappa
    return derive_params(ip, field)


def classical_trajectory(params: ModelParams, t: float) -> tuple[float, float]:
    """Position and velocity of the classical electron released at the exit.

    Starts at x0 with zero velocity at t = 0 and accelerates in the field.
    """
    if t < 0.0:
        raise DomainError(f"t must be non-negative, got {t}")
    x = params.x0 + 0.5 * params.field * t * t
    v = params.field * t
    return x, v


def classical_velocity(params: ModelParams, x: float, asymptotic: bool = False) -> float:
    """Velocity at position x on the released trajectory.

    The exact form is sqrt(2*field*(x - x0)). With asymptotic=True returns
    sqrt(2*ip*xi), the large-distance form used by the scaling-factor limit.
    """
    xi = x / params.x0
    if asymptotic:
        return math.sqrt(2.0 * params.ip * xi)
    return math.sqrt(max(0.0, 2.0 * params.field * (x - params.x0)))


def position_from_u(params: ModelParams, u: float) -> float:
    """Scaled position xi = x/x0 reached with scaled velocity u = v/kappa_tilde.

    Energy conservation on the classical trajectory gives xi = 1 + u^2.
    """
    if u < 0.0:
        raise DomainError(f"u must be non-negative, got {u}")
    return 1.0 + u * u
