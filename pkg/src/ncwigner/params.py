"""Oscillator configuration and the constants derived from it.

Everything downstream consumes :class:`DerivedParams` instead of re-deriving
constants, so the branch choice for the map coefficients and all consistency
checks live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import InvalidPhysics

__all__ = [
    "OscillatorConfig",
    "DerivedParams",
    "PhasePoint",
    "derive_params",
    "sw_forward",
    "sw_inverse",
    "jacobian_det",
]


class PhasePoint(NamedTuple):
    """A point of the four-dimensional phase space, plane 1 then plane 2.

    Fields may hold numpy arrays; every consumer broadcasts.
    """

    Q1: float
    Q2: float
    Pi1: float
    Pi2: float


@dataclass(frozen=True)
class OscillatorConfig:
    """Physical inputs: mass, frequency, hbar and the two deformation scales.

    theta deforms the coordinate pair, eta the momentum pair. Their product
    must stay strictly below hbar**2 or the model degenerates.
    """

    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    theta: float = 0.0
    eta: float = 0.0

    def __post_init__(self) -> None:
        if not (self.m > 0 and self.omega > 0 and self.hbar > 0):
            raise InvalidPhysics("m, omega and hbar must all be positive")
        if self.theta < 0 or self.eta < 0:
            raise InvalidPhysics("theta and eta must be non-negative")
        if self.theta * self.eta >= self.hbar**2:
            raise InvalidPhysics(
                "deformation too strong: need theta*eta < hbar**2, got "
                f"theta*eta = {self.theta * self.eta:g} with hbar**2 = {self.hbar**2:g}"
            )

    @classmethod
    def natural(cls, epsilon: float) -> "OscillatorConfig":
        """Unit-mass, unit-frequency config whose beat ratio is exactly epsilon."""
        return cls(1.0, 1.0, 1.0, epsilon, epsilon)

    @classmethod
    def from_mapping(cls, data) -> "OscillatorConfig":
        known = {"m", "omega", "hbar", "theta", "eta"}
        extra = sorted(set(data) - known)
        if extra:
            raise ValueError(f"unknown config keys: {', '.join(extra)}")
        return cls(**{k: float(v) for k, v in data.items()})


@dataclass(frozen=True)
class DerivedParams:
    """Constants of one configuration, on one map branch.

    lam/mu are the map coefficients, alpha/beta the quadratic weights of the
    decoupled form, gamma the plane-mixing rate, Omega = 2*alpha*beta the fast
    rotation rate. nc_strength is the dimensionless deformation combination
    and beat_ratio = gamma/Omega < 1 controls orbit closure and the beat.
    """

    m: float
    omega: float
    hbar: float
    theta: float
    eta: float
    lam: float
    mu: float
    alpha: float
    beta: float
    gamma: float
    Omega: float
    nc_strength: float
    beat_ratio: float


def derive_params(config: OscillatorConfig, branch: str = "upper") -> DerivedParams:
    """Resolve the map coefficients and the decoupled-form constants.

    Both roots of the quadratic constraint lam*mu*(1 - lam*mu) =
    theta*eta/(4*hbar**2) are admissible; "upper" is the branch that reaches
    lam = mu = 1 in the commutative limit. The "lower" branch needs
    theta*eta > 0 (it degenerates to lam = 0 otherwise) and exists mostly to
    check that observables do not depend on the choice.
    """
    m, w, hb = config.m, config.omega, config.hbar
    th, et = config.theta, config.eta
    ratio = th * et / hb**2
    root = math.sqrt(1.0 - ratio)
    if branch == "upper":
        lam2 = (1.0 + root) / 2.0
    elif branch == "lower":
        lam2 = (1.0 - root) / 2.0
        if lam2 <= 0.0:
            raise InvalidPhysics("lower branch requires theta*eta > 0")
    else:
        raise ValueError("branch must be 'upper' or 'lower'")
    lam = math.sqrt(lam2)

    alpha = math.sqrt(lam2 * m * w * w / 2.0 + et * et / (8.0 * m * lam2 * hb * hb))
    beta = math.sqrt(lam2 / (2.0 * m) + m * w * w * th * th / (8.0 * lam2 * hb * hb))
    gamma = th * m * w * w / (2.0 * hb) + et / (2.0 * m * hb)
    big_omega = 2.0 * alpha * beta
    beat = gamma / big_omega
    if not 0.0 <= beat < 1.0:
        # unreachable through a valid config; guards hand-built params
        raise InvalidPhysics(f"beat ratio {beat:g} outside [0, 1)")
    return DerivedParams(
        m=m, omega=w, hbar=hb, theta=th, eta=et,
        lam=lam, mu=lam,
        alpha=alpha, beta=beta,
        gamma=gamma, Omega=big_omega,
        nc_strength=gamma / w, beat_ratio=beat,
    )


def sw_forward(p: DerivedParams, point: Sequence[float]) -> PhasePoint:
    """Map plane coordinates to their commutative image.

    Accepts any (Q1, Q2, Pi1, Pi2) sequence; returns the mapped point in the
    same layout. Linear, with the cross couplings proportional to the two
    deformation scales.
    """
    q1, q2, p1, p2 = point
    cq = p.theta / (2.0 * p.lam * p.hbar)
    cp = p.eta / (2.0 * p.mu * p.hbar)
    return PhasePoint(
        p.lam * q1 - cq * p2,
        p.lam * q2 + cq * p1,
        p.mu * p1 + cp * q2,
        p.mu * p2 - cp * q1,
    )


def sw_inverse(p: DerivedParams, point: Sequence[float]) -> PhasePoint:
    """Inverse of :func:`sw_forward`; exact on the same branch."""
    q1, q2, p1, p2 = point
    cq = p.theta / (2.0 * p.lam * p.hbar)
    cp = p.eta / (2.0 * p.mu * p.hbar)
    det = 2.0 * p.lam * p.mu - 1.0  # equals sqrt(1 - theta*eta/hbar^2)
    return PhasePoint(
        (p.mu * q1 + cq * p2) / det,
        (p.mu * q2 - cq * p1) / det,
        (p.lam * p1 - cp * q2) / det,
        (p.lam * p2 + cp * q1) / det,
    )


def jacobian_det(config: OscillatorConfig) -> float:
    """Phase-space volume factor of the forward map."""
    return 1.0 - config.theta * config.eta / config.hbar**2
