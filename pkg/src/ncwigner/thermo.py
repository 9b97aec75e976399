"""Thermal equilibrium of the two rotation modes: state, reports, distortion.

Natural units throughout this module: energies are quoted in units of
hbar*Omega, entropies and heat capacities in units of k_B, and the state is
written at hbar = 1 with alpha = beta. sigma is the dimensionless inverse
temperature; eps is the beat ratio and must stay below 1 for the mode sum to
converge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import InvalidPhysics
from .special import QuadratureRule, gauss_hermite

__all__ = [
    "ThermoPoint",
    "ThermoReport",
    "thermal_wigner",
    "partition",
    "thermo_report",
    "position_distribution",
    "distortion_map",
    "thermal_entropies",
    "missing_information",
    "sigma_max",
]


@dataclass(frozen=True)
class ThermoPoint:
    sigma: float
    eps: float = 0.0

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise InvalidPhysics("inverse temperature sigma must be positive")
        if not 0.0 <= self.eps < 1.0:
            raise InvalidPhysics("beat ratio eps must lie in [0, 1)")


@dataclass(frozen=True)
class ThermoReport:
    Z: float
    U: float
    Sk: float
    Cv: float


def _cosh_gap(sigma: float, eps: float) -> float:
    # cosh(sigma) - cosh(eps*sigma) without small-sigma cancellation
    return 2.0 * math.sinh(0.5 * sigma * (1.0 + eps)) * math.sinh(0.5 * sigma * (1.0 - eps))


def _weights(tp: ThermoPoint) -> Tuple[float, float, float]:
    """(diagonal weight, cross weight, purity scale) of the thermal exponent."""
    den = math.cosh(tp.sigma) + math.cosh(tp.eps * tp.sigma)
    w_diag = math.sinh(tp.sigma) / den
    w_cross = math.sinh(tp.eps * tp.sigma) / den
    t_scale = _cosh_gap(tp.sigma, tp.eps) / den
    return w_diag, w_cross, t_scale


def thermal_wigner(tp: ThermoPoint, xi2, angular):
    """Closed-form thermal density at the invariant pair (xi^2, angular).

    The cross invariant enters with weight sinh(eps*sigma) opposing the xi^2
    term; the full even/odd mode sum collapses to exactly this form (the
    truncated sum is kept as a cross-check in the tests).
    """
    w_diag, w_cross, t_scale = _weights(tp)
    xi2 = np.asarray(xi2, dtype=float)
    angular = np.asarray(angular, dtype=float)
    return (t_scale / math.pi**2 * np.exp(-(xi2 * w_diag - 2.0 * angular * w_cross)))[()]


def partition(tp: ThermoPoint) -> float:
    """Partition function; the two shifted modes contribute one geometric
    series each."""
    return 1.0 / (2.0 * _cosh_gap(tp.sigma, tp.eps))


def thermo_report(tp: ThermoPoint) -> ThermoReport:
    """Z, internal energy, entropy and heat capacity from analytic
    sigma-derivatives of ln Z."""
    s, e = tp.sigma, tp.eps
    gap = _cosh_gap(s, e)
    z = 1.0 / (2.0 * gap)
    d1 = (math.sinh(s) - e * math.sinh(e * s)) / gap
    d2 = (math.cosh(s) - e * e * math.cosh(e * s)) / gap
    u = d1
    sk = math.log(z) + s * d1
    cv = s * s * (d1 * d1 - d2)
    return ThermoReport(z, u, sk, cv)


def position_distribution(tp: ThermoPoint, r1, r2, rule: Optional[QuadratureRule] = None):
    """Marginal density of the two position-like coordinates.

    Integrates the thermal state over both momentum-like coordinates with the
    quadrature mapped onto the thermal width. Broadcasts over r1, r2.
    """
    rule = rule or gauss_hermite()
    w_diag, w_cross, t_scale = _weights(tp)
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    shape = np.broadcast_shapes(r1.shape, r2.shape)
    f1 = np.broadcast_to(r1, shape).ravel()[:, None]
    f2 = np.broadcast_to(r2, shape).ravel()[:, None]
    scale = math.sqrt(w_diag)
    k = rule.nodes / scale
    k1 = np.repeat(k, k.size)[None, :]
    k2 = np.tile(k, k.size)[None, :]
    wts = np.outer(rule.weights, rule.weights).ravel() / w_diag
    # angular = r1*k2 - r2*k1 couples the retained and integrated pairs
    cross = np.exp((2.0 * w_cross) * (f1 * k2 - f2 * k1))
    vals = (t_scale / math.pi**2) * np.exp(-w_diag * (f1 * f1 + f2 * f2)) * (cross @ wts)[:, None]
    return vals.reshape(shape)[()]


def distortion_map(tp: ThermoPoint, grid, rule: Optional[QuadratureRule] = None) -> np.ndarray:
    """Difference between the eps-distorted and undistorted position marginals
    at the same sigma, sampled on an r1-r2 grid (rows along r1)."""
    ax = grid.axis()
    r1 = ax[:, None]
    r2 = ax[None, :]
    base = ThermoPoint(tp.sigma, 0.0)
    return position_distribution(tp, r1, r2, rule) - position_distribution(base, r1, r2, rule)


def thermal_entropies(tp: ThermoPoint, rule: Optional[QuadratureRule] = None) -> Tuple[float, float]:
    """Linear entropy of the full thermal state and the mutual information of
    its two plane reductions, (S12, I12).

    The 4D purity quadrature is evaluated in its exactly factorized form: the
    tensor Gauss-Hermite sum of the cross factor splits into two 2D sums. The
    plane reduction of the state is a Gaussian whose width follows from the
    momentum integrals, leaving a 2D purity quadrature.
    """
    rule = rule or gauss_hermite()
    w_diag, w_cross, t_scale = _weights(tp)
    u, w = rule.nodes, rule.weights
    # full-state purity: rho^2 has diagonal width 2*w_diag; in kernel variables
    # the cross factor couples (u1,v2) and (u2,v1) with opposite signs
    c = 2.0 * w_cross / w_diag
    couple = np.exp(c * np.outer(u, u))
    j_plus = float(w @ couple @ w)
    j_minus = float(w @ (1.0 / couple) @ w)
    purity_full = t_scale * t_scale * j_plus * j_minus / (math.pi**2 * w_diag**2)
    # traced state: Gaussian of width (w_diag^2 - w_cross^2)/w_diag per plane
    width1 = (w_diag * w_diag - w_cross * w_cross) / w_diag
    flat = float(np.sum(w)) ** 2  # kernel mass, = pi up to quadrature
    purity_plane = (
        2.0
        * math.pi
        * (t_scale / (math.pi * w_diag)) ** 2
        * flat
        / (2.0 * width1)
    )
    s12 = 1.0 - purity_full
    s1 = 1.0 - purity_plane
    return s12, 2.0 * s1 - s12


def missing_information(
    sigma: float, eps: float, rule: Optional[QuadratureRule] = None
) -> Tuple[float, float]:
    """Entropy and mutual-information excess of the eps-distorted thermal
    state over the undistorted one at the same sigma, (dS12, dI12)."""
    s12_e, i12_e = thermal_entropies(ThermoPoint(sigma, eps), rule)
    s12_0, i12_0 = thermal_entropies(ThermoPoint(sigma, 0.0), rule)
    return s12_e - s12_0, i12_e - i12_0


def sigma_max(
    eps: float,
    which: str = "dS12",
    bounds: Tuple[float, float] = (1e-2, 20.0),
    tol: float = 1e-4,
    rule: Optional[QuadratureRule] = None,
) -> float:
    """Inverse temperature at which the chosen distortion measure peaks.

    Golden-section search for the maximum of dS12 or dI12 over sigma in
    bounds. The measures vanish identically at eps = 0, so that is rejected.
    """
    if eps <= 0.0:
        raise InvalidPhysics("distortion measures vanish identically at eps = 0")
    try:
        index = ("dS12", "dI12").index(which)
    except ValueError:
        raise ValueError("which must be 'dS12' or 'dI12'") from None
    rule = rule or gauss_hermite()
    lo, hi = bounds
    if not 0.0 < lo < hi:
        raise ValueError("bounds must satisfy 0 < lo < hi")

    def measure(s: float) -> float:
        return missing_information(s, eps, rule)[index]

    ratio = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - ratio * (b - a)
    d = a + ratio * (b - a)
    fc, fd = measure(c), measure(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - ratio * (b - a)
            fc = measure(c)
        else:
            a, c, fc = c, d, fd
            d = a + ratio * (b - a)
            fd = measure(d)
    return 0.5 * (a + b)
