"""Closed-form time evolution on the two planes, its invariants and checks."""

from __future__ import annotations

import math
from typing import NamedTuple, Optional, Tuple

from .params import DerivedParams, PhasePoint

__all__ = [
    "InitialData",
    "PhasePoint",
    "evolve",
    "invariants",
    "ode_residual",
    "orbit_closure",
]

TWO_PI = 2.0 * math.pi


class InitialData(NamedTuple):
    x: float
    y: float
    pi_x: float
    pi_y: float


def _angles(p: DerivedParams, t: float) -> Tuple[float, float, float, float]:
    # reduce both phases mod 2*pi first so large t keeps full precision
    wt = math.remainder(p.Omega * t, TWO_PI)
    gt = math.remainder(p.gamma * t, TWO_PI)
    return math.cos(wt), math.sin(wt), math.cos(gt), math.sin(gt)


def evolve(p: DerivedParams, init: InitialData, t: float) -> PhasePoint:
    """Propagate an initial point for time t.

    The flow is a composition of two rotations: the fast one at Omega inside
    each (coordinate, momentum) pair, the slow one at gamma mixing the two
    planes. Both are applied in closed form, so any t is a single evaluation.
    """
    c_o, s_o, c_g, s_g = _angles(p, t)
    r = p.beta / p.alpha
    a1 = init.x * c_g + init.y * s_g
    a2 = init.y * c_g - init.x * s_g
    b1 = init.pi_x * c_g + init.pi_y * s_g
    b2 = init.pi_y * c_g - init.pi_x * s_g
    return PhasePoint(
        a1 * c_o + r * b1 * s_o,
        a2 * c_o + r * b2 * s_o,
        b1 * c_o - a1 * s_o / r,
        b2 * c_o - a2 * s_o / r,
    )


def invariants(p: DerivedParams, pt: PhasePoint) -> Tuple[float, float]:
    """The two conserved quadratics: the weighted radius xi^2 and the
    angular combination L = Q1*Pi2 - Q2*Pi1."""
    s = p.alpha / p.beta
    xi2 = s * (pt.Q1 * pt.Q1 + pt.Q2 * pt.Q2) + (pt.Pi1 * pt.Pi1 + pt.Pi2 * pt.Pi2) / s
    ang = pt.Q1 * pt.Pi2 - pt.Q2 * pt.Pi1
    return xi2, ang


def ode_residual(p: DerivedParams, init: InitialData, t: float, h: float) -> float:
    """Max-norm defect of the closed-form orbit against the first-order system.

    Central differences of evolve at step h versus the equations of motion,
    so the result shrinks as O(h^2) when the closed form is right.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    plus = evolve(p, init, t + h)
    minus = evolve(p, init, t - h)
    mid = evolve(p, init, t)
    a2 = 2.0 * p.alpha * p.alpha
    b2 = 2.0 * p.beta * p.beta
    g = p.gamma
    rhs = (
        b2 * mid.Pi1 + g * mid.Q2,
        b2 * mid.Pi2 - g * mid.Q1,
        -a2 * mid.Q1 + g * mid.Pi2,
        -a2 * mid.Q2 - g * mid.Pi1,
    )
    return max(
        abs((hi - lo) / (2.0 * h) - want) for hi, lo, want in zip(plus, minus, rhs)
    )


def orbit_closure(
    p: DerivedParams, tol: float = 1e-6, max_den: int = 1000
) -> Optional[float]:
    """Period after which the orbit retraces itself, if one exists.

    Scans continued-fraction convergents pk/qk of the beat ratio and accepts
    the first with |ratio - pk/qk| <= tol/qk**2. Any rational that close with
    denominator <= max_den is itself a convergent, so the scan is complete.
    The returned time 2*pi*qk/Omega advances both rotation phases by whole
    turns. None when no small-denominator rational fits.
    """
    eps = p.beat_ratio
    if eps == 0.0:
        return TWO_PI / p.Omega
    h0, k0, h1, k1 = 0, 1, 1, 0  # convergents h/k via the usual two-term state
    x = eps
    for _ in range(64):
        a = math.floor(x)
        h0, k0, h1, k1 = h1, k1, a * h1 + h0, a * k1 + k0
        if k1 > max_den:
            return None
        if k1 > 0 and abs(eps - h1 / k1) <= tol / (k1 * k1):
            return TWO_PI * k1 / p.Omega
        frac = x - a
        if frac == 0.0:
            return None
        x = 1.0 / frac
    return None
