"""Stationary phase-space states, mode mixtures, and plane reductions.

State values are densities over the original (Q1, Q2, Pi1, Pi2) coordinates.
All stationary states depend on the point only through the conserved
quadratic xi^2 and the cross invariant, which is what makes them stationary.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np

from .errors import GridCoverageError
from .params import DerivedParams, PhasePoint
from .special import QuadratureRule, gauss_hermite, laguerre

__all__ = [
    "ModeIndex",
    "CartesianModes",
    "PhaseGrid",
    "stargen",
    "energy",
    "superposition_n",
    "cartesian_mode",
    "xi_split",
    "product_state",
    "trace_out",
]

TWO_PI = 2.0 * math.pi


class ModeIndex(NamedTuple):
    """Occupation of the two decoupled rotation modes."""

    n1: int
    n2: int


class CartesianModes(NamedTuple):
    """Mode numbers attached to the two plane-aligned axes."""

    nx: int
    ny: int


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform square grid over one plane.

    Rows follow the position-like axis, columns the momentum-like axis; both
    run over [-extent, extent] with the same sample count.
    """

    extent: float = 6.0
    samples: int = 201

    def __post_init__(self) -> None:
        if not self.extent > 0:
            raise ValueError("grid extent must be positive")
        if self.samples < 2:
            raise ValueError("grid needs at least two samples per axis")

    def axis(self) -> np.ndarray:
        return np.linspace(-self.extent, self.extent, self.samples)

    @property
    def step(self) -> float:
        return 2.0 * self.extent / (self.samples - 1)

    @property
    def cell_area(self) -> float:
        return self.step * self.step


def _require_modes(*ns: int) -> None:
    for n in ns:
        if n < 0:
            raise ValueError("mode numbers must be non-negative")


def _invariant_pair(p: DerivedParams, pt: PhasePoint):
    s = p.alpha / p.beta
    xi2 = s * (pt.Q1 * pt.Q1 + pt.Q2 * pt.Q2) + (pt.Pi1 * pt.Pi1 + pt.Pi2 * pt.Pi2) / s
    cross = pt.Pi1 * pt.Q2 - pt.Pi2 * pt.Q1
    return xi2, cross

def stargen(p: DerivedParams, m: ModeIndex, pt: PhasePoint):
    """Stationary state with n1, n2 quanta in the two rotation modes.

    The two Laguerre factors take the conserved combinations xi^2 -+ 2*cross,
    one per mode, under the shared Gaussian envelope.
    """
    n1, n2 = m
    _require_modes(n1, n2)
    xi2, cross = _invariant_pair(p, pt)
    hb = p.hbar
    sign = -1.0 if (n1 + n2) % 2 else 1.0
    return (
        sign
        / (math.pi**2 * hb * hb)
        * np.exp(-xi2 / hb)
        * laguerre(0.0, n1, (xi2 - 2.0 * cross) / hb)
        * laguerre(0.0, n2, (xi2 + 2.0 * cross) / hb)
    )


def energy(p: DerivedParams, m: ModeIndex) -> float:
    """Spectrum of the two rotation modes; gamma splits the pair linearly."""
    n1, n2 = m
    _require_modes(n1, n2)
    return p.hbar * (p.Omega * (n1 + n2 + 1) + p.gamma * (n1 - n2))


def superposition_n(p: DerivedParams, n: int, pt: PhasePoint):
    """Even statistical mixture of all stargen states on the shell n1+n2 = n.

    Collapses to a single degree-n Laguerre factor in 2*xi^2; depends on the
    point only through xi^2 and is therefore axially symmetric and stationary.
    """
    _require_modes(n)
    xi2, _ = _invariant_pair(p, pt)
    hb = p.hbar
    sign = -1.0 if n % 2 else 1.0
    return (
        sign
        / (math.pi**2 * hb * hb * (1.0 + n))
        * np.exp(-xi2 / hb)
        * laguerre(1.0, n, 2.0 * xi2 / hb)
    )


def cartesian_mode(p: DerivedParams, n: int, xi2_axis):
    """Single-plane mode profile as a function of that plane's quadratic.

    Normalized so the plain integral over one plane is 1.
    """
    _require_modes(n)
    hb = p.hbar
    sign = -1.0 if n % 2 else 1.0
    xi2_axis = np.asarray(xi2_axis, dtype=float)
    return (
        sign / (math.pi * hb) * np.exp(-xi2_axis / hb) * laguerre(0.0, n, 2.0 * xi2_axis / hb)
    )[()]


def _mixing(p: DerivedParams, t: float) -> Tuple[float, float, float]:
    gt = math.remainder(p.gamma * t, TWO_PI)
    cg, sg = math.cos(gt), math.sin(gt)
    return cg * cg, sg * sg, math.sin(2.0 * gt)


def xi_split(p: DerivedParams, pt: PhasePoint, t: float):
    """Split xi^2 into the two axis quadratics as they stand at time t.

    The split rotates at the slow rate gamma: cos/sin squared weights plus a
    cross term in sin(2*gamma*t). The two parts always sum to xi^2.
    """
    s = p.alpha / p.beta
    x1 = s * pt.Q1 * pt.Q1 + pt.Pi1 * pt.Pi1 / s
    x2 = s * pt.Q2 * pt.Q2 + pt.Pi2 * pt.Pi2 / s
    xc = s * pt.Q1 * pt.Q2 + pt.Pi1 * pt.Pi2 / s
    cg2, sg2, s2g = _mixing(p, t)
    xi2_x = cg2 * x1 + sg2 * x2 - s2g * xc
    xi2_y = sg2 * x1 + cg2 * x2 + s2g * xc
    return xi2_x, xi2_y


def product_state(p: DerivedParams, c: CartesianModes, pt: PhasePoint, t: float):
    """Product of one mode per axis, axes mixed by the time-t split.

    Separable at t = 0, swaps the two mode numbers at gamma*t = pi/2, and is
    stationary when gamma = 0.
    """
    xi2_x, xi2_y = xi_split(p, pt, t)
    return cartesian_mode(p, c.nx, xi2_x) * cartesian_mode(p, c.ny, xi2_y)


def _thread_count() -> int:
    raw = os.environ.get("NCWIGNER_THREADS", "")
    try:
        n = int(raw) if raw else 1
    except ValueError:
        n = 1
    return max(1, n)


def trace_out(
    p: DerivedParams,
    c: CartesianModes,
    t: float,
    plane: int,
    grid: PhaseGrid,
    rule: Optional[QuadratureRule] = None,
) -> np.ndarray:
    """Reduced density on one plane, the other plane integrated out.

    Returns field[i, j] sampled at (r_i, k_j) over the grid, rows along the
    position-like axis. The integrated plane is handled by Gauss-Hermite in
    scaled variables, which is exact for these integrands; the retained plane
    is sampled on the uniform grid. The Riemann mass of the result must land
    within 1e-3 of 1 or the grid is rejected as too small (extent >= 6 scaled
    units is comfortable for low mode numbers).

    Row blocks may be farmed out to NCWIGNER_THREADS threads; assembly is
    index-ordered, so the output does not depend on the thread count.
    """
    if plane not in (1, 2):
        raise ValueError("plane must be 1 or 2")
    _require_modes(c.nx, c.ny)
    rule = rule or gauss_hermite()
    hb = p.hbar
    s = p.alpha / p.beta
    ax = grid.axis()
    a_keep = math.sqrt(s) * ax        # scaled position-like values, rows
    b_keep = ax / math.sqrt(s)        # scaled momentum-like values, columns
    # integrated-plane nodes, scaled by sqrt(hbar) so its Gaussian is the kernel
    u = math.sqrt(hb) * rule.nodes
    u1 = np.repeat(u, u.size)
    u2 = np.tile(u, u.size)
    wts = hb * np.outer(rule.kernel_weights, rule.kernel_weights).ravel()
    x_node = u1 * u1 + u2 * u2
    cg2, sg2, s2g = _mixing(p, t)

    def rows(i0: int, i1: int) -> np.ndarray:
        if i0 == i1:
            return np.zeros((0, ax.size))
        out = np.empty((i1 - i0, ax.size))
        for idx in range(i0, i1):
            a = a_keep[idx]
            x_keep = (a * a + b_keep * b_keep)[:, None]
            xc = a * u1[None, :] + b_keep[:, None] * u2[None, :]
            if plane == 1:
                xx = cg2 * x_keep + sg2 * x_node[None, :] - s2g * xc
                yy = sg2 * x_keep + cg2 * x_node[None, :] + s2g * xc
            else:
                xx = cg2 * x_node[None, :] + sg2 * x_keep - s2g * xc
                yy = sg2 * x_node[None, :] + cg2 * x_keep + s2g * xc
            vals = cartesian_mode(p, c.nx, xx) * cartesian_mode(p, c.ny, yy)
            out[idx - i0] = vals @ wts
        return out

    n_threads = _thread_count()
    n_rows = ax.size
    if n_threads == 1:
        field = rows(0, n_rows)
    else:
        bounds = np.linspace(0, n_rows, n_threads + 1).astype(int)
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            parts = list(pool.map(rows, bounds[:-1], bounds[1:]))
        field = np.vstack(parts)

    mass = float(field.sum()) * grid.cell_area
    if abs(mass - 1.0) > 1e-3:
        raise GridCoverageError(
            f"plane-{plane} reduction mass {mass:.6f} misses 1 by more than 1e-3; "
            "enlarge the grid extent or refine it"
        )
    return field
