"""Quadrature rules and Laguerre machinery used across the package.

The Gauss-Hermite tables come from numpy; everything layered on top of them
(kernel factoring, the 4D tensor driver, compensated summation) is local.
Associated Laguerre polynomials are evaluated by the three-term recurrence,
which is the stable direction for x >= 0.

Conventions
-----------
A rule integrates against the kernel exp(-x**2). ``kernel_weights`` are
``weights * exp(nodes**2)``: apply them to an integrand that *contains* its
own Gaussian envelope, and plain ``weights`` to one with the envelope already
factored out. The lifted weights stay O(1) at every order, so there is no
overflow at high order.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np

from .params import PhasePoint

__all__ = [
    "DEFAULT_ORDER",
    "QuadratureRule",
    "gauss_hermite",
    "laguerre",
    "laguerre_convolution",
    "laguerre_generating_sum",
    "integrate_4d",
]

DEFAULT_ORDER = 40


class QuadratureRule(NamedTuple):
    order: int
    nodes: np.ndarray
    weights: np.ndarray
    kernel_weights: np.ndarray


@lru_cache(maxsize=None)
def gauss_hermite(order: int = DEFAULT_ORDER) -> QuadratureRule:
    """Gauss-Hermite rule of the given order, with kernel-factored weights."""
    if order < 1:
        raise ValueError("quadrature order must be at least 1")
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    lifted = weights * np.exp(nodes * nodes)
    for arr in (nodes, weights, lifted):
        arr.setflags(write=False)
    return QuadratureRule(order, nodes, weights, lifted)


def laguerre(nu: float, n: int, x):
    """Associated Laguerre polynomial L^nu_n(x) by upward recurrence.

    Parameters
    ----------
    nu : real order, nu >= -1.
    n : degree, n >= 0.
    x : scalar or array argument, broadcast elementwise.
    """
    if n < 0:
        raise ValueError("degree n must be non-negative")
    if nu < -1:
        raise ValueError("order nu must be >= -1")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev[()]
    cur = 1.0 + nu - x
    for k in range(1, n):
        prev, cur = cur, ((2.0 * k + 1.0 + nu - x) * cur - (k + nu) * prev) / (k + 1.0)
    return cur[()]


def laguerre_convolution(
    c: float, d: float, n: int, a: float, b: float
) -> Tuple[float, float]:
    """Both sides of the degree-n addition identity.

    lhs is the cross sum of products L^c_k(a) L^d_{n-k}(b); rhs is the single
    polynomial L^{c+d+1}_n(a+b) it must equal. Returned unevaluated against
    each other so callers choose the comparison.
    """
    lhs = math.fsum(
        float(laguerre(c, k, a)) * float(laguerre(d, n - k, b)) for k in range(n + 1)
    )
    rhs = float(laguerre(c + d + 1.0, n, a + b))
    return lhs, rhs


def laguerre_generating_sum(
    nu: float, delta: float, z: float, nmax: int
) -> Tuple[float, float]:
    """Partial generating-function sum and its closed form.

    Sums delta**k L^nu_k(z) for k <= nmax against
    (1-delta)**(-nu-1) * exp(delta*z/(delta-1)). Requires |delta| < 1.
    """
    if abs(delta) >= 1.0:
        raise ValueError("generating sum needs |delta| < 1")
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    terms = [1.0]
    prev, cur = 1.0, 1.0 + nu - z
    power = delta
    for k in range(1, nmax + 1):
        terms.append(power * cur)
        power *= delta
        prev, cur = cur, ((2.0 * k + 1.0 + nu - z) * cur - (k + nu) * prev) / (k + 1.0)
    partial = math.fsum(terms)
    closed = (1.0 - delta) ** (-nu - 1.0) * math.exp(delta * z / (delta - 1.0))
    return partial, closed


def integrate_4d(
    f: Callable[[PhasePoint], np.ndarray], rule: Optional[QuadratureRule] = None
) -> float:
    """Tensor-product Gauss-Hermite integral over four scaled coordinates.

    The integrand must carry its own Gaussian envelope exp(-(Q1^2 + Q2^2 +
    Pi1^2 + Pi2^2)); the kernel-factored weights assume that decay. Exact for
    envelope times polynomial up to degree 2*order-1 per axis.

    Deterministic: fixed node ordering, one slab per first-axis node, slab
    totals combined with math.fsum.
    """
    rule = rule or gauss_hermite()
    x, kw = rule.nodes, rule.kernel_weights
    g2, g3, g4 = np.meshgrid(x, x, x, indexing="ij")
    w3 = kw[:, None, None] * kw[None, :, None] * kw[None, None, :]
    partials = []
    for xi, wi in zip(x, kw):
        vals = f(PhasePoint(np.full_like(g2, xi), g2, g3, g4))
        partials.append(wi * float(np.sum(w3 * vals)))
    return math.fsum(partials)
