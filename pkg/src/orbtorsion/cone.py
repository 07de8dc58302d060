"""Divergence demo for the deformed cone metric family.

The squared gradient norm of the domain-identification map for the family
``l(u, t) = u*sqrt(t) + t`` has the density
``u^2 / (64 t^(5/4) (sqrt(t) + u)^(5/2))`` on (0, 1], which is not
integrable at 0: the regularised tail over [eps, 1] grows like
``eps^(-1/4) / (16 sqrt(u))``.  Divergence is demonstrated through the
tails and the fitted rate; the infinite limit itself is never "computed".
"""

from __future__ import annotations

import math
from typing import Sequence

from scipy.integrate import quad


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested accuracy."""


def gradient_integrand(u: float, t: float) -> float:
    """Pointwise density of the squared gradient norm; strictly positive."""
    if t <= 0 or u <= 0:
        raise ValueError("both u and t must be positive")
    return u * u / (64.0 * t ** 1.25 * (math.sqrt(t) + u) ** 2.5)


def tail_integral(u: float, eps: float, epsrel: float = 1e-9) -> float:
    """Regularised integral of the gradient density over [eps, 1].

    The substitution t = s^4 removes the t^(-5/4) endpoint blow-up, after
    which the integrand is smooth on [eps^(1/4), 1] and standard adaptive
    quadrature converges quickly.  Strictly increasing as eps decreases.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if u <= 0:
        raise ValueError("u must be positive")

    def smooth(s: float) -> float:
        return u * u / (16.0 * s * s * (s * s + u) ** 2.5)

    value, abserr = quad(smooth, eps ** 0.25, 1.0, epsrel=epsrel, epsabs=0.0, limit=200)
    if abserr > 10.0 * epsrel * abs(value):
        raise QuadratureError(f"estimated error {abserr:g} too large for target {epsrel:g}")
    return value


def normalized_tail(u: float, eps: float, epsrel: float = 1e-9) -> float:
    """Tail rescaled by eps^(1/4) * 16 * sqrt(u); tends to 1 as eps -> 0."""
    return tail_integral(u, eps, epsrel) * eps ** 0.25 * 16.0 * math.sqrt(u)


def loglog_slope(u: float, eps_grid: Sequence[float], epsrel: float = 1e-9) -> float:
    """Least-squares slope of log(tail) against log(eps) over the grid."""
    if len(eps_grid) < 2:
        raise ValueError("need at least two grid points for a slope")
    xs = [math.log(e) for e in eps_grid]
    ys = [math.log(tail_integral(u, e, epsrel)) for e in eps_grid]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    num = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    den = sum((x - xbar) ** 2 for x in xs)
    return num / den


def cone_rows(u: float, eps_grid: Sequence[float], epsrel: float = 1e-9) -> list[tuple[float, float, float]]:
    """(eps, tail, normalised tail) rows for reporting."""
    return [(e, tail_integral(u, e, epsrel), normalized_tail(u, e, epsrel)) for e in eps_grid]
