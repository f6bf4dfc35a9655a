"""Norms of f_δ = (δ + |x|)^{-α} 1_{B(0,1)}, the positive-energy construction family."""
import math
from dataclasses import dataclass

from scipy.integrate import quad

from domain.exceptions import OutOfDomainError
from radial.grid import RadialGrid, sphere_area


@dataclass(frozen=True)
class NormTriple:
    l1: float
    l_sobolev: float
    lm: float


def admissible_alpha(d: int) -> tuple[float, float]:
    """Open interval (d/m, (d+2)/2)."""
    m = 2.0 - 2.0 / d
    return d / m, (d + 2.0) / 2.0


def _norm(delta: float, alpha: float, d: int, p: float) -> float:
    """(σ ∫₀¹ (δ+r)^{-αp} r^{d-1} dr)^{1/p}, split on a geometric ladder above δ."""

    def integrand(r: float) -> float:
        return (delta + r) ** (-alpha * p) * r ** (d - 1)

    breaks = [0.0, delta]
    edge = delta
    while edge * 10.0 < 1.0:
        edge *= 10.0
        breaks.append(edge)
    breaks.append(1.0)
    total = 0.0
    for lo, hi in zip(breaks, breaks[1:]):
        if hi > lo:
            value, _ = quad(integrand, lo, hi, limit=200, epsabs=0.0, epsrel=1e-11)
            total += value
    return (sphere_area(d) * total) ** (1.0 / p)


def reverse_holder_family(delta: float, alpha: float, d: int, g: RadialGrid | None = None) -> NormTriple:
    """
    L¹, L^{2d/(d+2)} and L^m norms of f_δ on the unit ball.

    ``g`` only has to agree on d and cover the unit ball.

    Raises:
        OutOfDomainError: If δ is outside (0, 1] or α outside (d/m, (d+2)/2)
    """
    if not 0.0 < delta <= 1.0:
        raise OutOfDomainError("delta", delta, "must lie in (0, 1]")
    lo, hi = admissible_alpha(d)
    if not lo < alpha < hi:
        raise OutOfDomainError("alpha", alpha, f"must lie in ({lo:.6g}, {hi:.6g})")
    if g is not None and (g.d != d or not g.covers(1.0)):
        raise OutOfDomainError("grid", g.r_max, f"must be a d={d} grid covering the unit ball")
    m = 2.0 - 2.0 / d
    return NormTriple(
        l1=_norm(delta, alpha, d, 1.0),
        l_sobolev=_norm(delta, alpha, d, 2.0 * d / (d + 2.0)),
        lm=_norm(delta, alpha, d, m),
    )


def norm_at_zero_delta(alpha: float, d: int, p: float) -> float:
    """Limit δ → 0 of the L^p norm when αp < d; infinite otherwise."""
    exponent = d - alpha * p
    if exponent <= 0:
        return math.inf
    return float((sphere_area(d) / exponent) ** (1.0 / p))

