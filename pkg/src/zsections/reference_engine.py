"""Trusted reference evaluations of Hardy's Z function.

Two independent engines are provided so every approximation scheme in the
package can be scored against values whose own error is understood:

  * z_riemann_siegel: the fast path.  Main sum 2 sum_{k<=Ntilde} cos(theta -
    t ln k)/sqrt(k) with Ntilde = floor(sqrt(t/2pi)), plus the first-order
    remainder

        (-1)^(Ntilde-1) (t/2pi)^(-1/4) cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p),

    p = sqrt(t/2pi) - Ntilde.  The quoted error bound is O(t^(-3/4)); we carry
    the conservative constant 10 (measured agreement with the slow oracle is
    better than 0.06 t^(-3/4) over [50, 5000]).

  * z_euler_maclaurin: the slow oracle.  zeta(1/2 + it) by Euler-Maclaurin
    summation (partial sum, midpoint term, integral tail, Bernoulli
    corrections), rotated by exp(i theta(t)).  The rotation must land on the
    real axis, so |Im| of the rotated value is returned as a self-consistency
    diagnostic; it sits at the 1e-12 level for t <= 5000 with default knobs.

The remainder quotient is a removable 0/0 at p = 1/4 and p = 3/4 (the
denominator cos(2 pi p) vanishes only there on [0, 1), and the numerator
vanishes with it).  Inside a narrow guard window the quotient is replaced by
a 4th-order Taylor expansion about the removable point; coefficients were
computed symbolically (sympy series), and the p = 3/4 side uses the exact
symmetry psi(p) = psi(1 - p).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _tables
from .errors import ConvergenceError, DomainError
from .sections_engine import section
from .special_functions import TWO_PI, theta

# Error-bound constant for the first-order remainder path: |Z - RS1| <= RS_ERR_CONST * t^(-3/4).
RS_ERR_CONST = 10.0

# Guard window for the removable singularities of the remainder quotient.
HAZARD_COS_EPS = 1e-8

# Taylor expansion of psi(p) = cos(2pi(p^2 - p - 1/16))/cos(2pi p) about p = 1/4:
# psi(1/4 + d) = 1/2 - d + (pi^2/4) d^2 - (pi^2/6) d^3 + (5 pi^4/48 - pi^2) d^4 + O(d^5).
_PSI_TAYLOR = (
    0.5,
    -1.0,
    math.pi**2 / 4.0,
    -math.pi**2 / 6.0,
    5.0 * math.pi**4 / 48.0 - math.pi**2,
)

DEFAULT_CORRECTION_ORDER = 6

# Bernoulli numbers B_2, B_4, ..., B_20 as exact rationals.
_BERNOULLI_2J = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
)


@dataclass(frozen=True)
class ReferenceValue:
    """One trusted evaluation of Z(t).

    method is "RS1" or "EM_ORACLE".  err_estimate is the engine's own error
    bound (RS1: 10 t^(-3/4); EM: magnitude of the last Bernoulli correction).
    hazard marks an RS1 evaluation whose remainder quotient fell inside the
    removable-singularity guard window.  im_residual is the EM path's
    |Im(e^{i theta} zeta)| self-consistency diagnostic (0 for RS1).
    """

    t: float
    z: float
    method: str
    err_estimate: float
    hazard: bool = False
    im_residual: float = 0.0


def _psi(p: float) -> tuple[float, bool]:
    """Remainder quotient cos(2pi(p^2-p-1/16))/cos(2pi p) with removable-point guard."""
    den = math.cos(TWO_PI * p)
    if abs(den) < HAZARD_COS_EPS:
        # |den| < 1e-8 puts p within ~1.6e-9 of 1/4 or 3/4; the Taylor error
        # there is O(d^5) ~ 1e-44, far below double rounding.
        d = (p - 0.25) if p < 0.5 else (0.75 - p)
        c0, c1, c2, c3, c4 = _PSI_TAYLOR
        return c0 + d * (c1 + d * (c2 + d * (c3 + d * c4))), True
    num = math.cos(TWO_PI * (p * p - p - 0.0625))
    return num / den, False


def z_riemann_siegel(t: float) -> ReferenceValue:
    """First-order Riemann-Siegel evaluation of Z(t), valid for t >= 2 pi."""
    t = float(t)
    if not math.isfinite(t) or t < TWO_PI:
        raise DomainError(f"z_riemann_siegel requires t >= 2 pi, got {t}")
    a = math.sqrt(t / TWO_PI)
    cutoff = int(a)
    p = a - cutoff
    psi, hazard = _psi(p)
    corr = (t / TWO_PI) ** -0.25 * psi
    if cutoff % 2 == 0:
        corr = -corr
    z = 2.0 * section(t, cutoff) + corr
    return ReferenceValue(
        t=t,
        z=z,
        method="RS1",
        err_estimate=RS_ERR_CONST * t**-0.75,
        hazard=hazard,
    )


def z_euler_maclaurin(t: float, terms: int | None = None,
                      correction_order: int = DEFAULT_CORRECTION_ORDER) -> ReferenceValue:
    """Euler-Maclaurin oracle for Z(t), t >= 0.

    zeta(1/2 + it) = sum_{n=1..M} n^(-s) - M^(-s)/2 + M^(1-s)/(s-1)
                     + sum_{j=1..J} B_2j/(2j)! (s)_(2j-1) M^(-s-2j+1),

    with s = 1/2 + it, M = terms, J = correction_order, then rotated by
    exp(i theta(t)).  Defaults: M = max(100, 2 ceil(t)), J = 6, which keeps
    the last correction (and the roundoff floor) below 1e-10 for t <= 1e4.
    Raises ConvergenceError when the last Bernoulli correction exceeds 1e-12
    of the running value (scaled by max(1, |zeta|) so genuine zeros of Z
    cannot false-alarm the guard).
    """
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise DomainError(f"z_euler_maclaurin requires finite t >= 0, got {t}")
    if terms is None:
        terms = max(100, 2 * math.ceil(t))
    terms = int(terms)
    if terms < max(50, math.ceil(t)):
        raise DomainError(
            f"terms = {terms} too small at t = {t}; need at least max(50, ceil(t))")
    correction_order = int(correction_order)
    if not 1 <= correction_order <= 10:
        raise DomainError(f"correction_order must lie in [1, 10], got {correction_order}")

    s = complex(0.5, t)
    m = terms
    # Partial sum: n^(-s) = (cos(t ln n) - i sin(t ln n))/sqrt(n); numpy's
    # pairwise reduction keeps the roundoff of these O(m)-term sums benign.
    logn = _tables.log_k(m)
    rsqrt = _tables.rsqrt_k(m)
    phase = t * logn
    acc = complex(np.sum(rsqrt * np.cos(phase)), -np.sum(rsqrt * np.sin(phase)))
    m_pow = cmath.exp(-s * math.log(m))  # M^(-s)
    acc -= 0.5 * m_pow
    acc += m_pow * m / (s - 1.0)  # integral tail M^(1-s)/(s-1)

    # Bernoulli corrections: B_2j/(2j)! (s)_(2j-1) M^(-s-2j+1), built up
    # incrementally in j.
    rising = s  # (s)_1
    factorial = 2.0  # (2j)! at j = 1
    power = m_pow / m  # M^(-s-1) at j = 1
    last = 0.0
    for j, b2j in enumerate(_BERNOULLI_2J[:correction_order], start=1):
        term = (b2j / factorial) * rising * power
        acc += term
        last = abs(term)
        rising *= (s + (2 * j - 1)) * (s + 2 * j)
        factorial *= (2 * j + 1) * (2 * j + 2)
        power /= m * m
    if last > 1e-12 * max(1.0, abs(acc)):
        raise ConvergenceError(
            f"Euler-Maclaurin tail not converged at t = {t}: last correction "
            f"{last:.3e} vs value {abs(acc):.3e}; raise terms or correction_order")

    rotated = cmath.exp(1j * theta(t)) * acc
    return ReferenceValue(
        t=t,
        z=rotated.real,
        method="EM_ORACLE",
        err_estimate=max(last, 1e-16),
        im_residual=abs(rotated.imag),
    )
