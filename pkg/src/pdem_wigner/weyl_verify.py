"""Weyl symbols of the canonical pair and the master-integral cross check.

The deformed coordinate mu(x) and its conjugate momentum have closed-form
phase-space symbols; weyl_symbol evaluates them and the test suite verifies
the quadratic identity between the momentum symbols. poisson_bracket_gap
checks the canonical structure of the underlying classical pair by finite
differences.

b1_lhs_numeric and b1_rhs_closed are two independent evaluations of the
moment-generating line integral of a product of two Gamma functions against
a monomial: direct complex quadrature on one side, a partition sum with
terminating Gauss series on the other. Both sides are exposed so tests can
compare them; neither is ever used to bypass the other.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .massmodel import MassProfile, mu_at
from .quadrature import integrate_line
from .specfun import hyp2f1_terminating, ln_gamma, partitions

_SYMBOL_NAMES = ("coord", "coord_sq", "momentum", "momentum_sq")


def weyl_symbol(which: str, x, p, alpha: float):
    """Phase-space symbol of a canonical operator on the monotone branch.

    which: 'coord' (mu), 'coord_sq' (mu^2), 'momentum' (conjugate momentum),
    'momentum_sq'. The coordinate symbols are real; the momentum symbols
    carry imaginary parts proportional to inverse powers of mu.
    Accepts scalars or numpy arrays broadcast over (x, p).
    """
    if which not in _SYMBOL_NAMES:
        raise ValueError(f"unknown symbol {which!r}; choose from {_SYMBOL_NAMES}")
    prof = MassProfile(alpha)
    mu = mu_at(prof, x)
    if which == "coord":
        return mu + 0j
    if which == "coord_sq":
        return mu * mu + 0j
    inv = 1.0 / mu
    if which == "momentum":
        return (2.0 / alpha) * inv * p + 0.5j * inv
    lin = (2.0 / alpha) * inv * p
    return lin * lin + (2.0j / alpha) * inv * inv * p


class WeylSymbol:
    """One named symbol bound to a mass decay rate."""

    def __init__(self, which: str, alpha: float):
        if which not in _SYMBOL_NAMES:
            raise ValueError(f"unknown symbol {which!r}")
        self.which = which
        self.alpha = float(alpha)

    def at(self, x, p):
        return weyl_symbol(self.which, x, p, self.alpha)


def poisson_bracket_gap(x: float, p: float, alpha: float, h: float = 1e-5) -> float:
    """|{coord, momentum} - 1| by central differences.

    The conjugate momentum is p over the slope of the coordinate, so the
    bracket is identically 1; the returned gap is pure discretization and
    rounding noise, O(h^2) at worst.
    """
    prof = MassProfile(alpha)

    def mu(s: float) -> float:
        return float(mu_at(prof, s))

    def slope(s: float) -> float:
        return (mu(s + h) - mu(s - h)) / (2.0 * h)

    def cm(s: float, q: float) -> float:
        return q / slope(s)

    dmu_dx = slope(x)
    dmu_dp = 0.0
    dcm_dp = (cm(x, p + h) - cm(x, p - h)) / (2.0 * h)
    dcm_dx = (cm(x + h, p) - cm(x - h, p)) / (2.0 * h)
    return abs(dmu_dx * dcm_dp - dcm_dx * dmu_dp - 1.0)


# ---------------------------------------------------------------------------
# master line integral: Gamma pair against a monomial

def _lhs_cutoff(m: int, a: float, b: float) -> float:
    # integrand magnitude ~ x^(m+a+b-1) e^(-pi x); find where it is < 1e-19
    X = 10.0
    expo = m + a + b - 1.0
    while expo * math.log(X) - math.pi * X > math.log(1e-19):
        X += 1.0
        if X > 500.0:
            break
    return X


def b1_lhs_numeric(m: int, a: float, b: float, tol: float = 1e-11) -> complex:
    """Direct quadrature of x^m Gamma(a - ix) Gamma(b + ix) over the line."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError("both Gamma shifts must be positive")
    X = _lhs_cutoff(m, a, b)

    def f(x: float) -> complex:
        g = cmath.exp(ln_gamma(complex(a, -x)) + ln_gamma(complex(b, x)))
        return x ** m * g

    res = integrate_line(f, -X, X, rel_tol=tol, abs_tol=1e-14)
    return complex(res.value)


def b1_rhs_closed(m: int, a: float, b: float) -> complex:
    """Partition-sum closed form of the same line integral.

    Sums (-1)^M / prod(i_nu! (nu!)^i_nu) * Gamma(b+M) * F(-M, a+b; b; 1/2)
    over the partitions of m, then applies the m!-pi-phase prefactor. The
    result is real for even m and purely imaginary for odd m.
    """
    if a <= 0.0 or b <= 0.0:
        raise ValueError("both Gamma shifts must be positive")
    total = 0.0
    for part in partitions(m):
        M = part.M
        denom = 1.0
        for nu, mult in enumerate(part.multiplicities, start=1):
            denom *= math.factorial(mult) * math.factorial(nu) ** mult
        term = math.gamma(b + M) * hyp2f1_terminating(M, a + b, b, 0.5)
        total += (-1.0) ** M * term / denom
    phase = (-1j) ** m
    pref = (math.factorial(m) * math.pi * 2.0 ** (1.0 - a - b)
            * math.gamma(a + b) / math.gamma(b))
    return complex(phase * pref * total)
