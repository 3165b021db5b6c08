"""Exponentially decaying effective-mass profile and its auxiliary coordinate.

The Monotone branch takes m(x) = exp(-alpha x) everywhere, for which the
auxiliary coordinate mu = (2/alpha) exp(-alpha x / 2) is positive and strictly
decreasing; every closed form in this package is exact on that branch. The
PiecewiseAbs branch (m = exp(-alpha |x|)) exists only to draw figure-1-style
wells and keeps the literal signed piecewise coordinate, which is
discontinuous at the origin.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


class Branch(enum.Enum):
    MONOTONE = "monotone"
    PIECEWISE_ABS = "piecewise-abs"


@dataclass(frozen=True)
class MassProfile:
    alpha: float
    branch: Branch = Branch.MONOTONE

    def __post_init__(self):
        if not (isinstance(self.alpha, (int, float)) and math.isfinite(self.alpha)
                and self.alpha > 0):
            raise DomainError("alpha must be a positive finite real")
        if not isinstance(self.branch, Branch):
            raise DomainError("branch must be a Branch value")


def mass_at(profile: MassProfile, x):
    """Effective mass m(x)."""
    x = np.asarray(x, dtype=float)
    if profile.branch is Branch.MONOTONE:
        out = np.exp(-profile.alpha * x)
    else:
        out = np.exp(-profile.alpha * np.abs(x))
    return out if out.ndim else float(out)


def mu_at(profile: MassProfile, x):
    """Auxiliary coordinate mu(x).

    Monotone branch: (2/alpha) exp(-alpha x/2) > 0. PiecewiseAbs branch keeps
    the signed piecewise form (negative for x > 0), with the x = 0 value taken
    from the left.
    """
    x = np.asarray(x, dtype=float)
    a = profile.alpha
    if profile.branch is Branch.MONOTONE:
        out = (2.0 / a) * np.exp(-a * x / 2.0)
    else:
        out = np.where(x > 0,
                       -(2.0 / a) * np.exp(-a * x / 2.0),
                       (2.0 / a) * np.exp(a * x / 2.0))
    return out if out.ndim else float(out)


def x_of_mu(profile: MassProfile, mu):
    """Inverse of mu_at on the Monotone branch."""
    if profile.branch is not Branch.MONOTONE:
        raise DomainError("x_of_mu is defined only on the Monotone branch")
    mu = np.asarray(mu, dtype=float)
    if np.any(mu <= 0):
        raise DomainError("Monotone-branch mu must be positive")
    a = profile.alpha
    out = -(2.0 / a) * np.log(a * mu / 2.0)
    return out if out.ndim else float(out)
