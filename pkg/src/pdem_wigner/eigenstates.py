"""Bound states of the two generalized-Laguerre solution families.

Family LI is oscillator-like (equally spaced spectrum E_n = 2n), family LIII
is Coulomb-like with the frequency convention that ties its potential depth to
the level: b = n + l + 1, so each LIII level lives in its own effective
potential. Eigenfunctions are always evaluated through the auxiliary
coordinate mu.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, LatticeTooCoarse
from .massmodel import Branch, MassProfile, mass_at, mu_at
from .specfun import laguerre


class Case(enum.Enum):
    LI = "I"
    LIII = "III"


@dataclass(frozen=True)
class QuantumState:
    """One bound state: family, level index n, angular parameter l, profile."""

    case: Case
    n: int
    l: float
    profile: MassProfile

    def __post_init__(self):
        if not isinstance(self.case, Case):
            raise DomainError("case must be a Case value")
        if self.n != int(self.n) or self.n < 0:
            raise DomainError("n must be a non-negative integer")
        if not math.isfinite(self.l):
            raise DomainError("l must be finite")
        if self.case is Case.LI and not self.l > -1.5:
            raise DomainError("family LI requires l > -3/2")
        if self.case is Case.LIII and not self.l > -1.0:
            raise DomainError("family LIII requires l > -1")

    @property
    def alpha(self) -> float:
        return self.profile.alpha

    @property
    def laguerre_parameter(self) -> float:
        """Upper parameter of the state's Laguerre polynomial."""
        return self.l + 0.5 if self.case is Case.LI else 2.0 * self.l + 1.0

    @property
    def coulomb_b(self) -> float:
        """Potential-strength parameter of family LIII (b = n + l + 1)."""
        if self.case is Case.LIII:
            return self.n + self.l + 1.0
        raise DomainError("coulomb_b is defined for family LIII only")


def energy(state: QuantumState) -> float:
    """Bound-state energy with the unit-frequency convention."""
    if state.case is Case.LI:
        return 2.0 * state.n
    n, l = state.n, state.l
    return (n + l + 1.0) ** 2 / (2.0 * (l + 1.0) ** 2) - 0.5


def normalization_constant(state: QuantumState) -> float:
    """Positive constant making the eigenfunction unit-norm on the Monotone
    branch (with the measure dx)."""
    a, n, l = state.alpha, state.n, state.l
    if state.case is Case.LI:
        lg = math.log(a) + math.lgamma(n + 1) - math.lgamma(n + l + 1.5)
    else:
        lg = (math.log(a) - math.log(4.0 * (n + l + 1.0))
              + math.lgamma(n + 1) - math.lgamma(n + 2 * l + 2.0))
    return math.exp(0.5 * lg)


def _signed_power(mu, power):
    """mu**power for possibly negative mu; demands an integer power there."""
    mu = np.asarray(mu, dtype=float)
    if np.all(mu > 0):
        out = mu ** power
        return out
    if power != round(power):
        raise DomainError(
            "signed-branch eigenfunctions need an integer power l + 3/2 "
            f"(got {power})")
    return np.sign(mu) ** int(round(power)) * np.abs(mu) ** power


def eigenfunction(state: QuantumState, x):
    """Real eigenfunction psi_n(x), evaluated through mu(x).

    On the Monotone branch this is exact and unit-norm. On the PiecewiseAbs
    branch the literal signed mu of the piecewise coordinate is used (only
    meaningful when l + 3/2 is an integer); intended for qualitative plots.
    """
    mu = mu_at(state.profile, x)
    n, l = state.n, state.l
    N = normalization_constant(state)
    if state.case is Case.LI:
        body = _signed_power(mu, l + 1.5) * np.exp(-np.square(mu) / 2.0)
        poly = laguerre(n, l + 0.5, np.square(mu))
    else:
        body = _signed_power(2.0 * np.asarray(mu), l + 1.5) * np.exp(-np.asarray(mu))
        poly = laguerre(n, 2 * l + 1.0, 2.0 * np.asarray(mu))
    out = N * body * poly
    return out if np.ndim(out) else float(out)


def effective_potential(state: QuantumState, x):
    """Effective potential whose weighted Schrodinger equation the state
    solves; includes the mass-derivative bracket term."""
    mu = np.asarray(mu_at(state.profile, x), dtype=float)
    a, l = state.alpha, state.l
    m = mass_at(state.profile, x)
    bracket = -(3.0 * a * a / 32.0) / np.asarray(m)
    if state.case is Case.LI:
        out = -(l + 1.5) + np.square(mu) / 2.0 \
            + l * (l + 1.0) / (2.0 * np.square(mu)) + bracket
    else:
        b = state.coulomb_b
        out = b * b / (2.0 * (l + 1.0) ** 2) - b / mu \
            + l * (l + 1.0) / (2.0 * np.square(mu)) + bracket
    return out if out.ndim else float(out)


def _residual_on(state, lattice, h):
    psi = eigenfunction(state, lattice)
    interior = lattice[1:-1]
    m = np.asarray(mass_at(state.profile, interior))
    # d(ln m)/dx: -alpha on the Monotone branch, -alpha sign(x) piecewise
    if state.profile.branch is Branch.MONOTONE:
        dlnm = -state.alpha * np.ones_like(interior)
    else:
        dlnm = -state.alpha * np.sign(interior)
    d2 = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / (h * h)
    d1 = (psi[2:] - psi[:-2]) / (2.0 * h)
    V = np.asarray(effective_potential(state, interior))
    E = energy(state)
    r = -d2 / 2.0 + (dlnm / 2.0) * d1 + m * (V - E) * psi[1:-1]
    scale_field = m * (E if E != 0.0 else V) * psi[1:-1]
    scale = np.max(np.abs(scale_field))
    if scale == 0.0:
        raise DomainError("residual scale vanished on this lattice")
    return float(np.max(np.abs(r)) / scale)


def se_residual(state: QuantumState, x_lattice, check_order: bool = False) -> float:
    """Normalized residual of the weighted Schrodinger equation on a uniform
    lattice, by central differences.

    With check_order=True the lattice is refined once and LatticeTooCoarse is
    raised unless the residual shrinks roughly like h^2.
    """
    lattice = np.asarray(x_lattice, dtype=float)
    if lattice.ndim != 1 or lattice.size < 3:
        raise DomainError("need a 1-D lattice with at least 3 points")
    steps = np.diff(lattice)
    h = float(steps[0])
    if h <= 0 or not np.allclose(steps, h, rtol=1e-9, atol=0.0):
        raise DomainError("lattice must be uniform and increasing")
    r = _residual_on(state, lattice, h)
    if check_order:
        fine = np.linspace(lattice[0], lattice[-1], 2 * (lattice.size - 1) + 1)
        r_fine = _residual_on(state, fine, h / 2.0)
        # exact order is 4; demand at least a factor 2.5 to allow noise
        if r_fine > 0 and r / r_fine < 2.5:
            raise LatticeTooCoarse(
                f"residual ratio {r / r_fine:.2f} under refinement (expected ~4)")
    return r
