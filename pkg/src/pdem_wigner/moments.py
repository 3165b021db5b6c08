"""Phase-space moments and uncertainty products of the Laguerre families.

The closed-form route collapses the moment integrals of W into finite double
sums of Gamma functions over the Laguerre coefficient pairs. These sums
cancel violently for large angular parameter, so they are evaluated with
mpmath at a working precision scaled to the state, and every evaluation is
repeated with ten extra digits: disagreement raises PrecisionInsufficient
instead of returning a wrong number. Variances are also formed in extended
precision, since the mean squared and the second moment can share many
leading digits.

moment_oracle is the independent check: 2-D quadrature of the corresponding
Weyl symbol against the Wigner function itself. It never touches the
coefficient sums.

Moments refer to the canonical pair of the mass-deformed problem: the
coordinate is mu(x); its conjugate momentum has a purely imaginary mean, so
the variance combination adds the squared magnitude of the mean instead of
subtracting its square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DomainError, NonConvergence, PrecisionInsufficient
from .eigenstates import Case, QuantumState
from .wigner import _grid_values, _trapz, choose_p_max, support_x_range
from .weyl_verify import weyl_symbol

_VERIFY_EXTRA = 10
_NORM_GUARD = 1e-12
_MATCH_GUARD = 5e-13


def default_working_digits(state: QuantumState) -> int:
    """Decimal digits needed for the coefficient sums of a given state.

    The alternating sums lose roughly 1.2 * n * log10(l) digits to
    cancellation; 16 carry the result and 10 are margin.
    """
    scale = math.log10(max(abs(state.l), 10.0))
    return 16 + int(math.ceil(1.2 * state.n * scale)) + 10


@dataclass(frozen=True)
class MomentSet:
    """Moments and spreads of the canonical pair (deformed coordinate and its
    conjugate momentum), with the working precision that produced them."""

    coord_mean: float
    coord_sq_mean: float
    momentum_mean: complex
    momentum_sq_mean: float
    coord_spread: float
    momentum_spread: float
    product: float
    working_digits: int


@dataclass(frozen=True)
class UncertaintyResult:
    case: Case
    n: int
    l: float
    coord_spread: float
    momentum_spread: float
    product: float


def _raw_moments(state: QuantumState, dps: int):
    """One mpmath evaluation of the moment sums at dps digits.

    Returns mpf values (coord, coord_sq, momentum_imag, momentum_sq,
    coord_var, momentum_var, norm_residual); the variances are formed before
    leaving extended precision.
    """
    n = state.n
    with mpmath.workdps(dps):
        l = mpmath.mpf(state.l)
        g = mpmath.gamma
        s0 = mpmath.mpf(0)
        s_mu = mpmath.mpf(0)
        s_mu2 = mpmath.mpf(0)
        s_p = mpmath.mpf(0)
        s_p2 = mpmath.mpf(0)
        if state.case is Case.LI:
            pref = g(n + 1) / g(n + l + 1.5)
            for l1 in range(n + 1):
                b1 = g(n + l + 1.5) / (g(n - l1 + 1) * g(l + l1 + 1.5))
                for l2 in range(n + 1):
                    b2 = g(n + l + 1.5) / (g(n - l2 + 1) * g(l + l2 + 1.5))
                    gam = (pref * (-1) ** (l1 + l2) * b1 * b2
                           / (mpmath.factorial(l1) * mpmath.factorial(l2)))
                    s = l + l1 + l2
                    s0 += gam * g(s + 1.5)
                    s_mu += gam * g(s + 2)
                    s_mu2 += gam * g(s + 2.5)
                    s_p += gam * (l1 - l2 + 0.5) * g(s + 1)
                    s_p2 += gam * (l + 0.5 - l1 * l1 - l2 * l2
                                   + 2 * l1 * l2 + 2 * l1) * g(s + 0.5)
        else:
            pref = g(n + 1) / ((n + l + 1) * g(n + 2 * l + 2))
            for l1 in range(n + 1):
                b1 = g(n + 2 * l + 2) / (g(n - l1 + 1) * g(2 * l + l1 + 2))
                for l2 in range(n + 1):
                    b2 = g(n + 2 * l + 2) / (g(n - l2 + 1) * g(2 * l + l2 + 2))
                    gam = (pref * (-1) ** (l1 + l2) * b1 * b2
                           / (mpmath.factorial(l1) * mpmath.factorial(l2)))
                    s = 2 * l + l1 + l2
                    s0 += gam * g(s + 3) / 2
                    s_mu += gam * g(s + 4) / 4
                    s_mu2 += gam * g(s + 5) / 8
                    s_p += gam * (l1 - l2 + 1) * g(s + 2) / 2
                    s_p2 += gam * (2 * l + 1 - l1 * l1 - l2 * l2
                                   - l1 + 3 * l2 + 2 * l1 * l2) * g(s + 1) / 2
        var_mu = s_mu2 - s_mu * s_mu
        var_p = s_p2 + s_p * s_p
        return s_mu, s_mu2, s_p, s_p2, var_mu, var_p, s0 - 1


def moment_set(state: QuantumState, prec_digits: int | None = None,
               verify: bool = True) -> MomentSet:
    """Closed-form moments with a built-in precision audit.

    The zeroth moment must come out as 1, both variances must be positive,
    and a repeat run with extra digits must agree; any of these failing
    raises PrecisionInsufficient.
    """
    dps = default_working_digits(state) if prec_digits is None else int(prec_digits)
    if dps < 16:
        raise DomainError("working precision below double")
    mu1, mu2, p1, p2, var_mu, var_p, resid = _raw_moments(state, dps)
    if abs(resid) > _NORM_GUARD:
        raise PrecisionInsufficient(
            f"zeroth moment off by {mpmath.nstr(resid, 3)} at {dps} digits")
    if var_mu <= 0 or var_p <= 0:
        raise PrecisionInsufficient(
            f"nonpositive variance at {dps} digits "
            f"(coord {mpmath.nstr(var_mu, 3)}, momentum {mpmath.nstr(var_p, 3)})")
    if verify:
        check = _raw_moments(state, dps + _VERIFY_EXTRA)
        pairs = ((mu1, check[0], "coord"), (mu2, check[1], "coord_sq"),
                 (p1, check[2], "momentum"), (p2, check[3], "momentum_sq"),
                 (var_mu, check[4], "coord_var"), (var_p, check[5], "momentum_var"))
        for a, b, tag in pairs:
            gap = abs(float(a - b))
            if gap > _MATCH_GUARD * max(1.0, abs(float(b))):
                raise PrecisionInsufficient(
                    f"{tag} moved by {gap:.3e} when adding "
                    f"{_VERIFY_EXTRA} digits to {dps}")
    spread_mu = float(mpmath.sqrt(var_mu))
    spread_p = float(mpmath.sqrt(var_p))
    return MomentSet(coord_mean=float(mu1), coord_sq_mean=float(mu2),
                     momentum_mean=complex(0.0, float(p1)),
                     momentum_sq_mean=float(p2),
                     coord_spread=spread_mu, momentum_spread=spread_p,
                     product=spread_mu * spread_p, working_digits=dps)


def uncertainty_result(state: QuantumState, prec_digits: int | None = None) -> UncertaintyResult:
    ms = moment_set(state, prec_digits=prec_digits)
    return UncertaintyResult(case=state.case, n=state.n, l=state.l,
                             coord_spread=ms.coord_spread,
                             momentum_spread=ms.momentum_spread,
                             product=ms.product)


def uncertainty_product(state: QuantumState, prec_digits: int | None = None) -> float:
    return uncertainty_result(state, prec_digits=prec_digits).product


def asymptotic_gap(state: QuantumState, prec_digits: int | None = None) -> float:
    """Uncertainty product minus its large-l limit n + 1/2."""
    return uncertainty_product(state, prec_digits=prec_digits) - (state.n + 0.5)


def uncertainty_table(states) -> list[UncertaintyResult]:
    """Uncertainty products for an iterable of states. The products do not
    depend on the mass decay rate, which cancels within the canonical pair."""
    return [uncertainty_result(s) for s in states]


# ---------------------------------------------------------------------------
# independent quadrature route

def coefficient(case: Case, n: int, l: float, l1: int, l2: int) -> tuple[float, float]:
    """Sign and log magnitude of one coefficient of the moment sums.

    Exposed so extended-precision consumers can exponentiate at their own
    working precision.
    """
    if not (0 <= l1 <= n and 0 <= l2 <= n):
        raise DomainError("coefficient indices must lie in [0, n]")
    lg = math.lgamma
    sign = -1.0 if (l1 + l2) % 2 else 1.0
    if case is Case.LI:
        logmag = (lg(n + 1) + lg(n + l + 1.5)
                  - lg(n - l1 + 1) - lg(l + l1 + 1.5)
                  - lg(n - l2 + 1) - lg(l + l2 + 1.5)
                  - lg(l1 + 1) - lg(l2 + 1))
    else:
        logmag = (lg(n + 1) - math.log(n + l + 1.0) + lg(n + 2 * l + 2)
                  - lg(n - l1 + 1) - lg(2 * l + l1 + 2)
                  - lg(n - l2 + 1) - lg(2 * l + l2 + 2)
                  - lg(l1 + 1) - lg(l2 + 1))
    return sign, logmag


_ORACLE_NAMES = ("coord", "coord_sq", "momentum", "momentum_sq")


def moment_oracle_set(state: QuantumState, which=_ORACLE_NAMES,
                      tol: float = 1e-7) -> dict:
    """Moments by phase-space quadrature: Weyl symbols times W.

    Trapezoid over a tensor grid whose boundary carries no weight, refined
    until every requested total agrees across two resolutions. The W grid is
    shared by all symbols, so asking for the full set costs the same as one.
    Double precision, so only moderate states are accepted.
    """
    for name in which:
        if name not in _ORACLE_NAMES:
            raise DomainError(
                f"unknown moment {name!r}; choose from {_ORACLE_NAMES}")
    if state.n > 4 or state.l > 10.5:
        raise DomainError("quadrature oracle is limited to n <= 4, l <= 10.5")
    a = state.alpha
    x_lo, x_hi = support_x_range(state, tail=1e-12, pad=3.0)
    # the edge just has to be negligible against the 1e-6 comparison scale
    p_max = 1.5 * choose_p_max(state, threshold=1e-10)
    nx, np_ = 129, 129
    prev = None
    for _ in range(6):
        x_axis = np.linspace(x_lo, x_hi, nx)
        p_axis = np.linspace(-p_max, p_max, np_)
        # tol/50 keeps the kernel bias far below the stabilization check
        # without demanding more than double precision can certify
        w_vals, _, _ = _grid_values(state, x_axis, p_axis, tol=tol / 50.0)
        totals = {}
        for name in which:
            sym = weyl_symbol(name, x_axis[:, None], p_axis[None, :], a)
            inner = _trapz(sym * w_vals, p_axis, axis=1)
            totals[name] = complex(_trapz(inner, x_axis, axis=0))
        if prev is not None and all(
                abs(totals[k] - prev[k]) <= 0.5 * tol * max(1.0, abs(totals[k]))
                for k in which):
            return totals
        prev = totals
        nx = 2 * nx - 1
        np_ = 2 * np_ - 1
    raise NonConvergence("moment quadrature did not stabilize")


def moment_oracle(state: QuantumState, which: str, tol: float = 1e-7) -> complex:
    """One moment by the phase-space quadrature route."""
    return moment_oracle_set(state, which=(which,), tol=tol)[which]
