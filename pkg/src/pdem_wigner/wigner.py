"""Wigner distribution functions of the Laguerre families.

Two independent routes are provided. wdf_closed evaluates the closed-form
double sum over MacDonald functions of complex order; wdf_numeric evaluates
the defining phase-space integral of the eigenfunction. They are compared in
the test suite and must agree.

Grids use a vectorized evaluation of the same Bessel integral representation
(trapezoid rule in the cosh variable, spectrally convergent here, with a
step-halving self check); pointwise wdf_closed stays the reference for it.

The momentum marginal integrates W over x with the plain dx measure; this is
the choice for which the marginal equals the squared momentum-space
wavefunction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NonConvergence, RealityViolation, TruncationError
from .eigenstates import Case, QuantumState, eigenfunction
from .massmodel import Branch, mu_at, x_of_mu
from .quadrature import integrate_line
from .specfun import PrecisionConfig, bessel_k

BOUND = 1.0 / math.pi
REALITY_TOL = 1e-10

_trapz = getattr(np, "trapezoid", None) or np.trapz


class PhaseSpacePoint(NamedTuple):
    x: float
    p: float


def _require_monotone(state: QuantumState):
    if state.profile.branch is not Branch.MONOTONE:
        raise DomainError("phase-space formulas hold on the monotone branch only")


def _sum_parameters(state: QuantumState):
    """Prefactor, coefficient table and kinematics of the closed-form sum.

    Returns (pref, coeffs, power0, order_scale): coeffs[(l1, l2)] multiplies
    z**(power0 + l1 + l2) * K(l1 - l2 - 1j * order_scale * p, z), where z is
    mu**2 for the oscillator-like family and 2*mu for the Coulomb-like one.
    """
    n, l, a = state.n, state.l, state.alpha
    coeffs = {}
    if state.case is Case.LI:
        pref = 2.0 * math.exp(math.lgamma(n + 1) - math.lgamma(n + l + 1.5)) / math.pi
        for l1 in range(n + 1):
            lb1 = (math.lgamma(n + l + 1.5) - math.lgamma(n - l1 + 1)
                   - math.lgamma(l + l1 + 1.5) - math.lgamma(l1 + 1))
            for l2 in range(n + 1):
                lb2 = (math.lgamma(n + l + 1.5) - math.lgamma(n - l2 + 1)
                       - math.lgamma(l + l2 + 1.5) - math.lgamma(l2 + 1))
                coeffs[(l1, l2)] = (-1.0) ** (l1 + l2) * math.exp(lb1 + lb2)
        power0 = l + 1.5
        order_scale = 2.0 / a
    else:
        pref = math.exp(math.lgamma(n + 1) - math.log(n + l + 1.0)
                        - math.lgamma(n + 2 * l + 2.0)) / math.pi
        for l1 in range(n + 1):
            lb1 = (math.lgamma(n + 2 * l + 2.0) - math.lgamma(n - l1 + 1)
                   - math.lgamma(2 * l + l1 + 2.0) - math.lgamma(l1 + 1))
            for l2 in range(n + 1):
                lb2 = (math.lgamma(n + 2 * l + 2.0) - math.lgamma(n - l2 + 1)
                       - math.lgamma(2 * l + l2 + 2.0) - math.lgamma(l2 + 1))
                coeffs[(l1, l2)] = (-1.0) ** (l1 + l2) * math.exp(lb1 + lb2)
        power0 = 2.0 * l + 3.0
        order_scale = 4.0 / a
    return pref, coeffs, power0, order_scale


def _z_of_x(state: QuantumState, x):
    mu = mu_at(state.profile, x)
    return mu * mu if state.case is Case.LI else 2.0 * mu


def wdf_closed(state: QuantumState, point, prec: PrecisionConfig | None = None) -> float:
    """Closed-form Wigner function at one phase-space point.

    The complex double sum is collapsed and its imaginary residue checked;
    RealityViolation signals an inconsistent special-function evaluation.
    """
    _require_monotone(state)
    x, p = float(point[0]), float(point[1])
    pref, coeffs, power0, order_scale = _sum_parameters(state)
    z = float(_z_of_x(state, x))
    kcache: dict[int, complex] = {}
    total = 0.0 + 0.0j
    for (l1, l2), c in coeffs.items():
        d = l1 - l2
        if d not in kcache:
            if -d in kcache:
                # K is even in the order and conjugates with it
                kcache[d] = complex(kcache[-d]).conjugate()
            else:
                kcache[d] = complex(bessel_k(complex(d, -order_scale * p), z, prec=prec))
        total += c * z ** (power0 + l1 + l2) * kcache[d]
    total *= pref
    if abs(total.imag) > REALITY_TOL * (1.0 + abs(total.real)):
        raise RealityViolation(
            f"imaginary residue {total.imag:.3e} at (x={x}, p={p})")
    return float(total.real)


def wdf_numeric(state: QuantumState, point, tol: float = 1e-10) -> float:
    """Wigner function by quadrature of the defining integral.

    Independent of the closed form: only the eigenfunction enters.
    """
    _require_monotone(state)
    x, p = float(point[0]), float(point[1])

    def pair(y):
        return eigenfunction(state, x - y / 2.0) * eigenfunction(state, x + y / 2.0)

    width = 8.0
    for _ in range(40):
        if abs(pair(width)) < 1e-18 and abs(pair(-width)) < 1e-18:
            break
        width *= 2.0
    else:
        raise NonConvergence("eigenfunction product does not decay in y")

    def integrand(y):
        return complex(math.cos(p * y), -math.sin(p * y)) * pair(y)

    res = integrate_line(integrand, -width, width, rel_tol=tol, abs_tol=1e-14)
    return float(np.real(res.value)) / (2.0 * math.pi)


# ---------------------------------------------------------------------------
# vectorized grid kernel

_TAIL_BUDGET = math.log(1e17) + 20.0


def _trapezoid_nodes(z_min: float, z_max: float, b_max: float,
                     d_max: int, pw_max: float) -> np.ndarray:
    """t grid for the cosh-variable integral shared by all (z, p) rows.

    The range solves z_min*cosh(t) - d_max*t = budget, where the budget also
    absorbs the z**pw amplification of rows with z > 1; the step resolves the
    fastest cos(b*t) oscillation.
    """
    target = _TAIL_BUDGET + max(0.0, pw_max * math.log(z_max))
    t = math.asinh((d_max + target) / z_min) + 1.0
    for _ in range(80):
        gp = z_min * math.sinh(t) - d_max
        if gp <= 0.0:
            t += 1.0
            continue
        step = (z_min * math.cosh(t) - d_max * t - target) / gp
        t -= step
        if abs(step) < 1e-9:
            break
    tmax = max(t, 0.5)
    h = min(0.05, math.pi / (6.0 * (b_max + 3.0)))
    nt = int(math.ceil(tmax / h)) + 1
    # odd count so the stride-2 subgrid is itself a trapezoid rule
    if nt % 2 == 0:
        nt += 1
    return np.linspace(0.0, tmax, nt)


def _kernel_pass(lnz, z, b, coeffs, power0, t):
    """One trapezoid evaluation of the raw closed-form sum on the (z, b) grid.

    z**power0 is folded into the exponential to keep intermediates in range.
    """
    h = t[1] - t[0]
    w = np.full(t.shape, h)
    w[0] = w[-1] = h / 2.0
    d_values = sorted({l1 - l2 for (l1, l2) in coeffs})
    with np.errstate(under="ignore"):
        base = power0 * lnz[:, None] - np.outer(z, np.cosh(t))   # (nz, nt)
        C = np.cos(np.outer(t, b))                               # (nt, nb)
        S = np.sin(np.outer(t, b))
        K = {}
        for d in d_values:
            if d < 0 and -d in K:
                K[d] = np.conj(K[-d])
                continue
            if d == 0:
                K[0] = np.asarray((np.exp(base) * w) @ C, dtype=complex)
                continue
            ep = np.exp(base + d * t) * w
            em = np.exp(base - d * t) * w
            K[d] = 0.5 * ((ep + em) @ C) - 0.5j * ((ep - em) @ S)
        total = np.zeros((z.size, b.size), dtype=complex)
        zpow = {}
        for (l1, l2), c in coeffs.items():
            k = l1 + l2
            if k not in zpow:
                zpow[k] = z ** k
            total += (c * zpow[k])[:, None] * K[l1 - l2]
    return total


def _grid_values(state: QuantumState, x_axis, p_axis, tol: float = 1e-11):
    """Closed-form W on a tensor grid with a step-halving self check.

    Returns (values, max_imag, error_estimate).
    """
    _require_monotone(state)
    pref, coeffs, power0, order_scale = _sum_parameters(state)
    z = np.atleast_1d(np.asarray(_z_of_x(state, np.asarray(x_axis, dtype=float)),
                                 dtype=float))
    if np.any(z <= 0.0) or not np.all(np.isfinite(z)):
        raise DomainError("grid maps outside the positive z domain")
    b = order_scale * np.atleast_1d(np.asarray(p_axis, dtype=float))
    lnz = np.log(z)
    d_max = max(state.n, 1)
    pw_max = power0 + 2.0 * state.n
    t = _trapezoid_nodes(float(z.min()), float(z.max()),
                         float(np.abs(b).max()), d_max, pw_max)
    err = math.inf
    fine = None
    for _ in range(5):
        fine = _kernel_pass(lnz, z, b, coeffs, power0, t)
        coarse = _kernel_pass(lnz, z, b, coeffs, power0, t[::2])
        err = pref * float(np.max(np.abs(fine - coarse)))
        if not math.isfinite(err):
            raise NonConvergence("grid kernel produced non-finite values")
        if err <= tol:
            break
        t = np.linspace(t[0], t[-1], 2 * (t.size - 1) + 1)
    else:
        raise NonConvergence(f"grid kernel self check stalled at {err:.3e}")
    vals = pref * fine
    max_imag = float(np.max(np.abs(vals.imag)))
    return np.ascontiguousarray(vals.real), max_imag, err


@dataclass
class PhaseSpaceGrid:
    """W sampled on a tensor phase-space grid, shaped (x, p)."""

    state: QuantumState
    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray
    max_imag_seen: float = 0.0

    def __post_init__(self):
        self.x_axis = np.asarray(self.x_axis, dtype=float)
        self.p_axis = np.asarray(self.p_axis, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.x_axis.size, self.p_axis.size):
            raise ValueError("values must be shaped (len(x_axis), len(p_axis))")
        if self.max_imag_seen >= 1e-9:
            raise RealityViolation(
                f"grid imaginary residue {self.max_imag_seen:.3e}")
        overshoot = float(np.max(np.abs(self.values))) - BOUND
        if overshoot > 1e-9:
            raise ValueError(f"|W| exceeds 1/pi by {overshoot:.3e}")


def evaluate_grid(state: QuantumState, x_range, p_range, nx: int, np_: int,
                  prec: PrecisionConfig | None = None) -> PhaseSpaceGrid:
    """Evaluate the closed-form W on a tensor grid.

    prec is accepted for signature parity; the grid path runs in double
    precision, which the internal self check validates (pointwise wdf_closed
    is the extended-precision route). The evaluation is one vectorized pass
    whose matrix products carry the parallelism; splitting the grid into
    worker blocks would let block-local truncation choices perturb the last
    bits, and byte-stable output outranks that.
    """
    if nx < 2 or np_ < 2:
        raise DomainError("grid needs at least 2 points per axis")
    x_axis = np.linspace(float(x_range[0]), float(x_range[1]), int(nx))
    p_axis = np.linspace(float(p_range[0]), float(p_range[1]), int(np_))
    values, max_imag, _ = _grid_values(state, x_axis, p_axis)
    return PhaseSpaceGrid(state, x_axis, p_axis, values, max_imag)


def marginal_position(grid: PhaseSpaceGrid, boundary_tol: float = 1e-12) -> np.ndarray:
    """Position marginal: trapezoid over p per grid column.

    The p window must already contain the support; |W| above boundary_tol on
    the first or last momentum row raises TruncationError.
    """
    edge = max(float(np.max(np.abs(grid.values[:, 0]))),
               float(np.max(np.abs(grid.values[:, -1]))))
    if edge > boundary_tol:
        raise TruncationError(f"|W| = {edge:.3e} at the p boundary; widen p_range")
    return _trapz(grid.values, grid.p_axis, axis=1)


def marginal_momentum(grid: PhaseSpaceGrid, boundary_tol: float = 1e-12) -> np.ndarray:
    """Momentum marginal: trapezoid over x per grid row (plain dx)."""
    edge = max(float(np.max(np.abs(grid.values[0, :]))),
               float(np.max(np.abs(grid.values[-1, :]))))
    if edge > boundary_tol:
        raise TruncationError(f"|W| = {edge:.3e} at the x boundary; widen x_range")
    return _trapz(grid.values, grid.x_axis, axis=0)


# ---------------------------------------------------------------------------
# truncation windows

def support_x_range(state: QuantumState, tail: float = 1e-13,
                    pad: float = 1.0) -> tuple[float, float]:
    """x window outside which the density falls below tail times its peak."""
    _require_monotone(state)
    mus = np.geomspace(1e-7, 80.0 / min(1.0, state.alpha), 4000)
    xs = x_of_mu(state.profile, mus)
    dens = np.square(eigenfunction(state, xs))
    peak = float(dens.max())
    if not (peak > 0.0 and math.isfinite(peak)):
        raise DomainError("eigenfunction density scan failed")
    keep = np.where(dens >= tail * peak)[0]
    # mus ascend, so xs descend: the first kept index is the largest x
    x_hi = float(xs[keep[0]]) + pad
    x_lo = float(xs[keep[-1]]) - pad
    return x_lo, x_hi


def choose_p_max(state: QuantumState, threshold: float = 5e-13) -> float:
    """Doubling search for a momentum cutoff with |W| below threshold.

    The scan is certified: the kernel's own error estimate is added to the
    measured edge value, so the cutoff is only accepted when the sum clears
    the threshold. Thresholds below the double-precision noise floor of the
    state raise NonConvergence instead of returning an uncertified cutoff.
    """
    _require_monotone(state)
    x_lo, x_hi = support_x_range(state, tail=1e-10, pad=0.5)
    x_scan = np.linspace(x_lo, x_hi, 41)
    p = 2.0 / state.alpha
    for _ in range(40):
        vals, _, err = _grid_values(state, x_scan, np.array([p]),
                                    tol=threshold / 4.0)
        if float(np.max(np.abs(vals))) + err <= threshold:
            return p
        p *= 2.0
    raise NonConvergence("no momentum cutoff found")


def normalization(state: QuantumState, prec: PrecisionConfig | None = None,
                  rel_tol: float = 1e-7) -> float:
    """Total phase-space mass by 2-D quadrature over a truncated rectangle.

    The rectangle is chosen so the discarded mass is negligible; W and all
    its derivatives vanish at the boundary, so the tensor trapezoid rule
    converges superalgebraically and is refined until two resolutions agree.
    Equals 1.
    """
    _require_monotone(state)
    x_lo, x_hi = support_x_range(state, tail=1e-14, pad=2.0)
    p_max = choose_p_max(state)
    nx, np_ = 129, 129
    prev = None
    for _ in range(6):
        x_axis = np.linspace(x_lo, x_hi, nx)
        p_axis = np.linspace(-p_max, p_max, np_)
        vals, _, _ = _grid_values(state, x_axis, p_axis, tol=rel_tol * 1e-3)
        total = float(_trapz(_trapz(vals, p_axis, axis=1), x_axis, axis=0))
        if prev is not None and abs(total - prev) <= 0.5 * rel_tol * max(1.0, abs(total)):
            return total
        prev = total
        nx = 2 * nx - 1
        np_ = 2 * np_ - 1
    raise NonConvergence("normalization quadrature did not stabilize")
