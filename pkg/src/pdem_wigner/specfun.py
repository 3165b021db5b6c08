"""Special functions with a configurable-precision floor.

Everything here is plain double precision unless a PrecisionConfig with more
working digits is supplied, in which case mpmath carries the arithmetic. The
MacDonald function of complex order is evaluated through its real-axis
integral representation; no recurrence in the order is ever used (unstable
for complex order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.special import loggamma as _scipy_loggamma

from .errors import DomainError, PoleError
from .quadrature import integrate_halfline


DOUBLE_DIGITS = 16


@dataclass(frozen=True)
class PrecisionConfig:
    """Number of working decimal digits; 16 (double precision) is the floor."""

    working_digits: int = DOUBLE_DIGITS

    def __post_init__(self):
        if self.working_digits < DOUBLE_DIGITS:
            raise ValueError("working_digits must be at least 16")

    @property
    def is_double(self):
        return self.working_digits <= DOUBLE_DIGITS

    def workdps(self):
        """mpmath context manager pinned to this precision."""
        return mpmath.workdps(self.working_digits)


def _is_nonpositive_integer(z) -> bool:
    re, im = (z.real, z.imag) if isinstance(z, complex) else (float(z), 0.0)
    return im == 0.0 and re <= 0.0 and re == int(re)


def ln_gamma(z, prec: PrecisionConfig | None = None):
    """Principal branch of ln Gamma(z) for real or complex z.

    Raises PoleError at nonpositive integers. With a PrecisionConfig beyond
    the double floor the result is an mpmath number at that precision.
    """
    if _is_nonpositive_integer(z):
        raise PoleError(f"ln_gamma pole at z={z}")
    if prec is not None and not prec.is_double:
        with prec.workdps():
            return mpmath.loggamma(z)
    if isinstance(z, complex):
        return complex(_scipy_loggamma(z))
    z = float(z)
    if z > 0:
        return math.lgamma(z)
    # negative non-integer real: Gamma may be negative, so the log is complex
    return complex(_scipy_loggamma(complex(z)))


def gen_binomial(a, k: int, prec: PrecisionConfig | None = None):
    """Generalized binomial coefficient C(a, k) = a(a-1)...(a-k+1)/k!."""
    if k < 0 or k != int(k):
        raise DomainError("k must be a non-negative integer")
    k = int(k)
    if prec is not None and not prec.is_double:
        with prec.workdps():
            ff = mpmath.mpf(1)
            for i in range(k):
                ff *= mpmath.mpf(a) - i
            return ff / mpmath.factorial(k)
    ff = 1.0
    for i in range(k):
        ff *= a - i
    return ff / math.factorial(k)


def laguerre(n: int, a, x):
    """Generalized Laguerre polynomial L_n^{(a)}(x) by its series form.

    x may be a float or an ndarray. Scalar sums are compensated (math.fsum);
    array input evaluates the same coefficients pointwise.
    """
    if n < 0 or n != int(n):
        raise DomainError("degree n must be a non-negative integer")
    n = int(n)
    # coefficient of x^k: c_0 = C(n+a, n), c_{k+1} = -c_k (n-k)/((a+k+1)(k+1))
    coeffs = [gen_binomial(n + a, n)]
    for k in range(n):
        coeffs.append(-coeffs[-1] * (n - k) / ((a + k + 1) * (k + 1)))
    if np.ndim(x) == 0:
        xf = float(x)
        return math.fsum(c * xf ** k for k, c in enumerate(coeffs))
    xs = np.asarray(x, dtype=float)
    flat = xs.ravel()
    out = np.array([math.fsum(c * t ** k for k, c in enumerate(coeffs)) for t in flat])
    return out.reshape(xs.shape)


def bessel_k_cutoff(nu, z: float, tail: float = 1e-16) -> float:
    """Truncation point of the K_nu integral representation.

    The integrand envelope is exp(-z cosh t + |Re nu| t); the cutoff solves
    z cosh(t) - |Re nu| t = ln(1/tail) + 20 by Newton iteration.
    """
    target = math.log(1.0 / tail) + 20.0
    r = abs(complex(nu).real)
    t = max(math.asinh((r + target) / z), 1.0)
    for _ in range(60):
        g = z * math.cosh(t) - r * t - target
        gp = z * math.sinh(t) - r
        if gp <= 0.0:
            t += 1.0
            continue
        step = g / gp
        t -= step
        if abs(step) < 1e-9:
            break
    return max(t, 1.0)


def bessel_k(nu, z, prec: PrecisionConfig | None = None,
             rel_tol: float = 1e-11, abs_tol: float = 1e-15):
    """MacDonald function K_nu(z) for complex order and z > 0.

    Evaluated as integral over [0, inf) of exp(-z cosh t) cosh(nu t) dt through
    the half-line quadrature engine (truncated at bessel_k_cutoff).
    """
    z = float(z)
    if not (z > 0.0) or not math.isfinite(z):
        raise DomainError("bessel_k requires z > 0")
    nu = complex(nu)
    tmax = bessel_k_cutoff(nu, z)
    if prec is not None and not prec.is_double:
        with prec.workdps():
            mnu = mpmath.mpc(nu)
            f = lambda t: mpmath.exp(-z * mpmath.cosh(t)) * mpmath.cosh(mnu * t)
            # split at the oscillation scale of cos(Im nu * t)
            b = abs(nu.imag)
            pieces = min(max(int(b * tmax / math.pi) + 1, 1), 400)
            points = [tmax * i / pieces for i in range(pieces + 1)]
            return mpmath.quad(f, points)

    def integrand(t):
        return complex(np.exp(-z * np.cosh(t)) * np.cosh(nu * t))

    res = integrate_halfline(integrand, rel_tol=rel_tol, abs_tol=abs_tol, upper=tmax)
    return complex(res.value)


def hyp2f1_terminating(M: int, b, c, x, prec: PrecisionConfig | None = None):
    """Terminating Gauss series 2F1(-M, b; c; x), a degree-M polynomial in x."""
    if M < 0 or M != int(M):
        raise DomainError("M must be a non-negative integer")
    M = int(M)
    if c == int(c) and -(M - 1) <= c <= 0:
        raise PoleError(f"2F1 denominator pole: c={c} with M={M}")
    if prec is not None and not prec.is_double:
        with prec.workdps():
            xm = mpmath.mpmathify(x)
            term = mpmath.mpf(1)
            total = mpmath.mpf(0)
            for k in range(M + 1):
                total += term
                term *= mpmath.mpf(-M + k) * (mpmath.mpf(b) + k) * xm \
                    / ((mpmath.mpf(c) + k) * (k + 1))
            return total
    terms = []
    term = 1.0
    for k in range(M + 1):
        terms.append(term)
        term *= (-M + k) * (b + k) * x / ((c + k) * (k + 1))
    return math.fsum(terms)


@dataclass(frozen=True)
class PartitionVector:
    """Multiplicity vector (i_1, ..., i_m) of a partition of m."""

    multiplicities: tuple

    def __post_init__(self):
        if any(i < 0 or i != int(i) for i in self.multiplicities):
            raise ValueError("multiplicities must be non-negative integers")

    @property
    def total(self) -> int:
        """The partitioned integer m = sum(nu * i_nu)."""
        return sum(nu * i for nu, i in enumerate(self.multiplicities, start=1))

    @property
    def M(self) -> int:
        """Number of parts M = sum(i_nu)."""
        return sum(self.multiplicities)


def partitions(m: int):
    """All partitions of m as multiplicity vectors, in descending
    lexicographic order of (i_1, ..., i_m). partitions(0) is the single empty
    vector."""
    if m < 0 or m != int(m):
        raise DomainError("m must be a non-negative integer")
    m = int(m)
    if m == 0:
        return (PartitionVector(()),)
    out = []

    def rec(nu, remaining, acc):
        if nu > m:
            if remaining == 0:
                out.append(PartitionVector(tuple(acc)))
            return
        for count in range(remaining // nu, -1, -1):
            rec(nu + 1, remaining - nu * count, acc + [count])

    rec(1, m, [])
    return tuple(out)
