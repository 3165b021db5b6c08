"""Adaptive quadrature engines used throughout the package.

One-dimensional integrals go through QUADPACK's adaptive Gauss-Kronrod
scheme (scipy.integrate.quad); complex integrands are split into real and
imaginary parts. The two-dimensional engine subdivides panels adaptively and
estimates each panel with a tensor Gauss-Legendre pair of increasing order.
Infinite domains are reduced to finite ones by locating the decay of the
integrand, so callers integrating a non-decaying function get NonConvergence
rather than a silent wrong answer.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from .errors import NonConvergence

DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-14
DEFAULT_BUDGET = 2 ** 15


@dataclass(frozen=True)
class IntegralResult:
    """Value of an integral together with its error estimate and cost."""

    value: complex
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be non-negative")


def _quad_part(f, a, b, rel_tol, abs_tol, limit):
    """quad() wrapper returning (value, abserr, neval) and tolerating benign
    roundoff reports at tight tolerances."""
    out = quad(f, a, b, epsabs=abs_tol, epsrel=rel_tol, limit=limit, full_output=1)
    value, abserr, info = out[0], out[1], out[2]
    if len(out) > 3:
        # QUADPACK flagged something. Roundoff chatter at near-machine
        # tolerances is fine as long as the returned estimate is usable.
        if abserr > 50 * max(abs_tol, rel_tol * abs(value)) or not math.isfinite(value):
            raise NonConvergence(out[3].strip().split("\n")[0])
    return value, abserr, info["neval"]


def integrate_line(f, a, b, rel_tol=DEFAULT_REL_TOL, abs_tol=DEFAULT_ABS_TOL,
                   budget=DEFAULT_BUDGET):
    """Integrate f over the finite interval [a, b].

    f may return real or complex values. Returns an IntegralResult; raises
    NonConvergence when the adaptive engine cannot reach tolerance.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate_line requires finite endpoints")
    limit = max(10, budget // 21)
    probe = f(0.5 * (a + b))
    if isinstance(probe, complex) or np.iscomplexobj(probe):
        re, ere, n1 = _quad_part(lambda t: f(t).real, a, b, rel_tol, abs_tol, limit)
        im, eim, n2 = _quad_part(lambda t: f(t).imag, a, b, rel_tol, abs_tol, limit)
        return IntegralResult(complex(re, im), math.hypot(ere, eim), n1 + n2)
    val, err, n = _quad_part(f, a, b, rel_tol, abs_tol, limit)
    return IntegralResult(val, err, n)


def _find_decay(f, abs_tol, start=1.0):
    """Doubling search for an upper cutoff beyond which |f| is negligible."""
    upper = start
    floor = max(abs_tol * 1e-3, 1e-300)
    for _ in range(60):
        samples = [abs(f(upper * s)) for s in (1.0, 1.27, 1.73)]
        if max(samples) < floor:
            return upper
        upper *= 2.0
    raise NonConvergence("integrand does not decay on the half-line")


def integrate_halfline(f, rel_tol=DEFAULT_REL_TOL, abs_tol=DEFAULT_ABS_TOL,
                       budget=DEFAULT_BUDGET, upper=None):
    """Integrate f over [0, inf).

    The integrand must decay; the cutoff is either supplied by the caller
    (`upper`, for integrands whose decay point is known analytically) or found
    by a doubling search.
    """
    if upper is None:
        upper = _find_decay(f, abs_tol)
    return integrate_line(f, 0.0, float(upper), rel_tol=rel_tol, abs_tol=abs_tol,
                          budget=budget)


# ---------------------------------------------------------------------------
# 2-D engine: adaptive panels, tensor Gauss-Legendre with order doubling.

_GL_CACHE = {}


def _gl(n):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = leggauss(n)
    return _GL_CACHE[n]


def _panel_estimate(f, xa, xb, ya, yb, order):
    """Tensor Gauss-Legendre estimate of one panel at `order` and 2*order."""
    evals = 0
    results = []
    for m in (order, 2 * order):
        tx, wx = _gl(m)
        ty, wy = _gl(m)
        x = 0.5 * (xb - xa) * tx + 0.5 * (xa + xb)
        y = 0.5 * (yb - ya) * ty + 0.5 * (ya + yb)
        X, Y = np.meshgrid(x, y, indexing="ij")
        vals = np.asarray(f(X, Y))
        jac = 0.25 * (xb - xa) * (yb - ya)
        results.append(jac * np.einsum("i,j,ij->", wx, wy, vals))
        evals += m * m
    coarse, fine = results
    return fine, abs(fine - coarse), evals


def integrate_2d(f, x_interval, y_interval, rel_tol=1e-9, abs_tol=1e-12,
                 budget=4 * DEFAULT_BUDGET, order=12):
    """Integrate f over the rectangle x_interval x y_interval.

    f must accept broadcast numpy arrays (meshgrid evaluation); its values may
    be real or complex. Panels with the worst error estimates are split until
    tolerance or budget is exhausted.
    """
    xa, xb = map(float, x_interval)
    ya, yb = map(float, y_interval)
    if not all(map(math.isfinite, (xa, xb, ya, yb))):
        raise ValueError("integrate_2d requires a finite rectangle")

    val, err, evals = _panel_estimate(f, xa, xb, ya, yb, order)
    # heap entries: (-error, counter, bounds, value)
    heap = [(-err, 0, (xa, xb, ya, yb), val)]
    counter = 1
    while True:
        total = sum(entry[3] for entry in heap)
        total_err = sum(-entry[0] for entry in heap)
        if total_err <= max(abs_tol, rel_tol * abs(total)):
            return IntegralResult(total, total_err, evals)
        if evals >= budget:
            raise NonConvergence(
                f"2-D quadrature exhausted budget ({evals} evaluations, "
                f"error {total_err:.3e})")
        neg_err, _, (pa, pb, qa, qb), _ = heapq.heappop(heap)
        # split the longer side
        if (pb - pa) >= (qb - qa):
            mid = 0.5 * (pa + pb)
            children = [(pa, mid, qa, qb), (mid, pb, qa, qb)]
        else:
            mid = 0.5 * (qa + qb)
            children = [(pa, pb, qa, mid), (pa, pb, mid, qb)]
        for child in children:
            v, e, n = _panel_estimate(f, *child, order)
            evals += n
            heapq.heappush(heap, (-e, counter, child, v))
            counter += 1
