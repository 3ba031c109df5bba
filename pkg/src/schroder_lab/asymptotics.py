"""Divergence diagnostics for the s = 1 series and the principal-value
integral behind its factorial growth.

The s -> 1 coefficients c_n look convergent (apparent radius ~ 1/2) out to
n ~ 25, but |c_n|^(1/n) starts growing linearly past n ~ 30: the series is
asymptotic, with |c_n| ~ L^n exp(n ln n) tracking

    f_n = 2^(-n/2) e^(-3n/2) n!.

That growth law is the asymptotic expansion of

    I(x) = integral_0^inf e^(-y) / (1 - x y / sqrt(2 e^3)) dy ~ sum f_n x^n,

which has a simple pole on the contour for x > 0; the Cauchy principal value
assigns it a finite number for every real x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import NonConvergence
from .series import s1_coefficients

_POLE_SCALE = math.sqrt(2.0 * math.e**3)


def reference_growth(n) -> float:
    """f_n = 2^(-n/2) e^(-3n/2) n! (via lgamma; exact enough for any n)."""
    n = np.asarray(n, dtype=float)
    out = np.exp(-0.5 * n * math.log(2.0) - 1.5 * n + np.vectorize(math.lgamma)(n + 1.0))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class GrowthDiagnostic:
    """|c_n|^(1/n) against the factorial reference f_n^(1/n)."""

    n: np.ndarray
    c_root: np.ndarray      # |c_n|^(1/n)
    f_root: np.ndarray      # f_n^(1/n)
    log_c: np.ndarray       # ln |c_n|
    log_f: np.ndarray       # ln f_n

    def slope_ratio(self, n_lo: int, n_hi: int) -> float:
        """Ratio of least-squares slopes of ln|c_n| and ln f_n over
        [n_lo, n_hi]; ~1 when the factorial law holds on average."""
        mask = (self.n >= n_lo) & (self.n <= n_hi)
        ns = self.n[mask].astype(float)
        slope_c = np.polyfit(ns, self.log_c[mask], 1)[0]
        slope_f = np.polyfit(ns, self.log_f[mask], 1)[0]
        return float(slope_c / slope_f)

    def fitted_L(self, n_lo: int, n_hi: int) -> float:
        """Estimate of L in |c_n| ~ L^n exp(n ln n), averaged over a window."""
        mask = (self.n >= n_lo) & (self.n <= n_hi)
        ns = self.n[mask].astype(float)
        vals = self.log_c[mask] / ns - np.log(ns)
        return float(np.exp(np.mean(vals)))


def growth_analysis(N: int) -> GrowthDiagnostic:
    """Exact c_n through n = N, with the |c_n|^(1/n) and f_n^(1/n) sequences."""
    if N < 100:
        raise ValueError("N must be >= 100")
    series = s1_coefficients(N)
    ns = np.arange(1, N + 1)
    log_c = np.empty(N)
    for i, n in enumerate(ns):
        c = series.coefficient(int(n) + 4)
        # c_n are nonzero rationals; log via integer parts to avoid overflow
        log_c[i] = math.log(abs(c.numerator)) - math.log(c.denominator)
    log_f = -0.5 * ns * math.log(2.0) - 1.5 * ns + np.array(
        [math.lgamma(float(n) + 1.0) for n in ns]
    )
    return GrowthDiagnostic(
        n=ns,
        c_root=np.exp(log_c / ns),
        f_root=np.exp(log_f / ns),
        log_c=log_c,
        log_f=log_f,
    )


def pv_integral(x: float, *, method: str = "auto", epsilon_scale: float = 1e-3) -> float:
    """I(x) = PV integral_0^inf e^(-y) dy / (1 - x y / sqrt(2 e^3)).

    For x <= 0 the integrand has no pole and a direct adaptive quadrature
    suffices (method="direct"; method="split" splits at |y0| anyway, as an
    internal cross-check).  For x > 0 the pole sits at y0 = sqrt(2 e^3)/x and
    the principal value is taken with a symmetric excision of half-width
    eps = epsilon_scale * y0:

        PV int_{|y-y0|<eps} = -y0 e^(-y0) int_{-eps}^{eps} (e^(-u) - 1)/u du
                            = 2 y0 e^(-y0) (eps + eps^3/18 + eps^5/600 + ...),

    the odd pole part cancelling identically; the remainder is regular and
    integrated adaptively.  Absolute accuracy target 1e-8.
    """
    xf = float(x)

    def integrand(y):
        return math.exp(-y) / (1.0 - xf * y / _POLE_SCALE)

    if xf <= 0.0:  # no pole on the contour
        if method not in ("auto", "direct", "split"):
            raise ValueError(f"unknown method {method!r}")
        if method == "split" and xf < 0.0:
            cut = _POLE_SCALE / abs(xf)
            v1, e1 = quad(integrand, 0.0, cut, limit=200, epsabs=1e-11, epsrel=1e-11)
            v2, e2 = quad(integrand, cut, math.inf, limit=200, epsabs=1e-11, epsrel=1e-11)
            value, err = v1 + v2, e1 + e2
        else:
            value, err = quad(integrand, 0.0, math.inf, limit=200, epsabs=1e-11, epsrel=1e-11)
        if err > 1e-8:
            raise NonConvergence(f"quadrature error estimate {err:.2e} exceeds 1e-8")
        return value

    y0 = _POLE_SCALE / xf  # pole location
    eps = epsilon_scale * y0
    # inside a collar around the pole, substitute u = ln|y - y0|; the 1/(y0-y)
    # kernel becomes a bounded smooth integrand and adaptive quadrature is
    # effortless there
    collar = min(1000.0 * eps, 0.5 * y0)
    left, e_left = quad(integrand, 0.0, y0 - collar, limit=400, epsabs=1e-11, epsrel=1e-11)
    v, e = quad(
        lambda u: y0 * math.exp(-(y0 - math.exp(u))),
        math.log(eps),
        math.log(collar),
        limit=200,
        epsabs=1e-11,
        epsrel=1e-11,
    )
    left += v
    e_left += e
    right, e_right = quad(
        lambda u: -y0 * math.exp(-(y0 + math.exp(u))),
        math.log(eps),
        math.log(collar),
        limit=200,
        epsabs=1e-11,
        epsrel=1e-11,
    )
    v, e = quad(integrand, y0 + collar, math.inf, limit=400, epsabs=1e-11, epsrel=1e-11)
    right += v
    e_right += e
    # analytic symmetric core: 2 y0 e^{-y0} sum_{k odd} eps^k/(k k!)
    core_sum, term_k = 0.0, eps
    k = 1
    while True:
        contrib = term_k / (k * math.factorial(k))
        core_sum += contrib
        if contrib < 1e-18 * max(1.0, core_sum):
            break
        k += 2
        term_k *= eps * eps
    core = 2.0 * y0 * math.exp(-y0) * core_sum
    if e_left + e_right > 1e-8:
        raise NonConvergence(
            f"quadrature error estimate {e_left + e_right:.2e} exceeds 1e-8"
        )
    return left + right + core
