"""Coefficient engines for the potential and Schroeder/Poincare series.

All series are expansions about a fixed point of the logistic map
x -> s x (1 - x) and are obtained by matching powers of x in the functional
equation each function obeys:

    potential profile   U(s x(1-x)) = s^2 (1-2x)^2 U(x),
                        U(x) = x^2 (1 + sum_{n>=1} a_n(s) x^n)
    Schroeder           s Psi(x) = Psi(s x(1-x)),   Psi = x + x^2/(s-1) + ...
    Poincare (inverse)  Phi(s x) = s Phi(x) (1 - Phi(x)),   Phi = x + ...
    s = 1 limit         W(x(1-x)) = (1-2x)^2 W(x), W(x) = x^4 (1 + sum c_n x^n)

The a_n recursion reads

    a_{n+2} = [ 4 a_{n+1} - 4 a_n
                + sum_{j=1+floor((n-1)/2)}^{n+1} (-1)^{n-j} a_j s^j C(j+2, n+2-j) ]
              / (1 - s^{n+2}),        n >= 1,

seeded by a_1 = 2/(1-s), a_2 = (5-3s)/((s-1)^2 (s+1)).  The same series can be
organized with deformed factorials,

    (s-1)^2 U(x,s) = x^2 ( (s-1)^2 - 2(s-1) x + sum_{n>=2} p_n(s)/[n]_s! x^n ),

where the numerator polynomials p_n(s) have integer coefficients and degree
1 + (n-2)(n-1)/2; their recursion divides by (1-s) and that division always
cancels exactly (checked at runtime).

Exact mode (rational s) runs the recursions over ``Fraction`` and is the
oracle for everything else.  Float mode runs the *same* recursions in mpmath
with guard digits sized to the measured term cancellation (which grows like
10^(0.08 n); plain double precision loses all accuracy near n ~ 120) and then
demotes to float64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath as mp
import numpy as np

from .algebra import SPolynomial, Scalar, exactify, is_exact
from .errors import DegenerateParameter

DEFAULT_ORDER = 200


@dataclass(frozen=True)
class PowerSeries:
    """Truncated expansion about ``center`` with ``coefficients[k]`` the
    coefficient of (x - center)^k; ``order`` is the highest retained power."""

    center: Scalar
    s: Scalar
    coefficients: tuple
    order: int

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise ValueError("coefficient list must have order+1 entries")

    def coefficient(self, k: int):
        return self.coefficients[k]

    def a(self, n: int):
        """U-series accessor: a_n multiplies x^(n+2)."""
        return self.coefficients[n + 2]


@dataclass(frozen=True)
class RadiusEstimate:
    s: Fraction
    estimate: float
    n_used: int
    method: str = "limsup-window"


def _check_not_degenerate(s, n_max: int):
    if s == 0 or s == 1 or s == -1:
        raise DegenerateParameter(s, n_max, "s in {0, 1, -1}")


def _u_recursion(s, N: int):
    """a_1..a_N over whatever arithmetic s lives in (Fraction or mpf)."""
    one = s**0
    a = {1: 2 / (one - s), 2: (5 * one - 3 * s) / ((s - one) ** 2 * (s + one))}
    spow = {j: s**j for j in range(0, N + 3)}
    for n in range(1, N - 1):
        divisor = one - spow[n + 2]
        if divisor == 0:
            raise DegenerateParameter(s, n, f"1 - s^{n + 2}")
        acc = 4 * a[n + 1] - 4 * a[n]
        for j in range(1 + (n - 1) // 2, n + 2):
            sign = -1 if (n - j) % 2 else 1
            acc += sign * a[j] * spow[j] * math.comb(j + 2, n + 2 - j)
        a[n + 2] = acc / divisor
    return [a[n] for n in range(1, N + 1)]


def _psi_recursion(s, N: int):
    """b_1..b_N with b_1 = 1, from matching s Psi(x) = Psi(s x(1-x))."""
    one = s**0
    b = {1: one}
    spow = {j: s**j for j in range(0, N + 1)}
    for k in range(2, N + 1):
        divisor = s - spow[k]
        if divisor == 0:
            raise DegenerateParameter(s, k, f"s - s^{k}")
        acc = one - one
        for m in range((k + 1) // 2, k):
            sign = -1 if (k - m) % 2 else 1
            acc += sign * b[m] * spow[m] * math.comb(m, k - m)
        b[k] = acc / divisor
    return [b[k] for k in range(1, N + 1)]


def _phi_recursion(s, N: int):
    """d_1..d_N with d_1 = 1, from matching Phi(s x) = s Phi(x)(1 - Phi(x))."""
    one = s**0
    d = {1: one}
    for k in range(2, N + 1):
        divisor = s - s**k
        if divisor == 0:
            raise DegenerateParameter(s, k, f"s - s^{k}")
        acc = one - one
        for i in range(1, k):
            acc += d[i] * d[k - i]
        d[k] = s * acc / divisor
    return [d[k] for k in range(1, N + 1)]


def _guard_dps(N: int) -> int:
    # term cancellation in the recursions costs ~0.08 N digits
    return 30 + N // 8


@lru_cache(maxsize=64)
def _u_exact(s: Fraction, N: int) -> tuple:
    _check_not_degenerate(s, N)
    return tuple(_u_recursion(s, N))


@lru_cache(maxsize=64)
def _u_mp(s: Fraction, N: int) -> tuple:
    _check_not_degenerate(s, N)
    with mp.workdps(_guard_dps(N)):
        sm = mp.mpf(s.numerator) / s.denominator
        return tuple(_u_recursion(sm, N))


@lru_cache(maxsize=64)
def _psi_exact(s: Fraction, N: int) -> tuple:
    _check_not_degenerate(s, N)
    return tuple(_psi_recursion(s, N))


@lru_cache(maxsize=64)
def _psi_mp(s: Fraction, N: int) -> tuple:
    _check_not_degenerate(s, N)
    with mp.workdps(_guard_dps(N)):
        sm = mp.mpf(s.numerator) / s.denominator
        return tuple(_psi_recursion(sm, N))


@lru_cache(maxsize=64)
def _phi_exact(s: Fraction, N: int) -> tuple:
    _check_not_degenerate(s, N)
    return tuple(_phi_recursion(s, N))


@lru_cache(maxsize=64)
def _phi_mp(s: Fraction, N: int) -> tuple:
    _check_not_degenerate(s, N)
    with mp.workdps(_guard_dps(N)):
        sm = mp.mpf(s.numerator) / s.denominator
        return tuple(_phi_recursion(sm, N))


def u_coefficients(s: Scalar, N: int = DEFAULT_ORDER) -> PowerSeries:
    """Series for U about x = 0, through order N+2 (a_1..a_N populated).

    Exact in, exact out.  A float s selects float mode: the recursion runs
    with guard digits and the returned coefficients are float64 accurate to
    full precision.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    if is_exact(s):
        sf = exactify(s)
        a = _u_exact(sf, N)
        coeffs = (Fraction(0), Fraction(0), Fraction(1)) + a
        return PowerSeries(Fraction(0), sf, coeffs, N + 2)
    a = _u_mp(exactify(s), N)
    coeffs = (0.0, 0.0, 1.0) + tuple(float(v) for v in a)
    return PowerSeries(0.0, float(s), coeffs, N + 2)


def psi_coefficients(s: Scalar, N: int = DEFAULT_ORDER) -> PowerSeries:
    """Schroeder series about x = 0: b_1 = 1, b_2 = 1/(s-1), ... through x^N."""
    if N < 2:
        raise ValueError("N must be >= 2")
    if is_exact(s):
        sf = exactify(s)
        b = _psi_exact(sf, N)
        return PowerSeries(Fraction(0), sf, (Fraction(0),) + b, N)
    b = _psi_mp(exactify(s), N)
    return PowerSeries(0.0, float(s), (0.0,) + tuple(float(v) for v in b), N)


def phi_coefficients(s: Scalar, N: int = DEFAULT_ORDER) -> PowerSeries:
    """Series for the inverse function Phi about 0; compositional inverse of
    the Schroeder series through order N."""
    if N < 2:
        raise ValueError("N must be >= 2")
    if is_exact(s):
        sf = exactify(s)
        d = _phi_exact(sf, N)
        return PowerSeries(Fraction(0), sf, (Fraction(0),) + d, N)
    d = _phi_mp(exactify(s), N)
    return PowerSeries(0.0, float(s), (0.0,) + tuple(float(v) for v in d), N)


@lru_cache(maxsize=8)
def _s1_exact(N: int) -> tuple:
    # W(x) = x^4 (1 + sum c_n x^n);  matching x^k in W(x(1-x)) = (1-2x)^2 W(x)
    # leaves, for k >= 6,
    #   w_{k-1} (5-k) = 4 w_{k-2} - sum_{j=ceil(k/2)}^{k-2} (-1)^{k-j} C(j,k-j) w_j
    w = {4: Fraction(1)}
    for m in range(5, N + 5):
        k = m + 1
        acc = 4 * w.get(k - 2, Fraction(0))
        for j in range((k + 1) // 2, k - 1):
            sign = -1 if (k - j) % 2 else 1
            acc -= sign * math.comb(j, k - j) * w.get(j, Fraction(0))
        w[m] = acc / (5 - k)
    return tuple(w[n + 4] for n in range(1, N + 1))


def s1_coefficients(N: int) -> PowerSeries:
    """The s -> 1 limit profile W(x) = x^4 (1 + sum c_n x^n) with exact c_n.

    The potential itself is V(x,1) = -W(x); the coefficients returned here
    are those of W (so coefficient(n+4) is c_n).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    c = _s1_exact(N)
    coeffs = (Fraction(0),) * 4 + (Fraction(1),) + c
    return PowerSeries(Fraction(0), Fraction(1), coeffs, N + 4)


def psi_star_coefficients(s: Scalar, N: int = 40) -> PowerSeries:
    """Schroeder series about the nontrivial fixed point x* = 1 - 1/s.

    In the offset variable z = x - x* the function obeys
    lam Psi*(z) = Psi*(lam z + (lam - 2) z^2) with lam = 2 - s, and is
    normalized to Psi*(z) = z + O(z^2).  Exact s only; used as the
    independent route when checking the s <-> 2-s conjugation identity.
    """
    sf = exactify(s)
    lam = 2 - sf
    if lam == 0 or lam == 1 or lam == -1:
        raise DegenerateParameter(sf, N, "2 - s in {0, 1, -1}")
    e = {1: Fraction(1)}
    for k in range(2, N + 1):
        divisor = lam - lam**k
        if divisor == 0:
            raise DegenerateParameter(sf, k, f"(2-s) - (2-s)^{k}")
        acc = Fraction(0)
        for m in range((k + 1) // 2, k):
            acc += e[m] * math.comb(m, k - m) * lam ** (2 * m - k) * (lam - 2) ** (k - m)
        e[k] = acc / divisor
    coeffs = (Fraction(0),) + tuple(e[k] for k in range(1, N + 1))
    return PowerSeries(1 - 1 / sf, sf, coeffs, N)


# ---------------------------------------------------------------------------
# numerator polynomials


def p_polynomials(N: int):
    """p_1..p_N as exact polynomials in s (list index 0 holds p_1).

    The recursion mixes ordinary and deformed integers:

        p_{n+2} = [ 4 p_{n+1} - 4 [n+1]_s p_n
                    + [n+1]_s! sum_j (-1)^{n-j}/[j]_s! C(j+2, n+2-j) s^j p_j ]
                  / (1 - s),

    seeded by p_1 = 2(1-s), p_2 = 5-3s.  The division by (1-s) must cancel
    exactly; a nonzero remainder raises CancellationFailure.
    """
    from .errors import CancellationFailure

    if N < 2:
        raise ValueError("N must be >= 2")
    p = {1: SPolynomial([2, -2]), 2: SPolynomial([5, -3])}
    for n in range(1, N - 1):
        acc = 4 * p[n + 1] + (-4) * (SPolynomial.q_integer(n + 1) * p[n])
        for j in range(1 + (n - 1) // 2, n + 2):
            # [n+1]_s!/[j]_s! = prod_{k=j+1..n+1} [k]_s stays polynomial
            ratio = SPolynomial([1])
            for k in range(j + 1, n + 2):
                ratio = ratio * SPolynomial.q_integer(k)
            sign = -1 if (n - j) % 2 else 1
            term = (ratio * p[j]).shifted(j) * (sign * math.comb(j + 2, n + 2 - j))
            acc = acc + term
        quotient, remainder = acc.divide_by_one_minus_s()
        if remainder != 0:
            raise CancellationFailure(
                f"(1-s) division left remainder {remainder} at n={n + 2}"
            )
        p[n + 2] = quotient
    return [p[n] for n in range(1, N + 1)]


# ---------------------------------------------------------------------------
# radius of convergence


def radius_estimate(s: Scalar, N: int = 400) -> RadiusEstimate:
    """Tail estimate of the convergence radius R = 1/limsup |a_n|^(1/n).

    Pointwise |a_n|^(1/n) carries an ln(n)/n bias that is still several
    percent at n = 400, so the limsup surrogate is the supremum, over the
    tail window n in (N/2, N], of the half-lag log slopes
    (ln|a_n| - ln|a_{n-N/2}|)/(N/2); the subexponential prefactor cancels
    between the two samples.  The supremum (rather than a mean) keeps the
    estimate robust to the non-monotone, spiky |a_n| seen for 2/3 < s < 2.
    """
    if N < 100:
        raise ValueError("N must be >= 100")
    sf = exactify(s)
    a = _u_mp(sf, N)  # a[0] is a_1
    lnabs = [None] * (N + 1)
    for n in range(1, N + 1):
        v = a[n - 1]
        lnabs[n] = float(mp.log(abs(v))) if v != 0 else -math.inf
    w = N // 2
    slopes = []
    for n in range(w + 1, N + 1):
        lo, hi = lnabs[n - w], lnabs[n]
        if math.isfinite(lo) and math.isfinite(hi):
            slopes.append((hi - lo) / w)
    if not slopes:
        raise DegenerateParameter(sf, N, "all tail coefficients vanish")
    estimate = math.exp(-max(slopes))
    return RadiusEstimate(sf, estimate, len(slopes))


# ---------------------------------------------------------------------------
# float64 coefficient arrays for the evaluation pipelines


@lru_cache(maxsize=64)
def u_series_floats(s: Fraction, N: int = DEFAULT_ORDER) -> np.ndarray:
    """[1, a_1, ..., a_N] as float64, for Horner evaluation of U/x^2."""
    a = _u_mp(s, N)
    return np.array([1.0] + [float(v) for v in a])


@lru_cache(maxsize=64)
def psi_series_floats(s: Fraction, N: int = DEFAULT_ORDER) -> np.ndarray:
    """[b_1, ..., b_N] as float64."""
    return np.array([float(v) for v in _psi_mp(s, N)])


@lru_cache(maxsize=64)
def phi_series_floats(s: Fraction, N: int = DEFAULT_ORDER) -> np.ndarray:
    """[d_1, ..., d_N] as float64."""
    return np.array([float(v) for v in _phi_mp(s, N)])


# ---------------------------------------------------------------------------
# exact residual oracles: substitute a truncated series into its defining
# functional equation and return the coefficients that must vanish


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction], trunc: int):
    out = [Fraction(0)] * (min(len(p) + len(q) - 1, trunc + 1))
    for i, pi in enumerate(p):
        if pi == 0 or i > trunc:
            continue
        for j, qj in enumerate(q):
            if i + j > trunc:
                break
            out[i + j] += pi * qj
    return out


def _compose_quadratic(p: Sequence[Fraction], c1: Fraction, c2: Fraction, trunc: int):
    """p(c1 x + c2 x^2) truncated at x^trunc (Horner in the quadratic)."""
    out = [Fraction(0)]
    lin = [Fraction(0), c1, c2]
    for coeff in reversed(list(p)):
        out = _poly_mul(out, lin, trunc)
        if not out:
            out = [Fraction(0)]
        out[0] += coeff
    out += [Fraction(0)] * (trunc + 1 - len(out))
    return out


def _pad(p, trunc):
    return list(p) + [Fraction(0)] * (trunc + 1 - len(p))


def u_functional_residual(series: PowerSeries):
    """Coefficients of P(s x(1-x)) - s^2 (1-2x)^2 P(x) through the series
    order; all must vanish in exact arithmetic."""
    s = series.s
    M = series.order
    P = list(series.coefficients)
    lhs = _compose_quadratic(P, s, -s, M)
    rhs = _pad(_poly_mul([Fraction(1), Fraction(-4), Fraction(4)], P, M), M)
    return [lhs[k] - s * s * rhs[k] for k in range(M + 1)]


def psi_functional_residual(series: PowerSeries):
    """Coefficients of s Psi(x) - Psi(s x(1-x)) through the series order."""
    s = series.s
    M = series.order
    P = list(series.coefficients)
    rhs = _compose_quadratic(P, s, -s, M)
    return [s * P[k] - rhs[k] for k in range(M + 1)]


def phi_functional_residual(series: PowerSeries):
    """Coefficients of Phi(s x) - s Phi(x)(1 - Phi(x)) through the order."""
    s = series.s
    M = series.order
    P = list(series.coefficients)
    lhs = [P[k] * s**k for k in range(M + 1)]
    sq = _pad(_poly_mul(P, P, M), M)
    return [lhs[k] - s * (P[k] - sq[k]) for k in range(M + 1)]


def s1_functional_residual(series: PowerSeries):
    """Coefficients of W(x(1-x)) - (1-2x)^2 W(x) through order N+4."""
    M = series.order
    P = list(series.coefficients)
    lhs = _compose_quadratic(P, Fraction(1), Fraction(-1), M)
    rhs = _pad(_poly_mul([Fraction(1), Fraction(-4), Fraction(4)], P, M), M)
    return [lhs[k] - rhs[k] for k in range(M + 1)]


def compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """Truncated composition outer(inner(x)); requires inner(0) = 0."""
    if inner.coefficients[0] != 0:
        raise ValueError("inner series must vanish at 0")
    M = min(outer.order, inner.order)
    out = [Fraction(0)]
    Q = list(inner.coefficients[: M + 1])
    for coeff in reversed(list(outer.coefficients[: M + 1])):
        out = _poly_mul(out, Q, M)
        if not out:
            out = [Fraction(0)]
        out[0] += coeff
    out = _pad(out, M)
    return PowerSeries(outer.center, outer.s, tuple(out), M)
