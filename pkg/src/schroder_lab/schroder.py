"""The Schroeder/Poincare function pair: branch construction, inverse-function
evaluation by functional extension, conjugate functions, and the continuous
interpolation of map orbits.

The inverse function Phi is single-valued (for the map at a repelling fixed
point it extends to an entire function), which makes it the workhorse: for
s > 1 every value follows from

    Phi(x) = s Phi(x/s) (1 - Phi(x/s))

by rescaling the argument into the series zone and unwinding, and for s < 1
from the solved quadratic

    Phi_pm(x) = 1/2 (1 +- sqrt(1 - (4/s) Phi(s x))).

Psi is multi-valued; branch 0 is evaluated through the hardened form
Psi0(x) = s Psi(1/2 - 1/2 sqrt(1 - 4x/s)) (convergent on all of [0, s/4] for
2 < s <= 4) and the higher branches follow the same sign recipes as the
switchback potentials: the branch visited while the particle crosses a node
with recipe (sigma_1, ..., sigma_r) is

    Psi_branch(x) = s^r Psi0( x after the nested sigma substitutions ),

continuous across the shared turning points, where consecutive branch values
agree.  A continuous orbit interpolation and its velocity follow as

    x(t) = Phi(s^t Psi0(x0)),    dx/dt = (ln s) s^t Psi0(x0) Phi'(s^t Psi0(x0)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from .algebra import Scalar, exactify
from .dynamics import build_chemin
from .errors import DomainError, NonConvergence, OutOfRadius
from .series import DEFAULT_ORDER, phi_series_floats, psi_series_floats

_MAX_EXTENSION_STEPS = 60
_TAIL_TOL = 1e-14


def _tail_zone(coeffs: np.ndarray, lo: float = 0.05, hi: float = 2.0) -> float:
    """Radius inside which the last retained term is below _TAIL_TOL."""
    c = abs(float(coeffs[-1]))
    N = len(coeffs)
    if c == 0.0:
        return hi
    return float(min(max((_TAIL_TOL / c) ** (1.0 / N), lo), hi))


@lru_cache(maxsize=64)
def _psi_zone(s: Fraction, N: int) -> float:
    return _tail_zone(psi_series_floats(s, N), lo=0.05, hi=3.0)


@lru_cache(maxsize=64)
def _phi_zone(s: Fraction, N: int) -> float:
    return _tail_zone(phi_series_floats(s, N), lo=0.05, hi=2.0)


def _series_sum(coeffs: np.ndarray, x):
    """x * (c_1 + c_2 x + ...) for coeffs = [c_1, c_2, ...]."""
    acc = np.zeros_like(x)
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc * x


def psi_series_eval(x, s: Scalar, N: int = DEFAULT_ORDER):
    """Direct Schroeder series, guarded by the tail-accuracy zone."""
    sf = exactify(s)
    arr = np.asarray(x, dtype=float)
    zone = _psi_zone(sf, N)
    if np.any(np.abs(arr) > zone):
        raise OutOfRadius(f"|x| > {zone:.4g}, the accurate zone of the Psi series at s={sf}")
    out = _series_sum(psi_series_floats(sf, N), arr)
    return float(out) if arr.ndim == 0 else out


def psi0(x, s: Scalar, N: int = DEFAULT_ORDER):
    """Branch-0 Schroeder function.

    For 2 < s <= 4 the hardened form converges on the whole interval
    [0, s/4]; for other s the direct series is used inside its zone.
    """
    sf = exactify(s)
    sfl = float(sf)
    arr = np.asarray(x, dtype=float)
    if 2 < sf <= 4:
        if np.any(arr < -1e-12) or np.any(arr > sfl / 4.0 + 1e-12):
            raise DomainError(f"branch 0 needs x in [0, s/4] for s={sf}")
        # snap roundoff-level radicands to 0: sqrt would turn a few-ulp error
        # at the branch point into ~1e-8 (there is no vanishing prefactor to
        # absorb it here, unlike the potential branches)
        rad = 1.0 - 4.0 * arr / sfl
        rad = np.where(rad < 1e-12, 0.0, rad)
        inner = 0.5 - 0.5 * np.sqrt(rad)
        out = sfl * _series_sum(psi_series_floats(sf, N), inner)
        return float(out) if arr.ndim == 0 else out
    return psi_series_eval(x, sf, N)


def _phi_series_and_derivative(y: float, coeffs: np.ndarray) -> Tuple[float, float]:
    val = 0.0
    der = 0.0
    for k in range(len(coeffs), 0, -1):
        c = coeffs[k - 1]
        val = val * y + c
        der = der * y + k * c
    return val * y, der


def _extension_steps(x: float, s: float, zone: float, iterates: Optional[int]) -> int:
    target = 0.1 * zone
    if iterates is not None:
        return iterates
    if abs(x) <= target:
        return 0
    return min(int(math.ceil(math.log(abs(x) / target) / math.log(s))), _MAX_EXTENSION_STEPS)


def eval_phi(x, s: Scalar, N: int = DEFAULT_ORDER, iterates: Optional[int] = None):
    """Phi for s > 1: series at x/s^k, then k unwindings of the quadratic."""
    value, _ = eval_phi_derivative(x, s, N, iterates)
    return value


def eval_phi_derivative(
    x, s: Scalar, N: int = DEFAULT_ORDER, iterates: Optional[int] = None
) -> Tuple[float, float]:
    """(Phi(x), Phi'(x)) by term-wise series differentiation plus the chain
    rule through each extension step: Phi'(x) = (1 - 2 Phi(x/s)) Phi'(x/s)."""
    sf = exactify(s)
    sfl = float(sf)
    if sfl <= 1.0:
        raise DomainError("the rescaling extension needs s > 1; use eval_phi_descend")
    xf = float(x)
    coeffs = phi_series_floats(sf, N)
    zone = _phi_zone(sf, N)
    k = _extension_steps(xf, sfl, zone, iterates)
    y = xf / sfl**k
    if abs(y) > zone:
        raise NonConvergence(
            f"argument {xf!r} still outside the series zone after {k} extension steps"
        )
    z, dz = _phi_series_and_derivative(y, coeffs)
    for _ in range(k):
        dz = (1.0 - 2.0 * z) * dz
        z = sfl * z * (1.0 - z)
    return z, dz


def eval_phi_descend(x, s: Scalar, sign: int, N: int = DEFAULT_ORDER, *, _depth: int = 0):
    """One descent step for s < 1: Phi_pm(x) = 1/2 (1 pm sqrt(1 - 4 Phi(sx)/s)).

    The inner Phi(s x) comes from the series when s x is inside the zone and
    from further minus-sign descents otherwise, so iterating reaches any
    argument of interest.
    """
    sf = exactify(s)
    sfl = float(sf)
    if not 0.0 < sfl < 1.0:
        raise DomainError("descent needs 0 < s < 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if _depth > _MAX_EXTENSION_STEPS:
        raise NonConvergence("descent did not reach the series zone")
    xf = float(x)
    inner_arg = sfl * xf
    if abs(inner_arg) <= _phi_zone(sf, N):
        inner = float(_series_sum(phi_series_floats(sf, N), np.asarray(inner_arg)))
    else:
        inner = eval_phi_descend(inner_arg, sf, -1, N, _depth=_depth + 1)
    rad = 1.0 - 4.0 * inner / sfl
    if rad < 0.0:
        raise DomainError(f"negative radicand {rad!r} in descent at x={xf!r}")
    return 0.5 * (1.0 + sign * math.sqrt(rad))


def conjugate_psi(kind: str, x, s: Scalar, N: int = DEFAULT_ORDER):
    """Conjugated Schroeder functions via branch 0.

    kind="star": the expansion about the nontrivial fixed point, evaluated
    through the dual parameter,  Psi*(x,s) = (s*/s) Psi0(s x / s*, s*) with
    s* = 2 - s.  kind="g": the linearly conjugated function
    Psi_g(x,s) = (1-s)/(2-s) + s/(2-s) Psi0((s-1+(2-s)x)/s, s).
    """
    sf = exactify(s)
    if sf == 2:
        raise DomainError("conjugation is singular at s = 2")
    try:
        if kind == "star":
            star = 2 - sf
            return float(star) / float(sf) * psi0(float(sf) / float(star) * np.asarray(x, dtype=float), star, N)
        if kind == "g":
            shift = (1 - sf) / (2 - sf)
            arg = (float(sf) - 1.0 + float(2 - sf) * np.asarray(x, dtype=float)) / float(sf)
            return float(shift) + float(sf) / float(2 - sf) * psi0(arg, sf, N)
    except OutOfRadius as exc:
        raise DomainError(str(exc)) from exc
    raise ValueError(f"unknown conjugate kind {kind!r}")


# ---------------------------------------------------------------------------
# Psi branches


def _branch_value(s: Fraction, recipe: tuple, xi: np.ndarray, N: int):
    sfl = float(s)
    for sign in recipe:
        rad = 0.25 - xi / sfl
        # snap roundoff-level radicands exactly to 0 (see psi0)
        rad = np.where(rad < 1e-13, 0.0, rad)
        xi = 0.5 + sign * np.sqrt(rad)
    return sfl ** len(recipe) * psi0(xi, s, N)


@dataclass(frozen=True)
class PsiBranch:
    """One single-valued real piece of the multi-valued Schroeder function.

    ``recipe`` is the sign recipe of the potential branch the particle is
    crossing; the branch value is s^len(recipe) * Psi0 of the substituted
    argument.  ``start``/``end`` record the traversal orientation (the shared
    point with the next branch is this branch's ``end``).  ``table_*`` hold
    512 uniform samples for plotting/interpolation; exact values come from
    :meth:`value`.
    """

    index: int
    s: Fraction
    recipe: tuple
    lower: Fraction
    upper: Fraction
    start: Fraction
    end: Fraction
    table_x: np.ndarray
    table_psi: np.ndarray
    series_order: int

    def value(self, x, N: Optional[int] = None):
        N = self.series_order if N is None else N
        arr = np.asarray(x, dtype=float)
        lo, hi = float(self.lower), float(self.upper)
        if np.any(arr < lo - 1e-12) or np.any(arr > hi + 1e-12):
            raise DomainError(f"branch {self.index} is defined on [{lo}, {hi}]")
        out = _branch_value(self.s, self.recipe, np.clip(arr, lo, hi), N)
        return float(out) if arr.ndim == 0 else out

    def interpolate(self, x):
        """Monotone cubic interpolation through the tabulated samples."""
        from scipy.interpolate import PchipInterpolator

        return PchipInterpolator(self.table_x, self.table_psi)(x)


def psi_branches(s: Scalar, count: int, N: int = DEFAULT_ORDER) -> list:
    """The first ``count`` branches of Psi at parameter s (2 < s <= 4).

    Branch 0 is the hardened branch-0 function on [0, s/4]; branch k >= 1 is
    the Psi image of the k-th leg of the potential path, so its domain is that
    leg's turning-point interval and consecutive branches agree where they
    meet.  For 2 < s <= 3 this reduces to repeated plus-root substitution.
    At the degenerate boundary s = 4 the leg ordering (and hence branch
    continuity) is only reliable through the first four branches; see
    build_chemin.
    """
    sf = exactify(s)
    if not 2 < sf <= 4:
        raise DomainError("branch construction needs 2 < s <= 4")
    if count < 1:
        raise ValueError("count must be >= 1")
    # enough groups so the flattened legs cover `count` branches
    groups = 0
    legs_available = 1
    while legs_available < count:
        groups += 1
        legs_available += groups if sf > 3 else 1
    schedule = build_chemin(sf, groups)
    legs = [((), Fraction(0), sf / 4, Fraction(0), sf / 4)]
    for group in schedule.groups:
        for leg in group:
            legs.append(
                (leg.node.recipe, leg.node.lower_tp, leg.node.upper_tp, leg.start, leg.end)
            )
    branches = []
    for idx in range(count):
        recipe, lo, hi, start, end = legs[idx]
        xs = np.linspace(float(lo), float(hi), 512)
        table = _branch_value(sf, recipe, xs.copy(), N)
        branches.append(
            PsiBranch(idx, sf, recipe, lo, hi, start, end, xs, np.asarray(table), N)
        )
    return branches


# ---------------------------------------------------------------------------
# continuous trajectories


@dataclass(frozen=True)
class Trajectory:
    s: Fraction
    x0: Fraction
    samples: Tuple[Tuple[float, float], ...]  # (t, x(t)) pairs


def trajectory(x0: Scalar, s: Scalar, t_grid: Sequence[float], N: int = DEFAULT_ORDER) -> Trajectory:
    """x(t) = Phi(s^t Psi0(x0)) sampled on t_grid.

    Needs s in (1, 4] and a start below the first turning point so Psi0 is
    the correct branch; integer t reproduce the discrete iterates.
    """
    sf = exactify(s)
    sfl = float(sf)
    if not 1.0 < sfl <= 4.0:
        raise DomainError("trajectory interpolation needs 1 < s <= 4")
    x0f = exactify(x0)
    if not 0 < x0f <= sf / 4:
        raise DomainError("start must lie in (0, s/4]")
    psi_start = psi0(float(x0f), sf, N)
    samples = []
    for t in t_grid:
        xt = eval_phi(sfl**float(t) * psi_start, sf, N)
        samples.append((float(t), xt))
    return Trajectory(s=sf, x0=x0f, samples=tuple(samples))


def velocity(x0: Scalar, s: Scalar, t: float, N: int = DEFAULT_ORDER) -> float:
    """dx/dt along the interpolated orbit, from term-wise differentiation:
    dx/dt = (ln s) s^t Psi0(x0) Phi'(s^t Psi0(x0))."""
    sf = exactify(s)
    sfl = float(sf)
    if not 1.0 < sfl <= 4.0:
        raise DomainError("velocity needs 1 < s <= 4")
    psi_start = psi0(float(exactify(x0)), sf, N)
    y = sfl**float(t) * psi_start
    _, dphi = eval_phi_derivative(y, sf, N)
    return math.log(sfl) * y * dphi
