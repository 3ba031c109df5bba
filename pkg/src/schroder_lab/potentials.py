"""Evaluation of the potential profile U, its hardened forms, the switchback
family, closed forms, and the s <-> 2-s duality transform.

The physical potential is V(x,s) = -(ln^2 s) U(x,s) with U >= 0.  The raw
series for U about x = 0 converges only inside |x| < R(s); the hardened form

    U0(x) = s (s - 4x) U( 1/2 - 1/2 sqrt(1 - 4x/s) )

pulls the series argument into [0, 1/2], which lies inside R(s) = s/4 for
2 < s <= 4, so U0 converges on the whole closed interval [0, s/4].  All
switchback branches bottom out in U0 through repeated application of the
basic substitution

    T_sign[F](x) = s (s - 4x) F( 1/2 + sign * sqrt(1/4 - x/s) ),

one sign per application.  Family m, sequence n carries the sign recipe
(outermost first)  [alternating prefix of length m ending in '-'] + ['+']*n;
family 0 is the mother sequence V_n, families 1..4 are the W/X/Y/Z offspring,
and larger m extends the same alternation (an extrapolation beyond the
documented families).

Turning points are exact rationals: propagating the base domain [0, s/4]
through a recipe clips each stage at 1/2 and maps endpoints with the logistic
map itself, so every endpoint is a map iterate and the node vanishes there
(either the prefactor s-4x or the inner zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import Scalar, exactify
from .errors import ComplexValued, DomainError, OutOfRadius
from .series import DEFAULT_ORDER, radius_estimate, u_series_floats

_RADIUS_GUARD = 0.99


def convergence_radius(s: Scalar) -> float:
    """R(s) for the series about 0: 1/2 on (0, 2/3], |1 - 1/s| on [2/3, 2],
    s/4 on [2, 4]; outside (0, 4] falls back to the tail estimator."""
    sf = exactify(s)
    if 0 < sf <= Fraction(2, 3):
        return 0.5
    if Fraction(2, 3) <= sf <= 2:
        return abs(1.0 - 1.0 / float(sf))
    if 2 <= sf <= 4:
        return float(sf) / 4.0
    return _estimated_radius(sf)


@lru_cache(maxsize=32)
def _estimated_radius(s: Fraction) -> float:
    return radius_estimate(s, 400).estimate


def _poly_part(coeffs: np.ndarray, x):
    """Horner for 1 + a_1 x + ... + a_N x^N (coeffs[0] = 1)."""
    acc = np.zeros_like(x)
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, (arr.ndim == 0)


def eval_U(x, s: Scalar, N: int = DEFAULT_ORDER):
    """Direct series evaluation of U; guarded at 99% of the radius."""
    sf = exactify(s)
    arr, scalar_in = _as_array(x)
    guard = _RADIUS_GUARD * convergence_radius(sf)
    if np.any(np.abs(arr) > guard):
        worst = float(np.max(np.abs(arr)))
        raise OutOfRadius(f"|x|={worst:.6g} exceeds {guard:.6g} (99% of R) at s={sf}")
    coeffs = u_series_floats(sf, N)
    out = arr * arr * _poly_part(coeffs, arr)
    return float(out) if scalar_in else out


def _u0_raw(arr: np.ndarray, sfl: float, coeffs: np.ndarray) -> np.ndarray:
    rad = np.clip(1.0 - 4.0 * arr / sfl, 0.0, None)
    inner = 0.5 - 0.5 * np.sqrt(rad)
    return sfl * (sfl - 4.0 * arr) * inner * inner * _poly_part(coeffs, inner)


def eval_U0(x, s: Scalar, N: int = DEFAULT_ORDER):
    """Hardened primary potential, convergent on all of [0, s/4] for 2<s<=4."""
    sf = exactify(s)
    sfl = float(sf)
    arr, scalar_in = _as_array(x)
    if np.any(arr < -1e-12) or np.any(arr > sfl / 4.0 + 1e-12):
        raise DomainError(f"x outside [0, s/4] for s={sf}")
    out = _u0_raw(np.clip(arr, 0.0, sfl / 4.0), sfl, u_series_floats(sf, N))
    return float(out) if scalar_in else out


def eval_U1(x, s: Scalar, N: int = DEFAULT_ORDER):
    """First switchback, convergent on [s^2(4-s)/16, s/4]."""
    sf = exactify(s)
    sfl = float(sf)
    lo = float(sf * sf * (4 - sf) / 16)
    arr, scalar_in = _as_array(x)
    if np.any(arr < lo - 1e-12) or np.any(arr > sfl / 4.0 + 1e-12):
        raise DomainError(f"x outside [s^2(4-s)/16, s/4] = [{lo}, {sfl / 4}]")
    coeffs = u_series_floats(sf, N)
    rad = np.clip(1.0 - 4.0 * arr / sfl, 0.0, None)
    inner = 0.5 + 0.5 * np.sqrt(rad)
    out = sfl * (sfl - 4.0 * arr) * _u0_raw(inner, sfl, coeffs)
    return float(out) if scalar_in else out


def closed_form_U(x, s):
    """Exact closed forms at s = -2, 2, 4."""
    arr, scalar_in = _as_array(x)
    if s == 2:
        if np.any(arr > 0.5):
            raise DomainError("closed form at s=2 requires x <= 1/2")
        t = 1.0 - 2.0 * arr
        out = np.where(t > 0.0, 0.25 * t * t * np.square(np.log(np.where(t > 0, t, 1.0))), 0.0)
    elif s == 4:
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError("closed form at s=4 requires 0 <= x <= 1")
        out = arr * (1.0 - arr) * np.arcsin(np.sqrt(arr)) ** 2
    elif s == -2:
        if np.any(arr < -0.5) or np.any(arr > 1.5):
            raise DomainError("closed form at s=-2 requires -1/2 <= x <= 3/2")
        out = (1.0 + 2.0 * arr) * (3.0 - 2.0 * arr) * (
            2.0 * math.pi - 3.0 * np.arccos(arr - 0.5)
        ) ** 2 / 36.0
    else:
        raise DomainError(f"no closed form for s={s}; only -2, 2, 4")
    return float(out) if scalar_in else out


def V_from_U(u, s: Scalar):
    """V = -(ln^2 s) U; real only for s > 0, s != 1."""
    sfl = float(s)
    if sfl <= 0.0 or sfl == 1.0:
        raise DomainError("V = -(ln^2 s) U needs s > 0, s != 1")
    return -(math.log(sfl) ** 2) * u


def dual_transform_U(x, s: Scalar, N: int = DEFAULT_ORDER):
    """Evaluate U(x, s) through the dual parameter s* = 2 - s:

        U(x,s) = ((2-s) ln(2-s) / (s ln s))^2  U( s/(2-s) (x - (1-1/s)), 2-s ).

    Valid for s in (0,1) or (1,2) so both logarithms are real; the dual
    argument must lie inside the dual series' guarded radius.
    """
    sf = exactify(s)
    if not (0 < sf < 2) or sf == 1:
        raise DomainError("dual transform needs s in (0,1) or (1,2)")
    star = 2 - sf
    arr, scalar_in = _as_array(x)
    dual_arg = float(sf / star) * (arr - float(1 - 1 / sf))
    factor = (float(star) * math.log(float(star)) / (float(sf) * math.log(float(sf)))) ** 2
    try:
        out = factor * eval_U(dual_arg, star, N)
    except OutOfRadius as exc:
        raise DomainError(str(exc)) from exc
    return float(out) if scalar_in else out


# ---------------------------------------------------------------------------
# switchback family


def family_prefix(m: int):
    """Outermost-first sign prefix for family m: alternating, ending with -1
    next to the + block.  m=1 -> (-1,), m=2 -> (+1,-1), m=3 -> (-1,+1,-1), ..."""
    return tuple(-1 if (m - i) % 2 == 0 else 1 for i in range(1, m + 1))


def family_recipe(m: int, n: int):
    return family_prefix(m) + (1,) * n


def _propagate_domain(s: Fraction, recipe):
    """Exact turning-point interval for a recipe, by clipping at 1/2 and
    mapping endpoints with f(x) = s x (1-x).  Raises ComplexValued if some
    stage has no real interval."""
    lo, hi = Fraction(0), s / 4
    for sign in reversed(recipe):
        if sign > 0:
            clo, chi = max(lo, Fraction(1, 2)), hi
        else:
            clo, chi = lo, min(hi, Fraction(1, 2))
        if clo >= chi:
            raise ComplexValued(
                f"recipe {recipe} is complex-valued at s={s} (empty stage interval)"
            )
        img_a, img_b = s * clo * (1 - clo), s * chi * (1 - chi)
        lo, hi = min(img_a, img_b), max(img_a, img_b)
    return lo, hi


@dataclass(frozen=True)
class PotentialNode:
    """One member V_n^(m) of the switchback family.

    ``recipe`` lists the substitution signs outermost first (length m+n);
    the turning points are exact map iterates and the node vanishes at both.
    """

    m: int
    n: int
    s: Fraction
    recipe: tuple
    lower_tp: Fraction
    upper_tp: Fraction

    @property
    def label(self) -> str:
        names = {0: "V", 1: "W", 2: "X", 3: "Y", 4: "Z"}
        fam = names.get(self.m, f"F{self.m}")
        return f"{fam}{self.n}"

    def u_value(self, x, N: int = DEFAULT_ORDER):
        """The positive profile (V = -(ln^2 s) * u_value)."""
        sfl = float(self.s)
        arr, scalar_in = _as_array(x)
        work = np.atleast_1d(arr).copy()
        lo, hi = float(self.lower_tp), float(self.upper_tp)
        # x = s/4 kills the outermost prefactor for every node, whether or
        # not s/4 belongs to this node's real interval
        at_max = self.recipe and np.abs(work - sfl / 4.0) <= 4.0 * np.finfo(float).eps
        if self.recipe:
            work[at_max] = lo  # placeholder; result forced to 0 below
        pad = 1e-9 * max(hi - lo, 1.0)
        if np.any(work < lo - pad) or np.any(work > hi + pad):
            raise ComplexValued(
                f"{self.label} at s={self.s} is real only on [{lo}, {hi}]"
            )
        pref = np.ones_like(work)
        xi = work
        for sign in self.recipe:
            pref = pref * sfl * (sfl - 4.0 * xi)
            rad = np.clip(0.25 - xi / sfl, 0.0, None)
            xi = 0.5 + sign * np.sqrt(rad)
        out = pref * _u0_raw(xi, sfl, u_series_floats(self.s, N))
        if self.recipe:
            out[at_max] = 0.0
        out = out.reshape(arr.shape)
        return float(out) if scalar_in else out

    def value(self, x, N: int = DEFAULT_ORDER):
        """V_n^(m)(x), the (negative) potential branch."""
        return V_from_U(self.u_value(x, N), self.s)


def family_node(m: int, n: int, s: Scalar) -> PotentialNode:
    """Construct V_n^(m) with exact turning points.

    Raises ComplexValued when the recipe has no real interval at this s
    (for 2 < s <= 3 that is every recipe containing a minus sign)."""
    if m < 0 or n < 0:
        raise ValueError("family and sequence indices must be >= 0")
    sf = exactify(s)
    if not 0 < sf <= 4:
        raise DomainError("switchback family needs 0 < s <= 4")
    recipe = family_recipe(m, n)
    lo, hi = _propagate_domain(sf, recipe)
    return PotentialNode(m=m, n=n, s=sf, recipe=recipe, lower_tp=lo, upper_tp=hi)
