"""Scalar arithmetic, polynomials in the map parameter s, and deformed integers.

Scalars come in two modes and the mode is chosen per computation, never mixed
implicitly:

* exact mode  -- ``fractions.Fraction`` (arbitrary-precision, always reduced,
  positive denominator).  Every coefficient recursion in this package can run
  in exact mode, which is the oracle for all floating-point results.
* float mode  -- ordinary ``float`` carrying >= 15 significant digits.
  Demotion from exact to float is explicit via :func:`as_float`.

The deformed ("s-deformed") integers are the q-analogs at q = s:

    [k]_s = (s^k - 1)/(s - 1),      [n]_s! = prod_{k=1..n} [k]_s,

with the analytic limit [k]_1 = k, so the s -> 1 machinery downstream works
without special-casing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]

#: exact one, used to seed duck-typed recursions
ONE = Fraction(1)


def exactify(value) -> Fraction:
    """Coerce to an exact rational.

    Strings are parsed rational-first: "5/2", "2.5" and "3" are all accepted
    and all produce exact values ("2.5" by its literal digits, a float by its
    exact binary value).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def as_float(value: Scalar) -> float:
    """Explicit demotion to float mode."""
    return float(value)


def is_exact(value: Scalar) -> bool:
    return isinstance(value, (Fraction, int))


def format_scalar(value: Scalar) -> str:
    """Render a scalar for CSV output: exact values as "p/q" (or a bare
    integer), floats with 17 significant digits."""
    if isinstance(value, (Fraction, int)):
        return str(value)
    return format(float(value), ".17g")


def deformed_integer(k: int, s: Scalar) -> Scalar:
    """[k]_s = (s^k - 1)/(s - 1); the limit value k at s = 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if s == 1:
        return Fraction(k) if is_exact(s) else float(k)
    return (s**k - 1) / (s - 1)


def deformed_factorial(n: int, s: Scalar) -> Scalar:
    """[n]_s! = prod_{k=1..n} [k]_s; the empty product is 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    result = ONE if is_exact(s) else 1.0
    for k in range(1, n + 1):
        result = result * deformed_integer(k, s)
    return result


class SPolynomial:
    """A polynomial in the map parameter s with exact rational coefficients.

    Coefficients are stored ascending in degree with trailing zeros trimmed,
    so ``degree`` is well-defined.  Instances are immutable.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        coeffs = [Fraction(c) for c in coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [Fraction(0)]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("SPolynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __eq__(self, other):
        if isinstance(other, SPolynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"SPolynomial({list(self.coefficients)})"

    def __add__(self, other: "SPolynomial") -> "SPolynomial":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return SPolynomial(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __mul__(self, other):
        if isinstance(other, SPolynomial):
            a, b = self.coefficients, other.coefficients
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
            return SPolynomial(out)
        return SPolynomial([Fraction(other) * c for c in self.coefficients])

    __rmul__ = __mul__

    def shifted(self, power: int) -> "SPolynomial":
        """Multiply by s**power."""
        return SPolynomial([Fraction(0)] * power + list(self.coefficients))

    def divide_by_one_minus_s(self):
        """Exact Euclidean division by (1 - s): p = (1-s) q + r.

        Returns ``(q, r)`` with r a constant (it equals p(1)); r == 0 iff the
        division is exact.  Synthetic division at the root s = 1.
        """
        p = self.coefficients
        d = len(p) - 1
        if d == 0:
            return SPolynomial([0]), p[0]
        h = [Fraction(0)] * d  # p = (s-1) h + p(1)
        h[d - 1] = p[d]
        for i in range(d - 1, 0, -1):
            h[i - 1] = p[i] + h[i]
        remainder = p[0] + h[0]
        return SPolynomial([-c for c in h]), remainder

    @staticmethod
    def q_integer(k: int) -> "SPolynomial":
        """[k]_s as a polynomial: 1 + s + ... + s^(k-1)."""
        return SPolynomial([Fraction(1)] * k)


def poly_eval(p: SPolynomial, s: Scalar) -> Scalar:
    """Horner evaluation of p at s; exact when s is exact."""
    acc = ONE - ONE if is_exact(s) else 0.0
    for c in reversed(p.coefficients):
        acc = acc * s + (c if is_exact(s) else float(c))
    return acc
