"""Series engines and the radius-of-convergence landscape.

The potential profile U(x,s) = x^2 (1 + sum a_n(s) x^n) solves its functional
equation order by order; organized over a common deformed-factorial
denominator the same data becomes integer numerator polynomials p_n(s).
Exact rationals here are the oracle: the float pipeline carries guard digits
because the recursion cancels ~0.08 n digits per step (plain double precision
produces pure noise beyond n ~ 120).

Run:  python demos/series_and_radius.py
"""

from fractions import Fraction

from schroder_lab import p_polynomials, poly_eval, radius_estimate, u_coefficients
from schroder_lab.algebra import deformed_factorial

s = Fraction(5, 2)
series = u_coefficients(s, 12)
print("exact a_n at s = 5/2:")
for n in range(1, 9):
    print(f"  a_{n} = {series.a(n)}")

print("\nnumerator polynomials (integer coefficients, ascending powers of s):")
for n, p in enumerate(p_polynomials(6), start=1):
    print(f"  p_{n}(s): degree {p.degree}, coefficients {list(map(int, p.coefficients))}")

print("\nconsistency a_n (s-1)^2 [n]_s! = p_n(s), exactly:")
polys = p_polynomials(12)
ok = all(
    series.a(n) * (s - 1) ** 2 * deformed_factorial(n, s) == poly_eval(polys[n - 1], s)
    for n in range(1, 13)
)
print(f"  holds for n <= 12 at s = 5/2: {ok}")

print("\nradius of convergence (tail log-slope estimate at order 400):")
targets = {
    Fraction(1, 2): "1/2      (flat branch)",
    Fraction(3, 2): "1/3      (|1 - 1/s| branch)",
    Fraction(5, 2): "0.625    (s/4 branch)",
    Fraction(7, 2): "0.875    (s/4 branch)",
}
for sv, label in targets.items():
    est = radius_estimate(sv, 400)
    print(f"  s = {str(sv):>4}: R ~ {est.estimate:.4f}   expected {label}")
