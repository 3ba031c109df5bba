"""The s = 1 potential series: an asymptotic series in disguise.

At s = 1 the potential profile degenerates to W(x) = x^4 (1 + sum c_n x^n).
Through order ~25 the exact rational c_n suggest a convergent series with
radius about 1/2 - and then |c_n|^(1/n) starts climbing linearly, tracking
the factorial law f_n = 2^(-n/2) e^(-3n/2) n!.  The generating integral of
the f_n has a pole on the positive axis; its Cauchy principal value stays
finite for every x.

Run:  python demos/s1_divergence.py
"""

from pathlib import Path

import numpy as np

from schroder_lab import growth_analysis, pv_integral, s1_coefficients
from schroder_lab.asymptotics import reference_growth

OUT = Path(__file__).resolve().parent

series = s1_coefficients(10)
print("exact low-order coefficients c_n:")
print(" ", ", ".join(str(series.coefficient(n + 4)) for n in range(1, 9)))

diag = growth_analysis(300)
print("\n|c_n|^(1/n) against the factorial reference f_n^(1/n):")
for n in (5, 15, 25, 50, 100, 200, 300):
    print(f"  n={n:3d}: |c_n|^(1/n) = {diag.c_root[n - 1]:8.4f}   f_n^(1/n) = {diag.f_root[n - 1]:8.4f}")
print(f"  least-squares slope ratio over n in [150, 300]: {diag.slope_ratio(150, 300):.4f}")
print(f"  fitted L in |c_n| ~ L^n exp(n ln n): {diag.fitted_L(200, 300):.4f}"
      f"  (e^(-5/2)/sqrt(2) = {np.exp(-2.5) / np.sqrt(2):.4f})")

print("\nprincipal value of the generating integral:")
for x in (-1.0, 0.0, 0.01, 0.5, 1.0, 2.0):
    print(f"  I({x:+.2f}) = {pv_integral(x):.10f}")
trunc = 1.0 + reference_growth(1) * 0.01 + reference_growth(2) * 0.0001
print(f"  small-x check: I(0.01) - (1 + f1 x + f2 x^2) = {pv_integral(0.01) - trunc:.2e}")

csv_path = OUT / "s1_growth.csv"
with open(csv_path, "w", newline="") as fh:
    fh.write("n,c_root,f_root\n")
    for n, c, f in zip(diag.n, diag.c_root, diag.f_root):
        fh.write(f"{n},{c:.17g},{f:.17g}\n")
print(f"\nwrote {csv_path}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(diag.n, diag.c_root, label="|c_n|^(1/n)")
    ax.plot(diag.n, diag.f_root, label="f_n^(1/n)")
    ax.axhline(2.0, color="k", lw=0.6, ls=":", label="apparent 1/R = 2")
    ax.set_xlabel("n")
    ax.legend()
    ax.set_title("Asymptotic growth of the s = 1 series")
    fig.tight_layout()
    fig.savefig(OUT / "s1_growth.png", dpi=120)
    print(f"wrote {OUT / 's1_growth.png'}")
except ImportError:
    print("matplotlib not available; skipped the figure")
