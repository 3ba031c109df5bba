"""Continuous interpolation of discrete map orbits.

The pair Psi/Phi linearizes the map: x(t) = Phi(s^t Psi(x0)) passes through
every discrete iterate at integer t and fills in the motion between them as
zero-energy Hamiltonian dynamics, with (dx/dt)^2 = -V(x).  At s = 4 the
interpolation collapses to the closed form sin^2(2^t arcsin sqrt(x0)), which
this script uses as an end-to-end oracle.

Run:  python demos/trajectory_interpolation.py
"""

import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from schroder_lab import map_iterate, trajectory, velocity

OUT = Path(__file__).resolve().parent

# s = 5/2: the samples at integer t are exactly the discrete orbit
s, x0 = Fraction(5, 2), Fraction(1, 2)
ts = np.linspace(0.0, 4.0, 33)
traj = trajectory(x0, s, [float(t) for t in ts])
exact = map_iterate(x0, s, 4).points
print("integer-time samples vs exact iterates (s = 5/2, x0 = 1/2):")
for k in range(5):
    t, x = traj.samples[8 * k]
    print(f"  t={t:.0f}: x(t) = {x:.12f},  exact = {float(exact[k]):.12f}")

print("\nvelocity along the orbit (zeros at the turning points):")
for t in (0.0, 0.5, 1.0, 1.5, 2.0):
    print(f"  t={t:3.1f}: dx/dt = {velocity(x0, s, t):+.8f}")

# s = 4: compare against the closed form
theta = math.asin(math.sqrt(0.3))
traj4 = trajectory(Fraction(3, 10), Fraction(4), [float(t) for t in np.linspace(0, 2, 17)])
worst = max(abs(x - math.sin(2.0**t * theta) ** 2) for t, x in traj4.samples)
print(f"\ns = 4 closed-form check, worst deviation over t in [0,2]: {worst:.2e}")

csv_path = OUT / "trajectory_s52.csv"
with open(csv_path, "w", newline="") as fh:
    fh.write("t,x,dxdt\n")
    for t, x in traj.samples:
        fh.write(f"{t:.17g},{x:.17g},{velocity(x0, s, t):.17g}\n")
print(f"wrote {csv_path}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(8, 6))
    ax1.plot([t for t, _ in traj.samples], [x for _, x in traj.samples], "-")
    ax1.plot(range(5), [float(p) for p in exact], "ko", label="discrete iterates")
    ax1.set_ylabel("x(t)")
    ax1.legend()
    ax2.plot(ts, [velocity(x0, s, float(t)) for t in ts])
    ax2.set_xlabel("t")
    ax2.set_ylabel("dx/dt")
    fig.suptitle("Interpolated orbit, s = 5/2, x0 = 1/2")
    fig.tight_layout()
    fig.savefig(OUT / "trajectory_s52.png", dpi=120)
    print(f"wrote {OUT / 'trajectory_s52.png'}")
except ImportError:
    print("matplotlib not available; skipped the figure")
