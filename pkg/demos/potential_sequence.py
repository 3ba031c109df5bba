"""The mother sequence of switchback potentials at s = 5/2.

A zero-energy particle released at x = 1/2 runs uphill under the primary
potential V0, bounces at the turning point 5/8, and from then on experiences
a fresh potential branch after every bounce.  Each branch V_n vanishes at two
consecutive map iterates of 1/2, the branches get shallower and narrower, and
the turning points squeeze onto the nontrivial fixed point x* = 3/5.  Every
crossing takes exactly one unit of time.

Run:  python demos/potential_sequence.py
Writes potential_sequence_s52.csv next to this script (plus a PNG when
matplotlib is importable).
"""

from fractions import Fraction
from pathlib import Path

import numpy as np

from schroder_lab import build_chemin, family_node, fixed_points, map_iterate, transit_time

S = Fraction(5, 2)
OUT = Path(__file__).resolve().parent

# the turning points are the exact orbit of 1/2
orbit = map_iterate(Fraction(1, 2), S, 6)
print("orbit of 1/2 under x -> (5/2) x (1-x):")
for k, point in enumerate(orbit.points):
    print(f"  step {k}: {point} = {float(point):.8f}")
print(f"nontrivial fixed point: {fixed_points(S)[1]}\n")

# the first few branches, sampled for plotting
nodes = [family_node(0, n, S) for n in range(4)]
grid = {}
for node in nodes:
    xs = np.linspace(float(node.lower_tp), float(node.upper_tp), 301)
    grid[node.label] = (xs, node.value(xs))
    print(
        f"{node.label}: turning points [{float(node.lower_tp):.8f}, "
        f"{float(node.upper_tp):.8f}], depth {grid[node.label][1].min():.6f}"
    )

# unit transit times, one per branch (V0 is entered mid-branch at x = 1/2)
print("\ntransit times (each should be 1):")
print(f"  V0, 1/2 -> 5/8:  {transit_time(nodes[0], Fraction(1, 2), Fraction(5, 8)):.6f}")
for leg in (leg for group in build_chemin(S, 3).groups for leg in group):
    t = transit_time(leg.node, leg.node.lower_tp, leg.node.upper_tp)
    print(f"  {leg.node.label}, full interval: {t:.6f}")

# emit the curves
csv_path = OUT / "potential_sequence_s52.csv"
with open(csv_path, "w", newline="") as fh:
    fh.write("label,x,V\n")
    for label, (xs, vs) in grid.items():
        for x, v in zip(xs, vs):
            fh.write(f"{label},{x:.17g},{v:.17g}\n")
print(f"\nwrote {csv_path}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 5))
    for label, (xs, vs) in grid.items():
        ax.plot(xs, vs, label=label)
    ax.axvline(0.6, color="k", lw=0.5, ls="--", label="x* = 3/5")
    ax.set_xlim(0.45, 0.68)
    ax.set_xlabel("x")
    ax.set_ylabel("V")
    ax.legend()
    ax.set_title("Switchback potentials, s = 5/2")
    fig.tight_layout()
    fig.savefig(OUT / "potential_sequence_s52.png", dpi=120)
    print(f"wrote {OUT / 'potential_sequence_s52.png'}")
except ImportError:
    print("matplotlib not available; skipped the figure")
