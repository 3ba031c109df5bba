"""The family matrix of switchback potentials at s = 10/3 and the ordering
of branches along the particle path.

Past the first bifurcation the turning points of the mother sequence V_n stop
converging: they stay pinned at 25/54 and 5/6 while the discrete map heads
for its two-cycle.  Offspring families (W, X, Y, Z = one extra alternating
sign in the substitution recipe each) supply the missing branches near the
cycle points, and the particle path threads them in groups of constant
m + n whose transit times sum to exactly one unit.

Run:  python demos/switchback_families.py
"""

from fractions import Fraction

from schroder_lab import build_chemin, family_node, transit_time, two_cycle, verify_chemin

S = Fraction(10, 3)

print(f"two-cycle of the map at s = 10/3: {two_cycle(S)[0]:.6f}, {two_cycle(S)[1]:.6f}\n")

print("family members (m = family, n = sequence), with exact turning points:")
for m, n in [(0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (4, 1)]:
    node = family_node(m, n, S)
    print(
        f"  {node.label:>3} recipe {''.join('+' if c > 0 else '-' for c in node.recipe):<6}"
        f" on [{float(node.lower_tp):.6f}, {float(node.upper_tp):.6f}]"
        f"  = [{node.lower_tp}, {node.upper_tp}]"
    )

print("\nthe path, grouped into unit-time blocks:")
schedule = build_chemin(S, 5)
for g, group in enumerate(schedule.groups, start=1):
    legs = []
    total = 0.0
    for leg in group:
        t = transit_time(leg.node, leg.node.lower_tp, leg.node.upper_tp)
        total += t
        arrow = "up" if leg.ascending else "down"
        legs.append(f"{leg.node.label}({arrow} {t:.6f})")
    print(f"  group {g}: {' -> '.join(legs)}   sum = {total:.6f}")

print("\nverification report:")
report = verify_chemin(schedule)
for line in report.lines():
    print(" ", line)
print(f"  {report.passed}/{report.total} groups at unit transit time")
