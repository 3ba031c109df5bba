"""Discrete-map algebra, singular-endpoint transit times, and the ordering of
switchback potentials along the continuous evolution.

A zero-energy particle crossing a stretch [a, b] of one potential branch
takes

    transit = integral_a^b dx / sqrt(-V(x)),

with inverse-square-root singularities wherever a or b is a turning point.
Each potential in the path is crossed in exactly one unit of time for
2 < s <= 3; for 3 < s < 4 the potentials instead combine into groups of
constant m+n whose transit times *sum* to one unit.  The group ordering (the
"chemin") is reconstructed here as a zigzag walk: each leg traverses the full
turning-point interval of its node, adjacent legs share the endpoint the
particle bounces at, and the direction alternates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import Scalar, exactify
from .errors import DomainError, ScheduleInconsistency
from .potentials import PotentialNode, family_node
from .quadrature import tanh_sinh
from .report import VerificationReport
from .series import DEFAULT_ORDER

#: the group walk is trusted this far; beyond it the ordering is inferred
TRUSTED_GROUPS = 5


@dataclass(frozen=True)
class Orbit:
    s: Fraction
    points: Tuple[Fraction, ...]  # points[0] = x0, points[k+1] = f(points[k])


def logistic_step(x: Fraction, s: Fraction) -> Fraction:
    return s * x * (1 - x)


def map_iterate(x0: Scalar, s: Scalar, k: int) -> Orbit:
    """k exact iterates of x -> s x (1-x) starting at x0."""
    sf, x = exactify(s), exactify(x0)
    points = [x]
    for _ in range(k):
        points.append(logistic_step(points[-1], sf))
    return Orbit(s=sf, points=tuple(points))


def fixed_points(s: Scalar) -> Tuple[Fraction, Fraction]:
    """(0, 1 - 1/s), exact."""
    sf = exactify(s)
    if sf == 0:
        raise ValueError("s must be nonzero")
    return Fraction(0), 1 - 1 / sf


def two_cycle(s: Scalar) -> Optional[Tuple[float, float]]:
    """The period-2 points (s+1 +- sqrt((s+1)(s-3)))/(2s), ascending, for
    s > 3; None for s <= 3 (at s=3 the cycle merges with the fixed point)."""
    sf = exactify(s)
    if sf <= 3:
        return None
    sfl = float(sf)
    disc = math.sqrt((sfl + 1.0) * (sfl - 3.0))
    return ((sfl + 1.0 - disc) / (2.0 * sfl), (sfl + 1.0 + disc) / (2.0 * sfl))


# ---------------------------------------------------------------------------
# transit times


def transit_time(
    node: PotentialNode,
    a: Scalar,
    b: Scalar,
    N: int = DEFAULT_ORDER,
    *,
    target: float = 1e-9,
) -> float:
    """integral_a^b dx/sqrt(-V) under one potential branch.

    Turning-point endpoints are integrable inverse-square-root singularities;
    tanh-sinh handles them directly.  A nonpositive -V in the interior means
    the requested stretch is not a real, downhill piece of this branch and
    raises DomainError.
    """
    af, bf = float(a), float(b)
    if af == bf:
        return 0.0
    if af > bf:
        raise ValueError("need a < b")
    span = bf - af

    def integrand(x):
        w = -node.value(x, N)
        return 1.0 / (w ** 0.5)

    def bad_value(x):
        raise DomainError(
            f"-V <= 0 at x={x!r}, {1e-12 * span:.3g} away from both endpoints "
            f"of [{af}, {bf}] under {node.label}"
        )

    value, _ = tanh_sinh(integrand, af, bf, target=target, on_bad_value=bad_value)
    return value


# ---------------------------------------------------------------------------
# the chemin


@dataclass(frozen=True)
class Leg:
    node: PotentialNode
    start: Fraction
    end: Fraction  # start and end are the node's two turning points

    @property
    def ascending(self) -> bool:
        return self.end > self.start


@dataclass(frozen=True)
class CheminSchedule:
    """Groups of potential branches, one unit of transit time per group.

    ``groups[g]`` holds the legs of group g+1 in traversal order; within a
    group m+n is constant (= group number) and it increments across groups.
    ``extrapolated_from`` marks the first group index (1-based) past the
    trusted prefix, or None when every group is within it.
    """

    s: Fraction
    groups: Tuple[Tuple[Leg, ...], ...]
    extrapolated_from: Optional[int]

    def group_nodes(self, g: int) -> Tuple[PotentialNode, ...]:
        return tuple(leg.node for leg in self.groups[g])


def _group_members(s: Fraction, total: int) -> List[PotentialNode]:
    """All real nodes with m+n = total, n >= 1."""
    from .errors import ComplexValued

    members = []
    for m in range(total):
        try:
            members.append(family_node(m, total - m, s))
        except ComplexValued:
            continue
    return members


def _order_group(
    members: Sequence[PotentialNode], position: Fraction, descending: bool
) -> Optional[List[Leg]]:
    """Zigzag ordering: each leg starts at the current position on the
    matching turning point and flips direction.  Depth-first with
    backtracking; None if no complete ordering exists."""
    if not members:
        return []
    for i, node in enumerate(members):
        if descending and node.upper_tp == position:
            leg = Leg(node, node.upper_tp, node.lower_tp)
        elif not descending and node.lower_tp == position:
            leg = Leg(node, node.lower_tp, node.upper_tp)
        else:
            continue
        rest = _order_group(
            [mm for j, mm in enumerate(members) if j != i], leg.end, not descending
        )
        if rest is not None:
            return [leg] + rest
    return None


def build_chemin(s: Scalar, groups: int) -> CheminSchedule:
    """Order the switchback potentials along the particle path.

    Group g consists of every real node with m+n = g; the walk starts at
    s/4 heading down (the primary potential has just carried the particle
    from 1/2 up to s/4) and legs chain by shared turning points.  For
    2 < s <= 3 only the all-plus recipes are real, so every group is the
    singleton {V_g}.

    The boundary s = 4 is degenerate: every branch lives on [0, 1], so
    turning-point matching cannot discriminate and the constant-(m+n)
    grouping itself breaks past group 2 (the closed forms give the group-3
    legs a total of 2 log_4(7/4) != 1; the physical time-unit boundary
    falls inside a branch whose recipe has two consecutive minus signs,
    outside this family taxonomy).  Schedules at s = 4 are returned as
    constructed, groups 1 and 2 of which are correct.
    """
    sf = exactify(s)
    if not 2 < sf <= 4:
        raise DomainError("chemin construction needs 2 < s <= 4")
    if groups < 0:
        raise ValueError("groups must be >= 0")
    position = sf / 4
    descending = True
    ordered: List[Tuple[Leg, ...]] = []
    for g in range(1, groups + 1):
        members = _group_members(sf, g)
        legs = _order_group(members, position, descending) if members else None
        if not legs or len(legs) != len(members):
            raise ScheduleInconsistency(
                f"no turning-point-consistent ordering for group {g} at s={sf}"
            )
        ordered.append(tuple(legs))
        position = legs[-1].end
        descending = not descending if len(legs) % 2 == 1 else descending
    extrapolated = None
    if sf > 3 and groups > TRUSTED_GROUPS:
        extrapolated = TRUSTED_GROUPS + 1
    return CheminSchedule(s=sf, groups=tuple(ordered), extrapolated_from=extrapolated)


def verify_chemin(schedule: CheminSchedule, N: int = DEFAULT_ORDER) -> VerificationReport:
    """Check that every group's legs sum to one unit of transit time.

    Tolerance is stratified by parameter: the order-N truncation error is
    larger when the evaluation points approach the radius s/4, so s > 3 gets
    2e-4 and s <= 3 gets 1e-5 (both calibrated at N = 200)."""
    report = VerificationReport()
    tol = 2e-4 if schedule.s > 3 else 1e-5
    for g, legs in enumerate(schedule.groups, start=1):
        total = 0.0
        for leg in legs:
            total += transit_time(leg.node, leg.node.lower_tp, leg.node.upper_tp, N)
        tag = ""
        if schedule.extrapolated_from is not None and g >= schedule.extrapolated_from:
            tag = " [extrapolated]"
        names = "+".join(leg.node.label for leg in legs)
        report.add(f"group {g} ({names}) total transit, s={schedule.s}{tag}", 1.0, total, tol)
    return report
