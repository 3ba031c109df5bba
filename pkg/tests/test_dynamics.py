import math
import random
from fractions import Fraction

import pytest

from schroder_lab.dynamics import (
    build_chemin,
    fixed_points,
    logistic_step,
    map_iterate,
    transit_time,
    two_cycle,
    verify_chemin,
    CheminSchedule,
)
from schroder_lab.errors import DomainError
from schroder_lab.potentials import family_node
from schroder_lab.schroder import trajectory

S52 = Fraction(5, 2)
S103 = Fraction(10, 3)


# -- exact map algebra ------------------------------------------------------------


def test_map_iterate_turning_point_orbit():
    orbit = map_iterate(Fraction(1, 2), S52, 3)
    assert orbit.points == (
        Fraction(1, 2),
        Fraction(5, 8),
        Fraction(75, 128),
        Fraction(19875, 32768),
    )


def test_map_iterate_fixed_point():
    orbit = map_iterate(Fraction(3, 5), S52, 2)
    assert orbit.points == (Fraction(3, 5),) * 3


def test_map_iterate_s103_step():
    assert map_iterate(Fraction(5, 6), S103, 1).points[1] == Fraction(25, 54)


def test_orbit_identity_random_rationals():
    # digit counts double per exact step, so generic orbits are checked to
    # k=12 (~4096-bit entries); a k=50 exact orbit is only feasible on an
    # eventually periodic point, covered below
    rng = random.Random(42)
    for _ in range(20):
        x0 = Fraction(rng.randint(1, 99), 100)
        s = Fraction(rng.randint(1, 40), 10)
        orbit = map_iterate(x0, s, 12)
        for a, b in zip(orbit.points, orbit.points[1:]):
            assert b == s * a * (1 - a)


def test_orbit_identity_fifty_steps_on_fixed_point():
    orbit = map_iterate(Fraction(7, 10), S103, 50)
    assert orbit.points == (Fraction(7, 10),) * 51
    for a, b in zip(orbit.points, orbit.points[1:]):
        assert b == logistic_step(a, S103)


def test_fixed_points():
    assert fixed_points(S52) == (0, Fraction(3, 5))
    assert fixed_points(S103) == (0, Fraction(7, 10))
    assert fixed_points(Fraction(1)) == (0, 0)


def test_two_cycle_values():
    lo, hi = two_cycle(S103)
    assert lo == pytest.approx((13 - math.sqrt(13)) / 20, abs=1e-15)
    assert hi == pytest.approx((13 + math.sqrt(13)) / 20, abs=1e-15)
    # the two points map to each other
    sfl = float(S103)
    assert sfl * lo * (1 - lo) == pytest.approx(hi, abs=1e-14)
    assert sfl * hi * (1 - hi) == pytest.approx(lo, abs=1e-14)


def test_two_cycle_absent_at_or_below_3():
    assert two_cycle(S52) is None
    assert two_cycle(Fraction(3)) is None


def test_turning_points_converge_for_s52():
    star = Fraction(3, 5)
    orbit = map_iterate(Fraction(1, 2), S52, 10)
    assert abs(orbit.points[10] - star) < abs(orbit.points[2] - star)


def test_turning_points_do_not_converge_for_s103():
    # the mother-sequence turning points stay pinned at 25/54 and 5/6 for
    # every n >= 1 (the map orbit itself wanders on toward the two-cycle:
    # f(25/54) = 3625/4374, which seeds the offspring families instead)
    assert logistic_step(Fraction(5, 6), S103) == Fraction(25, 54)
    assert logistic_step(Fraction(25, 54), S103) == Fraction(3625, 4374)
    for n in range(1, 7):
        node = family_node(0, n, S103)
        assert (node.lower_tp, node.upper_tp) == (Fraction(25, 54), Fraction(5, 6))


# -- transit times -----------------------------------------------------------------


def test_transit_time_empty_interval():
    node = family_node(0, 1, S52)
    assert transit_time(node, Fraction(5, 8), Fraction(5, 8)) == 0.0


def test_transit_time_rejects_reversed_interval():
    node = family_node(0, 1, S52)
    with pytest.raises(ValueError):
        transit_time(node, Fraction(5, 8), Fraction(75, 128))


def test_transit_matches_interpolated_time_s4():
    # between two interpolated orbit points the transit equals the time gap
    s = Fraction(4)
    x0 = Fraction(3, 10)
    t1, t2 = 0.2, 0.8
    (_, a), (_, b) = trajectory(x0, s, [t1, t2]).samples
    node = family_node(0, 0, s)
    assert transit_time(node, a, b) == pytest.approx(t2 - t1, abs=1e-7)


def test_transit_matches_interpolated_time_s52():
    s = S52
    x0 = Fraction(2, 5)
    t1, t2 = 0.1, 0.9
    (_, a), (_, b) = trajectory(x0, s, [t1, t2]).samples
    node = family_node(0, 0, s)
    assert transit_time(node, a, b) == pytest.approx(t2 - t1, abs=1e-7)


def test_reference_unit_transits_s52():
    checks = [
        (family_node(0, 0, S52), Fraction(1, 2), Fraction(5, 8)),
        (family_node(0, 1, S52), Fraction(75, 128), Fraction(5, 8)),
        (family_node(0, 2, S52), Fraction(75, 128), Fraction(19875, 32768)),
        (family_node(0, 3, S52), Fraction(1281241875, 2147483648), Fraction(19875, 32768)),
    ]
    for node, a, b in checks:
        assert transit_time(node, a, b) == pytest.approx(1.0, abs=1e-5), node.label


def test_reference_leg_values_s103():
    legs = {
        (0, 2): 0.825728,
        (1, 1): 0.174272,
        (1, 2): 0.164433,
        (0, 3): 0.661295,
        (2, 1): 0.174272,
    }
    for (m, n), expected in legs.items():
        node = family_node(m, n, S103)
        t = transit_time(node, node.lower_tp, node.upper_tp)
        assert t == pytest.approx(expected, abs=1e-3), node.label


# -- the chemin --------------------------------------------------------------------


def test_chemin_is_singleton_mother_sequence_below_3():
    schedule = build_chemin(S52, 4)
    assert [len(g) for g in schedule.groups] == [1, 1, 1, 1]
    labels = [g[0].node.label for g in schedule.groups]
    assert labels == ["V1", "V2", "V3", "V4"]
    assert schedule.extrapolated_from is None


def test_chemin_reference_groups_s103():
    schedule = build_chemin(S103, 5)
    labels = [[leg.node.label for leg in group] for group in schedule.groups]
    assert labels == [
        ["V1"],
        ["V2", "W1"],
        ["W2", "V3", "X1"],
        ["X2", "V4", "W3", "Y1"],
        ["Y2", "W4", "V5", "X3", "Z1"],
    ]
    assert schedule.extrapolated_from is None


def test_chemin_flags_extrapolation_past_trusted_prefix():
    schedule = build_chemin(S103, 6)
    assert schedule.extrapolated_from == 6
    assert len(schedule.groups[5]) == 6


def test_chemin_m_plus_n_invariant():
    schedule = build_chemin(S103, 5)
    for g, group in enumerate(schedule.groups, start=1):
        assert all(leg.node.m + leg.node.n == g for leg in group)


def test_chemin_turning_points_match_along_path():
    schedule = build_chemin(S103, 6)
    position = S103 / 4
    for group in schedule.groups:
        for leg in group:
            assert leg.start == position  # exact rational equality
            assert {leg.start, leg.end} == {leg.node.lower_tp, leg.node.upper_tp}
            position = leg.end


def test_chemin_directions_alternate():
    schedule = build_chemin(S103, 5)
    legs = [leg for group in schedule.groups for leg in group]
    assert not legs[0].ascending  # the first leg descends from s/4
    for a, b in zip(legs, legs[1:]):
        assert a.ascending != b.ascending


def test_chemin_requires_s_in_range():
    with pytest.raises(DomainError):
        build_chemin(Fraction(3, 2), 3)


def test_verify_chemin_empty_schedule_is_vacuous_pass():
    report = verify_chemin(CheminSchedule(S52, (), None))
    assert report.total == 0
    assert report.all_passed


def test_verify_chemin_group_sums_s52():
    report = verify_chemin(build_chemin(S52, 2))
    assert report.total == 2
    assert report.all_passed
    for row in report.checks:
        assert row.tolerance == 1e-5


def test_verify_chemin_uses_coarser_tolerance_above_3():
    report = verify_chemin(build_chemin(S103, 1))
    assert report.checks[0].tolerance == 2e-4
    assert report.all_passed


def test_verify_chemin_deep_groups_s103():
    # groups 4 and 5 involve the Y and Z families; each still sums to 1
    report = verify_chemin(build_chemin(S103, 5))
    assert report.total == 5
    assert report.all_passed


def test_chemin_at_s4_closed_form_legs():
    # at s=4 every branch lives on [0,1] and the closed forms give exact leg
    # times: V2 spans Psi from pi^2 to (3pi/2)^2 and W1 on to (2pi)^2, so the
    # legs are 2 log_4(3/2) and 2 log_4(4/3), summing to one unit
    s = Fraction(4)
    v2, w1 = family_node(0, 2, s), family_node(1, 1, s)
    assert (v2.lower_tp, v2.upper_tp) == (0, 1)
    t_v2 = transit_time(v2, 0, 1)
    t_w1 = transit_time(w1, 0, 1)
    assert t_v2 == pytest.approx(2 * math.log(1.5) / math.log(4.0), abs=1e-7)
    assert t_w1 == pytest.approx(2 * math.log(4.0 / 3.0) / math.log(4.0), abs=1e-7)
    report = verify_chemin(build_chemin(s, 2))
    assert report.all_passed


def test_chemin_grouping_breaks_at_degenerate_s4():
    # known limitation: with all turning points coincident the constant-(m+n)
    # rule no longer tracks the unit-time boundaries; the group-3 total is
    # 2 log_4(7/4), exactly as the closed-form branch constants predict
    report = verify_chemin(build_chemin(Fraction(4), 3))
    assert not report.checks[2].passed
    assert report.checks[2].computed == pytest.approx(
        2 * math.log(7.0 / 4.0) / math.log(4.0), abs=1e-6
    )
