import numpy as np
import pytest

from dircap.geometry import (
    CircleSet,
    build_cantor,
    build_E_beta,
    carleson_integral,
    counting_function,
    dist_to_set,
    layer_cake,
)

TWO_PI = 2 * np.pi


class TestConstructors:
    def test_e_beta_small(self):
        E = build_E_beta(1.0, 4)
        want = sorted([0.0, 1 / np.log(2), 1 / np.log(3), 1 / np.log(4)])
        np.testing.assert_allclose(E.points, want, atol=1e-15)

    def test_e_beta_gaps_decrease_toward_accumulation(self):
        E = build_E_beta(1.0, 50)
        # gaps between consecutive members shrink toward the accumulation
        # point at angle 0 (the gap that starts at 0 is a truncation
        # artifact and the largest-angle gap wraps the far side)
        pts = E.points[1:]  # drop the accumulation point itself
        lens = np.diff(pts)
        assert np.all(np.diff(lens) > 0)  # increasing with angle

    def test_e_beta_guards(self):
        with pytest.raises(ValueError):
            build_E_beta(1.2, 100)
        with pytest.raises(ValueError):
            build_E_beta(0.5, 2)

    def test_cantor_depth_one(self):
        E = build_cantor([1 / 3], 1, arc_start=0.0, arc_length=1.5)
        assert E.intervals.shape == (2, 2)
        assert E.gaps.shape[0] == 2  # middle gap + complement of the base arc
        inner_gap = E.gaps[np.argmin(E.gaps[:, 1])]
        assert abs(inner_gap[1] - 1.5 / 3) < 1e-14

    def test_cantor_gap_count(self):
        for depth in (1, 2, 3, 4):
            E = build_cantor([0.3], depth)
            # 2^depth - 1 removed gaps plus the complement of the base arc
            assert E.gaps.shape[0] == 2**depth - 1 + 1
            assert E.intervals.shape[0] == 2**depth

    def test_cantor_guards(self):
        with pytest.raises(ValueError):
            build_cantor([1.2], 2)
        with pytest.raises(ValueError):
            build_cantor([0.3], 0)

    def test_empty_set_rejected(self):
        with pytest.raises(ValueError):
            CircleSet.from_points([])

    def test_json_roundtrip(self):
        for E in (build_E_beta(1.0, 20), build_cantor([0.4], 3)):
            E2 = CircleSet.from_dict(E.to_dict())
            np.testing.assert_allclose(E2.angles, E.angles)
            np.testing.assert_allclose(E2.gaps, E.gaps)


class TestDistance:
    def test_zero_on_points(self):
        E = build_E_beta(1.0, 30)
        assert np.all(dist_to_set(E.points, E) == 0.0)

    def test_antipodal_chord(self):
        E = CircleSet.from_points([0.0])
        assert abs(dist_to_set(np.pi, E) - 2.0) < 1e-15

    def test_quarter_turn(self):
        E = CircleSet.from_points([0.0, np.pi])
        assert abs(dist_to_set(np.pi / 2, E) - np.sqrt(2)) < 1e-15

    def test_arc_metric(self):
        E = CircleSet.from_points([0.0])
        assert abs(dist_to_set(np.pi / 2, E, metric="arc") - np.pi / 2) < 1e-15

    def test_interval_membership(self):
        E = build_cantor([1 / 3], 1, arc_start=0.0, arc_length=1.5)
        inside = 0.1  # first kept interval is [0, 0.5]
        assert dist_to_set(inside, E) == 0.0
        gap_mid = 0.75
        assert dist_to_set(gap_mid, E) > 0.0

    def test_lipschitz_in_query(self, rng):
        E = build_E_beta(1.0, 100)
        t = rng.uniform(0, TWO_PI, size=300)
        s = t + rng.uniform(-0.01, 0.01, size=300)
        dt = dist_to_set(t, E)
        ds = dist_to_set(np.mod(s, TWO_PI), E)
        chordal = np.abs(2 * np.sin((t - s) / 2))
        assert np.all(np.abs(dt - ds) <= chordal + 1e-12)

    def test_metric_guard(self):
        with pytest.raises(ValueError):
            dist_to_set(0.5, CircleSet.from_points([0.0]), metric="euclid")


class TestCountingFunction:
    def test_two_point_set(self):
        E = CircleSet.from_points([0.0, np.pi])
        assert counting_function(E, np.pi / 2 - 0.01) == 4
        assert counting_function(E, np.pi / 2) == 0
        assert counting_function(E, 3.0) == 0

    def test_larger_than_half_max_gap(self):
        E = build_E_beta(1.0, 10)
        tmax = float(np.max(E.gap_lengths())) / 2
        assert counting_function(E, tmax + 0.01) == 0

    def test_enumerates_gaps(self):
        E = build_E_beta(1.0, 100)
        assert counting_function(E, 1e-6) == 2 * E.gaps.shape[0]

    def test_monotone_nonincreasing(self):
        E = build_E_beta(1.0, 40)
        ts = np.linspace(1e-4, 3.0, 50)
        vals = [counting_function(E, t) for t in ts]
        assert all(a >= b for a, b in zip(vals, vals[1:]))

    def test_right_continuous_at_breakpoints(self):
        E = CircleSet.from_points([0.0, np.pi])
        t0 = np.pi / 2  # half the gap length: the indicator drops here
        assert counting_function(E, t0) == counting_function(E, t0 + 1e-12)

    def test_guard(self):
        with pytest.raises(ValueError):
            counting_function(CircleSet.from_points([0.0]), 0.0)


class TestLayerCake:
    def test_constant_gives_gap_measure(self):
        E = build_E_beta(1.0, 25)
        v = layer_cake(E, lambda t: np.ones_like(t))
        assert abs(v - E.total_gap_length()) < 1e-10

    def test_linear_two_points(self):
        E = CircleSet.from_points([0.0, np.pi])
        # per gap: 2 * int_0^{pi/2} t dt = (pi/2)^2; two gaps -> pi^2/2
        v = layer_cake(E, lambda t: t)
        assert abs(v - np.pi**2 / 2) < 1e-10

    def test_matches_grid_quadrature(self):
        E = CircleSet.from_points([0.0, np.pi])
        M = 4096
        theta = TWO_PI * np.arange(M) / M
        d = dist_to_set(theta, E, metric="arc")
        lhs = float(np.mean(np.sqrt(d))) * TWO_PI
        rhs = layer_cake(E, lambda t: np.sqrt(t))
        assert abs(lhs - rhs) < 1e-3 * rhs

    def test_counting_function_form_agrees(self):
        # right-hand side evaluated directly from N_E(t) on a fine t-grid
        E = build_E_beta(1.0, 15)
        ts = np.linspace(1e-6, np.pi, 200001)
        N = np.array([counting_function(E, t) for t in ts])
        omega = ts**2
        rhs = float(np.trapezoid(omega * N, ts))
        lhs = layer_cake(E, lambda t: t**2)
        assert abs(lhs - rhs) < 1e-3 * lhs


class TestCarleson:
    def test_two_point_closed_form(self):
        E = CircleSet.from_points([0.0, np.pi])
        want = TWO_PI * (1 + np.log(2 / np.pi))
        res = carleson_integral(E)
        assert abs(res.value - want) < 1e-12
        assert not res.diverging

    def test_single_point_closed_form(self):
        E = CircleSet.from_points([1.0])
        want = TWO_PI * (1 + np.log(2 / TWO_PI))
        assert abs(carleson_integral(E).value - want) < 1e-12

    def test_e_beta_truncations_increase_and_flag(self):
        vals = []
        for n_max in (10**3, 10**4, 10**5):
            res = carleson_integral(build_E_beta(1.0, n_max))
            vals.append(res.value)
            assert res.diverging
        assert vals[0] < vals[1] < vals[2]

    def test_adding_a_point_never_decreases(self, rng):
        base = [0.0, 1.0, 2.5, 4.0]
        E0 = CircleSet.from_points(base)
        v0 = carleson_integral(E0).value
        for extra in rng.uniform(0, TWO_PI, size=5):
            E1 = CircleSet.from_points(base + [float(extra)])
            assert carleson_integral(E1).value >= v0 - 1e-12

    def test_cantor_depth_trend(self):
        vals = []
        ratios = [1 - 2 ** (-1 / k) for k in range(1, 13)]
        for depth in (4, 8, 12):
            res = carleson_integral(build_cantor(ratios, depth))
            vals.append(res.value)
        assert vals[0] < vals[1] < vals[2]
