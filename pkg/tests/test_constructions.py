"""Closed-form builders: triangles, K4 points, template families, forms."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddcycles.arith import STClass, classify
from oddcycles.constructions import (
    FORMS,
    ParamId,
    QuadraticForm,
    form_represents,
    k4_points,
    k4_triangle,
    param_cycle,
    triangle_cycle,
    triangle_witness_via_triples,
    z2_doubling_map,
)
from oddcycles.search import verify_cycle
from oddcycles.vectors import magnitude_sq


class TestTriangleCycle:
    def test_smallest_case(self):
        cycle = triangle_cycle(2)
        assert verify_cycle(cycle).valid
        assert cycle.t == 2 and len(cycle) == 3

    @pytest.mark.parametrize("s", [6, 14, 18, 26, 1998])
    def test_verified_three_cycle(self, s):
        cycle = triangle_cycle(s)
        assert verify_cycle(cycle).valid
        assert cycle.t == s

    def test_rejects_class_t(self):
        with pytest.raises(ValueError):
            triangle_cycle(10)

    def test_witness_rule_matches_classification(self):
        # Independent S test: s = a^2+b^2+c^2 with a+b = c (up to signs).
        for t in range(2, 2000, 4):
            witness = triangle_witness_via_triples(t)
            assert (witness is not None) == (classify(t) is STClass.S), t


class TestK4Points:
    def test_r2_m4(self):
        points = k4_points(4, 2)
        for i in range(4):
            for j in range(i + 1, 4):
                d = sum((a - b) ** 2 for a, b in zip(points[i], points[j]))
                assert d == 2

    def test_rejects_odd_r(self):
        with pytest.raises(ValueError):
            k4_points(4, 5)

    def test_rejects_small_m(self):
        with pytest.raises(ValueError):
            k4_points(3, 2)

    def test_random_even_r(self):
        rng = random.Random(20240817)
        for _ in range(100):
            r = 2 * rng.randint(1, 5000)
            m = rng.choice((4, 5, 6))
            points = k4_points(m, r)  # raises if any pairwise distance is off
            assert len(points) == 4 and all(len(p) == m for p in points)

    def test_triangle_extraction(self):
        cycle = k4_triangle(5, 10)
        assert verify_cycle(cycle).valid
        assert cycle.t == 10


class TestParamCycle:
    def test_param1_unit(self):
        cycle = param_cycle(ParamId.PARAM1, 1, 0)
        assert cycle.t == 6 and len(cycle) == 5

    def test_param2_unit(self):
        cycle = param_cycle(ParamId.PARAM2, 0, 1)
        assert cycle.t == 110 and len(cycle) == 5

    def test_param1_can_hit_class_s_values(self):
        assert param_cycle(ParamId.PARAM1, 1, 1).t == 14
        assert classify(14) is STClass.S

    def test_rejects_origin(self):
        with pytest.raises(ValueError):
            param_cycle(ParamId.PARAM1, 0, 0)

    @given(
        st.integers(min_value=-50, max_value=50),
        st.integers(min_value=-50, max_value=50),
    )
    @settings(max_examples=200)
    def test_grid_instantiations_verify(self, x, y):
        if x == 0 and y == 0:
            return
        for pid in (ParamId.PARAM1, ParamId.PARAM2):
            cycle = param_cycle(pid, x, y)
            want = FORMS[pid](x, y)
            assert cycle.t == want
            assert all(magnitude_sq(v) == want for v in cycle.vectors)


class TestFormRepresents:
    def test_triangle_form_six(self):
        assert form_represents(QuadraticForm(2, 2, 2), 6) == (1, 1)

    def test_param1_parity_obstruction(self):
        assert form_represents(QuadraticForm(6, 2, 6), 7) is None

    def test_param1_ten(self):
        assert form_represents(QuadraticForm(6, 2, 6), 10) == (1, -1)

    def test_rejects_indefinite(self):
        with pytest.raises(ValueError):
            form_represents(QuadraticForm(1, 5, 1), 10)

    def test_soundness_and_completeness(self):
        # wider-bound oracle: scan a box twice the derived bound
        rng = random.Random(7)
        for _ in range(40):
            t = rng.randint(1, 5000)
            for f in (QuadraticForm(2, 2, 2), QuadraticForm(6, 2, 6)):
                got = form_represents(f, t)
                wide = 2 * (int(t**0.5) + 2)
                oracle = None
                for x in range(0, wide + 1):
                    for y in range(-wide, wide + 1):
                        if f(x, y) == t:
                            oracle = (x, y)
                            break
                    if oracle:
                        break
                assert (got is not None) == (oracle is not None), (f, t)
                if got is not None:
                    assert f(*got) == t


class TestZ2Doubling:
    def test_fixed_point(self):
        assert z2_doubling_map((0, 0)) == (0, 0)

    def test_example(self):
        assert z2_doubling_map((1, 2)) == (3, -1)

    @given(st.tuples(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6)),
           st.tuples(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6)))
    @settings(max_examples=100)
    def test_doubles_squared_distances(self, p, q):
        d = (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
        mp, mq = z2_doubling_map(p), z2_doubling_map(q)
        d2 = (mp[0] - mq[0]) ** 2 + (mp[1] - mq[1]) ** 2
        assert d2 == 2 * d
