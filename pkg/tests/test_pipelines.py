import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orientdiam.core import oriented_core
from orientdiam.errors import PreconditionError
from orientdiam.generators import complete, cycle, petersen, random_2ec, torus_grid
from orientdiam.graph import (
    PartialOrientation,
    diameter,
    directed_distance_matrix,
    directed_distances,
    domination_radius,
    eta,
    oriented_diameter_of,
)
from orientdiam.oracle import exact_oriented_diameter, verify_orientation
from orientdiam.pipelines import (
    CORE_CELL_BOUNDS,
    LEVEL0_CELL_BOUNDS,
    LEVEL_M1_CELL_BOUNDS,
    build_h2,
    check_table,
    compute_promised_bounds,
    core_and_ears,
    greedy_short_cycle_orient,
    orient_diameter4,
    orient_general,
    orient_remaining,
    quadratic_envelope,
    short_cycle_target,
)

from conftest import two_ec_graphs


def d4_instance(n, m, seed):
    return random_2ec(n, m, seed, base="cycle", diameter_filter=4, max_tries=5)


class TestBounds:
    def test_values(self):
        assert compute_promised_bounds(4, 5) == (32, 29)
        assert compute_promised_bounds(2, 5) == (16, 7)
        assert compute_promised_bounds(8, 8) == (112, 121)
        assert compute_promised_bounds(1, 3) == (4, None)

    def test_h_equals_d_correction(self):
        # eta = 2d: core term is 4d - 1 rather than 6d - 2h - 3
        _, b2 = compute_promised_bounds(4, 8)
        r = 4 - 2
        assert b2 == 2 * r * r + 2 * r + 15

    def test_rejects_bad_eta(self):
        with pytest.raises(PreconditionError):
            compute_promised_bounds(3, 8)
        with pytest.raises(PreconditionError):
            compute_promised_bounds(3, 2)

    def test_short_cycle_target(self):
        assert short_cycle_target(3, 1) == 3
        assert short_cycle_target(4, 4) == 20

    def test_envelope_spot(self):
        assert quadratic_envelope(4) == pytest.approx(1.373 * 16 + 6.971 * 4 - 1)

    def test_tables(self):
        assert LEVEL0_CELL_BOUNDS[(3, 3)] == (9, 6) and LEVEL0_CELL_BOUNDS[(2, 1)] == (9, 1)
        assert LEVEL_M1_CELL_BOUNDS[(3, 2)] == (12, 7) and LEVEL_M1_CELL_BOUNDS[(3, 3)] == (5, 5)
        assert len(CORE_CELL_BOUNDS) == 9


class TestGreedy:
    def test_k4(self):
        o = greedy_short_cycle_orient(complete(4))
        assert oriented_diameter_of(o) == 3

    def test_c6(self):
        o = greedy_short_cycle_orient(cycle(6))
        assert oriented_diameter_of(o) == 5

    def test_torus(self):
        g = torus_grid(4, 4)
        assert diameter(g) == 4 and eta(g)[0] == 4
        assert oriented_diameter_of(greedy_short_cycle_orient(g)) <= 20

    @given(two_ec_graphs(max_n=40))
    def test_meets_target(self, g):
        o = greedy_short_cycle_orient(g)
        assert o.is_total()
        e, _ = eta(g)
        assert oriented_diameter_of(o) <= short_cycle_target(e, diameter(g))


class TestGeneral:
    def test_c5(self):
        o, rep = orient_general(cycle(5))
        assert rep.achieved == 4

    def test_petersen(self):
        o, rep = orient_general(petersen())
        assert rep.promised == 7 and rep.achieved in (6, 7)
        assert rep.chosen_branch == "branch2"
        assert exact_oriented_diameter(petersen()).optimum <= rep.achieved

    def test_record_is_flat(self):
        _, rep = orient_general(cycle(5))
        rec = rep.as_record()
        for key in ("d", "eta", "branch1", "branch2", "chosen", "promised", "achieved", "strong"):
            assert key in rec
        assert all(not isinstance(v, (dict, list)) for v in rec.values())

    @given(two_ec_graphs(max_n=45))
    def test_verified(self, g):
        o, rep = orient_general(g)
        strong, diam = verify_orientation(g, o)
        assert strong and diam == rep.achieved
        if rep.branch2_bound is not None:
            assert rep.core_achieved <= rep.branch2_bound
        assert rep.achieved <= rep.promised


class TestH2:
    def test_c9_already_dominating(self):
        H2, rep = build_h2(cycle(9), 0, 1)
        assert rep.case_tag == "already-1-step"
        assert rep.h2_diameter == 8
        assert H2.is_total()

    def test_level0_case(self):
        g = d4_instance(11, 14, 30)
        e, (p, q) = eta(g)
        H2, rep = build_h2(g, p, q)
        assert rep.case_tag == "level0" and not rep.flipped
        part = oriented_core(g, p, q)[1]
        assert check_table(H2, part, LEVEL0_CELL_BOUNDS, "t").ok
        assert rep.A == frozenset(part.cells()[(2, 2)])

    @pytest.mark.parametrize("seed,flipped", [(20, False), (5, True)])
    def test_level_minus1_case(self, seed, flipped):
        g = d4_instance(9, 12, seed)
        e, (p, q) = eta(g)
        H2, rep = build_h2(g, p, q)
        assert rep.case_tag == "level-minus1" and rep.flipped == flipped
        assert rep.q in rep.A
        assert rep.h2_diameter <= 17
        assert domination_radius(g, H2.captured) <= 1
        part = oriented_core(g, rep.p, rep.q)[1]
        assert check_table(H2, part, LEVEL_M1_CELL_BOUNDS, "t").ok

    def test_requires_diameter4(self):
        with pytest.raises(PreconditionError):
            build_h2(petersen(), 0, 1)

    def test_requires_long_cycle(self):
        g = torus_grid(4, 4)
        with pytest.raises(PreconditionError):
            build_h2(g, *g.edges[0])


class TestDiameter4:
    def test_c9(self):
        o, rep = orient_diameter4(cycle(9))
        assert (rep.achieved, rep.promised) == (8, 21)

    def test_torus_uses_greedy(self):
        o, rep = orient_diameter4(torus_grid(4, 4))
        assert rep.chosen_branch == "greedy" and rep.achieved <= 20

    def test_wrong_diameter(self):
        with pytest.raises(PreconditionError):
            orient_diameter4(cycle(7))

    @given(st.integers(0, 10_000))
    def test_random(self, seed):
        g = random_2ec(30 + seed % 40, 40 + seed % 30, seed, base="tree", depth=2,
                       diameter_filter=4, max_tries=500)
        o, rep = orient_diameter4(g)
        strong, diam = verify_orientation(g, o)
        assert strong and diam == rep.achieved <= 21


def test_orient_remaining_after_h2():
    g = d4_instance(11, 14, 30)
    e, (p, q) = eta(g)
    H2, _ = build_h2(g, p, q)
    before = directed_distance_matrix(H2)
    total = core_and_ears(g, H2, radius_bound=1)
    after = directed_distance_matrix(total)
    assert all(a <= b for ra, rb in zip(after, before) for a, b in zip(ra, rb))
    assert orient_remaining(g, total) == total
