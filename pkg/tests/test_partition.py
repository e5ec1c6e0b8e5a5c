"""Polynomial partitioning: quantile cuts, simultaneous bisections,
product grids, sign patterns, incidence classes."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from zarank.geometry import PointConfig
from zarank.partition import (
    IncidenceTriple,
    PartitionSearchError,
    classify_incidences,
    level_degree,
    product_partition,
    sign_pattern_count,
    stone_tukey_partition,
    verify_partition,
    verify_product_partition,
)
from zarank.polynomials import MultiPoly, monomials_upto, poly_space_dim


def grid_free_points(rng, n, box=1000):
    pts = set()
    while len(pts) < n:
        pts.add((Fraction(rng.randint(-box, box)),
                 Fraction(rng.randint(-box, box))))
    return PointConfig(2, tuple(sorted(pts)))


def line_points(rng, n, box=10**6):
    vals = rng.sample(range(-box, box), n)
    return PointConfig(1, tuple((Fraction(v),) for v in vals))


class TestLevelDegree:
    def test_d2_sequence(self):
        # dim of degree-D polys in 2 vars is C(D+2,2); minus 1 >= 2^level
        assert [level_degree(2, j) for j in range(1, 7)] == [1, 2, 3, 5, 7, 10]

    def test_d1_sequence(self):
        assert [level_degree(1, j) for j in range(1, 5)] == [2, 4, 8, 16]

    def test_definition(self):
        for d in (1, 2, 3):
            for j in range(1, 6):
                D = level_degree(d, j)
                assert poly_space_dim(d, D) - 1 >= 2 ** j
                assert poly_space_dim(d, D - 1) - 1 < 2 ** j


class TestOneDimensional:
    def test_quartile_cuts(self):
        pts = PointConfig(1, tuple((Fraction(i),) for i in range(16)))
        part = stone_tukey_partition(pts, 4, slack=0)
        assert part.num_levels == 2
        assert len(part.cell_census) == 4
        assert part.max_cell <= math.ceil(16 / 4)
        verify_partition(pts, part)

    def test_exact_zero_slack_sweep(self):
        rng = random.Random(5)
        for n, r in [(10, 4), (100, 8), (1000, 16), (10000, 64), (37, 4),
                     (999, 32)]:
            pts = line_points(rng, n)
            part = stone_tukey_partition(pts, r, slack=0)
            assert part.max_cell <= math.ceil(n / r), (n, r, part.max_cell)
            assert part.num_levels == math.ceil(math.log2(r))
            verify_partition(pts, part)

    def test_duplicate_values_go_to_boundary(self):
        pts = PointConfig(1, tuple((Fraction(i // 4),) for i in range(16)))
        part = stone_tukey_partition(pts, 4, slack=0)
        assert part.max_cell <= 4
        verify_partition(pts, part)


class TestTwoDimensional:
    def test_sixteen_generic_points_r4(self):
        rng = random.Random(2)
        pts = grid_free_points(rng, 16)
        part = stone_tukey_partition(pts, 4, seed=1)
        # two line factors (ham-sandwich at level 2), four small cells
        assert part.num_levels == 2
        assert all(f.degree == 1 for f in part.factors)
        assert part.max_cell <= 4
        assert len(part.cell_census) <= 4
        verify_partition(pts, part)

    def test_r16_contract(self):
        rng = random.Random(3)
        pts = grid_free_points(rng, 128)
        part = stone_tukey_partition(pts, 16, seed=7)
        assert part.num_levels == 4
        assert part.max_cell <= part.cell_bound
        # per-level side bounds were verified during the search
        for lr in part.levels:
            assert lr.max_side <= lr.side_limit
            assert lr.degree <= lr.degree_cap
        verify_partition(pts, part)

    def test_degree_band(self):
        rng = random.Random(4)
        pts = grid_free_points(rng, 256)
        for r in (4, 16):
            part = stone_tukey_partition(pts, r, seed=11)
            ratio = part.c_part
            assert 0.25 <= ratio <= 4.0, (r, ratio)

    def test_collinear_degenerate_input(self):
        pts = PointConfig(2, tuple((Fraction(i), Fraction(2 * i + 1))
                                   for i in range(32)))
        part = stone_tukey_partition(pts, 4, seed=0)
        # a cut through two collinear points sends everything to the boundary
        assert part.boundary_count + sum(part.cell_census.values()) == 32
        assert part.max_cell <= part.cell_bound
        verify_partition(pts, part)

    def test_search_failure_is_loud(self):
        rng = random.Random(6)
        pts = grid_free_points(rng, 64)
        with pytest.raises(PartitionSearchError):
            stone_tukey_partition(pts, 16, seed=0, candidate_budget=1)

    def test_half_integer_coordinates(self):
        rng = random.Random(8)
        raw = set()
        while len(raw) < 48:
            raw.add((Fraction(rng.randint(-99, 99), 2),
                     Fraction(rng.randint(-99, 99), 3)))
        pts = PointConfig(2, tuple(sorted(raw)))
        part = stone_tukey_partition(pts, 4, seed=3)
        verify_partition(pts, part)


class TestProductPartition:
    def test_two_1d_medians(self):
        a = PointConfig(1, tuple((Fraction(i),) for i in range(8)))
        b = PointConfig(1, tuple((Fraction(10 * i),) for i in range(6)))
        pp = product_partition([(a, 2), (b, 2)], slack=0)
        assert len(pp.grid_census) == 4
        assert pp.max_cell <= 4 * 3
        verify_product_partition([(a, 2), (b, 2)], pp)

    def test_2d_times_1d(self):
        rng = random.Random(9)
        a = grid_free_points(rng, 32)
        b = PointConfig(1, tuple((Fraction(i),) for i in range(12)))
        blocks = [(a, 4), (b, 2)]
        pp = product_partition(blocks, seed=5)
        assert pp.total_dim == 3
        assert all(f.num_vars == 3 for f in pp.factors)
        assert pp.max_cell <= pp.cell_bound
        verify_product_partition(blocks, pp)

    def test_r1_contributes_constant_factor(self):
        a = PointConfig(1, tuple((Fraction(i),) for i in range(5)))
        b = PointConfig(1, tuple((Fraction(i),) for i in range(4)))
        pp = product_partition([(a, 1), (b, 2)], slack=0)
        # one cell from the r=1 block
        assert all(key[0] == (1,) for key in pp.grid_census)
        assert sum(pp.grid_census.values()) + pp.boundary_count == 20

    def test_grid_assignment_matches_census(self):
        a = PointConfig(1, tuple((Fraction(i),) for i in range(9)))
        b = PointConfig(1, tuple((Fraction(3 * i + 1),) for i in range(7)))
        blocks = [(a, 2), (b, 2)]
        pp = product_partition(blocks, slack=0)
        assign = pp.grid_cell_assignment()
        recount = {}
        for key in assign:
            if key is not None:
                recount[key] = recount.get(key, 0) + 1
        assert recount == pp.grid_census


class TestSignPatterns:
    def test_single_line_three_signs(self):
        f = MultiPoly.linear([Fraction(1), Fraction(0)], 0)  # x1
        pts = PointConfig(2, ((Fraction(-1), Fraction(0)),
                              (Fraction(0), Fraction(5)),
                              (Fraction(2), Fraction(1))))
        assert sign_pattern_count([f], pts) == 3

    def test_identical_polynomials_do_not_add(self):
        f = MultiPoly.linear([Fraction(1), Fraction(1)], Fraction(-1, 2))
        pts = PointConfig(2, ((Fraction(0), Fraction(0)),
                              (Fraction(1), Fraction(1))))
        assert sign_pattern_count([f] * 5, pts) == sign_pattern_count([f], pts)

    def test_line_arrangement_bound(self):
        rng = random.Random(12)
        lines = []
        for _ in range(10):
            a, b = rng.randint(-5, 5), rng.randint(-5, 5)
            if a == b == 0:
                a = 1
            lines.append(MultiPoly.linear([Fraction(a), Fraction(b)],
                                          Fraction(rng.randint(-9, 9))))
        pts = grid_free_points(rng, 200)
        count = sign_pattern_count(lines, pts)
        s = len(lines)
        # an arrangement of s lines has at most 1 + s + C(s,2) faces of
        # full dimension; patterns with zeros add at most one per pair
        assert count <= 1 + s + math.comb(s, 2) * 2


class TestClassifyIncidences:
    def test_gamma_everything(self):
        assign = ["a", "a", "b", "b"]
        member = [[True, True, True, True]]
        tri = classify_incidences(assign, member)
        assert (tri.i1, tri.i2, tri.i3) == (0, 4, 0)

    def test_all_points_on_zero_set(self):
        assign = [None, None, None]
        member = [[True, False, True]]
        tri = classify_incidences(assign, member)
        assert (tri.i1, tri.i2, tri.i3) == (2, 0, 0)

    def test_worked_1d_example(self):
        # P = {1,2,3,4}, cut at 2.5, gamma = {p >= 2}
        assign = ["lo", "lo", "hi", "hi"]
        member = [[False, True, True, True]]
        tri = classify_incidences(assign, member)
        assert (tri.i1, tri.i2, tri.i3) == (0, 2, 1)

    def test_conservation_on_seeded_grids(self):
        rng = random.Random(13)
        for _ in range(100):
            npts = rng.randint(1, 40)
            ncells = rng.randint(1, 6)
            assign = [rng.choice([None] + list(range(ncells)))
                      for _ in range(npts)]
            member = [[rng.random() < 0.4 for _ in range(npts)]
                      for _ in range(rng.randint(1, 8))]
            tri = classify_incidences(assign, member)
            total = sum(sum(row) for row in member)
            assert tri.total == total

    def test_membership_table_must_cover(self):
        with pytest.raises(ValueError):
            classify_incidences(["a"], [[True, False]])


class TestPartitionIncidenceIntegration:
    def test_partition_feeds_classifier(self):
        rng = random.Random(21)
        pts = grid_free_points(rng, 64)
        part = stone_tukey_partition(pts, 4, seed=2)
        assign = part.cell_assignment()
        # gamma sets: halfplanes defined by random lines
        member = []
        for _ in range(5):
            a, b, c = rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-9, 9)
            if a == b == 0:
                a = 1
            member.append([a * p[0] + b * p[1] >= c for p in pts.points])
        tri = classify_incidences(assign, member)
        assert tri.total == sum(sum(row) for row in member)
