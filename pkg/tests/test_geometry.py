"""Exact geometry: determinants, builders, predicates, extremal configs."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from zarank.geometry import (
    DetTarget,
    PointConfig,
    SphereConfig,
    circles_intersect,
    clear_columns,
    count_almost_unit_area,
    count_almost_unit_area_naive,
    count_sphere_intersections,
    count_unit_minors,
    count_unit_minors_naive,
    det_bareiss,
    det_of_columns,
    distance_ratio_squared,
    halfplane_traces,
    k1uu_config,
    almost_unit_area_hypergraph,
    sphere_intersection_hypergraph,
    spheres_triple_intersect,
    st_incidence_count,
    st_lower_bound_minor_config,
    unit_minor_hypergraph,
)
from zarank.hypergraph import ForbiddenPattern, contains_complete


def frac_points(raw):
    return tuple(tuple(Fraction(c) for c in p) for p in raw)


def random_rational_config(rng, d, n, num=4, den=2):
    pts = set()
    while len(pts) < n:
        pts.add(tuple(Fraction(rng.randint(-num, num), rng.randint(1, den))
                      for _ in range(d)))
    return PointConfig(d, tuple(sorted(pts)), distinct=True)


class TestDeterminants:
    def test_bareiss_known(self):
        assert det_bareiss([[1, 0], [0, 1]]) == 1
        assert det_bareiss([[0, 1], [1, 0]]) == -1
        # cofactor expansion: 2*(2-0) - 3*(8-35) + 1*(0-7) = 78
        assert det_bareiss([[2, 3, 1], [4, 1, 5], [7, 0, 2]]) == 78

    def test_bareiss_vs_fraction_gauss(self):
        rng = random.Random(10)
        for _ in range(200):
            d = rng.randint(2, 5)
            rows = [[rng.randint(-9, 9) for _ in range(d)] for _ in range(d)]
            from zarank.geometry import _det_fraction_gauss
            assert det_bareiss(rows) == _det_fraction_gauss(
                [[Fraction(x) for x in r] for r in rows])

    def test_rational_column_determinant(self):
        cfg = PointConfig(2, frac_points([(Fraction(1, 2), 0), (0, Fraction(2, 3))]))
        assert det_of_columns(cfg, (0, 1)) == Fraction(1, 3)
        assert det_of_columns(cfg, (1, 0)) == Fraction(-1, 3)

    def test_clear_columns(self):
        cols, scalars = clear_columns(frac_points([(Fraction(1, 2), Fraction(3, 4))]))
        assert cols == [(2, 3)] and scalars == [4]


class TestUnitMinorHypergraph:
    def test_identity_exactly_one(self):
        cfg = PointConfig(2, frac_points([(1, 0), (0, 1)]))
        H = unit_minor_hypergraph(cfg, DetTarget.EXACTLY_ONE)
        assert H.edges == frozenset({(0, 1)})

    def test_identity_plus_minus(self):
        cfg = PointConfig(2, frac_points([(1, 0), (0, 1)]))
        H = unit_minor_hypergraph(cfg, DetTarget.PLUS_MINUS_ONE)
        assert H.edges == frozenset({(0, 1), (1, 0)})

    def test_k14_line_family(self):
        cols = [(1, 0)] + [(x, 1) for x in range(4)]
        cfg = PointConfig(2, frac_points(cols))
        H = unit_minor_hypergraph(cfg, DetTarget.EXACTLY_ONE)
        # (1,0) against every (x,1) has det 1
        for j in range(1, 5):
            assert (0, j) in H.edges
        assert contains_complete(H, ForbiddenPattern((1, 4))).found

    def test_rejects_repeated_columns(self):
        cfg = PointConfig(2, frac_points([(1, 0), (1, 0)]))
        with pytest.raises(ValueError):
            unit_minor_hypergraph(cfg)

    def test_unimodular_row_operations_preserve_edges(self):
        rng = random.Random(21)
        for _ in range(20):
            cfg = random_rational_config(rng, 3, 6)
            # random SL_3(Z) element from elementary shears
            m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            for _ in range(6):
                i, j = rng.sample(range(3), 2)
                c = rng.randint(-2, 2)
                for t in range(3):
                    m[i][t] += c * m[j][t]
            mapped = tuple(
                tuple(sum(Fraction(m[r][t]) * p[t] for t in range(3))
                      for r in range(3))
                for p in cfg.points)
            cfg2 = PointConfig(3, mapped, distinct=True)
            for target in DetTarget:
                H1 = unit_minor_hypergraph(cfg, target)
                H2 = unit_minor_hypergraph(cfg2, target)
                assert H1.edges == H2.edges

    def test_k22_free_property_small(self):
        # executable version of the no-K_{2,...,2} lemma on seeded matrices
        rng = random.Random(31)
        for _ in range(40):
            d = rng.choice([2, 3])
            cfg = random_rational_config(rng, d, rng.randint(d + 1, 7))
            H = unit_minor_hypergraph(cfg, DetTarget.EXACTLY_ONE)
            assert not contains_complete(H, ForbiddenPattern((2,) * d)).found


class TestCountUnitMinors:
    def test_identity(self):
        cfg = PointConfig(2, frac_points([(1, 0), (0, 1)]))
        assert count_unit_minors(cfg) == 1

    def test_three_columns_all_unit(self):
        cfg = PointConfig(2, frac_points([(1, 0), (0, 1), (1, 1)]))
        assert count_unit_minors(cfg) == 3

    def test_modes_agree_on_subsets(self):
        rng = random.Random(44)
        for _ in range(20):
            cfg = random_rational_config(rng, 2, 8)
            assert (count_unit_minors(cfg, DetTarget.EXACTLY_ONE)
                    == count_unit_minors(cfg, DetTarget.PLUS_MINUS_ONE))

    def test_kernel_vs_naive_oracle(self):
        rng = random.Random(50)
        for d in (2, 3):
            for _ in range(25):
                cfg = random_rational_config(rng, d, rng.randint(d + 1, 9))
                assert count_unit_minors(cfg) == count_unit_minors_naive(cfg)

    def test_numpy_backend_agrees(self, monkeypatch):
        monkeypatch.setenv("ZARANK_BACKEND", "numpy")
        rng = random.Random(51)
        for d in (2, 3):
            cfg = random_rational_config(rng, d, 9)
            assert count_unit_minors(cfg) == count_unit_minors_naive(cfg)

    def test_bigint_fallback_agrees(self):
        rng = random.Random(52)
        # denominators large enough to force the big-integer path
        pts = set()
        while len(pts) < 7:
            pts.add((Fraction(rng.randint(1, 2**40), rng.randint(1, 7)),
                     Fraction(rng.randint(1, 2**40), rng.randint(1, 7))))
        cfg = PointConfig(2, tuple(pts), distinct=True)
        assert count_unit_minors(cfg) == count_unit_minors_naive(cfg)


class TestAlmostUnitArea:
    def test_area_exactly_one(self):
        cfg = PointConfig(2, frac_points([(0, 0), (2, 0), (0, 1)]))
        H = almost_unit_area_hypergraph(cfg)
        assert (0, 1, 2) in H.edges and (2, 1, 0) in H.edges

    def test_collinear_absent(self):
        cfg = PointConfig(2, frac_points([(0, 0), (1, 1), (2, 2)]))
        assert almost_unit_area_hypergraph(cfg).num_edges == 0

    def test_half_area_absent(self):
        cfg = PointConfig(2, frac_points([(0, 0), (1, 0), (0, 1)]))
        assert almost_unit_area_hypergraph(cfg).num_edges == 0

    def test_boundary_inclusive(self):
        # area exactly 9/10: on the closed boundary, present
        cfg = PointConfig(2, frac_points([(0, 0), (1, 0), (0, Fraction(9, 5))]))
        assert almost_unit_area_hypergraph(cfg).num_edges == 6

    def test_shear_invariance(self):
        rng = random.Random(63)
        for _ in range(20):
            cfg = random_rational_config(rng, 2, 7, num=6)
            shear = rng.randint(-3, 3)
            mapped = tuple((p[0] + shear * p[1], p[1]) for p in cfg.points)
            cfg2 = PointConfig(2, mapped)
            H1 = almost_unit_area_hypergraph(cfg)
            H2 = almost_unit_area_hypergraph(cfg2)
            assert H1.edges == H2.edges

    def test_count_matches_naive(self):
        rng = random.Random(64)
        for _ in range(20):
            cfg = random_rational_config(rng, 2, 9, num=5)
            assert count_almost_unit_area(cfg) == count_almost_unit_area_naive(cfg)

    def test_count_matches_hypergraph(self):
        rng = random.Random(65)
        cfg = random_rational_config(rng, 2, 8, num=4)
        H = almost_unit_area_hypergraph(cfg)
        assert H.num_edges == 6 * count_almost_unit_area(cfg)

    def test_distance_ratio_statistic(self):
        cfg = PointConfig(2, frac_points([(0, 0), (1, 0), (3, 0)]))
        assert distance_ratio_squared(cfg) == 9


class TestSpheres:
    def test_tangent_circles_meet(self):
        assert circles_intersect((Fraction(0), Fraction(0)), Fraction(1),
                                 (Fraction(2), Fraction(0)), Fraction(1)) == (True, False)

    def test_far_circles_do_not(self):
        meets, _ = circles_intersect((Fraction(0), Fraction(0)), Fraction(1),
                                     (Fraction(3), Fraction(0)), Fraction(1))
        assert not meets

    def test_nested_circles_do_not(self):
        meets, _ = circles_intersect((Fraction(0), Fraction(0)), Fraction(100),
                                     (Fraction(1), Fraction(0)), Fraction(1))
        assert not meets

    def test_identical_circles_degenerate(self):
        meets, degen = circles_intersect((Fraction(1), Fraction(2)), Fraction(5),
                                         (Fraction(1), Fraction(2)), Fraction(5))
        assert meets and degen

    def test_three_unit_spheres_share_point(self):
        one = Fraction(1)
        s1 = ((Fraction(0), Fraction(0), Fraction(0)), one)
        s2 = ((Fraction(1), Fraction(0), Fraction(0)), one)
        s3 = ((Fraction(0), Fraction(1), Fraction(0)), one)
        meets, degen = spheres_triple_intersect(s1, s2, s3)
        assert meets and not degen

    def test_distant_spheres_do_not(self):
        one = Fraction(1)
        s1 = ((Fraction(0), Fraction(0), Fraction(0)), one)
        s2 = ((Fraction(10), Fraction(0), Fraction(0)), one)
        s3 = ((Fraction(0), Fraction(10), Fraction(0)), one)
        assert not spheres_triple_intersect(s1, s2, s3)[0]

    def test_concentric_different_radii(self):
        s1 = ((Fraction(0),) * 3, Fraction(1))
        s2 = ((Fraction(0),) * 3, Fraction(2))
        s3 = ((Fraction(5), Fraction(0), Fraction(0)), Fraction(1))
        assert not spheres_triple_intersect(s1, s2, s3)[0]

    def test_identical_pair_flagged(self):
        s1 = ((Fraction(0),) * 3, Fraction(4))
        s3 = ((Fraction(1), Fraction(0), Fraction(0)), Fraction(4))
        meets, degen = spheres_triple_intersect(s1, s1, s3)
        assert meets and degen

    def test_predicate_matches_float_solver(self):
        rng = random.Random(70)
        checked = 0
        for _ in range(1000):
            c1 = (Fraction(rng.randint(-40, 40), 4), Fraction(rng.randint(-40, 40), 4))
            c2 = (Fraction(rng.randint(-40, 40), 4), Fraction(rng.randint(-40, 40), 4))
            r1 = Fraction(rng.randint(1, 40), 8)
            r2 = Fraction(rng.randint(1, 40), 8)
            got, _ = circles_intersect(c1, r1, c2, r2)
            dist = math.hypot(float(c1[0] - c2[0]), float(c1[1] - c2[1]))
            lo, hi = abs(math.sqrt(r1) - math.sqrt(r2)), math.sqrt(r1) + math.sqrt(r2)
            if abs(dist - lo) < 1e-9 or abs(dist - hi) < 1e-9:
                continue  # inside float uncertainty, predicate is the referee
            assert got == (lo <= dist <= hi)
            checked += 1
        assert checked > 900

    def test_triple_predicate_matches_float_solver(self):
        import numpy as np
        rng = random.Random(71)
        checked = 0
        for _ in range(400):
            spheres = []
            for _ in range(3):
                c = tuple(Fraction(rng.randint(-8, 8), 2) for _ in range(3))
                spheres.append((c, Fraction(rng.randint(1, 24), 4)))
            got, _ = spheres_triple_intersect(*spheres)
            c1, a1 = spheres[0]
            rows, rhs = [], []
            for cj, aj in spheres[1:]:
                rows.append([2 * float(cj[t] - c1[t]) for t in range(3)])
                rhs.append(float(sum(cj[t] ** 2 - c1[t] ** 2 for t in range(3))
                                 - (aj - a1)))
            A = np.array(rows)
            if np.linalg.matrix_rank(A, tol=1e-8) < 2:
                continue
            p, *_ = np.linalg.lstsq(A, np.array(rhs), rcond=None)
            v = np.cross(A[0], A[1])
            w = p - np.array([float(x) for x in c1])
            qa = float(v @ v)
            qb = float(v @ w)
            qc = float(w @ w) - float(a1)
            disc = qb * qb - qa * qc
            if abs(disc) < 1e-6:
                continue
            assert got == (disc > 0), spheres
            checked += 1
        assert checked > 300

    def test_hypergraph_and_file_round_trip(self):
        cfg = SphereConfig(2, (
            ((Fraction(0), Fraction(0)), Fraction(1)),
            ((Fraction(2), Fraction(0)), Fraction(1)),
            ((Fraction(9), Fraction(9)), Fraction(1)),
        ))
        H, degen = sphere_intersection_hypergraph(cfg)
        assert H.edges == frozenset({(0, 1), (1, 0)})
        assert not degen
        assert count_sphere_intersections(cfg) == 1
        again = SphereConfig.from_text(cfg.to_text())
        assert again == cfg

    def test_distinctness_flag(self):
        dup = (((Fraction(0), Fraction(0)), Fraction(1)),) * 2
        with pytest.raises(ValueError):
            SphereConfig(2, dup, distinct=True)


class TestSTConfig:
    def test_column_count_scale_two(self):
        cfg = st_lower_bound_minor_config(2, 2)
        # slope family 2*4 plus grid 2*8
        assert cfg.n == 24

    def test_incidence_identity(self):
        # ordered (slope, grid) pairs with det exactly +1 == brute-force
        # solution count of y = ax + b over the ranges
        for s in (2, 3):
            cfg = st_lower_bound_minor_config(2, s)
            slopes = [i for i, p in enumerate(cfg.points) if p[0].denominator >= 1
                      and p[0] <= 1]
            grids = [i for i, p in enumerate(cfg.points) if p[0] > 1]
            hits = 0
            for i in slopes:
                for j in grids:
                    if det_of_columns(cfg, (i, j)) == 1:
                        hits += 1
            assert hits == st_incidence_count(s)

    def test_slope_grid_pairs_are_unit(self):
        cfg = st_lower_bound_minor_config(2, 2)
        # algebraic identity: (1/b)(ax+b) - (a/b)x = 1
        a, b, x = 2, 3, 4
        col_line = (Fraction(1, b), Fraction(a, b))
        col_point = (Fraction(x), Fraction(a * x + b))
        pts = (col_line, col_point)
        assert (col_line[0] * col_point[1] - col_line[1] * col_point[0]) == 1

    def test_d3_count_factorizes(self):
        s = 2
        cfg2 = st_lower_bound_minor_config(2, s)
        cfg3 = st_lower_bound_minor_config(3, s)
        chain = cfg3.n - cfg2.n
        assert chain == s
        assert count_unit_minors(cfg3) == count_unit_minors(cfg2) * chain

    def test_counts_nondecreasing_in_scale(self):
        counts = [count_unit_minors(st_lower_bound_minor_config(2, s))
                  for s in (2, 3, 4, 5)]
        assert counts == sorted(counts)


class TestK1uuConfig:
    def test_column_count(self):
        for d, u in [(2, 3), (3, 2), (4, 1)]:
            assert k1uu_config(d, u).n == 1 + (d - 1) * u

    def test_contains_k1u_and_not_k22(self):
        cfg = k1uu_config(2, 3)
        H = unit_minor_hypergraph(cfg, DetTarget.EXACTLY_ONE)
        assert contains_complete(H, ForbiddenPattern((1, 3))).found
        assert not contains_complete(H, ForbiddenPattern((2, 2))).found

    def test_d3_contains_k122(self):
        cfg = k1uu_config(3, 2)
        H = unit_minor_hypergraph(cfg, DetTarget.EXACTLY_ONE)
        assert contains_complete(H, ForbiddenPattern((1, 2, 2))).found

    def test_u1_single_minor(self):
        for d in (2, 3, 4):
            cfg = k1uu_config(d, 1)
            assert count_unit_minors(cfg) == 1


class TestHalfplaneTraces:
    def test_three_points_general_position_shatter(self):
        pts = frac_points([(0, 0), (1, 0), (0, 1)])
        assert len(halfplane_traces(pts)) == 8

    def test_square_excludes_diagonals(self):
        pts = frac_points([(0, 0), (1, 0), (1, 1), (0, 1)])
        tr = halfplane_traces(pts)
        assert frozenset({0, 2}) not in tr
        assert frozenset({1, 3}) not in tr
        assert len(tr) == 14

    def test_contains_every_random_halfplane_trace(self):
        rng = random.Random(81)
        pts = [tuple(Fraction(rng.randint(-10, 10), rng.randint(1, 3))
                     for _ in range(2)) for _ in range(7)]
        tr = halfplane_traces(pts)
        for _ in range(500):
            a = Fraction(rng.randint(-9, 9))
            b = Fraction(rng.randint(-9, 9))
            if a == b == 0:
                continue
            c = Fraction(rng.randint(-60, 60), rng.randint(1, 4))
            got = frozenset(i for i, p in enumerate(pts)
                            if a * p[0] + b * p[1] > c)
            assert got in tr
            closed = frozenset(i for i, p in enumerate(pts)
                               if a * p[0] + b * p[1] >= c)
            assert closed in tr

    def test_quadratic_bound(self):
        rng = random.Random(82)
        for _ in range(10):
            z = rng.randint(1, 8)
            pts = [tuple(Fraction(rng.randint(-8, 8)) for _ in range(2))
                   for _ in range(z)]
            assert len(halfplane_traces(pts)) <= 1 + z + 2 * math.comb(z, 2)


class TestPointFile:
    def test_round_trip(self):
        cfg = PointConfig(2, frac_points([(Fraction(1, 2), 3), (4, Fraction(-5, 7))]))
        again = PointConfig.from_text(cfg.to_text())
        assert again.points == cfg.points

    def test_text_format(self):
        cfg = PointConfig(2, frac_points([(Fraction(1, 2), 3)]))
        assert cfg.to_text() == "2 1\n1/2 3\n"
