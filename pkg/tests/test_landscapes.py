import pytest

from riverscape import (AnchorSet, FractalLandscape, FreeGroup, IntegerGroup,
                        LandscapeRule, RiverLandscape, ball, bfs_distances,
                        components_leq, double_word, is_ternary,
                        ternary_height, undouble_word, verify_axioms)

F2 = FreeGroup(2)
Z = IntegerGroup()


def all_ternary_up_to(limit):
    out = [0]
    frontier = [0]
    while frontier:
        nxt = []
        for t in frontier:
            for d in (0, 3):
                v = t * 10 + d
                if 0 < v <= limit and v != t:
                    nxt.append(v)
        out.extend(nxt)
        frontier = nxt
    return sorted(set(out))


def brute_ternary_height(n, limit=10**7):
    """Independent oracle: scan every ternary number up to the limit."""
    n = abs(n)
    if is_ternary(n):
        return 1
    ternaries = all_ternary_up_to(limit)
    k = 1
    while True:
        step = 10**k
        if any(t % step == 0 and abs(n - t) <= step for t in ternaries):
            return 1 + k
        k += 1


class TestTernary:
    def test_is_ternary(self):
        assert [t for t in range(0, 40) if is_ternary(t)] == [0, 3, 30, 33]
        assert not is_ternary(-3)

    def test_frozen_values(self):
        assert ternary_height(0) == 1
        assert ternary_height(3) == 1
        assert ternary_height(30) == 1
        assert ternary_height(5) == 2
        assert ternary_height(150) == 4

    def test_negative_uses_absolute_value(self):
        for n in (-1, -5, -33, -150):
            assert ternary_height(n) == ternary_height(-n)

    def test_matches_brute_force_oracle(self):
        for n in range(-1000, 1001):
            assert ternary_height(n) == brute_ternary_height(n)

    def test_axioms_pass(self, ternary, zwin_small):
        report = verify_axioms(ternary, zwin_small)
        assert report.passed, report.violations
        assert report.constants.S[2] <= 40

    def test_components(self, ternary, zwin_small, zwin_large):
        for win in (zwin_small, zwin_large):
            assert components_leq(ternary, win, 1).max_interior_size == 1
            assert components_leq(ternary, win, 2).max_interior_size == 21

    def test_boundary_components_counted_as_truncated(self, ternary):
        win = ball(Z, 4)
        report = components_leq(ternary, win, 2)
        assert report.truncated_components == 1
        assert report.max_interior_size == 0


class TestFractal:
    def test_anchor_distance_validated(self):
        with pytest.raises(ValueError):
            AnchorSet(Z, (3, 31))
        AnchorSet(Z, (3, 30, 300))  # valid

    def test_q_sets(self):
        anchors = AnchorSet(Z, (3, 30, 300))
        assert anchors.q_set(0) == frozenset(
            {0, 3, 30, 33, 300, 303, 330, 333}
        )
        assert anchors.q_set(1) == frozenset({0, 30, 300, 330})
        assert anchors.q_set(2) == frozenset({0, 300})
        assert anchors.q_set(3) == frozenset({0})

    def test_agrees_with_ternary_on_initial_segment(self):
        z = FractalLandscape(Z, AnchorSet(Z, (3, 30, 300)))
        for n in range(0, 101):
            assert z.height(n) == ternary_height(n), n

    def test_height_one_exactly_on_anchor_products(self):
        z = FractalLandscape(Z, AnchorSet(Z, (3, 30)))
        level1 = {n for n in range(-50, 51) if z.height(n) == 1}
        assert level1 == {0, 3, 30, 33}

    def test_spec_mismatch_rejected(self):
        anchors = AnchorSet(Z, (3,))
        with pytest.raises(ValueError):
            FractalLandscape(F2, anchors)


class TestRiver:
    def test_double_undouble_round_trip(self):
        for w in ball(F2, 3).vertices:
            assert undouble_word(double_word(F2, w)) == w

    def test_undouble_rejects_off_river(self):
        with pytest.raises(ValueError):
            undouble_word((1,))
        with pytest.raises(ValueError):
            undouble_word((1, 2))

    def test_frozen_heights(self, river):
        assert river.height(()) == 1
        assert river.height((1, 1)) == 1
        assert river.height((1,)) == 2
        assert river.height((1, 2)) == 3

    def test_rank_one_rejected(self):
        with pytest.raises(ValueError):
            RiverLandscape(FreeGroup(1))

    def test_distance_matches_bfs_oracle(self, river, win8):
        sources = [
            i for i, w in enumerate(win8.vertices) if river.is_river(w)
        ]
        dist = bfs_distances(win8, sources)
        for i, w in enumerate(win8.vertices):
            if len(w) <= win8.radius - 1:
                assert river.dist_to_river(w) == dist[i], w

    def test_nearest_river_is_nearest(self, river):
        for w in ball(F2, 6).vertices:
            p = river.nearest_river(w)
            assert river.is_river(p)
            assert F2.dist(w, p) == river.dist_to_river(w)

    def test_nearest_river_tie_break(self, river):
        # (1,) is at distance 1 from both () and (1, 1); the
        # enumeration-least wins
        assert river.nearest_river((1,)) == ()

    def test_bilipschitz_factor_two(self, river):
        tree = ball(F2, 3).vertices
        for x in tree[:20]:
            for y in tree[:20]:
                assert F2.dist(double_word(F2, x), double_word(F2, y)) \
                    == 2 * F2.dist(x, y)

    def test_image_is_four_regular_at_scale_two(self, river, win8):
        points = set(river.river_points(win8))
        for w in points:
            if len(w) <= win8.radius - 2:
                neighbors = [
                    p for p in points if F2.dist(w, p) == 2
                ]
                assert len(neighbors) == 4

    def test_axioms_pass(self, river, win8):
        report = verify_axioms(river, win8)
        assert report.passed, report.violations
        assert all(report.constants.M[n] == n - 1
                   for n in report.constants.M)


class _ConstantOne(LandscapeRule):
    provenance = "ternary"

    def height(self, word):
        return 1


class _Step(LandscapeRule):
    provenance = "ternary"

    def height(self, word):
        return 3 if word > 0 else 1


class TestAxiomFailures:
    def test_constant_height_fails_visibility(self):
        z = _ConstantOne(Z)
        report = verify_axioms(z, ball(Z, 20))
        assert not report.passed
        assert any("height >= 2" in v for v in report.violations)

    def test_slope_violation_reported(self):
        z = _Step(Z)
        report = verify_axioms(z, ball(Z, 10))
        assert not report.passed
        assert any("axiom 1" in v for v in report.violations)
