import pytest
from hypothesis import given
from hypothesis import strategies as st

from riverscape import (FreeGroup, GreedyColoring, IntegerGroup,
                        ProperLabelRule, ball, color_graph_power, interleave,
                        project_even, project_odd, separation_index)

F2 = FreeGroup(2)
Z = IntegerGroup()

bits = st.text(alphabet="01", max_size=40)


class TestBitPlumbing:
    @given(bits, bits)
    def test_interleave_projections(self, u, v):
        n = min(len(u), len(v))
        u, v = u[:n], v[:n]
        w = interleave(u, v)
        assert project_odd(w) == u
        assert project_even(w) == v

    def test_interleave_length_mismatch(self):
        with pytest.raises(ValueError):
            interleave("01", "011")

    def test_positions_are_one_based(self):
        assert project_odd("10") == "1"
        assert project_even("10") == "0"


class TestSeparationIndex:
    def test_frozen_values_f2(self):
        # d = 4: blocks 5, 17, 65, 257
        assert separation_index(F2, 1) == 5
        assert separation_index(F2, 2) == 22
        assert separation_index(F2, 4) == 344

    def test_frozen_values_z(self):
        # d = 2: blocks 3, 5
        assert separation_index(Z, 1) == 3
        assert separation_index(Z, 2) == 8

    def test_zero_and_negative(self):
        assert separation_index(F2, 0) == 0
        with pytest.raises(ValueError):
            separation_index(F2, -1)


class TestGreedyColoring:
    @pytest.mark.parametrize("k", [1, 2])
    def test_proper_on_distance_k_graph(self, k):
        coloring = GreedyColoring(F2, k)
        win = ball(F2, 4)
        colors = {w: coloring.color(w) for w in win.vertices}
        for u in win.vertices:
            for v in win.vertices:
                if u != v and F2.dist(u, v) <= k:
                    assert colors[u] != colors[v]

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_palette_bound(self, k):
        coloring = GreedyColoring(F2, k)
        win = ball(F2, 4)
        for w in win.vertices:
            assert 1 <= coloring.color(w) <= F2.degree**k + 1

    def test_integer_coloring_proper(self):
        coloring = GreedyColoring(Z, 3)
        colors = {n: coloring.color(n) for n in range(-30, 31)}
        for a in range(-30, 28):
            for b in range(a + 1, min(a + 4, 31)):
                assert colors[a] != colors[b]

    def test_identity_gets_color_one(self):
        assert GreedyColoring(F2, 2).color(()) == 1

    def test_window_free(self):
        # colors are intrinsic: two independent instances agree
        a = GreedyColoring(F2, 2)
        b = GreedyColoring(F2, 2)
        for w in ball(F2, 3).vertices:
            assert a.color(w) == b.color(w)


class TestProperLabel:
    def test_prefix_monotone(self):
        rule = ProperLabelRule(F2)
        w = (1, 2, -1)
        full = rule.label(w, 100)
        for s in (0, 1, 5, 22, 99):
            assert rule.label(w, s) == full[:s]

    def test_block_structure(self):
        # first block has length d^1 + 1 and is an indicator vector
        rule = ProperLabelRule(F2)
        for w in ball(F2, 2).vertices:
            block = rule.label(w, 5)
            assert block.count("1") == 1

    def test_separation_within_s_r(self):
        rule = ProperLabelRule(F2)
        win = ball(F2, 4)
        s2 = separation_index(F2, 2)
        labels = {w: rule.label(w, s2) for w in win.vertices}
        for u in win.vertices:
            for v in win.vertices:
                if u != v and F2.dist(u, v) <= 2:
                    assert labels[u] != labels[v]

    def test_integer_separation(self):
        rule = ProperLabelRule(Z)
        s2 = separation_index(Z, 2)
        labels = {n: rule.label(n, s2) for n in range(-20, 21)}
        for a in range(-20, 19):
            for b in range(a + 1, min(a + 3, 21)):
                assert labels[a] != labels[b]


class TestColorGraphPower:
    def test_core_and_palette(self):
        win = ball(F2, 4)
        colors = color_graph_power(win, 2)
        assert set(colors) == {w for w in win.vertices if len(w) <= 2}
        assert all(1 <= c <= F2.degree**2 + 1 for c in colors.values())

    def test_window_too_small(self):
        with pytest.raises(ValueError):
            color_graph_power(ball(F2, 1), 2)

    def test_agrees_across_windows(self):
        small = color_graph_power(ball(F2, 3), 1)
        large = color_graph_power(ball(F2, 5), 1)
        for w, c in small.items():
            assert large[w] == c
