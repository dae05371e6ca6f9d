import json

import pytest

from riverscape import (ChannelAllocator, FreeGroup, IntegerGroup,
                        LocalSetSpec, PaddedLandscape, PatternBall,
                        RelabeledLandscape, ball, build_GT,
                        canonical_target_order, certificate_from_dict,
                        cheeger_estimate, covering_radius, extract_pieces,
                        find_doubling, paradoxicalize_sequence, project_even,
                        project_odd, realize, relabel, river_landscape,
                        theta, trivial_certificate, verify_certificate)
from riverscape.paradox import _HopcroftKarp
from riverscape.patterns import center_height_local_set, observed_patterns
from riverscape.snapshots import bundle_pipeline

F2 = FreeGroup(2)
Z = IntegerGroup()


def height_target(heights):
    return lambda rule, win: center_height_local_set(
        rule, win, 1, heights, prefix_len=1
    )


def full_core_target(rule, win):
    occ = observed_patterns(rule, win, 1, prefix_len=1)
    return LocalSetSpec(1, 1, frozenset(occ))


class TestChannels:
    def test_padded_odd_positions_carry_base(self, river):
        padded = PaddedLandscape(river)
        for w in [(), (1,), (1, 2)]:
            assert project_odd(padded.label(w, 20)) == river.label(w, 10)
            assert project_even(padded.label(w, 20)) == "0" * 10
            assert padded.height(w) == river.height(w)

    def test_relabeled_bit_set_for_members(self, river):
        padded = PaddedLandscape(river)
        z = RelabeledLandscape(padded, {4: frozenset({(), (1, 1)})})
        assert z.label((), 4)[3] == "1"
        assert z.label((1,), 4)[3] == "0"
        assert project_odd(z.label((), 8)) == padded.label((), 8)[::2]

    def test_odd_positions_rejected(self, river):
        with pytest.raises(ValueError):
            RelabeledLandscape(PaddedLandscape(river), {3: frozenset()})

    def test_channel_collision_rejected(self, river):
        base = RelabeledLandscape(PaddedLandscape(river), {4: frozenset()})
        with pytest.raises(ValueError):
            RelabeledLandscape(base, {4: frozenset({()})})

    def test_allocator_monotone_and_even(self):
        alloc = ChannelAllocator()
        first = alloc.allocate(3, above=5)
        assert first == (6, 8, 10)
        second = alloc.allocate(2, above=1)
        assert second == (12, 14)
        assert alloc.floor == 14


class TestCoveringRadius:
    def test_identity_alone(self):
        win = ball(Z, 10)
        assert covering_radius([0], win) == 10

    def test_two_points(self):
        win = ball(Z, 10)
        assert covering_radius([-10, 10], win) == 10
        assert covering_radius(list(range(-10, 11)), win) == 0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            covering_radius([], ball(Z, 2))


class TestGT:
    def test_river_graph_connected(self, river, win8):
        T = river.river_points(win8)
        rt = covering_radius(T, win8)
        graph = build_GT(T, win8, rt)
        assert graph.n_components == 1
        assert graph.min_degree >= 4

    def test_cheeger_estimate_nonnegative(self, river, win8):
        T = river.river_points(win8)
        graph = build_GT(T, win8, 1)
        est = cheeger_estimate(graph)
        assert est >= 0.0


class TestMatcher:
    def test_against_scipy_oracle(self):
        import numpy as np
        from scipy.sparse import csr_matrix
        from scipy.sparse.csgraph import maximum_bipartite_matching

        rng = np.random.default_rng(7)
        for trial in range(20):
            n_left = int(rng.integers(1, 30))
            n_right = int(rng.integers(1, 30))
            density = rng.random() * 0.4
            matrix = rng.random((n_left, n_right)) < density
            adjacency = [list(np.flatnonzero(row)) for row in matrix]
            ours = _HopcroftKarp(adjacency, n_right).solve()
            sp = maximum_bipartite_matching(
                csr_matrix(matrix), perm_type="column"
            )
            assert ours == int((sp >= 0).sum())

    def test_matching_is_injective(self, river, win8):
        T = river.river_points(win8)
        search = find_doubling(T, win8)
        assert search.saturated
        images = list(search.phi.values()) + list(search.psi.values())
        assert len(images) == len(set(images))
        assert set(images) <= set(T)

    def test_displacement_bounded(self, river, win8):
        search = find_doubling(river.river_points(win8), win8)
        for fam in (search.phi, search.psi):
            for x, y in fam.items():
                assert F2.dist(x, y) <= search.K - 1


class TestFindDoubling:
    def test_empty_set_trivial(self, win8):
        search = find_doubling([], win8)
        assert search.saturated and search.trivial

    def test_inconclusive_reported_not_claimed(self):
        # two far-apart points on the line cannot double at tiny K
        win = ball(Z, 6)
        search = find_doubling([0], win, k_ceiling=3)
        assert not search.saturated
        assert search.matched_fraction < 1.0

    def test_deterministic(self, river, win8):
        a = find_doubling(river.river_points(win8), win8)
        b = find_doubling(river.river_points(win8), win8)
        assert a.phi == b.phi and a.psi == b.psi and a.K == b.K


@pytest.fixture(scope="module")
def pipeline8(river, win8):
    return paradoxicalize_sequence(
        river, [height_target({1}), height_target({2})], win8
    )


class TestCertificates:
    def test_all_steps_verify(self, pipeline8):
        assert pipeline8.halted is None
        assert all(r.passed for r in pipeline8.reports)
        assert pipeline8.matrix_all_pass()

    def test_matrix_lower_triangle_is_na(self, pipeline8):
        assert pipeline8.matrix[1][0] is None
        assert pipeline8.matrix[0][1] is not None

    def test_pieces_disjoint_and_cover_twice(self, pipeline8, win8):
        cert = pipeline8.certificates[0]
        seen = set()
        for piece in cert.pieces_vertices:
            assert not (piece & seen)
            seen |= piece
        assert cert.p >= 1 and cert.q >= 1

    def test_channels_are_fresh_even_positions(self, pipeline8):
        used = []
        for cert in pipeline8.certificates:
            used.extend(cert.channel_positions)
        assert all(pos % 2 == 0 for pos in used)
        assert len(set(used)) == len(used)
        assert used == sorted(used)

    def test_odd_projection_untouched(self, pipeline8, win8):
        z0 = pipeline8.initial_rule
        zN = pipeline8.final_rule
        for w in win8.vertices[:500]:
            assert project_odd(zN.label(w, 30)) \
                == project_odd(z0.label(w, 30))

    def test_tampered_translator_fails(self, pipeline8, win8):
        import dataclasses

        cert = pipeline8.certificates[0]
        bad_translators = ((1, 2, 1),) + cert.translators[1:]
        bad = dataclasses.replace(cert, translators=bad_translators)
        report = verify_certificate(pipeline8.rules[1], bad, win8)
        assert not report.passed
        failing = [c for c in report.clauses if not c.passed]
        assert failing and failing[0].witness

    def test_wrong_window_rejected(self, pipeline8, river):
        small = ball(F2, 4)
        with pytest.raises(ValueError):
            verify_certificate(
                pipeline8.rules[1], pipeline8.certificates[0], small
            )

    def test_dict_round_trip_verifies(self, pipeline8, win8):
        cert = pipeline8.certificates[0]
        again = certificate_from_dict(cert.to_dict(), F2)
        assert again.translators == cert.translators
        assert again.piece_patterns == cert.piece_patterns
        report = verify_certificate(pipeline8.rules[1], again, win8)
        assert report.passed

    def test_full_core_doubles(self, river, win8):
        result = paradoxicalize_sequence(river, [full_core_target], win8)
        assert result.halted is None
        assert result.reports[0].passed
        assert result.certificates[0].K <= 6


class TestTrivialCertificate:
    def test_empty_target_passes(self, river, win8):
        absent = PatternBall(1, 1, tuple(
            ("0", 99) for _ in range(5)
        ))
        target = LocalSetSpec(1, 1, frozenset({absent}))
        result = paradoxicalize_sequence(river, [target], win8)
        cert = result.certificates[0]
        assert cert.trivial
        assert cert.p == 0 and cert.q == 1
        assert cert.translators == ((),)
        assert result.reports[0].passed

    def test_trivial_fails_on_nonempty_realization(self, river, win8):
        target = center_height_local_set(river, win8, 1, {1}, prefix_len=1)
        cert = trivial_certificate(target, win8)
        report = verify_certificate(river, cert, win8)
        assert not report.passed


class TestDeterminism:
    def test_bundles_byte_identical(self, win8):
        def run():
            z = river_landscape(F2)
            result = paradoxicalize_sequence(
                z, [height_target({1}), height_target({2})], win8
            )
            return json.dumps(
                bundle_pipeline(result, win8), sort_keys=True
            )

        assert run() == run()

    def test_canonical_target_order(self, river, win8):
        t1 = center_height_local_set(river, win8, 1, {1}, prefix_len=1)
        t2 = center_height_local_set(river, win8, 2, {1})
        assert canonical_target_order([t2, t1]) == [t1, t2]
