import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coarsegroups.groups import GroupSpec
from coarsegroups.metrics import (
    HORIZON,
    Entry12Pseudometric,
    InducedMetric,
    MaxEntryMetric,
    MaxEntryNorm,
    QuotientWordMetric,
    ScaledMetric,
    WordMetric,
    WordNorm,
    bornologicity_probe,
    classify_trend,
    induced_distance,
    is_horizon,
    ladder_prefixes,
    max_entry_distance,
    properness_probe,
    quotient_distance,
    rho_plus_truncated,
    word_distance,
)

from oracles import bfs_distances, cayley_adjacency

Z = GroupSpec.free_abelian(1)
Z2 = GroupSpec.free_abelian(2)
H = GroupSpec.heisenberg()

triples = st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))


class TestWordDistance:
    def test_integer_line(self):
        assert word_distance(WordMetric(Z), (0,), (5,)) == 5

    def test_grid(self):
        assert word_distance(WordMetric(Z2), (0, 0), (2, 3)) == 5

    def test_same_point(self):
        wm = WordMetric(H)
        for g in H.ball(2):
            assert wm.eval(g, g) == 0

    def test_horizon_marker(self):
        wm = WordMetric(Z, radius_cap=3)
        assert is_horizon(wm.eval((0,), (10,)))
        assert wm.eval((0,), (3,)) == 3

    def test_bfs_oracle_on_grid(self):
        nodes = Z2.ball(8)
        adjacency = cayley_adjacency(Z2, nodes)
        oracle = bfs_distances(adjacency, (0, 0))
        wm = WordMetric(Z2)
        for g in Z2.ball(3):
            assert wm.eval((0, 0), g) == oracle[g]


class TestInducedDistance:
    def test_integer_word_norm(self):
        assert induced_distance(WordNorm(Z), (3,), (10,)) == 7

    def test_heisenberg_max_entry_norm(self):
        a1, b1 = (1, 0, 1), (2, 1, 1)
        assert induced_distance(MaxEntryNorm(H), b1, a1) == 2

    def test_left_invariance_exact(self):
        m = InducedMetric(MaxEntryNorm(H))
        rng = random.Random(3)
        ball = H.ball(3)
        for _ in range(500):
            a, g, h = (rng.choice(ball) for _ in range(3))
            assert m.eval(H.mul(a, g), H.mul(a, h)) == m.eval(g, h)


class TestMaxEntryDistance:
    def test_near_diagonal_pair(self):
        n = 7
        assert max_entry_distance((n, 0, 1), (n + 1, 1, 1)) == 1

    def test_same_point(self):
        assert max_entry_distance((3, -2, 9), (3, -2, 9)) == 0

    def test_componentwise(self):
        assert max_entry_distance((0, 0, 0), (-1, 2, 5)) == 5

    def test_not_left_invariant(self):
        m = MaxEntryMetric(H)
        a1, b1 = (1, 0, 1), (2, 1, 1)
        g = H.inv(b1)
        assert m.eval(a1, b1) == 1
        assert m.eval(H.mul(g, a1), H.mul(g, b1)) == 2


class TestQuotientDistance:
    def test_cycle_bfs_oracle(self):
        qm = QuotientWordMetric(1, [(5,)])
        cyc = qm.quotient
        adjacency = cayley_adjacency(cyc, cyc.ball(10))
        oracle = bfs_distances(adjacency, cyc.identity())
        for a in range(-12, 13):
            assert qm.eval((0,), (a,)) == oracle[cyc._reduce((a,))]
        assert quotient_distance(qm, (0,), (3,)) == 2

    def test_same_coset(self):
        qm = QuotientWordMetric(1, [(5,)])
        for k in range(-4, 5):
            assert qm.eval((2,), (2 + 5 * k,)) == 0

    def test_adjacent_residues(self):
        qm = QuotientWordMetric(1, [(5,)])
        assert qm.eval((1,), (2,)) == 1

    def test_pseudo_flag(self):
        assert QuotientWordMetric(1, [(5,)]).pseudo
        assert not WordMetric(Z).pseudo


class TestMetricAxioms:
    @pytest.mark.parametrize(
        "metric,ball",
        [
            (WordMetric(Z), Z.ball(3)),
            (WordMetric(Z2), Z2.ball(3)),
            (MaxEntryMetric(H), H.ball(3)),
            (Entry12Pseudometric(H), H.ball(3)),
            (QuotientWordMetric(1, [(5,)]), Z.ball(3)),
        ],
    )
    def test_exhaustive_small_ball(self, metric, ball):
        sample = ball[:: max(1, len(ball) // 15)]
        for x, y in itertools.product(sample, repeat=2):
            assert metric.eval(x, x) == 0
            assert metric.eval(x, y) == metric.eval(y, x)
            assert metric.eval(x, y) >= 0
        for x, y, z in itertools.product(sample, repeat=3):
            assert metric.eval(x, z) <= metric.eval(x, y) + metric.eval(y, z)

    def test_positivity_of_genuine_metrics(self):
        wm = WordMetric(Z2)
        for x in Z2.ball(3):
            for y in Z2.ball(3):
                if x != y:
                    assert wm.eval(x, y) > 0

    @given(triples, triples, triples)
    @settings(max_examples=500)
    def test_max_entry_triangle_random(self, x, y, z):
        m = MaxEntryMetric(H)
        assert m.eval(x, z) <= m.eval(x, y) + m.eval(y, z)


class TestRhoPlus:
    def test_left_invariant_base_unchanged(self):
        wm = WordMetric(Z)
        for r in range(2, 6):
            assert rho_plus_truncated(wm, (2,), (9,), Z.ball(r)) == 7

    def test_heisenberg_grows_past_base(self):
        m = MaxEntryMetric(H)
        a1, b1 = (1, 0, 1), (2, 1, 1)
        trunc = set(H.ball(2))
        values = []
        for n in range(1, 5):
            trunc.add(H.inv((n + 1, 1, 1)))
            values.append(rho_plus_truncated(m, a1, b1, trunc))
        assert values[0] >= 2
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_zero_on_diagonal(self):
        m = MaxEntryMetric(H)
        assert rho_plus_truncated(m, (1, 2, 3), (1, 2, 3), H.ball(2)) == 0

    def test_monotone_in_truncation(self):
        m = MaxEntryMetric(H)
        rng = random.Random(11)
        ball = H.ball(3)
        for _ in range(200):
            x, y = rng.choice(ball), rng.choice(ball)
            small = set(rng.sample(ball, 10)) | {H.identity()}
            large = small | set(rng.sample(ball, 20))
            assert rho_plus_truncated(m, x, y, small) <= rho_plus_truncated(
                m, x, y, large
            )

    def test_triangle_for_fixed_truncation(self):
        m = MaxEntryMetric(H)
        trunc = H.ball(2)
        rng = random.Random(5)
        ball = H.ball(3)
        for _ in range(200):
            x, y, z = (rng.choice(ball) for _ in range(3))
            assert rho_plus_truncated(m, x, z, trunc) <= rho_plus_truncated(
                m, x, y, trunc
            ) + rho_plus_truncated(m, y, z, trunc)

    def test_requires_identity(self):
        with pytest.raises(ValueError):
            rho_plus_truncated(WordMetric(Z), (0,), (1,), [(5,)])


class TestBornologicityProbe:
    def test_left_invariant_bounded(self):
        report = bornologicity_probe(WordMetric(Z), 3, Z.ball(10), Z.ball(10))
        assert report.trend == "bounded"
        assert report.certified_bound is not None
        assert report.certified_bound < 3

    def test_heisenberg_growing(self):
        m = MaxEntryMetric(H)
        N = 9
        pairs = {p for n in range(1, N + 1) for p in ((n, 0, 1), (n + 1, 1, 1))}
        shifts = {H.inv((n + 1, 1, 1)) for n in range(1, N + 1)}
        report = bornologicity_probe(m, 2, pairs, shifts)
        assert report.trend == "growing"
        assert report.certified_bound is None
        assert report.witness_pairs

    def test_empty_pair_set(self):
        m = ScaledMetric(WordMetric(Z), 10)
        report = bornologicity_probe(m, Fraction(1, 2), Z.ball(4), Z.ball(4))
        assert report.empty_pair_set

    def test_scaled_base_same_trend(self):
        m = MaxEntryMetric(H)
        N = 9
        pairs = {p for n in range(1, N + 1) for p in ((n, 0, 1), (n + 1, 1, 1))}
        shifts = {H.inv((n + 1, 1, 1)) for n in range(1, N + 1)}
        base = bornologicity_probe(m, 2, pairs, shifts)
        scaled = bornologicity_probe(ScaledMetric(m, Fraction(3, 2)), 3, pairs, shifts)
        assert base.trend == scaled.trend == "growing"


class TestPropernessProbe:
    def test_word_metric_saturates(self):
        report = properness_probe(WordMetric(Z), 4, Z.ball(30))
        assert report.count == 9
        assert report.saturated

    def test_quotient_pseudometric_never_saturates(self):
        qm = QuotientWordMetric(1, [(5,)])
        report = properness_probe(qm, 2, [(i,) for i in range(-40, 41)])
        assert not report.saturated
        assert report.ladder_counts == sorted(report.ladder_counts)

    def test_radius_zero(self):
        report = properness_probe(WordMetric(Z2), 0, Z2.ball(5))
        assert report.count == 1
        assert report.saturated


class TestTrendRule:
    def test_bounded(self):
        assert classify_trend([3, 3, 3]) == "bounded"
        assert classify_trend([1, 2, 2]) == "bounded"

    def test_growing(self):
        assert classify_trend([1, 2, 3]) == "growing"
        assert classify_trend([1, 2, 4]) == "growing"

    def test_inconclusive(self):
        assert classify_trend([1, 3, 4]) == "inconclusive"
        assert classify_trend([2]) == "inconclusive"

    def test_overflow_markers(self):
        assert classify_trend([1, 2, None]) == "growing"
        assert classify_trend([None, None, None]) == "inconclusive"


class TestLadder:
    def test_prefixes_nested_and_deterministic(self):
        items = Z.ball(20)
        ladder = ladder_prefixes(items, 3)
        assert len(ladder) == 3
        for a, b in zip(ladder, ladder[1:]):
            assert set(a) <= set(b)
        assert ladder == ladder_prefixes(list(reversed(items)), 3)

    def test_small_magnitude_first(self):
        ladder = ladder_prefixes(Z.ball(9), 3)
        assert (0,) in ladder[0]
        assert max(abs(g[0]) for g in ladder[0]) < max(abs(g[0]) for g in ladder[-1])
