import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coarsegroups.groups import (
    BudgetExceededError,
    GroupSpec,
    element_key,
    hermite_rows,
)

from oracles import (
    heis_from_matrix,
    heis_to_matrix,
    matinv_unitriangular,
    matmul3,
)

Z = GroupSpec.free_abelian(1)
Z2 = GroupSpec.free_abelian(2)
C5 = GroupSpec.cyclic(5)
H = GroupSpec.heisenberg()

triples = st.tuples(
    st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50)
)


class TestIdentity:
    def test_free_abelian(self):
        assert Z2.identity() == (0, 0)

    def test_heisenberg(self):
        assert H.identity() == (0, 0, 0)

    def test_cyclic(self):
        assert C5.identity() == 0

    def test_left_identity(self):
        for g in H.ball(2):
            assert H.mul(H.identity(), g) == g


class TestMul:
    def test_heisenberg_generators(self):
        assert H.mul((1, 0, 0), (0, 1, 0)) == (1, 1, 1)

    def test_heisenberg_matches_matrix_oracle(self):
        g, h = (1, 0, 0), (0, 1, 0)
        m = matmul3(heis_to_matrix(g), heis_to_matrix(h))
        assert H.mul(g, h) == heis_from_matrix(m)

    def test_free_abelian(self):
        assert Z.mul((3,), (4,)) == (7,)

    def test_cyclic(self):
        assert C5.mul(3, 4) == 2

    def test_kind_mismatch_rejected(self):
        with pytest.raises(TypeError):
            H.check_element((1, 2))

    @given(triples, triples)
    @settings(max_examples=300)
    def test_oracle_agreement_random(self, g, h):
        m = matmul3(heis_to_matrix(g), heis_to_matrix(h))
        assert H.mul(g, h) == heis_from_matrix(m)

    def test_oracle_agreement_bulk(self):
        rng = random.Random(7)
        for _ in range(10_000):
            g = tuple(rng.randint(-10**6, 10**6) for _ in range(3))
            h = tuple(rng.randint(-10**6, 10**6) for _ in range(3))
            m = matmul3(heis_to_matrix(g), heis_to_matrix(h))
            assert H.mul(g, h) == heis_from_matrix(m)


class TestInv:
    def test_heisenberg_formula(self):
        n = 3
        assert H.inv((n + 1, 1, 1)) == (-(n + 1), -1, n)

    def test_heisenberg_matches_matrix_oracle(self):
        for g in [(4, 1, 1), (2, -3, 7), (0, 0, 5)]:
            m = matinv_unitriangular(heis_to_matrix(g))
            assert H.inv(g) == heis_from_matrix(m)

    def test_free_abelian(self):
        assert Z2.inv((2, -1)) == (-2, 1)

    def test_identity(self):
        assert H.inv(H.identity()) == H.identity()

    @given(triples)
    def test_inverse_law(self, g):
        assert H.mul(g, H.inv(g)) == H.identity()
        assert H.mul(H.inv(g), g) == H.identity()


class TestAssociativity:
    @pytest.mark.parametrize("spec", [Z, Z2, C5, H, GroupSpec.direct_product(Z, C5)])
    def test_exhaustive_on_small_balls(self, spec):
        ball = spec.ball(2) if spec.kind == "heisenberg" else spec.ball(3)
        sample = ball[:: max(1, len(ball) // 12)]
        for a in sample:
            for b in sample:
                for c in sample:
                    assert spec.mul(spec.mul(a, b), c) == spec.mul(a, spec.mul(b, c))

    @given(triples, triples, triples)
    @settings(max_examples=200)
    def test_heisenberg_random(self, a, b, c):
        assert H.mul(H.mul(a, b), c) == H.mul(a, H.mul(b, c))


class TestBall:
    def test_integer_interval(self):
        assert Z.ball(2) == [(-2,), (-1,), (0,), (1,), (2,)]

    def test_cyclic_saturates(self):
        assert C5.ball(10) == [0, 1, 2, 3, 4]

    def test_radius_zero(self):
        for spec in (Z, Z2, C5, H):
            assert spec.ball(0) == [spec.identity()]

    def test_nesting(self):
        for spec in (Z2, H):
            for r in range(4):
                assert set(spec.ball(r)) <= set(spec.ball(r + 1))

    def test_growth_by_generator_step(self):
        gens = H.symmetric_generators()
        for r in range(3):
            grown = set(H.ball(r))
            for g in H.ball(r):
                for s in gens:
                    grown.add(H.mul(g, s))
            assert grown == set(H.ball(r + 1))

    def test_budget_cap(self):
        with pytest.raises(BudgetExceededError):
            Z2.ball(100, cap=50)

    def test_deterministic_order(self):
        b = H.ball(3)
        assert b == sorted(b, key=element_key)
        assert b == H.ball(3)


class TestQuotientByLattice:
    def test_residues(self):
        q = GroupSpec.quotient_by_lattice(1, [(5,)])
        assert sorted(q.ball(10)) == [(0,), (1,), (2,), (3,), (4,)]

    def test_canonical_form_unique(self):
        q = GroupSpec.quotient_by_lattice(2, [(2, 0), (0, 3)])
        seen = {q._reduce((a, b)) for a in range(-6, 7) for b in range(-6, 7)}
        assert len(seen) == 6

    def test_rank2_lattice_group_law(self):
        q = GroupSpec.quotient_by_lattice(2, [(2, 1), (0, 5)])
        e = q.identity()
        for g in q.ball(12):
            assert q.mul(g, q.inv(g)) == e

    def test_hermite_rows(self):
        assert hermite_rows([[4], [6]]) == [[2]]
        assert hermite_rows([[2, 1], [0, 5]]) == [[2, 1], [0, 5]]


class TestEnumeration:
    def test_integer_stream_order(self):
        assert Z.elements(5) == [(0,), (1,), (-1,), (2,), (-2,)]

    def test_stream_prefix_stable(self):
        assert H.elements(20) == H.elements(25)[:20]

    def test_box_heisenberg_is_entry_cube(self):
        box = H.box(1)
        assert len(box) == 27
        assert all(max(abs(c) for c in g) <= 1 for g in box)
