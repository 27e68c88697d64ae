import itertools
import json

import pytest

from chowcalc.milnor import (
    BiDegree,
    MilnorError,
    PeriodicModule,
    Word,
    comult_check,
    flexible_cohomology,
    make_ring,
    q_apply,
    q_composite,
    q_homology_dimensions,
    restrict_symbol,
    trivial_ia,
    truncated_symbol_ia,
)


def symbol_rings(ms=(2, 3, 4), heights=(1, 3)):
    for m in ms:
        for h in heights:
            yield make_ring(m, truncated_symbol_ia(h))


class TestRingStructure:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_square_relations_with_rho(self, m):
        R = make_ring(m, truncated_symbol_ia(4))
        rho = R.rho_elem()
        for i in range(m - 1):
            lhs = R.r(i) * R.r(i)
            rhs = R.r(i + 1) * rho
            assert lhs == rhs

    def test_squares_vanish_without_rho(self):
        R = make_ring(3, trivial_ia())
        for i in range(2):
            assert (R.r(i) * R.r(i)).is_zero()

    def test_unit(self):
        R = make_ring(3, truncated_symbol_ia(3))
        x = R.r(0) * R.eta()
        assert R.one() * x == x

    def test_eta_is_free(self):
        R = make_ring(2, trivial_ia())
        eta = R.eta()
        powers = {R.one(), eta, eta * eta, eta * eta * eta}
        assert len(powers) == 4
        assert not (eta * eta * eta).is_zero()

    def test_mixed_bidegree_rejected(self):
        R = make_ring(2, trivial_ia())
        with pytest.raises(MilnorError):
            R.element([Word(0, frozenset(), 0), Word(1, frozenset(), 0)])

    def test_bidegree_additivity(self):
        for R in symbol_rings():
            words = R.basis_words(k_max=2)
            for w1 in words[:12]:
                for w2 in words[:12]:
                    prod = R.element([w1]) * R.element([w2])
                    if prod.is_zero():
                        continue
                    expected = R.word_bidegree(w1) + R.word_bidegree(w2)
                    assert prod.bidegree == expected


class TestFlexible:
    @pytest.mark.parametrize("n", range(7))
    def test_basis_count(self, n):
        F = flexible_cohomology(n)
        assert len(F.basis_words()) == 2 ** (n + 1)

    def test_bidegrees(self):
        F = flexible_cohomology(3)
        assert F.word_bidegree(Word(0, frozenset({1}), 0)) == BiDegree(-1, -3)
        assert F.word_bidegree(Word(0, frozenset(), 0)) == BiDegree(0, 0)

    def test_exterior_squares(self):
        F = flexible_cohomology(4)
        for i in range(5):
            assert (F.r(i) * F.r(i)).is_zero()

    def test_module_rule(self):
        F = flexible_cohomology(3)
        e = F.r_set([0, 1])
        assert q_apply(1, e) == F.r(0)
        assert q_apply(0, F.r(1)).is_zero()
        assert q_composite([0, 1], e) == F.one()


class TestDifferentials:
    def test_square_zero_and_commute(self):
        for R in symbol_rings():
            for w in R.basis_words(k_max=3):
                e = R.element([w])
                for i in R.q_indices:
                    assert q_apply(i, q_apply(i, e)).is_zero()
                    for j in R.q_indices:
                        assert q_apply(i, q_apply(j, e)) == q_apply(j, q_apply(i, e))

    def test_bidegree_shift(self):
        for R in symbol_rings(ms=(3, 4), heights=(3,)):
            for w in R.basis_words(k_max=2):
                e = R.element([w])
                for i in R.q_indices:
                    img = q_apply(i, e)
                    if img.is_zero():
                        continue
                    d = 2**i - 1
                    assert img.bidegree == e.bidegree + BiDegree(d, 2 * d + 1)

    def test_rigidity(self):
        # every nonzero exterior basis element is carried to 1 by its own
        # composite differential
        F = flexible_cohomology(5)
        for k in range(6):
            for I in itertools.combinations(range(6), k):
                assert q_composite(I, F.r_set(I)) == F.one()
        R = make_ring(4, truncated_symbol_ia(3))
        for k in range(3):
            for I in itertools.combinations(range(3), k):
                assert q_composite(I, R.r_set(I)) == R.one()

    def test_carry_example(self):
        R = make_ring(3, truncated_symbol_ia(4))
        assert q_apply(1, R.r(0) * R.r(0)) == R.rho_elem()

    def test_well_defined_on_relations(self):
        # both sides of each defining relation get equal images
        for m in (2, 3, 4):
            R = make_ring(m, truncated_symbol_ia(4))
            rho = R.rho_elem()
            for i in range(m - 1):
                lhs = R.r(i) * R.r(i)
                rhs = R.r(i + 1) * rho
                for q in R.q_indices:
                    assert q_apply(q, lhs) == q_apply(q, rhs)


class TestComultiplication:
    def test_derivation_case(self):
        R = make_ring(3, truncated_symbol_ia(3))
        assert comult_check([0], R.r(0), R.r(1))

    def test_carry_case(self):
        R = make_ring(3, truncated_symbol_ia(3))
        assert comult_check([1], R.r(0), R.r(0))

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_exhaustive_generator_pairs(self, m):
        R = make_ring(m, truncated_symbol_ia(2))
        gens = [R.r(i) for i in range(m)] + [R.one(), R.rho_elem()]
        singles = [frozenset({i}) for i in R.q_indices]
        for K in singles:
            for x in gens:
                for y in gens:
                    assert comult_check(K, x, y)

    def test_exhaustive_basis_pairs_small(self):
        R = make_ring(3, truncated_symbol_ia(2))
        words = R.basis_words(k_max=1)
        for K in [frozenset({0}), frozenset({1}), frozenset({2})]:
            for w1 in words:
                for w2 in words:
                    assert comult_check(K, R.element([w1]), R.element([w2]))


class TestRestriction:
    def proj(self, src, tgt):
        # coefficient projection: rho^k -> rho^k when present in the target
        table = []
        for k, lbl in enumerate(src.ia.labels):
            if k < len(tgt.ia.labels):
                table.append(frozenset({k}))
            else:
                table.append(frozenset())
        return table

    @pytest.mark.parametrize("m", [2, 3])
    def test_generators_fixed(self, m):
        S = make_ring(m, trivial_ia())
        T = make_ring(m + 1, trivial_ia())
        proj = self.proj(S, T)
        for k in range(m - 1):
            for I in itertools.combinations(range(m - 1), k):
                assert restrict_symbol(S, T, proj, S.r_set(I)) == T.r_set(I)

    @pytest.mark.parametrize("m", [2, 3])
    def test_eta_becomes_square_free(self, m):
        S = make_ring(m, trivial_ia())
        T = make_ring(m + 1, trivial_ia())
        proj = self.proj(S, T)
        for k in range(m - 1):
            for I in itertools.combinations(range(m - 1), k):
                img = restrict_symbol(S, T, proj, S.eta() * S.r_set(I))
                assert img == T.r_set(sorted(I) + [m - 1])

    @pytest.mark.parametrize("m", [2, 3])
    @pytest.mark.parametrize("height", [1, 3])
    def test_q_equivariance_exhaustive(self, m, height):
        S = make_ring(m, truncated_symbol_ia(height))
        T = make_ring(m + 1, truncated_symbol_ia(height))
        proj = self.proj(S, T)
        for w in S.basis_words(k_max=3):
            e = S.element([w])
            for i in S.q_indices:
                lhs = restrict_symbol(S, T, proj, q_apply(i, e))
                rhs = q_apply(i, restrict_symbol(S, T, proj, e))
                assert lhs == rhs


class TestPeriodicModule:
    def test_quotient_kills_ring_part(self):
        R = make_ring(3, trivial_ia())
        M = PeriodicModule(R)
        assert M.act(R.eta(), M.generator(1)).is_zero()
        assert M.act(R.eta(), M.generator(2)) == M.generator(1)

    def test_eta_derivative(self):
        R = make_ring(3, trivial_ia())
        M = PeriodicModule(R)
        assert M.q_apply(R.top_index, M.generator(1)) == M.generator(2)
        assert M.q_apply(R.top_index, M.generator(2)).is_zero()

    @pytest.mark.parametrize("m", [2, 3])
    def test_exactness_on_combined_model(self, m):
        R = make_ring(m, trivial_ia())
        for i in R.q_indices:
            dims = q_homology_dimensions(R, i, -6, 6)
            assert dims, "no interior bidegrees tested"
            assert all(v == 0 for v in dims.values())


class TestJsonDump:
    def test_dump_structure(self):
        R = make_ring(3, truncated_symbol_ia(2))
        doc = json.loads(R.dump_json(k_max=1))
        assert doc["square_free_generators"] == 2
        assert doc["polynomial_top"] is True
        assert any(b["word"] == "r{0}" for b in doc["basis"])
        assert "0" in doc["q_action"]
        # the action table actually reflects the module rule
        assert doc["q_action"]["0"]["r{0}"] == ["1"]
