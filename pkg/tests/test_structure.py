import numpy as np
import pytest
from hypothesis import given

from twofold import oracle
from twofold.generators import cyclic_normal, n_cycle, worked_4x4
from twofold.matrix import SignPattern, sign_pattern
from twofold.structure import (ReducibleError, board_move_irreducible, classify,
                               column_components, cyclic_form, frobenius_form,
                               has_positive_radius, has_total_support,
                               is_chainable, is_fully_indecomposable,
                               is_irreducible, is_primitive, is_scrambling,
                               is_two_fold, period, power_pattern,
                               product_pattern)

from helpers import PART_DECOMP_5, REMARK, WIELANDT_5, identity, ones, patterns

WORKED = sign_pattern(worked_4x4())


class TestIrreducibility:
    def test_examples(self):
        assert is_irreducible(n_cycle(5))
        assert not is_irreducible(REMARK)
        assert is_irreducible(PART_DECOMP_5)

    def test_single_entry_conventions(self):
        zero = SignPattern.from_mask([[0]])
        assert is_irreducible(zero) and is_irreducible(ones(1))
        assert not is_two_fold(zero) and is_two_fold(ones(1))
        assert not is_fully_indecomposable(zero) and is_fully_indecomposable(ones(1))

    @given(patterns(max_n=5))
    def test_matches_power_oracle(self, P):
        assert is_irreducible(P) == oracle.irreducible_by_powers(P)
        assert is_irreducible(P) == oracle.digraph_strongly_connected(P)


class TestPeriod:
    @pytest.mark.parametrize("P, gamma", [(n_cycle(5), 5), (WIELANDT_5, 1), (WORKED, 1),
                                          (cyclic_normal([2, 3]), 2), (n_cycle(1), 1)])
    def test_examples(self, P, gamma):
        assert period(P) == gamma

    def test_reducible_raises(self):
        with pytest.raises(ReducibleError):
            period(REMARK)

    def test_primitive(self):
        assert is_primitive(WIELANDT_5) and is_primitive(ones(3)) and is_primitive(WORKED)
        assert not is_primitive(n_cycle(5))
        assert not is_primitive(REMARK)

    @given(patterns(min_n=2, max_n=5))
    def test_primitive_iff_wielandt_power_positive(self, P):
        n = P.n
        positive = power_pattern(P, (n - 1) ** 2 + 1).nnz == n * n
        assert is_primitive(P) == positive

    def test_cyclic_examples(self):
        assert cyclic_form(n_cycle(4)).classes == ((0,), (1,), (2,), (3,))
        assert cyclic_form(SignPattern.from_mask([[0, 1], [1, 0]])).classes == ((0,), (1,))
        assert cyclic_form(WIELANDT_5).classes == ((0, 1, 2, 3, 4),)

    @given(patterns(min_n=2, max_n=5))
    def test_cyclic_classes_advance(self, P):
        if not is_irreducible(P):
            return
        cf = cyclic_form(P)
        where = {v: k for k, cls in enumerate(cf.classes) for v in cls}
        # edge j -> i for a nonzero (i, j)
        for i, j in P.cells():
            assert where[i] == (where[j] + 1) % cf.period
        assert sorted(cf.permutation) == list(range(P.n))


class TestProducts:
    def test_wielandt_ata(self):
        expected = np.array([[2, 1, 0, 0, 0], [1, 1, 0, 0, 0], [0, 0, 1, 0, 0],
                             [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]) > 0
        assert (product_pattern(WIELANDT_5.T, WIELANDT_5).mask == expected).all()

    def test_permutation_and_remark(self):
        P = n_cycle(4)
        assert product_pattern(P.T, P) == identity(4)
        assert product_pattern(REMARK.T, REMARK) == ones(2)

    @given(patterns(max_n=4), patterns(max_n=4))
    def test_matches_boolean_product(self, P, Q):
        if P.n != Q.n:
            return
        expected = (P.mask.astype(int) @ Q.mask.astype(int)) > 0
        assert (product_pattern(P, Q).mask == expected).all()


class TestTwoFoldFamily:
    def test_two_fold(self):
        assert is_two_fold(PART_DECOMP_5)
        assert not is_two_fold(WIELANDT_5)
        assert not is_two_fold(identity(2))

    def test_chainable(self):
        assert is_chainable(PART_DECOMP_5)
        assert not is_chainable(identity(2))
        assert is_chainable(ones(3))

    def test_total_support(self):
        assert has_total_support(identity(3))
        assert not has_total_support(PART_DECOMP_5)
        assert has_total_support(ones(4))
        assert not oracle.total_support_by_permutations(PART_DECOMP_5)

    def test_fully_indecomposable(self):
        assert not is_fully_indecomposable(PART_DECOMP_5)
        assert is_fully_indecomposable(ones(3))
        P = SignPattern.from_mask([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        assert is_fully_indecomposable(P)
        assert oracle.fully_indecomposable_by_konig(P)

    def test_scrambling(self):
        assert is_scrambling(ones(3))
        assert not is_scrambling(identity(2))
        assert is_scrambling(REMARK)

    @given(patterns(max_n=4))
    def test_fully_indecomposable_oracles(self, P):
        fi = is_fully_indecomposable(P)
        assert fi == oracle.fully_indecomposable_by_konig(P)
        assert has_total_support(P) == oracle.total_support_by_permutations(P)
        assert is_chainable(P) == (oracle.bipartite_graph_connected(P) and P.nnz > 0
                                   and all(P.rows) and all(P.cols))

    def test_column_components(self):
        assert column_components(WORKED) == ((0,), (1, 3), (2,))
        assert column_components(WIELANDT_5) == ((0, 1), (2,), (3,), (4,))
        assert column_components(PART_DECOMP_5) == ((0, 1, 2, 3, 4),)


class TestForms:
    def test_frobenius_examples(self):
        assert frobenius_form(PART_DECOMP_5).blocks == ((0, 1, 2, 3, 4),)
        assert frobenius_form(REMARK).blocks == ((0,), (1,))
        assert len(frobenius_form(identity(2)).blocks) == 2

    @given(patterns(max_n=5))
    def test_frobenius_is_block_lower_triangular(self, P):
        ff = frobenius_form(P)
        assert sorted(ff.permutation) == list(range(P.n))
        block_of = {v: k for k, b in enumerate(ff.blocks) for v in b}
        for i, j in P.cells():
            assert block_of[i] >= block_of[j]
        for b in ff.blocks:
            if len(b) > 1:
                sub = P.mask[np.ix_(b, b)]
                assert is_irreducible(SignPattern.from_mask(sub))

    def test_board_moves(self):
        assert board_move_irreducible(n_cycle(5))
        assert not board_move_irreducible(REMARK)
        assert board_move_irreducible(ones(3))

    @given(patterns(min_n=2, max_n=4))
    def test_board_moves_match_irreducibility(self, P):
        if all(P.rows) and all(P.cols):
            assert board_move_irreducible(P) == is_irreducible(P)
            assert board_move_irreducible(P, vertical=True) == is_irreducible(P)

    def test_positive_radius(self):
        assert not has_positive_radius(SignPattern.from_mask([[0, 1], [0, 0]]))
        assert has_positive_radius(n_cycle(3))
        assert has_positive_radius(SignPattern.from_mask([[0, 0], [0, 1]]))


class TestClassify:
    def test_part_decomp(self):
        r = classify(PART_DECOMP_5)
        assert (r.irreducible, r.primitive, r.two_fold, r.chainable) == (True,) * 4
        assert not r.fully_indecomposable and not r.total_support
        assert r.nnz == 9

    def test_wielandt(self):
        r = classify(WIELANDT_5)
        assert r.irreducible and r.primitive
        assert not r.two_fold and not r.ata_irreducible

    def test_identity(self):
        r = classify(identity(3))
        assert not r.irreducible and not r.two_fold and not r.chainable
        assert r.total_support and r.period is None and r.cyclic is None

    def test_json_ready(self):
        import json
        d = classify(PART_DECOMP_5).to_dict()
        assert json.loads(json.dumps(d)) == d

    @given(patterns(max_n=5))
    def test_internal_invariants(self, P):
        r = classify(P)
        if r.two_fold:
            assert r.primitive and r.chainable and r.a2_irreducible
        if r.fully_indecomposable and P.n > 1:
            assert r.two_fold
