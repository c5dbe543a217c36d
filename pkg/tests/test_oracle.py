import pytest
from hypothesis import given, settings

from twofold import oracle
from twofold.generators import partly_decomposable_two_fold
from twofold.matrix import SignPattern
from twofold.structure import is_two_fold

from helpers import PART_DECOMP_5, REMARK, WIELANDT_5, identity, ones, patterns


class TestEnumerate:
    @pytest.mark.parametrize("n, count", [(1, 2), (2, 16), (3, 512)])
    def test_counts(self, n, count):
        assert sum(1 for _ in oracle.enumerate_patterns(n)) == count

    def test_symmetric(self):
        pats = list(oracle.enumerate_patterns(3, filter="symmetric"))
        assert len(pats) == 64 and all(P.is_symmetric() for P in pats)
        assert len(set(pats)) == 64

    def test_sampled_is_seeded(self):
        a = list(oracle.enumerate_patterns(6, filter="irreducible", sample=20, seed=4))
        b = list(oracle.enumerate_patterns(6, filter="irreducible", sample=20, seed=4))
        assert a == b and len(a) == 20

    def test_limits(self):
        with pytest.raises(ValueError):
            next(oracle.enumerate_patterns(5))
        with pytest.raises(ValueError):
            next(oracle.enumerate_patterns(2, filter="bogus"))

    def test_callable_filter(self):
        pats = list(oracle.enumerate_patterns(3, filter=is_two_fold))
        assert pats and all(is_two_fold(P) for P in pats)


class TestDefinitionOracles:
    def test_powers(self):
        assert oracle.irreducible_by_powers(SignPattern.from_cells(5, [((j + 1) % 5, j) for j in range(5)]))
        assert not oracle.irreducible_by_powers(identity(2))
        assert not oracle.irreducible_by_powers(REMARK)

    def test_konig(self):
        assert not oracle.fully_indecomposable_by_konig(partly_decomposable_two_fold(4))
        assert oracle.fully_indecomposable_by_konig(ones(3))
        assert not oracle.fully_indecomposable_by_konig(identity(3))

    def test_bipartite(self):
        assert oracle.is_bipartite_graph(SignPattern.from_mask([[0, 1], [1, 0]]))
        triangle = SignPattern.from_mask([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        assert not oracle.is_bipartite_graph(triangle)


class TestSweep:
    def test_n2(self):
        report = oracle.theorem_sweep(2)
        assert report.patterns == 16 and report.ok

    def test_n3(self):
        report = oracle.theorem_sweep(3)
        assert report.ok, report.to_dict()
        assert report.applicable["two_fold_equivalence"] == 512

    def test_sampled_n5(self):
        report = oracle.theorem_sweep(5, sample=200, seed=1)
        assert report.patterns == 200 and report.ok, report.to_dict()

    def test_n1_rejected(self):
        with pytest.raises(ValueError):
            oracle.theorem_sweep(1)

    @settings(max_examples=50)
    @given(patterns(min_n=2, max_n=5))
    def test_single_patterns(self, P):
        applied, violated = oracle.check_pattern(P)
        assert violated == []
        assert "two_fold_equivalence" in applied


class TestProbe:
    @pytest.mark.parametrize("P, holds", [(PART_DECOMP_5, True), (WIELANDT_5, False),
                                          (REMARK, False)])
    def test_examples(self, P, holds):
        res = oracle.property1_numeric_probe(P, trials=4, seed=0)
        assert res.agree and res.holds == holds

    def test_summary(self):
        pats = oracle.enumerate_patterns(4, filter="positive_radius", sample=40, seed=9)
        summary = oracle.probe_patterns(pats, trials=3, seed=9)
        assert summary.ok and summary.patterns == 40
        assert summary.to_dict()["disagreement"] is None
