import random

import pytest

from dmono import (
    ComposedTarget,
    CubeLattice,
    DenseFunction,
    EquivalenceOracle,
    LabeledSample,
    MembershipOracle,
    MonotoneDNF,
    SamplingEquivalenceOracle,
    XorHypothesis,
    consistent,
    counterexample_bound,
    descend_to_local_min,
    learn,
    parity_table,
    random_composed,
)
from dmono.errors import DegreeTooSmallError

from oracles import join_products


def parity_target(lat):
    return ComposedTarget(lat, parity_table(2), (MonotoneDNF(lat, (1,)), MonotoneDNF(lat, (2,))))


def zero_hypothesis(lat):
    return XorHypothesis(lat, ())


class TestDescend:
    def test_walks_to_first_disagreeing_predecessor(self, cube2):
        target = parity_target(cube2)
        mq = MembershipOracle.for_function(target)
        res = descend_to_local_min(cube2, 0b11, zero_hypothesis(cube2), mq, value=0)
        assert res.element == 0b01
        assert res.steps == 1
        # one query for f(01), one for f(00); f(11) was supplied
        assert mq.mq_count == 2

    def test_local_min_start_returns_unchanged(self, cube3):
        target = MonotoneDNF(cube3, (0b110,))
        mq = MembershipOracle.for_function(target)
        res = descend_to_local_min(cube3, 0b110, zero_hypothesis(cube3), mq, value=1)
        assert res.element == 0b110
        assert res.steps == 0
        # both predecessors inspected, one query each
        assert res.inspections == 2
        assert mq.mq_count == 2

    def test_bottom_start_costs_nothing(self, cube2):
        target = DenseFunction(cube2, 0b0001)  # value 1 only at 00
        mq = MembershipOracle.for_function(target)
        res = descend_to_local_min(cube2, 0b00, zero_hypothesis(cube2), mq, value=1)
        assert res.element == 0b00
        assert res.inspections == 0
        assert mq.mq_count == 0

    def test_contract_violation_detected(self, cube2):
        target = DenseFunction(cube2, 0)
        mq = MembershipOracle.for_function(target)
        with pytest.raises(ValueError, match="counterexample"):
            descend_to_local_min(cube2, 0b00, zero_hypothesis(cube2), mq, value=0)

    def test_queries_start_value_when_not_supplied(self, cube2):
        target = parity_target(cube2)
        mq = MembershipOracle.for_function(target)
        res = descend_to_local_min(cube2, 0b01, zero_hypothesis(cube2), mq)
        assert res.element == 0b01
        assert mq.mq_count == 2  # f(01) itself plus its only predecessor


class TestWorkedTrace:
    def test_parity_learning_run(self, cube2):
        target = parity_target(cube2)
        mq = MembershipOracle.for_function(target)
        eq = EquivalenceOracle(target)
        h, stats = learn(2, cube2, mq, eq)
        assert h.dense().mask == target.dense().mask
        assert stats.counterexamples == 3
        assert stats.eq_used == 4
        assert stats.eq_bound == 3  # met with equality
        assert stats.x1 == (0b01, 0b10)
        assert stats.x0 == (0b11,)
        assert [lv.minimals for lv in h.levels] == [(0b01, 0b10), (0b11,)]
        assert stats.within_bounds()

    def test_constant_zero_target(self, cube3):
        target = DenseFunction(cube3, 0)
        mq = MembershipOracle.for_function(target)
        eq = EquivalenceOracle(target)
        h, stats = learn(2, cube3, mq, eq)
        assert stats.eq_used == 1
        assert stats.counterexamples == 0
        assert stats.mq_used == 0
        assert all(h.evaluate(x) == 0 for x in cube3.elements())

    def test_single_minterm_monotone_run(self, cube3):
        target = MonotoneDNF(cube3, (0b110,))
        mq = MembershipOracle.for_function(target)
        eq = EquivalenceOracle(target)
        h, stats = learn(1, cube3, mq, eq)
        assert [lv.minimals for lv in h.levels] == [(0b110,)]
        assert stats.counterexamples == 1
        assert stats.eq_used == 2
        assert stats.eq_bound == 1

    def test_degree_too_small(self, cube2):
        target = parity_target(cube2)
        mq = MembershipOracle.for_function(target)
        eq = EquivalenceOracle(target)
        with pytest.raises(DegreeTooSmallError) as exc:
            learn(1, cube2, mq, eq)
        assert exc.value.degree == 1

    def test_explicit_lattice_run(self, diamond):
        p = diamond.parse_element("p")
        target = MonotoneDNF(diamond, (p,))
        mq = MembershipOracle.for_function(target)
        eq = EquivalenceOracle(target)
        h, stats = learn(1, diamond, mq, eq)
        assert h.dense().mask == target.dense().mask
        assert stats.counterexamples == 1
        assert stats.max_descent_inspections <= diamond.sigma()


def random_target(rng, n_lo=3, n_hi=8):
    n = rng.randint(n_lo, n_hi)
    d = rng.randint(1, 3)
    sizes = [rng.randint(1, 3) for _ in range(d)]
    return random_composed(d, sizes, n, seed=rng.randrange(10**9))


class TestLearnerProperties:
    def test_exactness_and_bounds(self):
        rng = random.Random(31)
        for _ in range(40):
            target = random_target(rng)
            lat = target.lattice
            mq = MembershipOracle.for_function(target)
            eq = EquivalenceOracle(target)
            h, stats = learn(target.d, lat, mq, eq)
            assert h.dense().mask == target.dense().mask
            assert stats.eq_bound is not None
            assert stats.counterexamples <= stats.eq_bound
            assert stats.mq_used <= stats.sigma * stats.counterexamples
            assert stats.mq_used <= stats.mq_bound
            assert stats.max_descent_inspections <= lat.sigma()
            assert stats.eq_used == stats.counterexamples + 1

    def test_collected_points_lie_in_join_products(self):
        rng = random.Random(32)
        for _ in range(25):
            target = random_target(rng, n_hi=6)
            lat = target.lattice
            mq = MembershipOracle.for_function(target)
            eq = EquivalenceOracle(target)
            _, stats = learn(target.d, lat, mq, eq)
            allowed = join_products(lat, [g.minimals for g in target.inner])
            assert set(stats.x0) | set(stats.x1) <= allowed

    def test_every_rebuild_agrees_with_collected_points(self):
        rng = random.Random(33)
        for _ in range(15):
            target = random_target(rng, n_hi=6)
            lat = target.lattice
            mq = MembershipOracle.for_function(target)
            eq = EquivalenceOracle(target)
            _, stats = learn(target.d, lat, mq, eq)
            x0, x1 = set(), set()
            for entry in stats.trace:
                (x1 if entry["label"] else x0).add(entry["settled"])
                h = consistent(
                    target.d, LabeledSample(lat, frozenset(x0), frozenset(x1))
                )
                assert all(h.evaluate(u) == 0 for u in x0)
                assert all(h.evaluate(u) == 1 for u in x1)

    def test_monotone_targets_need_exactly_size_counterexamples(self):
        rng = random.Random(34)
        for _ in range(25):
            lat = CubeLattice(rng.randint(4, 8))
            want = rng.randint(1, 6)
            picks = rng.sample(range(1, lat.size), min(lat.size - 1, want + 6))
            mins = lat.min_antichain(picks)[:want]
            target = MonotoneDNF(lat, tuple(mins))
            mq = MembershipOracle.for_function(target)
            eq = EquivalenceOracle(target)
            h, stats = learn(1, lat, mq, eq)
            assert h.dense().mask == target.dense().mask
            assert stats.counterexamples == target.size
            assert stats.eq_bound == target.size

    def test_caching_never_exceeds_raw_inspections(self):
        rng = random.Random(35)
        for _ in range(10):
            target = random_target(rng, n_hi=6)
            mq = MembershipOracle.for_function(target)
            eq = EquivalenceOracle(target)
            _, stats = learn(target.d, target.lattice, mq, eq)
            raw_total = sum(entry["inspections"] for entry in stats.trace)
            assert stats.mq_used <= raw_total


class TestBoundHelper:
    def test_composed_bound(self, cube3):
        target = ComposedTarget(
            cube3,
            parity_table(2),
            (MonotoneDNF(cube3, (1, 2)), MonotoneDNF(cube3, (4,))),
        )
        assert counterexample_bound(target) == (2 + 1) * (1 + 1) - 1

    def test_mdnf_bound(self, cube3):
        assert counterexample_bound(MonotoneDNF(cube3, (1, 2, 4))) == 3

    def test_absent_for_origin_one_and_dense(self, cube2):
        lifted = ComposedTarget(cube2, parity_table(2) | 1, (MonotoneDNF(cube2, (1,)), MonotoneDNF(cube2, (2,))))
        assert counterexample_bound(lifted) is None
        assert counterexample_bound(DenseFunction(cube2, 5)) is None
        assert counterexample_bound(None) is None


class TestSamplingOracle:
    def test_counterexamples_are_real(self):
        lat = CubeLattice(4)
        target = MonotoneDNF(lat, (0b0001,))
        eq = SamplingEquivalenceOracle(target, probes=200, seed=5)
        cex = eq.query(zero_hypothesis(lat))
        assert cex is not None
        assert target.evaluate(cex) == 1

    def test_yes_on_equal_functions(self):
        lat = CubeLattice(4)
        target = MonotoneDNF(lat, (0b0001,))
        eq = SamplingEquivalenceOracle(target, probes=50, seed=5)
        assert eq.query(XorHypothesis(lat, (target,))) is None
