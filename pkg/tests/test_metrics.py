import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tokenlab.errors import DegenerateDistribution
from tokenlab.metrics import (
    HolderDistribution,
    concentration_report,
    gini,
    load_holder_snapshot,
    nakamoto,
)

from .oracles import gini_double_sum, nakamoto_dp, nakamoto_enumerate

weights_strategy = st.lists(
    st.one_of(
        st.integers(min_value=0, max_value=10**6),
        st.fractions(min_value=0, max_value=10**6),
    ),
    min_size=1,
    max_size=64,
).filter(lambda ws: sum(ws) > 0)


class TestGini:
    def test_perfect_equality(self):
        assert gini([1, 1, 1, 1]) == 0

    def test_single_holder_of_four(self):
        # oracle value: (n-1)/n for one-holder concentration
        assert gini([0, 0, 0, 1]) == Fraction(3, 4)
        assert gini_double_sum([0, 0, 0, 1]) == Fraction(3, 4)

    def test_two_holders_three_one(self):
        assert gini([3, 1]) == Fraction(1, 4)

    def test_one_holder_has_everything_bound(self):
        for n in range(2, 51):
            ws = [0] * (n - 1) + [7]
            assert gini(ws) == Fraction(n - 1, n)

    def test_degenerate_empty(self):
        with pytest.raises(DegenerateDistribution):
            gini([])

    def test_degenerate_all_zero(self):
        with pytest.raises(DegenerateDistribution):
            gini([0, 0])

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            HolderDistribution.from_weights([1, -1])

    @given(weights_strategy)
    @settings(max_examples=150, deadline=None)
    def test_matches_double_sum_oracle(self, ws):
        assert gini(ws) == gini_double_sum(ws)

    @given(weights_strategy, st.fractions(min_value=Fraction(1, 7), max_value=1000))
    @settings(max_examples=100, deadline=None)
    def test_scale_invariance(self, ws, c):
        scaled = [as_f * c for as_f in map(Fraction, ws)]
        assert gini(ws) == gini(scaled)

    @given(weights_strategy, st.randoms(use_true_random=False))
    @settings(max_examples=100, deadline=None)
    def test_permutation_invariance(self, ws, rng):
        shuffled = list(ws)
        rng.shuffle(shuffled)
        assert gini(ws) == gini(shuffled)

    @given(weights_strategy)
    @settings(max_examples=100, deadline=None)
    def test_bounds(self, ws):
        g = gini(ws)
        n = len(ws)
        assert 0 <= g <= Fraction(n - 1, n)


class TestNakamoto:
    def test_single_holder(self):
        assert nakamoto([100]) == 1

    def test_forty_thirty_twenty_ten(self):
        assert nakamoto([40, 30, 20, 10]) == 2
        assert nakamoto_enumerate([40, 30, 20, 10]) == 2

    def test_exact_half_does_not_count(self):
        # two of four equal holders reach exactly 50%, which is not control
        assert nakamoto([25, 25, 25, 25]) == 3

    def test_degenerate(self):
        with pytest.raises(DegenerateDistribution):
            nakamoto([0, 0, 0])

    @given(weights_strategy)
    @settings(max_examples=150, deadline=None)
    def test_matches_dp_oracle(self, ws):
        assert nakamoto(ws) == nakamoto_dp(ws)

    @given(
        st.lists(st.integers(min_value=0, max_value=1000), min_size=1, max_size=10).filter(
            lambda ws: sum(ws) > 0
        )
    )
    @settings(max_examples=80, deadline=None)
    def test_dp_agrees_with_enumeration(self, ws):
        assert nakamoto_dp(ws) == nakamoto_enumerate(ws)

    @given(weights_strategy, st.integers(min_value=1, max_value=10))
    @settings(max_examples=80, deadline=None)
    def test_zero_padding_invariance(self, ws, pad):
        assert nakamoto(ws) == nakamoto(list(ws) + [0] * pad)

    @given(weights_strategy.filter(lambda ws: len(ws) >= 2), st.randoms(use_true_random=False))
    @settings(max_examples=100, deadline=None)
    def test_merge_never_increases(self, ws, rng):
        ws = list(ws)
        i, j = rng.sample(range(len(ws)), 2)
        merged = [w for idx, w in enumerate(ws) if idx not in (i, j)]
        merged.append(Fraction(ws[i]) + Fraction(ws[j]))
        assert nakamoto(merged) <= nakamoto(ws)

    @given(weights_strategy, st.randoms(use_true_random=False))
    @settings(max_examples=80, deadline=None)
    def test_permutation_invariance(self, ws, rng):
        shuffled = list(ws)
        rng.shuffle(shuffled)
        assert nakamoto(ws) == nakamoto(shuffled)


class TestConcentrationReport:
    def test_two_equal_holders(self):
        report = concentration_report([1, 1], top_k_prefix=2)
        assert report.gini == 0
        assert report.nakamoto == 2
        assert report.top_k_shares == ((1, Fraction(1, 2)), (2, Fraction(1)))

    def test_three_one(self):
        report = concentration_report([3, 1])
        assert report.gini == Fraction(1, 4)
        assert report.nakamoto == 1
        assert report.total_weight == 4
        assert report.holder_count == 2

    def test_degenerate(self):
        with pytest.raises(DegenerateDistribution):
            concentration_report([0, 0])

    def test_consistency_with_standalone_metrics(self):
        ws = [5, 1, 9, 0, 3, 3]
        report = concentration_report(ws, top_k_prefix=3)
        assert report.gini == gini(ws)
        assert report.nakamoto == nakamoto(ws)

    @given(weights_strategy, st.integers(min_value=1, max_value=70))
    @settings(max_examples=80, deadline=None)
    def test_top_k_shares_monotone_and_closed(self, ws, prefix):
        report = concentration_report(ws, top_k_prefix=prefix)
        shares = [s for _, s in report.top_k_shares]
        assert all(a <= b for a, b in zip(shares, shares[1:]))
        assert report.top_k_shares[-1] == (len(ws), Fraction(1))

    def test_to_dict_rounds(self):
        report = concentration_report([3, 1], precision=4)
        payload = report.to_dict()
        assert payload["gini"] == 0.25
        assert payload["nakamoto"] == 1
        assert payload["top_k_shares"][0] == {"k": 1, "share": 0.75}


class TestSnapshotLoading:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "snap.csv"
        path.write_text("entity,weight\na,40\nb,30\nc,20\nd,10\n")
        dist = load_holder_snapshot(path)
        assert nakamoto(dist) == 2
        assert dist.entries[0] == ("a", Fraction(40))

    def test_lock_end_column_parsed_and_ignored_by_metrics(self, tmp_path):
        path = tmp_path / "snap.csv"
        path.write_text("entity,weight,lock_end\na,10,4\nb,10,\n")
        dist = load_holder_snapshot(path)
        assert dist.lock_ends == (4, None)
        assert gini(dist) == 0

    def test_bad_header(self, tmp_path):
        path = tmp_path / "snap.csv"
        path.write_text("name,amount\na,1\n")
        with pytest.raises(ValueError):
            load_holder_snapshot(path)

    def test_bad_weight_reports_line(self, tmp_path):
        path = tmp_path / "snap.csv"
        path.write_text("entity,weight\na,xyz\n")
        with pytest.raises(ValueError, match="line 2"):
            load_holder_snapshot(path)


def test_randomized_oracle_sweep():
    # broader randomized cross-check mirroring the acceptance criterion shape
    rng = random.Random(20260808)
    for _ in range(200):
        n = rng.randint(1, 64)
        ws = [rng.randint(0, 10**6) for _ in range(n)]
        if sum(ws) == 0:
            ws[rng.randrange(n)] = 1
        assert gini(ws) == gini_double_sum(ws)
        assert nakamoto(ws) == nakamoto_dp(ws)
