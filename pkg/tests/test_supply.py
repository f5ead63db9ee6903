import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tokenlab.errors import ConstraintViolation, InsufficientTreasury, SupplyUnderflow
from tokenlab.supply import (
    EpochFlows,
    SupplyPolicy,
    SupplyState,
    VestingSchedule,
    apply_burn,
    apply_buyback,
    load_flow_schedule,
    simulate_supply_path,
    stake,
    step_supply,
    unstake,
    vesting_released,
)

UNCAPPED = SupplyPolicy.uncapped()


class TestPolicy:
    def test_capped_requires_cap(self):
        with pytest.raises(ValueError):
            SupplyPolicy(capped=True)

    def test_uncapped_forbids_cap(self):
        with pytest.raises(ValueError):
            SupplyPolicy(capped=False, s_max=Fraction(10))


class TestStepSupply:
    def test_plain_mint_and_burn(self):
        state = SupplyState(circulating=100)
        new, truncation = step_supply(state, EpochFlows(minted=10, burned=5), UNCAPPED)
        assert new.circulating == 105
        assert new.epoch == 1
        assert new.cumulative_minted == 10
        assert new.cumulative_burned == 5
        assert truncation is None

    def test_cap_truncates_and_reports(self):
        state = SupplyState(circulating=100)
        policy = SupplyPolicy.capped_at(102)
        new, truncation = step_supply(state, EpochFlows(minted=10, burned=5), policy)
        assert new.circulating == 102
        assert truncation is not None
        assert truncation.requested == 10
        assert truncation.minted == 7
        assert truncation.truncated == 3

    def test_noop(self):
        state = SupplyState(circulating=100)
        new, _ = step_supply(state, EpochFlows(), UNCAPPED)
        assert new.circulating == 100
        assert new.epoch == 1

    def test_underflow_rejected(self):
        state = SupplyState(circulating=10)
        with pytest.raises(SupplyUnderflow):
            step_supply(state, EpochFlows(burned=20), UNCAPPED)

    def test_inflationary_constraint(self):
        policy = SupplyPolicy.uncapped(inflationary_constraint=True)
        state = SupplyState(circulating=100)
        with pytest.raises(ConstraintViolation):
            step_supply(state, EpochFlows(minted=5, burned=5), policy)
        new, _ = step_supply(state, EpochFlows(minted=6, burned=5), policy)
        assert new.circulating == 101

    def test_vest_release_moves_locked_to_circulating(self):
        state = SupplyState(circulating=50, vesting_locked=30)
        new, _ = step_supply(state, EpochFlows(vest_release=10), UNCAPPED)
        assert new.circulating == 60
        assert new.vesting_locked == 20
        assert new.total == state.total

    def test_vest_release_overflow(self):
        state = SupplyState(circulating=50, vesting_locked=5)
        with pytest.raises(SupplyUnderflow):
            step_supply(state, EpochFlows(vest_release=10), UNCAPPED)

    def test_stake_delta_both_directions(self):
        state = SupplyState(circulating=80, staked=20)
        up, _ = step_supply(state, EpochFlows(stake_delta=15), UNCAPPED)
        assert (up.circulating, up.staked) == (65, 35)
        down, _ = step_supply(state, EpochFlows(stake_delta=-20), UNCAPPED)
        assert (down.circulating, down.staked) == (100, 0)
        with pytest.raises(SupplyUnderflow):
            step_supply(state, EpochFlows(stake_delta=-21), UNCAPPED)

    def test_cap_counts_staked_and_locked(self):
        state = SupplyState(circulating=10, staked=80, vesting_locked=10)
        policy = SupplyPolicy.capped_at(105)
        new, truncation = step_supply(state, EpochFlows(minted=10), policy)
        assert new.total == 105
        assert truncation.minted == 5


class TestSupplyPath:
    def test_empty(self):
        path = simulate_supply_path(SupplyState(), [], UNCAPPED)
        assert len(path) == 0

    def test_linear_growth(self):
        flows = [EpochFlows(minted=10)] * 3
        path = simulate_supply_path(SupplyState(), flows, UNCAPPED)
        assert [s.circulating for s in path] == [10, 20, 30]
        assert [s.epoch for s in path] == [1, 2, 3]

    def test_cap_hit_on_third_epoch(self):
        flows = [EpochFlows(minted=10)] * 3
        path = simulate_supply_path(SupplyState(), flows, SupplyPolicy.capped_at(25))
        assert [s.circulating for s in path] == [10, 20, 25]
        assert len(path.truncations) == 1
        assert path.truncations[0].epoch == 3
        assert path.truncations[0].truncated == 5

    def test_error_carries_epoch(self):
        flows = [EpochFlows(minted=5), EpochFlows(burned=100)]
        with pytest.raises(SupplyUnderflow, match="epoch 2"):
            simulate_supply_path(SupplyState(), flows, UNCAPPED)


class TestVesting:
    def test_linear_no_cliff(self):
        sched = VestingSchedule(total=100, start_epoch=0, cliff_epochs=0, duration_epochs=4)
        assert vesting_released(sched, 2) == 50

    def test_before_start(self):
        sched = VestingSchedule(total=100, start_epoch=5, duration_epochs=4)
        assert vesting_released(sched, 4) == 0

    def test_full_at_end(self):
        sched = VestingSchedule(total=100, start_epoch=2, duration_epochs=4)
        assert vesting_released(sched, 6) == 100
        assert vesting_released(sched, 60) == 100

    def test_cliff_tranche(self):
        # at the cliff, the amount accrued since start unlocks at once
        sched = VestingSchedule(total=80, start_epoch=0, cliff_epochs=2, duration_epochs=8)
        assert vesting_released(sched, 1) == 0
        assert vesting_released(sched, 2) == 20
        assert vesting_released(sched, 3) == 30

    def test_cliff_cannot_exceed_duration(self):
        with pytest.raises(ValueError):
            VestingSchedule(total=10, cliff_epochs=5, duration_epochs=4)

    @given(
        st.integers(min_value=0, max_value=1000),
        st.integers(min_value=0, max_value=20),
        st.integers(min_value=0, max_value=10),
        st.integers(min_value=1, max_value=30),
    )
    @settings(max_examples=150, deadline=None)
    def test_monotone_and_total(self, total, start, cliff, duration):
        cliff = min(cliff, duration)
        sched = VestingSchedule(
            total=total, start_epoch=start, cliff_epochs=cliff, duration_epochs=duration
        )
        values = [vesting_released(sched, t) for t in range(start + duration + 3)]
        assert all(a <= b for a, b in zip(values, values[1:]))
        assert values[-1] == total
        for t in range(start + cliff):
            assert vesting_released(sched, t) == 0


class TestLevers:
    def test_burn(self):
        state = SupplyState(circulating=100)
        assert apply_burn(state, 30).circulating == 70
        assert apply_burn(state, 0) == state
        with pytest.raises(SupplyUnderflow):
            apply_burn(state, 101)

    def test_burn_is_cumulative(self):
        state = SupplyState(circulating=100)
        state = apply_burn(state, 30)
        state = apply_burn(state, 10)
        assert state.cumulative_burned == 40

    def test_buyback_burn_variant(self):
        state = SupplyState(circulating=100)
        new, treasury = apply_buyback(state, 10, treasury=10, price=1)
        assert new.circulating == 90
        assert new.cumulative_burned == 10
        assert treasury == 0

    def test_buyback_hold_variant(self):
        state = SupplyState(circulating=100)
        new, treasury = apply_buyback(state, 10, treasury=20, price=2, burn_bought=False)
        assert new.circulating == 90
        assert new.treasury_held == 10
        assert new.cumulative_burned == 0
        assert treasury == 0

    def test_buyback_noop(self):
        state = SupplyState(circulating=100)
        new, treasury = apply_buyback(state, 0, treasury=5)
        assert new == state
        assert treasury == 5

    def test_buyback_insufficient_treasury(self):
        state = SupplyState(circulating=100)
        with pytest.raises(InsufficientTreasury):
            apply_buyback(state, 10, treasury=5, price=1)

    def test_stake_unstake_round_trip(self):
        state = SupplyState(circulating=100)
        staked = stake(state, 40)
        assert (staked.circulating, staked.staked) == (60, 40)
        assert unstake(staked, 40) == state
        assert stake(state, 0) == state
        with pytest.raises(SupplyUnderflow):
            stake(state, 101)
        with pytest.raises(SupplyUnderflow):
            unstake(state, 1)


def random_flows(rng, state, policy):
    """Generate flows valid for the current state (mints may still truncate)."""
    minted = Fraction(rng.randint(0, 50))
    max_out = state.circulating + minted
    burned = Fraction(rng.randint(0, int(max_out // 2)))
    buyback = Fraction(rng.randint(0, int((max_out - burned) // 2)))
    vest_release = Fraction(rng.randint(0, int(state.vesting_locked)))
    lo = -int(state.staked)
    hi = int(state.circulating + minted - burned - buyback + vest_release)
    stake_delta = Fraction(rng.randint(lo, max(lo, hi)))
    return EpochFlows(
        minted=minted,
        burned=burned,
        buyback=buyback,
        stake_delta=stake_delta,
        vest_release=vest_release,
    )


class TestRandomizedSafety:
    def test_capped_invariant_holds(self):
        rng = random.Random(7)
        policy = SupplyPolicy.capped_at(500)
        state = SupplyState(circulating=100, staked=50, vesting_locked=200)
        for _ in range(3000):
            state, _ = step_supply(state, random_flows(rng, state, policy), policy)
            assert state.total <= policy.s_max

    def test_uncapped_conservation(self):
        rng = random.Random(8)
        initial = SupplyState(circulating=100, staked=50, vesting_locked=200)
        state = initial
        for _ in range(3000):
            state, truncation = step_supply(state, random_flows(rng, state, UNCAPPED), UNCAPPED)
            assert truncation is None
            minted = state.cumulative_minted
            burned = state.cumulative_burned
            assert state.total == initial.total + minted - burned

    def test_burned_monotone(self):
        rng = random.Random(9)
        state = SupplyState(circulating=1000)
        last = Fraction(0)
        for _ in range(500):
            state, _ = step_supply(state, random_flows(rng, state, UNCAPPED), UNCAPPED)
            assert state.cumulative_burned >= last
            last = state.cumulative_burned


def test_flow_schedule_csv(tmp_path):
    path = tmp_path / "flows.csv"
    path.write_text(
        "epoch,minted,burned,buyback,stake_delta\n"
        "1,10,0,0,0\n"
        "2,10,2,1,5\n"
        "3,0,0,0,-5\n"
    )
    flows = load_flow_schedule(path)
    assert len(flows) == 3
    assert flows[1].buyback == 1
    path2 = tmp_path / "bad.csv"
    path2.write_text("epoch,minted,burned,buyback,stake_delta\n5,1,0,0,0\n")
    with pytest.raises(ValueError):
        load_flow_schedule(path2)
