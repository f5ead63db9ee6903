"""Token supply accounting over discrete epochs.

The core step applies the clamped supply identity
`S_t = min(S_max, S_{t-1} + M_t - B_t)` extended with buybacks, staking
moves, and vesting releases. Mints that cannot fit under a cap are
truncated and the shortfall surfaced as a truncation event rather than
rejected. All quantities are exact rationals; negative-supply attempts are
hard errors because they signal scenario bugs, not economics.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import ConstraintViolation, InsufficientTreasury, SupplyUnderflow
from .quantities import Numeric, as_fraction

__all__ = [
    "SupplyPolicy",
    "SupplyState",
    "EpochFlows",
    "VestingSchedule",
    "TruncationEvent",
    "StepResult",
    "SupplyPath",
    "step_supply",
    "simulate_supply_path",
    "vesting_released",
    "apply_burn",
    "apply_buyback",
    "stake",
    "unstake",
    "load_flow_schedule",
]

ZERO = Fraction(0)


def _q(value: Numeric) -> Fraction:
    return as_fraction(value)


@dataclass(frozen=True)
class SupplyPolicy:
    """Capped or uncapped issuance policy.

    A capped policy fixes `s_max`; an uncapped one must leave it unset.
    With `inflationary_constraint` every epoch must mint strictly more than
    it burns.
    """

    capped: bool
    s_max: Optional[Fraction] = None
    inflationary_constraint: bool = False

    def __post_init__(self):
        if self.capped and self.s_max is None:
            raise ValueError("capped policy requires s_max")
        if not self.capped and self.s_max is not None:
            raise ValueError("uncapped policy must not define s_max")
        if self.s_max is not None:
            object.__setattr__(self, "s_max", _q(self.s_max))
            if self.s_max < 0:
                raise ValueError("s_max must be non-negative")

    @classmethod
    def capped_at(cls, s_max: Numeric) -> "SupplyPolicy":
        return cls(capped=True, s_max=_q(s_max))

    @classmethod
    def uncapped(cls, inflationary_constraint: bool = False) -> "SupplyPolicy":
        return cls(capped=False, inflationary_constraint=inflationary_constraint)


@dataclass(frozen=True)
class SupplyState:
    """Immutable supply snapshot at one epoch."""

    epoch: int = 0
    circulating: Fraction = ZERO
    staked: Fraction = ZERO
    vesting_locked: Fraction = ZERO
    treasury_held: Fraction = ZERO
    cumulative_minted: Fraction = ZERO
    cumulative_burned: Fraction = ZERO

    def __post_init__(self):
        for name in ("circulating", "staked", "vesting_locked", "treasury_held",
                     "cumulative_minted", "cumulative_burned"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        for name in ("circulating", "staked", "vesting_locked", "treasury_held"):
            if getattr(self, name) < 0:
                raise SupplyUnderflow(f"{name} is negative")

    @property
    def total(self) -> Fraction:
        """All live tokens: circulating, staked, vesting, and treasury-held."""
        return self.circulating + self.staked + self.vesting_locked + self.treasury_held

    def to_dict(self) -> dict:
        return {
            "epoch": self.epoch,
            "circulating": str(self.circulating),
            "staked": str(self.staked),
            "vesting_locked": str(self.vesting_locked),
            "treasury_held": str(self.treasury_held),
            "cumulative_minted": str(self.cumulative_minted),
            "cumulative_burned": str(self.cumulative_burned),
        }


@dataclass(frozen=True)
class EpochFlows:
    """Requested flows for one epoch step.

    `stake_delta` is signed: positive moves circulating into the staking
    ledger, negative releases it. `vest_release` moves vesting-locked
    tokens into circulation.
    """

    minted: Fraction = ZERO
    burned: Fraction = ZERO
    buyback: Fraction = ZERO
    stake_delta: Fraction = ZERO
    vest_release: Fraction = ZERO

    def __post_init__(self):
        for name in ("minted", "burned", "buyback", "stake_delta", "vest_release"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        for name in ("minted", "burned", "buyback", "vest_release"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class TruncationEvent:
    """A mint was clipped to fit under the cap."""

    epoch: int
    requested: Fraction
    minted: Fraction

    @property
    def truncated(self) -> Fraction:
        return self.requested - self.minted


@dataclass(frozen=True)
class StepResult:
    """New state plus the truncation event, if the cap clipped the mint."""

    state: SupplyState
    truncation: Optional[TruncationEvent] = None

    def __iter__(self):
        return iter((self.state, self.truncation))


@dataclass(frozen=True)
class SupplyPath:
    states: Tuple[SupplyState, ...]
    truncations: Tuple[TruncationEvent, ...] = ()

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, idx):
        return self.states[idx]


def step_supply(state: SupplyState, flows: EpochFlows, policy: SupplyPolicy) -> StepResult:
    """Advance one epoch under the policy.

    Buybacks use the burn variant: bought tokens leave supply permanently.
    Raises SupplyUnderflow for any negative ledger, ConstraintViolation when
    an inflationary policy sees minted <= burned.
    """
    if policy.inflationary_constraint and flows.minted <= flows.burned:
        raise ConstraintViolation(
            f"inflationary policy requires minted > burned, got {flows.minted} <= {flows.burned}"
        )
    if flows.burned + flows.buyback > state.circulating + flows.minted:
        raise SupplyUnderflow(
            "burn and buyback exceed circulating supply plus requested mint"
        )
    if flows.vest_release > state.vesting_locked:
        raise SupplyUnderflow("vesting release exceeds vesting-locked balance")
    if flows.stake_delta < -state.staked:
        raise SupplyUnderflow("unstake request exceeds staked balance")

    minted_effective = flows.minted
    truncation = None
    if policy.capped:
        headroom = policy.s_max - state.total + flows.burned + flows.buyback
        if minted_effective > headroom:
            minted_effective = headroom
            truncation = TruncationEvent(
                epoch=state.epoch + 1, requested=flows.minted, minted=minted_effective
            )

    circulating = (
        state.circulating
        + minted_effective
        - flows.burned
        - flows.buyback
        + flows.vest_release
        - flows.stake_delta
    )
    if circulating < 0:
        raise SupplyUnderflow("step would drive circulating supply negative")

    new_state = SupplyState(
        epoch=state.epoch + 1,
        circulating=circulating,
        staked=state.staked + flows.stake_delta,
        vesting_locked=state.vesting_locked - flows.vest_release,
        treasury_held=state.treasury_held,
        cumulative_minted=state.cumulative_minted + minted_effective,
        cumulative_burned=state.cumulative_burned + flows.burned + flows.buyback,
    )
    return StepResult(new_state, truncation)


def simulate_supply_path(
    initial: SupplyState, flows: Sequence[EpochFlows], policy: SupplyPolicy
) -> SupplyPath:
    """Fold step_supply over a flow schedule; errors carry the failing epoch."""
    states: List[SupplyState] = []
    truncations: List[TruncationEvent] = []
    current = initial
    for flow in flows:
        try:
            current, truncation = step_supply(current, flow, policy)
        except (SupplyUnderflow, ConstraintViolation) as exc:
            raise type(exc)(f"epoch {current.epoch + 1}: {exc}") from exc
        states.append(current)
        if truncation is not None:
            truncations.append(truncation)
    return SupplyPath(tuple(states), tuple(truncations))


@dataclass(frozen=True)
class VestingSchedule:
    """Linear release with an optional cliff.

    Nothing is released before `start_epoch + cliff_epochs`; at the cliff the
    amount accrued since start unlocks as one tranche, then release continues
    linearly until `start_epoch + duration_epochs`, when the total is out.
    """

    total: Fraction
    start_epoch: int = 0
    cliff_epochs: int = 0
    duration_epochs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "total", _q(self.total))
        if self.total < 0:
            raise ValueError("total must be non-negative")
        if self.duration_epochs < 1:
            raise ValueError("duration_epochs must be >= 1")
        if self.cliff_epochs < 0:
            raise ValueError("cliff_epochs must be non-negative")
        if self.cliff_epochs > self.duration_epochs:
            raise ValueError("cliff cannot exceed duration")

    def released(self, epoch: int) -> Fraction:
        return vesting_released(self, epoch)


def vesting_released(schedule: VestingSchedule, epoch: int) -> Fraction:
    """Cumulative amount released by the given epoch."""
    if epoch < 0:
        raise ValueError("epoch must be non-negative")
    if epoch < schedule.start_epoch + schedule.cliff_epochs:
        return ZERO
    if epoch >= schedule.start_epoch + schedule.duration_epochs:
        return schedule.total
    return schedule.total * Fraction(epoch - schedule.start_epoch, schedule.duration_epochs)


def apply_burn(state: SupplyState, amount: Numeric) -> SupplyState:
    """Remove tokens from circulation permanently."""
    amount = _q(amount)
    if amount < 0:
        raise ValueError("burn amount must be non-negative")
    if amount > state.circulating:
        raise SupplyUnderflow(f"cannot burn {amount} from circulating {state.circulating}")
    return replace(
        state,
        circulating=state.circulating - amount,
        cumulative_burned=state.cumulative_burned + amount,
    )


def apply_buyback(
    state: SupplyState,
    amount: Numeric,
    treasury: Numeric,
    price: Numeric = 1,
    burn_bought: bool = True,
) -> Tuple[SupplyState, Fraction]:
    """Buy tokens off the market with treasury funds.

    Default behavior destroys the bought tokens (burn variant); with
    `burn_bought=False` they move to the treasury ledger instead and still
    count toward a cap.
    """
    amount, treasury, price = _q(amount), _q(treasury), _q(price)
    if amount < 0:
        raise ValueError("buyback amount must be non-negative")
    cost = amount * price
    if cost > treasury:
        raise InsufficientTreasury(f"buyback costs {cost}, treasury holds {treasury}")
    if amount > state.circulating:
        raise SupplyUnderflow(f"cannot buy back {amount} from circulating {state.circulating}")
    if burn_bought:
        new_state = replace(
            state,
            circulating=state.circulating - amount,
            cumulative_burned=state.cumulative_burned + amount,
        )
    else:
        new_state = replace(
            state,
            circulating=state.circulating - amount,
            treasury_held=state.treasury_held + amount,
        )
    return new_state, treasury - cost


def stake(state: SupplyState, amount: Numeric) -> SupplyState:
    """Move tokens from circulating into the staking ledger."""
    amount = _q(amount)
    if amount < 0:
        raise ValueError("stake amount must be non-negative")
    if amount > state.circulating:
        raise SupplyUnderflow(f"cannot stake {amount} from circulating {state.circulating}")
    return replace(state, circulating=state.circulating - amount, staked=state.staked + amount)


def unstake(state: SupplyState, amount: Numeric) -> SupplyState:
    """Release staked tokens back into circulation."""
    amount = _q(amount)
    if amount < 0:
        raise ValueError("unstake amount must be non-negative")
    if amount > state.staked:
        raise SupplyUnderflow(f"cannot unstake {amount} from staked {state.staked}")
    return replace(state, circulating=state.circulating + amount, staked=state.staked - amount)


def load_flow_schedule(source) -> List[EpochFlows]:
    """Read a flow schedule CSV: `epoch,minted,burned,buyback,stake_delta`.

    Rows must be consecutive epochs starting at 1; missing numeric cells
    default to zero.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    reader = csv.DictReader(io.StringIO(text))
    required = {"epoch", "minted", "burned", "buyback", "stake_delta"}
    if reader.fieldnames is None or not required.issubset({f.strip() for f in reader.fieldnames}):
        raise ValueError("flow schedule header must be epoch,minted,burned,buyback,stake_delta")
    flows = []
    for i, row in enumerate(reader, start=1):
        if int(row["epoch"]) != i:
            raise ValueError(f"flow schedule epochs must be consecutive from 1, got {row['epoch']}")
        flows.append(
            EpochFlows(
                minted=_q(row["minted"] or 0),
                burned=_q(row["burned"] or 0),
                buyback=_q(row["buyback"] or 0),
                stake_delta=_q(row["stake_delta"] or 0),
            )
        )
    return flows
