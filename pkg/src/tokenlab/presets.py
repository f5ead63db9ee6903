"""Canned adversarial scenarios, one per classic failure mode.

Each preset is a fully specified, seeded scenario that can be pointed at
any economy spec: governance capture by a whale, a liquidity-shock sell-off
cascade, Sybil identity splitting against the voting mechanism, and a
vesting-cliff unlock. Defaults pick the bundled spec where the failure mode
is most visible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional

from .economy import EconomySpec, load_fixture
from .errors import UnknownPreset
from .simulate import (
    AgentGroup,
    BalanceModel,
    BehaviorProfile,
    PriceModel,
    ProposalSchedule,
    Scenario,
    Shock,
    ShockKind,
    Stance,
)

PRESET_EPOCHS = 100
PRESET_SEED = 20_26

__all__ = ["PRESETS", "preset", "preset_descriptions"]


def _capture(spec: Optional[EconomySpec]) -> Scenario:
    spec = spec or load_fixture("uniswap")
    return Scenario(
        name="capture",
        spec=spec,
        epochs=PRESET_EPOCHS,
        seed=PRESET_SEED,
        agents=(
            AgentGroup(
                name="community",
                category="community",
                population=999,
                balance=BalanceModel(kind="pareto", value=Fraction(100), alpha=1.3),
                behavior=BehaviorProfile(kind="governance_participant", vote_probability=0.6),
                stance=Stance.ALTERNATE,
            ),
            AgentGroup(
                name="whale",
                category="investors",
                population=1,
                balance=BalanceModel(kind="fixed", value=Fraction(5_000)),
                behavior=BehaviorProfile(kind="governance_participant", vote_probability=1.0),
                cluster="whale",
                stance=Stance.FOR,
            ),
        ),
        shocks=(
            Shock(
                epoch=50,
                kind=ShockKind.WHALE_ACCUMULATION,
                magnitude=Fraction(11, 20),  # push one cluster past half
                cluster="whale",
            ),
        ),
        proposals=(
            ProposalSchedule(epoch=25, id="pre-shock", conviction_threshold=Fraction(100)),
            ProposalSchedule(epoch=75, id="post-shock", conviction_threshold=Fraction(100)),
        ),
        track_cluster="whale",
    )


def _sell_off_cascade(spec: Optional[EconomySpec]) -> Scenario:
    spec = spec or load_fixture("currynomics")
    return Scenario(
        name="sell_off_cascade",
        spec=spec,
        epochs=PRESET_EPOCHS,
        seed=PRESET_SEED,
        agents=(
            AgentGroup(
                name="skittish",
                category="users",
                population=600,
                balance=BalanceModel(kind="pareto", value=Fraction(50), alpha=1.5),
                behavior=BehaviorProfile(
                    kind="threshold_seller",
                    sell_fraction=Fraction(1, 4),
                    drop_threshold=Fraction(1, 10),
                ),
            ),
            AgentGroup(
                name="stoic",
                category="users",
                population=399,
                balance=BalanceModel(kind="pareto", value=Fraction(50), alpha=1.5),
                behavior=BehaviorProfile(kind="hold"),
            ),
            AgentGroup(
                name="whale",
                category="investors",
                population=1,
                balance=BalanceModel(kind="fixed", value=Fraction(40_000)),
                behavior=BehaviorProfile(kind="hold"),
                cluster="whale",
            ),
        ),
        shocks=(
            Shock(
                epoch=30,
                kind=ShockKind.SELL_OFF,
                magnitude=Fraction(3, 5),
                cluster="whale",
            ),
        ),
        price_model=PriceModel(kind="linear_impact", coefficient=Fraction(6, 5)),
        track_cluster="whale",
    )


def _sybil(spec: Optional[EconomySpec]) -> Scenario:
    spec = spec or load_fixture("quadratic_demo")
    return Scenario(
        name="sybil",
        spec=spec,
        epochs=PRESET_EPOCHS,
        seed=PRESET_SEED,
        agents=(
            AgentGroup(
                name="honest",
                category="community",
                population=999,
                balance=BalanceModel(kind="fixed", value=Fraction(100)),
                behavior=BehaviorProfile(kind="governance_participant", vote_probability=1.0),
                stance=Stance.ALTERNATE,
            ),
            AgentGroup(
                name="attacker",
                category="community",
                population=1,
                balance=BalanceModel(kind="fixed", value=Fraction(10_000)),
                behavior=BehaviorProfile(kind="governance_participant", vote_probability=1.0),
                cluster="attacker",
                stance=Stance.FOR,
            ),
        ),
        # one extra identity per epoch: k = epoch + 1 identities
        shocks=tuple(
            Shock(
                epoch=e,
                kind=ShockKind.SYBIL_SPLIT,
                magnitude=Fraction(e + 1),
                cluster="attacker",
            )
            for e in range(1, PRESET_EPOCHS + 1)
        ),
        proposals=tuple(
            ProposalSchedule(epoch=e, id=f"vote-{e}", threshold=Fraction(1, 2))
            for e in range(10, PRESET_EPOCHS, 10)
        ),
        track_cluster="attacker",
    )


def _unlock_cliff(spec: Optional[EconomySpec]) -> Scenario:
    spec = spec or load_fixture("currynomics")
    token = None
    for candidate in spec.tokenomics.tokens:
        if any(a.vesting is not None for a in candidate.distribution):
            token = candidate.name
            break
    return Scenario(
        name="unlock_cliff",
        spec=spec,
        epochs=PRESET_EPOCHS,
        seed=PRESET_SEED,
        agents=(
            AgentGroup(
                name="holders",
                category="users",
                population=900,
                balance=BalanceModel(kind="pareto", value=Fraction(100), alpha=1.4),
                behavior=BehaviorProfile(kind="hold"),
            ),
            AgentGroup(
                name="insiders",
                category="investors",
                population=100,
                balance=BalanceModel(kind="fixed", value=Fraction(1_000)),
                behavior=BehaviorProfile(kind="hold"),
            ),
        ),
        token=token,
    )


_BUILDERS: Dict[str, callable] = {
    "capture": _capture,
    "sell_off_cascade": _sell_off_cascade,
    "sybil": _sybil,
    "unlock_cliff": _unlock_cliff,
}

PRESETS = tuple(sorted(_BUILDERS))


def preset(name: str, spec: Optional[EconomySpec] = None) -> Scenario:
    """Build a canned scenario; `spec` overrides the preset's default spec."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownPreset(name, PRESETS) from None
    return builder(spec)


def preset_descriptions() -> Dict[str, str]:
    return {
        "capture": "a whale cluster accumulates past half of all voting power",
        "sell_off_cascade": "a whale dump triggers threshold sellers into a price spiral",
        "sybil": "an attacker splits one identity into ever more identities each epoch",
        "unlock_cliff": "a vesting cliff releases an insider tranche into supply",
    }
