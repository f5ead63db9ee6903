"""Discrete-epoch stress simulator for a token economy spec.

A scenario binds an economy spec to a population of agents, a shock
schedule, and an optional price-impact model, then steps epochs in a fixed
order: agent actions, supply step, shocks, governance, metrics. Every
random draw comes from one seeded generator, so a (scenario, seed) pair
reproduces bit-identical reports.

Agent behaviors are deliberately minimal: hold, threshold sellers (sell a
fraction once the price proxy drops far enough below its reference, which
is what lets cascades propagate), and governance participants (vote with a
fixed probability). The price proxy exists only so sell-offs are
expressible; nothing here predicts real market outcomes.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import yaml

from .economy import EconomySpec, TokenPolicy, load_fixture, parse_spec
from .errors import ScenarioError
from .metrics import ConcentrationReport, HolderDistribution, concentration_report, nakamoto
from .quantities import as_fraction, canonical_number, rounded, rounded_string
from .supply import EpochFlows, SupplyPolicy, SupplyState, VestingSchedule, step_supply
from .voting import (
    Ballot,
    MechanismFamily,
    Proposal,
    ProposalKind,
    Voter,
    VoteChoice,
    VotingMechanism,
    tally,
    voting_power,
)

MARKET_ENTITY = "market"

__all__ = [
    "AgentGroup",
    "BalanceModel",
    "BehaviorProfile",
    "PriceModel",
    "ProposalSchedule",
    "Scenario",
    "ScenarioReport",
    "Shock",
    "ShockKind",
    "run_scenario",
    "scenario_from_document",
    "report_summary",
    "report_to_csv",
]


class ShockKind(str, Enum):
    SELL_OFF = "sell_off"
    WHALE_ACCUMULATION = "whale_accumulation"
    SYBIL_SPLIT = "sybil_split"
    UNLOCK_EVENT = "unlock_event"


class Stance(str, Enum):
    FOR = "for"
    AGAINST = "against"
    ALTERNATE = "alternate"


@dataclass(frozen=True)
class BalanceModel:
    """Initial balance draw for one agent group."""

    kind: str  # fixed | uniform | pareto
    value: Fraction = Fraction(100)
    low: Fraction = Fraction(1)
    high: Fraction = Fraction(100)
    alpha: float = 1.2

    def draw(self, rng: random.Random) -> Fraction:
        if self.kind == "fixed":
            return self.value
        if self.kind == "uniform":
            span = float(self.high - self.low)
            return as_fraction(float(self.low) + rng.random() * span)
        if self.kind == "pareto":
            return as_fraction(float(self.value) * rng.paretovariate(self.alpha))
        raise ScenarioError(f"unknown balance model {self.kind!r}")


@dataclass(frozen=True)
class BehaviorProfile:
    """hold | threshold_seller | governance_participant."""

    kind: str = "hold"
    sell_fraction: Fraction = Fraction(1, 5)
    drop_threshold: Fraction = Fraction(1, 10)
    vote_probability: float = 1.0

    def __post_init__(self):
        if self.kind not in ("hold", "threshold_seller", "governance_participant"):
            raise ScenarioError(f"unknown behavior {self.kind!r}")
        if not 0 <= self.sell_fraction <= 1:
            raise ScenarioError("sell_fraction must lie in [0, 1]")
        if not 0 <= self.vote_probability <= 1:
            raise ScenarioError("vote_probability must lie in [0, 1]")


@dataclass(frozen=True)
class AgentGroup:
    name: str
    category: str
    population: int
    balance: BalanceModel
    behavior: BehaviorProfile = field(default_factory=BehaviorProfile)
    cluster: Optional[str] = None  # shared identity cluster (coordinated bloc)
    lock_fraction: Fraction = Fraction(1)
    stance: Stance = Stance.ALTERNATE

    def __post_init__(self):
        if self.population < 1:
            raise ScenarioError(f"group {self.name!r} population must be >= 1")
        if not 0 <= self.lock_fraction <= 1:
            raise ScenarioError("lock_fraction must lie in [0, 1]")


@dataclass(frozen=True)
class Shock:
    epoch: int
    kind: ShockKind
    magnitude: Fraction
    cluster: Optional[str] = None


@dataclass(frozen=True)
class PriceModel:
    kind: str = "none"  # none | linear_impact
    coefficient: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in ("none", "linear_impact"):
            raise ScenarioError(f"unknown price model {self.kind!r}")


@dataclass(frozen=True)
class ProposalSchedule:
    epoch: int
    id: str
    kind: ProposalKind = ProposalKind.TREASURY
    threshold: Fraction = Fraction(1, 2)
    conviction_threshold: Optional[Fraction] = None


@dataclass(frozen=True)
class Scenario:
    name: str
    spec: EconomySpec
    epochs: int
    seed: int
    agents: Tuple[AgentGroup, ...]
    shocks: Tuple[Shock, ...] = ()
    proposals: Tuple[ProposalSchedule, ...] = ()
    price_model: PriceModel = field(default_factory=PriceModel)
    reference_price: Fraction = Fraction(1)
    token: Optional[str] = None
    track_cluster: Optional[str] = None

    def __post_init__(self):
        if self.epochs < 1:
            raise ScenarioError("epochs must be >= 1")
        if not self.agents:
            raise ScenarioError("scenario needs at least one agent group")
        clusters = {g.cluster for g in self.agents if g.cluster}
        for shock in self.shocks:
            if not 1 <= shock.epoch <= self.epochs:
                raise ScenarioError(f"shock at epoch {shock.epoch} outside horizon")
            if shock.kind in (ShockKind.WHALE_ACCUMULATION, ShockKind.SYBIL_SPLIT):
                if shock.cluster is None or shock.cluster not in clusters:
                    raise ScenarioError(
                        f"{shock.kind.value} shock needs a cluster from {sorted(clusters)}"
                    )
            if shock.kind is ShockKind.SYBIL_SPLIT and shock.magnitude < 1:
                raise ScenarioError("sybil_split magnitude is the identity count, >= 1")
        for proposal in self.proposals:
            if not 1 <= proposal.epoch <= self.epochs:
                raise ScenarioError(f"proposal at epoch {proposal.epoch} outside horizon")

    def token_policy(self) -> TokenPolicy:
        if self.token is not None:
            return self.spec.token(self.token)
        return self.spec.tokenomics.tokens[0]


@dataclass(frozen=True)
class TallyOutcome:
    epoch: int
    proposal_id: str
    passed: bool
    for_power: Fraction
    against_power: Fraction

    def to_dict(self) -> dict:
        return {
            "epoch": self.epoch,
            "proposal": self.proposal_id,
            "passed": self.passed,
            "for": rounded(self.for_power, 6),
            "against": rounded(self.against_power, 6),
        }


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    supply: SupplyState
    price: Fraction
    balances: HolderDistribution
    balance_metrics: ConcentrationReport
    voting_power: HolderDistribution
    voting_metrics: ConcentrationReport
    capture: bool
    tracked_share: Optional[Fraction]
    outcomes: Tuple[TallyOutcome, ...]
    events: Tuple[str, ...]

    def to_dict(self, include_distributions: bool = True) -> dict:
        out = {
            "epoch": self.epoch,
            "supply": self.supply.to_dict(),
            "price": rounded_string(self.price, 6),
            "balance_metrics": self.balance_metrics.to_dict(),
            "voting_metrics": self.voting_metrics.to_dict(),
            "capture": self.capture,
            "outcomes": [o.to_dict() for o in self.outcomes],
            "events": list(self.events),
        }
        if self.tracked_share is not None:
            out["tracked_share"] = rounded(self.tracked_share, 6)
        if include_distributions:
            out["balances"] = [
                {"entity": e, "weight": canonical_number(w)} for e, w in self.balances.entries
            ]
            out["voting_power"] = [
                {"entity": e, "weight": canonical_number(w)} for e, w in self.voting_power.entries
            ]
        return out


@dataclass(frozen=True)
class ScenarioSummary:
    min_nakamoto_voting: int
    max_nakamoto_voting: int
    max_drawdown: Fraction
    capture: bool
    capture_epochs: Tuple[int, ...]
    proposals_passed: int
    proposals_failed: int
    truncations: int
    final_supply: Fraction

    def to_dict(self) -> dict:
        return {
            "min_nakamoto_voting": self.min_nakamoto_voting,
            "max_nakamoto_voting": self.max_nakamoto_voting,
            "max_drawdown": rounded(self.max_drawdown, 6),
            "capture": self.capture,
            "capture_epochs": list(self.capture_epochs),
            "proposals_passed": self.proposals_passed,
            "proposals_failed": self.proposals_failed,
            "truncations": self.truncations,
            "final_supply": rounded_string(self.final_supply, 6),
        }


@dataclass(frozen=True)
class ScenarioReport:
    scenario: str
    spec_name: str
    epochs: int
    seed: int
    records: Tuple[EpochRecord, ...]
    summary: ScenarioSummary
    events: Tuple[str, ...]

    def to_dict(self, include_distributions: bool = True) -> dict:
        return {
            "scenario": self.scenario,
            "spec": self.spec_name,
            "epochs": self.epochs,
            "seed": self.seed,
            "summary": self.summary.to_dict(),
            "records": [r.to_dict(include_distributions) for r in self.records],
            "events": list(self.events),
        }

    def to_json(self, include_distributions: bool = True) -> str:
        return json.dumps(
            self.to_dict(include_distributions), sort_keys=True, indent=2
        ) + "\n"


class _Agent:
    """Mutable runtime agent record."""

    __slots__ = ("id", "group", "cluster", "balance", "credits", "lock_remaining",
                 "lock_max", "reputation", "behavior", "stance_for")

    def __init__(self, id, group: AgentGroup, balance: Fraction, lock_max: int,
                 stance_for: bool):
        self.id = id
        self.group = group
        self.cluster = group.cluster if group.cluster else id
        self.balance = balance
        self.credits = balance
        self.lock_max = lock_max
        self.lock_remaining = round(float(group.lock_fraction) * lock_max)
        self.reputation = Fraction(1)
        self.behavior = group.behavior
        self.stance_for = stance_for

    def to_voter(self) -> Voter:
        return Voter(
            id=self.id,
            balance=self.balance,
            lock_remaining=self.lock_remaining,
            lock_max=self.lock_max,
            reputation=self.reputation,
            credits=self.credits,
            identity_cluster=self.cluster,
        )


@dataclass
class _OpenConviction:
    schedule: ProposalSchedule
    conviction: Fraction = Fraction(0)
    passed_epoch: Optional[int] = None


def _mechanism_from_spec(spec: EconomySpec) -> VotingMechanism:
    choice = spec.governance.chosen_mechanism
    kwargs = {}
    if choice.alpha is not None:
        kwargs["alpha"] = choice.alpha
    if choice.horizon is not None:
        kwargs["horizon"] = choice.horizon
    if choice.lock_max is not None:
        kwargs["lock_max"] = choice.lock_max
    if choice.credit_budget is not None:
        kwargs["credit_budget"] = choice.credit_budget
    if choice.stake_scale is not None:
        kwargs["stake_scale"] = choice.stake_scale
    return VotingMechanism(family=choice.family, **kwargs)


def _vesting_schedules(token: TokenPolicy, allocation_base: Fraction) -> List[VestingSchedule]:
    schedules = []
    for alloc in token.distribution:
        if alloc.vesting is not None:
            schedules.append(
                VestingSchedule(
                    total=alloc.share * allocation_base,
                    start_epoch=alloc.vesting.start_epoch,
                    cliff_epochs=alloc.vesting.cliff_epochs,
                    duration_epochs=alloc.vesting.duration_epochs,
                )
            )
    return schedules


def _build_agents(scenario: Scenario, rng: random.Random, lock_max: int) -> List[_Agent]:
    agents: List[_Agent] = []
    for group in scenario.agents:
        for i in range(group.population):
            balance = group.balance.draw(rng)
            if group.stance is Stance.FOR:
                stance_for = True
            elif group.stance is Stance.AGAINST:
                stance_for = False
            else:
                stance_for = i % 2 == 0
            agents.append(
                _Agent(
                    id=f"{group.name}-{i}",
                    group=group,
                    balance=balance,
                    lock_max=lock_max,
                    stance_for=stance_for,
                )
            )
    return agents


def _sybil_split_agents(agents: List[_Agent], cluster: str, k: int) -> List[_Agent]:
    members = [a for a in agents if a.cluster == cluster]
    if not members:
        raise ScenarioError(f"no agents in cluster {cluster!r}")
    rep = max(members, key=lambda a: (a.balance, a.id))
    base_id = rep.id.split("#", 1)[0]
    total_balance = sum((a.balance for a in members), Fraction(0))
    total_credits = sum((a.credits for a in members), Fraction(0))
    identities: List[_Agent] = []
    for i in range(k):
        clone = _Agent(
            id=base_id if i == 0 else f"{base_id}#s{i}",
            group=rep.group,
            balance=total_balance / k,
            lock_max=rep.lock_max,
            stance_for=rep.stance_for,
        )
        clone.cluster = cluster
        clone.credits = total_credits / k
        clone.lock_remaining = rep.lock_remaining
        clone.reputation = rep.reputation if i == 0 else Fraction(0)
        identities.append(clone)
    out: List[_Agent] = []
    inserted = False
    for agent in agents:
        if agent.cluster == cluster:
            if not inserted:
                out.extend(identities)
                inserted = True
        else:
            out.append(agent)
    return out


def run_scenario(
    scenario: Scenario,
    on_epoch: Optional[Callable[[dict], None]] = None,
) -> ScenarioReport:
    """Run the scenario to completion; deterministic for a fixed seed.

    `on_epoch` receives a compact per-epoch summary dict as each epoch
    completes, which is what the streaming API forwards.
    """
    spec = scenario.spec
    token = scenario.token_policy()
    mechanism = _mechanism_from_spec(spec)
    rng = random.Random(scenario.seed)

    lock_max = spec.governance.chosen_mechanism.lock_max or 4
    agents = _build_agents(scenario, rng, lock_max)
    market_balance = Fraction(0)

    agent_total = sum((a.balance for a in agents), Fraction(0))
    allocation_base = (
        token.supply.s_max
        if token.supply.kind == "capped"
        else (token.initial_supply if token.initial_supply else agent_total)
    )
    schedules = _vesting_schedules(token, allocation_base)
    vesting_locked = sum((s.total for s in schedules), Fraction(0))

    policy = (
        SupplyPolicy.capped_at(token.supply.s_max)
        if token.supply.kind == "capped"
        else SupplyPolicy.uncapped()
    )
    supply = SupplyState(
        epoch=0, circulating=agent_total, vesting_locked=vesting_locked
    )
    if policy.capped and supply.total > policy.s_max:
        raise ScenarioError(
            f"initial holdings {supply.total} exceed the declared cap {policy.s_max}"
        )

    emissions = {step.epoch: step for step in token.emission_schedule}
    shocks_by_epoch: Dict[int, List[Shock]] = {}
    for shock in scenario.shocks:
        shocks_by_epoch.setdefault(shock.epoch, []).append(shock)
    proposals_by_epoch: Dict[int, List[ProposalSchedule]] = {}
    for sched in scenario.proposals:
        proposals_by_epoch.setdefault(sched.epoch, []).append(sched)

    conviction_mode = mechanism.family is MechanismFamily.CONVICTION
    open_convictions: List[_OpenConviction] = []

    price = scenario.reference_price
    peak_price = price
    max_drawdown = Fraction(0)

    records: List[EpochRecord] = []
    all_events: List[str] = []
    all_outcomes: List[TallyOutcome] = []
    truncation_count = 0

    def beneficiaries() -> List[_Agent]:
        invested = [a for a in agents if a.group.category == "investors"]
        return invested

    for epoch in range(1, scenario.epochs + 1):
        events: List[str] = []
        sold_this_epoch = Fraction(0)
        bought_this_epoch = Fraction(0)

        # 1. agent actions
        for agent in agents:
            if agent.behavior.kind == "threshold_seller" and agent.balance > 0:
                floor = scenario.reference_price * (1 - agent.behavior.drop_threshold)
                if price < floor:
                    sold = agent.balance * agent.behavior.sell_fraction
                    agent.balance -= sold
                    market_balance += sold
                    sold_this_epoch += sold

        # 2. supply step
        emission = emissions.get(epoch)
        vest_release = sum(
            (s.released(epoch) - s.released(epoch - 1) for s in schedules), Fraction(0)
        )
        flows = EpochFlows(
            minted=emission.minted if emission else Fraction(0),
            burned=emission.burned if emission else Fraction(0),
            vest_release=vest_release,
        )
        try:
            supply, truncation = step_supply(supply, flows, policy)
        except Exception as exc:  # attach epoch context
            raise ScenarioError(str(exc), epoch=epoch) from exc
        if truncation is not None:
            truncation_count += 1
            events.append(
                f"mint truncated: requested {truncation.requested}, "
                f"minted {truncation.minted}"
            )
        if flows.minted:
            market_balance += flows.minted - (
                truncation.truncated if truncation else Fraction(0)
            )
        if flows.burned:
            if market_balance < flows.burned:
                raise ScenarioError("scheduled burn exceeds market pool", epoch=epoch)
            market_balance -= flows.burned
        if vest_release:
            takers = beneficiaries()
            if takers:
                take_total = sum((a.balance for a in takers), Fraction(0))
                if take_total > 0:
                    for a in takers:
                        a.balance += vest_release * (a.balance / take_total)
                else:
                    each = vest_release / len(takers)
                    for a in takers:
                        a.balance += each
            else:
                market_balance += vest_release
            events.append(f"vesting released {canonical_number(vest_release)}")

        # 3. shocks
        for shock in shocks_by_epoch.get(epoch, []):
            if shock.kind is ShockKind.SELL_OFF:
                targets = [
                    a for a in agents
                    if (shock.cluster is None or a.cluster == shock.cluster) and a.balance > 0
                ]
                for agent in targets:
                    sold = agent.balance * shock.magnitude
                    agent.balance -= sold
                    market_balance += sold
                    sold_this_epoch += sold
                events.append(
                    f"sell_off shock: {len(targets)} holders sold "
                    f"{canonical_number(shock.magnitude)} of holdings"
                )
            elif shock.kind is ShockKind.WHALE_ACCUMULATION:
                whales = [a for a in agents if a.cluster == shock.cluster]
                others = [a for a in agents if a.cluster != shock.cluster]
                total = sum((a.balance for a in agents), Fraction(0))
                whale_total = sum((a.balance for a in whales), Fraction(0))
                target = shock.magnitude * total
                need = target - whale_total
                other_total = sum((a.balance for a in others), Fraction(0)) + market_balance
                if need > 0 and other_total > 0:
                    factor = need / other_total
                    for agent in others:
                        agent.balance -= agent.balance * factor
                    market_balance -= market_balance * factor
                    per_whale = need / len(whales)
                    for whale in whales:
                        whale.balance += per_whale
                    bought_this_epoch += need
                    events.append(
                        f"whale_accumulation shock: cluster {shock.cluster!r} "
                        f"raised to {canonical_number(shock.magnitude)} of holdings"
                    )
            elif shock.kind is ShockKind.SYBIL_SPLIT:
                k = int(shock.magnitude)
                agents = _sybil_split_agents(agents, shock.cluster, k)
                events.append(
                    f"sybil_split shock: cluster {shock.cluster!r} now {k} identities"
                )
            elif shock.kind is ShockKind.UNLOCK_EVENT:
                amount = min(shock.magnitude, supply.vesting_locked)
                if amount > 0:
                    supply = replace(
                        supply,
                        circulating=supply.circulating + amount,
                        vesting_locked=supply.vesting_locked - amount,
                    )
                    market_balance += amount
                    events.append(f"unlock_event: {canonical_number(amount)} released")

        # 4. governance
        outcomes: List[TallyOutcome] = []
        if conviction_mode:
            for sched in proposals_by_epoch.get(epoch, []):
                open_convictions.append(_OpenConviction(schedule=sched))
            for open_prop in open_convictions:
                if open_prop.passed_epoch is not None:
                    continue
                support = Fraction(0)
                for agent in agents:
                    if agent.behavior.kind != "governance_participant" or not agent.stance_for:
                        continue
                    if rng.random() < agent.behavior.vote_probability:
                        support += agent.balance
                open_prop.conviction = mechanism.alpha * open_prop.conviction + support
                threshold = open_prop.schedule.conviction_threshold
                if threshold is not None and open_prop.conviction >= threshold:
                    open_prop.passed_epoch = epoch
                    outcome = TallyOutcome(
                        epoch=epoch,
                        proposal_id=open_prop.schedule.id,
                        passed=True,
                        for_power=open_prop.conviction,
                        against_power=Fraction(0),
                    )
                    outcomes.append(outcome)
                    events.append(
                        f"proposal {open_prop.schedule.id!r} passed by conviction"
                    )
        else:
            for sched in proposals_by_epoch.get(epoch, []):
                proposal = Proposal(
                    id=sched.id,
                    kind=sched.kind,
                    threshold=sched.threshold,
                    conviction_threshold=sched.conviction_threshold,
                )
                ballots = []
                for agent in agents:
                    if agent.behavior.kind != "governance_participant":
                        continue
                    if rng.random() < agent.behavior.vote_probability:
                        choice = VoteChoice.FOR if agent.stance_for else VoteChoice.AGAINST
                        ballots.append(Ballot(agent.to_voter(), choice))
                result = tally(proposal, ballots, mechanism)
                outcome = TallyOutcome(
                    epoch=epoch,
                    proposal_id=sched.id,
                    passed=result.passed,
                    for_power=result.for_power,
                    against_power=result.against_power,
                )
                outcomes.append(outcome)
                events.append(
                    f"proposal {sched.id!r} {'passed' if result.passed else 'failed'}"
                )
        all_outcomes.extend(outcomes)

        # 5. metrics and price update
        balance_entries = [(a.id, a.balance) for a in agents]
        balance_entries.append((MARKET_ENTITY, market_balance))
        balances = HolderDistribution(tuple(balance_entries))
        balance_metrics = concentration_report(balances)

        # power functions only read balance/lock/credit fields, which the
        # runtime agent record carries directly
        power_entries = [(a.id, as_fraction(voting_power(a, mechanism))) for a in agents]
        power_dist = HolderDistribution(tuple(power_entries))
        voting_metrics = concentration_report(power_dist)

        cluster_power: Dict[str, Fraction] = {}
        for agent, (_, power) in zip(agents, power_entries):
            cluster_power[agent.cluster] = cluster_power.get(agent.cluster, Fraction(0)) + power
        cluster_weights = [cluster_power[c] for c in sorted(cluster_power)]
        total_power = sum(cluster_weights, Fraction(0))
        capture = total_power > 0 and nakamoto(cluster_weights) == 1
        tracked_share = None
        if scenario.track_cluster is not None and total_power > 0:
            tracked_share = (
                cluster_power.get(scenario.track_cluster, Fraction(0)) / total_power
            )

        if scenario.price_model.kind == "linear_impact":
            pool = sum((a.balance for a in agents), Fraction(0)) + market_balance
            if pool > 0:
                net_demand = (bought_this_epoch - sold_this_epoch) / pool
                price = price * (1 + scenario.price_model.coefficient * net_demand)
                if price < 0:
                    price = Fraction(0)
        peak_price = max(peak_price, price)
        if peak_price > 0:
            max_drawdown = max(max_drawdown, (peak_price - price) / peak_price)

        if capture:
            events.append("capture: one identity cluster controls a strict majority")

        record = EpochRecord(
            epoch=epoch,
            supply=supply,
            price=price,
            balances=balances,
            balance_metrics=balance_metrics,
            voting_power=power_dist,
            voting_metrics=voting_metrics,
            capture=capture,
            tracked_share=tracked_share,
            outcomes=tuple(outcomes),
            events=tuple(events),
        )
        records.append(record)
        all_events.extend(f"epoch {epoch}: {e}" for e in events)
        if on_epoch is not None:
            on_epoch(
                {
                    "epoch": epoch,
                    "circulating": rounded_string(supply.circulating, 6),
                    "price": rounded_string(price, 6),
                    "gini_voting": rounded(voting_metrics.gini, 6),
                    "nakamoto_voting": voting_metrics.nakamoto,
                    "capture": capture,
                    "events": list(events),
                }
            )

    capture_epochs = tuple(r.epoch for r in records if r.capture)
    summary = ScenarioSummary(
        min_nakamoto_voting=min(r.voting_metrics.nakamoto for r in records),
        max_nakamoto_voting=max(r.voting_metrics.nakamoto for r in records),
        max_drawdown=max_drawdown,
        capture=bool(capture_epochs),
        capture_epochs=capture_epochs,
        proposals_passed=sum(1 for o in all_outcomes if o.passed),
        proposals_failed=sum(1 for o in all_outcomes if not o.passed),
        truncations=truncation_count,
        final_supply=records[-1].supply.circulating,
    )
    return ScenarioReport(
        scenario=scenario.name,
        spec_name=spec.name,
        epochs=scenario.epochs,
        seed=scenario.seed,
        records=tuple(records),
        summary=summary,
        events=tuple(all_events),
    )


def report_summary(report: ScenarioReport) -> dict:
    """Stable, diff-friendly digest of a run: summary plus per-epoch metrics."""
    return {
        "scenario": report.scenario,
        "spec": report.spec_name,
        "epochs": report.epochs,
        "seed": report.seed,
        "summary": report.summary.to_dict(),
        "per_epoch": [
            {
                "epoch": r.epoch,
                "circulating": rounded_string(r.supply.circulating, 6),
                "price": rounded_string(r.price, 6),
                "gini_balances": rounded(r.balance_metrics.gini, 6),
                "nakamoto_balances": r.balance_metrics.nakamoto,
                "gini_voting": rounded(r.voting_metrics.gini, 6),
                "nakamoto_voting": r.voting_metrics.nakamoto,
                "capture": r.capture,
                **(
                    {"tracked_share": rounded(r.tracked_share, 6)}
                    if r.tracked_share is not None
                    else {}
                ),
            }
            for r in report.records
        ],
        "events": list(report.events),
    }


def report_to_csv(report: ScenarioReport) -> str:
    """Per-epoch metric table for plotting."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["epoch", "circulating", "staked", "vesting_locked", "price",
         "gini_balances", "nakamoto_balances", "gini_voting", "nakamoto_voting",
         "capture", "tracked_share"]
    )
    for r in report.records:
        writer.writerow(
            [
                r.epoch,
                str(r.supply.circulating),
                str(r.supply.staked),
                str(r.supply.vesting_locked),
                rounded_string(r.price, 6),
                rounded(r.balance_metrics.gini, 6),
                r.balance_metrics.nakamoto,
                rounded(r.voting_metrics.gini, 6),
                r.voting_metrics.nakamoto,
                int(r.capture),
                rounded(r.tracked_share, 6) if r.tracked_share is not None else "",
            ]
        )
    return buf.getvalue()


# --- scenario documents --------------------------------------------------------


def _parse_balance(raw: dict) -> BalanceModel:
    kind = raw.get("kind", "fixed")
    return BalanceModel(
        kind=kind,
        value=as_fraction(raw.get("value", 100)),
        low=as_fraction(raw.get("low", 1)),
        high=as_fraction(raw.get("high", 100)),
        alpha=float(raw.get("alpha", 1.2)),
    )


def _parse_behavior(raw: dict) -> BehaviorProfile:
    return BehaviorProfile(
        kind=raw.get("kind", "hold"),
        sell_fraction=as_fraction(raw.get("sell_fraction", "0.2")),
        drop_threshold=as_fraction(raw.get("drop_threshold", "0.1")),
        vote_probability=float(raw.get("vote_probability", 1.0)),
    )


def scenario_from_document(document, spec_override: Optional[EconomySpec] = None) -> Scenario:
    """Build a scenario from a YAML/JSON text or mapping.

    The `spec` field may be a bundled fixture name or an inline spec
    document; `spec_override` replaces it entirely when given.
    """
    if isinstance(document, (str, bytes)):
        document = yaml.safe_load(document)
    if not isinstance(document, dict):
        raise ScenarioError("scenario document must be a mapping")

    if spec_override is not None:
        spec = spec_override
    else:
        raw_spec = document.get("spec")
        if isinstance(raw_spec, str):
            spec = load_fixture(raw_spec)
        elif isinstance(raw_spec, dict):
            spec = parse_spec(raw_spec)
        else:
            raise ScenarioError("scenario needs a spec: fixture name or inline document")

    groups = []
    for raw in document.get("agents", []):
        groups.append(
            AgentGroup(
                name=raw["name"],
                category=raw.get("category", "users"),
                population=int(raw.get("population", 1)),
                balance=_parse_balance(raw.get("balance", {})),
                behavior=_parse_behavior(raw.get("behavior", {})),
                cluster=raw.get("cluster"),
                lock_fraction=as_fraction(raw.get("lock_fraction", 1)),
                stance=Stance(raw.get("stance", "alternate")),
            )
        )

    shocks = []
    for raw in document.get("shocks", []):
        shocks.append(
            Shock(
                epoch=int(raw["epoch"]),
                kind=ShockKind(raw["kind"]),
                magnitude=as_fraction(raw["magnitude"]),
                cluster=raw.get("cluster"),
            )
        )

    proposals = []
    for raw in document.get("proposals", []):
        proposals.append(
            ProposalSchedule(
                epoch=int(raw["epoch"]),
                id=str(raw.get("id", f"p{raw['epoch']}")),
                kind=ProposalKind(raw.get("kind", "treasury")),
                threshold=as_fraction(raw.get("threshold", "0.5")),
                conviction_threshold=(
                    as_fraction(raw["conviction_threshold"])
                    if "conviction_threshold" in raw
                    else None
                ),
            )
        )

    raw_price = document.get("price_model", {})
    price_model = PriceModel(
        kind=raw_price.get("kind", "none"),
        coefficient=as_fraction(raw_price.get("coefficient", 1)),
    )

    return Scenario(
        name=str(document.get("name", "scenario")),
        spec=spec,
        epochs=int(document.get("epochs", 10)),
        seed=int(document.get("seed", 0)),
        agents=tuple(groups),
        shocks=tuple(shocks),
        proposals=tuple(proposals),
        price_model=price_model,
        reference_price=as_fraction(document.get("reference_price", 1)),
        token=document.get("token"),
        track_cluster=document.get("track_cluster"),
    )
