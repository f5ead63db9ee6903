"""Voting mechanism families, tallies, and mechanism selection.

Implements the four mechanism families used in token governance — balance
voting (1-token-1-vote), time-weighted voting (conviction and vote-escrow
variants), reputation-weighted voting, and quadratic voting — plus the
property matrix that scores each family against the desired governance
properties and a constraint recommender over it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import yaml

from .errors import (
    BudgetExceeded,
    DuplicateVote,
    InvalidDecay,
    UnknownCluster,
    UnknownProperty,
)
from .quantities import Numeric, as_fraction

__all__ = [
    "MechanismFamily",
    "VoteChoice",
    "ProposalKind",
    "Voter",
    "Proposal",
    "VotingMechanism",
    "Ballot",
    "TallyResult",
    "PROPERTIES",
    "SCORE_WEAK",
    "SCORE_PARTIAL",
    "SCORE_STRONG",
    "PropertyMatrix",
    "power_1t1v",
    "power_ve",
    "power_reputation",
    "votes_quadratic",
    "conviction_update",
    "conviction_limit",
    "voting_power",
    "tally",
    "property_matrix",
    "recommend_mechanism",
    "sybil_split",
    "load_ballots",
    "FAMILY_LABELS",
]


class MechanismFamily(str, Enum):
    ONE_TOKEN_ONE_VOTE = "one_token_one_vote"
    CONVICTION = "conviction"
    VOTE_ESCROW = "vote_escrow"
    REPUTATION_WEIGHTED = "reputation_weighted"
    QUADRATIC = "quadratic"


FAMILY_LABELS = {
    MechanismFamily.ONE_TOKEN_ONE_VOTE: "1-Token-1-Vote",
    MechanismFamily.CONVICTION: "time-weighted conviction voting",
    MechanismFamily.VOTE_ESCROW: "time-weighted vote-escrow",
    MechanismFamily.REPUTATION_WEIGHTED: "reputation-weighted voting",
    MechanismFamily.QUADRATIC: "quadratic voting",
}


class VoteChoice(str, Enum):
    FOR = "for"
    AGAINST = "against"


class ProposalKind(str, Enum):
    TREASURY = "treasury"
    GOVERNANCE_PROCESS = "governance_process"
    PROTOCOL_UPGRADE = "protocol_upgrade"
    TOKENOMICS = "tokenomics"


@dataclass(frozen=True)
class Voter:
    """One governance participant and their commitments.

    `identity_cluster` tags the ground-truth owner of a voter identity for
    simulation-only Sybil analysis; production tallies never read it.
    """

    id: str
    balance: Fraction = Fraction(0)
    lock_remaining: int = 0
    lock_max: int = 4
    reputation: Fraction = Fraction(0)
    credits: Fraction = Fraction(0)
    identity_cluster: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "balance", as_fraction(self.balance))
        object.__setattr__(self, "reputation", as_fraction(self.reputation))
        object.__setattr__(self, "credits", as_fraction(self.credits))
        if self.balance < 0 or self.reputation < 0 or self.credits < 0:
            raise ValueError(f"voter {self.id!r} has a negative quantity")
        if self.lock_remaining < 0 or self.lock_max < 1:
            raise ValueError(f"voter {self.id!r} has invalid lock bounds")
        if self.lock_remaining > self.lock_max:
            raise ValueError(f"voter {self.id!r}: lock_remaining exceeds lock_max")

    @property
    def cluster(self) -> str:
        """Effective identity cluster; unclustered voters are their own."""
        return self.identity_cluster if self.identity_cluster is not None else self.id


@dataclass(frozen=True)
class Proposal:
    id: str
    kind: ProposalKind = ProposalKind.TREASURY
    threshold: Fraction = Fraction(1, 2)
    conviction_threshold: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "threshold", as_fraction(self.threshold))
        if not 0 < self.threshold <= 1:
            raise ValueError("threshold must lie in (0, 1]")
        if self.conviction_threshold is not None:
            object.__setattr__(
                self, "conviction_threshold", as_fraction(self.conviction_threshold)
            )


@dataclass(frozen=True)
class VotingMechanism:
    """A mechanism family plus its family-specific parameters.

    Bond-style voting is expressed as vote-escrow with `stake_scale` > 1
    rather than a separate family.
    """

    family: MechanismFamily
    alpha: Fraction = Fraction(9, 10)
    horizon: int = 1
    lock_max: int = 4
    credit_budget: Optional[Fraction] = None
    stake_scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "family", MechanismFamily(self.family))
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        object.__setattr__(self, "stake_scale", as_fraction(self.stake_scale))
        if not 0 < self.alpha < 1:
            raise InvalidDecay(f"decay factor must lie in (0, 1), got {self.alpha}")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.credit_budget is not None:
            object.__setattr__(self, "credit_budget", as_fraction(self.credit_budget))
            if self.credit_budget <= 0:
                raise ValueError("credit budget must be positive")


@dataclass(frozen=True)
class Ballot:
    """A single voter's choice; optional per-family inputs.

    `credits_spent` applies to quadratic voting and defaults to the voter's
    full budget; `support` applies to conviction voting and defaults to the
    voter's balance.
    """

    voter: Voter
    choice: VoteChoice
    credits_spent: Optional[Fraction] = None
    support: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "choice", VoteChoice(self.choice))
        if self.credits_spent is not None:
            object.__setattr__(self, "credits_spent", as_fraction(self.credits_spent))
        if self.support is not None:
            object.__setattr__(self, "support", as_fraction(self.support))


@dataclass(frozen=True)
class TallyResult:
    for_power: Fraction
    against_power: Fraction
    turnout: int
    passed: bool
    conviction: Optional[Fraction] = None

    def to_dict(self) -> dict:
        out = {
            "for": float(self.for_power),
            "against": float(self.against_power),
            "turnout": self.turnout,
            "passed": self.passed,
        }
        if self.conviction is not None:
            out["conviction"] = float(self.conviction)
        return out


def power_1t1v(voter: Voter) -> Fraction:
    """Voting power proportional to token balance."""
    return voter.balance


def power_ve(voter: Voter, stake_scale: Numeric = 1) -> Fraction:
    """Linear vote-escrow power: balance scaled by remaining lock fraction.

    A full lock grants the whole balance as power, no lock grants none.
    """
    base = voter.balance * Fraction(voter.lock_remaining, voter.lock_max)
    return base * as_fraction(stake_scale)


def power_reputation(voter: Voter) -> Fraction:
    """Voting power equal to the externally supplied reputation score."""
    return voter.reputation


def votes_quadratic(credits_spent: Numeric, budget: Optional[Numeric] = None) -> float:
    """Votes bought with quadratic cost: v = sqrt(credits), cost(v) = v^2.

    Votes are real-valued, not floored, so the concavity of the square root
    is preserved exactly in split-identity analyses.
    """
    spent = as_fraction(credits_spent)
    if spent < 0:
        raise ValueError("credits_spent must be non-negative")
    if budget is not None and spent > as_fraction(budget):
        raise BudgetExceeded(f"spent {spent} exceeds budget {budget}")
    return math.sqrt(spent)


def conviction_update(y_prev: Numeric, support: Numeric, alpha: Numeric) -> Fraction:
    """One conviction step: y_t = alpha * y_{t-1} + support."""
    alpha = as_fraction(alpha)
    if not 0 < alpha < 1:
        raise InvalidDecay(f"decay factor must lie in (0, 1), got {alpha}")
    support = as_fraction(support)
    if support < 0:
        raise ValueError("support must be non-negative")
    return alpha * as_fraction(y_prev) + support


def conviction_limit(support: Numeric, alpha: Numeric) -> Fraction:
    """Fixed point of the conviction recurrence under constant support."""
    alpha = as_fraction(alpha)
    if not 0 < alpha < 1:
        raise InvalidDecay(f"decay factor must lie in (0, 1), got {alpha}")
    return as_fraction(support) / (1 - alpha)


def _accumulated_conviction(support: Fraction, alpha: Fraction, horizon: int) -> Fraction:
    y = Fraction(0)
    for _ in range(horizon):
        y = alpha * y + support
    return y


def voting_power(voter: Voter, mechanism: VotingMechanism) -> Fraction:
    """Instantaneous voting power of one voter under a mechanism.

    For quadratic voting this is the vote count from spending the voter's
    full credit allowance; for conviction it is the balance available as
    support (accumulation happens over epochs, not here).
    """
    fam = mechanism.family
    if fam is MechanismFamily.ONE_TOKEN_ONE_VOTE:
        return power_1t1v(voter)
    if fam is MechanismFamily.VOTE_ESCROW:
        return power_ve(voter, mechanism.stake_scale)
    if fam is MechanismFamily.REPUTATION_WEIGHTED:
        return power_reputation(voter)
    if fam is MechanismFamily.QUADRATIC:
        budget = mechanism.credit_budget
        spend = voter.credits if budget is None else min(voter.credits, budget)
        return as_fraction(votes_quadratic(spend))
    if fam is MechanismFamily.CONVICTION:
        return voter.balance
    raise AssertionError(f"unhandled family {fam}")


def _ballot_power(ballot: Ballot, mechanism: VotingMechanism) -> Fraction:
    voter = ballot.voter
    if mechanism.family is MechanismFamily.QUADRATIC:
        budget = mechanism.credit_budget if mechanism.credit_budget is not None else voter.credits
        spent = ballot.credits_spent if ballot.credits_spent is not None else budget
        if spent > voter.credits:
            raise BudgetExceeded(f"voter {voter.id!r} spent {spent} with only {voter.credits}")
        return as_fraction(votes_quadratic(spent, budget))
    return voting_power(voter, mechanism)


def tally(proposal: Proposal, ballots: Sequence[Ballot], mechanism: VotingMechanism) -> TallyResult:
    """Deterministic tally of a sealed ballot set.

    Binary families pass when for / (for + against) strictly exceeds the
    proposal threshold. The conviction family accumulates each side's
    support over the mechanism horizon and passes when the supporting
    conviction reaches the proposal's conviction threshold.
    """
    seen = set()
    for ballot in ballots:
        if ballot.voter.id in seen:
            raise DuplicateVote(f"voter {ballot.voter.id!r} voted twice on {proposal.id!r}")
        seen.add(ballot.voter.id)

    if mechanism.family is MechanismFamily.CONVICTION:
        if proposal.conviction_threshold is None:
            raise ValueError(f"proposal {proposal.id!r} has no conviction threshold")
        support_for = Fraction(0)
        support_against = Fraction(0)
        for ballot in ballots:
            amount = ballot.support if ballot.support is not None else ballot.voter.balance
            if ballot.choice is VoteChoice.FOR:
                support_for += amount
            else:
                support_against += amount
        conviction_for = _accumulated_conviction(support_for, mechanism.alpha, mechanism.horizon)
        conviction_against = _accumulated_conviction(
            support_against, mechanism.alpha, mechanism.horizon
        )
        return TallyResult(
            for_power=conviction_for,
            against_power=conviction_against,
            turnout=len(ballots),
            passed=conviction_for >= proposal.conviction_threshold,
            conviction=conviction_for,
        )

    for_power = Fraction(0)
    against_power = Fraction(0)
    for ballot in ballots:
        power = _ballot_power(ballot, mechanism)
        if ballot.choice is VoteChoice.FOR:
            for_power += power
        else:
            against_power += power
    cast = for_power + against_power
    passed = cast > 0 and for_power > proposal.threshold * cast
    return TallyResult(
        for_power=for_power,
        against_power=against_power,
        turnout=len(ballots),
        passed=passed,
    )


# --- property matrix and mechanism selection ---------------------------------

PROPERTIES: Tuple[str, ...] = (
    "simplicity",
    "accountability",
    "inclusivity",
    "time_efficiency",
    "preference_intensity",
    "security",
)

SCORE_WEAK, SCORE_PARTIAL, SCORE_STRONG = 0, 1, 2


@dataclass(frozen=True)
class PropertyCell:
    score: int
    basis: str
    note: str


@dataclass(frozen=True)
class PropertyMatrix:
    """Scores of each mechanism family against the desired properties."""

    cells: Mapping[MechanismFamily, Mapping[str, PropertyCell]]

    def score(self, family: MechanismFamily, prop: str) -> int:
        if prop not in PROPERTIES:
            raise UnknownProperty(f"unknown property {prop!r}")
        return self.cells[MechanismFamily(family)][prop].score

    def families(self) -> Tuple[MechanismFamily, ...]:
        return tuple(self.cells.keys())

    def to_dict(self) -> dict:
        return {
            family.value: {
                prop: {"score": cell.score, "basis": cell.basis, "note": cell.note}
                for prop, cell in row.items()
            }
            for family, row in self.cells.items()
        }


_MATRIX_CACHE: Optional[PropertyMatrix] = None


def property_matrix() -> PropertyMatrix:
    """The shipped property matrix, loaded once from the packaged data file."""
    global _MATRIX_CACHE
    if _MATRIX_CACHE is None:
        raw = yaml.safe_load(
            resources.files("tokenlab.fixtures").joinpath("voting_properties.yaml").read_text()
        )
        cells: Dict[MechanismFamily, Dict[str, PropertyCell]] = {}
        for fam_name, row in raw["families"].items():
            family = MechanismFamily(fam_name)
            cells[family] = {}
            for prop in PROPERTIES:
                entry = row[prop]
                cells[family][prop] = PropertyCell(
                    score=int(entry["score"]),
                    basis=str(entry["basis"]),
                    note=str(entry["note"]),
                )
        matrix = PropertyMatrix(cells)
        for family in matrix.families():
            if matrix.score(family, "security") >= SCORE_STRONG:
                raise AssertionError("no family may reach the maximum security score")
        _MATRIX_CACHE = matrix
    return _MATRIX_CACHE


def recommend_mechanism(
    required: Mapping[str, int],
    prefer: Sequence[str] = (),
    matrix: Optional[PropertyMatrix] = None,
) -> List[MechanismFamily]:
    """Families meeting every minimum, ranked by the preference order.

    Ties after all preferred properties fall back to family name, so the
    ranking is deterministic. An empty result is a valid outcome meaning no
    family satisfies the requirements.
    """
    matrix = matrix or property_matrix()
    for prop in list(required) + list(prefer):
        if prop not in PROPERTIES:
            raise UnknownProperty(f"unknown property {prop!r}")
    candidates = [
        family
        for family in matrix.families()
        if all(matrix.score(family, prop) >= level for prop, level in required.items())
    ]

    def rank(family: MechanismFamily):
        return tuple(-matrix.score(family, prop) for prop in prefer) + (family.value,)

    return sorted(candidates, key=rank)


def sybil_split(voters: Sequence[Voter], cluster: str, k: int) -> List[Voter]:
    """Split one identity cluster's balance and credits across k identities.

    The cluster's largest member keeps its id and reputation; the k-1 clones
    inherit its lock but start with zero reputation, since reputation is
    bound to an identity and cannot be divided. Balance and credits are
    split exactly evenly. Other voters pass through untouched.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    members = [v for v in voters if v.cluster == cluster]
    if not members:
        raise UnknownCluster(f"no voters in cluster {cluster!r}")
    rep = max(members, key=lambda v: (v.balance, v.id))
    total_balance = sum((v.balance for v in members), Fraction(0))
    total_credits = sum((v.credits for v in members), Fraction(0))
    split_balance = total_balance / k
    split_credits = total_credits / k
    identities = [
        replace(
            rep,
            balance=split_balance,
            credits=split_credits,
            identity_cluster=cluster,
        )
    ]
    for i in range(1, k):
        identities.append(
            Voter(
                id=f"{rep.id}#s{i}",
                balance=split_balance,
                lock_remaining=rep.lock_remaining,
                lock_max=rep.lock_max,
                reputation=Fraction(0),
                credits=split_credits,
                identity_cluster=cluster,
            )
        )
    out: List[Voter] = []
    inserted = False
    for voter in voters:
        if voter.cluster == cluster:
            if not inserted:
                out.extend(identities)
                inserted = True
        else:
            out.append(voter)
    return out


def load_ballots(
    source,
    mechanism: VotingMechanism,
    snapshot=None,
    current_epoch: int = 0,
) -> List[Ballot]:
    """Read a vote set CSV: header `voter,choice,weight_input`.

    `weight_input` feeds whichever commitment the mechanism family reads:
    balance for balance/escrow/conviction voting, credits for quadratic,
    reputation score for reputation-weighted. A holder snapshot may be
    joined in to supply lock information: its optional `lock_end` column
    becomes each voter's remaining lock relative to `current_epoch`.
    """
    import csv as _csv
    import io as _io

    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    reader = _csv.reader(_io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ValueError("empty vote set")
    header = [cell.strip().lower() for cell in rows[0]]
    if header[:3] != ["voter", "choice", "weight_input"]:
        raise ValueError("vote set header must be voter,choice,weight_input")

    lock_by_entity = {}
    lock_max = mechanism.lock_max
    if snapshot is not None:
        for (entity, _), lock_end in zip(snapshot.entries, snapshot.lock_ends):
            if lock_end is not None:
                remaining = max(0, min(lock_max, lock_end - current_epoch))
                lock_by_entity[entity] = remaining

    ballots: List[Ballot] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) < 3:
            raise ValueError(f"line {lineno}: expected voter,choice,weight_input")
        voter_id = row[0].strip()
        try:
            choice = VoteChoice(row[1].strip().lower())
        except ValueError:
            raise ValueError(f"line {lineno}: choice must be 'for' or 'against'") from None
        weight = as_fraction(row[2])
        fam = mechanism.family
        voter = Voter(
            id=voter_id,
            balance=weight if fam is not MechanismFamily.REPUTATION_WEIGHTED else Fraction(0),
            lock_remaining=lock_by_entity.get(voter_id, 0),
            lock_max=lock_max,
            reputation=weight if fam is MechanismFamily.REPUTATION_WEIGHTED else Fraction(0),
            credits=weight if fam is MechanismFamily.QUADRATIC else Fraction(0),
        )
        ballots.append(Ballot(voter, choice))
    return ballots
