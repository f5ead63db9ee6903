"""Domain model for a declarative token-economy specification.

One document captures a whole design across three pillars: incentive
structures, governance, and tokenomics. The model is deliberately plain —
frozen dataclasses and string enums — so documents round-trip through a
canonical serialization byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..voting import MechanismFamily

CURRENT_SCHEMA_VERSION = 1


class StakeholderCategory(str, Enum):
    USERS = "users"
    PARTNERS = "partners"
    DEVELOPERS = "developers"
    COMMUNITY = "community"
    INVESTORS = "investors"


class MechanismType(str, Enum):
    TOKEN_REWARDS = "token_rewards"
    STAKING = "staking"
    LIQUIDITY_MINING = "liquidity_mining"
    GROWTH_EXPECTATIONS = "growth_expectations"
    ACCESS = "access"
    REPUTATION = "reputation"
    GOVERNANCE_PARTICIPATION = "governance_participation"
    NETWORK_EFFECTS = "network_effects"
    GAMIFICATION = "gamification"


class MechanismClass(str, Enum):
    MONETARY = "monetary"
    NON_MONETARY = "non_monetary"


# Which incentive types are monetary vs non-monetary.
MECHANISM_TAXONOMY: Dict[MechanismType, MechanismClass] = {
    MechanismType.TOKEN_REWARDS: MechanismClass.MONETARY,
    MechanismType.STAKING: MechanismClass.MONETARY,
    MechanismType.LIQUIDITY_MINING: MechanismClass.MONETARY,
    MechanismType.GROWTH_EXPECTATIONS: MechanismClass.MONETARY,
    MechanismType.ACCESS: MechanismClass.NON_MONETARY,
    MechanismType.REPUTATION: MechanismClass.NON_MONETARY,
    MechanismType.GOVERNANCE_PARTICIPATION: MechanismClass.NON_MONETARY,
    MechanismType.NETWORK_EFFECTS: MechanismClass.NON_MONETARY,
    MechanismType.GAMIFICATION: MechanismClass.NON_MONETARY,
}


class GovernanceArea(str, Enum):
    TREASURY = "treasury"
    GOVERNANCE_PROCESS = "governance_process"
    PROTOCOL_UPGRADE = "protocol_upgrade"
    TOKENOMICS = "tokenomics"


class DecentralizationTarget(str, Enum):
    PRIVATE_CENTRALIZED = "private_centralized"
    PUBLIC_CENTRALIZED = "public_centralized"
    PUBLIC_DECENTRALIZED = "public_decentralized"


class VenueKind(str, Enum):
    ONCHAIN = "onchain"
    OFFCHAIN = "offchain"
    HYBRID = "hybrid"


class SupportMechanism(str, Enum):
    PROPOSAL_PRESCREENING = "proposal_prescreening"
    PREDICTION_MARKETS = "prediction_markets"
    ALGORITHMIC_FILTERING = "algorithmic_filtering"
    DELEGATED_VOTING = "delegated_voting"
    INFORMATION_DESIGN = "information_design"
    STRUCTURED_DELIBERATION = "structured_deliberation"
    PROOF_OF_PERSONHOOD = "proof_of_personhood"


class RoleRight(str, Enum):
    PROPOSE = "propose"
    DELIBERATE = "deliberate"
    VOTE = "vote"
    EXECUTE = "execute"
    OVERSEE = "oversee"


class Timing(str, Enum):
    PRE_LAUNCH = "pre_launch"
    POST_LAUNCH = "post_launch"
    HYBRID = "hybrid"


class Channel(str, Enum):
    PRIVATE_SALE = "private_sale"
    PUBLIC_SALE = "public_sale"
    AIRDROP = "airdrop"
    LIQUIDITY_MINING = "liquidity_mining"
    RESERVE = "reserve"


class ValueCapture(str, Enum):
    GOVERNANCE_RIGHTS = "governance_rights"
    ASSET_CLAIMS = "asset_claims"
    NETWORK_VALUE = "network_value"
    EARNINGS_CLAIMS = "earnings_claims"


class PriceLever(str, Enum):
    BURN = "burn"
    STAKING = "staking"
    BUYBACK = "buyback"
    VESTING = "vesting"


@dataclass(frozen=True)
class Stakeholder:
    name: str
    category: StakeholderCategory


@dataclass(frozen=True)
class Behavior:
    stakeholder: str
    behavior: str


@dataclass(frozen=True)
class IncentiveMechanism:
    type: MechanismType
    mechanism_class: MechanismClass
    targets: Tuple[str, ...]
    description: Optional[str] = None


@dataclass(frozen=True)
class Incentives:
    stakeholders: Tuple[Stakeholder, ...]
    functions: Tuple[str, ...]
    desirable_behaviors: Tuple[Behavior, ...]
    incentive_mechanisms: Tuple[IncentiveMechanism, ...]


@dataclass(frozen=True)
class NumericTargets:
    max_gini: Optional[Fraction] = None
    min_nakamoto: Optional[int] = None


@dataclass(frozen=True)
class MechanismChoice:
    family: MechanismFamily
    alpha: Optional[Fraction] = None
    horizon: Optional[int] = None
    lock_max: Optional[int] = None
    credit_budget: Optional[Fraction] = None
    stake_scale: Optional[Fraction] = None


@dataclass(frozen=True)
class Role:
    stakeholder: str
    rights: Tuple[RoleRight, ...]


@dataclass(frozen=True)
class Governance:
    areas: Tuple[GovernanceArea, ...]
    decentralization_target: DecentralizationTarget
    chosen_mechanism: MechanismChoice
    required_properties: Dict[str, int] = field(default_factory=dict)
    onchain_offchain: Dict[GovernanceArea, VenueKind] = field(default_factory=dict)
    support_mechanisms: Tuple[SupportMechanism, ...] = ()
    numeric_targets: NumericTargets = field(default_factory=NumericTargets)
    roles: Tuple[Role, ...] = ()


@dataclass(frozen=True)
class VestingSpec:
    start_epoch: int = 0
    cliff_epochs: int = 0
    duration_epochs: int = 1


@dataclass(frozen=True)
class Allocation:
    channel: Channel
    share: Fraction
    vesting: Optional[VestingSpec] = None
    illustrative: bool = False


@dataclass(frozen=True)
class SupplyPolicySpec:
    kind: str  # "capped" | "uncapped"
    s_max: Optional[Fraction] = None
    inflationary_constraint: bool = False
    annual_inflation_pct: Optional[Fraction] = None


@dataclass(frozen=True)
class EmissionStep:
    epoch: int
    minted: Fraction
    burned: Fraction = Fraction(0)


@dataclass(frozen=True)
class TokenPolicy:
    name: str
    supply: SupplyPolicySpec
    timing: Timing
    distribution: Tuple[Allocation, ...]
    value_capture: Tuple[ValueCapture, ...]
    price_management: Tuple[PriceLever, ...]
    initial_supply: Fraction = Fraction(0)
    emission_schedule: Tuple[EmissionStep, ...] = ()
    demand_driven: bool = False


@dataclass(frozen=True)
class Tokenomics:
    tokens: Tuple[TokenPolicy, ...]


@dataclass(frozen=True)
class EconomySpec:
    """Parsed, structurally sound economy specification.

    `unknown_fields` keeps the paths of fields the parser did not recognize
    so the validator can surface forward-compatibility warnings without
    losing them.
    """

    tedm_version: int
    name: str
    incentives: Incentives
    governance: Governance
    tokenomics: Tokenomics
    description: Optional[str] = None
    unknown_fields: Tuple[str, ...] = ()

    def stakeholder_names(self) -> Tuple[str, ...]:
        return tuple(s.name for s in self.incentives.stakeholders)

    def token(self, name: str) -> TokenPolicy:
        for token in self.tokenomics.tokens:
            if token.name == name:
                return token
        raise KeyError(f"no token named {name!r}")
