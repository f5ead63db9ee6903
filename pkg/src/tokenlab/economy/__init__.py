"""Declarative token-economy specifications: parse, validate, compare."""

from .model import (  # noqa: F401
    Allocation,
    Behavior,
    Channel,
    DecentralizationTarget,
    EconomySpec,
    EmissionStep,
    Governance,
    GovernanceArea,
    Incentives,
    IncentiveMechanism,
    MechanismChoice,
    MechanismClass,
    MechanismType,
    NumericTargets,
    PriceLever,
    Role,
    RoleRight,
    Stakeholder,
    StakeholderCategory,
    SupplyPolicySpec,
    SupportMechanism,
    Timing,
    TokenPolicy,
    Tokenomics,
    ValueCapture,
    VenueKind,
    VestingSpec,
    CURRENT_SCHEMA_VERSION,
)
from .parse import parse_spec, normalize_and_serialize, spec_to_document, load_fixture  # noqa: F401
from .validate import Finding, Severity, ValidationReport, validate_spec  # noqa: F401
from .compare import ComparisonReport, compare_specs, render_comparison_text  # noqa: F401
