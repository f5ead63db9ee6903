"""Cross-field consistency rules over a parsed economy spec.

Every rule is pure and deterministic; findings are sorted so the report is
independent of evaluation order. Errors mean the design is internally
inconsistent; warnings flag risky but representable choices.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from ..quantities import canonical_number
from ..voting import MechanismFamily, PropertyMatrix, property_matrix
from .model import (
    CURRENT_SCHEMA_VERSION,
    DecentralizationTarget,
    EconomySpec,
    MECHANISM_TAXONOMY,
    Timing,
    TokenPolicy,
    ValueCapture,
)

__all__ = ["Severity", "Finding", "ValidationReport", "validate_spec"]


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True)
class Finding:
    severity: Severity
    rule: str
    message: str
    path: str

    def to_dict(self) -> dict:
        return {
            "severity": self.severity.value,
            "rule": self.rule,
            "message": self.message,
            "path": self.path,
        }


@dataclass(frozen=True)
class ValidationReport:
    findings: Tuple[Finding, ...]

    @property
    def valid(self) -> bool:
        return not any(f.severity is Severity.ERROR for f in self.findings)

    def errors(self) -> Tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity is Severity.ERROR)

    def by_rule(self, rule: str) -> Tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.rule == rule)

    def to_dict(self) -> dict:
        return {"valid": self.valid, "findings": [f.to_dict() for f in self.findings]}


def _check_shares(spec: EconomySpec, out: List[Finding]):
    # V1: distribution shares per token must sum to exactly 1
    for i, token in enumerate(spec.tokenomics.tokens):
        total = sum((a.share for a in token.distribution), Fraction(0))
        if total != 1:
            out.append(
                Finding(
                    severity=Severity.ERROR,
                    rule="V1",
                    message=f"distribution shares sum to {canonical_number(total)}, "
                            "expected exactly 1",
                    path=f"tokenomics.tokens[{i}].distribution",
                )
            )


def _scheduled_supply_exceeds_cap(token: TokenPolicy) -> Optional[Tuple[int, Fraction]]:
    if token.supply.kind != "capped" or token.supply.s_max is None:
        return None
    supply = token.initial_supply
    if supply > token.supply.s_max:
        return (0, supply)
    for step in token.emission_schedule:
        supply = supply + step.minted - step.burned
        if supply > token.supply.s_max:
            return (step.epoch, supply)
    return None


def _check_cap(spec: EconomySpec, out: List[Finding]):
    # V2: a declared mint plan may never exceed the cap it declares
    for i, token in enumerate(spec.tokenomics.tokens):
        breach = _scheduled_supply_exceeds_cap(token)
        if breach is not None:
            epoch, supply = breach
            out.append(
                Finding(
                    severity=Severity.ERROR,
                    rule="V2",
                    message=(
                        f"scheduled supply reaches {supply} at epoch {epoch}, "
                        f"exceeding the cap {token.supply.s_max}"
                    ),
                    path=f"tokenomics.tokens[{i}].emission_schedule",
                )
            )


def _check_mechanism_properties(spec: EconomySpec, matrix: PropertyMatrix, out: List[Finding]):
    # V3: the chosen mechanism must satisfy every required property minimum
    family = spec.governance.chosen_mechanism.family
    for prop, minimum in sorted(spec.governance.required_properties.items()):
        score = matrix.score(family, prop)
        if score < minimum:
            out.append(
                Finding(
                    severity=Severity.ERROR,
                    rule="V3",
                    message=(
                        f"{family.value} scores {score} on {prop}, "
                        f"below the required minimum {minimum}"
                    ),
                    path="governance.chosen_mechanism",
                )
            )


def _check_behavior_coverage(spec: EconomySpec, out: List[Finding]):
    # V4: every desirable behavior should have at least one incentive aimed at it
    targeted = set()
    for mech in spec.incentives.incentive_mechanisms:
        targeted.update(mech.targets)
    for i, behavior in enumerate(spec.incentives.desirable_behaviors):
        if behavior.stakeholder not in targeted:
            out.append(
                Finding(
                    severity=Severity.WARNING,
                    rule="V4",
                    message=(
                        f"no incentive mechanism targets {behavior.stakeholder!r}, "
                        f"whose behavior {behavior.behavior!r} the design relies on"
                    ),
                    path=f"incentives.desirable_behaviors[{i}]",
                )
            )


def _check_plutocracy(spec: EconomySpec, out: List[Finding]):
    # V5: open-participation target with balance voting and no supports
    gov = spec.governance
    if (
        gov.decentralization_target is DecentralizationTarget.PUBLIC_DECENTRALIZED
        and gov.chosen_mechanism.family is MechanismFamily.ONE_TOKEN_ONE_VOTE
        and not gov.support_mechanisms
    ):
        out.append(
            Finding(
                severity=Severity.WARNING,
                rule="V5",
                message=(
                    "a public decentralized target with balance voting and no "
                    "support mechanisms is exposed to vote buying and plutocracy"
                ),
                path="governance.chosen_mechanism",
            )
        )


def _check_asset_backed_timing(spec: EconomySpec, out: List[Finding]):
    # V6: a purely asset-claim token cannot be meaningfully issued pre-launch
    for i, token in enumerate(spec.tokenomics.tokens):
        if (
            set(token.value_capture) == {ValueCapture.ASSET_CLAIMS}
            and token.timing is Timing.PRE_LAUNCH
        ):
            out.append(
                Finding(
                    severity=Severity.WARNING,
                    rule="V6",
                    message=(
                        f"token {token.name!r} captures value only through asset claims, "
                        "which do not exist pre-launch; issuance should follow the assets"
                    ),
                    path=f"tokenomics.tokens[{i}].timing",
                )
            )


def _check_stakeholder_references(spec: EconomySpec, out: List[Finding]):
    # V7/V8: behaviors and targets must reference declared stakeholders
    declared = set(spec.stakeholder_names())
    for i, behavior in enumerate(spec.incentives.desirable_behaviors):
        if behavior.stakeholder not in declared:
            out.append(
                Finding(
                    severity=Severity.ERROR,
                    rule="V7",
                    message=f"behavior references undeclared stakeholder {behavior.stakeholder!r}",
                    path=f"incentives.desirable_behaviors[{i}].stakeholder",
                )
            )
    for i, mech in enumerate(spec.incentives.incentive_mechanisms):
        for target in mech.targets:
            if target not in declared:
                out.append(
                    Finding(
                        severity=Severity.ERROR,
                        rule="V8",
                        message=f"incentive mechanism targets undeclared stakeholder {target!r}",
                        path=f"incentives.incentive_mechanisms[{i}].targets",
                    )
                )
    for i, role in enumerate(spec.governance.roles):
        if role.stakeholder not in declared:
            out.append(
                Finding(
                    severity=Severity.ERROR,
                    rule="V8",
                    message=f"governance role references undeclared stakeholder {role.stakeholder!r}",
                    path=f"governance.roles[{i}].stakeholder",
                )
            )


def _check_taxonomy(spec: EconomySpec, out: List[Finding]):
    # V9: an incentive's declared class must match its type's taxonomy class
    for i, mech in enumerate(spec.incentives.incentive_mechanisms):
        expected = MECHANISM_TAXONOMY[mech.type]
        if mech.mechanism_class is not expected:
            out.append(
                Finding(
                    severity=Severity.ERROR,
                    rule="V9",
                    message=(
                        f"{mech.type.value} is a {expected.value} incentive, "
                        f"declared as {mech.mechanism_class.value}"
                    ),
                    path=f"incentives.incentive_mechanisms[{i}].class",
                )
            )


def _check_venues(spec: EconomySpec, out: List[Finding]):
    # V10: venue map entries should correspond to declared governance areas
    declared = set(spec.governance.areas)
    for area in spec.governance.onchain_offchain:
        if area not in declared:
            out.append(
                Finding(
                    severity=Severity.WARNING,
                    rule="V10",
                    message=f"venue declared for {area.value!r}, which is not a governance area",
                    path=f"governance.onchain_offchain.{area.value}",
                )
            )


def _check_version_and_unknown(spec: EconomySpec, out: List[Finding]):
    # V11/V12: forward compatibility surfaces as warnings, never errors
    if spec.tedm_version != CURRENT_SCHEMA_VERSION:
        out.append(
            Finding(
                severity=Severity.WARNING,
                rule="V11",
                message=(
                    f"document declares schema version {spec.tedm_version}; "
                    f"this build validates version {CURRENT_SCHEMA_VERSION}"
                ),
                path="tedm_version",
            )
        )
    for path in spec.unknown_fields:
        out.append(
            Finding(
                severity=Severity.WARNING,
                rule="V12",
                message="unknown field ignored (kept for forward compatibility)",
                path=path,
            )
        )


def validate_spec(spec: EconomySpec, matrix: Optional[PropertyMatrix] = None) -> ValidationReport:
    """Run every rule; findings come back sorted by path then rule id."""
    matrix = matrix or property_matrix()
    findings: List[Finding] = []
    _check_shares(spec, findings)
    _check_cap(spec, findings)
    _check_mechanism_properties(spec, matrix, findings)
    _check_behavior_coverage(spec, findings)
    _check_plutocracy(spec, findings)
    _check_asset_backed_timing(spec, findings)
    _check_stakeholder_references(spec, findings)
    _check_taxonomy(spec, findings)
    _check_venues(spec, findings)
    _check_version_and_unknown(spec, findings)
    findings.sort(key=lambda f: (f.path, f.rule, f.message))
    return ValidationReport(findings=tuple(findings))
