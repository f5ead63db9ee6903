"""Side-by-side comparison of two economy specs, pillar by pillar.

The report mirrors the structure used when lining up real token economies:
three pillars (incentives, governance, tokenomics) with a fixed row set per
pillar, each row rendering one design dimension of both specs as text.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from ..voting import FAMILY_LABELS
from .model import EconomySpec, TokenPolicy

__all__ = ["ComparisonRow", "ComparisonPillar", "ComparisonReport", "compare_specs",
           "render_comparison_text"]


@dataclass(frozen=True)
class ComparisonRow:
    label: str
    a: str
    b: str

    @property
    def identical(self) -> bool:
        return self.a == self.b

    def to_dict(self) -> dict:
        return {"label": self.label, "a": self.a, "b": self.b, "identical": self.identical}


@dataclass(frozen=True)
class ComparisonPillar:
    pillar: str
    rows: Tuple[ComparisonRow, ...]

    def to_dict(self) -> dict:
        return {"pillar": self.pillar, "rows": [r.to_dict() for r in self.rows]}


@dataclass(frozen=True)
class ComparisonReport:
    name_a: str
    name_b: str
    pillars: Tuple[ComparisonPillar, ...]

    @property
    def identical(self) -> bool:
        return all(row.identical for pillar in self.pillars for row in pillar.rows)

    def to_dict(self) -> dict:
        return {
            "a": self.name_a,
            "b": self.name_b,
            "identical": self.identical,
            "pillars": [p.to_dict() for p in self.pillars],
        }


def _human_amount(value: Fraction) -> str:
    """Compact token amount: 3030000000 -> '3.03B'."""
    number = float(value)
    for cutoff, suffix in ((1e9, "B"), (1e6, "M"), (1e3, "K")):
        if number >= cutoff:
            scaled = number / cutoff
            text = f"{scaled:.2f}".rstrip("0").rstrip(".")
            return f"{text}{suffix}"
    return f"{number:g}"


def _value_proposition(spec: EconomySpec) -> str:
    stakeholders = ", ".join(
        f"{s.name} ({s.category.value})" for s in spec.incentives.stakeholders
    )
    functions = ", ".join(spec.incentives.functions)
    return f"stakeholders: {stakeholders}; functions: {functions}"


def _behaviors(spec: EconomySpec) -> str:
    return "; ".join(
        f"{b.stakeholder}: {b.behavior}" for b in spec.incentives.desirable_behaviors
    )


def _incentive_mechanisms(spec: EconomySpec) -> str:
    parts = []
    for m in spec.incentives.incentive_mechanisms:
        desc = f" — {m.description}" if m.description else ""
        parts.append(
            f"{m.type.value} ({m.mechanism_class.value}, targets {', '.join(m.targets)}){desc}"
        )
    return "; ".join(parts)


def _areas(spec: EconomySpec) -> str:
    return ", ".join(a.value for a in spec.governance.areas)


def _roles(spec: EconomySpec) -> str:
    if not spec.governance.roles:
        return "not specified"
    return "; ".join(
        f"{r.stakeholder}: {', '.join(x.value for x in r.rights)}" for r in spec.governance.roles
    )


def _decentralization(spec: EconomySpec) -> str:
    gov = spec.governance
    text = gov.decentralization_target.value.replace("_", " ")
    extras = []
    if gov.numeric_targets.max_gini is not None:
        extras.append(f"max Gini {float(gov.numeric_targets.max_gini)}")
    if gov.numeric_targets.min_nakamoto is not None:
        extras.append(f"min Nakamoto {gov.numeric_targets.min_nakamoto}")
    if extras:
        text += f" ({', '.join(extras)})"
    return text


def _voting(spec: EconomySpec) -> str:
    choice = spec.governance.chosen_mechanism
    text = FAMILY_LABELS[choice.family]
    if spec.governance.support_mechanisms:
        supports = ", ".join(s.value for s in spec.governance.support_mechanisms)
        text += f" with supports: {supports}"
    return text


def _supply_model(spec: EconomySpec) -> str:
    parts = []
    for token in spec.tokenomics.tokens:
        parts.append(f"{token.name}: {_token_supply(token)}")
    return "; ".join(parts)


def _token_supply(token: TokenPolicy) -> str:
    supply = token.supply
    if supply.kind == "capped":
        return f"capped supply (cap ≈ {_human_amount(supply.s_max)})"
    text = "inflationary policy"
    if supply.annual_inflation_pct is not None:
        text += f" ({float(supply.annual_inflation_pct):g}% annual inflation reported)"
    if token.demand_driven:
        text += ", demand-driven issuance"
    return text


def _distribution(spec: EconomySpec) -> str:
    parts = []
    for token in spec.tokenomics.tokens:
        channels = []
        for alloc in token.distribution:
            entry = f"{alloc.channel.value} {float(alloc.share) * 100:g}%"
            if alloc.vesting is not None:
                entry += " (vested)"
            channels.append(entry)
        parts.append(f"{token.name} [{token.timing.value}]: {', '.join(channels)}")
    return "; ".join(parts)


def _value_capture(spec: EconomySpec) -> str:
    parts = []
    for token in spec.tokenomics.tokens:
        values = ", ".join(v.value for v in token.value_capture)
        parts.append(f"{token.name}: {values}")
    return "; ".join(parts)


def _price_management(spec: EconomySpec) -> str:
    parts = []
    for token in spec.tokenomics.tokens:
        levers = ", ".join(p.value for p in token.price_management) or "none"
        parts.append(f"{token.name}: {levers}")
    return "; ".join(parts)


_PILLARS = (
    (
        "incentives",
        (
            ("value proposition", _value_proposition),
            ("desirable behaviors", _behaviors),
            ("incentive mechanisms", _incentive_mechanisms),
        ),
    ),
    (
        "governance",
        (
            ("governance areas", _areas),
            ("stakeholder roles", _roles),
            ("level of decentralization", _decentralization),
            ("voting mechanism", _voting),
        ),
    ),
    (
        "tokenomics",
        (
            ("token supply model", _supply_model),
            ("token distribution", _distribution),
            ("value-capture channels", _value_capture),
            ("price-management mechanisms", _price_management),
        ),
    ),
)


def compare_specs(a: EconomySpec, b: EconomySpec) -> ComparisonReport:
    """Render both specs into the fixed pillar/row structure."""
    pillars: List[ComparisonPillar] = []
    for pillar_name, rows in _PILLARS:
        rendered = tuple(
            ComparisonRow(label=label, a=fn(a), b=fn(b)) for label, fn in rows
        )
        pillars.append(ComparisonPillar(pillar=pillar_name, rows=rendered))
    return ComparisonReport(name_a=a.name, name_b=b.name, pillars=tuple(pillars))


def render_comparison_text(report: ComparisonReport) -> str:
    """Stable plain-text rendering, suitable for golden-file comparison."""
    lines = [f"comparison: {report.name_a} vs {report.name_b}", ""]
    for pillar in report.pillars:
        lines.append(pillar.pillar.upper())
        lines.append("-" * len(pillar.pillar))
        for row in pillar.rows:
            marker = "=" if row.identical else "≠"
            lines.append(f"{row.label} [{marker}]")
            lines.append(f"  {report.name_a}: {row.a}")
            lines.append(f"  {report.name_b}: {row.b}")
        lines.append("")
    return "\n".join(lines)
