"""Parsing and canonical serialization of economy-spec documents.

Documents are YAML (JSON being a subset is accepted unchanged). The parser
accumulates every structural problem with its document path before raising,
and unknown fields are recorded rather than rejected so newer documents
degrade to warnings. `normalize_and_serialize` emits a canonical form —
sorted keys, canonical enum casing, exact decimal strings — that is stable
under re-parsing.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Optional, Tuple, Type, TypeVar

import yaml

from ..errors import ParseIssue, SchemaError, UnknownEnumValue
from ..quantities import as_fraction, canonical_number
from ..voting import PROPERTIES, MechanismFamily
from .model import (
    Allocation,
    Behavior,
    Channel,
    CURRENT_SCHEMA_VERSION,
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
)

E = TypeVar("E", bound=Enum)


@dataclass
class _Ctx:
    issues: List[ParseIssue] = field(default_factory=list)
    unknown: List[str] = field(default_factory=list)
    enum_issues: List[tuple] = field(default_factory=list)

    def error(self, path: str, message: str, suggestion: Optional[str] = None):
        self.issues.append(ParseIssue(path=path, message=message, suggestion=suggestion))

    def enum_error(self, path: str, value, allowed):
        suggestion = _suggest(value, allowed)
        self.enum_issues.append((path, value, tuple(allowed), suggestion))
        self.error(path, f"unknown value {value!r}; allowed: {', '.join(allowed)}", suggestion)


def _suggest(value: str, allowed) -> Optional[str]:
    matches = difflib.get_close_matches(str(value), [str(a) for a in allowed], n=1, cutoff=0.5)
    return matches[0] if matches else None


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else str(key)


def _check_keys(ctx: _Ctx, mapping: dict, allowed, path: str):
    for key in mapping:
        if key not in allowed:
            ctx.unknown.append(f"{path}.{key}" if path else str(key))


def _get_map(ctx: _Ctx, parent: dict, key: str, path: str, required=True) -> Optional[dict]:
    value = parent.get(key)
    if value is None:
        if required:
            ctx.error(_join(path, key), "required section is missing")
        return None
    if not isinstance(value, dict):
        ctx.error(_join(path, key), f"expected a mapping, got {type(value).__name__}")
        return None
    return value


def _get_list(ctx: _Ctx, parent: dict, key: str, path: str, required=True) -> Optional[list]:
    value = parent.get(key)
    if value is None:
        if required:
            ctx.error(_join(path, key), "required list is missing")
        return None
    if not isinstance(value, list):
        ctx.error(_join(path, key), f"expected a list, got {type(value).__name__}")
        return None
    return value


def _get_str(ctx: _Ctx, parent: dict, key: str, path: str, required=True) -> Optional[str]:
    value = parent.get(key)
    if value is None:
        if required:
            ctx.error(_join(path, key), "required string is missing")
        return None
    if not isinstance(value, str):
        ctx.error(_join(path, key), f"expected a string, got {type(value).__name__}")
        return None
    return value


def _get_int(ctx: _Ctx, parent: dict, key: str, path: str, required=True, default=None):
    value = parent.get(key, default)
    if value is None:
        if required:
            ctx.error(_join(path, key), "required integer is missing")
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        ctx.error(_join(path, key), f"expected an integer, got {value!r}")
        return None
    return value


def _get_bool(ctx: _Ctx, parent: dict, key: str, path: str, default=False) -> bool:
    value = parent.get(key, default)
    if not isinstance(value, bool):
        ctx.error(_join(path, key), f"expected a boolean, got {value!r}")
        return default
    return value


def _get_fraction(ctx: _Ctx, parent: dict, key: str, path: str, required=True, default=None):
    value = parent.get(key, default)
    if value is None:
        if required:
            ctx.error(_join(path, key), "required number is missing")
        return None
    try:
        return as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        ctx.error(_join(path, key), f"expected a number, got {value!r}")
        return None


def _enum(ctx: _Ctx, enum_cls: Type[E], value, path: str) -> Optional[E]:
    if value is None:
        ctx.error(path, "required value is missing")
        return None
    try:
        return enum_cls(value)
    except ValueError:
        ctx.enum_error(path, value, [e.value for e in enum_cls])
        return None


def _enum_list(ctx: _Ctx, enum_cls: Type[E], values, path: str) -> Tuple[E, ...]:
    if values is None:
        return ()
    if not isinstance(values, list):
        ctx.error(path, f"expected a list, got {type(values).__name__}")
        return ()
    out = []
    for i, value in enumerate(values):
        parsed = _enum(ctx, enum_cls, value, f"{path}[{i}]")
        if parsed is not None:
            out.append(parsed)
    return tuple(out)


def _parse_incentives(ctx: _Ctx, raw: dict) -> Incentives:
    path = "incentives"
    _check_keys(ctx, raw, {"stakeholders", "functions", "desirable_behaviors",
                           "incentive_mechanisms"}, path)

    stakeholders = []
    for i, item in enumerate(_get_list(ctx, raw, "stakeholders", path) or []):
        ipath = f"{path}.stakeholders[{i}]"
        if not isinstance(item, dict):
            ctx.error(ipath, "expected a mapping with name and category")
            continue
        _check_keys(ctx, item, {"name", "category"}, ipath)
        name = _get_str(ctx, item, "name", ipath)
        category = _enum(ctx, StakeholderCategory, item.get("category"), f"{ipath}.category")
        if name is not None and category is not None:
            stakeholders.append(Stakeholder(name=name, category=category))

    functions = []
    for i, item in enumerate(_get_list(ctx, raw, "functions", path) or []):
        if not isinstance(item, str):
            ctx.error(f"{path}.functions[{i}]", f"expected a string, got {item!r}")
        else:
            functions.append(item)

    behaviors = []
    for i, item in enumerate(_get_list(ctx, raw, "desirable_behaviors", path) or []):
        ipath = f"{path}.desirable_behaviors[{i}]"
        if not isinstance(item, dict):
            ctx.error(ipath, "expected a mapping with stakeholder and behavior")
            continue
        _check_keys(ctx, item, {"stakeholder", "behavior"}, ipath)
        who = _get_str(ctx, item, "stakeholder", ipath)
        what = _get_str(ctx, item, "behavior", ipath)
        if who is not None and what is not None:
            behaviors.append(Behavior(stakeholder=who, behavior=what))

    mechanisms = []
    for i, item in enumerate(_get_list(ctx, raw, "incentive_mechanisms", path) or []):
        ipath = f"{path}.incentive_mechanisms[{i}]"
        if not isinstance(item, dict):
            ctx.error(ipath, "expected a mapping")
            continue
        _check_keys(ctx, item, {"type", "class", "targets", "description"}, ipath)
        mtype = _enum(ctx, MechanismType, item.get("type"), f"{ipath}.type")
        mclass = _enum(ctx, MechanismClass, item.get("class"), f"{ipath}.class")
        targets = []
        raw_targets = item.get("targets", [])
        if not isinstance(raw_targets, list):
            ctx.error(f"{ipath}.targets", "expected a list of stakeholder names")
            raw_targets = []
        for j, target in enumerate(raw_targets):
            if not isinstance(target, str):
                ctx.error(f"{ipath}.targets[{j}]", f"expected a string, got {target!r}")
            else:
                targets.append(target)
        description = item.get("description")
        if description is not None and not isinstance(description, str):
            ctx.error(f"{ipath}.description", "expected a string")
            description = None
        if mtype is not None and mclass is not None:
            mechanisms.append(
                IncentiveMechanism(
                    type=mtype,
                    mechanism_class=mclass,
                    targets=tuple(targets),
                    description=description,
                )
            )

    return Incentives(
        stakeholders=tuple(stakeholders),
        functions=tuple(functions),
        desirable_behaviors=tuple(behaviors),
        incentive_mechanisms=tuple(mechanisms),
    )


def _parse_mechanism_choice(ctx: _Ctx, raw, path: str) -> Optional[MechanismChoice]:
    if not isinstance(raw, dict):
        ctx.error(path, "expected a mapping with a mechanism family")
        return None
    _check_keys(ctx, raw, {"family", "alpha", "horizon", "lock_max", "credit_budget",
                           "stake_scale"}, path)
    family = _enum(ctx, MechanismFamily, raw.get("family"), f"{path}.family")
    if family is None:
        return None
    alpha = _get_fraction(ctx, raw, "alpha", path, required=False)
    if alpha is not None and not 0 < alpha < 1:
        ctx.error(f"{path}.alpha", f"decay factor must lie in (0, 1), got {alpha}")
        alpha = None
    horizon = _get_int(ctx, raw, "horizon", path, required=False)
    lock_max = _get_int(ctx, raw, "lock_max", path, required=False)
    credit_budget = _get_fraction(ctx, raw, "credit_budget", path, required=False)
    stake_scale = _get_fraction(ctx, raw, "stake_scale", path, required=False)
    return MechanismChoice(
        family=family,
        alpha=alpha,
        horizon=horizon,
        lock_max=lock_max,
        credit_budget=credit_budget,
        stake_scale=stake_scale,
    )


def _parse_governance(ctx: _Ctx, raw: dict) -> Optional[Governance]:
    path = "governance"
    _check_keys(ctx, raw, {"areas", "decentralization_target", "numeric_targets",
                           "onchain_offchain", "required_properties", "chosen_mechanism",
                           "support_mechanisms", "roles"}, path)

    areas = _enum_list(ctx, GovernanceArea, _get_list(ctx, raw, "areas", path), f"{path}.areas")
    target = _enum(ctx, DecentralizationTarget, raw.get("decentralization_target"),
                   f"{path}.decentralization_target")

    numeric = NumericTargets()
    raw_numeric = raw.get("numeric_targets")
    if raw_numeric is not None:
        npath = f"{path}.numeric_targets"
        if not isinstance(raw_numeric, dict):
            ctx.error(npath, "expected a mapping")
        else:
            _check_keys(ctx, raw_numeric, {"max_gini", "min_nakamoto"}, npath)
            max_gini = _get_fraction(ctx, raw_numeric, "max_gini", npath, required=False)
            if max_gini is not None and not 0 <= max_gini <= 1:
                ctx.error(f"{npath}.max_gini", "must lie in [0, 1]")
                max_gini = None
            min_nakamoto = _get_int(ctx, raw_numeric, "min_nakamoto", npath, required=False)
            if min_nakamoto is not None and min_nakamoto < 1:
                ctx.error(f"{npath}.min_nakamoto", "must be >= 1")
                min_nakamoto = None
            numeric = NumericTargets(max_gini=max_gini, min_nakamoto=min_nakamoto)

    venues: Dict[GovernanceArea, VenueKind] = {}
    raw_venues = raw.get("onchain_offchain")
    if raw_venues is not None:
        vpath = f"{path}.onchain_offchain"
        if not isinstance(raw_venues, dict):
            ctx.error(vpath, "expected a mapping of area to venue")
        else:
            for key, value in raw_venues.items():
                area = _enum(ctx, GovernanceArea, key, f"{vpath}.{key}")
                venue = _enum(ctx, VenueKind, value, f"{vpath}.{key}")
                if area is not None and venue is not None:
                    venues[area] = venue

    required_properties: Dict[str, int] = {}
    raw_props = raw.get("required_properties")
    if raw_props is not None:
        ppath = f"{path}.required_properties"
        if not isinstance(raw_props, dict):
            ctx.error(ppath, "expected a mapping of property to minimum score")
        else:
            for key, value in raw_props.items():
                if key not in PROPERTIES:
                    ctx.enum_error(f"{ppath}.{key}", key, list(PROPERTIES))
                    continue
                if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value <= 2:
                    ctx.error(f"{ppath}.{key}", f"score must be an integer in 0..2, got {value!r}")
                    continue
                required_properties[key] = value

    chosen = _parse_mechanism_choice(ctx, raw.get("chosen_mechanism"), f"{path}.chosen_mechanism")
    supports = _enum_list(ctx, SupportMechanism, raw.get("support_mechanisms"),
                          f"{path}.support_mechanisms")

    roles = []
    raw_roles = raw.get("roles")
    if raw_roles is not None:
        if not isinstance(raw_roles, list):
            ctx.error(f"{path}.roles", "expected a list")
        else:
            for i, item in enumerate(raw_roles):
                rpath = f"{path}.roles[{i}]"
                if not isinstance(item, dict):
                    ctx.error(rpath, "expected a mapping")
                    continue
                _check_keys(ctx, item, {"stakeholder", "rights"}, rpath)
                who = _get_str(ctx, item, "stakeholder", rpath)
                rights = _enum_list(ctx, RoleRight, item.get("rights"), f"{rpath}.rights")
                if who is not None:
                    roles.append(Role(stakeholder=who, rights=rights))

    if target is None or chosen is None:
        return None
    return Governance(
        areas=areas,
        decentralization_target=target,
        chosen_mechanism=chosen,
        required_properties=required_properties,
        onchain_offchain=venues,
        support_mechanisms=supports,
        numeric_targets=numeric,
        roles=tuple(roles),
    )


def _parse_token(ctx: _Ctx, raw: dict, path: str) -> Optional[TokenPolicy]:
    _check_keys(ctx, raw, {"name", "supply", "timing", "initial_supply", "emission_schedule",
                           "distribution", "value_capture", "price_management",
                           "demand_driven"}, path)
    name = _get_str(ctx, raw, "name", path)
    timing = _enum(ctx, Timing, raw.get("timing"), f"{path}.timing")

    supply = None
    raw_supply = _get_map(ctx, raw, "supply", path)
    if raw_supply is not None:
        spath = f"{path}.supply"
        _check_keys(ctx, raw_supply, {"kind", "s_max", "inflationary_constraint",
                                      "annual_inflation_pct"}, spath)
        kind = raw_supply.get("kind")
        if kind not in ("capped", "uncapped"):
            ctx.enum_error(f"{spath}.kind", kind, ["capped", "uncapped"])
        else:
            s_max = _get_fraction(ctx, raw_supply, "s_max", spath, required=False)
            if kind == "capped" and s_max is None:
                ctx.error(f"{spath}.s_max", "capped supply requires s_max")
            elif kind == "uncapped" and s_max is not None:
                ctx.error(f"{spath}.s_max", "uncapped supply must not define s_max")
            else:
                supply = SupplyPolicySpec(
                    kind=kind,
                    s_max=s_max,
                    inflationary_constraint=_get_bool(
                        ctx, raw_supply, "inflationary_constraint", spath
                    ),
                    annual_inflation_pct=_get_fraction(
                        ctx, raw_supply, "annual_inflation_pct", spath, required=False
                    ),
                )

    initial_supply = _get_fraction(ctx, raw, "initial_supply", path, required=False)
    if initial_supply is not None and initial_supply < 0:
        ctx.error(f"{path}.initial_supply", "must be non-negative")
        initial_supply = None

    emissions = []
    raw_emissions = raw.get("emission_schedule")
    if raw_emissions is not None:
        if not isinstance(raw_emissions, list):
            ctx.error(f"{path}.emission_schedule", "expected a list")
        else:
            for i, item in enumerate(raw_emissions):
                epath = f"{path}.emission_schedule[{i}]"
                if not isinstance(item, dict):
                    ctx.error(epath, "expected a mapping")
                    continue
                _check_keys(ctx, item, {"epoch", "minted", "burned"}, epath)
                epoch = _get_int(ctx, item, "epoch", epath)
                minted = _get_fraction(ctx, item, "minted", epath)
                burned = _get_fraction(ctx, item, "burned", epath, required=False) or Fraction(0)
                if epoch is not None and minted is not None:
                    if epoch < 1:
                        ctx.error(f"{epath}.epoch", "epochs start at 1")
                    elif minted < 0 or burned < 0:
                        ctx.error(epath, "minted and burned must be non-negative")
                    else:
                        emissions.append(EmissionStep(epoch=epoch, minted=minted, burned=burned))

    allocations = []
    for i, item in enumerate(_get_list(ctx, raw, "distribution", path) or []):
        apath = f"{path}.distribution[{i}]"
        if not isinstance(item, dict):
            ctx.error(apath, "expected a mapping")
            continue
        _check_keys(ctx, item, {"channel", "share", "vesting", "illustrative"}, apath)
        channel = _enum(ctx, Channel, item.get("channel"), f"{apath}.channel")
        share = _get_fraction(ctx, item, "share", apath)
        if share is not None and not 0 <= share <= 1:
            ctx.error(f"{apath}.share", f"share must lie in [0, 1], got {share}")
            share = None
        vesting = None
        raw_vesting = item.get("vesting")
        if raw_vesting is not None:
            vpath = f"{apath}.vesting"
            if not isinstance(raw_vesting, dict):
                ctx.error(vpath, "expected a mapping")
            else:
                _check_keys(ctx, raw_vesting, {"start_epoch", "cliff_epochs",
                                               "duration_epochs"}, vpath)
                start = _get_int(ctx, raw_vesting, "start_epoch", vpath, required=False, default=0)
                cliff = _get_int(ctx, raw_vesting, "cliff_epochs", vpath, required=False, default=0)
                duration = _get_int(ctx, raw_vesting, "duration_epochs", vpath,
                                    required=False, default=1)
                if None not in (start, cliff, duration):
                    if duration < 1:
                        ctx.error(f"{vpath}.duration_epochs", "must be >= 1")
                    elif cliff < 0 or start < 0:
                        ctx.error(vpath, "epochs must be non-negative")
                    elif cliff > duration:
                        ctx.error(vpath, "cliff cannot exceed duration")
                    else:
                        vesting = VestingSpec(
                            start_epoch=start, cliff_epochs=cliff, duration_epochs=duration
                        )
        if channel is not None and share is not None:
            allocations.append(
                Allocation(
                    channel=channel,
                    share=share,
                    vesting=vesting,
                    illustrative=_get_bool(ctx, item, "illustrative", apath),
                )
            )

    value_capture = _enum_list(ctx, ValueCapture, _get_list(ctx, raw, "value_capture", path),
                               f"{path}.value_capture")
    price_management = _enum_list(ctx, PriceLever,
                                  _get_list(ctx, raw, "price_management", path),
                                  f"{path}.price_management")

    if name is None or supply is None or timing is None:
        return None
    return TokenPolicy(
        name=name,
        supply=supply,
        timing=timing,
        distribution=tuple(allocations),
        value_capture=value_capture,
        price_management=price_management,
        initial_supply=initial_supply if initial_supply is not None else Fraction(0),
        emission_schedule=tuple(sorted(emissions, key=lambda e: e.epoch)),
        demand_driven=_get_bool(ctx, raw, "demand_driven", path),
    )


def parse_spec(document) -> EconomySpec:
    """Parse a YAML/JSON text or an already-decoded mapping into an EconomySpec.

    Raises SchemaError (or its UnknownEnumValue specialization for a single
    bad enum) carrying every issue found, each with a document path.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = yaml.safe_load(document)
        except yaml.YAMLError as exc:
            raise SchemaError([ParseIssue(path="$", message=f"not valid YAML/JSON: {exc}")])
    if not isinstance(document, dict):
        raise SchemaError([ParseIssue(path="$", message="document must be a mapping")])

    ctx = _Ctx()
    _check_keys(ctx, document, {"tedm_version", "name", "description", "incentives",
                                "governance", "tokenomics"}, "")

    version = _get_int(ctx, document, "tedm_version", "", required=True)
    name = _get_str(ctx, document, "name", "", required=True)
    description = document.get("description")
    if description is not None and not isinstance(description, str):
        ctx.error("description", "expected a string")
        description = None

    raw_incentives = _get_map(ctx, document, "incentives", "")
    raw_governance = _get_map(ctx, document, "governance", "")
    raw_tokenomics = _get_map(ctx, document, "tokenomics", "")

    incentives = _parse_incentives(ctx, raw_incentives) if raw_incentives is not None else None
    governance = _parse_governance(ctx, raw_governance) if raw_governance is not None else None

    tokens = []
    if raw_tokenomics is not None:
        _check_keys(ctx, raw_tokenomics, {"tokens"}, "tokenomics")
        for i, item in enumerate(_get_list(ctx, raw_tokenomics, "tokens", "tokenomics") or []):
            tpath = f"tokenomics.tokens[{i}]"
            if not isinstance(item, dict):
                ctx.error(tpath, "expected a mapping")
                continue
            token = _parse_token(ctx, item, tpath)
            if token is not None:
                tokens.append(token)

    if ctx.issues:
        if len(ctx.issues) == 1 and len(ctx.enum_issues) == 1:
            path, value, allowed, suggestion = ctx.enum_issues[0]
            raise UnknownEnumValue(path=path, value=value, allowed=allowed,
                                   suggestion=suggestion)
        raise SchemaError(ctx.issues)

    assert version is not None and name is not None
    assert incentives is not None and governance is not None
    return EconomySpec(
        tedm_version=version,
        name=name,
        incentives=incentives,
        governance=governance,
        tokenomics=Tokenomics(tokens=tuple(tokens)),
        description=description,
        unknown_fields=tuple(sorted(ctx.unknown)),
    )


# --- canonical serialization --------------------------------------------------


def _num(value: Fraction):
    return canonical_number(value)


def spec_to_document(spec: EconomySpec) -> dict:
    """Plain-data canonical form of a spec: enums as strings, exact numbers."""
    doc: dict = {
        "tedm_version": spec.tedm_version,
        "name": spec.name,
        "incentives": {
            "stakeholders": [
                {"name": s.name, "category": s.category.value}
                for s in spec.incentives.stakeholders
            ],
            "functions": list(spec.incentives.functions),
            "desirable_behaviors": [
                {"stakeholder": b.stakeholder, "behavior": b.behavior}
                for b in spec.incentives.desirable_behaviors
            ],
            "incentive_mechanisms": [
                {
                    "type": m.type.value,
                    "class": m.mechanism_class.value,
                    "targets": list(m.targets),
                    **({"description": m.description} if m.description else {}),
                }
                for m in spec.incentives.incentive_mechanisms
            ],
        },
    }
    if spec.description:
        doc["description"] = spec.description

    gov = spec.governance
    gov_doc: dict = {
        "areas": [a.value for a in gov.areas],
        "decentralization_target": gov.decentralization_target.value,
        "chosen_mechanism": _mechanism_doc(gov.chosen_mechanism),
    }
    if gov.required_properties:
        gov_doc["required_properties"] = dict(sorted(gov.required_properties.items()))
    if gov.onchain_offchain:
        gov_doc["onchain_offchain"] = {
            area.value: venue.value for area, venue in sorted(
                gov.onchain_offchain.items(), key=lambda kv: kv[0].value
            )
        }
    if gov.support_mechanisms:
        gov_doc["support_mechanisms"] = [s.value for s in gov.support_mechanisms]
    if gov.numeric_targets.max_gini is not None or gov.numeric_targets.min_nakamoto is not None:
        targets = {}
        if gov.numeric_targets.max_gini is not None:
            targets["max_gini"] = _num(gov.numeric_targets.max_gini)
        if gov.numeric_targets.min_nakamoto is not None:
            targets["min_nakamoto"] = gov.numeric_targets.min_nakamoto
        gov_doc["numeric_targets"] = targets
    if gov.roles:
        gov_doc["roles"] = [
            {"stakeholder": r.stakeholder, "rights": [x.value for x in r.rights]}
            for r in gov.roles
        ]
    doc["governance"] = gov_doc

    doc["tokenomics"] = {"tokens": [_token_doc(t) for t in spec.tokenomics.tokens]}
    return doc


def _mechanism_doc(choice: MechanismChoice) -> dict:
    out: dict = {"family": choice.family.value}
    if choice.alpha is not None:
        out["alpha"] = _num(choice.alpha)
    if choice.horizon is not None:
        out["horizon"] = choice.horizon
    if choice.lock_max is not None:
        out["lock_max"] = choice.lock_max
    if choice.credit_budget is not None:
        out["credit_budget"] = _num(choice.credit_budget)
    if choice.stake_scale is not None:
        out["stake_scale"] = _num(choice.stake_scale)
    return out


def _token_doc(token: TokenPolicy) -> dict:
    supply: dict = {"kind": token.supply.kind}
    if token.supply.s_max is not None:
        supply["s_max"] = _num(token.supply.s_max)
    if token.supply.inflationary_constraint:
        supply["inflationary_constraint"] = True
    if token.supply.annual_inflation_pct is not None:
        supply["annual_inflation_pct"] = _num(token.supply.annual_inflation_pct)
    out: dict = {
        "name": token.name,
        "supply": supply,
        "timing": token.timing.value,
        "distribution": [],
        "value_capture": [v.value for v in token.value_capture],
        "price_management": [p.value for p in token.price_management],
    }
    for alloc in token.distribution:
        entry: dict = {"channel": alloc.channel.value, "share": _num(alloc.share)}
        if alloc.vesting is not None:
            entry["vesting"] = {
                "start_epoch": alloc.vesting.start_epoch,
                "cliff_epochs": alloc.vesting.cliff_epochs,
                "duration_epochs": alloc.vesting.duration_epochs,
            }
        if alloc.illustrative:
            entry["illustrative"] = True
        out["distribution"].append(entry)
    if token.initial_supply:
        out["initial_supply"] = _num(token.initial_supply)
    if token.emission_schedule:
        out["emission_schedule"] = [
            {
                "epoch": e.epoch,
                "minted": _num(e.minted),
                **({"burned": _num(e.burned)} if e.burned else {}),
            }
            for e in token.emission_schedule
        ]
    if token.demand_driven:
        out["demand_driven"] = True
    return out


def normalize_and_serialize(spec: EconomySpec) -> str:
    """Canonical YAML text: sorted keys, LF endings, stable across re-parse."""
    return yaml.safe_dump(
        spec_to_document(spec),
        sort_keys=True,
        allow_unicode=True,
        default_flow_style=False,
        width=10_000,
    )


def load_fixture(name: str) -> EconomySpec:
    """Parse one of the packaged example specs by bare name."""
    text = resources.files("tokenlab.fixtures").joinpath(f"{name}.yaml").read_text()
    return parse_spec(text)
