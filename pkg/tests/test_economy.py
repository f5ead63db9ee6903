import copy

import pytest
import yaml

from tokenlab.errors import SchemaError, UnknownEnumValue
from tokenlab.economy import (
    Severity,
    compare_specs,
    load_fixture,
    normalize_and_serialize,
    parse_spec,
    render_comparison_text,
    validate_spec,
)
from tokenlab.voting import recommend_mechanism

FIXTURES = ("currynomics", "uniswap", "curve", "quadratic_demo")


def minimal_doc():
    return {
        "tedm_version": 1,
        "name": "mini",
        "incentives": {
            "stakeholders": [{"name": "users", "category": "users"}],
            "functions": ["payments"],
            "desirable_behaviors": [{"stakeholder": "users", "behavior": "hold"}],
            "incentive_mechanisms": [
                {"type": "token_rewards", "class": "monetary", "targets": ["users"]}
            ],
        },
        "governance": {
            "areas": ["treasury"],
            "decentralization_target": "public_centralized",
            "chosen_mechanism": {"family": "one_token_one_vote"},
        },
        "tokenomics": {
            "tokens": [
                {
                    "name": "tok",
                    "supply": {"kind": "capped", "s_max": 1000},
                    "timing": "post_launch",
                    "distribution": [{"channel": "public_sale", "share": 1}],
                    "value_capture": ["network_value"],
                    "price_management": [],
                }
            ]
        },
    }


class TestParse:
    def test_minimal_document(self):
        spec = parse_spec(minimal_doc())
        assert spec.name == "mini"
        assert spec.tokenomics.tokens[0].supply.s_max == 1000

    def test_accepts_yaml_text(self):
        spec = parse_spec(yaml.safe_dump(minimal_doc()))
        assert spec.name == "mini"

    def test_accepts_json_text(self):
        import json

        spec = parse_spec(json.dumps(minimal_doc()))
        assert spec.name == "mini"

    def test_unknown_channel_rejected_with_allowed_list(self):
        doc = minimal_doc()
        doc["tokenomics"]["tokens"][0]["distribution"][0]["channel"] = "ico2"
        with pytest.raises(UnknownEnumValue) as exc:
            parse_spec(doc)
        assert "public_sale" in exc.value.allowed
        assert exc.value.path.endswith(".channel")

    def test_typo_in_family_suggests(self):
        doc = minimal_doc()
        doc["governance"]["chosen_mechanism"]["family"] = "quadratik"
        with pytest.raises(UnknownEnumValue) as exc:
            parse_spec(doc)
        assert exc.value.suggestion == "quadratic"

    def test_multiple_issues_collected(self):
        doc = minimal_doc()
        doc["tokenomics"]["tokens"][0]["distribution"][0]["channel"] = "ico2"
        del doc["governance"]["decentralization_target"]
        with pytest.raises(SchemaError) as exc:
            parse_spec(doc)
        assert len(exc.value.issues) == 2
        paths = {issue.path for issue in exc.value.issues}
        assert "governance.decentralization_target" in paths

    def test_capped_without_cap_rejected(self):
        doc = minimal_doc()
        del doc["tokenomics"]["tokens"][0]["supply"]["s_max"]
        with pytest.raises(SchemaError, match="s_max"):
            parse_spec(doc)

    def test_uncapped_with_cap_rejected(self):
        doc = minimal_doc()
        doc["tokenomics"]["tokens"][0]["supply"] = {"kind": "uncapped", "s_max": 5}
        with pytest.raises(SchemaError, match="s_max"):
            parse_spec(doc)

    def test_unknown_fields_kept_not_fatal(self):
        doc = minimal_doc()
        doc["future_section"] = {"x": 1}
        doc["governance"]["quorum_curve"] = "linear"
        spec = parse_spec(doc)
        assert "future_section" in spec.unknown_fields
        assert "governance.quorum_curve" in spec.unknown_fields

    def test_not_a_mapping(self):
        with pytest.raises(SchemaError):
            parse_spec("[1, 2, 3]")

    @pytest.mark.parametrize("name", FIXTURES)
    def test_fixtures_parse(self, name):
        spec = load_fixture(name)
        assert spec.name == name


class TestValidate:
    @pytest.mark.parametrize("name", FIXTURES)
    def test_fixtures_have_zero_errors(self, name):
        report = validate_spec(load_fixture(name))
        assert report.valid
        assert report.errors() == ()

    def test_share_sum_violation_is_exactly_v1(self):
        doc = minimal_doc()
        doc["tokenomics"]["tokens"][0]["distribution"] = [
            {"channel": "public_sale", "share": 0.6},
            {"channel": "airdrop", "share": 0.3},
        ]
        report = validate_spec(parse_spec(doc))
        assert not report.valid
        assert {f.rule for f in report.errors()} == {"V1"}
        assert "0.9" in report.by_rule("V1")[0].message

    def test_cap_violation_is_exactly_v2(self):
        doc = minimal_doc()
        doc["tokenomics"]["tokens"][0]["initial_supply"] = 900
        doc["tokenomics"]["tokens"][0]["emission_schedule"] = [
            {"epoch": 1, "minted": 50},
            {"epoch": 2, "minted": 100},
        ]
        report = validate_spec(parse_spec(doc))
        assert {f.rule for f in report.errors()} == {"V2"}
        assert "epoch 2" in report.by_rule("V2")[0].message

    def test_cap_respecting_schedule_passes(self):
        doc = minimal_doc()
        doc["tokenomics"]["tokens"][0]["initial_supply"] = 900
        doc["tokenomics"]["tokens"][0]["emission_schedule"] = [
            {"epoch": 1, "minted": 50},
            {"epoch": 2, "minted": 100, "burned": 60},
        ]
        assert validate_spec(parse_spec(doc)).valid

    def test_mechanism_property_violation_is_exactly_v3(self):
        doc = minimal_doc()
        doc["governance"]["required_properties"] = {"accountability": 2}
        report = validate_spec(parse_spec(doc))
        assert {f.rule for f in report.errors()} == {"V3"}

    def test_uncovered_behavior_warns_v4(self):
        doc = minimal_doc()
        doc["incentives"]["incentive_mechanisms"][0]["targets"] = []
        report = validate_spec(parse_spec(doc))
        assert report.valid
        assert report.by_rule("V4") != ()

    def test_plutocracy_warning_v5(self):
        doc = minimal_doc()
        doc["governance"]["decentralization_target"] = "public_decentralized"
        report = validate_spec(parse_spec(doc))
        assert report.valid
        assert len(report.by_rule("V5")) == 1
        # adding any support mechanism silences it
        doc["governance"]["support_mechanisms"] = ["proof_of_personhood"]
        assert validate_spec(parse_spec(doc)).by_rule("V5") == ()

    def test_currynomics_does_not_trigger_v5(self):
        report = validate_spec(load_fixture("currynomics"))
        assert report.by_rule("V5") == ()

    def test_asset_claims_prelaunch_warns_v6(self):
        doc = minimal_doc()
        doc["tokenomics"]["tokens"][0]["value_capture"] = ["asset_claims"]
        doc["tokenomics"]["tokens"][0]["timing"] = "pre_launch"
        report = validate_spec(parse_spec(doc))
        assert report.valid
        assert len(report.by_rule("V6")) == 1

    def test_undeclared_behavior_stakeholder_is_error_v7(self):
        doc = minimal_doc()
        doc["incentives"]["desirable_behaviors"].append(
            {"stakeholder": "ghosts", "behavior": "haunt"}
        )
        report = validate_spec(parse_spec(doc))
        assert {f.rule for f in report.errors()} == {"V7"}

    def test_undeclared_target_is_error_v8(self):
        doc = minimal_doc()
        doc["incentives"]["incentive_mechanisms"][0]["targets"] = ["ghosts"]
        report = validate_spec(parse_spec(doc))
        assert "V8" in {f.rule for f in report.errors()}

    def test_taxonomy_mismatch_is_error_v9(self):
        doc = minimal_doc()
        doc["incentives"]["incentive_mechanisms"][0]["class"] = "non_monetary"
        report = validate_spec(parse_spec(doc))
        assert {f.rule for f in report.errors()} == {"V9"}

    def test_future_version_warns_v11(self):
        doc = minimal_doc()
        doc["tedm_version"] = 2
        report = validate_spec(parse_spec(doc))
        assert report.valid
        assert len(report.by_rule("V11")) == 1

    def test_unknown_field_warns_v12(self):
        doc = minimal_doc()
        doc["governance"]["quorum_curve"] = "linear"
        report = validate_spec(parse_spec(doc))
        assert report.valid
        assert len(report.by_rule("V12")) == 1

    def test_deterministic(self):
        doc = minimal_doc()
        doc["governance"]["required_properties"] = {"accountability": 2, "security": 2}
        first = validate_spec(parse_spec(doc))
        second = validate_spec(parse_spec(copy.deepcopy(doc)))
        assert first == second

    @pytest.mark.parametrize("name", FIXTURES)
    def test_recommender_consistent_with_accepted_specs(self, name):
        # any accepted spec's chosen mechanism must appear in the
        # recommendation for its own required properties
        spec = load_fixture(name)
        assert validate_spec(spec).valid
        ranked = recommend_mechanism(spec.governance.required_properties)
        assert spec.governance.chosen_mechanism.family in ranked


class TestNormalize:
    @pytest.mark.parametrize("name", FIXTURES)
    def test_round_trip_byte_stable(self, name):
        spec = load_fixture(name)
        canon = normalize_and_serialize(spec)
        spec2 = parse_spec(canon)
        assert spec2 == spec
        assert normalize_and_serialize(spec2) == canon

    def test_key_reordering_is_canonicalized(self):
        doc = minimal_doc()
        reordered = dict(reversed(list(doc.items())))
        reordered["governance"] = dict(reversed(list(doc["governance"].items())))
        a = normalize_and_serialize(parse_spec(doc))
        b = normalize_and_serialize(parse_spec(reordered))
        assert a == b

    def test_comment_stripping_is_semantically_lossless(self):
        text = yaml.safe_dump(minimal_doc())
        commented = "# leading comment\n" + text.replace(
            "name: mini", "name: mini  # inline comment"
        )
        assert parse_spec(commented) == parse_spec(text)

    def test_canonical_uses_lf_and_ends_with_newline(self):
        canon = normalize_and_serialize(load_fixture("currynomics"))
        assert "\r" not in canon
        assert canon.endswith("\n")

    def test_exact_shares_survive(self):
        spec = parse_spec(minimal_doc())
        canon = normalize_and_serialize(spec)
        from fractions import Fraction

        assert parse_spec(canon).tokenomics.tokens[0].distribution[0].share == Fraction(1)


class TestCompare:
    def test_uniswap_vs_curve_rows(self):
        report = compare_specs(load_fixture("uniswap"), load_fixture("curve"))
        text = render_comparison_text(report)
        assert "1-Token-1-Vote" in text
        assert "time-weighted vote-escrow" in text
        assert "2% annual inflation reported" in text
        assert "3.03B" in text
        voting_row = next(
            row
            for pillar in report.pillars
            for row in pillar.rows
            if row.label == "voting mechanism"
        )
        assert not voting_row.identical

    def test_pillar_and_row_structure(self):
        report = compare_specs(load_fixture("uniswap"), load_fixture("curve"))
        assert [p.pillar for p in report.pillars] == ["incentives", "governance", "tokenomics"]
        assert [len(p.rows) for p in report.pillars] == [3, 4, 4]

    def test_self_comparison_identical(self):
        spec = load_fixture("curve")
        report = compare_specs(spec, spec)
        assert report.identical
        assert all(row.identical for pillar in report.pillars for row in pillar.rows)

    def test_to_dict_shape(self):
        report = compare_specs(load_fixture("uniswap"), load_fixture("uniswap"))
        payload = report.to_dict()
        assert payload["identical"] is True
        assert payload["pillars"][0]["rows"][0]["label"] == "value proposition"


class TestPublishedSchema:
    def test_fixtures_satisfy_machine_schema(self):
        jsonschema = pytest.importorskip("jsonschema")
        from importlib import resources
        import json as json_mod

        schema = json_mod.loads(
            resources.files("tokenlab.fixtures").joinpath("economy.schema.json").read_text()
        )
        validator = jsonschema.Draft202012Validator(schema)
        for name in FIXTURES:
            doc = yaml.safe_load(
                resources.files("tokenlab.fixtures").joinpath(f"{name}.yaml").read_text()
            )
            errors = list(validator.iter_errors(doc))
            assert errors == [], f"{name}: {[e.message for e in errors]}"

    def test_canonical_form_satisfies_machine_schema(self):
        jsonschema = pytest.importorskip("jsonschema")
        from importlib import resources
        import json as json_mod

        schema = json_mod.loads(
            resources.files("tokenlab.fixtures").joinpath("economy.schema.json").read_text()
        )
        validator = jsonschema.Draft202012Validator(schema)
        for name in FIXTURES:
            doc = yaml.safe_load(normalize_and_serialize(load_fixture(name)))
            errors = list(validator.iter_errors(doc))
            assert errors == [], f"{name}: {[e.message for e in errors]}"
