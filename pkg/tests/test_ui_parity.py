"""Cross-checks between the workbench frontend and the CLI/service.

The frontend's wizard serializer is frozen into committed fixture documents
(tested byte-identically on the TypeScript side); here the same documents go
through the validator used by the CLI and API, and the findings must match
the frontend's committed expectations field for field. The primary suite
runs fine without the frontend present: these tests skip if it is absent.
"""

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from tokenlab.service import ValidationFailed, create_app, handle_validate

FRONTEND_FIXTURES = Path(__file__).resolve().parents[1] / "frontend" / "fixtures"

pytestmark = pytest.mark.skipif(
    not FRONTEND_FIXTURES.is_dir(), reason="frontend not present"
)


def _load(name: str) -> dict:
    return json.loads((FRONTEND_FIXTURES / name).read_text())


def _validate(document: dict) -> dict:
    try:
        return handle_validate(document)
    except ValidationFailed as exc:
        return exc.payload


@pytest.mark.parametrize(
    "draft_name, expected_name",
    [
        ("wizard_draft.json", "expected_findings_draft.json"),
        ("wizard_empty_draft.json", "expected_findings_empty_draft.json"),
    ],
)
def test_wizard_drafts_validate_with_identical_findings(draft_name, expected_name):
    document = _load(draft_name)
    expected = _load(expected_name)
    payload = _validate(document)
    assert payload["valid"] == expected["valid"]
    assert payload["findings"] == expected["findings"]


def test_empty_draft_shows_share_sum_error():
    payload = _validate(_load("wizard_empty_draft.json"))
    assert not payload["valid"]
    assert any(f["rule"] == "V1" for f in payload["findings"])


def test_demo_draft_flags_plutocracy():
    payload = _validate(_load("wizard_draft.json"))
    assert payload["valid"]
    assert any(f["rule"] == "V5" for f in payload["findings"])


def test_http_validate_matches_frontend_expectations():
    client = TestClient(create_app())
    for draft_name, expected_name in (
        ("wizard_draft.json", "expected_findings_draft.json"),
        ("wizard_empty_draft.json", "expected_findings_empty_draft.json"),
    ):
        response = client.post("/api/v1/validate", json={"document": _load(draft_name)})
        assert response.status_code in (200, 422)
        body = response.json()
        expected = _load(expected_name)
        assert body["valid"] == expected["valid"]
        assert body["findings"] == expected["findings"]
