import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { renderFindings } from "../src/panels";
import type { ValidateResponse } from "../src/types";
import {
  MECHANISM_TYPES,
  STEPS,
  demoDraft,
  emptyDraft,
  serializeDraft,
  stableStringify,
} from "../src/wizard";

function fixture(name: string): string {
  return readFileSync(new URL(`../fixtures/${name}`, import.meta.url), "utf-8");
}

describe("wizard serialization", () => {
  it("serializes the demo draft byte-identically to the committed fixture", () => {
    // the same fixture is fed to the CLI validator in the backend test
    // suite; byte identity here is what ties the two sides together
    expect(stableStringify(serializeDraft(demoDraft()))).toBe(fixture("wizard_draft.json"));
  });

  it("serializes the empty draft byte-identically to the committed fixture", () => {
    expect(stableStringify(serializeDraft(emptyDraft()))).toBe(
      fixture("wizard_empty_draft.json"),
    );
  });

  it("emits schema-shaped documents", () => {
    const doc = serializeDraft(demoDraft()) as Record<string, any>;
    expect(doc.tedm_version).toBe(1);
    expect(doc.incentives.stakeholders.length).toBeGreaterThan(0);
    expect(doc.governance.chosen_mechanism.family).toBe("one_token_one_vote");
    expect(doc.tokenomics.tokens[0].distribution.length).toBe(3);
  });

  it("omits empty optional sections", () => {
    const doc = serializeDraft(emptyDraft()) as Record<string, any>;
    expect(doc.governance.support_mechanisms).toBeUndefined();
    expect(doc.governance.required_properties).toBeUndefined();
    expect(doc.description).toBeUndefined();
  });

  it("keeps mechanism class coupled to the taxonomy", () => {
    for (const [type, klass] of Object.entries(MECHANISM_TYPES)) {
      const draft = demoDraft();
      draft.mechanisms = [{ type, klass, targets: [] }];
      const doc = serializeDraft(draft) as Record<string, any>;
      expect(doc.incentives.incentive_mechanisms[0].class).toBe(klass);
    }
  });

  it("covers every design step with a purpose", () => {
    expect(STEPS.length).toBe(16);
    for (const step of STEPS) {
      expect(step.purpose.length).toBeGreaterThan(10);
    }
    expect(new Set(STEPS.map((s) => s.pillar))).toEqual(
      new Set(["incentives", "governance", "tokenomics"]),
    );
  });
});

describe("findings rendering", () => {
  it("shows the share-sum error inline for the empty draft", () => {
    // expected_findings_empty_draft.json is produced by the CLI validator
    // for the exact document the wizard serializes
    const expected = JSON.parse(fixture("expected_findings_empty_draft.json")) as ValidateResponse;
    expect(expected.valid).toBe(false);
    expect(expected.findings.some((f) => f.rule === "V1")).toBe(true);
    const markup = renderFindings(expected);
    expect(markup).toContain("V1");
    expect(markup).toContain("invalid");
    expect(markup).toContain("distribution");
  });

  it("shows the plutocracy warning for the demo draft", () => {
    const expected = JSON.parse(fixture("expected_findings_draft.json")) as ValidateResponse;
    expect(expected.valid).toBe(true);
    const markup = renderFindings(expected);
    expect(markup).toContain("V5");
    expect(markup).toContain("warning");
  });

  it("renders findings verbatim, field for field", () => {
    const payload: ValidateResponse = {
      valid: false,
      findings: [
        { severity: "error", rule: "V1", message: "shares sum to 0.9", path: "x.y" },
      ],
    };
    const markup = renderFindings(payload);
    expect(markup).toContain("shares sum to 0.9");
    expect(markup).toContain("x.y");
  });
});
