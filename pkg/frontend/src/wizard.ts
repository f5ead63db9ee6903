// The guided spec editor: a draft model covering every design step across
// the three pillars, step metadata for the form UI, and a deterministic
// serializer whose output the service's validator accepts unchanged.

export interface StakeholderDraft {
  name: string;
  category: string;
}

export interface BehaviorDraft {
  stakeholder: string;
  behavior: string;
}

export interface MechanismDraft {
  type: string;
  klass: string;
  targets: string[];
  description?: string;
}

export interface RoleDraft {
  stakeholder: string;
  rights: string[];
}

export interface VestingDraft {
  start_epoch: number;
  cliff_epochs: number;
  duration_epochs: number;
}

export interface AllocationDraft {
  channel: string;
  share: string;
  vesting?: VestingDraft;
  illustrative?: boolean;
}

export interface TokenDraft {
  name: string;
  supplyKind: "capped" | "uncapped";
  sMax?: string;
  annualInflationPct?: string;
  demandDriven?: boolean;
  timing: string;
  distribution: AllocationDraft[];
  valueCapture: string[];
  priceManagement: string[];
}

export interface WizardDraft {
  name: string;
  description?: string;
  stakeholders: StakeholderDraft[];
  functions: string[];
  behaviors: BehaviorDraft[];
  mechanisms: MechanismDraft[];
  areas: string[];
  roles: RoleDraft[];
  decentralizationTarget: string;
  maxGini?: string;
  minNakamoto?: number;
  venues: Record<string, string>;
  requiredProperties: Record<string, number>;
  mechanismFamily: string;
  mechanismParams: { alpha?: string; lockMax?: number };
  supportMechanisms: string[];
  tokens: TokenDraft[];
}

export const STAKEHOLDER_CATEGORIES = [
  "users",
  "partners",
  "developers",
  "community",
  "investors",
];

export const MECHANISM_TYPES: Record<string, string> = {
  token_rewards: "monetary",
  staking: "monetary",
  liquidity_mining: "monetary",
  growth_expectations: "monetary",
  access: "non_monetary",
  reputation: "non_monetary",
  governance_participation: "non_monetary",
  network_effects: "non_monetary",
  gamification: "non_monetary",
};

export const GOVERNANCE_AREAS = [
  "treasury",
  "governance_process",
  "protocol_upgrade",
  "tokenomics",
];

export const PROPERTIES = [
  "simplicity",
  "accountability",
  "inclusivity",
  "time_efficiency",
  "preference_intensity",
  "security",
];

export const FAMILIES = [
  "one_token_one_vote",
  "conviction",
  "vote_escrow",
  "reputation_weighted",
  "quadratic",
];

export const SUPPORT_MECHANISMS = [
  "proposal_prescreening",
  "prediction_markets",
  "algorithmic_filtering",
  "delegated_voting",
  "information_design",
  "structured_deliberation",
  "proof_of_personhood",
];

export const CHANNELS = ["private_sale", "public_sale", "airdrop", "liquidity_mining", "reserve"];

export const VALUE_CAPTURE = [
  "governance_rights",
  "asset_claims",
  "network_value",
  "earnings_claims",
];

export const PRICE_LEVERS = ["burn", "staking", "buyback", "vesting"];

export interface StepInfo {
  id: string;
  pillar: "incentives" | "governance" | "tokenomics";
  title: string;
  purpose: string;
}

// One entry per design step; `purpose` is the inline guidance the form shows.
export const STEPS: StepInfo[] = [
  {
    id: "stakeholders",
    pillar: "incentives",
    title: "Identify stakeholders",
    purpose:
      "List every group the economy must serve or rely on, so incentives can be aimed at someone concrete.",
  },
  {
    id: "functions",
    pillar: "incentives",
    title: "Define economy functions",
    purpose:
      "State what the system is for: the value proposition the token carries.",
  },
  {
    id: "behaviors",
    pillar: "incentives",
    title: "Determine desirable behaviors",
    purpose:
      "Name the behaviors, per stakeholder, that keep the system healthy long-term.",
  },
  {
    id: "mechanisms",
    pillar: "incentives",
    title: "Select and specify incentive mechanisms",
    purpose:
      "Pick monetary and non-monetary mechanisms and aim each at the stakeholders whose behavior it should drive.",
  },
  {
    id: "areas",
    pillar: "governance",
    title: "Define governance areas",
    purpose: "Decide which kinds of decisions the community can actually make.",
  },
  {
    id: "roles",
    pillar: "governance",
    title: "Assign stakeholder roles",
    purpose: "For each area: who proposes, deliberates, votes, executes, oversees.",
  },
  {
    id: "decentralization",
    pillar: "governance",
    title: "Set the decentralization target",
    purpose:
      "Choose the intended openness of control, optionally with numeric concentration targets (max Gini, min Nakamoto).",
  },
  {
    id: "venues",
    pillar: "governance",
    title: "Choose on-chain vs off-chain",
    purpose: "Per area: protocol-enforced voting, informal forums, or a hybrid.",
  },
  {
    id: "properties",
    pillar: "governance",
    title: "Set desired voting properties",
    purpose:
      "Minimum scores the voting mechanism must reach; the recommender filters families against these.",
  },
  {
    id: "mechanism",
    pillar: "governance",
    title: "Pick the core voting mechanism",
    purpose:
      "Select the family meeting the requirements; the validator rejects choices below the declared minimums.",
  },
  {
    id: "supports",
    pillar: "governance",
    title: "Add support mechanisms",
    purpose:
      "Optional add-ons for proposal overload, rational ignorance, and Sybil pressure.",
  },
  {
    id: "supply",
    pillar: "tokenomics",
    title: "Define the supply policy",
    purpose: "Capped or uncapped issuance per token, with any cap amount.",
  },
  {
    id: "timing",
    pillar: "tokenomics",
    title: "Choose the timing strategy",
    purpose: "Pre-launch, post-launch, or hybrid token release.",
  },
  {
    id: "distribution",
    pillar: "tokenomics",
    title: "Plan the distribution",
    purpose:
      "Channels and exact shares (they must sum to 1), with vesting where sell pressure needs damping.",
  },
  {
    id: "value",
    pillar: "tokenomics",
    title: "Name the value-capture channels",
    purpose: "What makes the token worth holding: rights, claims, network value.",
  },
  {
    id: "price",
    pillar: "tokenomics",
    title: "Assemble the price-management toolbox",
    purpose: "Burns, staking, buybacks, vesting: the levers against volatility.",
  },
];

// JSON.stringify with recursively sorted keys; the draft fixture and the
// serializer must agree byte-for-byte.
export function stableStringify(value: unknown): string {
  return JSON.stringify(sortKeys(value), null, 2) + "\n";
}

function sortKeys(value: unknown): unknown {
  if (Array.isArray(value)) {
    return value.map(sortKeys);
  }
  if (value !== null && typeof value === "object") {
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(value as Record<string, unknown>).sort()) {
      out[key] = sortKeys((value as Record<string, unknown>)[key]);
    }
    return out;
  }
  return value;
}

// Draft -> spec document. Empty optional sections are omitted, matching the
// canonical form the service emits.
export function serializeDraft(draft: WizardDraft): Record<string, unknown> {
  const doc: Record<string, unknown> = {
    tedm_version: 1,
    name: draft.name,
    incentives: {
      stakeholders: draft.stakeholders.map((s) => ({ name: s.name, category: s.category })),
      functions: [...draft.functions],
      desirable_behaviors: draft.behaviors.map((b) => ({
        stakeholder: b.stakeholder,
        behavior: b.behavior,
      })),
      incentive_mechanisms: draft.mechanisms.map((m) => {
        const entry: Record<string, unknown> = {
          type: m.type,
          class: m.klass,
          targets: [...m.targets],
        };
        if (m.description) {
          entry.description = m.description;
        }
        return entry;
      }),
    },
  };
  if (draft.description) {
    doc.description = draft.description;
  }

  const governance: Record<string, unknown> = {
    areas: [...draft.areas],
    decentralization_target: draft.decentralizationTarget,
    chosen_mechanism: serializeMechanism(draft),
  };
  if (Object.keys(draft.requiredProperties).length > 0) {
    governance.required_properties = { ...draft.requiredProperties };
  }
  if (Object.keys(draft.venues).length > 0) {
    governance.onchain_offchain = { ...draft.venues };
  }
  if (draft.supportMechanisms.length > 0) {
    governance.support_mechanisms = [...draft.supportMechanisms];
  }
  if (draft.maxGini !== undefined || draft.minNakamoto !== undefined) {
    const targets: Record<string, unknown> = {};
    if (draft.maxGini !== undefined) {
      targets.max_gini = draft.maxGini;
    }
    if (draft.minNakamoto !== undefined) {
      targets.min_nakamoto = draft.minNakamoto;
    }
    governance.numeric_targets = targets;
  }
  if (draft.roles.length > 0) {
    governance.roles = draft.roles.map((r) => ({
      stakeholder: r.stakeholder,
      rights: [...r.rights],
    }));
  }
  doc.governance = governance;

  doc.tokenomics = { tokens: draft.tokens.map(serializeToken) };
  return doc;
}

function serializeMechanism(draft: WizardDraft): Record<string, unknown> {
  const mechanism: Record<string, unknown> = { family: draft.mechanismFamily };
  if (draft.mechanismParams.alpha !== undefined) {
    mechanism.alpha = draft.mechanismParams.alpha;
  }
  if (draft.mechanismParams.lockMax !== undefined) {
    mechanism.lock_max = draft.mechanismParams.lockMax;
  }
  return mechanism;
}

function serializeToken(token: TokenDraft): Record<string, unknown> {
  const supply: Record<string, unknown> = { kind: token.supplyKind };
  if (token.supplyKind === "capped" && token.sMax !== undefined) {
    supply.s_max = token.sMax;
  }
  if (token.annualInflationPct !== undefined) {
    supply.annual_inflation_pct = token.annualInflationPct;
  }
  const out: Record<string, unknown> = {
    name: token.name,
    supply,
    timing: token.timing,
    distribution: token.distribution.map((alloc) => {
      const entry: Record<string, unknown> = { channel: alloc.channel, share: alloc.share };
      if (alloc.vesting) {
        entry.vesting = { ...alloc.vesting };
      }
      if (alloc.illustrative) {
        entry.illustrative = true;
      }
      return entry;
    }),
    value_capture: [...token.valueCapture],
    price_management: [...token.priceManagement],
  };
  if (token.demandDriven) {
    out.demand_driven = true;
  }
  return out;
}

// A deliberately risky but structurally complete starter design: open
// participation with plain balance voting and no supports, which the
// validator flags as a plutocracy risk. Good for demonstrating findings.
export function demoDraft(): WizardDraft {
  return {
    name: "workbench_demo",
    description: "Starter design produced by the workbench wizard.",
    stakeholders: [
      { name: "holders", category: "users" },
      { name: "builders", category: "developers" },
      { name: "voters", category: "community" },
    ],
    functions: ["payments inside the ecosystem", "community-directed funding"],
    behaviors: [
      { stakeholder: "holders", behavior: "hold and use the token" },
      { stakeholder: "voters", behavior: "vote on funding proposals" },
    ],
    mechanisms: [
      {
        type: "token_rewards",
        klass: "monetary",
        targets: ["holders"],
        description: "usage rewards",
      },
      {
        type: "governance_participation",
        klass: "non_monetary",
        targets: ["voters"],
      },
    ],
    areas: ["treasury", "protocol_upgrade"],
    roles: [{ stakeholder: "voters", rights: ["propose", "vote"] }],
    decentralizationTarget: "public_decentralized",
    venues: { treasury: "onchain", protocol_upgrade: "hybrid" },
    requiredProperties: { simplicity: 2 },
    mechanismFamily: "one_token_one_vote",
    mechanismParams: {},
    supportMechanisms: [],
    tokens: [
      {
        name: "demo_token",
        supplyKind: "capped",
        sMax: "100000000",
        timing: "post_launch",
        distribution: [
          { channel: "airdrop", share: "0.4" },
          { channel: "public_sale", share: "0.35" },
          {
            channel: "private_sale",
            share: "0.25",
            vesting: { start_epoch: 0, cliff_epochs: 2, duration_epochs: 8 },
          },
        ],
        valueCapture: ["governance_rights", "network_value"],
        priceManagement: ["vesting"],
      },
    ],
  };
}

// The blank slate a new session starts from: one unnamed token with no
// distribution yet, which the validator reports as a share-sum error.
export function emptyDraft(): WizardDraft {
  return {
    name: "untitled",
    stakeholders: [{ name: "participants", category: "users" }],
    functions: [],
    behaviors: [],
    mechanisms: [],
    areas: ["treasury"],
    roles: [],
    decentralizationTarget: "public_centralized",
    venues: {},
    requiredProperties: {},
    mechanismFamily: "one_token_one_vote",
    mechanismParams: {},
    supportMechanisms: [],
    tokens: [
      {
        name: "token",
        supplyKind: "uncapped",
        timing: "post_launch",
        distribution: [],
        valueCapture: [],
        priceManagement: [],
      },
    ],
  };
}
