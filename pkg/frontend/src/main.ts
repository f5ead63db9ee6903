// App shell: tab wiring, the step wizard, what-if simulation, comparison,
// metrics, and the provenance (debug) panel. All numbers rendered anywhere
// come from hash-tagged service responses held in the SessionStore.

import * as api from "./api";
import { escapeHtml } from "./charts";
import {
  renderComparison,
  renderFindings,
  renderMatrix,
  renderMetrics,
  renderProvenance,
  renderRecommendation,
  renderRunPanels,
  renderStreamRow,
} from "./panels";
import { SessionStore } from "./state";
import type { EpochSummary, ValidateResponse } from "./types";
import {
  CHANNELS,
  FAMILIES,
  GOVERNANCE_AREAS,
  MECHANISM_TYPES,
  PRICE_LEVERS,
  PROPERTIES,
  STAKEHOLDER_CATEGORIES,
  STEPS,
  SUPPORT_MECHANISMS,
  VALUE_CAPTURE,
  type WizardDraft,
  demoDraft,
  serializeDraft,
  stableStringify,
} from "./wizard";

const store = new SessionStore();
let draft: WizardDraft = demoDraft();
let activeStep = STEPS[0]!.id;

const TABS = ["design", "simulate", "compare", "metrics", "matrix", "provenance"] as const;
type Tab = (typeof TABS)[number];
let activeTab: Tab = "design";

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el;
}

function html(target: HTMLElement, markup: string): void {
  target.innerHTML = markup;
}

// --- design tab -----------------------------------------------------------------

function multiSelect(name: string, options: string[], selected: string[]): string {
  const boxes = options
    .map(
      (option) =>
        `<label style="display:inline-flex;gap:0.3rem;align-items:center;width:auto;margin-right:0.8rem">` +
        `<input type="checkbox" style="width:auto" data-multi="${name}" value="${option}" ` +
        `${selected.includes(option) ? "checked" : ""}/> ${option}</label>`,
    )
    .join("");
  return `<div>${boxes}</div>`;
}

function select(name: string, options: string[], value: string): string {
  const opts = options
    .map((o) => `<option value="${o}" ${o === value ? "selected" : ""}>${o}</option>`)
    .join("");
  return `<select data-field="${name}">${opts}</select>`;
}

function stepForm(): string {
  const step = STEPS.find((s) => s.id === activeStep)!;
  const purpose = `<p class="purpose">${escapeHtml(step.purpose)}</p>`;
  switch (step.id) {
    case "stakeholders":
      return (
        purpose +
        draft.stakeholders
          .map(
            (s, i) =>
              `<div class="row">` +
              `<div><label>name</label><input data-list="stakeholders" data-idx="${i}" data-key="name" value="${escapeHtml(s.name)}"/></div>` +
              `<div><label>category</label><select data-list="stakeholders" data-idx="${i}" data-key="category">` +
              STAKEHOLDER_CATEGORIES.map(
                (c) => `<option ${c === s.category ? "selected" : ""}>${c}</option>`,
              ).join("") +
              `</select></div>` +
              `<button data-remove="stakeholders" data-idx="${i}">×</button></div>`,
          )
          .join("") +
        `<div class="toolbar"><button data-add="stakeholders">add stakeholder</button></div>`
      );
    case "functions":
      return (
        purpose +
        `<label>one function per line</label>` +
        `<textarea data-lines="functions">${escapeHtml(draft.functions.join("\n"))}</textarea>`
      );
    case "behaviors":
      return (
        purpose +
        draft.behaviors
          .map(
            (b, i) =>
              `<div class="row">` +
              `<div><label>stakeholder</label><select data-list="behaviors" data-idx="${i}" data-key="stakeholder">` +
              draft.stakeholders
                .map((s) => `<option ${s.name === b.stakeholder ? "selected" : ""}>${escapeHtml(s.name)}</option>`)
                .join("") +
              `</select></div>` +
              `<div><label>behavior</label><input data-list="behaviors" data-idx="${i}" data-key="behavior" value="${escapeHtml(b.behavior)}"/></div>` +
              `<button data-remove="behaviors" data-idx="${i}">×</button></div>`,
          )
          .join("") +
        `<div class="toolbar"><button data-add="behaviors">add behavior</button></div>`
      );
    case "mechanisms":
      return (
        purpose +
        draft.mechanisms
          .map(
            (m, i) =>
              `<div class="card"><div class="row">` +
              `<div><label>type</label><select data-list="mechanisms" data-idx="${i}" data-key="type">` +
              Object.keys(MECHANISM_TYPES)
                .map((t) => `<option ${t === m.type ? "selected" : ""}>${t}</option>`)
                .join("") +
              `</select></div>` +
              `<div><label>class (from taxonomy)</label><input disabled value="${MECHANISM_TYPES[m.type]}"/></div>` +
              `<button data-remove="mechanisms" data-idx="${i}">×</button></div>` +
              `<label>targets</label>` +
              multiSelect(`mechanisms.${i}.targets`, draft.stakeholders.map((s) => s.name), m.targets) +
              `<label>description</label>` +
              `<input data-list="mechanisms" data-idx="${i}" data-key="description" value="${escapeHtml(m.description ?? "")}"/>` +
              `</div>`,
          )
          .join("") +
        `<div class="toolbar"><button data-add="mechanisms">add mechanism</button></div>`
      );
    case "areas":
      return purpose + multiSelect("areas", GOVERNANCE_AREAS, draft.areas);
    case "roles":
      return (
        purpose +
        draft.roles
          .map(
            (r, i) =>
              `<div class="card"><div class="row">` +
              `<div><label>stakeholder</label><select data-list="roles" data-idx="${i}" data-key="stakeholder">` +
              draft.stakeholders
                .map((s) => `<option ${s.name === r.stakeholder ? "selected" : ""}>${escapeHtml(s.name)}</option>`)
                .join("") +
              `</select></div>` +
              `<button data-remove="roles" data-idx="${i}">×</button></div>` +
              `<label>rights</label>` +
              multiSelect(`roles.${i}.rights`, ["propose", "deliberate", "vote", "execute", "oversee"], r.rights) +
              `</div>`,
          )
          .join("") +
        `<div class="toolbar"><button data-add="roles">add role</button></div>`
      );
    case "decentralization":
      return (
        purpose +
        `<label>target</label>` +
        select("decentralizationTarget", ["private_centralized", "public_centralized", "public_decentralized"], draft.decentralizationTarget) +
        `<label>max Gini (optional)</label><input data-field="maxGini" value="${draft.maxGini ?? ""}"/>` +
        `<label>min Nakamoto (optional)</label><input data-field="minNakamoto" type="number" value="${draft.minNakamoto ?? ""}"/>`
      );
    case "venues":
      return (
        purpose +
        draft.areas
          .map(
            (area) =>
              `<label>${area}</label><select data-venue="${area}">` +
              ["onchain", "offchain", "hybrid"]
                .map((v) => `<option ${draft.venues[area] === v ? "selected" : ""}>${v}</option>`)
                .join("") +
              `</select>`,
          )
          .join("")
      );
    case "properties":
      return (
        purpose +
        PROPERTIES.map(
          (prop) =>
            `<label>${prop}</label><select data-prop="${prop}">` +
            ["none", "0", "1", "2"]
              .map((v) => {
                const current =
                  prop in draft.requiredProperties ? String(draft.requiredProperties[prop]) : "none";
                return `<option ${current === v ? "selected" : ""}>${v}</option>`;
              })
              .join("") +
            `</select>`,
        ).join("") +
        `<div id="recommend-panel" class="card"><h2>recommended for these minimums</h2><div id="recommend-body" class="muted">…</div></div>`
      );
    case "mechanism":
      return (
        purpose +
        `<label>family</label>` +
        select("mechanismFamily", FAMILIES, draft.mechanismFamily) +
        `<label>conviction decay alpha (optional)</label>` +
        `<input data-field="mechanismAlpha" value="${draft.mechanismParams.alpha ?? ""}"/>` +
        `<label>escrow lock max (optional)</label>` +
        `<input data-field="mechanismLockMax" type="number" value="${draft.mechanismParams.lockMax ?? ""}"/>`
      );
    case "supports":
      return purpose + multiSelect("supportMechanisms", SUPPORT_MECHANISMS, draft.supportMechanisms);
    case "supply":
    case "timing":
    case "distribution":
    case "value":
    case "price":
      return purpose + tokenForms(step.id);
    default:
      return purpose;
  }
}

function tokenForms(stepId: string): string {
  return (
    draft.tokens
      .map((token, t) => {
        let body = "";
        if (stepId === "supply") {
          body =
            `<label>kind</label><select data-token="${t}" data-key="supplyKind">` +
            ["capped", "uncapped"]
              .map((k) => `<option ${token.supplyKind === k ? "selected" : ""}>${k}</option>`)
              .join("") +
            `</select>` +
            `<label>cap (s_max, capped only)</label>` +
            `<input data-token="${t}" data-key="sMax" value="${token.sMax ?? ""}"/>`;
        } else if (stepId === "timing") {
          body =
            `<label>timing</label><select data-token="${t}" data-key="timing">` +
            ["pre_launch", "post_launch", "hybrid"]
              .map((k) => `<option ${token.timing === k ? "selected" : ""}>${k}</option>`)
              .join("") +
            `</select>`;
        } else if (stepId === "distribution") {
          body =
            token.distribution
              .map(
                (alloc, i) =>
                  `<div class="row">` +
                  `<div><label>channel</label><select data-alloc="${t}.${i}" data-key="channel">` +
                  CHANNELS.map((c) => `<option ${alloc.channel === c ? "selected" : ""}>${c}</option>`).join("") +
                  `</select></div>` +
                  `<div><label>share</label><input data-alloc="${t}.${i}" data-key="share" value="${escapeHtml(alloc.share)}"/></div>` +
                  `<div><label>vest (cliff/duration)</label><input data-alloc="${t}.${i}" data-key="vest" placeholder="e.g. 2/8" value="${alloc.vesting ? `${alloc.vesting.cliff_epochs}/${alloc.vesting.duration_epochs}` : ""}"/></div>` +
                  `<button data-remove-alloc="${t}.${i}">×</button></div>`,
              )
              .join("") +
            `<div class="toolbar"><button data-add-alloc="${t}">add allocation</button></div>`;
        } else if (stepId === "value") {
          body = multiSelect(`tokens.${t}.valueCapture`, VALUE_CAPTURE, token.valueCapture);
        } else if (stepId === "price") {
          body = multiSelect(`tokens.${t}.priceManagement`, PRICE_LEVERS, token.priceManagement);
        }
        return `<div class="card"><h2>token: ${escapeHtml(token.name)}</h2>${body}</div>`;
      })
      .join("") || `<p class="muted">no tokens yet</p>`
  );
}

let validateTimer: number | undefined;

function scheduleValidate(): void {
  window.clearTimeout(validateTimer);
  validateTimer = window.setTimeout(runValidate, 300);
}

async function runValidate(): Promise<void> {
  const ticket = store.begin("findings");
  const document = serializeDraft(draft);
  const response = await api.validateDocument(document);
  if (store.accept("findings", ticket, response.content_hash ?? "", response)) {
    const panel = store.get<ValidateResponse>("findings");
    html($("findings-panel"), renderFindings(panel!.data));
    html($("draft-preview"), `<pre>${escapeHtml(stableStringify(document))}</pre>`);
    renderProvenancePanel();
  }
  if (activeStep === "properties") {
    void refreshRecommendation();
  }
}

async function refreshRecommendation(): Promise<void> {
  const ticket = store.begin("recommend");
  const response = await api.recommend(draft.requiredProperties, ["simplicity"]);
  if (store.accept("recommend", ticket, response.content_hash, response)) {
    const body = document.getElementById("recommend-body");
    if (body) {
      html(body as HTMLElement, renderRecommendation(response));
    }
    renderProvenancePanel();
  }
}

function renderDesignTab(): void {
  const steps = STEPS.map(
    (step) =>
      `<li class="${step.id === activeStep ? "active" : ""}" data-step="${step.id}">` +
      `<span class="pillar-tag">${step.pillar}</span>${escapeHtml(step.title)}</li>`,
  ).join("");
  html(
    $("tab-design"),
    `<div class="layout">` +
      `<div class="card"><h2>design steps</h2><ul class="steps">${steps}</ul>` +
      `<div class="toolbar"><button id="load-fixture">load example…</button></div></div>` +
      `<div class="card"><h2 id="step-title"></h2><div id="step-form"></div></div>` +
      `<div>` +
      `<div class="card"><h2>validation</h2><div id="findings-panel" class="muted">editing…</div></div>` +
      `<div class="card"><h2>document</h2><div id="draft-preview" class="muted"></div></div>` +
      `</div></div>`,
  );
  renderStepForm();
  scheduleValidate();
}

function renderStepForm(): void {
  const step = STEPS.find((s) => s.id === activeStep)!;
  html($("step-title"), `${step.pillar} · ${escapeHtml(step.title)}`);
  html($("step-form"), stepForm());
  if (activeStep === "properties") {
    void refreshRecommendation();
  }
}

function handleDesignEvents(root: HTMLElement): void {
  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const stepEl = target.closest("[data-step]") as HTMLElement | null;
    if (stepEl) {
      activeStep = stepEl.dataset.step!;
      renderStepForm();
      return;
    }
    if (target.id === "load-fixture") {
      void loadFixtureIntoCompare();
      return;
    }
    const add = target.dataset.add;
    if (add === "stakeholders") draft.stakeholders.push({ name: "new_group", category: "users" });
    if (add === "behaviors")
      draft.behaviors.push({ stakeholder: draft.stakeholders[0]?.name ?? "", behavior: "" });
    if (add === "mechanisms")
      draft.mechanisms.push({ type: "token_rewards", klass: "monetary", targets: [] });
    if (add === "roles")
      draft.roles.push({ stakeholder: draft.stakeholders[0]?.name ?? "", rights: ["vote"] });
    const addAlloc = target.dataset.addAlloc;
    if (addAlloc !== undefined) {
      draft.tokens[Number(addAlloc)]?.distribution.push({ channel: "public_sale", share: "0" });
    }
    const removeAlloc = target.dataset.removeAlloc;
    if (removeAlloc !== undefined) {
      const [t, i] = removeAlloc.split(".").map(Number);
      draft.tokens[t!]?.distribution.splice(i!, 1);
    }
    const remove = target.dataset.remove;
    if (remove !== undefined) {
      const idx = Number(target.dataset.idx);
      (draft as unknown as Record<string, unknown[]>)[remove]?.splice(idx, 1);
    }
    if (add || addAlloc !== undefined || removeAlloc !== undefined || remove !== undefined) {
      renderStepForm();
      scheduleValidate();
    }
  });

  root.addEventListener("input", (event) => {
    const target = event.target as HTMLInputElement | HTMLSelectElement | HTMLTextAreaElement;
    applyEdit(target);
    scheduleValidate();
  });
}

function applyEdit(el: HTMLInputElement | HTMLSelectElement | HTMLTextAreaElement): void {
  const d = el.dataset;
  if (d.lines === "functions") {
    draft.functions = el.value.split("\n").map((line) => line.trim()).filter(Boolean);
    return;
  }
  if (d.list !== undefined && d.idx !== undefined && d.key !== undefined) {
    const row = (draft as unknown as Record<string, Array<Record<string, unknown>>>)[d.list]?.[
      Number(d.idx)
    ];
    if (row) {
      row[d.key] = el.value;
      if (d.list === "mechanisms" && d.key === "type") {
        row.klass = MECHANISM_TYPES[el.value]!;
        renderStepForm();
      }
    }
    return;
  }
  if (d.multi !== undefined) {
    const checked = el as HTMLInputElement;
    const apply = (list: string[]): string[] => {
      const set = new Set(list);
      if (checked.checked) set.add(checked.value);
      else set.delete(checked.value);
      return [...set];
    };
    if (d.multi === "areas") draft.areas = apply(draft.areas);
    else if (d.multi === "supportMechanisms") draft.supportMechanisms = apply(draft.supportMechanisms);
    else if (d.multi.startsWith("mechanisms.")) {
      const idx = Number(d.multi.split(".")[1]);
      draft.mechanisms[idx]!.targets = apply(draft.mechanisms[idx]!.targets);
    } else if (d.multi.startsWith("roles.")) {
      const idx = Number(d.multi.split(".")[1]);
      draft.roles[idx]!.rights = apply(draft.roles[idx]!.rights);
    } else if (d.multi.startsWith("tokens.")) {
      const [, t, key] = d.multi.split(".");
      const token = draft.tokens[Number(t)]!;
      if (key === "valueCapture") token.valueCapture = apply(token.valueCapture);
      if (key === "priceManagement") token.priceManagement = apply(token.priceManagement);
    }
    return;
  }
  if (d.venue !== undefined) {
    draft.venues[d.venue] = el.value;
    return;
  }
  if (d.prop !== undefined) {
    if (el.value === "none") delete draft.requiredProperties[d.prop];
    else draft.requiredProperties[d.prop] = Number(el.value);
    void refreshRecommendation();
    return;
  }
  if (d.token !== undefined && d.key !== undefined) {
    const token = draft.tokens[Number(d.token)]!;
    if (d.key === "supplyKind") token.supplyKind = el.value as "capped" | "uncapped";
    else if (d.key === "sMax") token.sMax = el.value || undefined;
    else if (d.key === "timing") token.timing = el.value;
    return;
  }
  if (d.alloc !== undefined && d.key !== undefined) {
    const [t, i] = d.alloc.split(".").map(Number);
    const alloc = draft.tokens[t!]!.distribution[i!]!;
    if (d.key === "channel") alloc.channel = el.value;
    else if (d.key === "share") alloc.share = el.value;
    else if (d.key === "vest") {
      const match = el.value.match(/^(\d+)\/(\d+)$/);
      alloc.vesting = match
        ? { start_epoch: 0, cliff_epochs: Number(match[1]), duration_epochs: Number(match[2]) }
        : undefined;
    }
    return;
  }
  const field = d.field;
  if (field === "decentralizationTarget") draft.decentralizationTarget = el.value;
  else if (field === "maxGini") draft.maxGini = el.value || undefined;
  else if (field === "minNakamoto") draft.minNakamoto = el.value ? Number(el.value) : undefined;
  else if (field === "mechanismFamily") draft.mechanismFamily = el.value;
  else if (field === "mechanismAlpha") draft.mechanismParams.alpha = el.value || undefined;
  else if (field === "mechanismLockMax")
    draft.mechanismParams.lockMax = el.value ? Number(el.value) : undefined;
}

// --- simulate tab ----------------------------------------------------------------

function renderSimulateTab(): void {
  html(
    $("tab-simulate"),
    `<div class="two-col">` +
      `<div class="card"><h2>what-if run</h2>` +
      `<label>preset</label><select id="sim-preset"><option value="">(custom scenario below)</option></select>` +
      `<label>spec</label><select id="sim-spec"><option value="">preset default</option>` +
      `<option value="__draft__">current wizard draft</option></select>` +
      `<label>epochs</label><input id="sim-epochs" type="number" value="100"/>` +
      `<label>seed</label><input id="sim-seed" type="number" value="2026"/>` +
      `<label>custom scenario (YAML/JSON, used when no preset)</label>` +
      `<textarea id="sim-scenario" placeholder="name: my-scenario\nspec: uniswap\n..."></textarea>` +
      `<div class="toolbar"><button id="sim-run">run</button><span id="sim-status" class="muted"></span></div>` +
      `<table><thead><tr><th>epoch</th><th>supply</th><th>price</th><th>gini</th><th>nakamoto</th><th>events</th></tr></thead>` +
      `<tbody id="sim-stream" class="stream-table"></tbody></table></div>` +
      `<div class="card"><h2>results</h2><div id="sim-results" class="muted">no run yet</div></div>` +
      `</div>`,
  );
  void populateSimSelectors();
  $("sim-run").addEventListener("click", () => void runSimulation());
}

async function populateSimSelectors(): Promise<void> {
  try {
    const [{ presets }, { fixtures }] = await Promise.all([api.presets(), api.fixtures()]);
    const presetSelect = $("sim-preset") as HTMLSelectElement;
    for (const p of presets) {
      const option = document.createElement("option");
      option.value = p.name;
      option.textContent = `${p.name} — ${p.description}`;
      presetSelect.append(option);
    }
    const specSelect = $("sim-spec") as HTMLSelectElement;
    for (const f of fixtures) {
      const option = document.createElement("option");
      option.value = f;
      option.textContent = f;
      specSelect.append(option);
    }
  } catch {
    html($("sim-status"), "service unreachable");
  }
}

async function runSimulation(): Promise<void> {
  const presetName = ($("sim-preset") as HTMLSelectElement).value || undefined;
  const specChoice = ($("sim-spec") as HTMLSelectElement).value;
  const scenarioText = ($("sim-scenario") as HTMLTextAreaElement).value.trim();
  const request: api.SimulateRequest = {
    preset: presetName,
    epochs: Number(($("sim-epochs") as HTMLInputElement).value) || undefined,
    seed: Number(($("sim-seed") as HTMLInputElement).value) || undefined,
  };
  if (specChoice === "__draft__") {
    request.spec = serializeDraft(draft);
  } else if (specChoice) {
    request.spec = specChoice;
  }
  if (!presetName && scenarioText) {
    request.scenario = scenarioText;
  }
  const streamBody = $("sim-stream");
  streamBody.innerHTML = "";
  html($("sim-status"), "running…");
  const ticket = store.begin("simulation");
  try {
    const response = await api.simulateStream(request, (epoch: EpochSummary) => {
      streamBody.insertAdjacentHTML("beforeend", renderStreamRow(epoch));
    });
    if (store.accept("simulation", ticket, response.content_hash, response)) {
      html($("sim-results"), renderRunPanels(response.summary));
      html($("sim-status"), `done (hash ${response.content_hash.slice(0, 12)}…)`);
      renderProvenancePanel();
    }
  } catch (error) {
    html($("sim-status"), `failed: ${escapeHtml(String((error as Error).message ?? error))}`);
  }
}

// --- compare tab ------------------------------------------------------------------

function renderCompareTab(): void {
  html(
    $("tab-compare"),
    `<div class="card"><h2>compare designs</h2><div class="row">` +
      `<div><label>left</label><select id="cmp-a"></select></div>` +
      `<div><label>right</label><select id="cmp-b"></select></div>` +
      `<button id="cmp-run">compare</button></div>` +
      `<div id="cmp-result" class="muted">pick two designs</div></div>`,
  );
  void (async () => {
    try {
      const { fixtures } = await api.fixtures();
      for (const id of ["cmp-a", "cmp-b"]) {
        const selectEl = $(id) as HTMLSelectElement;
        selectEl.innerHTML =
          `<option value="__draft__">current wizard draft</option>` +
          fixtures.map((f) => `<option>${f}</option>`).join("");
      }
      ($("cmp-a") as HTMLSelectElement).value = "uniswap";
      ($("cmp-b") as HTMLSelectElement).value = "curve";
    } catch {
      html($("cmp-result"), "service unreachable");
    }
  })();
  $("cmp-run").addEventListener("click", () => void runCompare());
}

async function loadFixtureIntoCompare(): Promise<void> {
  activeTab = "compare";
  renderTabs();
}

async function runCompare(): Promise<void> {
  const pick = (id: string): unknown => {
    const value = ($(id) as HTMLSelectElement).value;
    return value === "__draft__" ? serializeDraft(draft) : value;
  };
  const ticket = store.begin("comparison");
  const response = await api.compare(pick("cmp-a"), pick("cmp-b"));
  if (store.accept("comparison", ticket, response.content_hash, response)) {
    html($("cmp-result"), renderComparison(response));
    renderProvenancePanel();
  }
}

// --- metrics tab -------------------------------------------------------------------

function renderMetricsTab(): void {
  html(
    $("tab-metrics"),
    `<div class="two-col"><div class="card"><h2>holder snapshot</h2>` +
      `<label>CSV (entity,weight[,lock_end])</label>` +
      `<textarea id="metrics-csv">entity,weight\na,40\nb,30\nc,20\nd,10\n</textarea>` +
      `<div class="toolbar"><button id="metrics-run">measure</button></div></div>` +
      `<div class="card"><h2>concentration</h2><div id="metrics-result" class="muted">no snapshot yet</div></div></div>`,
  );
  $("metrics-run").addEventListener("click", () => void runMetrics());
}

async function runMetrics(): Promise<void> {
  const csv = ($("metrics-csv") as HTMLTextAreaElement).value;
  const ticket = store.begin("metrics");
  try {
    const response = await api.metricsFromCsv(csv);
    if (store.accept("metrics", ticket, response.content_hash, response)) {
      html($("metrics-result"), renderMetrics(response));
      renderProvenancePanel();
    }
  } catch (error) {
    html($("metrics-result"), `failed: ${escapeHtml(String((error as Error).message ?? error))}`);
  }
}

// --- matrix + provenance tabs --------------------------------------------------------

async function renderMatrixTab(): Promise<void> {
  html($("tab-matrix"), `<div class="card"><h2>mechanism properties</h2><div id="matrix-body" class="muted">loading…</div></div>`);
  try {
    const response = await api.matrix();
    html($("matrix-body"), renderMatrix(response));
  } catch {
    html($("matrix-body"), "service unreachable");
  }
}

function renderProvenancePanel(): void {
  const target = document.getElementById("provenance-body");
  if (target) {
    html(target as HTMLElement, renderProvenance(store.provenance()));
  }
}

function renderProvenanceTab(): void {
  html(
    $("tab-provenance"),
    `<div class="card"><h2>response provenance</h2>` +
      `<p class="purpose">Every number on screen comes from a service response; this panel lists the content hash of the request behind each panel.</p>` +
      `<div id="provenance-body"></div></div>`,
  );
  renderProvenancePanel();
}

// --- shell ---------------------------------------------------------------------------

function renderTabs(): void {
  html(
    $("tabs"),
    TABS.map(
      (tab) =>
        `<button class="${tab === activeTab ? "active" : ""}" data-tab="${tab}">${tab}</button>`,
    ).join(""),
  );
  for (const tab of TABS) {
    const el = document.getElementById(`tab-${tab}`);
    if (el) {
      el.classList.toggle("active", tab === activeTab);
    }
  }
}

async function checkService(): Promise<void> {
  try {
    const response = await fetch("/api/v1/health");
    const body = await response.json();
    html($("service-status"), `service ${body.version ?? "?"} connected`);
  } catch {
    html($("service-status"), "service offline — run: tokenlab serve");
  }
}

export function bootstrap(): void {
  html(
    $("main"),
    TABS.map((tab) => `<section id="tab-${tab}" class="tab"></section>`).join(""),
  );
  renderTabs();
  renderDesignTab();
  renderSimulateTab();
  renderCompareTab();
  renderMetricsTab();
  void renderMatrixTab();
  renderProvenanceTab();
  handleDesignEvents($("tab-design"));
  $("tabs").addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest("[data-tab]") as HTMLElement | null;
    if (target) {
      activeTab = target.dataset.tab as Tab;
      renderTabs();
      if (activeTab === "provenance") {
        renderProvenancePanel();
      }
    }
  });
  void checkService();
}

if (typeof document !== "undefined" && document.getElementById("main")) {
  bootstrap();
}
