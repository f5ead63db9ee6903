// HTML-string renderers for the result panels. Each panel shows exactly the
// values from one hash-tagged service response.

import { escapeHtml, formatNumber, lineChart } from "./charts";
import type {
  CompareResponse,
  EpochSummary,
  Finding,
  MatrixResponse,
  MetricsResponse,
  RecommendResponse,
  SimulateSummary,
  ValidateResponse,
} from "./types";

export function renderFindings(response: ValidateResponse): string {
  const badge = response.valid
    ? `<span class="badge ok">valid</span>`
    : `<span class="badge bad">invalid</span>`;
  const rows = response.findings
    .map(
      (finding: Finding) =>
        `<li class="finding ${finding.severity}">` +
        `<span class="rule">${escapeHtml(finding.rule)}</span> ` +
        `<span class="path">${escapeHtml(finding.path)}</span> ` +
        `${escapeHtml(finding.message)}</li>`,
    )
    .join("");
  const list = rows ? `<ul class="findings">${rows}</ul>` : `<p class="muted">no findings</p>`;
  return `<div class="panel-head">${badge}</div>${list}`;
}

export function renderMetrics(response: MetricsResponse): string {
  const shares = response.top_k_shares
    .map((row) => `<tr><td>top ${row.k}</td><td>${row.share}</td></tr>`)
    .join("");
  return (
    `<dl class="stats">` +
    `<dt>holders</dt><dd>${response.holder_count}</dd>` +
    `<dt>Gini</dt><dd>${response.gini}</dd>` +
    `<dt>Nakamoto</dt><dd>${response.nakamoto}</dd>` +
    `</dl>` +
    `<table class="shares"><thead><tr><th>coalition</th><th>cumulative share</th></tr></thead>` +
    `<tbody>${shares}</tbody></table>`
  );
}

export function renderRunPanels(summary: SimulateSummary): string {
  const perEpoch = summary.per_epoch;
  const captureEpochs = summary.summary.capture_epochs;
  const supplySeries = perEpoch.map((e) => ({ epoch: e.epoch, value: Number(e.circulating) }));
  const priceSeries = perEpoch.map((e) => ({ epoch: e.epoch, value: Number(e.price) }));
  const giniSeries = perEpoch.map((e) => ({ epoch: e.epoch, value: e.gini_voting }));
  const nakamotoSeries = perEpoch.map((e) => ({ epoch: e.epoch, value: e.nakamoto_voting }));
  const flags: string[] = [];
  if (summary.summary.capture) {
    flags.push(
      `<span class="badge bad">capture at epoch ${captureEpochs[0]}</span>`,
    );
  }
  if (summary.summary.max_drawdown > 0.1) {
    flags.push(
      `<span class="badge warn">max drawdown ${formatNumber(summary.summary.max_drawdown)}</span>`,
    );
  }
  if (summary.summary.truncations > 0) {
    flags.push(`<span class="badge warn">${summary.summary.truncations} cap truncations</span>`);
  }
  return (
    `<div class="panel-head">` +
    `<strong>${escapeHtml(summary.scenario)}</strong> on ${escapeHtml(summary.spec)}, ` +
    `${summary.epochs} epochs, seed ${summary.seed} ${flags.join(" ")}</div>` +
    `<div class="charts">` +
    lineChart(supplySeries, { label: "circulating supply", markers: captureEpochs.slice(0, 1) }) +
    lineChart(priceSeries, { label: "price proxy" }) +
    lineChart(giniSeries, { label: "Gini (voting power)", markers: captureEpochs.slice(0, 1) }) +
    lineChart(nakamotoSeries, { label: "Nakamoto (voting power)", markers: captureEpochs.slice(0, 1) }) +
    `</div>` +
    renderOutcomes(summary) +
    renderEventLog(summary.events)
  );
}

function renderOutcomes(summary: SimulateSummary): string {
  const s = summary.summary;
  return (
    `<dl class="stats">` +
    `<dt>proposals</dt><dd>${s.proposals_passed} passed / ${s.proposals_failed} failed</dd>` +
    `<dt>voting Nakamoto</dt><dd>${s.min_nakamoto_voting} – ${s.max_nakamoto_voting}</dd>` +
    `<dt>final supply</dt><dd>${escapeHtml(s.final_supply)}</dd>` +
    `</dl>`
  );
}

function renderEventLog(events: string[]): string {
  if (events.length === 0) {
    return `<p class="muted">no events</p>`;
  }
  const rows = events.slice(0, 50).map((e) => `<li>${escapeHtml(e)}</li>`).join("");
  const more = events.length > 50 ? `<li class="muted">… ${events.length - 50} more</li>` : "";
  return `<details open><summary>events (${events.length})</summary><ul class="events">${rows}${more}</ul></details>`;
}

export function renderStreamRow(summary: EpochSummary): string {
  const capture = summary.capture ? ` <span class="badge bad">capture</span>` : "";
  const events = (summary.events ?? []).map(escapeHtml).join("; ");
  return (
    `<tr><td>${summary.epoch}</td><td>${escapeHtml(summary.circulating)}</td>` +
    `<td>${escapeHtml(summary.price)}</td><td>${summary.gini_voting}</td>` +
    `<td>${summary.nakamoto_voting}${capture}</td><td>${events}</td></tr>`
  );
}

export function renderComparison(response: CompareResponse): string {
  const { comparison } = response;
  const sections = comparison.pillars
    .map((pillar) => {
      const rows = pillar.rows
        .map(
          (row) =>
            `<tr class="${row.identical ? "same" : "diff"}">` +
            `<th>${escapeHtml(row.label)}</th>` +
            `<td>${escapeHtml(row.a)}</td><td>${escapeHtml(row.b)}</td></tr>`,
        )
        .join("");
      return (
        `<tbody><tr class="pillar"><th colspan="3">${escapeHtml(pillar.pillar)}</th></tr>${rows}</tbody>`
      );
    })
    .join("");
  return (
    `<table class="compare"><thead><tr><th></th>` +
    `<th>${escapeHtml(comparison.a)}</th><th>${escapeHtml(comparison.b)}</th></tr></thead>` +
    `${sections}</table>`
  );
}

export function renderRecommendation(response: RecommendResponse): string {
  if (response.no_candidate) {
    return `<p class="badge bad">no mechanism satisfies these requirements</p>`;
  }
  const rows = response.candidates
    .map((family, i) => `<li>${i + 1}. ${escapeHtml(family)}</li>`)
    .join("");
  return `<ol class="ranked">${rows}</ol>`;
}

export function renderMatrix(response: MatrixResponse): string {
  const header = response.properties.map((p) => `<th>${escapeHtml(p)}</th>`).join("");
  const rows = Object.entries(response.families)
    .map(([family, cells]) => {
      const tds = response.properties
        .map((p) => {
          const cell = cells[p]!;
          return `<td class="score-${cell.score}" title="${escapeHtml(cell.note)}">${cell.score}</td>`;
        })
        .join("");
      return `<tr><th>${escapeHtml(family)}</th>${tds}</tr>`;
    })
    .join("");
  return `<table class="matrix"><thead><tr><th></th>${header}</tr></thead><tbody>${rows}</tbody></table>`;
}

export function renderProvenance(entries: Array<{ panel: string; hash: string }>): string {
  if (entries.length === 0) {
    return `<p class="muted">nothing on screen yet</p>`;
  }
  const rows = entries
    .map(
      (e) =>
        `<tr><td>${escapeHtml(e.panel)}</td><td class="hash">${escapeHtml(e.hash)}</td></tr>`,
    )
    .join("");
  return (
    `<table class="provenance"><thead><tr><th>panel</th><th>response content hash</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}
