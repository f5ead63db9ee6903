// Inline SVG charts. Values are plotted verbatim, one point per epoch —
// no smoothing, no resampling — so what is on screen is exactly what the
// service reported.

export interface SeriesPoint {
  epoch: number;
  value: number;
}

export interface ChartOptions {
  width?: number;
  height?: number;
  markers?: number[]; // epochs to flag (e.g. capture onset)
  label?: string;
}

export function polylinePoints(
  series: SeriesPoint[],
  width: number,
  height: number,
  pad = 6,
): string {
  if (series.length === 0) {
    return "";
  }
  const values = series.map((p) => p.value);
  const epochs = series.map((p) => p.epoch);
  const minV = Math.min(...values);
  const maxV = Math.max(...values);
  const minE = Math.min(...epochs);
  const maxE = Math.max(...epochs);
  const spanV = maxV - minV || 1;
  const spanE = maxE - minE || 1;
  return series
    .map((p) => {
      const x = pad + ((p.epoch - minE) / spanE) * (width - 2 * pad);
      const y = height - pad - ((p.value - minV) / spanV) * (height - 2 * pad);
      return `${round2(x)},${round2(y)}`;
    })
    .join(" ");
}

function round2(n: number): number {
  return Math.round(n * 100) / 100;
}

export function lineChart(series: SeriesPoint[], options: ChartOptions = {}): string {
  const width = options.width ?? 420;
  const height = options.height ?? 120;
  const points = polylinePoints(series, width, height);
  const values = series.map((p) => p.value);
  const minV = values.length ? Math.min(...values) : 0;
  const maxV = values.length ? Math.max(...values) : 0;
  const markers = (options.markers ?? [])
    .map((epoch) => {
      const match = series.find((p) => p.epoch === epoch);
      if (!match) {
        return "";
      }
      const single = polylinePoints([match, match], width, height);
      const [x] = single.split(" ")[0]!.split(",");
      return `<line x1="${x}" y1="4" x2="${x}" y2="${height - 4}" class="chart-marker" />`;
    })
    .join("");
  const label = options.label
    ? `<text x="8" y="14" class="chart-label">${escapeHtml(options.label)}</text>`
    : "";
  return (
    `<svg viewBox="0 0 ${width} ${height}" class="chart" role="img">` +
    `${label}` +
    `<polyline fill="none" class="chart-line" points="${points}" />` +
    markers +
    `<text x="${width - 8}" y="14" text-anchor="end" class="chart-range">` +
    `${formatNumber(minV)} … ${formatNumber(maxV)}</text>` +
    `</svg>`
  );
}

export function formatNumber(value: number): string {
  if (!Number.isFinite(value)) {
    return String(value);
  }
  if (Math.abs(value) >= 1_000_000) {
    return value.toExponential(2);
  }
  return Number.isInteger(value) ? String(value) : String(Math.round(value * 10000) / 10000);
}

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
