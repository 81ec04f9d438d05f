import { FigureData, Point, Series } from "./csv.js";

const WIDTH = 840;
const HEIGHT = 520;
const MARGIN = { top: 30, right: 30, bottom: 50, left: 90 };

const SERIES_STYLE: Record<string, string> = {
  log2_f: "#1f77b4",
  log2_fc: "#d62728",
  U_k: "#1f77b4",
  Qmax: "#d62728",
};

const AXIS_LABELS: Record<string, [string, string]> = {
  fig1: ["k (channel uses)", "log2 gap (bits)"],
  fig2: ["k (channel uses)", "bound value (bits)"],
};

interface Scale {
  (v: number): number;
}

function linearScale(lo: number, hi: number, out0: number, out1: number): Scale {
  const span = hi - lo || 1;
  return (v) => out0 + ((v - lo) / span) * (out1 - out0);
}

function extent(values: number[]): [number, number] {
  return [Math.min(...values), Math.max(...values)];
}

function ticks(lo: number, hi: number, count: number): number[] {
  const out: number[] = [];
  for (let i = 0; i <= count; i++) out.push(lo + ((hi - lo) * i) / count);
  return out;
}

function fmtTick(v: number): string {
  return Math.abs(v) >= 1e5 ? v.toExponential(2) : String(Math.round(v * 100) / 100);
}

function renderSeries(s: Series, sx: Scale, sy: Scale): string {
  const color = SERIES_STYLE[s.name] ?? "#333";
  const coords = s.points.map((p) => `${sx(p.k).toFixed(2)},${sy(p.y).toFixed(2)}`);
  const line = `<polyline class="line" data-series="${s.name}" fill="none" stroke="${color}" stroke-width="1.5" points="${coords.join(" ")}"/>`;
  const dots = s.points
    .map(
      (p: Point) =>
        `<circle class="pt" data-series="${s.name}" data-k="${p.k}" data-y="${p.raw}" cx="${sx(p.k).toFixed(2)}" cy="${sy(p.y).toFixed(2)}" r="3" fill="${color}"/>`,
    )
    .join("\n");
  return `${line}\n${dots}`;
}

/**
 * Render a figure CSV as a standalone SVG. Every plotted point carries its
 * verbatim CSV cell in data-k / data-y attributes, so the rendered file is a
 * lossless transport of the table it came from.
 */
export function renderFigure(data: FigureData): string {
  const allPoints = data.series.flatMap((s) => s.points);
  const [kLo, kHi] = extent(allPoints.map((p) => p.k));
  const [yLo, yHi] = extent(allPoints.map((p) => p.y));
  const pad = (yHi - yLo || 1) * 0.05;
  const sx = linearScale(kLo, kHi, MARGIN.left, WIDTH - MARGIN.right);
  const sy = linearScale(yLo - pad, yHi + pad, HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" data-kind="${data.kind}">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  for (const t of ticks(yLo, yHi, 6)) {
    const y = sy(t).toFixed(2);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${WIDTH - MARGIN.right}" y2="${y}" stroke="#ddd"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="11">${fmtTick(t)}</text>`,
    );
  }
  for (const t of ticks(kLo, kHi, Math.min(10, kHi - kLo || 1))) {
    const x = sx(t).toFixed(2);
    parts.push(
      `<text x="${x}" y="${HEIGHT - MARGIN.bottom + 18}" text-anchor="middle" font-size="11">${fmtTick(t)}</text>`,
    );
  }
  parts.push(
    `<line x1="${MARGIN.left}" y1="${HEIGHT - MARGIN.bottom}" x2="${WIDTH - MARGIN.right}" y2="${HEIGHT - MARGIN.bottom}" stroke="#000"/>`,
  );
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${HEIGHT - MARGIN.bottom}" stroke="#000"/>`,
  );

  const [xLabel, yLabel] = AXIS_LABELS[data.kind];
  parts.push(
    `<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="13">${xLabel}</text>`,
  );
  parts.push(
    `<text x="18" y="${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 18 ${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2})">${yLabel}</text>`,
  );

  data.series.forEach((s, i) => {
    const color = SERIES_STYLE[s.name] ?? "#333";
    const lx = WIDTH - MARGIN.right - 140;
    const ly = MARGIN.top + 16 * i;
    parts.push(`<rect x="${lx}" y="${ly - 8}" width="12" height="3" fill="${color}"/>`);
    parts.push(`<text x="${lx + 18}" y="${ly}" font-size="12">${s.name}</text>`);
  });

  for (const s of data.series) {
    parts.push(renderSeries(s, sx, sy));
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/** Pull the embedded point set back out of a rendered SVG. */
export function extractPoints(svg: string): { series: string; k: number; y: string }[] {
  const out: { series: string; k: number; y: string }[] = [];
  const re = /<circle class="pt" data-series="([^"]+)" data-k="([^"]+)" data-y="([^"]*)"/g;
  let m: RegExpExecArray | null;
  while ((m = re.exec(svg)) !== null) {
    out.push({ series: m[1], k: Number(m[2]), y: m[3] });
  }
  return out;
}
