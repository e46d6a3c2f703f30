/**
 * Deterministic SVG phase-diagram renderer for sweep CSV rows.
 *
 * One figure per call: estimated probability of symmetry versus the x
 * column, one colored series per distinct series-column value, Wilson 95%
 * bands around each curve, the probability of connectivity as a dotted
 * companion curve, and the closed-form second-moment lower bound as a
 * dash-dot overlay. No timestamps, locales or randomness — identical rows
 * yield byte-identical output.
 */
import {
  EmptyInput,
  MissingColumn,
  SweepRow,
  columnValue,
} from "./csv.js";

export interface PlotSpec {
  x: string;
  series: string;
  logX?: boolean;
  logY?: boolean;
}

const WIDTH = 840;
const HEIGHT = 520;
const MARGIN = { top: 36, right: 180, bottom: 56, left: 64 };

const PALETTE = [
  "#1b6ca8",
  "#c2571a",
  "#2e7d32",
  "#8e24aa",
  "#c62828",
  "#00838f",
  "#6d4c41",
  "#37474f",
];

interface Point {
  x: number;
  pSym: number;
  lo: number;
  hi: number;
  pConn: number;
  pzLower: number;
}

function fmt(v: number): string {
  // fixed-precision coordinates keep the output byte-stable
  return v.toFixed(2);
}

function scale(
  value: number,
  lo: number,
  hi: number,
  outLo: number,
  outHi: number,
  log: boolean,
): number {
  let t: number;
  if (log) {
    t = (Math.log(value) - Math.log(lo)) / (Math.log(hi) - Math.log(lo));
  } else {
    t = (value - lo) / (hi - lo);
  }
  return outLo + t * (outHi - outLo);
}

function ticks(lo: number, hi: number, count: number): number[] {
  const out: number[] = [];
  for (let i = 0; i <= count; i++) {
    out.push(lo + ((hi - lo) * i) / count);
  }
  return out;
}

export function render(rows: SweepRow[], spec: PlotSpec): string {
  if (rows.length === 0) {
    throw new EmptyInput();
  }
  // resolve columns up front so a bad spec fails before any drawing
  for (const row of rows) {
    columnValue(row, spec.x);
    columnValue(row, spec.series);
  }
  const xNumeric = rows.every((r) => !Number.isNaN(Number(columnValue(r, spec.x))));
  if (!xNumeric) {
    throw new MissingColumn(spec.x);
  }

  const groups = new Map<string, Point[]>();
  for (const row of rows) {
    const key = columnValue(row, spec.series);
    const pt: Point = {
      x: Number(columnValue(row, spec.x)),
      pSym: row.p_sym as number,
      lo: row.p_sym_lo as number,
      hi: row.p_sym_hi as number,
      pConn: row.p_conn as number,
      pzLower: row.pz_lower as number,
    };
    if (!groups.has(key)) {
      groups.set(key, []);
    }
    groups.get(key)!.push(pt);
  }
  const seriesKeys = [...groups.keys()].sort();
  for (const pts of groups.values()) {
    pts.sort((a, b) => a.x - b.x);
  }

  const xs = rows.map((r) => Number(columnValue(r, spec.x)));
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  if (xLo === xHi) {
    // single x value: pad so the point sits mid-axis
    xLo = spec.logX ? xLo / 2 : xLo - 1;
    xHi = spec.logX ? xHi * 2 : xHi + 1;
  }
  const yLo = spec.logY ? 1e-3 : 0;
  const yHi = 1;

  const plotX = (v: number) =>
    scale(v, xLo, xHi, MARGIN.left, WIDTH - MARGIN.right, Boolean(spec.logX));
  const plotY = (v: number) =>
    scale(
      spec.logY ? Math.max(v, yLo) : v,
      yLo,
      yHi,
      HEIGHT - MARGIN.bottom,
      MARGIN.top,
      Boolean(spec.logY),
    );

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${fmt(WIDTH / 2)}" y="20" text-anchor="middle" font-family="monospace" font-size="14">` +
      `probability of symmetry vs ${esc(spec.x)} (series: ${esc(spec.series)})</text>`,
  );

  // axes
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(
    `<line x1="${fmt(x0)}" y1="${fmt(y0)}" x2="${fmt(x1)}" y2="${fmt(y0)}" stroke="#000000"/>`,
  );
  parts.push(
    `<line x1="${fmt(x0)}" y1="${fmt(y0)}" x2="${fmt(x0)}" y2="${fmt(y1)}" stroke="#000000"/>`,
  );
  for (const t of ticks(xLo, xHi, 5)) {
    const px = plotX(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(y0)}" x2="${fmt(px)}" y2="${fmt(y0 + 5)}" stroke="#000000"/>`,
    );
    parts.push(
      `<text x="${fmt(px)}" y="${fmt(y0 + 20)}" text-anchor="middle" font-family="monospace" font-size="11">${tickLabel(t)}</text>`,
    );
  }
  for (const t of ticks(yLo, yHi, 5)) {
    const py = plotY(t);
    parts.push(
      `<line x1="${fmt(x0 - 5)}" y1="${fmt(py)}" x2="${fmt(x0)}" y2="${fmt(py)}" stroke="#000000"/>`,
    );
    parts.push(
      `<text x="${fmt(x0 - 9)}" y="${fmt(py + 4)}" text-anchor="end" font-family="monospace" font-size="11">${tickLabel(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt((x0 + x1) / 2)}" y="${fmt(HEIGHT - 14)}" text-anchor="middle" font-family="monospace" font-size="12">${esc(spec.x)}</text>`,
  );

  seriesKeys.forEach((key, si) => {
    const color = PALETTE[si % PALETTE.length];
    const pts = groups.get(key)!;
    if (pts.length >= 2) {
      // confidence band polygon: upper edge left-to-right, lower edge back
      const upper = pts.map((p) => `${fmt(plotX(p.x))},${fmt(plotY(p.hi))}`);
      const lower = [...pts]
        .reverse()
        .map((p) => `${fmt(plotX(p.x))},${fmt(plotY(p.lo))}`);
      parts.push(
        `<polygon points="${upper.join(" ")} ${lower.join(" ")}" fill="${color}" fill-opacity="0.15" stroke="none" class="ci-band"/>`,
      );
      const line = pts.map((p) => `${fmt(plotX(p.x))},${fmt(plotY(p.pSym))}`);
      parts.push(
        `<polyline points="${line.join(" ")}" fill="none" stroke="${color}" stroke-width="2"/>`,
      );
      const conn = pts.map((p) => `${fmt(plotX(p.x))},${fmt(plotY(p.pConn))}`);
      parts.push(
        `<polyline points="${conn.join(" ")}" fill="none" stroke="${color}" stroke-width="1" stroke-dasharray="2,3"/>`,
      );
      const pz = pts.map((p) => `${fmt(plotX(p.x))},${fmt(plotY(p.pzLower))}`);
      parts.push(
        `<polyline points="${pz.join(" ")}" fill="none" stroke="${color}" stroke-width="1" stroke-dasharray="6,2,1,2"/>`,
      );
    }
    for (const p of pts) {
      const px = plotX(p.x);
      // per-point interval whisker (this is the whole story for a
      // single-row input)
      parts.push(
        `<line x1="${fmt(px)}" y1="${fmt(plotY(p.lo))}" x2="${fmt(px)}" y2="${fmt(plotY(p.hi))}" stroke="${color}" stroke-width="1" class="error-bar"/>`,
      );
      parts.push(
        `<circle cx="${fmt(px)}" cy="${fmt(plotY(p.pSym))}" r="3" fill="${color}"/>`,
      );
    }
    const ly = MARGIN.top + 16 + si * 18;
    parts.push(
      `<line x1="${fmt(x1 + 12)}" y1="${fmt(ly - 4)}" x2="${fmt(x1 + 34)}" y2="${fmt(ly - 4)}" stroke="${color}" stroke-width="2"/>`,
    );
    parts.push(
      `<text x="${fmt(x1 + 40)}" y="${fmt(ly)}" font-family="monospace" font-size="11" class="legend">${esc(spec.series)}=${esc(key)}</text>`,
    );
  });
  const noteY = MARGIN.top + 16 + seriesKeys.length * 18 + 10;
  parts.push(
    `<text x="${fmt(x1 + 12)}" y="${fmt(noteY)}" font-family="monospace" font-size="10">solid: p_sym (band: 95% CI)</text>`,
  );
  parts.push(
    `<text x="${fmt(x1 + 12)}" y="${fmt(noteY + 14)}" font-family="monospace" font-size="10">dotted: p_conn</text>`,
  );
  parts.push(
    `<text x="${fmt(x1 + 12)}" y="${fmt(noteY + 28)}" font-family="monospace" font-size="10">dash-dot: P(Y&gt;0) lower bound</text>`,
  );
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function tickLabel(v: number): string {
  if (Number.isInteger(v)) {
    return String(v);
  }
  return v.toFixed(2);
}
