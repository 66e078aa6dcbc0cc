// String renderers.  The subdivision view is drawn client-side so edges and
// points can carry click targets; counts are interpolated verbatim from the
// server report.

import { EdgeInfo, Pt, SessionState } from "./types.js";

const SCALE = 48;
const PAD = 1;

function key(p: Pt): string {
  return `${p[0]},${p[1]}`;
}

export function banner(state: SessionState): string {
  const r = state.report;
  const phrases = [
    `g = ${r.g}`,
    `rank = ${r.rank}`,
    `components = ${r.components}`,
    r.dividing ? "dividing" : "non-dividing",
    `M-${r.m_defect}`,
  ];
  if (r.certificate !== "none") {
    phrases.push(r.certificate);
  }
  if (r.all_ovals && r.p !== null && r.n !== null) {
    phrases.push(`p = ${r.p} even ovals`, `n = ${r.n} odd ovals`);
  }
  return phrases.join(" · ");
}

function bounds(state: SessionState): [number, number, number, number] {
  const xs = state.points.map((p) => p[0]);
  const ys = state.points.map((p) => p[1]);
  return [Math.min(...xs), Math.min(...ys), Math.max(...xs), Math.max(...ys)];
}

function onCycle(edge: EdgeInfo, cyclePoint: Pt): boolean {
  return edge.dual.some((p) => p[0] === cyclePoint[0] && p[1] === cyclePoint[1]);
}

export function subdivisionSvg(state: SessionState, violatedCycle: Pt | null,
                               pending: [Pt, Pt] | null): string {
  const [x0, y0, x1, y1] = bounds(state);
  const w = (x1 - x0 + 2 * PAD) * SCALE;
  const h = (y1 - y0 + 2 * PAD) * SCALE;
  const tx = (p: Pt) => (p[0] - x0 + PAD) * SCALE;
  const ty = (p: Pt) => (y1 - p[1] + PAD) * SCALE;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${w}" height="${h}" viewBox="0 0 ${w} ${h}">`,
  ];
  const sign = new Map(state.signs.map(([x, y, s]) => [`${x},${y}`, s]));
  for (const edge of state.edges) {
    const [a, b] = edge.dual;
    const classes = ["edge"];
    if (edge.bounded) classes.push("clickable");
    if (edge.twisted) classes.push("twisted");
    if (violatedCycle && onCycle(edge, violatedCycle)) classes.push("violated");
    if (pending && key(pending[0]) === key(a) && key(pending[1]) === key(b)) {
      classes.push("pending");
    }
    const color = classes.includes("violated") ? "#ff00aa"
      : edge.twisted ? "#d62728" : "#999999";
    const width = edge.twisted || classes.includes("violated") ? 3 : 1;
    parts.push(
      `<line class="${classes.join(" ")}" data-dual="${key(a)};${key(b)}" ` +
      `x1="${tx(a)}" y1="${ty(a)}" x2="${tx(b)}" y2="${ty(b)}" ` +
      `stroke="${color}" stroke-width="${width}"/>`);
  }
  for (const p of state.points) {
    const s = sign.get(key(p)) ?? 1;
    parts.push(
      `<circle class="point clickable" data-point="${key(p)}" cx="${tx(p)}" cy="${ty(p)}" ` +
      `r="9" fill="${s > 0 ? "#ffffff" : "#222222"}" stroke="#222222"/>`);
    parts.push(
      `<text x="${tx(p)}" y="${ty(p) + 4}" text-anchor="middle" font-size="12" ` +
      `fill="${s > 0 ? "#222222" : "#ffffff"}" pointer-events="none">${s > 0 ? "+" : "-"}</text>`);
  }
  parts.push("</svg>");
  return parts.join("\n");
}

export function errorLine(message: string | null, violatedCycle: Pt | null): string {
  if (!message) {
    return "";
  }
  const where = violatedCycle ? ` (cycle around ${violatedCycle[0]},${violatedCycle[1]})` : "";
  return `rejected: ${message}${where}`;
}
