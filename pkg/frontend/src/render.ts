import { colorClass, legendEntries } from "./legend.js";
import { HEIGHT, WIDTH, layoutPositions, type Point } from "./layout.js";
import type { ViewState } from "./state.js";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Render the accumulated graph as an SVG document string. Every edge in
 * the state is drawn; nothing is dropped client-side. */
export function renderSvg(state: ViewState): string {
  const positions = layoutPositions(state);
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" class="graph-canvas">`,
  ];

  const fallback: Point = { x: WIDTH / 2, y: HEIGHT - 24 };
  const locate = (label: string): Point => {
    const id = state.labelIndex.get(label);
    const point = id === undefined ? undefined : positions.get(id);
    return point ?? fallback;
  };

  for (const edge of state.edges) {
    const a = locate(edge.subject);
    const b = locate(edge.object);
    const classes = ["edge", `edge-${colorClass(edge.predicate)}`];
    if (edge.derived) classes.push("edge-derived");
    parts.push(
      `<line class="${classes.join(" ")}" x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}"` +
        ` x2="${b.x.toFixed(1)}" y2="${b.y.toFixed(1)}">` +
        `<title>${esc(edge.subject)} ${esc(edge.predicate)} ${esc(edge.object)}</title></line>`,
    );
  }

  for (const [id, entity] of state.nodes) {
    const p = positions.get(id) ?? fallback;
    const classes = ["node"];
    if (state.selected === id) classes.push("node-selected");
    if (state.root && state.root.id === id) classes.push("node-root");
    parts.push(
      `<g class="${classes.join(" ")}" data-node-id="${id}">` +
        `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="14"/>` +
        `<text x="${p.x.toFixed(1)}" y="${(p.y + 28).toFixed(1)}">${esc(entity.label)}</text>` +
        `</g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

/** Banner for the not-found and error states; an empty string means no
 * banner. A failed search never leaves a silently empty canvas. */
export function renderBanner(state: ViewState): string {
  if (state.status === "not-found") {
    return (
      `<div class="banner banner-not-found">No result: ` +
      `<strong>${esc(state.query)}</strong> is not in the graph.</div>`
    );
  }
  if (state.status === "error") {
    return (
      `<div class="banner banner-error">Service error: ${esc(state.errorMessage ?? "unknown")} ` +
      `<button data-action="retry">Retry</button></div>`
    );
  }
  return "";
}

export function renderBreadcrumbs(state: ViewState): string {
  if (!state.root) return "";
  const head = `<span class="crumb crumb-root">${esc(state.root.label)}</span>`;
  const rest = state.breadcrumbs
    .map((b) => `<span class="crumb" data-node-id="${b.id}">${esc(b.label)}</span>`)
    .join(" › ");
  return rest ? `${head} › ${rest}` : head;
}

export function renderLegend(): string {
  const items = legendEntries()
    .map(
      ([predicate, color]) =>
        `<li><span class="swatch edge-${color}"></span>${esc(predicate)}</li>`,
    )
    .join("");
  return `<ul class="legend">${items}</ul>`;
}
