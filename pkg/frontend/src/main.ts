import { ApiClient } from "./api.js";
import { Explorer } from "./controller.js";
import { renderBanner, renderBreadcrumbs, renderLegend, renderSvg } from "./render.js";
import type { ViewState } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const api = new ApiClient(window.location.origin);
const canvas = el<HTMLDivElement>("canvas");
const banner = el<HTMLDivElement>("banner");
const crumbs = el<HTMLDivElement>("breadcrumbs");
const input = el<HTMLInputElement>("query");
const button = el<HTMLButtonElement>("go");

const explorer = new Explorer(api, (state: ViewState) => {
  banner.innerHTML = renderBanner(state);
  crumbs.innerHTML = renderBreadcrumbs(state);
  canvas.innerHTML = state.status === "ready" || state.status === "loading"
    ? renderSvg(state)
    : "";
});

el<HTMLDivElement>("legend-box").innerHTML = renderLegend();

button.addEventListener("click", () => void explorer.search(input.value.trim()));
input.addEventListener("keydown", (event) => {
  if (event.key === "Enter") void explorer.search(input.value.trim());
});

canvas.addEventListener("click", (event) => {
  const group = (event.target as Element).closest("[data-node-id]");
  if (group) void explorer.drillClick(Number(group.getAttribute("data-node-id")));
});

banner.addEventListener("click", (event) => {
  const target = event.target as Element;
  if (target.getAttribute("data-action") === "retry") void explorer.retry();
});
