import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Explorer } from "../src/controller.js";
import { EDGE_LEGEND, colorClass } from "../src/legend.js";
import { layoutPositions } from "../src/layout.js";
import { renderBanner, renderBreadcrumbs, renderSvg } from "../src/render.js";
import {
  drillApplied,
  initialState,
  renderedEdgeCount,
  searchLoaded,
  searchNotFound,
  searchStarted,
} from "../src/state.js";
import type { DrillResponse, EdgePayload, EntityPayload, TreePayload } from "../src/types.js";

function entity(id: number, label: string, category = "E1"): EntityPayload {
  return { id, label, category, aliases: [] };
}

function edge(subject: string, predicate: string, object: string, derived = false): EdgePayload {
  return { subject, predicate, object, direction: "Out", derived, provenance: [] };
}

function demoTree(): TreePayload {
  return {
    root: entity(0, "Transformer #1"),
    not_found: false,
    levels: [
      {
        frontier: [
          entity(1, "#2016"),
          entity(2, "Transformer", "Class"),
          entity(3, "Operation System 1", "System"),
        ],
        edges: [
          edge("#2016", "Connect", "Transformer #1"),
          edge("Transformer #1", "BelongTo", "Transformer"),
          edge("Operation System 1", "Operate", "Transformer #1"),
        ],
      },
    ],
  };
}

describe("legend", () => {
  it("covers exactly the predicate vocabulary with the published colors", () => {
    expect(EDGE_LEGEND).toEqual({
      Connect: "gray",
      BelongTo: "blue",
      Operate: "light-yellow",
      Manage: "orange",
      Manufacture: "dark-green",
      Control: "green",
      occurs: "red",
    });
  });

  it("is predicate-determined with a neutral fallback", () => {
    expect(colorClass("Connect")).toBe("gray");
    expect(colorClass("SomethingElse")).toBe("neutral");
  });
});

describe("state", () => {
  it("accumulates every payload edge (no client-side dropping)", () => {
    let state = searchStarted(initialState(), "Transformer #1");
    state = searchLoaded(state, demoTree());
    expect(renderedEdgeCount(state)).toBe(3);

    const response: DrillResponse = {
      target: entity(3, "Operation System 1", "System"),
      level: {
        frontier: [entity(4, "Electrical Company 1", "Company")],
        edges: [edge("Electrical Company 1", "Control", "Operation System 1")],
      },
      revealed: [0, 1, 2, 3, 4],
    };
    state = drillApplied(state, 3, response);
    expect(renderedEdgeCount(state)).toBe(4);
    const rendered = renderSvg(state);
    expect(rendered.match(/<line /g)?.length).toBe(4);
  });

  it("tracks breadcrumbs one per drill", () => {
    let state = searchLoaded(searchStarted(initialState(), "q"), demoTree());
    const response: DrillResponse = {
      target: entity(1, "#2016"),
      level: { frontier: [], edges: [] },
      revealed: [0, 1, 2, 3],
    };
    state = drillApplied(state, 1, response);
    state = drillApplied(state, 1, { ...response, target: entity(1, "#2016") });
    expect(state.breadcrumbs.map((b) => b.label)).toEqual(["#2016", "#2016"]);
    expect(renderBreadcrumbs(state)).toContain("crumb-root");
  });

  it("not-found is an explicit state", () => {
    const state = searchNotFound(searchStarted(initialState(), "g"));
    expect(state.status).toBe("not-found");
    expect(renderBanner(state)).toContain("No result");
  });
});

describe("layout", () => {
  it("is deterministic for identical data", () => {
    const a = searchLoaded(searchStarted(initialState(), "q"), demoTree());
    const b = searchLoaded(searchStarted(initialState(), "q"), demoTree());
    expect(layoutPositions(a)).toEqual(layoutPositions(b));
  });

  it("keeps the root at the center", () => {
    const state = searchLoaded(searchStarted(initialState(), "q"), demoTree());
    const point = layoutPositions(state).get(0)!;
    expect(point).toEqual({ x: 480, y: 360 });
  });
});

describe("render", () => {
  it("colors edges by predicate and dashes derived ones", () => {
    let state = searchLoaded(searchStarted(initialState(), "q"), demoTree());
    state.edges.push(edge("Transformer #1", "BelongTo", "Transformer", true));
    const svg = renderSvg(state);
    expect(svg).toContain('class="edge edge-gray"');
    expect(svg).toContain('class="edge edge-blue"');
    expect(svg).toContain('class="edge edge-light-yellow"');
    expect(svg).toContain('class="edge edge-blue edge-derived"');
  });

  it("escapes labels", () => {
    const state = searchLoaded(searchStarted(initialState(), "q"), {
      root: entity(0, 'A & "B" <C>'),
      not_found: false,
      levels: [{ frontier: [], edges: [] }],
    });
    const svg = renderSvg(state);
    expect(svg).toContain("A &amp; &quot;B&quot; &lt;C&gt;");
  });
});

describe("controller", () => {
  function fakeApi(log: string[]): ApiClient {
    const api = Object.create(ApiClient.prototype) as ApiClient;
    let inflight = 0;
    Object.assign(api, {
      search: async (q: string) => {
        log.push(`search:${q}`);
        if (q === "g") return { found: false, query: q };
        return { found: true, query: q, entity: entity(0, "Transformer #1") };
      },
      neighborhood: async () => demoTree(),
      drill: async (body: { target: number }) => {
        inflight += 1;
        expect(inflight).toBe(1); // serialized: never two drills at once
        await new Promise((resolve) => setTimeout(resolve, 5));
        inflight -= 1;
        log.push(`drill:${body.target}`);
        return {
          target: entity(body.target, `node-${body.target}`),
          level: { frontier: [], edges: [] },
          revealed: [0, 1, 2, 3],
        } satisfies DrillResponse;
      },
    });
    return api;
  }

  it("runs the search -> render loop and queues drills", async () => {
    const log: string[] = [];
    const explorer = new Explorer(fakeApi(log));
    await explorer.search("Transformer #1");
    expect(explorer.state.status).toBe("ready");

    const first = explorer.drillClick(1);
    const second = explorer.drillClick(2);
    await Promise.all([first, second]);
    expect(log.filter((entry) => entry.startsWith("drill"))).toEqual(["drill:1", "drill:2"]);
    expect(explorer.state.breadcrumbs).toHaveLength(2);
  });

  it("ignores clicks on unrevealed nodes", async () => {
    const log: string[] = [];
    const explorer = new Explorer(fakeApi(log));
    await explorer.search("Transformer #1");
    await explorer.drillClick(999);
    expect(log.filter((entry) => entry.startsWith("drill"))).toEqual([]);
  });

  it("shows the not-found banner for absent queries", async () => {
    const explorer = new Explorer(fakeApi([]));
    await explorer.search("g");
    expect(explorer.state.status).toBe("not-found");
    expect(renderBanner(explorer.state)).toContain("No result");
  });

  it("turns network failures into a retryable error state", async () => {
    const api = Object.create(ApiClient.prototype) as ApiClient;
    Object.assign(api, {
      search: async () => {
        throw new Error("connection refused");
      },
    });
    const explorer = new Explorer(api);
    await explorer.search("Transformer #1");
    expect(explorer.state.status).toBe("error");
    expect(renderBanner(explorer.state)).toContain("data-action=\"retry\"");
  });
});
