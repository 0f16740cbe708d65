import type {
  DrillResponse,
  EdgePayload,
  EntityPayload,
  TreePayload,
} from "./types.js";

export type Status = "idle" | "loading" | "ready" | "not-found" | "error";

export interface Breadcrumb {
  id: number;
  label: string;
}

/** Client-held exploration state. The service is stateless; everything
 * needed to continue a session (revealed ids, root, drill path) lives
 * here and is posted with each drill. */
export interface ViewState {
  query: string;
  status: Status;
  errorMessage: string | null;
  root: EntityPayload | null;
  /** every entity received so far, by id */
  nodes: Map<number, EntityPayload>;
  labelIndex: Map<string, number>;
  /** node ids per concentric ring, in first-seen order */
  rings: number[][];
  /** accumulated edges exactly as received; all of them are rendered */
  edges: EdgePayload[];
  revealed: Set<number>;
  breadcrumbs: Breadcrumb[];
  selected: number | null;
}

export function initialState(): ViewState {
  return {
    query: "",
    status: "idle",
    errorMessage: null,
    root: null,
    nodes: new Map(),
    labelIndex: new Map(),
    rings: [],
    edges: [],
    revealed: new Set(),
    breadcrumbs: [],
    selected: null,
  };
}

function addNode(state: ViewState, entity: EntityPayload, ring: number): void {
  if (state.nodes.has(entity.id)) return;
  state.nodes.set(entity.id, entity);
  state.labelIndex.set(entity.label, entity.id);
  while (state.rings.length <= ring) state.rings.push([]);
  state.rings[ring]!.push(entity.id);
  state.revealed.add(entity.id);
}

export function searchStarted(state: ViewState, query: string): ViewState {
  const fresh = initialState();
  fresh.query = query;
  fresh.status = "loading";
  return fresh;
}

export function searchNotFound(state: ViewState): ViewState {
  state.status = "not-found";
  return state;
}

export function searchFailed(state: ViewState, message: string): ViewState {
  state.status = "error";
  state.errorMessage = message;
  return state;
}

export function searchLoaded(state: ViewState, tree: TreePayload): ViewState {
  if (tree.not_found || tree.root === null) return searchNotFound(state);
  state.status = "ready";
  state.root = tree.root;
  addNode(state, tree.root, 0);
  tree.levels.forEach((level, index) => {
    for (const entity of level.frontier) addNode(state, entity, index + 1);
    state.edges.push(...level.edges);
  });
  state.selected = tree.root.id;
  return state;
}

export function drillApplied(state: ViewState, target: number, response: DrillResponse): ViewState {
  const ring = state.rings.length;
  for (const entity of response.level.frontier) addNode(state, entity, ring);
  state.edges.push(...response.level.edges);
  for (const id of response.revealed) state.revealed.add(id);
  state.breadcrumbs.push({ id: target, label: response.target.label });
  state.selected = target;
  return state;
}

export function nodeSelected(state: ViewState, id: number): ViewState {
  if (state.nodes.has(id)) state.selected = id;
  return state;
}

/** Invariant helper: everything received must be rendered. */
export function renderedEdgeCount(state: ViewState): number {
  return state.edges.length;
}
