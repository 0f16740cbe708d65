/** Wire payloads of the graph query service. */

export interface EntityPayload {
  id: number;
  label: string;
  category: string;
  aliases: string[];
}

export interface EdgePayload {
  subject: string;
  predicate: string;
  object: string;
  direction: "Out" | "In";
  derived: boolean;
  provenance: string[];
}

export interface LevelPayload {
  frontier: EntityPayload[];
  edges: EdgePayload[];
}

export interface TreePayload {
  root: EntityPayload | null;
  not_found: boolean;
  levels: LevelPayload[];
}

export interface SearchPayload {
  found: boolean;
  query: string;
  entity?: EntityPayload;
}

export interface DrillRequest {
  revealed: number[];
  target: number;
  root: number;
  path: number[];
}

export interface DrillResponse {
  target: EntityPayload;
  level: LevelPayload;
  revealed: number[];
}
