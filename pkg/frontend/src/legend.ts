/** Predicate-to-color legend. Colors are determined by the predicate
 * alone, never by layout or level. */

export const EDGE_LEGEND: Record<string, string> = {
  Connect: "gray",
  BelongTo: "blue",
  Operate: "light-yellow",
  Manage: "orange",
  Manufacture: "dark-green",
  Control: "green",
  occurs: "red",
};

export const DEFAULT_EDGE_COLOR = "neutral";

export function colorClass(predicate: string): string {
  return EDGE_LEGEND[predicate] ?? DEFAULT_EDGE_COLOR;
}

export function legendEntries(): Array<[string, string]> {
  return Object.entries(EDGE_LEGEND);
}
