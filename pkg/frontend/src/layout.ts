import type { ViewState } from "./state.js";

export interface Point {
  x: number;
  y: number;
}

export const WIDTH = 960;
export const HEIGHT = 720;
const RING_GAP = 130;
const FIRST_RING = 150;

/** Deterministic concentric layout: the root sits at the center and each
 * ring of newly revealed entities is spread evenly on a circle. Identical
 * data always yields identical positions. */
export function layoutPositions(state: ViewState): Map<number, Point> {
  const positions = new Map<number, Point>();
  const cx = WIDTH / 2;
  const cy = HEIGHT / 2;
  state.rings.forEach((ring, ringIndex) => {
    if (ringIndex === 0) {
      for (const id of ring) positions.set(id, { x: cx, y: cy });
      return;
    }
    const radius = FIRST_RING + (ringIndex - 1) * RING_GAP;
    const offset = (ringIndex - 1) * 0.35 - Math.PI / 2;
    ring.forEach((id, i) => {
      const angle = offset + (2 * Math.PI * i) / ring.length;
      positions.set(id, {
        x: cx + radius * Math.cos(angle),
        y: cy + radius * Math.sin(angle),
      });
    });
  });
  return positions;
}
