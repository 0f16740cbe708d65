import { ApiClient, ApiError } from "./api.js";
import {
  drillApplied,
  initialState,
  nodeSelected,
  searchFailed,
  searchLoaded,
  searchNotFound,
  searchStarted,
  type ViewState,
} from "./state.js";

/** Orchestrates the search -> level-1 -> drill loop.
 *
 * At most one drill request is in flight; further clicks queue up and
 * run in order. Only revealed nodes are drillable, so the service can
 * never answer with a not-revealed conflict.
 */
export class Explorer {
  state: ViewState = initialState();
  private inflight = false;
  private drillQueue: number[] = [];
  private lastQuery = "";

  constructor(
    private api: ApiClient,
    private onChange: (state: ViewState) => void = () => {},
  ) {}

  private emit(): void {
    this.onChange(this.state);
  }

  async search(query: string): Promise<void> {
    this.lastQuery = query;
    this.drillQueue = [];
    this.state = searchStarted(this.state, query);
    this.emit();
    try {
      const found = await this.api.search(query);
      if (!found.found || !found.entity) {
        this.state = searchNotFound(this.state);
      } else {
        const tree = await this.api.neighborhood(found.entity.id, 1);
        this.state = searchLoaded(this.state, tree);
      }
    } catch (err) {
      this.state = searchFailed(this.state, err instanceof ApiError ? err.message : String(err));
    }
    this.emit();
  }

  async retry(): Promise<void> {
    if (this.lastQuery) await this.search(this.lastQuery);
  }

  /** Queue a drill on a revealed node; clicks on unknown or unrevealed
   * ids are ignored. Resolves once the queue has drained. */
  drillClick(id: number): Promise<void> {
    if (this.state.root === null || !this.state.revealed.has(id)) {
      return Promise.resolve();
    }
    this.state = nodeSelected(this.state, id);
    this.emit();
    this.drillQueue.push(id);
    return this.pump();
  }

  private async pump(): Promise<void> {
    if (this.inflight) return;
    this.inflight = true;
    try {
      for (;;) {
        const target = this.drillQueue.shift();
        if (target === undefined) break;
        await this.drillOne(target);
      }
    } finally {
      this.inflight = false;
    }
  }

  get pendingDrills(): number {
    return this.drillQueue.length + (this.inflight ? 1 : 0);
  }

  private async drillOne(target: number): Promise<void> {
    const root = this.state.root;
    if (root === null) return;
    try {
      const response = await this.api.drill({
        revealed: [...this.state.revealed].sort((a, b) => a - b),
        target,
        root: root.id,
        path: this.state.breadcrumbs.map((b) => b.id),
      });
      this.state = drillApplied(this.state, target, response);
    } catch (err) {
      this.state = searchFailed(this.state, err instanceof ApiError ? err.message : String(err));
    }
    this.emit();
  }
}
