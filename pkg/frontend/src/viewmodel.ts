// Client state.  Every number shown in the UI comes verbatim out of the last
// server report; the model never computes counts of its own.  An inadmissible
// toggle leaves the state untouched and records the violated cycle so the
// view can highlight it.

import { Api, StaleRevision, ToggleRejected } from "./api.js";
import { Pt, SessionState, ViewName } from "./types.js";

export class ViewModel {
  state: SessionState | null = null;
  view: ViewName = "subdivision";
  pending: [Pt, Pt] | null = null;       // optimistic highlight during a toggle
  violatedCycle: Pt | null = null;
  lastError: string | null = null;
  history: SessionState[] = [];

  constructor(private api: Api) {}

  async loadPatch(patch: string): Promise<void> {
    this.adopt(await this.api.createFromPatch(patch));
  }

  async loadRagsdale(k: number, single?: { t: number; m: number }): Promise<void> {
    this.adopt(await this.api.createRagsdale(k, single));
  }

  private adopt(state: SessionState): void {
    this.state = state;
    this.history = [state];
    this.pending = null;
    this.violatedCycle = null;
    this.lastError = null;
  }

  async toggleTwist(dual: [Pt, Pt]): Promise<boolean> {
    if (!this.state) {
      throw new Error("no session loaded");
    }
    this.pending = dual;
    this.violatedCycle = null;
    this.lastError = null;
    try {
      const next = await this.api.toggleTwist(this.state.id, dual, this.state.revision);
      this.state = next;
      this.history.push(next);
      return true;
    } catch (err) {
      if (err instanceof ToggleRejected) {
        this.violatedCycle = err.detail.violated_cycle;
        this.lastError = err.detail.message;
        return false;
      }
      if (err instanceof StaleRevision) {
        this.state = await this.api.getState(this.state.id);
        this.lastError = "session changed elsewhere; refreshed";
        return false;
      }
      throw err;
    } finally {
      this.pending = null;
    }
  }

  async flipSign(point: Pt): Promise<boolean> {
    if (!this.state) {
      throw new Error("no session loaded");
    }
    this.violatedCycle = null;
    this.lastError = null;
    const next = await this.api.flipSign(this.state.id, point, this.state.revision);
    this.state = next;
    this.history.push(next);
    return true;
  }

  async undo(): Promise<boolean> {
    // replay: re-derive the previous twist set by toggling the difference
    if (!this.state || this.history.length < 2) {
      return false;
    }
    const target = this.history[this.history.length - 2];
    const current = this.history[this.history.length - 1];
    const key = (d: [Pt, Pt]) => JSON.stringify(d);
    const now = new Set(current.twists.map(key));
    const want = new Set(target.twists.map(key));
    const diff: [Pt, Pt][] = [];
    for (const t of current.twists) {
      if (!want.has(key(t))) diff.push(t);
    }
    for (const t of target.twists) {
      if (!now.has(key(t))) diff.push(t);
    }
    for (const dual of diff) {
      const next = await this.api.toggleTwist(this.state.id, dual, this.state.revision);
      this.state = next;
    }
    this.history.pop();
    this.history[this.history.length - 1] = this.state;
    return true;
  }

  setView(view: ViewName): void {
    this.view = view;
  }
}
