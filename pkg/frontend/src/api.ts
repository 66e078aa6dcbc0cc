// Transport to the session service.  The ViewModel talks only to this
// interface so tests can substitute recorded responses.

import { Pt, RejectedToggle, SessionState, ViewName } from "./types.js";

export class ToggleRejected extends Error {
  detail: RejectedToggle;

  constructor(detail: RejectedToggle) {
    super(detail.message);
    this.detail = detail;
  }
}

export class StaleRevision extends Error {
  revision: number;

  constructor(revision: number) {
    super("stale revision");
    this.revision = revision;
  }
}

export interface Api {
  createFromPatch(patch: string): Promise<SessionState>;
  createRagsdale(k: number, single?: { t: number; m: number }): Promise<SessionState>;
  getState(id: string): Promise<SessionState>;
  toggleTwist(id: string, dual: [Pt, Pt], revision: number): Promise<SessionState>;
  flipSign(id: string, point: Pt, revision: number): Promise<SessionState>;
  fetchSvg(id: string, view: ViewName): Promise<string>;
}

async function expectState(resp: Response): Promise<SessionState> {
  if (resp.status === 409) {
    const body = await resp.json();
    throw new StaleRevision(body.detail.revision);
  }
  if (resp.status === 422) {
    const body = await resp.json();
    throw new ToggleRejected(body.detail as RejectedToggle);
  }
  if (!resp.ok) {
    throw new Error(`service error ${resp.status}`);
  }
  return (await resp.json()) as SessionState;
}

export class HttpApi implements Api {
  constructor(private base: string = "") {}

  private post(path: string, body: unknown): Promise<Response> {
    return fetch(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async createFromPatch(patch: string): Promise<SessionState> {
    return expectState(await this.post("/sessions", { patch }));
  }

  async createRagsdale(k: number, single?: { t: number; m: number }): Promise<SessionState> {
    return expectState(await this.post("/sessions", { ragsdale: { k, single: single ?? null } }));
  }

  async getState(id: string): Promise<SessionState> {
    return expectState(await fetch(`${this.base}/sessions/${id}`));
  }

  async toggleTwist(id: string, dual: [Pt, Pt], revision: number): Promise<SessionState> {
    return expectState(await this.post(`/sessions/${id}/toggle-twist`, { dual, revision }));
  }

  async flipSign(id: string, point: Pt, revision: number): Promise<SessionState> {
    return expectState(await this.post(`/sessions/${id}/flip-sign`, { point, revision }));
  }

  async fetchSvg(id: string, view: ViewName): Promise<string> {
    const resp = await fetch(`${this.base}/sessions/${id}/svg?view=${view}`);
    if (!resp.ok) {
      throw new Error(`service error ${resp.status}`);
    }
    return resp.text();
  }
}
