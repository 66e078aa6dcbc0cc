// Explorer acceptance: counts come from the service JSON verbatim, and an
// inadmissible toggle surfaces the violated cycle.  Fixtures are recorded
// responses of the real service.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { Api, StaleRevision, ToggleRejected } from "../src/api.js";
import { banner, errorLine, subdivisionSvg } from "../src/render.js";
import { Pt, RejectedToggle, SessionState, ViewName } from "../src/types.js";
import { ViewModel } from "../src/viewmodel.js";

const here = dirname(fileURLToPath(import.meta.url));

function fixtureText(name: string): string {
  return readFileSync(join(here, "fixtures", name), "utf-8");
}

function fixture(name: string): SessionState {
  return JSON.parse(fixtureText(name)) as SessionState;
}

class FakeApi implements Api {
  toggles: Array<SessionState | RejectedToggle | { stale: number }> = [];

  constructor(private initial: SessionState) {}

  async createFromPatch(): Promise<SessionState> {
    return this.initial;
  }

  async createRagsdale(): Promise<SessionState> {
    return this.initial;
  }

  async getState(): Promise<SessionState> {
    return this.initial;
  }

  async toggleTwist(): Promise<SessionState> {
    const next = this.toggles.shift();
    if (!next) throw new Error("no scripted toggle response");
    if ("stale" in next) throw new StaleRevision(next.stale);
    if ("code" in next) throw new ToggleRejected(next);
    return next;
  }

  async flipSign(): Promise<SessionState> {
    throw new Error("not scripted");
  }

  async fetchSvg(_id: string, view: ViewName): Promise<string> {
    return `<svg data-view="${view}"></svg>`;
  }
}

describe("loading the degree-10 counter-example", () => {
  it("displays p = 32 straight from the service JSON", async () => {
    const state = fixture("ragsdale_k5.json");
    const model = new ViewModel(new FakeApi(state));
    await model.loadRagsdale(5);
    const line = banner(model.state!);
    expect(line).toContain("p = 32 even ovals");
    expect(line).toContain("components = 35");
    // byte-for-byte: the displayed digits occur in the raw service response
    const raw = fixtureText("ragsdale_k5.json");
    expect(raw).toContain('"p":32');
    expect(raw).toContain('"components":35');
    expect(String(state.report.p)).toBe("32");
  });
});

describe("inadmissible toggles", () => {
  it("rejects and highlights the violated cycle", async () => {
    const state = fixture("quartic.json");
    const rejection = JSON.parse(fixtureText("toggle_rejected.json"))
      .detail as RejectedToggle;
    const api = new FakeApi(state);
    api.toggles.push(rejection);
    const model = new ViewModel(api);
    await model.loadPatch("ignored");
    const before = model.state!;
    const ok = await model.toggleTwist([[1, 1], [2, 1]]);
    expect(ok).toBe(false);
    expect(model.state).toBe(before);               // no phantom state
    expect(model.violatedCycle).not.toBeNull();
    const svg = subdivisionSvg(model.state!, model.violatedCycle, null);
    const violated = svg.match(/class="[^"]*violated[^"]*"/g) ?? [];
    // every subdivision edge incident to the violated cycle's point is marked
    const cycle = model.violatedCycle as Pt;
    const incident = state.edges.filter((e) =>
      e.dual.some((p) => p[0] === cycle[0] && p[1] === cycle[1]));
    expect(violated.length).toBe(incident.length);
    expect(violated.length).toBeGreaterThan(0);
    expect(errorLine(model.lastError, model.violatedCycle))
      .toContain(`cycle around ${cycle[0]},${cycle[1]}`);
  });
});

describe("successful toggles and undo", () => {
  it("applies the refreshed report and restores the previous twist set", async () => {
    const base = fixture("conic.json");
    const toggled = fixture("conic_toggled.json");
    const api = new FakeApi(base);
    api.toggles.push(toggled);
    const model = new ViewModel(api);
    await model.loadPatch("ignored");
    expect(model.state!.report.components).toBe(1);
    const ok = await model.toggleTwist([[1, 0], [0, 1]]);
    expect(ok).toBe(true);
    expect(model.state!.revision).toBe(1);
    expect(model.state!.report.components).toBe(1); // genus 0 stays connected
    expect(model.state!.twists.length).toBe(1);

    // undo replays the single differing toggle
    api.toggles.push(base);
    await model.undo();
    expect(model.state!.twists.length).toBe(0);
    expect(model.history.length).toBe(1);
  });
});

describe("stale revisions", () => {
  it("refreshes from the server instead of guessing", async () => {
    const base = fixture("conic.json");
    const api = new FakeApi(base);
    api.toggles.push({ stale: 3 });
    const model = new ViewModel(api);
    await model.loadPatch("ignored");
    const ok = await model.toggleTwist([[1, 0], [0, 1]]);
    expect(ok).toBe(false);
    expect(model.lastError).toContain("refreshed");
    expect(model.state).toEqual(base);          // re-fetched state
  });
});

describe("pending highlight", () => {
  it("marks the edge being toggled", () => {
    const state = fixture("conic.json");
    const svg = subdivisionSvg(state, null, [[0, 1], [1, 0]]);
    expect(svg).toContain("pending");
  });
});

describe("rendered numbers", () => {
  it("never invents values: all banner numbers exist in the report", () => {
    for (const name of ["ragsdale_k5.json", "quartic.json", "conic.json"]) {
      const state = fixture(name);
      const line = banner(state);
      const numbers = line.match(/-?\d+/g) ?? [];
      const allowed = new Set<string>([
        String(state.report.g),
        String(state.report.rank),
        String(state.report.components),
        String(state.report.m_defect),
        ...(state.report.p !== null ? [String(state.report.p)] : []),
        ...(state.report.n !== null ? [String(state.report.n)] : []),
        ...(state.report.certificate.match(/\d+/g) ?? []),
      ]);
      for (const n of numbers) {
        expect(allowed.has(n.replace("-", "")) || allowed.has(n)).toBeTruthy();
      }
    }
  });
});
