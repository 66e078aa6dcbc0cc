// Browser entry: wires the view model to the DOM.  One in-flight mutation at
// a time; the revision counter serializes everything else server-side.

import { HttpApi } from "./api.js";
import { banner, errorLine, subdivisionSvg } from "./render.js";
import { Pt, ViewName } from "./types.js";
import { ViewModel } from "./viewmodel.js";

const api = new HttpApi("");
const model = new ViewModel(api);
let busy = false;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function redraw(): Promise<void> {
  const stage = el<HTMLDivElement>("stage");
  el<HTMLDivElement>("banner").textContent = model.state ? banner(model.state) : "no session";
  el<HTMLDivElement>("error").textContent = errorLine(model.lastError, model.violatedCycle);
  if (!model.state) {
    stage.innerHTML = "";
    return;
  }
  if (model.view === "subdivision") {
    stage.innerHTML = subdivisionSvg(model.state, model.violatedCycle, model.pending);
  } else {
    stage.innerHTML = await api.fetchSvg(model.state.id, model.view);
  }
}

async function guarded(action: () => Promise<unknown>): Promise<void> {
  if (busy) return;
  busy = true;
  try {
    await action();
  } catch (err) {
    model.lastError = String(err);
  } finally {
    busy = false;
    await redraw();
  }
}

function parsePoint(raw: string): Pt {
  const [x, y] = raw.split(",").map(Number);
  return [x, y];
}

export function setup(): void {
  el<HTMLButtonElement>("load-ragsdale").onclick = () =>
    guarded(() => model.loadRagsdale(Number(el<HTMLInputElement>("k").value)));
  el<HTMLButtonElement>("load-patch").onclick = () =>
    guarded(() => model.loadPatch(el<HTMLTextAreaElement>("patch").value));
  el<HTMLButtonElement>("undo").onclick = () => guarded(() => model.undo());
  for (const view of ["subdivision", "zones", "realpart"] as ViewName[]) {
    el<HTMLButtonElement>(`view-${view}`).onclick = () =>
      guarded(async () => model.setView(view));
  }
  el<HTMLDivElement>("stage").addEventListener("click", (ev) => {
    const target = ev.target as Element;
    if (model.view !== "subdivision") return;
    const dual = target.getAttribute("data-dual");
    if (dual && target.classList.contains("clickable")) {
      const [a, b] = dual.split(";").map(parsePoint);
      model.pending = [a, b];          // optimistic highlight before the round-trip
      void redraw();
      guarded(() => model.toggleTwist([a, b]));
      return;
    }
    const point = target.getAttribute("data-point");
    if (point) {
      guarded(() => model.flipSign(parsePoint(point)));
    }
  });
}

if (typeof document !== "undefined" && document.getElementById("stage")) {
  setup();
}
