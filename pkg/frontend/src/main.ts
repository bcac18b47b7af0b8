import { ApiClient } from "./api";
import { rigidityBadge, symmetryBadge, verifyBadge, type Badge } from "./badges";
import { fitView, pickEdge, pickVertex, Renderer, toWorld } from "./canvas";
import { edgeKey } from "./document";
import { concatTrajectories, TrajectoryPlayer } from "./player";
import { EditorStore } from "./state";

type ToolName = "select" | "vertex" | "edge" | "stamp";

const api = new ApiClient();
const store = new EditorStore(api);

const canvas = document.getElementById("board") as HTMLCanvasElement;
const ctx = canvas.getContext("2d");
if (!ctx) throw new Error("canvas 2d context unavailable");
const renderer = new Renderer(ctx);

const el = (id: string) => document.getElementById(id)!;
const badgeVerify = el("badge-verify");
const badgeRigidity = el("badge-rigidity");
const badgeSymmetry = el("badge-symmetry");
const statsEl = el("stats");
const noticesEl = el("notices");
const corpusSelect = el("corpus-select") as HTMLSelectElement;
const speedSlider = el("speed") as HTMLInputElement;

let tool: ToolName = "select";
let pendingEdgeVertex: number | null = null;
let dragIndex: number | null = null;
let dragMoved = false;
let panning: { startX: number; startY: number; ox: number; oy: number } | null = null;
let busy = false;

const player = new TrajectoryPlayer(
  (frame) => store.setAnimationFrame(frame),
  () => {
    const frames = pendingAdoption;
    pendingAdoption = null;
    store.setAnimationFrame(null);
    if (frames) store.adoptVertices(frames);
  },
);
let pendingAdoption: [number, number][] | null = null;

// ----- rendering loop ----------------------------------------------------

function resizeCanvas(): void {
  const rect = canvas.getBoundingClientRect();
  const dpr = window.devicePixelRatio || 1;
  canvas.width = Math.max(1, Math.round(rect.width * dpr));
  canvas.height = Math.max(1, Math.round(rect.height * dpr));
  ctx!.setTransform(dpr, 0, 0, dpr, 0, 0);
}

let lastTick = performance.now();
function frameLoop(now: number): void {
  player.tick(now - lastTick);
  lastTick = now;
  const rect = canvas.getBoundingClientRect();
  renderer.draw(
    {
      doc: store.doc,
      coords: store.coords(),
      view: store.view,
      selection: store.selection,
      rigidity: store.reports.rigidity,
      frame: store.reports.frame,
      showFlexOverlay: store.showFlexOverlay && !store.animationOverride,
      showFrameOverlay: store.showFrameOverlay,
      unitTol: 1e-6,
    },
    rect.width,
    rect.height,
  );
  requestAnimationFrame(frameLoop);
}

// ----- panel -------------------------------------------------------------

function applyBadge(element: HTMLElement, badge: Badge): void {
  element.textContent = badge.text;
  element.className = `badge ${badge.tone}`;
}

function renderPanel(): void {
  applyBadge(badgeVerify, verifyBadge(store.reports.verify));
  applyBadge(badgeRigidity, rigidityBadge(store.reports.rigidity));
  applyBadge(badgeSymmetry, symmetryBadge(store.reports.symmetry));

  const doc = store.doc;
  const verify = store.reports.verify;
  const rows: [string, string][] = [
    ["vertices / edges", `${doc.vertices.length} / ${doc.edges.length}`],
    ["red edges", String(doc.red_edges.length)],
  ];
  if (verify) {
    rows.push(
      ["max unit deviation", verify.max_unit_deviation.toExponential(3)],
      ["crossings", String(verify.crossings.length)],
      ["coincidences", String(verify.coincidences.length)],
      ["min clearance",
        verify.min_clearance === null ? "∞" : verify.min_clearance.toExponential(3)],
    );
  }
  statsEl.innerHTML = rows
    .map(([k, v]) => `<dt>${k}</dt><dd>${v}</dd>`)
    .join("");

  noticesEl.innerHTML = "";
  for (const notice of store.notices) {
    const div = document.createElement("div");
    div.className = `notice ${notice.kind}`;
    div.textContent = notice.text;
    div.onclick = () => store.dismissNotice(notice.id);
    noticesEl.appendChild(div);
  }

  (el("act-undo") as HTMLButtonElement).disabled = !store.canUndo;
  (el("act-redo") as HTMLButtonElement).disabled = !store.canRedo;
}

store.subscribe(renderPanel);

// ----- tools and pointer handling -----------------------------------------

function setTool(next: ToolName): void {
  tool = next;
  pendingEdgeVertex = null;
  for (const name of ["select", "vertex", "edge", "stamp"] as const) {
    el(`tool-${name}`).classList.toggle("active", name === tool);
  }
}

function canvasPoint(event: PointerEvent | WheelEvent): [number, number] {
  const rect = canvas.getBoundingClientRect();
  return [event.clientX - rect.left, event.clientY - rect.top];
}

canvas.addEventListener("pointerdown", (event) => {
  const [sx, sy] = canvasPoint(event);
  const coords = store.coords();
  if (tool === "vertex") {
    const [wx, wy] = toWorld(store.view, sx, sy);
    store.addVertex(wx, wy);
    return;
  }
  if (tool === "edge") {
    const hit = pickVertex(coords, store.view, sx, sy);
    if (hit === null) {
      pendingEdgeVertex = null;
      store.clearSelection();
      renderPanel();
      return;
    }
    if (pendingEdgeVertex === null) {
      pendingEdgeVertex = hit;
      store.clearSelection();
      store.selection.vertices.add(hit);
      renderPanel();
    } else if (hit !== pendingEdgeVertex) {
      store.addEdge(pendingEdgeVertex, hit);
      pendingEdgeVertex = null;
      store.clearSelection();
    }
    return;
  }
  if (tool === "stamp") {
    const edge = pickEdge(store.doc, coords, store.view, sx, sy);
    if (!edge) return;
    const [u, v] = edge;
    const [wx, wy] = toWorld(store.view, sx, sy);
    const [ax, ay] = coords[u];
    const [bx, by] = coords[v];
    const cross = (bx - ax) * (wy - ay) - (by - ay) * (wx - ax);
    store.stampTriangle(u, v, cross >= 0 ? 1 : -1);
    return;
  }
  // select tool
  const vertexHit = pickVertex(coords, store.view, sx, sy);
  if (vertexHit !== null) {
    canvas.setPointerCapture(event.pointerId);
    dragIndex = vertexHit;
    dragMoved = false;
    if (!event.shiftKey) store.clearSelection();
    store.selection.vertices.add(vertexHit);
    store.pushSnapshot();
    renderPanel();
    return;
  }
  const edgeHit = pickEdge(store.doc, coords, store.view, sx, sy);
  if (edgeHit) {
    if (!event.shiftKey) store.clearSelection();
    store.selection.edges.add(edgeKey(edgeHit[0], edgeHit[1]));
    renderPanel();
    return;
  }
  if (!event.shiftKey) {
    store.clearSelection();
    renderPanel();
  }
  panning = {
    startX: sx,
    startY: sy,
    ox: store.view.offsetX,
    oy: store.view.offsetY,
  };
});

canvas.addEventListener("pointermove", (event) => {
  const [sx, sy] = canvasPoint(event);
  if (dragIndex !== null) {
    const [wx, wy] = toWorld(store.view, sx, sy);
    dragMoved = true;
    store.dragVertex(dragIndex, wx, wy, false);
    return;
  }
  if (panning) {
    store.view.offsetX = panning.ox + (sx - panning.startX);
    store.view.offsetY = panning.oy + (sy - panning.startY);
  }
});

canvas.addEventListener("pointerup", () => {
  if (dragIndex !== null && !dragMoved) store.discardSnapshot();
  dragIndex = null;
  panning = null;
});

canvas.addEventListener("wheel", (event) => {
  event.preventDefault();
  const [sx, sy] = canvasPoint(event);
  const factor = Math.exp(-event.deltaY * 0.0015);
  const view = store.view;
  const [wx, wy] = toWorld(view, sx, sy);
  view.scale = Math.min(Math.max(view.scale * factor, 5), 2000);
  view.offsetX = sx - wx * view.scale;
  view.offsetY = sy + wy * view.scale;
}, { passive: false });

// ----- toolbar -------------------------------------------------------------

el("tool-select").onclick = () => setTool("select");
el("tool-vertex").onclick = () => setTool("vertex");
el("tool-edge").onclick = () => setTool("edge");
el("tool-stamp").onclick = () => setTool("stamp");

el("act-toggle-red").onclick = () => {
  const [key] = store.selection.edges;
  if (!key) {
    store.notice("select an edge first", "info");
    return;
  }
  const [u, v] = key.split("-").map(Number);
  store.toggleRed(u, v);
};

el("act-delete").onclick = () => store.deleteSelection();
el("act-undo").onclick = () => store.undo();
el("act-redo").onclick = () => store.redo();

async function animate(frames: [number, number][][], adopt: [number, number][] | null): Promise<void> {
  player.load(frames);
  pendingAdoption = adopt;
  player.setSpeed(Number(speedSlider.value));
  player.play();
}

async function runRelax(mode: "all_unit" | "preserve_red"): Promise<void> {
  if (busy) return;
  busy = true;
  try {
    const result = await store.runRelax(mode);
    if (result) {
      if (!result.converged) store.notice("relaxation hit the iteration cap", "info");
      await animate(result.trajectory, result.final_vertices);
    }
  } finally {
    busy = false;
  }
}

el("run-relax-unit").onclick = () => void runRelax("all_unit");
el("run-relax-red").onclick = () => void runRelax("preserve_red");

el("run-flex").onclick = async () => {
  if (busy) return;
  busy = true;
  try {
    const result = await store.runFlex();
    if (!result) return;
    if (result.stalled) {
      store.notice("continuation stalled: no stage improved the red deviation", "info");
      return;
    }
    const last = result.stages[result.stages.length - 1];
    store.notice(`flex: ${result.stages.length} stages accepted`, "info");
    await animate(concatTrajectories(result.stages), last.final_vertices);
  } finally {
    busy = false;
  }
};

el("run-analyze").onclick = () => {
  void store.refreshRigidity();
  void store.refreshSymmetry();
};

el("run-frame").onclick = async () => {
  store.showFrameOverlay = !store.showFrameOverlay;
  if (store.showFrameOverlay && !store.reports.frame) await store.refreshFrame();
};

speedSlider.oninput = () => player.setSpeed(Number(speedSlider.value));

el("anim-stop").onclick = () => {
  player.stop();
  pendingAdoption = null;
  store.setAnimationFrame(null);
};

function download(name: string, text: string, type: string): void {
  const blob = new Blob([text], { type });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = name;
  anchor.click();
  URL.revokeObjectURL(url);
}

el("dl-json").onclick = () => {
  download(`${store.doc.id || "graph"}.json`, store.serialized(), "application/json");
};

el("dl-svg").onclick = async () => {
  try {
    const svg = await api.exportSvg(store.doc);
    download(`${store.doc.id || "graph"}.svg`, svg, "image/svg+xml");
  } catch (exc) {
    store.notice(`SVG export failed: ${(exc as Error).message}`, "error");
  }
};

// ----- corpus picker -------------------------------------------------------

async function populateCorpus(): Promise<void> {
  try {
    const entries = await api.corpusIndex();
    for (const entry of entries) {
      const option = document.createElement("option");
      option.value = entry.id;
      const red = entry.red_count ? `, ${entry.red_count} red` : "";
      option.textContent = `${entry.id} (${entry.vertex_count}v${red})`;
      corpusSelect.appendChild(option);
    }
  } catch (exc) {
    store.notice(`corpus unavailable: ${(exc as Error).message}`, "error");
  }
}

corpusSelect.onchange = async () => {
  const id = corpusSelect.value;
  if (!id) return;
  await store.loadCorpusEntry(id);
  const rect = canvas.getBoundingClientRect();
  store.view = fitView(store.coords(), rect.width, rect.height);
};

// ----- keyboard ------------------------------------------------------------

window.addEventListener("keydown", (event) => {
  if (event.target instanceof HTMLInputElement || event.target instanceof HTMLSelectElement) return;
  const key = event.key.toLowerCase();
  if ((event.ctrlKey || event.metaKey) && key === "z") {
    event.preventDefault();
    if (event.shiftKey) store.redo();
    else store.undo();
    return;
  }
  if ((event.ctrlKey || event.metaKey) && key === "y") {
    event.preventDefault();
    store.redo();
    return;
  }
  switch (key) {
    case "v": setTool("select"); break;
    case "a": setTool("vertex"); break;
    case "e": setTool("edge"); break;
    case "t": setTool("stamp"); break;
    case "r": el("act-toggle-red").click(); break;
    case "delete":
    case "backspace": store.deleteSelection(); break;
    case "escape": setTool("select"); break;
  }
});

// ----- boot ----------------------------------------------------------------

window.addEventListener("resize", resizeCanvas);
resizeCanvas();
renderPanel();
void populateCorpus();
requestAnimationFrame((now) => {
  lastTick = now;
  frameLoop(now);
});
