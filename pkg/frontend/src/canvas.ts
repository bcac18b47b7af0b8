/**
 * Canvas rendering and hit-testing. World coordinates follow the drawing
 * convention of the file format (y up); the screen transform flips y.
 * All colors derive from the current document and the latest reports; no
 * verification logic lives here.
 */

import { deviationColor } from "./colors";
import { edgeKey, type GraphDocument } from "./document";
import type { ViewTransform } from "./state";
import type { FrameReport, RigidityReport } from "./types";

export interface Screen {
  x: number;
  y: number;
}

export function toScreen(view: ViewTransform, x: number, y: number): Screen {
  return { x: x * view.scale + view.offsetX, y: -y * view.scale + view.offsetY };
}

export function toWorld(view: ViewTransform, sx: number, sy: number): [number, number] {
  return [(sx - view.offsetX) / view.scale, (view.offsetY - sy) / view.scale];
}

export function fitView(
  coords: [number, number][],
  width: number,
  height: number,
  paddingPx = 40,
): ViewTransform {
  if (coords.length === 0) {
    return { scale: 80, offsetX: width / 2, offsetY: height / 2 };
  }
  const xs = coords.map((p) => p[0]);
  const ys = coords.map((p) => p[1]);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  // Lower bound keeps the transform usable when the canvas is smaller
  // than the padding (collapsed layouts, headless environments).
  const scale = Math.max(Math.min(
    (width - 2 * paddingPx) / spanX,
    (height - 2 * paddingPx) / spanY,
    200,
  ), 1);
  return {
    scale,
    offsetX: width / 2 - ((minX + maxX) / 2) * scale,
    offsetY: height / 2 + ((minY + maxY) / 2) * scale,
  };
}

function pointSegmentDistance(
  px: number, py: number,
  ax: number, ay: number,
  bx: number, by: number,
): number {
  const dx = bx - ax;
  const dy = by - ay;
  const lengthSq = dx * dx + dy * dy;
  let t = lengthSq > 0 ? ((px - ax) * dx + (py - ay) * dy) / lengthSq : 0;
  t = Math.max(0, Math.min(1, t));
  return Math.hypot(px - (ax + t * dx), py - (ay + t * dy));
}

export function pickVertex(
  coords: [number, number][],
  view: ViewTransform,
  sx: number, sy: number,
  radiusPx = 8,
): number | null {
  let best: number | null = null;
  let bestDist = radiusPx;
  coords.forEach(([x, y], i) => {
    const s = toScreen(view, x, y);
    const d = Math.hypot(s.x - sx, s.y - sy);
    if (d <= bestDist) {
      bestDist = d;
      best = i;
    }
  });
  return best;
}

export function pickEdge(
  doc: GraphDocument,
  coords: [number, number][],
  view: ViewTransform,
  sx: number, sy: number,
  tolerancePx = 6,
): [number, number] | null {
  let best: [number, number] | null = null;
  let bestDist = tolerancePx;
  for (const [u, v] of doc.edges) {
    const a = toScreen(view, coords[u][0], coords[u][1]);
    const b = toScreen(view, coords[v][0], coords[v][1]);
    const d = pointSegmentDistance(sx, sy, a.x, a.y, b.x, b.y);
    if (d <= bestDist) {
      bestDist = d;
      best = [u, v];
    }
  }
  return best;
}

export interface RenderState {
  doc: GraphDocument;
  coords: [number, number][];
  view: ViewTransform;
  selection: { vertices: Set<number>; edges: Set<string> };
  rigidity: RigidityReport | null;
  frame: FrameReport | null;
  showFlexOverlay: boolean;
  showFrameOverlay: boolean;
  unitTol: number;
}

const VERTEX_RADIUS = 4;
const SELECT_COLOR = "#1668dc";
const RED_OUTLINE = "#ff0000";
const FLEX_COLOR = "#7a30c9";
const FRAME_FILL = "rgba(80, 160, 90, 0.18)";
const FRAME_EDGE = "#2e7d32";

export class Renderer {
  private readonly ctx: CanvasRenderingContext2D;

  constructor(ctx: CanvasRenderingContext2D) {
    this.ctx = ctx;
  }

  draw(state: RenderState, width: number, height: number): void {
    const { ctx } = this;
    ctx.clearRect(0, 0, width, height);
    if (state.showFrameOverlay && state.frame) this.drawFrame(state);
    this.drawEdges(state);
    this.drawVertices(state);
    if (state.showFlexOverlay) this.drawFlex(state);
  }

  private segment(state: RenderState, u: number, v: number): [Screen, Screen] {
    const a = toScreen(state.view, state.coords[u][0], state.coords[u][1]);
    const b = toScreen(state.view, state.coords[v][0], state.coords[v][1]);
    return [a, b];
  }

  private drawEdges(state: RenderState): void {
    const { ctx } = this;
    const red = new Set(state.doc.red_edges.map(([u, v]) => edgeKey(u, v)));
    ctx.lineCap = "round";
    for (const [u, v] of state.doc.edges) {
      const [a, b] = this.segment(state, u, v);
      const key = edgeKey(u, v);
      const [ux, uy] = state.coords[u];
      const [vx, vy] = state.coords[v];
      const deviation = Math.hypot(vx - ux, vy - uy) - 1.0;
      if (state.selection.edges.has(key)) {
        this.stroke(a, b, SELECT_COLOR, 7);
      }
      if (red.has(key)) {
        this.stroke(a, b, RED_OUTLINE, 5);
      }
      this.stroke(a, b, deviationColor(deviation, state.unitTol), 2);
    }
  }

  private stroke(a: Screen, b: Screen, color: string, width: number): void {
    const { ctx } = this;
    ctx.strokeStyle = color;
    ctx.lineWidth = width;
    ctx.beginPath();
    ctx.moveTo(a.x, a.y);
    ctx.lineTo(b.x, b.y);
    ctx.stroke();
  }

  private drawVertices(state: RenderState): void {
    const { ctx } = this;
    state.coords.forEach(([x, y], i) => {
      const s = toScreen(state.view, x, y);
      if (state.selection.vertices.has(i)) {
        ctx.fillStyle = SELECT_COLOR;
        ctx.beginPath();
        ctx.arc(s.x, s.y, VERTEX_RADIUS + 3, 0, 2 * Math.PI);
        ctx.fill();
      }
      ctx.fillStyle = "#000000";
      ctx.beginPath();
      ctx.arc(s.x, s.y, VERTEX_RADIUS, 0, 2 * Math.PI);
      ctx.fill();
    });
  }

  /** First flex-basis vector as velocity arrows, when the graph flexes. */
  private drawFlex(state: RenderState): void {
    const basis = state.rigidity?.flex_basis;
    if (!basis || basis.length === 0) return;
    const flex = basis[0];
    const { ctx } = this;
    ctx.strokeStyle = FLEX_COLOR;
    ctx.fillStyle = FLEX_COLOR;
    ctx.lineWidth = 2;
    const gain = 0.9 * state.view.scale;
    state.coords.forEach(([x, y], i) => {
      const dx = flex[2 * i];
      const dy = flex[2 * i + 1];
      if (dx === undefined || dy === undefined) return;
      if (Math.hypot(dx, dy) * gain < 2) return;
      const from = toScreen(state.view, x, y);
      const to = toScreen(state.view, x + dx * 0.9, y + dy * 0.9);
      ctx.beginPath();
      ctx.moveTo(from.x, from.y);
      ctx.lineTo(to.x, to.y);
      ctx.stroke();
      const angle = Math.atan2(to.y - from.y, to.x - from.x);
      ctx.beginPath();
      ctx.moveTo(to.x, to.y);
      ctx.lineTo(to.x - 7 * Math.cos(angle - 0.45), to.y - 7 * Math.sin(angle - 0.45));
      ctx.lineTo(to.x - 7 * Math.cos(angle + 0.45), to.y - 7 * Math.sin(angle + 0.45));
      ctx.closePath();
      ctx.fill();
    });
  }

  private drawFrame(state: RenderState): void {
    const report = state.frame!;
    const { ctx } = this;
    ctx.fillStyle = FRAME_FILL;
    for (const [a, b, c] of report.frame_triangles) {
      const pa = toScreen(state.view, state.coords[a][0], state.coords[a][1]);
      const pb = toScreen(state.view, state.coords[b][0], state.coords[b][1]);
      const pc = toScreen(state.view, state.coords[c][0], state.coords[c][1]);
      ctx.beginPath();
      ctx.moveTo(pa.x, pa.y);
      ctx.lineTo(pb.x, pb.y);
      ctx.lineTo(pc.x, pc.y);
      ctx.closePath();
      ctx.fill();
    }
    const cycle = report.outer_cycle;
    if (cycle.length > 1) {
      ctx.strokeStyle = FRAME_EDGE;
      ctx.lineWidth = 3;
      ctx.beginPath();
      cycle.forEach((idx, k) => {
        const p = toScreen(state.view, state.coords[idx][0], state.coords[idx][1]);
        if (k === 0) ctx.moveTo(p.x, p.y);
        else ctx.lineTo(p.x, p.y);
      });
      ctx.closePath();
      ctx.stroke();
    }
  }
}
