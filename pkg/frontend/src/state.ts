/**
 * Editor state: the working graph document, selection, view transform,
 * the latest reports from the server, and undo/redo history.
 *
 * Every edit builds a candidate document and revalidates it through the
 * format parser, so the working graph can never violate the file-format
 * invariants; rejected edits surface as notices instead of mutations.
 * Undo snapshots store serialized bytes, making undo/redo restoration
 * byte-identical by construction.
 */

import type { ApiClient } from "./api";
import {
  cloneDocument,
  coordsOf,
  documentFromJson,
  edgeKey,
  edgeLength,
  FormatError,
  serializeDocument,
  type GraphDocument,
} from "./document";
import { throttle, type Throttled } from "./throttle";
import type {
  FlexRequestConfig,
  FlexResult,
  FrameReport,
  RelaxResult,
  RigidityReport,
  SymmetryReport,
  VerifyReport,
} from "./types";

export const VERIFY_THROTTLE_MS = 150;
const STAMP_DEVIATION_CAP = 0.1;
const UNDO_LIMIT = 200;

export type NoticeKind = "info" | "error";

export interface Notice {
  id: number;
  text: string;
  kind: NoticeKind;
}

export interface ViewTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export interface Reports {
  verify: VerifyReport | null;
  rigidity: RigidityReport | null;
  symmetry: SymmetryReport | null;
  frame: FrameReport | null;
}

export const EMPTY_DOCUMENT: GraphDocument = {
  id: "",
  caption: "",
  symmetry: null,
  vertices: [],
  edges: [],
  red_edges: [],
  claimed_deviations: [],
};

type ReportKind = keyof Reports;

export class EditorStore {
  doc: GraphDocument;
  selection = { vertices: new Set<number>(), edges: new Set<string>() };
  view: ViewTransform = { scale: 80, offsetX: 0, offsetY: 0 };
  reports: Reports = { verify: null, rigidity: null, symmetry: null, frame: null };
  notices: Notice[] = [];
  /** Vertex positions drawn instead of the document while a trajectory plays. */
  animationOverride: [number, number][] | null = null;
  showFlexOverlay = true;
  showFrameOverlay = false;

  readonly requestVerify: Throttled<[]>;

  private readonly api: ApiClient;
  private undoStack: string[] = [];
  private redoStack: string[] = [];
  private listeners = new Set<() => void>();
  private noticeSeq = 0;
  private requestSeq: Record<ReportKind, number> = {
    verify: 0,
    rigidity: 0,
    symmetry: 0,
    frame: 0,
  };

  constructor(api: ApiClient, initial: GraphDocument = EMPTY_DOCUMENT) {
    this.api = api;
    this.doc = cloneDocument(initial);
    this.requestVerify = throttle(() => {
      void this.refreshVerify();
    }, VERIFY_THROTTLE_MS);
  }

  subscribe(listener: () => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  // ----- notices -------------------------------------------------------

  notice(text: string, kind: NoticeKind = "info"): Notice {
    const entry = { id: ++this.noticeSeq, text, kind };
    this.notices.push(entry);
    if (this.notices.length > 6) this.notices.shift();
    this.emit();
    return entry;
  }

  dismissNotice(id: number): void {
    this.notices = this.notices.filter((n) => n.id !== id);
    this.emit();
  }

  // ----- document loading and history ----------------------------------

  loadDocument(doc: GraphDocument): void {
    this.doc = cloneDocument(doc);
    this.undoStack = [];
    this.redoStack = [];
    this.clearSelection();
    this.animationOverride = null;
    this.reports = { verify: null, rigidity: null, symmetry: null, frame: null };
    this.emit();
    void this.refreshVerify();
    void this.refreshRigidity();
    void this.refreshSymmetry();
  }

  async loadCorpusEntry(id: string): Promise<void> {
    try {
      this.loadDocument(await this.api.corpusDocument(id));
    } catch (exc) {
      this.notice(`could not load ${id}: ${(exc as Error).message}`, "error");
    }
  }

  serialized(): string {
    return serializeDocument(this.doc);
  }

  get canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  get canRedo(): boolean {
    return this.redoStack.length > 0;
  }

  undo(): void {
    const snapshot = this.undoStack.pop();
    if (snapshot === undefined) return;
    this.redoStack.push(this.serialized());
    this.restore(snapshot);
  }

  redo(): void {
    const snapshot = this.redoStack.pop();
    if (snapshot === undefined) return;
    this.undoStack.push(this.serialized());
    this.restore(snapshot);
  }

  private restore(snapshot: string): void {
    this.doc = documentFromJson(JSON.parse(snapshot));
    this.clearSelection();
    this.reports.verify = null;
    this.reports.rigidity = null;
    this.reports.symmetry = null;
    this.reports.frame = null;
    this.emit();
    this.requestVerify();
  }

  /** Capture the pre-gesture document once, e.g. on drag start. */
  pushSnapshot(): void {
    this.undoStack.push(this.serialized());
    if (this.undoStack.length > UNDO_LIMIT) this.undoStack.shift();
    this.redoStack = [];
  }

  /** Drop an unused gesture snapshot (pointer-down without a move). */
  discardSnapshot(): void {
    if (this.undoStack.length && this.undoStack[this.undoStack.length - 1] === this.serialized()) {
      this.undoStack.pop();
    }
  }

  // ----- edit actions ---------------------------------------------------

  /** Validate a candidate document; commit it or surface a notice. */
  private apply(build: (draft: GraphDocument) => GraphDocument | void, snapshot = true): boolean {
    const draft = cloneDocument(this.doc);
    let candidate: GraphDocument;
    try {
      candidate = documentFromJson(
        JSON.parse(serializeDocument(build(draft) ?? draft)),
      );
    } catch (exc) {
      if (exc instanceof FormatError) {
        this.notice(exc.message, "error");
        return false;
      }
      throw exc;
    }
    if (snapshot) this.pushSnapshot();
    this.doc = candidate;
    this.reports.rigidity = null;
    this.reports.symmetry = null;
    this.reports.frame = null;
    this.emit();
    this.requestVerify();
    return true;
  }

  addVertex(x: number, y: number): boolean {
    if (!Number.isFinite(x) || !Number.isFinite(y)) {
      this.notice("vertex coordinates must be finite", "error");
      return false;
    }
    return this.apply((draft) => {
      draft.vertices.push([String(x), String(y)]);
    });
  }

  addEdge(u: number, v: number): boolean {
    return this.apply((draft) => {
      draft.edges.push([u, v]);
    });
  }

  toggleRed(u: number, v: number): boolean {
    const key = edgeKey(u, v);
    return this.apply((draft) => {
      const kept = draft.red_edges.filter(([a, b]) => edgeKey(a, b) !== key);
      if (kept.length === draft.red_edges.length) {
        kept.push(u < v ? [u, v] : [v, u]);
      } else {
        draft.claimed_deviations = draft.claimed_deviations.filter(
          (c) => edgeKey(c.edge[0], c.edge[1]) !== key,
        );
      }
      draft.red_edges = kept;
    });
  }

  /**
   * Move one vertex. During a drag gesture the caller takes the snapshot
   * once on pointer-down and passes snapshot=false for the moves.
   */
  dragVertex(index: number, x: number, y: number, snapshot = true): boolean {
    if (index < 0 || index >= this.doc.vertices.length) {
      this.notice(`no vertex ${index}`, "error");
      return false;
    }
    if (!Number.isFinite(x) || !Number.isFinite(y)) {
      this.notice("vertex coordinates must be finite", "error");
      return false;
    }
    return this.apply((draft) => {
      draft.vertices[index] = [String(x), String(y)];
    }, snapshot);
  }

  /**
   * Build a unit equilateral triangle on an existing near-unit edge.
   * side +1 places the apex to the left of u -> v, -1 to the right.
   */
  stampTriangle(u: number, v: number, side: 1 | -1): boolean {
    const n = this.doc.vertices.length;
    if (u < 0 || u >= n || v < 0 || v >= n || u === v) {
      this.notice("stamp needs a valid edge", "error");
      return false;
    }
    const length = edgeLength(this.doc, u, v);
    if (Math.abs(length - 1.0) > STAMP_DEVIATION_CAP) {
      this.notice(
        `stamp needs a near-unit edge (this one is ${length.toFixed(3)})`,
        "error",
      );
      return false;
    }
    const [ax, ay] = this.doc.vertices[u].map(Number);
    const [bx, by] = this.doc.vertices[v].map(Number);
    const dx = bx - ax;
    const dy = by - ay;
    // Rotate the base by +-60 degrees about u: the apex completes an
    // equilateral triangle, so both new edges inherit the base length.
    const cos = 0.5;
    const sin = side * (Math.sqrt(3) / 2);
    const apexX = ax + dx * cos - dy * sin;
    const apexY = ay + dx * sin + dy * cos;
    return this.apply((draft) => {
      const apex = draft.vertices.length;
      draft.vertices.push([String(apexX), String(apexY)]);
      draft.edges.push([u, apex], [v, apex]);
    });
  }

  /** Delete the selected vertices (with incident edges) and edges. */
  deleteSelection(): boolean {
    const victims = this.selection.vertices;
    const edgeVictims = this.selection.edges;
    if (victims.size === 0 && edgeVictims.size === 0) {
      this.notice("nothing selected", "info");
      return false;
    }
    const remap = new Map<number, number>();
    let next = 0;
    for (let i = 0; i < this.doc.vertices.length; i++) {
      if (!victims.has(i)) remap.set(i, next++);
    }
    const survives = (u: number, v: number) =>
      remap.has(u) && remap.has(v) && !edgeVictims.has(edgeKey(u, v));
    const ok = this.apply((draft) => {
      draft.vertices = draft.vertices.filter((_, i) => !victims.has(i));
      draft.edges = draft.edges
        .filter(([a, b]) => survives(a, b))
        .map(([a, b]) => [remap.get(a)!, remap.get(b)!] as [number, number]);
      draft.red_edges = draft.red_edges
        .filter(([a, b]) => survives(a, b))
        .map(([a, b]) => [remap.get(a)!, remap.get(b)!] as [number, number]);
      draft.claimed_deviations = draft.claimed_deviations
        .filter((c) => survives(c.edge[0], c.edge[1]))
        .map((c) => ({
          edge: [remap.get(c.edge[0])!, remap.get(c.edge[1])!] as [number, number],
          length: c.length,
        }));
    });
    if (ok) this.clearSelection();
    return ok;
  }

  clearSelection(): void {
    this.selection.vertices.clear();
    this.selection.edges.clear();
  }

  // ----- report refreshes (latest response wins per kind) ---------------

  private fresh(kind: ReportKind): number {
    return ++this.requestSeq[kind];
  }

  private isCurrent(kind: ReportKind, token: number): boolean {
    return this.requestSeq[kind] === token;
  }

  async refreshVerify(): Promise<void> {
    const token = this.fresh("verify");
    try {
      const report = await this.api.verify(this.doc);
      if (!this.isCurrent("verify", token)) return;
      this.reports.verify = report;
    } catch (exc) {
      if (!this.isCurrent("verify", token)) return;
      this.reports.verify = null;
      this.notice(`verify failed: ${(exc as Error).message}`, "error");
    }
    this.emit();
  }

  async refreshRigidity(includeRed = true): Promise<void> {
    const token = this.fresh("rigidity");
    try {
      const report = await this.api.rigidity(this.doc, { includeRed });
      if (!this.isCurrent("rigidity", token)) return;
      this.reports.rigidity = report;
    } catch (exc) {
      if (!this.isCurrent("rigidity", token)) return;
      this.reports.rigidity = null;
      this.notice(`rigidity failed: ${(exc as Error).message}`, "error");
    }
    this.emit();
  }

  async refreshSymmetry(): Promise<void> {
    const token = this.fresh("symmetry");
    try {
      const report = await this.api.symmetry(this.doc);
      if (!this.isCurrent("symmetry", token)) return;
      this.reports.symmetry = report;
    } catch (exc) {
      if (!this.isCurrent("symmetry", token)) return;
      this.reports.symmetry = null;
      this.notice(`symmetry failed: ${(exc as Error).message}`, "error");
    }
    this.emit();
  }

  async refreshFrame(): Promise<void> {
    const token = this.fresh("frame");
    try {
      const report = await this.api.frame(this.doc);
      if (!this.isCurrent("frame", token)) return;
      this.reports.frame = report;
    } catch (exc) {
      if (!this.isCurrent("frame", token)) return;
      this.reports.frame = null;
      this.notice(`frame failed: ${(exc as Error).message}`, "error");
    }
    this.emit();
  }

  // ----- solver runs ----------------------------------------------------

  async runRelax(mode: "all_unit" | "preserve_red"): Promise<RelaxResult | null> {
    try {
      return await this.api.relax(this.doc, { mode });
    } catch (exc) {
      this.notice(`relax failed: ${(exc as Error).message}`, "error");
      return null;
    }
  }

  async runFlex(config?: FlexRequestConfig): Promise<FlexResult | null> {
    try {
      return await this.api.flex(this.doc, config);
    } catch (exc) {
      this.notice(`flex failed: ${(exc as Error).message}`, "error");
      return null;
    }
  }

  /** Adopt solver output as the new working coordinates. */
  adoptVertices(positions: [number, number][]): boolean {
    if (positions.length !== this.doc.vertices.length) {
      this.notice("solver result no longer matches the document", "error");
      return false;
    }
    return this.apply((draft) => {
      draft.vertices = positions.map(([x, y]) => [String(x), String(y)]);
    });
  }

  setAnimationFrame(positions: [number, number][] | null): void {
    this.animationOverride = positions;
    this.emit();
  }

  coords(): [number, number][] {
    return this.animationOverride ?? coordsOf(this.doc);
  }
}
