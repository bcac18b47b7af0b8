/**
 * Editor store semantics: edits are validated before they land, rejected
 * edits surface as notices, undo/redo restores byte-identical documents,
 * and report refreshes are throttled with latest-response-wins races.
 */

import { afterEach, describe, expect, it, vi } from "vitest";

import type { ApiClient } from "../src/api";
import { GRAY, deviationColor } from "../src/colors";
import {
  documentFromJson,
  edgeLength,
  parseDocument,
  type GraphDocument,
} from "../src/document";
import { EditorStore, VERIFY_THROTTLE_MS } from "../src/state";
import type { FrameReport, RigidityReport, SymmetryReport, VerifyReport } from "../src/types";
import { fixture, fixtureJson, settle } from "./helpers";

const ROOT3_HALF = "0.8660254037844386";

function triangleDoc() {
  return documentFromJson({
    id: "tri",
    vertices: [["0", "0"], ["1", "0"], ["0.5", ROOT3_HALF]],
    edges: [[0, 1], [0, 2], [1, 2]],
    red_edges: [[1, 2]],
    claimed_deviations: [{ edge: [1, 2], length: "1.0" }],
  });
}

function squareDoc() {
  return documentFromJson({
    id: "sq",
    vertices: [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]],
    edges: [[0, 1], [1, 2], [2, 3], [0, 3]],
  });
}

/** Mock backend answering every report request with recorded bodies. */
function makeApi() {
  return {
    verify: vi.fn(
      async (_doc: GraphDocument): Promise<VerifyReport> =>
        fixtureJson("harborth_52_verify.json"),
    ),
    rigidity: vi.fn(async (): Promise<RigidityReport> => fixtureJson("unit_square_rigidity.json")),
    symmetry: vi.fn(async (): Promise<SymmetryReport> => fixtureJson("fig_60v_rot3_symmetry.json")),
    frame: vi.fn(
      async (): Promise<FrameReport> =>
        ({ outer_cycle: [], frame_triangles: [], red_in_frame: [] }),
    ),
    relax: vi.fn(async () => {
      throw new Error("unused");
    }),
    flex: vi.fn(async () => {
      throw new Error("unused");
    }),
    corpusDocument: vi.fn(async (id: string) => parseDocument(fixture(`${id}.http.json`))),
  };
}

function makeStore(doc = triangleDoc()) {
  const api = makeApi();
  const store = new EditorStore(api as unknown as ApiClient, doc);
  return { api, store };
}

afterEach(() => {
  vi.useRealTimers();
});

describe("loading", () => {
  it("loadDocument resets history and refreshes the reports", async () => {
    const { api, store } = makeStore();
    store.addVertex(5, 5);
    expect(store.canUndo).toBe(true);

    store.loadDocument(squareDoc());
    await settle();
    expect(store.doc.id).toBe("sq");
    expect(store.canUndo).toBe(false);
    expect(store.canRedo).toBe(false);
    expect(api.verify).toHaveBeenCalled();
    expect(api.rigidity).toHaveBeenCalled();
    expect(api.symmetry).toHaveBeenCalled();
    expect(store.reports.verify?.is_matchstick).toBe(true);
    expect(store.reports.symmetry?.label).toBe("rotational(3)");
  });

  it("loadCorpusEntry pulls and adopts a corpus document", async () => {
    const { store } = makeStore();
    await store.loadCorpusEntry("fig_60v_rot3");
    expect(store.doc.vertices).toHaveLength(60);
    expect(store.doc.red_edges).toHaveLength(3);
  });

  it("loadCorpusEntry turns fetch failures into a notice", async () => {
    const { api, store } = makeStore();
    api.corpusDocument.mockRejectedValueOnce(new Error("unknown corpus id 'zzz'"));
    await store.loadCorpusEntry("zzz");
    expect(store.doc.id).toBe("tri"); // untouched
    expect(store.notices.at(-1)?.text).toContain("could not load zzz");
  });
});

describe("edit actions", () => {
  it("addVertex appends and is undoable", () => {
    const { store } = makeStore();
    const before = store.serialized();
    expect(store.addVertex(2, 3)).toBe(true);
    expect(store.doc.vertices).toHaveLength(4);
    const after = store.serialized();

    store.undo();
    expect(store.serialized()).toBe(before); // byte-identical restore
    store.redo();
    expect(store.serialized()).toBe(after);
  });

  it("a rejected edit leaves the document and history untouched", () => {
    const { store } = makeStore();
    const before = store.serialized();
    expect(store.addEdge(1, 1)).toBe(false); // self-loop
    expect(store.addEdge(0, 1)).toBe(false); // duplicate
    expect(store.addEdge(0, 9)).toBe(false); // out of range
    expect(store.serialized()).toBe(before);
    expect(store.canUndo).toBe(false);
    expect(store.notices.filter((n) => n.kind === "error")).toHaveLength(3);
  });

  it("toggleRed flags and unflags, dropping orphaned claims", () => {
    const { store } = makeStore();
    expect(store.toggleRed(0, 1)).toBe(true);
    expect(store.doc.red_edges).toEqual([[0, 1], [1, 2]]);

    expect(store.toggleRed(2, 1)).toBe(true); // endpoint order is free
    expect(store.doc.red_edges).toEqual([[0, 1]]);
    expect(store.doc.claimed_deviations).toEqual([]); // claim followed its red flag
  });

  it("dragVertex replaces one coordinate pair", () => {
    const { store } = makeStore();
    expect(store.dragVertex(0, -0.25, 0.5)).toBe(true);
    expect(store.doc.vertices[0]).toEqual(["-0.25", "0.5"]);
    expect(store.dragVertex(7, 0, 0)).toBe(false);
    expect(store.dragVertex(0, Number.NaN, 0)).toBe(false);
  });

  it("a drag gesture collapses into a single undo step", () => {
    const { store } = makeStore();
    const before = store.serialized();
    store.pushSnapshot();
    for (let i = 1; i <= 5; i++) {
      store.dragVertex(0, i / 10, 0, false);
    }
    expect(store.doc.vertices[0][0]).toBe("0.5");
    store.undo();
    expect(store.serialized()).toBe(before);
    expect(store.canUndo).toBe(false); // one snapshot for the whole gesture
  });

  it("discardSnapshot drops an unused gesture snapshot only", () => {
    const { store } = makeStore();
    store.pushSnapshot();
    store.discardSnapshot(); // pointer down + up with no move
    expect(store.canUndo).toBe(false);

    store.pushSnapshot();
    store.dragVertex(0, 9, 9, false);
    store.discardSnapshot(); // document changed: snapshot must survive
    expect(store.canUndo).toBe(true);
  });

  it("undo and redo walk the whole edit history byte-identically", () => {
    const { store } = makeStore();
    const states = [store.serialized()];
    store.addVertex(2, 0);
    states.push(store.serialized());
    store.addEdge(0, 3);
    states.push(store.serialized());
    store.toggleRed(0, 3);
    states.push(store.serialized());

    store.undo();
    store.undo();
    store.undo();
    expect(store.serialized()).toBe(states[0]);
    store.redo();
    store.redo();
    store.redo();
    expect(store.serialized()).toBe(states[3]);
    expect(store.canRedo).toBe(false);
  });

  it("a fresh edit clears the redo branch", () => {
    const { store } = makeStore();
    store.addVertex(2, 0);
    store.undo();
    expect(store.canRedo).toBe(true);
    store.addVertex(3, 0);
    expect(store.canRedo).toBe(false);
  });
});

describe("stampTriangle", () => {
  it("builds an equilateral triangle on a unit edge", () => {
    const { store } = makeStore(squareDoc());
    expect(store.stampTriangle(0, 1, 1)).toBe(true);
    expect(store.doc.vertices).toHaveLength(5);
    const [ax, ay] = store.doc.vertices[4].map(Number);
    expect(ax).toBeCloseTo(0.5, 12);
    expect(ay).toBeCloseTo(Math.sqrt(3) / 2, 12);
    expect(edgeLength(store.doc, 0, 4)).toBeCloseTo(1, 12);
    expect(edgeLength(store.doc, 1, 4)).toBeCloseTo(1, 12);
    expect(store.doc.edges).toContainEqual([0, 4]);
    expect(store.doc.edges).toContainEqual([1, 4]);
  });

  it("mirrors the apex for the other side", () => {
    const { store } = makeStore(squareDoc());
    store.stampTriangle(0, 1, -1);
    const [, ay] = store.doc.vertices[4].map(Number);
    expect(ay).toBeCloseTo(-Math.sqrt(3) / 2, 12);
  });

  it("the new edges inherit a near-unit base length", () => {
    const { store } = makeStore(
      documentFromJson({
        vertices: [["0", "0"], ["1.08", "0"]],
        edges: [[0, 1]],
      }),
    );
    expect(store.stampTriangle(0, 1, 1)).toBe(true); // 0.08 < 0.10 cap
    expect(edgeLength(store.doc, 0, 2)).toBeCloseTo(1.08, 12);
    expect(edgeLength(store.doc, 1, 2)).toBeCloseTo(1.08, 12);
  });

  it("rejects bases that deviate beyond the cap", () => {
    const { store } = makeStore(
      documentFromJson({
        vertices: [["0", "0"], ["2", "0"]],
        edges: [[0, 1]],
      }),
    );
    expect(store.stampTriangle(0, 1, 1)).toBe(false);
    expect(store.doc.vertices).toHaveLength(2);
    expect(store.notices.at(-1)?.text).toContain("near-unit edge");
  });

  it("rejects invalid endpoints", () => {
    const { store } = makeStore(squareDoc());
    expect(store.stampTriangle(0, 0, 1)).toBe(false);
    expect(store.stampTriangle(0, 99, 1)).toBe(false);
  });
});

describe("deleteSelection", () => {
  it("remaps surviving edges, red flags, and claims", () => {
    const { store } = makeStore(
      documentFromJson({
        vertices: [["0", "0"], ["1", "0"], ["2", "0"], ["3", "0"]],
        edges: [[0, 1], [1, 2], [2, 3]],
        red_edges: [[2, 3]],
        claimed_deviations: [{ edge: [2, 3], length: "1.01" }],
      }),
    );
    store.selection.vertices.add(1);
    expect(store.deleteSelection()).toBe(true);
    expect(store.doc.vertices).toHaveLength(3);
    expect(store.doc.edges).toEqual([[1, 2]]); // old (2,3), reindexed
    expect(store.doc.red_edges).toEqual([[1, 2]]);
    expect(store.doc.claimed_deviations).toEqual([{ edge: [1, 2], length: "1.01" }]);
    expect(store.selection.vertices.size).toBe(0);
  });

  it("deletes a selected edge without touching vertices", () => {
    const { store } = makeStore(squareDoc());
    store.selection.edges.add("1-2");
    expect(store.deleteSelection()).toBe(true);
    expect(store.doc.vertices).toHaveLength(4);
    expect(store.doc.edges).toEqual([[0, 1], [0, 3], [2, 3]]);
  });

  it("is a notice when nothing is selected", () => {
    const { store } = makeStore();
    expect(store.deleteSelection()).toBe(false);
    expect(store.notices.at(-1)?.text).toBe("nothing selected");
  });

  it("one undo restores the pre-delete bytes", () => {
    const { store } = makeStore(squareDoc());
    const before = store.serialized();
    store.selection.vertices.add(2);
    store.deleteSelection();
    store.undo();
    expect(store.serialized()).toBe(before);
  });
});

describe("verification requests", () => {
  it("a drag stream issues at most one verify request per interval", async () => {
    vi.useFakeTimers();
    const { api, store } = makeStore(squareDoc());

    const durationMs = 600;
    for (let ms = 0; ms < durationMs; ms += 10) {
      store.dragVertex(0, ms / 1000, 0, false);
      vi.advanceTimersByTime(10);
    }
    vi.advanceTimersByTime(VERIFY_THROTTLE_MS); // trailing window
    await settle();

    const ceiling = Math.ceil(durationMs / VERIFY_THROTTLE_MS) + 1;
    expect(api.verify.mock.calls.length).toBeGreaterThanOrEqual(2);
    expect(api.verify.mock.calls.length).toBeLessThanOrEqual(ceiling);

    // The trailing request carries the final dragged position.
    const lastSent = api.verify.mock.calls.at(-1)![0];
    expect(lastSent.vertices[0][0]).toBe("0.59");
  });

  it("dragging recolors the incident edges once they deviate", () => {
    const { store } = makeStore(squareDoc());
    const color = (u: number, v: number) =>
      deviationColor(edgeLength(store.doc, u, v) - 1, 1e-6);
    expect(color(0, 1)).toBe(GRAY);
    expect(color(0, 3)).toBe(GRAY);

    store.dragVertex(0, 0.1, 0);
    expect(color(0, 1)).not.toBe(GRAY); // incident edges pick up heat
    expect(color(0, 3)).not.toBe(GRAY);
    expect(color(1, 2)).toBe(GRAY); // untouched edges stay gray
    expect(color(2, 3)).toBe(GRAY);
  });

  it("the latest verify response wins a race", async () => {
    const { api, store } = makeStore();
    const resolvers: ((r: VerifyReport) => void)[] = [];
    api.verify.mockImplementation(
      () => new Promise<VerifyReport>((resolve) => resolvers.push(resolve)),
    );

    const first = store.refreshVerify();
    const second = store.refreshVerify();
    const stale = { ...fixtureJson<VerifyReport>("harborth_52_verify.json"), max_unit_deviation: 111 };
    const current = { ...fixtureJson<VerifyReport>("harborth_52_verify.json"), max_unit_deviation: 222 };
    resolvers[1](current);
    await second;
    resolvers[0](stale); // late answer to the superseded request
    await first;
    expect(store.reports.verify?.max_unit_deviation).toBe(222);
  });

  it("a failed refresh clears the report and raises a notice", async () => {
    const { api, store } = makeStore();
    await store.refreshVerify();
    expect(store.reports.verify).not.toBeNull();
    api.verify.mockRejectedValueOnce(new Error("bad graph document: x"));
    await store.refreshVerify();
    expect(store.reports.verify).toBeNull();
    expect(store.notices.at(-1)?.text).toContain("verify failed");
  });

  it("edits invalidate the analysis reports until they are refreshed", async () => {
    const { store } = makeStore();
    await store.refreshRigidity();
    await store.refreshSymmetry();
    expect(store.reports.rigidity).not.toBeNull();
    expect(store.reports.symmetry).not.toBeNull();

    store.addVertex(4, 4);
    expect(store.reports.rigidity).toBeNull();
    expect(store.reports.symmetry).toBeNull();
  });
});

describe("solver integration", () => {
  it("adoptVertices rewrites coordinates and is undoable", () => {
    const { store } = makeStore(squareDoc());
    const before = store.serialized();
    const moved: [number, number][] = [[0, 0], [1, 0], [1, 1.5], [0, 1]];
    expect(store.adoptVertices(moved)).toBe(true);
    expect(store.doc.vertices[2]).toEqual(["1", "1.5"]);
    store.undo();
    expect(store.serialized()).toBe(before);
  });

  it("adoptVertices refuses stale results", () => {
    const { store } = makeStore(squareDoc());
    expect(store.adoptVertices([[0, 0]])).toBe(false);
    expect(store.notices.at(-1)?.text).toContain("no longer matches");
  });

  it("runRelax and runFlex surface backend errors as notices", async () => {
    const { api, store } = makeStore();
    api.relax.mockRejectedValueOnce(new Error("relaxation needs at least one vertex"));
    expect(await store.runRelax("all_unit")).toBeNull();
    expect(store.notices.at(-1)?.text).toContain("relax failed");

    api.flex.mockRejectedValueOnce(new Error("continuation needs at least one red edge"));
    expect(await store.runFlex()).toBeNull();
    expect(store.notices.at(-1)?.text).toContain("flex failed");
  });

  it("animation frames shadow the document coordinates", () => {
    const { store } = makeStore(squareDoc());
    expect(store.coords()[0]).toEqual([0, 0]);
    store.setAnimationFrame([[9, 9], [1, 0], [1, 1], [0, 1]]);
    expect(store.coords()[0]).toEqual([9, 9]);
    expect(store.doc.vertices[0]).toEqual(["0", "0"]); // document untouched
    store.setAnimationFrame(null);
    expect(store.coords()[0]).toEqual([0, 0]);
  });
});

describe("notices", () => {
  it("keeps only the most recent entries and supports dismissal", () => {
    const { store } = makeStore();
    for (let i = 0; i < 9; i++) store.notice(`n${i}`);
    expect(store.notices).toHaveLength(6);
    expect(store.notices[0].text).toBe("n3");
    const id = store.notices[0].id;
    store.dismissNotice(id);
    expect(store.notices.some((n) => n.id === id)).toBe(false);
  });
});
