/**
 * Graph document handling: parse, validate, and serialize the JSON file
 * format used by the backend. Serialization reproduces the server's file
 * bytes exactly (fixed key order, two-space indent, unescaped unicode,
 * trailing newline, edges canonicalized u &lt; v and sorted), so undo
 * snapshots and downloads round-trip byte-identically.
 */

export interface ClaimedDeviation {
  edge: [number, number];
  length: string;
}

export interface GraphDocument {
  id: string;
  caption: string;
  symmetry: string | null;
  /** Coordinates as decimal strings, preserved verbatim. */
  vertices: [string, string][];
  edges: [number, number][];
  red_edges: [number, number][];
  claimed_deviations: ClaimedDeviation[];
}

export class FormatError extends Error {
  readonly kind: string;

  constructor(kind: string, message: string) {
    super(message);
    this.name = "FormatError";
    this.kind = kind;
  }
}

const DECIMAL = /^-?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$/;

function asCoordinate(value: unknown, entry: unknown): string {
  const text = typeof value === "number" ? String(value) : value;
  if (typeof text !== "string" || !DECIMAL.test(text.trim()) ||
      !Number.isFinite(Number(text))) {
    throw new FormatError("malformed", `bad coordinate ${JSON.stringify(entry)}`);
  }
  return text;
}

function asIndex(value: unknown): number {
  const idx = typeof value === "string" ? Number(value) : value;
  if (typeof idx !== "number" || !Number.isInteger(idx)) {
    throw new FormatError("malformed", `bad vertex index ${JSON.stringify(value)}`);
  }
  return idx;
}

export function edgeKey(u: number, v: number): string {
  return u < v ? `${u}-${v}` : `${v}-${u}`;
}

function canonical(u: number, v: number): [number, number] {
  return u < v ? [u, v] : [v, u];
}

function compareEdges(a: [number, number], b: [number, number]): number {
  return a[0] - b[0] || a[1] - b[1];
}

/** Validate a decoded JSON value and return a canonicalized document. */
export function documentFromJson(value: unknown): GraphDocument {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new FormatError("malformed", "graph document must be an object");
  }
  const raw = value as Record<string, unknown>;
  if (!("vertices" in raw)) throw new FormatError("malformed", "missing key 'vertices'");
  if (!("edges" in raw)) throw new FormatError("malformed", "missing key 'edges'");
  if (!Array.isArray(raw.vertices) || !Array.isArray(raw.edges)) {
    throw new FormatError("malformed", "vertices and edges must be arrays");
  }

  const vertices: [string, string][] = raw.vertices.map((entry) => {
    if (!Array.isArray(entry) || entry.length !== 2) {
      throw new FormatError("malformed", `bad vertex entry ${JSON.stringify(entry)}`);
    }
    return [asCoordinate(entry[0], entry), asCoordinate(entry[1], entry)];
  });
  const n = vertices.length;

  const edges: [number, number][] = [];
  const seen = new Set<string>();
  for (const entry of raw.edges) {
    if (!Array.isArray(entry) || entry.length !== 2) {
      throw new FormatError("malformed", `bad edge entry ${JSON.stringify(entry)}`);
    }
    const u = asIndex(entry[0]);
    const v = asIndex(entry[1]);
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw new FormatError("index", `edge (${u},${v}) out of range`);
    }
    if (u === v) throw new FormatError("self_loop", `self-loop at ${u}`);
    const e = canonical(u, v);
    const key = edgeKey(u, v);
    if (seen.has(key)) throw new FormatError("duplicate_edge", `duplicate edge (${e[0]},${e[1]})`);
    seen.add(key);
    edges.push(e);
  }
  edges.sort(compareEdges);

  const redRaw = Array.isArray(raw.red_edges) ? raw.red_edges : [];
  const redSet = new Set<string>();
  const red: [number, number][] = [];
  for (const entry of redRaw) {
    if (!Array.isArray(entry) || entry.length !== 2) {
      throw new FormatError("malformed", `bad red edge ${JSON.stringify(entry)}`);
    }
    const e = canonical(asIndex(entry[0]), asIndex(entry[1]));
    const key = edgeKey(e[0], e[1]);
    if (!seen.has(key)) {
      throw new FormatError("red_not_edge", `red edge (${e[0]},${e[1]}) not in edge set`);
    }
    if (!redSet.has(key)) {
      redSet.add(key);
      red.push(e);
    }
  }
  red.sort(compareEdges);

  const claimsRaw = Array.isArray(raw.claimed_deviations) ? raw.claimed_deviations : [];
  const claims: ClaimedDeviation[] = claimsRaw.map((entry) => {
    const item = entry as { edge?: unknown; length?: unknown };
    if (!Array.isArray(item.edge) || item.edge.length !== 2) {
      throw new FormatError("malformed", `bad claimed deviation ${JSON.stringify(entry)}`);
    }
    const e = canonical(asIndex(item.edge[0]), asIndex(item.edge[1]));
    if (!redSet.has(edgeKey(e[0], e[1]))) {
      throw new FormatError("claim_not_red", `claimed deviation on non-red edge (${e[0]},${e[1]})`);
    }
    if (typeof item.length !== "string" && typeof item.length !== "number") {
      throw new FormatError("malformed", `bad claimed length ${JSON.stringify(entry)}`);
    }
    return { edge: e, length: String(item.length) };
  });

  return {
    id: typeof raw.id === "string" ? raw.id : "",
    caption: typeof raw.caption === "string" ? raw.caption : "",
    symmetry: typeof raw.symmetry === "string" ? raw.symmetry : null,
    vertices,
    edges,
    red_edges: red,
    claimed_deviations: claims,
  };
}

export function parseDocument(text: string): GraphDocument {
  let decoded: unknown;
  try {
    decoded = JSON.parse(text);
  } catch (exc) {
    throw new FormatError("malformed", `invalid JSON: ${exc}`);
  }
  return documentFromJson(decoded);
}

/** File bytes: fixed key order, indent 2, trailing newline. */
export function serializeDocument(doc: GraphDocument): string {
  const ordered = {
    id: doc.id,
    caption: doc.caption,
    symmetry: doc.symmetry,
    vertices: doc.vertices,
    edges: doc.edges,
    red_edges: doc.red_edges,
    claimed_deviations: doc.claimed_deviations.map((c) => ({
      edge: c.edge,
      length: c.length,
    })),
  };
  return JSON.stringify(ordered, null, 2) + "\n";
}

export function cloneDocument(doc: GraphDocument): GraphDocument {
  return documentFromJson(JSON.parse(serializeDocument(doc)));
}

/** Numeric view of the stored decimal-string coordinates. */
export function coordsOf(doc: GraphDocument): [number, number][] {
  return doc.vertices.map(([sx, sy]) => [Number(sx), Number(sy)]);
}

export function hasEdge(doc: GraphDocument, u: number, v: number): boolean {
  const key = edgeKey(u, v);
  return doc.edges.some(([a, b]) => edgeKey(a, b) === key);
}

export function isRed(doc: GraphDocument, u: number, v: number): boolean {
  const key = edgeKey(u, v);
  return doc.red_edges.some(([a, b]) => edgeKey(a, b) === key);
}

export function edgeLength(doc: GraphDocument, u: number, v: number): number {
  const [ax, ay] = doc.vertices[u].map(Number);
  const [bx, by] = doc.vertices[v].map(Number);
  return Math.hypot(bx - ax, by - ay);
}
