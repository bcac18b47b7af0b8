/**
 * Typed client for the matchkit HTTP JSON API. All verification, rigidity,
 * relaxation, and analysis math lives on the server; this module only moves
 * documents and reports across the wire.
 */

import { documentFromJson, type GraphDocument } from "./document";
import type {
  CorpusEntry,
  FlexRequestConfig,
  FlexResult,
  FrameReport,
  RelaxRequestConfig,
  RelaxResult,
  RigidityReport,
  SvgStyleOverrides,
  SymmetryReport,
  ToleranceOverrides,
  VerifyReport,
} from "./types";

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl = "", fetchFn: FetchLike = (...args) => fetch(...args)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const text = await res.text();
    let decoded: unknown = null;
    try {
      decoded = text ? JSON.parse(text) : null;
    } catch {
      throw new ApiError(res.status, `response is not JSON (${res.status})`);
    }
    if (!res.ok) {
      const message = (decoded as { error?: string } | null)?.error;
      throw new ApiError(res.status, message ?? `HTTP ${res.status}`);
    }
    return decoded as T;
  }

  async corpusIndex(): Promise<CorpusEntry[]> {
    return this.request<CorpusEntry[]>("GET", "/api/corpus");
  }

  async corpusDocument(id: string): Promise<GraphDocument> {
    const raw = await this.request<unknown>("GET", `/api/corpus/${encodeURIComponent(id)}`);
    return documentFromJson(raw);
  }

  async verify(graph: GraphDocument, tolerances?: ToleranceOverrides): Promise<VerifyReport> {
    return this.request("POST", "/api/verify", { graph, ...(tolerances && { tolerances }) });
  }

  async rigidity(
    graph: GraphDocument,
    options?: { includeRed?: boolean; tolerances?: ToleranceOverrides },
  ): Promise<RigidityReport> {
    const body: Record<string, unknown> = { graph };
    if (options?.includeRed !== undefined) body.include_red = options.includeRed;
    if (options?.tolerances) body.tolerances = options.tolerances;
    return this.request("POST", "/api/rigidity", body);
  }

  async relax(
    graph: GraphDocument,
    config?: RelaxRequestConfig,
    tolerances?: ToleranceOverrides,
  ): Promise<RelaxResult> {
    return this.request("POST", "/api/relax", {
      graph,
      ...(config && { config }),
      ...(tolerances && { tolerances }),
    });
  }

  async flex(
    graph: GraphDocument,
    config?: FlexRequestConfig,
    tolerances?: ToleranceOverrides,
  ): Promise<FlexResult> {
    return this.request("POST", "/api/flex", {
      graph,
      ...(config && { config }),
      ...(tolerances && { tolerances }),
    });
  }

  async symmetry(graph: GraphDocument, tolerances?: ToleranceOverrides): Promise<SymmetryReport> {
    return this.request("POST", "/api/symmetry", { graph, ...(tolerances && { tolerances }) });
  }

  async frame(graph: GraphDocument, tolerances?: ToleranceOverrides): Promise<FrameReport> {
    return this.request("POST", "/api/frame", { graph, ...(tolerances && { tolerances }) });
  }

  async exportSvg(graph: GraphDocument, style?: SvgStyleOverrides): Promise<string> {
    const body = await this.request<{ svg: string }>("POST", "/api/export-svg", {
      graph,
      ...(style && { style }),
    });
    return body.svg;
  }
}
