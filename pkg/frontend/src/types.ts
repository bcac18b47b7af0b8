// Wire types for the matchkit HTTP JSON API. Field names match the
// server's report dictionaries exactly.

export interface CorpusEntry {
  id: string;
  vertex_count: number;
  red_count: number;
  symmetry: string | null;
}

export interface RedDeviation {
  edge: [number, number];
  deviation: number;
}

export interface Crossing {
  edge1: [number, number];
  edge2: [number, number];
  kind: string;
}

/** [kind, index, index, distance] rows; "vertex" or "edge" kind. */
export type Coincidence = (string | number)[];

export interface VerifyReport {
  degrees_ok: boolean;
  offending_vertices: number[];
  max_unit_deviation: number;
  red_deviations: RedDeviation[];
  crossings: Crossing[];
  coincidences: Coincidence[];
  /** Null when the drawing has no non-adjacent edge pairs. */
  min_clearance: number | null;
  is_matchstick: boolean;
  is_near_matchstick: boolean;
}

export interface RigidityReport {
  rank: number;
  dof: number;
  infinitesimally_rigid: boolean;
  /** Each basis vector is [dx0, dy0, dx1, dy1, ...]. */
  flex_basis: number[][];
}

export interface SymmetryTransform {
  type: "rotation" | "mirror";
  order?: number;
  angle: number;
  center: [number, number];
}

export interface SymmetryReport {
  label: string;
  transforms: SymmetryTransform[];
  vertex_permutations: number[][];
}

export interface FrameReport {
  outer_cycle: number[];
  frame_triangles: [number, number, number][];
  red_in_frame: [number, number][];
}

export interface RelaxResult {
  final_vertices: [number, number][];
  objective_history: number[];
  converged: boolean;
  iterations: number;
  max_unit_residual: number;
  red_residuals: RedDeviation[];
  trajectory: [number, number][][];
}

export interface FlexResult {
  stages: RelaxResult[];
  stalled: boolean;
}

export interface ToleranceOverrides {
  unit_tol?: number;
  coincidence_tol?: number;
  rank_tol?: number;
  symmetry_tol?: number;
  rule_deviation_cap?: number;
}

export interface RelaxRequestConfig {
  mode?: "all_unit" | "preserve_red";
  unit_weight?: number;
  red_weight?: number;
  max_iterations?: number;
  gradient_tol?: number;
  damping_init?: number;
  pinned?: [number, number];
}

export interface FlexRequestConfig {
  shrink_factor?: number;
  target_red_deviation?: number;
  unit_residual_cap?: number;
  max_stages?: number;
}

export interface SvgStyleOverrides {
  scale?: number;
  vertex_radius?: number;
  gray_stroke?: string;
  red_stroke?: string;
  margin?: number;
}
