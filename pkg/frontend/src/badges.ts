// Badge text and styling classes derived from the latest reports.

import type { RigidityReport, SymmetryReport, VerifyReport } from "./types";

export interface Badge {
  text: string;
  tone: "good" | "warn" | "bad" | "idle";
}

export function verifyBadge(report: VerifyReport | null): Badge {
  if (!report) return { text: "verdict: …", tone: "idle" };
  if (report.is_matchstick) return { text: "matchstick", tone: "good" };
  if (report.is_near_matchstick) return { text: "near-matchstick", tone: "warn" };
  return { text: "invalid drawing", tone: "bad" };
}

export function rigidityBadge(report: RigidityReport | null): Badge {
  if (!report) return { text: "rigidity: …", tone: "idle" };
  if (report.infinitesimally_rigid) return { text: "rigid (dof 0)", tone: "good" };
  return { text: `flexible (dof ${report.dof})`, tone: "warn" };
}

export function symmetryBadge(report: SymmetryReport | null): Badge {
  if (!report) return { text: "symmetry: …", tone: "idle" };
  const tone = report.label === "asymmetric" ? "idle" : "good";
  return { text: report.label, tone };
}
