// Edge coloring by deviation from unit length. Within tolerance the edge
// stays neutral gray; beyond it the color ramps yellow -> orange -> red,
// saturating at 25% deviation.

export const GRAY = "#808080";
const RAMP_CAP = 0.25;

function channel(v: number): string {
  return Math.round(v).toString(16).padStart(2, "0");
}

export function deviationColor(deviation: number, unitTol = 1e-6): string {
  const magnitude = Math.abs(deviation);
  if (magnitude <= unitTol) return GRAY;
  const t = Math.min(magnitude / RAMP_CAP, 1.0);
  // #e6c800 (yellow) to #d81e00 (red)
  const r = 0xe6 + t * (0xd8 - 0xe6);
  const g = 0xc8 + t * (0x1e - 0xc8);
  return `#${channel(r)}${channel(g)}00`;
}
