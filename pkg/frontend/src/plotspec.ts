/** Spec rejected before any input is read: bad kind, inputs, or target. */
export class SpecError extends Error {}

export const FIGURE_KINDS = [
  "momentum_vs_time",
  "orientation_vs_time",
  "energy_overlay",
  "section_scatter",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

/** One figure: which CSVs feed it, what kind it is, where it goes. */
export interface PlotSpec {
  kind: FigureKind;
  inputs: string[];
  xLabel: string;
  yLabel: string;
  out: string;
}

const TRAJECTORY_HEADER = ["t", "kick", "theta_wrapped", "theta_unwrapped", "p_theta"];
const ENERGY_HEADER = ["kick", "mean_energy"];
const SECTION_HEADER = ["kick", "theta", "p_theta"];

/** Expected CSV header per figure kind, exact names and order. */
export const KIND_HEADERS: Record<FigureKind, string[]> = {
  momentum_vs_time: TRAJECTORY_HEADER,
  orientation_vs_time: TRAJECTORY_HEADER,
  energy_overlay: ENERGY_HEADER,
  section_scatter: SECTION_HEADER,
};

export const DEFAULT_LABELS: Record<FigureKind, { x: string; y: string }> = {
  momentum_vs_time: { x: "t", y: "p_theta" },
  orientation_vs_time: { x: "t", y: "theta (rad, unwrapped)" },
  energy_overlay: { x: "kick", y: "mean energy" },
  section_scatter: { x: "theta", y: "p_theta" },
};

export function isFigureKind(s: string): s is FigureKind {
  return (FIGURE_KINDS as readonly string[]).includes(s);
}

export function makeSpec(
  kind: FigureKind,
  inputs: string[],
  out: string,
  labels?: { x?: string; y?: string }
): PlotSpec {
  const d = DEFAULT_LABELS[kind];
  return {
    kind,
    inputs,
    out,
    xLabel: labels?.x ?? d.x,
    yLabel: labels?.y ?? d.y,
  };
}
