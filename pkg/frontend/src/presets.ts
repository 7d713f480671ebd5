import { join } from "path";
import { FigureKind, PlotSpec, SpecError, makeSpec } from "./plotspec";

/** Driver table: which CSVs of each simulation preset feed which figure. */
const PRESET_FIGURES: Record<
  string,
  Array<{ kind: FigureKind; files: string[]; y?: string }>
> = {
  fig1: [
    { kind: "momentum_vs_time", files: ["trajectory_0.csv", "trajectory_1.csv"] },
    { kind: "orientation_vs_time", files: ["trajectory_0.csv", "trajectory_1.csv"] },
  ],
  fig2: [
    { kind: "orientation_vs_time", files: ["trajectory_0.csv", "trajectory_1.csv"] },
    {
      kind: "section_scatter",
      files: ["section_0.csv", "section_1.csv", "classical_section.csv"],
    },
  ],
  fig3: [
    { kind: "orientation_vs_time", files: ["trajectory_0.csv", "trajectory_1.csv"] },
    { kind: "section_scatter", files: ["section_0.csv", "section_1.csv"] },
  ],
  fig4: [
    { kind: "orientation_vs_time", files: ["trajectory_0.csv", "trajectory_1.csv"] },
    { kind: "section_scatter", files: ["section_0.csv", "section_1.csv"] },
  ],
  suppression: [
    {
      kind: "energy_overlay",
      files: ["quantum_energy.csv", "classical_energy.csv"],
      y: "ensemble mean energy",
    },
  ],
  diffusion: [
    {
      kind: "energy_overlay",
      files: ["classical_energy.csv"],
      y: "ensemble mean energy",
    },
  ],
  free_rotor_period: [
    { kind: "orientation_vs_time", files: ["trajectory_0.csv"] },
    { kind: "momentum_vs_time", files: ["trajectory_0.csv"] },
  ],
};

export function presetNames(): string[] {
  return Object.keys(PRESET_FIGURES).sort();
}

/**
 * PlotSpecs for one preset's output directory.
 *
 * Images land in outDir as <preset>_<kind>.svg; csvDir is only read.
 */
export function presetSpecs(
  name: string,
  csvDir: string,
  outDir: string
): PlotSpec[] {
  const figures = PRESET_FIGURES[name];
  if (!figures) {
    throw new SpecError(
      `unknown preset "${name}"; available: ${presetNames().join(", ")}`
    );
  }
  return figures.map((f) =>
    makeSpec(
      f.kind,
      f.files.map((file) => join(csvDir, file)),
      join(outDir, `${name}_${f.kind}.svg`),
      f.y ? { y: f.y } : undefined
    )
  );
}
