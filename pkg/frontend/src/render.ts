import { mkdirSync, writeFileSync } from "fs";
import { dirname } from "path";
import { Table, readTable } from "./csvtable";
import {
  FigureKind,
  KIND_HEADERS,
  PlotSpec,
  SpecError,
  isFigureKind,
} from "./plotspec";
import * as momentumVsTime from "./kinds/momentum_vs_time";
import * as orientationVsTime from "./kinds/orientation_vs_time";
import * as energyOverlay from "./kinds/energy_overlay";
import * as sectionScatter from "./kinds/section_scatter";

const BUILDERS: Record<
  FigureKind,
  (tables: Table[], spec: PlotSpec) => string
> = {
  momentum_vs_time: momentumVsTime.figure,
  orientation_vs_time: orientationVsTime.figure,
  energy_overlay: energyOverlay.figure,
  section_scatter: sectionScatter.figure,
};

/** Validate the spec, read and check every input, build the SVG text. */
export function buildFigure(spec: PlotSpec): string {
  if (!isFigureKind(spec.kind)) {
    throw new SpecError(
      `unknown figure kind "${spec.kind}"; expected one of ` +
      Object.keys(BUILDERS).join(", ")
    );
  }
  if (spec.inputs.length === 0) {
    throw new SpecError("no input CSVs given");
  }
  if (!spec.out.endsWith(".svg")) {
    throw new SpecError(`output must be an .svg path, got "${spec.out}"`);
  }
  const header = KIND_HEADERS[spec.kind];
  const tables = spec.inputs.map((p) => readTable(p, header));
  return BUILDERS[spec.kind](tables, spec);
}

/** Render one spec to its output file; nothing is written on failure. */
export function render(spec: PlotSpec): string {
  const svg = buildFigure(spec);
  mkdirSync(dirname(spec.out), { recursive: true });
  writeFileSync(spec.out, svg);
  return spec.out;
}
