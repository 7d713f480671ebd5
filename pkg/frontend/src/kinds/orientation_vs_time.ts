import { column, stem, Table } from "../csvtable";
import { PlotSpec } from "../plotspec";
import { lineFigure, Series } from "../svg";

/**
 * Orientation against time, one line per trajectory file.
 *
 * Uses the unwrapped angle so winding shows as drift instead of jumps.
 */
export function figure(tables: Table[], spec: PlotSpec): string {
  const series: Series[] = tables.map((t) => ({
    label: stem(t.path),
    x: column(t, "t"),
    y: column(t, "theta_unwrapped"),
  }));
  return lineFigure(series, spec.xLabel, spec.yLabel);
}
