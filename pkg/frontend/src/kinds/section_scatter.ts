import { column, stem, Table } from "../csvtable";
import { PlotSpec } from "../plotspec";
import { scatterFigure, Series } from "../svg";

/** Stroboscopic phase-space points, one dot cloud per section file. */
export function figure(tables: Table[], spec: PlotSpec): string {
  const series: Series[] = tables.map((t) => ({
    label: stem(t.path),
    x: column(t, "theta"),
    y: column(t, "p_theta"),
  }));
  return scatterFigure(series, spec.xLabel, spec.yLabel);
}
