import { column, stem, Table } from "../csvtable";
import { PlotSpec } from "../plotspec";
import { lineFigure, Series } from "../svg";

/** Mean energy against kick count, one line per energy series file. */
export function figure(tables: Table[], spec: PlotSpec): string {
  const series: Series[] = tables.map((t) => ({
    label: stem(t.path),
    x: column(t, "kick"),
    y: column(t, "mean_energy"),
  }));
  return lineFigure(series, spec.xLabel, spec.yLabel);
}
