import { column, stem, Table } from "../csvtable";
import { PlotSpec } from "../plotspec";
import { lineFigure, Series } from "../svg";

/** Angular momentum against time, one line per trajectory file. */
export function figure(tables: Table[], spec: PlotSpec): string {
  const series: Series[] = tables.map((t) => ({
    label: stem(t.path),
    x: column(t, "t"),
    y: column(t, "p_theta"),
  }));
  return lineFigure(series, spec.xLabel, spec.yLabel);
}
