/** Hand-rolled SVG line/scatter figures with a fixed viewport. */

export const WIDTH = 900;
export const HEIGHT = 560;
export const MARGIN = { top: 20, right: 20, bottom: 48, left: 72 };

export const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

export interface Series {
  label: string;
  x: number[];
  y: number[];
}

export function plotBox() {
  return {
    x0: MARGIN.left,
    x1: WIDTH - MARGIN.right,
    y0: MARGIN.top,
    y1: HEIGHT - MARGIN.bottom,
  };
}

/** Joint min/max; a zero-width extent is padded to keep scales finite. */
export function extent(arrays: number[][]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const a of arrays) {
    for (const v of a) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (lo === Infinity) throw new Error("extent of no values");
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  return [lo, hi];
}

/** Tick positions inside [lo, hi] at a 1-2-5 step near (hi-lo)/target. */
export function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) return [lo];
  const raw = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = 10 * mag;
  for (const m of [1, 2, 5]) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  const i0 = Math.ceil(lo / step - 1e-9);
  const i1 = Math.floor(hi / step + 1e-9);
  const ticks: number[] = [];
  for (let i = i0; i <= i1; i++) {
    ticks.push(i === 0 ? 0 : i * step);
  }
  return ticks;
}

export function linearScale(d0: number, d1: number, r0: number, r1: number) {
  const k = (r1 - r0) / (d1 - d0);
  return (v: number) => r0 + (v - d0) * k;
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function tickLabel(v: number): string {
  return String(parseFloat(v.toPrecision(12)));
}

const px = (v: number) => v.toFixed(2);

function frame(
  fx: (v: number) => number,
  fy: (v: number) => number,
  xd: [number, number],
  yd: [number, number],
  xLabel: string,
  yLabel: string,
  series: Series[]
): { head: string[]; tail: string[] } {
  const box = plotBox();
  const head = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
    `<g font-family="sans-serif" font-size="13" fill="#000000">`,
  ];

  const xAxis: string[] = [];
  xAxis.push(`<g class="x-axis" transform="translate(0,${px(box.y1)})">`);
  xAxis.push(
    `<line x1="${px(box.x0)}" x2="${px(box.x1)}" stroke="#000000"/>`
  );
  for (const t of niceTicks(xd[0], xd[1])) {
    xAxis.push(`<g class="x-tick" transform="translate(${px(fx(t))},0)">`);
    xAxis.push(`<line y2="6" stroke="#000000"/>`);
    xAxis.push(
      `<text y="20" text-anchor="middle">${esc(tickLabel(t))}</text>`
    );
    xAxis.push(`</g>`);
  }
  xAxis.push(`</g>`);

  const yAxis: string[] = [];
  yAxis.push(`<g class="y-axis" transform="translate(${px(box.x0)},0)">`);
  yAxis.push(
    `<line y1="${px(box.y0)}" y2="${px(box.y1)}" stroke="#000000"/>`
  );
  for (const t of niceTicks(yd[0], yd[1])) {
    yAxis.push(`<g class="y-tick" transform="translate(0,${px(fy(t))})">`);
    yAxis.push(`<line x2="-6" stroke="#000000"/>`);
    yAxis.push(
      `<text x="-10" dy="0.32em" text-anchor="end">${esc(tickLabel(t))}</text>`
    );
    yAxis.push(`</g>`);
  }
  yAxis.push(`</g>`);

  const labels = [
    `<text class="x-label" x="${px((box.x0 + box.x1) / 2)}" y="${px(HEIGHT - 10)}" text-anchor="middle">${esc(xLabel)}</text>`,
    `<text class="y-label" transform="translate(18,${px((box.y0 + box.y1) / 2)}) rotate(-90)" text-anchor="middle">${esc(yLabel)}</text>`,
  ];

  const legend: string[] = [];
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    legend.push(
      `<g class="legend" transform="translate(${px(box.x0 + 12)},${px(box.y0 + 14 + 18 * i)})">`
    );
    legend.push(`<line x2="22" stroke="${color}" stroke-width="2.5"/>`);
    legend.push(`<text x="28" dy="0.32em">${esc(s.label)}</text>`);
    legend.push(`</g>`);
  });

  return {
    head: [...head, ...xAxis, ...yAxis, ...labels, ...legend],
    tail: [`</g>`, `</svg>`],
  };
}

function scales(series: Series[]) {
  const box = plotBox();
  const xd = extent(series.map((s) => s.x));
  const yd = extent(series.map((s) => s.y));
  const fx = linearScale(xd[0], xd[1], box.x0, box.x1);
  const fy = linearScale(yd[0], yd[1], box.y1, box.y0);
  return { xd, yd, fx, fy };
}

/** One polyline per series over shared axes. */
export function lineFigure(
  series: Series[],
  xLabel: string,
  yLabel: string
): string {
  const { xd, yd, fx, fy } = scales(series);
  const { head, tail } = frame(fx, fy, xd, yd, xLabel, yLabel, series);
  const marks = series.map((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = s.x.map((v, j) => `${px(fx(v))},${px(fy(s.y[j]))}`).join(" ");
    return `<polyline class="plot-series" fill="none" stroke="${color}" stroke-width="1.5" points="${pts}"/>`;
  });
  return [...head, ...marks, ...tail].join("\n") + "\n";
}

/** One dot cloud per series over shared axes. */
export function scatterFigure(
  series: Series[],
  xLabel: string,
  yLabel: string
): string {
  const { xd, yd, fx, fy } = scales(series);
  const { head, tail } = frame(fx, fy, xd, yd, xLabel, yLabel, series);
  const marks: string[] = [];
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    marks.push(`<g class="plot-series" fill="${color}">`);
    for (let j = 0; j < s.x.length; j++) {
      marks.push(
        `<circle class="plot-point" cx="${px(fx(s.x[j]))}" cy="${px(fy(s.y[j]))}" r="2"/>`
      );
    }
    marks.push(`</g>`);
  });
  return [...head, ...marks, ...tail].join("\n") + "\n";
}
