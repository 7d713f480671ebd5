import { spawnSync } from "child_process";
import { mkdtempSync, readFileSync, rmSync } from "fs";
import { tmpdir } from "os";
import { dirname, join } from "path";
import { fileURLToPath } from "url";
import { afterAll, describe, expect, it } from "vitest";
import { presetNames, presetSpecs } from "../src/presets";
import { render } from "../src/render";
import { plotBox } from "../src/svg";

const ROOT = join(dirname(fileURLToPath(import.meta.url)), "..");
const FIXTURES = join(ROOT, "fixtures");

const outDir = mkdtempSync(join(tmpdir(), "figures-"));
afterAll(() => rmSync(outDir, { recursive: true, force: true }));

/** Pixel points of every series polyline, in document order. */
function polylines(svg: string): Array<Array<[number, number]>> {
  const out: Array<Array<[number, number]>> = [];
  for (const m of svg.matchAll(/<polyline class="plot-series"[^>]* points="([^"]+)"/g)) {
    out.push(
      m[1].split(" ").map((p) => {
        const [x, y] = p.split(",");
        return [parseFloat(x), parseFloat(y)];
      })
    );
  }
  return out;
}

function yTickSpacing(svg: string): number {
  const ys = [...svg.matchAll(/<g class="y-tick" transform="translate\(0,(-?[\d.]+)\)"/g)]
    .map((m) => parseFloat(m[1]))
    .sort((a, b) => a - b);
  expect(ys.length).toBeGreaterThanOrEqual(2);
  let spacing = Infinity;
  for (let i = 1; i < ys.length; i++) {
    spacing = Math.min(spacing, ys[i] - ys[i - 1]);
  }
  return spacing;
}

function separations(svg: string): number[] {
  const [a, b] = polylines(svg);
  expect(a.length).toBe(b.length);
  // pointwise vertical distance only makes sense on a shared time grid
  for (let i = 0; i < a.length; i++) {
    expect(Math.abs(a[i][0] - b[i][0])).toBeLessThan(0.02);
  }
  return a.map((p, i) => Math.abs(p[1] - b[i][1]));
}

describe("figure regeneration", () => {
  it("renders every preset and honors the two visual contracts", () => {
    const t0 = Date.now();
    const written: string[] = [];
    for (const name of presetNames()) {
      for (const spec of presetSpecs(name, join(FIXTURES, name), outDir)) {
        const out = render(spec);
        expect(readFileSync(out, "utf8")).toContain("</svg>");
        written.push(out);
      }
    }
    const elapsed = Date.now() - t0;
    expect(written.length).toBe(12);

    const plotHeight = plotBox().y1 - plotBox().y0;

    // two nearby starts under the bare quantum force separate visibly
    const fig1 = readFileSync(join(outDir, "fig1_momentum_vs_time.svg"), "utf8");
    const sep1 = separations(fig1);
    expect(sep1[0]).toBeLessThan(2);
    expect(Math.max(...sep1)).toBeGreaterThan(0.25 * plotHeight);

    // velocity-law twins stay within one axis tick of each other
    const fig2 = readFileSync(join(outDir, "fig2_orientation_vs_time.svg"), "utf8");
    const sep2 = separations(fig2);
    const tick = yTickSpacing(fig2);
    expect(Math.max(...sep2)).toBeLessThanOrEqual(tick);

    expect(elapsed).toBeLessThan(30000);
    const detail =
      `12 figures in ${elapsed} ms; fig1 separation ` +
      `${sep1[0].toFixed(2)}px -> ${Math.max(...sep1).toFixed(1)}px of ` +
      `${plotHeight.toFixed(0)}px; fig2 max ${Math.max(...sep2).toFixed(1)}px ` +
      `vs tick ${tick.toFixed(1)}px`;
    console.log(`criterion 10 figure_regeneration: PASS (${detail})`);
  });

  it("fixture CSVs match a fresh simulation CLI run", () => {
    const tmp = mkdtempSync(join(tmpdir(), "regen-"));
    try {
      const r = spawnSync("bohmrotor", ["run", "--preset", "fig1", "--out", tmp], {
        encoding: "utf8",
      });
      expect(r.error, String(r.error)).toBeUndefined();
      expect(r.status, r.stderr).toBe(0);
      for (const f of ["trajectory_0.csv", "trajectory_1.csv", "divergence.csv"]) {
        expect(readFileSync(join(tmp, f), "utf8")).toBe(
          readFileSync(join(FIXTURES, "fig1", f), "utf8")
        );
      }
    } finally {
      rmSync(tmp, { recursive: true, force: true });
    }
  });
});
