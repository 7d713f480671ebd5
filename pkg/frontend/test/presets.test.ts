import { existsSync } from "fs";
import { dirname, join } from "path";
import { fileURLToPath } from "url";
import { describe, expect, it } from "vitest";
import { SpecError } from "../src/plotspec";
import { presetNames, presetSpecs } from "../src/presets";

const ROOT = join(dirname(fileURLToPath(import.meta.url)), "..");
const FIXTURES = join(ROOT, "fixtures");

describe("presetSpecs", () => {
  it("covers the seven simulation presets", () => {
    expect(presetNames()).toEqual([
      "diffusion",
      "fig1",
      "fig2",
      "fig3",
      "fig4",
      "free_rotor_period",
      "suppression",
    ]);
  });

  it("maps fig2 to an orientation figure plus a section scatter", () => {
    const specs = presetSpecs("fig2", "csv", "img");
    expect(specs.map((s) => s.kind)).toEqual([
      "orientation_vs_time",
      "section_scatter",
    ]);
    expect(specs[0].inputs).toEqual([
      join("csv", "trajectory_0.csv"),
      join("csv", "trajectory_1.csv"),
    ]);
    expect(specs[1].inputs).toContain(join("csv", "classical_section.csv"));
    expect(specs[0].out).toBe(join("img", "fig2_orientation_vs_time.svg"));
  });

  it("overlays quantum and classical energy for suppression", () => {
    const specs = presetSpecs("suppression", "csv", "img");
    expect(specs.length).toBe(1);
    expect(specs[0].kind).toBe("energy_overlay");
    expect(specs[0].inputs).toEqual([
      join("csv", "quantum_energy.csv"),
      join("csv", "classical_energy.csv"),
    ]);
    expect(specs[0].yLabel).toBe("ensemble mean energy");
  });

  it("gives every preset at least one figure with unique targets", () => {
    const outs = new Set<string>();
    for (const name of presetNames()) {
      const specs = presetSpecs(name, "csv", "img");
      expect(specs.length).toBeGreaterThanOrEqual(1);
      for (const s of specs) {
        expect(s.out.endsWith(".svg")).toBe(true);
        outs.add(s.out);
      }
    }
    expect(outs.size).toBe(12);
  });

  it("references only files the simulation presets actually write", () => {
    // guards the driver table against drift in the CSV artifact names
    for (const name of presetNames()) {
      for (const spec of presetSpecs(name, join(FIXTURES, name), "img")) {
        for (const input of spec.inputs) {
          expect(existsSync(input), input).toBe(true);
        }
      }
    }
  });

  it("rejects an unknown preset", () => {
    expect(() => presetSpecs("fig9", "csv", "img")).toThrow(SpecError);
    expect(() => presetSpecs("fig9", "csv", "img")).toThrow(/available:/);
  });
});
