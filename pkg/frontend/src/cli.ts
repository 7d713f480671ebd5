#!/usr/bin/env node
import { parseArgs } from "util";
import { SchemaError } from "./csvtable";
import { FIGURE_KINDS, SpecError, isFigureKind, makeSpec } from "./plotspec";
import { presetNames, presetSpecs } from "./presets";
import { render } from "./render";

const USAGE = `usage:
  render_figure --kind <kind> --in <csv> [--in <csv> ...] --out <img.svg>
  render_figure --preset <name> --dir <csv-dir> --out-dir <dir>

kinds:   ${FIGURE_KINDS.join(", ")}
presets: ${presetNames().join(", ")}

Renders simulation CSV output to a fixed-size SVG figure. With --preset,
every figure mapped to that preset is rendered from the CSVs in --dir.
Exits 1 on a usage, spec, or input schema problem, 2 on an internal error.
`;

function fail(message: string): number {
  process.stderr.write(message + "\n");
  return 1;
}

function main(argv: string[]): number {
  let values;
  try {
    values = parseArgs({
      args: argv,
      options: {
        kind: { type: "string" },
        in: { type: "string", multiple: true },
        out: { type: "string" },
        preset: { type: "string" },
        dir: { type: "string" },
        "out-dir": { type: "string" },
        help: { type: "boolean", short: "h" },
      },
      allowPositionals: false,
    }).values;
  } catch (e) {
    return fail(`${(e as Error).message}\n${USAGE}`);
  }

  if (values.help) {
    process.stdout.write(USAGE);
    return 0;
  }

  try {
    if (values.preset !== undefined) {
      if (values.kind || values.in || values.out) {
        return fail(`--preset does not combine with --kind/--in/--out\n${USAGE}`);
      }
      if (!values.dir || !values["out-dir"]) {
        return fail(`--preset needs --dir and --out-dir\n${USAGE}`);
      }
      const specs = presetSpecs(values.preset, values.dir, values["out-dir"]);
      for (const spec of specs) {
        console.log(render(spec));
      }
      return 0;
    }

    if (values.kind === undefined) {
      return fail(`one of --kind or --preset is required\n${USAGE}`);
    }
    if (!isFigureKind(values.kind)) {
      return fail(
        `unknown figure kind "${values.kind}"; expected one of ` +
        `${FIGURE_KINDS.join(", ")}`
      );
    }
    if (!values.in || values.in.length === 0) {
      return fail(`--kind needs at least one --in CSV\n${USAGE}`);
    }
    if (!values.out) {
      return fail(`--kind needs --out\n${USAGE}`);
    }
    console.log(render(makeSpec(values.kind, values.in, values.out)));
    return 0;
  } catch (e) {
    if (e instanceof SchemaError || e instanceof SpecError) {
      return fail(e.message);
    }
    throw e;
  }
}

try {
  process.exitCode = main(process.argv.slice(2));
} catch (e) {
  const detail = e instanceof Error ? e.stack ?? e.message : String(e);
  process.stderr.write(`internal error: ${detail}\n`);
  process.exitCode = 2;
}
