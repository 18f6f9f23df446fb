/** CLI: regenerate figure images from velfield CSV outputs.
 *
 *   velfield-plots quiver <field-csv> <out-image> [--radius <m>]
 *   velfield-plots sweep <sweep-csv> <out-image-base>
 *
 * Image format follows the output extension (.png or .svg). The sweep
 * command derives two files from the base path: `<base>_cond.<ext>` and
 * `<base>_errors.<ext>`.
 */

import { pathToFileURL } from "url";

import { readFieldCsv, readSweepCsv } from "./csv.js";
import { renderQuiver } from "./quiver.js";
import { renderConditionPlot, renderErrorPlot } from "./sweep.js";
import { sweepOutputPaths, writeImage } from "./render.js";

const USAGE = `usage:
  velfield-plots quiver <field-csv> <out-image> [--radius <meters>]
  velfield-plots sweep <sweep-csv> <out-image-base>`;

export async function run(argv: string[]): Promise<number> {
  const [command, csvPath, outPath, ...rest] = argv;
  if (!command || !csvPath || !outPath) {
    console.error(USAGE);
    return 2;
  }
  try {
    if (command === "quiver") {
      let regionRadius: number | undefined;
      const flagIndex = rest.indexOf("--radius");
      if (flagIndex >= 0) {
        regionRadius = Number(rest[flagIndex + 1]);
        if (!Number.isFinite(regionRadius) || regionRadius <= 0) {
          throw new Error(`--radius needs a positive number, got '${rest[flagIndex + 1]}'`);
        }
      }
      const field = readFieldCsv(csvPath);
      await writeImage(renderQuiver(field, { regionRadius }), outPath);
      console.log(outPath);
      return 0;
    }
    if (command === "sweep") {
      const sweep = readSweepCsv(csvPath);
      const paths = sweepOutputPaths(outPath);
      await writeImage(renderConditionPlot(sweep), paths.cond);
      await writeImage(renderErrorPlot(sweep), paths.errors);
      console.log(paths.cond);
      console.log(paths.errors);
      return 0;
    }
    console.error(`unknown command '${command}'\n${USAGE}`);
    return 2;
  } catch (error) {
    console.error(`error: ${error instanceof Error ? error.message : String(error)}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  run(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
