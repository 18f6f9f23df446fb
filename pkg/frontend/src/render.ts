/** Output handling: SVG passthrough or PNG rasterization. */

import { writeFileSync } from "fs";

export async function writeImage(svg: string, outPath: string): Promise<void> {
  if (outPath.endsWith(".svg")) {
    writeFileSync(outPath, svg);
    return;
  }
  if (outPath.endsWith(".png")) {
    const { Resvg } = await import("@resvg/resvg-js");
    const png = new Resvg(svg).render().asPng();
    writeFileSync(outPath, png);
    return;
  }
  throw new Error(`unsupported image extension on '${outPath}' (use .png or .svg)`);
}

/** Derive the two sweep output paths from one base image path. */
export function sweepOutputPaths(outPath: string): { cond: string; errors: string } {
  const match = outPath.match(/^(.*)(\.(?:png|svg))$/);
  if (!match) {
    throw new Error(`unsupported image extension on '${outPath}' (use .png or .svg)`);
  }
  return {
    cond: `${match[1]}_cond${match[2]}`,
    errors: `${match[1]}_errors${match[2]}`,
  };
}
