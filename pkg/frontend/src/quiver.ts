/** Quiver plot of the in-plane real velocity over a pressure colormap. */

import { FieldCsv, FieldSample } from "./csv.js";
import { SvgBuilder, divergingColor, linearScale } from "./svg.js";

const SIZE = 760;
const MARGIN = 50;
const MAX_ARROWS = 400;

export interface QuiverOptions {
  /** Listening-region radius for the boundary circle; falls back to the
   *  CSV metadata's mask_radius. */
  regionRadius?: number;
  title?: string;
}

function inferSpacing(samples: FieldSample[]): number {
  const xs = Array.from(new Set(samples.map((s) => s.x))).sort((a, b) => a - b);
  let best = Infinity;
  for (let i = 1; i < xs.length; i++) {
    const gap = xs[i] - xs[i - 1];
    if (gap > 1e-12 && gap < best) best = gap;
  }
  return Number.isFinite(best) ? best : 1;
}

export function renderQuiver(field: FieldCsv, options: QuiverOptions = {}): string {
  const samples = field.samples;
  const metaRadius = Number(field.metadata["mask_radius"]);
  const radius =
    options.regionRadius ??
    (Number.isFinite(metaRadius) && metaRadius > 0
      ? metaRadius
      : Math.max(...samples.map((s) => Math.hypot(s.x, s.y))));
  const spacing = inferSpacing(samples);

  const svg = new SvgBuilder(SIZE, SIZE + 30);
  const world = radius + spacing;
  const toX = linearScale([-world, world], [MARGIN, SIZE - MARGIN]);
  // flip y so the world axis points up
  const toY = linearScale([-world, world], [SIZE - MARGIN, MARGIN]);
  const cell = Math.abs(toX(spacing) - toX(0));

  // pressure colormap underneath
  const maxPressure = Math.max(...samples.map((s) => Math.abs(s.rePressure)), 1e-300);
  for (const s of samples) {
    const fill = divergingColor(s.rePressure / maxPressure);
    svg.rect(toX(s.x) - cell / 2, toY(s.y) - cell / 2, cell, cell, fill);
  }

  // subsample the lattice so at most MAX_ARROWS arrows render
  const stride = Math.max(1, Math.ceil(Math.sqrt(samples.length / MAX_ARROWS)));
  const picked = samples.filter((s) => {
    const ix = Math.round(s.x / spacing);
    const iy = Math.round(s.y / spacing);
    return ((ix % stride) + stride) % stride === 0 && ((iy % stride) + stride) % stride === 0;
  });
  const maxSpeed = Math.max(...picked.map((s) => Math.hypot(s.reVx, s.reVy)), 1e-300);
  const arrowLength = cell * stride * 0.85;
  let arrows = 0;
  for (const s of picked) {
    const speed = Math.hypot(s.reVx, s.reVy);
    if (speed < 1e-6 * maxSpeed) continue;
    const scale = (arrowLength * speed) / maxSpeed;
    const ux = s.reVx / speed;
    const uy = s.reVy / speed;
    const x0 = toX(s.x) - (ux * scale) / 2;
    const y0 = toY(s.y) + (uy * scale) / 2;
    const x1 = toX(s.x) + (ux * scale) / 2;
    const y1 = toY(s.y) - (uy * scale) / 2;
    svg.line(x0, y0, x1, y1, "black", 1.1);
    // two-segment arrowhead
    const headAngle = Math.PI / 7;
    const headLength = Math.min(6, scale * 0.45);
    const angle = Math.atan2(y1 - y0, x1 - x0);
    for (const side of [-1, 1]) {
      svg.line(
        x1,
        y1,
        x1 - headLength * Math.cos(angle + side * headAngle),
        y1 - headLength * Math.sin(angle + side * headAngle),
        "black",
        1.1,
      );
    }
    arrows += 1;
  }
  if (arrows === 0) {
    throw new Error("quiver: no in-plane velocity to draw (all real parts vanish)");
  }

  // region boundary and frame
  svg.circle(toX(0), toY(0), Math.abs(toX(radius) - toX(0)), "red", 2.5);
  svg.raw(
    `<rect x="${MARGIN}" y="${MARGIN}" width="${SIZE - 2 * MARGIN}" ` +
      `height="${SIZE - 2 * MARGIN}" fill="none" stroke="#444" stroke-width="1"/>`,
  );
  const title =
    options.title ??
    `real velocity vectors${field.metadata["frequency_hz"] ? ` at ${field.metadata["frequency_hz"]} Hz` : ""}`;
  svg.text(SIZE / 2, 30, title, 16);
  svg.text(SIZE / 2, SIZE + 12, "x (m)", 13);
  svg.text(18, SIZE / 2, "y (m)", 13, "middle", ` transform="rotate(-90 18 ${SIZE / 2})"`);
  for (const v of [-radius, 0, radius]) {
    svg.text(toX(v), SIZE - MARGIN + 18, v.toFixed(2), 11);
    svg.text(MARGIN - 22, toY(v) + 4, v.toFixed(2), 11);
  }
  return svg.toString();
}
