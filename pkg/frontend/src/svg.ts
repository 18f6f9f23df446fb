/** Minimal SVG construction helpers shared by the two plot kinds. */

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const slope = (r1 - r0) / (d1 - d0 || 1);
  const scale = ((value: number) => r0 + (value - d0) * slope) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

/** Round tick positions covering [lo, hi] with a step of 1/2/5 x 10^k. */
export function ticks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const rawStep = span / target;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = power;
  for (const mult of [1, 2, 5, 10]) {
    if (mult * power >= rawStep) {
      step = mult * power;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function formatTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1000) return value.toFixed(0);
  if (abs >= 1) return String(Number(value.toFixed(2)));
  return String(Number(value.toPrecision(3)));
}

export class SvgBuilder {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1, dash = ""): void {
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${r(x1)}" y1="${r(y1)}" x2="${r(x2)}" y2="${r(y2)}" ` +
        `stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.5, dash = ""): void {
    const path = points.map(([x, y]) => `${r(x)},${r(y)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<polyline points="${path}" fill="none" stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`,
    );
  }

  circle(cx: number, cy: number, radius: number, stroke: string, width = 2): void {
    this.parts.push(
      `<circle cx="${r(cx)}" cy="${r(cy)}" r="${r(radius)}" fill="none" ` +
        `stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(
      `<rect x="${r(x)}" y="${r(y)}" width="${r(w)}" height="${r(h)}" fill="${fill}"/>`,
    );
  }

  text(x: number, y: number, content: string, size = 12, anchor = "middle", extra = ""): void {
    this.parts.push(
      `<text x="${r(x)}" y="${r(y)}" font-size="${size}" text-anchor="${anchor}"${extra}>` +
        `${escapeXml(content)}</text>`,
    );
  }

  toString(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

function r(value: number): string {
  return String(Math.round(value * 100) / 100);
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Diverging blue-white-red colormap for t in [-1, 1]. */
export function divergingColor(t: number): string {
  const clamped = Math.max(-1, Math.min(1, t));
  let red: number;
  let green: number;
  let blue: number;
  if (clamped < 0) {
    const s = 1 + clamped; // 0 at -1, 1 at 0
    red = Math.round(59 + (255 - 59) * s);
    green = Math.round(76 + (255 - 76) * s);
    blue = Math.round(192 + (255 - 192) * s);
  } else {
    const s = 1 - clamped;
    red = Math.round(180 + (255 - 180) * s);
    green = Math.round(4 + (255 - 4) * s);
    blue = Math.round(38 + (255 - 38) * s);
  }
  return `rgb(${red},${green},${blue})`;
}
