/** Line plots for the frequency sweep: condition numbers and direction errors. */

import { SweepCsv } from "./csv.js";
import { SvgBuilder, formatTick, linearScale, ticks } from "./svg.js";

const WIDTH = 860;
const HEIGHT = 520;
const MARGIN = { left: 70, right: 30, top: 50, bottom: 60 };

interface Series {
  label: string;
  color: string;
  dash: string;
  values: number[];
}

function frame(
  svg: SvgBuilder,
  xTicks: number[],
  yTicks: number[],
  toX: (v: number) => number,
  toY: (v: number) => number,
  xLabel: string,
  yLabel: string,
  title: string,
): void {
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  for (const t of yTicks) {
    svg.line(x0, toY(t), x1, toY(t), "#ddd", 1);
    svg.text(x0 - 8, toY(t) + 4, formatTick(t), 11, "end");
  }
  for (const t of xTicks) {
    svg.line(toX(t), y0, toX(t), y1, "#eee", 1);
    svg.text(toX(t), y0 + 18, formatTick(t), 11);
  }
  svg.raw(
    `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" ` +
      `fill="none" stroke="#444" stroke-width="1"/>`,
  );
  svg.text((x0 + x1) / 2, HEIGHT - 15, xLabel, 14);
  svg.text(20, (y0 + y1) / 2, yLabel, 14, "middle", ` transform="rotate(-90 20 ${(y0 + y1) / 2})"`);
  svg.text((x0 + x1) / 2, 28, title, 16);
}

function drawSeries(
  svg: SvgBuilder,
  seriesList: Series[],
  frequencies: number[],
  toX: (v: number) => number,
  toY: (v: number) => number,
): void {
  seriesList.forEach((series, index) => {
    svg.polyline(
      frequencies.map((f, i) => [toX(f), toY(series.values[i])] as [number, number]),
      series.color,
      2,
      series.dash,
    );
    const lx = MARGIN.left + 14;
    const ly = MARGIN.top + 16 + 18 * index;
    svg.line(lx, ly - 4, lx + 26, ly - 4, series.color, 2, series.dash);
    svg.text(lx + 32, ly, series.label, 12, "start");
  });
}

function renderLines(
  rows: SweepCsv["rows"],
  seriesList: Series[],
  yLabel: string,
  title: string,
  yMaxFloor = 0,
): string {
  const frequencies = rows.map((r) => r.frequencyHz);
  const allValues = seriesList.flatMap((s) => s.values);
  const yMax = Math.max(yMaxFloor, ...allValues) * 1.05;
  const svg = new SvgBuilder(WIDTH, HEIGHT);
  const toX = linearScale(
    [frequencies[0], frequencies[frequencies.length - 1]],
    [MARGIN.left, WIDTH - MARGIN.right],
  );
  const toY = linearScale([0, yMax], [HEIGHT - MARGIN.bottom, MARGIN.top]);
  frame(
    svg,
    ticks(frequencies[0], frequencies[frequencies.length - 1]),
    ticks(0, yMax),
    toX,
    toY,
    "frequency (Hz)",
    yLabel,
    title,
  );
  drawSeries(svg, seriesList, frequencies, toX, toY);
  return svg.toString();
}

/** Condition numbers of the two matching systems vs frequency. */
export function renderConditionPlot(sweep: SweepCsv): string {
  const rows = sweep.rows;
  return renderLines(
    rows,
    [
      { label: "cond(H), velocity matching", color: "#d62728", dash: "", values: rows.map((r) => r.condH) },
      { label: "cond(G), pressure matching", color: "#1f77b4", dash: "6 3", values: rows.map((r) => r.condG) },
    ],
    "condition number",
    "system conditioning across the sweep",
    1,
  );
}

/** Disk-averaged direction errors of both methods vs frequency. */
export function renderErrorPlot(sweep: SweepCsv): string {
  const rows = sweep.rows;
  return renderLines(
    rows,
    [
      { label: "VM, 0.5 m disk", color: "#d62728", dash: "", values: rows.map((r) => r.etaVmOuter) },
      { label: "PM, 0.5 m disk", color: "#1f77b4", dash: "", values: rows.map((r) => r.etaPmOuter) },
      { label: "VM, 0.15 m disk", color: "#e8b810", dash: "6 3", values: rows.map((r) => r.etaVmInner) },
      { label: "PM, 0.15 m disk", color: "#7b2d8e", dash: "6 3", values: rows.map((r) => r.etaPmInner) },
    ],
    "mean direction error",
    "velocity direction error across the sweep",
  );
}
