/**
 * Canvas histogram renderer.
 *
 * Draws every image's bin counts as a filled step curve in its palette
 * color, shades the active intensity range between two vertical bars, and
 * maps y either linearly or in log base 10 (zero-count bins clip to the
 * axis floor).  16-bit histograms are decimated per pixel column with a
 * max-preserving reduction at wide zoom levels; coordinate transforms stay
 * exact, so clicks still resolve to precise intensities.
 */

import type { ViewWindow } from './view.js';

export interface Series {
  color: string;
  counts: number[];
}

export interface ChartState {
  series: Series[];
  domainMax: number;
  yLimit: number;
  scale: 'linear' | 'log10';
  range: { lo: number; hi: number };
  view: ViewWindow;
}

const MARGIN = { left: 52, right: 14, top: 10, bottom: 32 };
const LOG_FLOOR = 0.8;

const COLORS = {
  paneBg: '#ffffff',
  axisLine: '#444444',
  gridText: '#555555',
  rangeBar: '#13315c',
  rangeFill: 'rgba(91, 141, 217, 0.22)',
};

export class HistogramChart {
  private state: ChartState | null = null;

  constructor(
    private readonly ctx: CanvasRenderingContext2D,
    private width: number,
    private height: number,
  ) {}

  resize(width: number, height: number): void {
    this.width = width;
    this.height = height;
  }

  setState(state: ChartState): void {
    this.state = state;
  }

  get paneRect(): { x: number; y: number; w: number; h: number } {
    return {
      x: MARGIN.left,
      y: MARGIN.top,
      w: this.width - MARGIN.left - MARGIN.right,
      h: this.height - MARGIN.top - MARGIN.bottom,
    };
  }

  /** Data intensity -> pixel column. */
  dataToPixelX(x: number): number {
    const { view } = this.mustState();
    const pane = this.paneRect;
    return pane.x + ((x - view.x0) / (view.x1 - view.x0)) * pane.w;
  }

  /** Pixel column -> data intensity (real-valued; callers round). */
  pixelToDataX(px: number): number {
    const { view } = this.mustState();
    const pane = this.paneRect;
    return view.x0 + ((px - pane.x) / pane.w) * (view.x1 - view.x0);
  }

  /** Count -> pixel row under the current scale, clamped to the pane. */
  dataToPixelY(count: number): number {
    const pane = this.paneRect;
    const frac = Math.max(0, Math.min(1, this.yFraction(count)));
    return pane.y + pane.h * (1 - frac);
  }

  insidePane(px: number, py: number): boolean {
    const pane = this.paneRect;
    return px >= pane.x && px <= pane.x + pane.w && py >= pane.y && py <= pane.y + pane.h;
  }

  render(): void {
    const state = this.mustState();
    const ctx = this.ctx;
    const pane = this.paneRect;

    ctx.fillStyle = COLORS.paneBg;
    ctx.fillRect(0, 0, this.width, this.height);

    ctx.save();
    ctx.beginPath();
    ctx.rect(pane.x, pane.y, pane.w, pane.h);
    ctx.clip();

    this.drawRangeShading(state);
    for (const series of state.series) {
      this.drawSeries(series);
    }
    this.drawRangeBars(state);
    ctx.restore();

    this.drawAxes(state);
  }

  private drawRangeShading(state: ChartState): void {
    const x0 = this.dataToPixelX(state.range.lo);
    const x1 = this.dataToPixelX(state.range.hi);
    const pane = this.paneRect;
    this.ctx.fillStyle = COLORS.rangeFill;
    this.ctx.fillRect(x0, pane.y, Math.max(x1 - x0, 1), pane.h);
  }

  private drawRangeBars(state: ChartState): void {
    const pane = this.paneRect;
    this.ctx.strokeStyle = COLORS.rangeBar;
    this.ctx.lineWidth = 2.5;
    for (const bound of [state.range.lo, state.range.hi]) {
      const px = this.dataToPixelX(bound);
      this.ctx.beginPath();
      this.ctx.moveTo(px, pane.y);
      this.ctx.lineTo(px, pane.y + pane.h);
      this.ctx.stroke();
    }
  }

  private drawSeries(series: Series): void {
    const points = this.visiblePoints(series.counts);
    if (points.length === 0) return;
    const ctx = this.ctx;
    const pane = this.paneRect;
    const floorY = pane.y + pane.h;

    ctx.beginPath();
    ctx.moveTo(this.dataToPixelX(points[0].x), floorY);
    for (const p of points) {
      ctx.lineTo(this.dataToPixelX(p.x), this.dataToPixelY(p.count));
    }
    ctx.lineTo(this.dataToPixelX(points[points.length - 1].x), floorY);
    ctx.closePath();
    ctx.globalAlpha = 0.45;
    ctx.fillStyle = series.color;
    ctx.fill();
    ctx.globalAlpha = 1;

    ctx.beginPath();
    points.forEach((p, i) => {
      const px = this.dataToPixelX(p.x);
      const py = this.dataToPixelY(p.count);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.strokeStyle = series.color;
    ctx.lineWidth = 1.5;
    ctx.stroke();
  }

  /** Bins in view, decimated to at most ~2 points per pixel column. */
  private visiblePoints(counts: number[]): { x: number; count: number }[] {
    const { view } = this.mustState();
    const pane = this.paneRect;
    const lo = Math.max(0, Math.floor(view.x0));
    const hi = Math.min(counts.length - 1, Math.ceil(view.x1));
    if (hi < lo) return [];
    const visibleBins = hi - lo + 1;
    if (visibleBins <= pane.w * 2) {
      const points = [];
      for (let v = lo; v <= hi; v++) points.push({ x: v, count: counts[v] });
      return points;
    }
    return maxDecimate(counts, lo, hi, Math.max(1, Math.floor(pane.w)));
  }

  private drawAxes(state: ChartState): void {
    const ctx = this.ctx;
    const pane = this.paneRect;
    ctx.strokeStyle = COLORS.axisLine;
    ctx.lineWidth = 1;
    ctx.strokeRect(pane.x, pane.y, pane.w, pane.h);

    ctx.fillStyle = COLORS.gridText;
    ctx.font = '11px sans-serif';
    ctx.textAlign = 'center';
    ctx.textBaseline = 'top';
    for (const x of xTicks(state.view.x0, state.view.x1)) {
      ctx.fillText(String(x), this.dataToPixelX(x), pane.y + pane.h + 4);
    }

    ctx.textAlign = 'right';
    ctx.textBaseline = 'middle';
    for (const y of this.yTicks(state)) {
      ctx.fillText(formatCount(y), pane.x - 5, this.dataToPixelY(y));
    }
  }

  private yTicks(state: ChartState): number[] {
    const top = this.yTop(state);
    if (state.scale === 'log10') {
      const ticks = [];
      for (let p = 0; Math.pow(10, p) <= top; p++) ticks.push(Math.pow(10, p));
      return ticks;
    }
    const ticks = [];
    for (let i = 0; i <= 4; i++) ticks.push(Math.round((top * i) / 4));
    return [...new Set(ticks)];
  }

  private yFraction(count: number): number {
    const state = this.mustState();
    const top = this.yTop(state);
    if (state.scale === 'log10') {
      if (count <= 0) return 0; // zero bins clip to the axis floor
      const floor = Math.log10(LOG_FLOOR);
      return (Math.log10(count) - floor) / (Math.log10(Math.max(top, 1)) - floor);
    }
    return count / top;
  }

  private yTop(state: ChartState): number {
    return state.view.yTop ?? state.yLimit;
  }

  private mustState(): ChartState {
    if (!this.state) throw new Error('chart has no state yet');
    return this.state;
  }
}

/** Max-preserving reduction: one point per column, keeping peak bins visible. */
export function maxDecimate(
  counts: number[],
  lo: number,
  hi: number,
  columns: number,
): { x: number; count: number }[] {
  const span = hi - lo + 1;
  const points: { x: number; count: number }[] = [];
  for (let c = 0; c < columns; c++) {
    const from = lo + Math.floor((c * span) / columns);
    const to = lo + Math.floor(((c + 1) * span) / columns) - 1;
    if (to < from) continue;
    let best = from;
    for (let v = from + 1; v <= to; v++) {
      if (counts[v] > counts[best]) best = v;
    }
    points.push({ x: best, count: counts[best] });
  }
  return points;
}

export function xTicks(x0: number, x1: number): number[] {
  const span = x1 - x0;
  const step = niceStep(span / 6);
  const first = Math.ceil(x0 / step) * step;
  const ticks = [];
  for (let x = first; x <= x1; x += step) {
    if (x >= 0) ticks.push(x === 0 ? 0 : x); // squash IEEE negative zero
  }
  return ticks;
}

function niceStep(raw: number): number {
  const power = Math.pow(10, Math.floor(Math.log10(Math.max(raw, 1))));
  for (const mult of [1, 2, 5, 10]) {
    if (power * mult >= raw) return power * mult;
  }
  return power * 10;
}

function formatCount(value: number): string {
  if (value >= 1e6) return `${value / 1e6}M`;
  if (value >= 1e4) return `${value / 1e3}k`;
  return String(value);
}
