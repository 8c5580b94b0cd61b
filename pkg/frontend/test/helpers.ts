/**
 * Scripted stand-ins for the HTTP service and the DOM view.
 *
 * FakeServer mirrors the real session endpoints (including the backend's
 * click and clamp rules) over canned histogram data, so controller tests
 * assert that the UI displays exactly what the server confirms — the UI
 * itself computes nothing.
 */

import type { AppView } from '../src/controller.js';
import type { HistogramPayload, SessionSummary, StatsEntry } from '../src/types.js';

export const PALETTE = ['#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd'];

export interface FakeImage {
  name: string;
  counts: number[];
}

interface FakeState {
  scale: 'linear' | 'log10';
  y_limit: number;
  range: { lo: number; hi: number };
  images: FakeImage[];
}

export function twoLevelCounts(): number[] {
  const counts = new Array(256).fill(0);
  counts[0] = 2;
  counts[255] = 2;
  return counts;
}

export function narrowCounts(center: number): number[] {
  const counts = new Array(256).fill(0);
  counts[center] = 4;
  return counts;
}

export class FakeServer {
  readonly log: { method: string; path: string }[] = [];
  lastStatsResponse: StatsEntry[] = [];
  private uploads: FakeImage[] = [];
  private state: FakeState | null = null;
  private failure: { status: number; code: string; message: string } | null = null;
  readonly domainMax = 255;

  /** Histogram data the next uploaded file will carry. */
  enqueueImage(image: FakeImage): void {
    this.uploads.push(image);
  }

  failNext(status: number, code: string, message: string): void {
    this.failure = { status, code, message };
  }

  fetch = async (url: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? 'GET';
    const path = url.replace(/^https?:\/\/[^/]+/, '');
    this.log.push({ method, path });

    if (this.failure) {
      const { status, code, message } = this.failure;
      this.failure = null;
      return jsonResponse(status, { code, message });
    }

    if (method === 'POST' && path === '/sessions') {
      const image = this.uploads.shift();
      if (!image) throw new Error('no scripted upload available');
      this.state = {
        scale: 'linear',
        y_limit: Math.max(...image.counts),
        range: presentRange(image.counts),
        images: [image],
      };
      return jsonResponse(200, this.summary());
    }

    const state = this.state;
    if (!state) return jsonResponse(404, { code: 'UnknownSession', message: 'no session' });

    if (method === 'POST' && path.endsWith('/overlays')) {
      const image = this.uploads.shift();
      if (!image) throw new Error('no scripted upload available');
      if (state.images.length >= 23) {
        return jsonResponse(409, { code: 'OverlayLimitExceeded', message: 'limit' });
      }
      state.images.push(image);
      return jsonResponse(200, this.summary());
    }
    if (method === 'DELETE' && path.endsWith('/overlays')) {
      state.images = state.images.slice(0, 1);
      state.scale = 'linear';
      state.y_limit = Math.max(...state.images[0].counts);
      state.range = presentRange(state.images[0].counts);
      return jsonResponse(200, this.summary());
    }
    if (method === 'PUT' && path.endsWith('/range')) {
      const body = JSON.parse(String(init?.body));
      let lo = Math.min(body.lo, body.hi);
      let hi = Math.max(body.lo, body.hi);
      lo = Math.max(0, Math.min(this.domainMax, lo));
      hi = Math.max(0, Math.min(this.domainMax, hi));
      state.range = { lo, hi };
      return jsonResponse(200, this.summary());
    }
    if (method === 'POST' && path.endsWith('/click')) {
      const body = JSON.parse(String(init?.body));
      const v = Math.max(0, Math.min(this.domainMax, Math.floor(body.x + 0.5)));
      let { lo, hi } = state.range;
      if (Math.abs(v - lo) <= Math.abs(v - hi)) lo = v;
      else hi = v;
      state.range = { lo: Math.min(lo, hi), hi: Math.max(lo, hi) };
      return jsonResponse(200, this.summary());
    }
    if (method === 'PUT' && path.endsWith('/scale')) {
      const body = JSON.parse(String(init?.body));
      if (body.y_limit !== undefined && body.y_limit < 1) {
        return jsonResponse(422, { code: 'InvalidLimit', message: 'limit must be >= 1' });
      }
      if (body.mode) state.scale = body.mode;
      if (body.y_limit !== undefined) state.y_limit = body.y_limit;
      return jsonResponse(200, this.summary());
    }
    if (method === 'GET' && path.includes('/stats')) {
      this.lastStatsResponse = state.images.map((image, i) => statsFor(image, state, i));
      return jsonResponse(200, this.lastStatsResponse);
    }
    if (method === 'GET' && path.includes('/histogram')) {
      const index = Number(new URL(`http://x${path}`).searchParams.get('image') ?? 0);
      const image = state.images[index];
      if (!image) return jsonResponse(404, { code: 'UnknownImage', message: 'bad index' });
      const payload: HistogramPayload = {
        image: index,
        bit_depth: 8,
        total_pixels: image.counts.reduce((a, b) => a + b, 0),
        encoding: 'plain',
        counts: image.counts,
      };
      return jsonResponse(200, payload);
    }
    return jsonResponse(404, { code: 'NotFound', message: path });
  };

  private summary(): SessionSummary {
    const state = this.state!;
    return {
      session_id: 's1',
      scale: state.scale,
      y_limit: state.y_limit,
      range: { ...state.range },
      domain_depth: 8,
      domain_max: this.domainMax,
      images: state.images.map((image, i) => ({
        name: image.name,
        width: 2,
        height: 2,
        bit_depth: 8,
        total_pixels: image.counts.reduce((a, b) => a + b, 0),
        color_index: i,
        color: PALETTE[i % PALETTE.length],
      })),
    };
  }
}

function presentRange(counts: number[]): { lo: number; hi: number } {
  const lo = counts.findIndex((c) => c > 0);
  let hi = lo;
  counts.forEach((c, v) => { if (c > 0) hi = v; });
  return { lo, hi };
}

function statsFor(image: FakeImage, state: FakeState, index: number): StatsEntry {
  const total = image.counts.reduce((a, b) => a + b, 0);
  let n = 0;
  let sum = 0;
  for (let v = state.range.lo; v <= state.range.hi; v++) {
    n += image.counts[v];
    sum += v * image.counts[v];
  }
  return {
    name: image.name,
    color_index: index,
    color: PALETTE[index % PALETTE.length],
    pixel_count: n,
    percent_of_total: (100 * n) / total,
    entropy_bits: 0.5 + index, // canned; the UI must relay it untouched
    mean: n === 0 ? null : sum / n,
    rms_contrast: 0.25,
    total_intensity: sum,
  };
}

/** Records every view callback; exposes the field values a DOM would show. */
export class RecordingView implements AppView {
  summaries: SessionSummary[] = [];
  stats: StatsEntry[][] = [];
  histograms = new Map<number, number[]>();
  errors: string[] = [];

  get lastSummary(): SessionSummary | undefined {
    return this.summaries[this.summaries.length - 1];
  }

  get lastStats(): StatsEntry[] | undefined {
    return this.stats[this.stats.length - 1];
  }

  /** What the Intensity Range text fields would display. */
  get fields(): { lo: string; hi: string } {
    const summary = this.lastSummary;
    return summary
      ? { lo: String(summary.range.lo), hi: String(summary.range.hi) }
      : { lo: '', hi: '' };
  }

  summaryChanged(summary: SessionSummary): void {
    this.summaries.push(summary);
  }

  statsChanged(stats: StatsEntry[]): void {
    this.stats.push(stats);
  }

  histogramLoaded(imageIndex: number, counts: number[]): void {
    this.histograms.set(imageIndex, counts);
  }

  errorShown(message: string): void {
    this.errors.push(message);
  }
}

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}
