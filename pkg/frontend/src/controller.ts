/**
 * Session controller: the single writer of UI-visible state.
 *
 * Every displayed number originates from a server response; the controller
 * performs no statistical computation.  Mutations are queued FIFO with at
 * most one in flight, so clicks fired during a pending request apply in
 * order.  On any error the last server-confirmed state is re-announced,
 * which keeps the selection-space fields honest.
 */

import { ApiClient, ApiError } from './api.js';
import { decodeHistogram } from './rle.js';
import type { SessionSummary, StatsEntry } from './types.js';

export interface AppView {
  summaryChanged(summary: SessionSummary): void;
  statsChanged(stats: StatsEntry[]): void;
  histogramLoaded(imageIndex: number, counts: number[]): void;
  errorShown(message: string): void;
}

export class AppController {
  private summary: SessionSummary | null = null;
  private queue: Promise<void> = Promise.resolve();

  constructor(
    private readonly api: ApiClient,
    private readonly view: AppView,
  ) {}

  /** Last server-confirmed state (null before the first upload). */
  get confirmed(): SessionSummary | null {
    return this.summary;
  }

  get sessionId(): string | null {
    return this.summary?.session_id ?? null;
  }

  plotUrl(): string | null {
    return this.summary ? this.api.plotUrl(this.summary.session_id) : null;
  }

  /**
   * Open files: the first becomes the base image of a new session, the
   * rest are overlaid.  With a live session every file is an overlay.
   */
  openFiles(files: { blob: Blob; name: string }[], csvDepth?: number): Promise<void> {
    let rest = files;
    if (!this.summary && files.length > 0) {
      const [first, ...others] = files;
      rest = others;
      this.enqueue(async () => {
        const summary = await this.api.createSession(first.blob, first.name, csvDepth);
        await this.confirm(summary, { reloadHistograms: true });
      });
    }
    for (const file of rest) {
      this.enqueue(async () => {
        const sid = this.requireSession();
        const summary = await this.api.addOverlay(sid, file.blob, file.name, csvDepth);
        const newest = summary.images.length - 1;
        await this.confirm(summary, { loadHistogram: newest });
      });
    }
    return this.settled();
  }

  clearOverlays(): Promise<void> {
    this.enqueue(async () => {
      const summary = await this.api.clearOverlays(this.requireSession());
      await this.confirm(summary, { reloadHistograms: true });
    });
    return this.settled();
  }

  setRange(lo: number, hi: number): Promise<void> {
    if (!Number.isInteger(lo) || !Number.isInteger(hi)) {
      this.view.errorShown('range bounds must be integers');
      this.reannounce();
      return this.settled();
    }
    this.enqueue(async () => {
      await this.confirm(await this.api.setRange(this.requireSession(), lo, hi));
    });
    return this.settled();
  }

  /** Histogram click at a data-space x coordinate. */
  clickAt(x: number): Promise<void> {
    this.enqueue(async () => {
      await this.confirm(await this.api.click(this.requireSession(), x));
    });
    return this.settled();
  }

  setScale(mode: 'linear' | 'log10'): Promise<void> {
    this.enqueue(async () => {
      await this.confirm(await this.api.setScale(this.requireSession(), { mode }));
    });
    return this.settled();
  }

  setYLimit(yLimit: number): Promise<void> {
    this.enqueue(async () => {
      await this.confirm(await this.api.setScale(this.requireSession(), { y_limit: yLimit }));
    });
    return this.settled();
  }

  /** Wait until every queued mutation has been processed. */
  settled(): Promise<void> {
    return this.queue;
  }

  private enqueue(work: () => Promise<void>): void {
    this.queue = this.queue.then(work).catch((err) => {
      const message =
        err instanceof ApiError ? err.message : `connection failed: ${String(err)}`;
      this.view.errorShown(message);
      this.reannounce();
    });
  }

  private async confirm(
    summary: SessionSummary,
    opts: { reloadHistograms?: boolean; loadHistogram?: number } = {},
  ): Promise<void> {
    this.summary = summary;
    this.view.summaryChanged(summary);
    const stats = await this.api.stats(summary.session_id);
    this.view.statsChanged(stats);
    if (opts.reloadHistograms) {
      for (let i = 0; i < summary.images.length; i++) {
        await this.loadHistogram(summary.session_id, i);
      }
    } else if (opts.loadHistogram !== undefined) {
      await this.loadHistogram(summary.session_id, opts.loadHistogram);
    }
  }

  private async loadHistogram(sessionId: string, index: number): Promise<void> {
    const payload = await this.api.histogram(sessionId, index);
    this.view.histogramLoaded(index, decodeHistogram(payload));
  }

  private reannounce(): void {
    if (this.summary) this.view.summaryChanged(this.summary);
  }

  private requireSession(): string {
    if (!this.summary) throw new Error('no image opened yet');
    return this.summary.session_id;
  }
}
