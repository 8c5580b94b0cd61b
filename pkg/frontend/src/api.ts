import type { HistogramPayload, SessionSummary, StatsEntry } from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/**
 * Thin typed client over the session endpoints.  The fetch function is
 * injectable so tests can script the server.
 */
export class ApiClient {
  constructor(
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
    private readonly base: string = '',
  ) {}

  async createSession(file: Blob, name: string, csvDepth?: number): Promise<SessionSummary> {
    return this.upload('/sessions', file, name, csvDepth);
  }

  async addOverlay(sessionId: string, file: Blob, name: string, csvDepth?: number): Promise<SessionSummary> {
    return this.upload(`/sessions/${sessionId}/overlays`, file, name, csvDepth);
  }

  async clearOverlays(sessionId: string): Promise<SessionSummary> {
    return this.request(`/sessions/${sessionId}/overlays`, { method: 'DELETE' });
  }

  async setRange(sessionId: string, lo: number, hi: number): Promise<SessionSummary> {
    return this.json(`/sessions/${sessionId}/range`, 'PUT', { lo, hi });
  }

  async click(sessionId: string, x: number): Promise<SessionSummary> {
    return this.json(`/sessions/${sessionId}/click`, 'POST', { x });
  }

  async setScale(
    sessionId: string,
    body: { mode?: 'linear' | 'log10'; y_limit?: number },
  ): Promise<SessionSummary> {
    return this.json(`/sessions/${sessionId}/scale`, 'PUT', body);
  }

  async stats(sessionId: string): Promise<StatsEntry[]> {
    return this.request(`/sessions/${sessionId}/stats`, { method: 'GET' });
  }

  async histogram(sessionId: string, image: number): Promise<HistogramPayload> {
    return this.request(`/sessions/${sessionId}/histogram?image=${image}`, { method: 'GET' });
  }

  /** Download URL for the server-rendered workspace plot. */
  plotUrl(sessionId: string): string {
    return `${this.base}/sessions/${sessionId}/plot.png`;
  }

  private async upload(path: string, file: Blob, name: string, csvDepth?: number) {
    const form = new FormData();
    form.append('file', file, name);
    if (csvDepth !== undefined) form.append('csv_depth', String(csvDepth));
    return this.request(path, { method: 'POST', body: form });
  }

  private async json(path: string, method: string, body: unknown) {
    return this.request(path, {
      method,
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  private async request(path: string, init: RequestInit) {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let code = 'Error';
      let message = `${response.status} ${response.statusText}`;
      try {
        const body = await response.json();
        code = body.code ?? code;
        message = body.message ?? message;
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(response.status, code, message);
    }
    return response.json();
  }
}
