/** Zoom/pan view window over the histogram, with navigation history. */

export interface ViewWindow {
  x0: number;
  x1: number;
  /** Top of the visible y range; null means "use the workspace y-limit". */
  yTop: number | null;
}

/**
 * Back/forward/home navigation: a stack of view windows with a pointer.
 * Pushing a new view discards anything ahead of the pointer; home jumps
 * the pointer to the initial view without erasing history.
 */
export class ViewHistory {
  private stack: ViewWindow[];
  private pointer = 0;

  constructor(initial: ViewWindow) {
    this.stack = [initial];
  }

  get current(): ViewWindow {
    return this.stack[this.pointer];
  }

  get canBack(): boolean {
    return this.pointer > 0;
  }

  get canForward(): boolean {
    return this.pointer < this.stack.length - 1;
  }

  push(view: ViewWindow): void {
    this.stack = this.stack.slice(0, this.pointer + 1);
    this.stack.push(view);
    this.pointer = this.stack.length - 1;
  }

  back(): boolean {
    if (!this.canBack) return false;
    this.pointer -= 1;
    return true;
  }

  forward(): boolean {
    if (!this.canForward) return false;
    this.pointer += 1;
    return true;
  }

  home(): void {
    this.pointer = 0;
  }

  /** Replace the whole history with a fresh initial view (new session). */
  reset(initial: ViewWindow): void {
    this.stack = [initial];
    this.pointer = 0;
  }
}

export function fullView(domainMax: number): ViewWindow {
  return { x0: -0.5, x1: domainMax + 0.5, yTop: null };
}

/** Pan by a fraction of the current width, clamped to the domain. */
export function panned(view: ViewWindow, fraction: number, domainMax: number): ViewWindow {
  const width = view.x1 - view.x0;
  let shift = width * fraction;
  shift = Math.max(-0.5 - view.x0, Math.min(domainMax + 0.5 - view.x1, shift));
  return { x0: view.x0 + shift, x1: view.x1 + shift, yTop: view.yTop };
}

/** Zoom into an x interval (from a drag rectangle), keeping a sane minimum span. */
export function zoomedTo(x0: number, x1: number, yTop: number | null): ViewWindow {
  const lo = Math.min(x0, x1);
  const hi = Math.max(x0, x1);
  const span = Math.max(hi - lo, 2);
  const mid = (lo + hi) / 2;
  return { x0: mid - span / 2, x1: mid + span / 2, yTop };
}
