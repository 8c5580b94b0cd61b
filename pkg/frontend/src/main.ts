/**
 * Browser entry point: builds the workbench layout and wires DOM events to
 * the controller.  Layout mirrors the four selection spaces (Scale,
 * Intensity Range, Calculations, Histogram Overlays) beside the histogram
 * canvas, with thumbnails on the far right and the navigation toolbar plus
 * cursor readout beneath the plot.
 */

import { ApiClient } from './api.js';
import { HistogramChart } from './chart.js';
import { AppController, AppView } from './controller.js';
import { clear, el } from './dom.js';
import type { SessionSummary, StatsEntry } from './types.js';
import { fullView, panned, ViewHistory, zoomedTo } from './view.js';

type ToolMode = 'select' | 'zoom' | 'pan';

const THUMBNAILS_SHOWN = 5; // base + first four overlays

class HistoscopeApp implements AppView {
  private readonly controller: AppController;
  private chart!: HistogramChart;
  private history = new ViewHistory(fullView(255));
  private histograms = new Map<number, number[]>();
  private objectUrls = new Map<string, string>();
  private summary: SessionSummary | null = null;
  private mode: ToolMode = 'select';
  private dragStart: { px: number; py: number } | null = null;
  private dragCurrent: { px: number; py: number } | null = null;

  // DOM nodes referenced after construction
  private canvas!: HTMLCanvasElement;
  private readout!: HTMLElement;
  private banner!: HTMLElement;
  private loInput!: HTMLInputElement;
  private hiInput!: HTMLInputElement;
  private yLimitInput!: HTMLInputElement;
  private scaleButtons!: Map<string, HTMLButtonElement>;
  private calcBody!: HTMLElement;
  private legendList!: HTMLElement;
  private thumbColumn!: HTMLElement;
  private saveLink!: HTMLAnchorElement;
  private toolButtons = new Map<ToolMode, HTMLButtonElement>();

  constructor(root: HTMLElement) {
    this.controller = new AppController(new ApiClient(), this);
    this.buildLayout(root);
    this.chart = new HistogramChart(
      this.canvas.getContext('2d')!,
      this.canvas.width,
      this.canvas.height,
    );
    this.bindCanvasEvents();
    window.addEventListener('resize', () => this.fitCanvas());
    this.fitCanvas();
  }

  // ----- AppView callbacks (server-confirmed state only) ------------------

  summaryChanged(summary: SessionSummary): void {
    const isNewSession = this.summary?.session_id !== summary.session_id;
    const wasCleared = this.summary && summary.images.length < this.summary.images.length;
    this.summary = summary;
    if (isNewSession || wasCleared) {
      this.history.reset(fullView(summary.domain_max));
      if (wasCleared) this.histograms.clear();
    }
    this.loInput.value = String(summary.range.lo);
    this.hiInput.value = String(summary.range.hi);
    this.yLimitInput.value = String(summary.y_limit);
    for (const [mode, button] of this.scaleButtons) {
      button.classList.toggle('active', mode === summary.scale);
    }
    this.saveLink.classList.remove('disabled');
    this.saveLink.href = this.controller.plotUrl() ?? '#';
    this.renderLegend(summary);
    this.renderThumbnails(summary);
    this.redraw();
  }

  statsChanged(stats: StatsEntry[]): void {
    clear(this.calcBody);
    // display rule: base image plus the most recent overlay
    const shown = stats.length === 1 ? [stats[0]] : [stats[0], stats[stats.length - 1]];
    for (const entry of shown) {
      const meanText = entry.mean === null ? 'undefined' : entry.mean.toFixed(4);
      const block = el('div', { class: 'calc-block' }, [
        el('div', { class: 'calc-name', text: truncate(entry.name, 26) }),
        calcRow('Pixels on range', String(entry.pixel_count)),
        calcRow('Percent of total', `${entry.percent_of_total.toFixed(4)}%`),
        calcRow('Shannon entropy', `${entry.entropy_bits.toFixed(6)} bits`),
        calcRow('Mean', meanText),
        calcRow('RMS contrast', entry.rms_contrast.toFixed(6)),
        calcRow('Total intensity', String(entry.total_intensity)),
      ]);
      block.style.color = entry.color;
      this.calcBody.append(block);
    }
  }

  histogramLoaded(imageIndex: number, counts: number[]): void {
    this.histograms.set(imageIndex, counts);
    this.redraw();
  }

  errorShown(message: string): void {
    this.banner.textContent = message;
    this.banner.classList.add('visible');
    window.setTimeout(() => this.banner.classList.remove('visible'), 6000);
  }

  // ----- layout ------------------------------------------------------------

  private buildLayout(root: HTMLElement): void {
    this.banner = el('div', { class: 'banner' });
    this.canvas = el('canvas', { class: 'histogram-canvas' });
    this.readout = el('div', { class: 'readout' });

    const toolbar = el('div', { class: 'toolbar' });
    for (const mode of ['select', 'zoom', 'pan'] as ToolMode[]) {
      const button = el('button', { text: mode });
      button.addEventListener('click', () => this.setMode(mode));
      this.toolButtons.set(mode, button);
      toolbar.append(button);
    }
    this.toolButtons.get('select')!.classList.add('active');
    toolbar.append(
      navButton('← back', () => { this.history.back(); this.redraw(); }),
      navButton('forward →', () => { this.history.forward(); this.redraw(); }),
      navButton('home', () => { this.history.home(); this.redraw(); }),
    );
    this.saveLink = el('a', { class: 'save-link disabled', text: 'save PNG' });
    this.saveLink.setAttribute('download', 'histogram-workspace.png');
    toolbar.append(this.saveLink);

    const plotArea = el('div', { class: 'plot-area' }, [this.canvas, toolbar, this.readout]);

    // Selection space 1: Scale
    this.scaleButtons = new Map();
    const scaleRow = el('div', { class: 'row' });
    for (const mode of ['linear', 'log10'] as const) {
      const button = el('button', { text: mode });
      button.addEventListener('click', () => void this.controller.setScale(mode));
      this.scaleButtons.set(mode, button);
      scaleRow.append(button);
    }
    this.yLimitInput = el('input', { type: 'number', min: '1' });
    this.yLimitInput.addEventListener('change', () => {
      const value = Number(this.yLimitInput.value);
      void this.controller.setYLimit(value);
    });
    const scaleSpace = selectionSpace('Scale', [
      scaleRow,
      el('label', { class: 'row' }, ['y-axis limit ', this.yLimitInput]),
    ]);

    // Selection space 2: Intensity Range
    this.loInput = el('input', { type: 'number' });
    this.hiInput = el('input', { type: 'number' });
    const applyRange = () =>
      void this.controller.setRange(Number(this.loInput.value), Number(this.hiInput.value));
    this.loInput.addEventListener('change', applyRange);
    this.hiInput.addEventListener('change', applyRange);
    const rangeSpace = selectionSpace('Intensity Range', [
      el('label', { class: 'row' }, ['low ', this.loInput]),
      el('label', { class: 'row' }, ['high ', this.hiInput]),
    ]);

    // Selection space 3: Calculations
    this.calcBody = el('div', { class: 'calc-body' });
    const calcSpace = selectionSpace('Calculations', [this.calcBody]);

    // Selection space 4: Histogram Overlays
    const fileInput = el('input', { type: 'file', multiple: '' });
    fileInput.style.display = 'none';
    fileInput.addEventListener('change', () => {
      const files = Array.from(fileInput.files ?? []).map((f) => {
        this.rememberObjectUrl(f);
        return { blob: f as Blob, name: f.name };
      });
      const depth = Number(csvDepthSelect.value);
      void this.controller.openFiles(files, depth);
      fileInput.value = '';
    });
    const addButton = el('button', { text: 'Add Images' });
    addButton.addEventListener('click', () => fileInput.click());
    const clearButton = el('button', { text: 'Clear Overlays' });
    clearButton.addEventListener('click', () => void this.controller.clearOverlays());
    const csvDepthSelect = el('select', {}, [
      el('option', { value: '8', text: 'CSV depth 8' }),
      el('option', { value: '16', text: 'CSV depth 16' }),
    ]);
    this.legendList = el('ul', { class: 'legend' });
    const overlaySpace = selectionSpace('Histogram Overlays', [
      el('div', { class: 'row' }, [addButton, clearButton]),
      el('div', { class: 'row' }, [csvDepthSelect]),
      this.legendList,
      fileInput,
    ]);

    const selectionColumn = el('div', { class: 'selection-column' }, [
      scaleSpace, rangeSpace, calcSpace, overlaySpace,
    ]);
    this.thumbColumn = el('div', { class: 'thumb-column' });

    root.append(
      el('header', {}, [el('h1', { text: 'histoscope' }), this.banner]),
      el('main', {}, [plotArea, selectionColumn, this.thumbColumn]),
    );
  }

  private renderLegend(summary: SessionSummary): void {
    clear(this.legendList);
    for (const image of summary.images) {
      const item = el('li', { text: truncate(image.name, 24) });
      item.style.color = image.color;
      this.legendList.append(item);
    }
  }

  private renderThumbnails(summary: SessionSummary): void {
    clear(this.thumbColumn);
    for (const image of summary.images.slice(0, THUMBNAILS_SHOWN)) {
      const url = this.objectUrls.get(image.name);
      const frame = url
        ? el('img', { src: url, class: 'thumb' })
        : el('div', { class: 'thumb placeholder', text: image.name.endsWith('.csv') ? 'CSV' : '' });
      frame.style.borderColor = image.color;
      const title = el('div', { class: 'thumb-title', text: truncate(image.name, 18) });
      title.style.color = image.color;
      this.thumbColumn.append(el('figure', { class: 'thumb-box' }, [frame, title]));
    }
  }

  private rememberObjectUrl(file: File): void {
    if (!file.name.toLowerCase().endsWith('.csv')) {
      this.objectUrls.set(file.name, URL.createObjectURL(file));
    }
  }

  // ----- canvas interaction --------------------------------------------------

  private bindCanvasEvents(): void {
    this.canvas.addEventListener('mousedown', (e) => {
      if (this.mode === 'select' || !this.summary) return;
      this.dragStart = this.eventPixel(e);
      this.dragCurrent = this.dragStart;
    });
    this.canvas.addEventListener('mousemove', (e) => {
      const pixel = this.eventPixel(e);
      this.updateReadout(pixel.px, pixel.py);
      if (!this.dragStart) return;
      if (this.mode === 'zoom') {
        this.dragCurrent = pixel;
        this.redraw();
        this.drawRubberBand();
      } else if (this.mode === 'pan' && this.summary) {
        const dx = this.chart.pixelToDataX(this.dragStart.px) - this.chart.pixelToDataX(pixel.px);
        const view = this.history.current;
        const width = view.x1 - view.x0;
        this.history.push(panned(view, dx / width, this.summary.domain_max));
        this.dragStart = pixel;
        this.redraw();
      }
    });
    this.canvas.addEventListener('mouseup', (e) => {
      const pixel = this.eventPixel(e);
      if (this.mode === 'zoom' && this.dragStart && this.summary) {
        const x0 = this.chart.pixelToDataX(this.dragStart.px);
        const x1 = this.chart.pixelToDataX(pixel.px);
        if (Math.abs(this.dragStart.px - pixel.px) > 4) {
          this.history.push(zoomedTo(x0, x1, this.history.current.yTop));
        }
        this.redraw();
      }
      this.dragStart = null;
      this.dragCurrent = null;
    });
    this.canvas.addEventListener('mouseleave', () => {
      this.readout.classList.remove('visible');
      this.dragStart = null;
      this.dragCurrent = null;
    });
    this.canvas.addEventListener('click', (e) => {
      if (this.mode !== 'select' || !this.summary) return;
      const pixel = this.eventPixel(e);
      if (!this.chart.insidePane(pixel.px, pixel.py)) return;
      void this.controller.clickAt(this.chart.pixelToDataX(pixel.px));
    });
  }

  private eventPixel(e: MouseEvent): { px: number; py: number } {
    const rect = this.canvas.getBoundingClientRect();
    return { px: e.clientX - rect.left, py: e.clientY - rect.top };
  }

  private updateReadout(px: number, py: number): void {
    if (!this.summary || !this.chart.insidePane(px, py)) {
      this.readout.classList.remove('visible');
      return;
    }
    // data-space coordinates: same integers regardless of scale or zoom
    const intensity = Math.round(this.chart.pixelToDataX(px));
    const clamped = Math.max(0, Math.min(this.summary.domain_max, intensity));
    const counts = this.histograms.get(0);
    const count = counts ? counts[clamped] : 0;
    this.readout.textContent = `(${clamped}, ${count})`;
    this.readout.classList.add('visible');
  }

  private setMode(mode: ToolMode): void {
    this.mode = mode;
    for (const [m, button] of this.toolButtons) {
      button.classList.toggle('active', m === mode);
    }
  }

  private fitCanvas(): void {
    const box = this.canvas.parentElement?.getBoundingClientRect();
    this.canvas.width = Math.max(480, Math.floor(box?.width ?? 900));
    this.canvas.height = Math.max(320, Math.floor((box?.width ?? 900) * 0.5));
    this.chart.resize(this.canvas.width, this.canvas.height);
    this.redraw();
  }

  private redraw(): void {
    if (!this.summary) return;
    this.chart.setState({
      series: this.summary.images.map((image, i) => ({
        color: image.color,
        counts: this.histograms.get(i) ?? [],
      })),
      domainMax: this.summary.domain_max,
      yLimit: this.summary.y_limit,
      scale: this.summary.scale,
      range: this.summary.range,
      view: this.history.current,
    });
    this.chart.render();
  }

  private drawRubberBand(): void {
    if (!this.dragStart || !this.dragCurrent) return;
    const ctx = this.canvas.getContext('2d')!;
    ctx.save();
    ctx.strokeStyle = '#13315c';
    ctx.setLineDash([5, 4]);
    const pane = this.chart.paneRect;
    ctx.strokeRect(
      Math.min(this.dragStart.px, this.dragCurrent.px), pane.y,
      Math.abs(this.dragCurrent.px - this.dragStart.px), pane.h,
    );
    ctx.restore();
  }
}

function selectionSpace(title: string, children: (Node | string)[]): HTMLElement {
  return el('section', { class: 'selection-space' }, [
    el('h2', { text: title }),
    ...children,
  ]);
}

function calcRow(label: string, value: string): HTMLElement {
  return el('div', { class: 'calc-row' }, [
    el('span', { class: 'calc-label', text: label }),
    el('span', { class: 'calc-value', text: value }),
  ]);
}

function navButton(label: string, onClick: () => void): HTMLButtonElement {
  const button = el('button', { text: label });
  button.addEventListener('click', onClick);
  return button;
}

function truncate(name: string, limit: number): string {
  return name.length <= limit ? name : `${name.slice(0, limit - 1)}…`;
}

const root = document.getElementById('app');
if (root) new HistoscopeApp(root);
