/** Wire types for the histoscope session API. */

export interface ImageInfo {
  name: string;
  width: number;
  height: number;
  bit_depth: number;
  total_pixels: number;
  color_index: number;
  color: string;
}

export interface SessionSummary {
  session_id: string;
  scale: 'linear' | 'log10';
  y_limit: number;
  range: { lo: number; hi: number };
  domain_depth: number;
  domain_max: number;
  images: ImageInfo[];
}

export interface StatsEntry {
  name: string;
  color_index: number;
  color: string;
  pixel_count: number;
  percent_of_total: number;
  entropy_bits: number;
  mean: number | null;
  rms_contrast: number;
  total_intensity: number;
}

export type HistogramPayload =
  | { image: number; bit_depth: number; total_pixels: number; encoding: 'plain'; counts: number[] }
  | { image: number; bit_depth: number; total_pixels: number; encoding: 'rle'; runs: [number, number][] };

export interface ApiErrorBody {
  code: string;
  message: string;
}
