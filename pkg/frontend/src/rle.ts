import type { HistogramPayload } from './types.js';

/**
 * Expand a histogram payload into a flat bin-count array.
 * 16-bit histograms arrive run-length encoded as [count, repeat] pairs.
 */
export function decodeHistogram(payload: HistogramPayload): number[] {
  if (payload.encoding === 'plain') {
    return payload.counts;
  }
  const expected = 1 << payload.bit_depth;
  const counts = new Array<number>(expected);
  let at = 0;
  for (const [value, repeat] of payload.runs) {
    if (repeat < 1) throw new Error(`invalid run length ${repeat}`);
    counts.fill(value, at, at + repeat);
    at += repeat;
  }
  if (at !== expected) {
    throw new Error(`run lengths sum to ${at}, expected ${expected}`);
  }
  return counts;
}
