import { describe, expect, it } from 'vitest';

import { decodeHistogram } from '../src/rle.js';

describe('decodeHistogram', () => {
  it('passes plain 8-bit counts through', () => {
    const counts = new Array(256).fill(0);
    counts[7] = 3;
    const decoded = decodeHistogram({
      image: 0, bit_depth: 8, total_pixels: 3, encoding: 'plain', counts,
    });
    expect(decoded).toBe(counts);
  });

  it('expands run-length pairs to the full 16-bit domain', () => {
    const decoded = decodeHistogram({
      image: 0,
      bit_depth: 16,
      total_pixels: 5,
      encoding: 'rle',
      runs: [[0, 65534], [2, 1], [3, 1]],
    });
    expect(decoded.length).toBe(65536);
    expect(decoded[0]).toBe(0);
    expect(decoded[65533]).toBe(0);
    expect(decoded[65534]).toBe(2);
    expect(decoded[65535]).toBe(3);
  });

  it('rejects runs that do not cover the domain', () => {
    expect(() =>
      decodeHistogram({
        image: 0, bit_depth: 16, total_pixels: 0, encoding: 'rle', runs: [[0, 10]],
      }),
    ).toThrow(/run lengths/);
  });

  it('rejects non-positive run lengths', () => {
    expect(() =>
      decodeHistogram({
        image: 0, bit_depth: 16, total_pixels: 0, encoding: 'rle', runs: [[0, 0]],
      }),
    ).toThrow(/invalid run/);
  });
});
