/**
 * Density (heat-map) view: a Gaussian kernel surface over node positions,
 * weighted by node weight, rendered through a blue-green-yellow-red ramp.
 * The surface is additive, so two coincident nodes equal one node of their
 * summed weight.
 */

import type { Scene } from "./scene.js";
import type { Viewport } from "./transform.js";
import { worldToScreen } from "./transform.js";

export interface DensityGrid {
  values: Float32Array;
  cols: number;
  rows: number;
  cellSize: number;
  maxValue: number;
}

/**
 * Evaluate the kernel surface on a coarse screen-space grid.
 * `kernelRadius` is in pixels; contributions are truncated at 3 sigma.
 */
export function computeDensityGrid(scene: Scene, vp: Viewport,
                                   kernelRadius: number, cellSize = 4): DensityGrid {
  const cols = Math.max(1, Math.ceil(vp.width / cellSize));
  const rows = Math.max(1, Math.ceil(vp.height / cellSize));
  const values = new Float32Array(cols * rows);
  const sigma = Math.max(kernelRadius, 1) / 2;
  const cutoff = 3 * sigma;
  const inv2s2 = 1 / (2 * sigma * sigma);

  for (const node of scene.nodes) {
    const [sx, sy] = worldToScreen(vp, node.x, node.y);
    if (sx < -cutoff || sx > vp.width + cutoff || sy < -cutoff || sy > vp.height + cutoff) {
      continue;
    }
    const c0 = Math.max(0, Math.floor((sx - cutoff) / cellSize));
    const c1 = Math.min(cols - 1, Math.ceil((sx + cutoff) / cellSize));
    const r0 = Math.max(0, Math.floor((sy - cutoff) / cellSize));
    const r1 = Math.min(rows - 1, Math.ceil((sy + cutoff) / cellSize));
    for (let r = r0; r <= r1; r++) {
      const cy = (r + 0.5) * cellSize;
      for (let c = c0; c <= c1; c++) {
        const cx = (c + 0.5) * cellSize;
        const d2 = (cx - sx) * (cx - sx) + (cy - sy) * (cy - sy);
        if (d2 <= cutoff * cutoff) {
          values[r * cols + c] += node.weight * Math.exp(-d2 * inv2s2);
        }
      }
    }
  }
  let maxValue = 0;
  for (let k = 0; k < values.length; k++) if (values[k] > maxValue) maxValue = values[k];
  return { values, cols, rows, cellSize, maxValue };
}

/** Piecewise-linear blue -> cyan -> yellow -> red ramp; t in [0, 1]. */
export function rampColor(t: number): [number, number, number, number] {
  const x = Math.min(Math.max(t, 0), 1);
  let r: number, g: number, b: number;
  if (x < 1 / 3) {
    const u = x * 3;
    [r, g, b] = [0, Math.round(180 * u), 255];
  } else if (x < 2 / 3) {
    const u = (x - 1 / 3) * 3;
    [r, g, b] = [Math.round(255 * u), Math.round(180 + 75 * u), Math.round(255 * (1 - u))];
  } else {
    const u = (x - 2 / 3) * 3;
    [r, g, b] = [255, Math.round(255 * (1 - u)), 0];
  }
  const alpha = x === 0 ? 0 : Math.round(90 + 165 * x);
  return [r, g, b, alpha];
}
