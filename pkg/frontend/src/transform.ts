/**
 * Viewport math: world (map) coordinates to screen pixels, pan and zoom.
 * Map y points up; screen y points down.
 */

import type { Bounds } from "./scene.js";

export interface Viewport {
  scale: number; // pixels per world unit
  tx: number;    // screen x of world origin
  ty: number;    // screen y of world origin
  width: number;
  height: number;
}

const FIT_MARGIN = 0.92;

/** Fit the bounds into width x height, then apply the initial zoom factor. */
export function fitScene(bounds: Bounds, width: number, height: number,
                         zoomLevel = 1.0): Viewport {
  const spanX = Math.max(bounds.xMax - bounds.xMin, 1e-12);
  const spanY = Math.max(bounds.yMax - bounds.yMin, 1e-12);
  const scale = Math.min(width / spanX, height / spanY) * FIT_MARGIN * zoomLevel;
  const cx = (bounds.xMin + bounds.xMax) / 2;
  const cy = (bounds.yMin + bounds.yMax) / 2;
  return {
    scale,
    tx: width / 2 - cx * scale,
    ty: height / 2 + cy * scale,
    width,
    height,
  };
}

export function worldToScreen(vp: Viewport, x: number, y: number): [number, number] {
  return [vp.tx + x * vp.scale, vp.ty - y * vp.scale];
}

export function screenToWorld(vp: Viewport, sx: number, sy: number): [number, number] {
  return [(sx - vp.tx) / vp.scale, (vp.ty - sy) / vp.scale];
}

export function pan(vp: Viewport, dxPixels: number, dyPixels: number): Viewport {
  return { ...vp, tx: vp.tx + dxPixels, ty: vp.ty + dyPixels };
}

/** Zoom by `factor` keeping the screen point (px, py) fixed. */
export function zoomAt(vp: Viewport, px: number, py: number, factor: number): Viewport {
  const clamped = Math.min(Math.max(vp.scale * factor, 1e-6), 1e9);
  const real = clamped / vp.scale;
  return {
    ...vp,
    scale: clamped,
    tx: px - (px - vp.tx) * real,
    ty: py - (py - vp.ty) * real,
  };
}
