/**
 * Cluster colors.  The default palette walks the golden angle around the hue
 * circle with alternating lightness, which keeps 40+ clusters visually
 * distinct.  Users can recolor any cluster; an export merges the choices
 * into a `color` column on a copy of the map file so a reload reproduces
 * the picture exactly.
 */

import type { ParsedMap } from "./csv.js";
import { serializeMapFile } from "./csv.js";
import type { Scene } from "./scene.js";

const GOLDEN_ANGLE = 137.50776405003785;

export function hslToHex(h: number, s: number, l: number): string {
  const hue = ((h % 360) + 360) % 360;
  const a = s * Math.min(l, 1 - l);
  const f = (n: number) => {
    const k = (n + hue / 30) % 12;
    const c = l - a * Math.max(-1, Math.min(k - 3, Math.min(9 - k, 1)));
    return Math.round(255 * c).toString(16).padStart(2, "0");
  };
  return `#${f(0)}${f(8)}${f(4)}`;
}

export function defaultPalette(clusters: number[]): Map<number, string> {
  const palette = new Map<number, string>();
  clusters.forEach((cluster, i) => {
    const hue = i * GOLDEN_ANGLE;
    const lightness = i % 2 === 0 ? 0.45 : 0.62;
    palette.set(cluster, hslToHex(hue, 0.72, lightness));
  });
  return palette;
}

/** Repaint every node of the given clusters in place. */
export function applyRecolor(scene: Scene, mapping: Map<number, string>): void {
  for (const node of scene.nodes) {
    const color = mapping.get(node.cluster);
    if (color !== undefined) node.color = color;
  }
}

/**
 * Export a copy of the map file with the current colors pinned in a
 * trailing `color` column; reloading it reproduces the scene's colors.
 */
export function exportRecoloredMapFile(parsed: ParsedMap, scene: Scene): string {
  const colorById = new Map(scene.nodes.map((n) => [n.id, n.color]));
  const copy: ParsedMap = {
    weightMode: parsed.weightMode,
    hasColor: true,
    rows: parsed.rows.map((row) => ({ ...row, color: colorById.get(row.id) ?? row.color })),
  };
  return serializeMapFile(copy);
}
