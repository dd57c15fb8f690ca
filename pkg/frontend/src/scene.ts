/**
 * Scene model: map rows plus derived radii, colors and bounds.
 *
 * Node radius follows the weight column. With `normalized weight` the scale
 * is absolute so overlays stay comparable across files (and animatable over
 * years); with `weight` sizes are renormalized by the file's mean weight,
 * which makes a single map fill its esthetic range.
 */

import type { MapRow, NetworkEdge, ParsedMap } from "./csv.js";
import { defaultPalette } from "./palette.js";

export interface SceneNode {
  id: number;
  label: string;
  x: number;
  y: number;
  cluster: number;
  weight: number;
  radius: number;
  color: string;
}

export interface Bounds {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export interface SceneEdge {
  a: SceneNode;
  b: SceneNode;
  weight: number;
}

export interface Scene {
  nodes: SceneNode[];
  bounds: Bounds;
  weightMode: ParsedMap["weightMode"];
  maxWeight: number;
  edges: SceneEdge[];
}

const BASE_RADIUS = 5;

export function nodeRadius(weight: number, reference: number): number {
  const rel = reference > 0 ? Math.max(weight, 0) / reference : 0;
  return BASE_RADIUS * Math.sqrt(rel);
}

export function buildScene(parsed: ParsedMap, palette?: Map<number, string>): Scene {
  const clusters = [...new Set(parsed.rows.map((r) => r.cluster))].sort((a, b) => a - b);
  const colors = palette ?? defaultPalette(clusters);
  const reference =
    parsed.weightMode === "per-file"
      ? parsed.rows.reduce((s, r) => s + r.weight, 0) / Math.max(parsed.rows.length, 1)
      : 1.0;

  const nodes: SceneNode[] = parsed.rows.map((row: MapRow) => ({
    id: row.id,
    label: row.label,
    x: row.x,
    y: row.y,
    cluster: row.cluster,
    weight: row.weight,
    radius: nodeRadius(row.weight, reference),
    color: row.color ?? colors.get(row.cluster) ?? "#888888",
  }));

  let xMin = Infinity, xMax = -Infinity, yMin = Infinity, yMax = -Infinity;
  for (const node of nodes) {
    if (node.x < xMin) xMin = node.x;
    if (node.x > xMax) xMax = node.x;
    if (node.y < yMin) yMin = node.y;
    if (node.y > yMax) yMax = node.y;
  }
  if (nodes.length === 0) {
    xMin = yMin = -1;
    xMax = yMax = 1;
  }
  const maxWeight = nodes.reduce((m, n) => Math.max(m, n.weight), 0);
  return { nodes, bounds: { xMin, xMax, yMin, yMax }, weightMode: parsed.weightMode, maxWeight, edges: [] };
}

/** Attach network edges, keeping only the heaviest `nLines`. */
export function attachNetwork(scene: Scene, edges: NetworkEdge[], nLines: number): void {
  const byId = new Map(scene.nodes.map((n) => [n.id, n]));
  const resolved: SceneEdge[] = [];
  for (const e of edges) {
    const a = byId.get(e.i);
    const b = byId.get(e.j);
    if (a && b && a !== b) resolved.push({ a, b, weight: e.weight });
  }
  resolved.sort((p, q) => q.weight - p.weight || p.a.id - q.a.id || p.b.id - q.b.id);
  scene.edges = resolved.slice(0, Math.max(0, nLines));
}
