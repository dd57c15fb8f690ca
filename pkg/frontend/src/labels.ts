/**
 * Label visibility policy.
 *
 * Small-weight labels are suppressed rather than shrunk to illegibility:
 * labels are ranked by node weight and drawn only when their screen box does
 * not collide with an already-drawn, higher-ranked label.  Zooming in
 * separates the boxes, so hidden labels reappear; hovering a node always
 * reveals its label regardless of collisions.
 */

import type { Scene, SceneNode } from "./scene.js";
import type { Viewport } from "./transform.js";
import { worldToScreen } from "./transform.js";

export interface LabelOptions {
  labelSize: number;           // overall multiplier (URL param label_size)
  labelSizeVariation: number;  // 0 = uniform, 1 = fully weight-proportional
  hoverId?: number | null;
  maxLabels?: number;
}

export interface PlacedLabel {
  node: SceneNode;
  sx: number;
  sy: number;
  fontSize: number;
  box: { x: number; y: number; w: number; h: number };
}

const BASE_FONT = 13;
const CHAR_WIDTH = 0.58; // average glyph width as a fraction of font size

export function fontSizeFor(weight: number, maxWeight: number, opts: LabelOptions): number {
  const rel = maxWeight > 0 ? Math.max(weight, 0) / maxWeight : 1;
  const variation = Math.min(Math.max(opts.labelSizeVariation, 0), 1);
  return BASE_FONT * opts.labelSize * (1 - variation + variation * rel);
}

export function labelBox(node: SceneNode, vp: Viewport, opts: LabelOptions,
                         maxWeight: number): PlacedLabel {
  const [sx, sy] = worldToScreen(vp, node.x, node.y);
  const fontSize = fontSizeFor(node.weight, maxWeight, opts);
  const w = node.label.length * fontSize * CHAR_WIDTH;
  const h = fontSize * 1.25;
  // centered above the node
  return { node, sx, sy, fontSize, box: { x: sx - w / 2, y: sy - node.radius - h, w, h } };
}

function overlaps(a: PlacedLabel, b: PlacedLabel): boolean {
  return !(
    a.box.x + a.box.w < b.box.x ||
    b.box.x + b.box.w < a.box.x ||
    a.box.y + a.box.h < b.box.y ||
    b.box.y + b.box.h < a.box.y
  );
}

function onScreen(p: PlacedLabel, vp: Viewport): boolean {
  return (
    p.box.x + p.box.w >= 0 && p.box.x <= vp.width &&
    p.box.y + p.box.h >= 0 && p.box.y <= vp.height
  );
}

/**
 * Deterministic at a fixed viewport: rank by weight descending (ties by id),
 * greedily keep collision-free boxes.  The hovered node, when set, is placed
 * first and therefore always visible.
 */
export function computeVisibleLabels(scene: Scene, vp: Viewport,
                                     opts: LabelOptions): PlacedLabel[] {
  const ranked = [...scene.nodes].sort(
    (a, b) => b.weight - a.weight || a.id - b.id,
  );
  const placed: PlacedLabel[] = [];
  const limit = opts.maxLabels ?? 400;

  if (opts.hoverId != null) {
    const hovered = scene.nodes.find((n) => n.id === opts.hoverId);
    if (hovered) placed.push(labelBox(hovered, vp, opts, scene.maxWeight));
  }
  for (const node of ranked) {
    if (placed.length >= limit) break;
    if (node.id === opts.hoverId) continue;
    const candidate = labelBox(node, vp, opts, scene.maxWeight);
    if (!onScreen(candidate, vp)) continue;
    if (placed.some((p) => overlaps(p, candidate))) continue;
    placed.push(candidate);
  }
  return placed;
}
