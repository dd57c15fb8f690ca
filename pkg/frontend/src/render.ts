/**
 * Canvas rendering.  Drawing goes through a minimal context interface so the
 * render path can be exercised headless in tests with a recording stub.
 */

import { computeDensityGrid, rampColor } from "./density.js";
import type { LabelOptions, PlacedLabel } from "./labels.js";
import { computeVisibleLabels } from "./labels.js";
import type { Scene } from "./scene.js";
import type { Viewport } from "./transform.js";
import { worldToScreen } from "./transform.js";

export interface Canvas2DLike {
  fillStyle: string;
  strokeStyle: string;
  globalAlpha: number;
  lineWidth: number;
  font: string;
  textAlign: string;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
}

export type ViewMode = "labels" | "density";

export interface RenderOptions extends LabelOptions {
  mode: ViewMode;
  kernelRadius?: number;
  background?: string;
}

export interface RenderStats {
  nodesDrawn: number;
  edgesDrawn: number;
  labels: PlacedLabel[];
}

export function drawScene(ctx: Canvas2DLike, scene: Scene, vp: Viewport,
                          opts: RenderOptions): RenderStats {
  ctx.globalAlpha = 1;
  ctx.fillStyle = opts.background ?? "#ffffff";
  ctx.clearRect(0, 0, vp.width, vp.height);
  ctx.fillRect(0, 0, vp.width, vp.height);

  if (opts.mode === "density") {
    const stats = drawDensity(ctx, scene, vp, opts.kernelRadius ?? 40);
    return { nodesDrawn: stats, edgesDrawn: 0, labels: [] };
  }

  let edgesDrawn = 0;
  if (scene.edges.length > 0) {
    const wMax = scene.edges[0].weight || 1;
    for (const edge of scene.edges) {
      const [ax, ay] = worldToScreen(vp, edge.a.x, edge.a.y);
      const [bx, by] = worldToScreen(vp, edge.b.x, edge.b.y);
      ctx.globalAlpha = 0.12 + 0.35 * Math.min(edge.weight / wMax, 1);
      ctx.strokeStyle = "#9aa7b5";
      ctx.lineWidth = 1;
      ctx.beginPath();
      ctx.moveTo(ax, ay);
      ctx.lineTo(bx, by);
      ctx.stroke();
      edgesDrawn++;
    }
    ctx.globalAlpha = 1;
  }

  let nodesDrawn = 0;
  const margin = 20;
  for (const node of scene.nodes) {
    const [sx, sy] = worldToScreen(vp, node.x, node.y);
    if (sx < -margin || sx > vp.width + margin || sy < -margin || sy > vp.height + margin) {
      continue;
    }
    ctx.fillStyle = node.color;
    ctx.beginPath();
    ctx.arc(sx, sy, Math.max(node.radius, 1.5), 0, Math.PI * 2);
    ctx.fill();
    nodesDrawn++;
  }

  if (opts.hoverId != null) {
    const hovered = scene.nodes.find((n) => n.id === opts.hoverId);
    if (hovered) {
      const [sx, sy] = worldToScreen(vp, hovered.x, hovered.y);
      ctx.strokeStyle = "#222222";
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      ctx.arc(sx, sy, Math.max(hovered.radius, 1.5) + 3, 0, Math.PI * 2);
      ctx.stroke();
    }
  }

  const labels = computeVisibleLabels(scene, vp, opts);
  ctx.textAlign = "center";
  for (const label of labels) {
    ctx.font = `${label.fontSize.toFixed(1)}px sans-serif`;
    ctx.fillStyle = "#1b1b1b";
    ctx.fillText(label.node.label, label.sx, label.box.y + label.box.h - 3);
  }
  return { nodesDrawn, edgesDrawn, labels };
}

function drawDensity(ctx: Canvas2DLike, scene: Scene, vp: Viewport,
                     kernelRadius: number): number {
  const grid = computeDensityGrid(scene, vp, kernelRadius);
  if (grid.maxValue <= 0) return 0;
  let cells = 0;
  for (let r = 0; r < grid.rows; r++) {
    for (let c = 0; c < grid.cols; c++) {
      const value = grid.values[r * grid.cols + c];
      if (value <= 0) continue;
      const [red, green, blue, alpha] = rampColor(value / grid.maxValue);
      ctx.globalAlpha = alpha / 255;
      ctx.fillStyle = `rgb(${red},${green},${blue})`;
      ctx.fillRect(c * grid.cellSize, r * grid.cellSize, grid.cellSize, grid.cellSize);
      cells++;
    }
  }
  ctx.globalAlpha = 1;
  return cells;
}

/** Standalone SVG export of the current view (label mode). */
export function sceneToSvg(scene: Scene, vp: Viewport, opts: LabelOptions): string {
  const esc = (s: string) =>
    s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${vp.width}" height="${vp.height}" ` +
      `viewBox="0 0 ${vp.width} ${vp.height}">`,
    `<rect width="100%" height="100%" fill="#ffffff"/>`,
  ];
  for (const edge of scene.edges) {
    const [ax, ay] = worldToScreen(vp, edge.a.x, edge.a.y);
    const [bx, by] = worldToScreen(vp, edge.b.x, edge.b.y);
    parts.push(`<line x1="${ax.toFixed(2)}" y1="${ay.toFixed(2)}" x2="${bx.toFixed(2)}" ` +
      `y2="${by.toFixed(2)}" stroke="#9aa7b5" stroke-opacity="0.3"/>`);
  }
  for (const node of scene.nodes) {
    const [sx, sy] = worldToScreen(vp, node.x, node.y);
    parts.push(`<circle cx="${sx.toFixed(2)}" cy="${sy.toFixed(2)}" ` +
      `r="${Math.max(node.radius, 1.5).toFixed(2)}" fill="${node.color}"/>`);
  }
  for (const label of computeVisibleLabels(scene, vp, opts)) {
    parts.push(`<text x="${label.sx.toFixed(2)}" y="${(label.box.y + label.box.h - 3).toFixed(2)}" ` +
      `font-size="${label.fontSize.toFixed(1)}" text-anchor="middle" ` +
      `font-family="sans-serif" fill="#1b1b1b">${esc(label.node.label)}</text>`);
  }
  parts.push("</svg>");
  return parts.join("\n");
}
