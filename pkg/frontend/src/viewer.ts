/**
 * Interactive viewer: wires a canvas to the scene model.  Pointer drag pans,
 * the wheel zooms about the cursor, hovering a node reveals its label and a
 * tooltip.  All state lives here; rendering is delegated to render.ts.
 */

import type { ParsedMap } from "./csv.js";
import { applyRecolor, exportRecoloredMapFile } from "./palette.js";
import type { RenderStats, ViewMode } from "./render.js";
import { drawScene, sceneToSvg } from "./render.js";
import type { Scene, SceneNode } from "./scene.js";
import type { ViewerParams } from "./params.js";
import type { Viewport } from "./transform.js";
import { fitScene, pan, screenToWorld, zoomAt } from "./transform.js";

export class MapViewer {
  readonly scene: Scene;
  viewport: Viewport;
  mode: ViewMode = "labels";
  hoverId: number | null = null;
  kernelRadius = 40;
  private readonly params: ViewerParams;
  private readonly parsed: ParsedMap;
  private canvas: HTMLCanvasElement | null = null;
  private needsFrame = false;
  lastStats: RenderStats | null = null;

  constructor(scene: Scene, parsed: ParsedMap, params: ViewerParams,
              width: number, height: number) {
    this.scene = scene;
    this.parsed = parsed;
    this.params = params;
    this.viewport = fitScene(scene.bounds, width, height, params.zoom_level);
  }

  labelOptions() {
    return {
      labelSize: this.params.label_size,
      labelSizeVariation: this.params.label_size_variation,
      hoverId: this.hoverId,
    };
  }

  render(ctx: Parameters<typeof drawScene>[0]): RenderStats {
    this.lastStats = drawScene(ctx, this.scene, this.viewport, {
      ...this.labelOptions(),
      mode: this.mode,
      kernelRadius: this.kernelRadius,
    });
    return this.lastStats;
  }

  panBy(dx: number, dy: number): void {
    this.viewport = pan(this.viewport, dx, dy);
  }

  zoomAtPoint(px: number, py: number, factor: number): void {
    this.viewport = zoomAt(this.viewport, px, py, factor);
  }

  /** Nearest node within a screen-distance tolerance of (px, py). */
  hitTest(px: number, py: number, tolerance = 8): SceneNode | null {
    const [wx, wy] = screenToWorld(this.viewport, px, py);
    let best: SceneNode | null = null;
    let bestDist = Infinity;
    for (const node of this.scene.nodes) {
      const dx = (node.x - wx) * this.viewport.scale;
      const dy = (node.y - wy) * this.viewport.scale;
      const dist = Math.hypot(dx, dy);
      const reach = Math.max(node.radius, tolerance);
      if (dist <= reach && dist < bestDist) {
        best = node;
        bestDist = dist;
      }
    }
    return best;
  }

  recolorCluster(cluster: number, color: string): void {
    applyRecolor(this.scene, new Map([[cluster, color]]));
  }

  exportMapFile(): string {
    return exportRecoloredMapFile(this.parsed, this.scene);
  }

  exportSvg(): string {
    return sceneToSvg(this.scene, this.viewport, this.labelOptions());
  }

  toggleMode(): ViewMode {
    this.mode = this.mode === "labels" ? "density" : "labels";
    return this.mode;
  }

  /** Attach DOM event handling; safe to call only in a browser. */
  attach(canvas: HTMLCanvasElement): void {
    this.canvas = canvas;
    const ctx = canvas.getContext("2d");
    if (!ctx) throw new Error("canvas 2d context unavailable");

    const redraw = () => {
      if (this.needsFrame) return;
      this.needsFrame = true;
      requestAnimationFrame(() => {
        this.needsFrame = false;
        this.render(ctx as unknown as Parameters<typeof drawScene>[0]);
      });
    };

    let dragging = false;
    let lastX = 0;
    let lastY = 0;
    canvas.addEventListener("pointerdown", (ev) => {
      dragging = true;
      lastX = ev.offsetX;
      lastY = ev.offsetY;
      canvas.setPointerCapture(ev.pointerId);
    });
    canvas.addEventListener("pointerup", (ev) => {
      dragging = false;
      canvas.releasePointerCapture(ev.pointerId);
    });
    canvas.addEventListener("pointermove", (ev) => {
      if (dragging) {
        this.panBy(ev.offsetX - lastX, ev.offsetY - lastY);
        lastX = ev.offsetX;
        lastY = ev.offsetY;
        redraw();
      } else {
        const hit = this.hitTest(ev.offsetX, ev.offsetY);
        const hitId = hit ? hit.id : null;
        if (hitId !== this.hoverId) {
          this.hoverId = hitId;
          canvas.title = hit ? `${hit.label} (cluster ${hit.cluster}, weight ${hit.weight})` : "";
          redraw();
        }
      }
    });
    canvas.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      const factor = Math.exp(-ev.deltaY * 0.0015);
      this.zoomAtPoint(ev.offsetX, ev.offsetY, factor);
      redraw();
    }, { passive: false });

    redraw();
  }

  requestRedraw(): void {
    if (!this.canvas) return;
    const ctx = this.canvas.getContext("2d");
    if (ctx) this.render(ctx as unknown as Parameters<typeof drawScene>[0]);
  }
}
