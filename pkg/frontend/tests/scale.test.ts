/**
 * Interaction budget on a full-size basemap: 10,330 rows, the size of a
 * whole-database journal map.  Loading must be quick and pan/zoom frames
 * must stay well inside interactive latency.
 */

import { describe, expect, it } from "vitest";

import { parseMapFile } from "../src/csv.js";
import { DEFAULT_PARAMS } from "../src/params.js";
import { buildScene } from "../src/scene.js";
import { MapViewer } from "../src/viewer.js";
import { stubContext } from "./helpers.js";

const N_ROWS = 10_330;

function bigMapText(): string {
  const lines = ["id,label,x,y,cluster,normalized weight"];
  let state = 123456789;
  const rand = () => {
    // deterministic LCG so the fixture is stable
    state = (1103515245 * state + 12345) % 2147483648;
    return state / 2147483648;
  };
  for (let i = 1; i <= N_ROWS; i++) {
    const x = (rand() * 40 - 20).toFixed(6);
    const y = (rand() * 30 - 15).toFixed(6);
    const cluster = Math.floor(rand() * 40);
    const weight = (0.2 + rand() * 3).toFixed(4);
    lines.push(`${i},Journal Of Topic Number ${i},${x},${y},${cluster},${weight}`);
  }
  return lines.join("\n") + "\n";
}

describe("full-size map", () => {
  it("loads 10,330 rows and keeps pan/zoom interactive", () => {
    const text = bigMapText();

    const tParse = performance.now();
    const parsed = parseMapFile(text);
    const parseMs = performance.now() - tParse;
    expect(parsed.rows).toHaveLength(N_ROWS);
    expect(parseMs).toBeLessThan(2000);

    const tScene = performance.now();
    const scene = buildScene(parsed);
    const sceneMs = performance.now() - tScene;
    expect(sceneMs).toBeLessThan(1000);

    const viewer = new MapViewer(scene, parsed, DEFAULT_PARAMS, 1280, 800);
    const ctx = stubContext();

    // warm-up frame, then measure interaction frames
    viewer.render(ctx);
    const frames = 20;
    const tFrames = performance.now();
    for (let f = 0; f < frames; f++) {
      viewer.panBy(7, -3);
      viewer.zoomAtPoint(640, 400, f % 2 === 0 ? 1.05 : 0.952);
      viewer.render(ctx);
    }
    const perFrame = (performance.now() - tFrames) / frames;
    expect(perFrame).toBeLessThan(120); // smooth interaction territory

    const stats = viewer.render(ctx);
    expect(stats.nodesDrawn).toBeGreaterThan(1000);
    expect(stats.labels.length).toBeGreaterThan(10); // decluttered, not empty
    expect(stats.labels.length).toBeLessThan(N_ROWS); // and certainly not all
  });

  it("hit-testing stays fast on the full map", () => {
    const parsed = parseMapFile(bigMapText());
    const scene = buildScene(parsed);
    const viewer = new MapViewer(scene, parsed, DEFAULT_PARAMS, 1280, 800);
    const t0 = performance.now();
    for (let k = 0; k < 50; k++) {
      viewer.hitTest(100 + k * 10, 200 + k * 5);
    }
    expect((performance.now() - t0) / 50).toBeLessThan(20);
  });
});
