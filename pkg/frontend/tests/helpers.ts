import type { Canvas2DLike } from "../src/render.js";

/** Recording stub standing in for CanvasRenderingContext2D in node tests. */
export function stubContext(): Canvas2DLike & { calls: Record<string, number> } {
  const calls: Record<string, number> = {};
  const count = (name: string) => {
    calls[name] = (calls[name] ?? 0) + 1;
  };
  return {
    calls,
    fillStyle: "", strokeStyle: "", globalAlpha: 1, lineWidth: 1, font: "",
    textAlign: "",
    clearRect: () => count("clearRect"),
    fillRect: () => count("fillRect"),
    beginPath: () => count("beginPath"),
    arc: () => count("arc"),
    moveTo: () => count("moveTo"),
    lineTo: () => count("lineTo"),
    fill: () => count("fill"),
    stroke: () => count("stroke"),
    fillText: () => count("fillText"),
  };
}
