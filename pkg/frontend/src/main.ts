/**
 * Browser entry point: read the query string, load the map (and optional
 * network) file over HTTP or from a local file picker, and boot the viewer.
 */

import { parseMapFile, parseNetworkFile } from "./csv.js";
import { parseViewerParams } from "./params.js";
import { attachNetwork, buildScene } from "./scene.js";
import { MapViewer } from "./viewer.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function setStatus(text: string, isError = false): void {
  const status = el<HTMLDivElement>("status");
  status.textContent = text;
  status.className = isError ? "status error" : "status";
}

function download(filename: string, text: string, type: string): void {
  const blob = new Blob([text], { type });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}

async function fetchText(url: string): Promise<string> {
  const response = await fetch(url);
  if (!response.ok) throw new Error(`${url}: HTTP ${response.status}`);
  return response.text();
}

function boot(mapText: string, networkText: string | null): void {
  const params = parseViewerParams(window.location.search);
  const canvas = el<HTMLCanvasElement>("map-canvas");
  const container = el<HTMLDivElement>("canvas-holder");
  canvas.width = container.clientWidth;
  canvas.height = container.clientHeight;

  const parsed = parseMapFile(mapText);
  const scene = buildScene(parsed);
  if (networkText !== null) {
    attachNetwork(scene, parseNetworkFile(networkText), params.n_lines);
  }
  const viewer = new MapViewer(scene, parsed, params, canvas.width, canvas.height);
  viewer.attach(canvas);
  setStatus(`${scene.nodes.length} journals` +
    (scene.edges.length ? `, ${scene.edges.length} links` : ""));

  el<HTMLButtonElement>("toggle-view").onclick = () => {
    const mode = viewer.toggleMode();
    el<HTMLButtonElement>("toggle-view").textContent =
      mode === "labels" ? "density view" : "label view";
    viewer.requestRedraw();
  };
  el<HTMLButtonElement>("export-svg").onclick = () =>
    download("map.svg", viewer.exportSvg(), "image/svg+xml");
  el<HTMLButtonElement>("export-map").onclick = () =>
    download("map_recolored.csv", viewer.exportMapFile(), "text/csv");

  // cluster recoloring panel
  const clusters = [...new Set(scene.nodes.map((n) => n.cluster))].sort((a, b) => a - b);
  const panel = el<HTMLDivElement>("clusters");
  panel.innerHTML = "";
  for (const cluster of clusters) {
    const current = scene.nodes.find((n) => n.cluster === cluster)!.color;
    const label = document.createElement("label");
    const swatch = document.createElement("input");
    swatch.type = "color";
    swatch.value = current;
    swatch.oninput = () => {
      viewer.recolorCluster(cluster, swatch.value);
      viewer.requestRedraw();
    };
    label.appendChild(swatch);
    label.appendChild(document.createTextNode(` ${cluster}`));
    panel.appendChild(label);
  }

  window.addEventListener("resize", () => {
    canvas.width = container.clientWidth;
    canvas.height = container.clientHeight;
    viewer.viewport = { ...viewer.viewport, width: canvas.width, height: canvas.height };
    viewer.requestRedraw();
  });
}

async function start(): Promise<void> {
  const params = parseViewerParams(window.location.search);
  const picker = el<HTMLInputElement>("map-input");
  const networkPicker = el<HTMLInputElement>("network-input");

  if (params.map) {
    try {
      setStatus(`loading ${params.map} ...`);
      const mapText = await fetchText(params.map);
      const networkText = params.network ? await fetchText(params.network) : null;
      boot(mapText, networkText);
    } catch (err) {
      setStatus(`could not load map: ${(err as Error).message}`, true);
    }
    return;
  }

  setStatus("choose a map file (map.csv from an overlay or localmap run)");
  picker.onchange = async () => {
    const file = picker.files?.[0];
    if (!file) return;
    try {
      const mapText = await file.text();
      const networkFile = networkPicker.files?.[0];
      const networkText = networkFile ? await networkFile.text() : null;
      boot(mapText, networkText);
    } catch (err) {
      setStatus(`could not load map: ${(err as Error).message}`, true);
    }
  };
}

start();
