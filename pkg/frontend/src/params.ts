/**
 * Query-string parameters.  Names follow the established web-start
 * conventions for journal maps so existing links keep working:
 * `map`, `network`, `zoom_level`, `label_size`, `label_size_variation`,
 * `n_lines`.
 */

export interface ViewerParams {
  map: string | null;
  network: string | null;
  zoom_level: number;
  label_size: number;
  label_size_variation: number;
  n_lines: number;
}

export const DEFAULT_PARAMS: ViewerParams = {
  map: null,
  network: null,
  zoom_level: 1.0,
  label_size: 1.0,
  label_size_variation: 0.3,
  n_lines: 1000,
};

function numberParam(value: string | null, fallback: number, min = 0): number {
  if (value === null || value.trim() === "") return fallback;
  const parsed = Number(value);
  return Number.isFinite(parsed) && parsed >= min ? parsed : fallback;
}

export function parseViewerParams(query: string): ViewerParams {
  const search = new URLSearchParams(query.startsWith("?") ? query.slice(1) : query);
  return {
    map: search.get("map"),
    network: search.get("network"),
    zoom_level: numberParam(search.get("zoom_level"), DEFAULT_PARAMS.zoom_level, 1e-6),
    label_size: numberParam(search.get("label_size"), DEFAULT_PARAMS.label_size, 1e-6),
    label_size_variation: numberParam(
      search.get("label_size_variation"), DEFAULT_PARAMS.label_size_variation),
    n_lines: Math.floor(numberParam(search.get("n_lines"), DEFAULT_PARAMS.n_lines)),
  };
}
