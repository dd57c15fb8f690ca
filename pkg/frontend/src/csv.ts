/**
 * Map-file and network-file parsing.
 *
 * A map file is CSV with header `id,label,x,y,cluster,<weight column>`
 * where the weight column is either `normalized weight` (sizes are absolute,
 * comparable across files) or `weight` (sizes are renormalized per file).
 * An optional trailing `color` column, written by this viewer's export,
 * pins node colors across reloads.
 *
 * A network file is CSV `i,j,weight` where i and j reference map-file ids.
 */

export interface MapRow {
  id: number;
  label: string;
  x: number;
  y: number;
  cluster: number;
  weight: number;
  color?: string;
  /** Original textual cells (id..weight); preserved so that reserializing a
   *  file leaves untouched fields byte-identical. */
  raw?: string[];
}

export type WeightMode = "normalized" | "per-file";

export interface ParsedMap {
  rows: MapRow[];
  weightMode: WeightMode;
  hasColor: boolean;
}

export interface NetworkEdge {
  i: number;
  j: number;
  weight: number;
}

export class MapFileError extends Error {}

/** RFC-4180-ish CSV: quoted fields may contain commas and doubled quotes. */
export function parseCsv(text: string): string[][] {
  const rows: string[][] = [];
  let field = "";
  let row: string[] = [];
  let inQuotes = false;
  let i = 0;
  const push = () => {
    row.push(field);
    field = "";
  };
  const endRow = () => {
    push();
    if (row.length > 1 || row[0] !== "") rows.push(row);
    row = [];
  };
  while (i < text.length) {
    const ch = text[i];
    if (inQuotes) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          field += '"';
          i += 2;
          continue;
        }
        inQuotes = false;
        i += 1;
        continue;
      }
      field += ch;
      i += 1;
      continue;
    }
    if (ch === '"' && field === "") {
      inQuotes = true;
      i += 1;
    } else if (ch === ",") {
      push();
      i += 1;
    } else if (ch === "\n") {
      endRow();
      i += 1;
    } else if (ch === "\r") {
      i += 1; // swallow; \r\n handled by the \n branch
    } else {
      field += ch;
      i += 1;
    }
  }
  if (field !== "" || row.length > 0) endRow();
  return rows;
}

export function csvField(value: string): string {
  if (/[",\n]/.test(value)) return '"' + value.replace(/"/g, '""') + '"';
  return value;
}

const FIXED_HEADER = ["id", "label", "x", "y", "cluster"];

export function parseMapFile(text: string): ParsedMap {
  const rows = parseCsv(text);
  if (rows.length === 0) throw new MapFileError("map file is empty");
  const header = rows[0].map((h) => h.trim());
  for (let k = 0; k < FIXED_HEADER.length; k++) {
    if (header[k] !== FIXED_HEADER[k]) {
      throw new MapFileError(
        `map file header must start with 'id,label,x,y,cluster', got '${header.join(",")}'`,
      );
    }
  }
  const weightHeader = header[5];
  let weightMode: WeightMode;
  if (weightHeader === "normalized weight") weightMode = "normalized";
  else if (weightHeader === "weight") weightMode = "per-file";
  else {
    throw new MapFileError(
      `weight column must be 'normalized weight' or 'weight', got '${weightHeader ?? ""}'`,
    );
  }
  const hasColor = header[6] === "color";

  const out: MapRow[] = [];
  for (let r = 1; r < rows.length; r++) {
    const cells = rows[r];
    if (cells.length < 6) {
      throw new MapFileError(`map file row ${r + 1}: expected at least 6 fields`);
    }
    const id = Number(cells[0]);
    const x = Number(cells[2]);
    const y = Number(cells[3]);
    const cluster = Number(cells[4]);
    const weight = Number(cells[5]);
    if (!Number.isFinite(id) || !Number.isFinite(x) || !Number.isFinite(y) ||
        !Number.isFinite(cluster) || !Number.isFinite(weight)) {
      throw new MapFileError(`map file row ${r + 1}: non-numeric field`);
    }
    const row: MapRow = { id, label: cells[1], x, y, cluster, weight,
                          raw: cells.slice(0, 6) };
    if (hasColor && cells[6] !== undefined && cells[6] !== "") row.color = cells[6];
    out.push(row);
  }
  return { rows: out, weightMode, hasColor };
}

export function serializeMapFile(parsed: ParsedMap): string {
  const weightHeader = parsed.weightMode === "normalized" ? "normalized weight" : "weight";
  const withColor = parsed.rows.some((r) => r.color !== undefined);
  const header = [...FIXED_HEADER, weightHeader, ...(withColor ? ["color"] : [])];
  const lines = [header.join(",")];
  for (const row of parsed.rows) {
    const cells = row.raw
      ? [row.raw[0], csvField(row.raw[1]), ...row.raw.slice(2)]
      : [
          String(row.id),
          csvField(row.label),
          String(row.x),
          String(row.y),
          String(row.cluster),
          String(row.weight),
        ];
    if (withColor) cells.push(row.color ?? "");
    lines.push(cells.join(","));
  }
  return lines.join("\n") + "\n";
}

export function parseNetworkFile(text: string): NetworkEdge[] {
  const rows = parseCsv(text);
  if (rows.length === 0) return [];
  const header = rows[0].map((h) => h.trim().toLowerCase());
  const start = header[0] === "i" && header[1] === "j" ? 1 : 0;
  const edges: NetworkEdge[] = [];
  for (let r = start; r < rows.length; r++) {
    const [i, j, w] = rows[r];
    const edge = { i: Number(i), j: Number(j), weight: Number(w ?? "1") };
    if (Number.isFinite(edge.i) && Number.isFinite(edge.j) && Number.isFinite(edge.weight)) {
      edges.push(edge);
    }
  }
  return edges;
}
