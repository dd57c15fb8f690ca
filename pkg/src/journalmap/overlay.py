"""Overlays of document sets on a basemap and Rao-Stirling diversity.

An overlay matches a journal frequency list against a key table, turning
matched names into proportions and display sizes while keeping an explicit
record of everything that did not match.  Diversity of the matched set is
quadratic entropy

    delta = sum_ij p_i p_j d_ij

summed over *ordered* pairs (i, j), where p_i is the proportion of
publications in journal i and d_ij the map distance between journals i and j
as a fraction of the basemap's bounding-box diagonal.  The diagonal terms
vanish (d_ii = 0), a single-journal overlay has delta = 0, and for two
equally weighted journals delta = 0.5 * d.  Because the ordered-pair
convention is exactly twice the i<j convention, it is worth being explicit:
delta here is bounded by 1 and comparable across document sets mapped on the
same basemap and direction.

Node sizes follow log4(n + 1); the +1 keeps single-publication journals
visible and base 4 keeps large sets compact.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, UsageError, ValidationError
from .ingest import FrequencyList
from .keys import JournalKeyTable, KeyRow, match_abbreviation, match_title, normalize_title
from .layout import Layout, map_diagonal

logger = logging.getLogger(__name__)

MAP_FILE_FIXED_HEADER = ["id", "label", "x", "y", "cluster"]
WEIGHT_HEADERS = {"normalized_weight": "normalized weight", "weight": "weight"}

OVERLAY_TABLE_HEADER = ["journal", "matched_key", "n_publ", "p", "size", "cluster", "x", "y"]
SKIPPED_SECTION_MARKER = "# skipped"


def node_size(n_publications: int) -> float:
    """Display weight of a node: log4(n + 1)."""
    return math.log2(n_publications + 1) / 2.0


@dataclass
class OverlayItem:
    row: KeyRow
    matched_key: str  # the input name that matched (first one when merged)
    n_publ: int
    p: float
    size: float


@dataclass
class OverlaySet:
    direction: str
    items: list[OverlayItem]
    skipped: list[tuple[str, int]]
    match_rate: float

    @property
    def n_matched(self) -> int:
        return len(self.items)

    @property
    def matched_total(self) -> int:
        return sum(item.n_publ for item in self.items)


@dataclass
class DiversityResult:
    delta: float
    direction: str
    n_matched_journals: int


def build_overlay(freq: FrequencyList, table: JournalKeyTable) -> OverlaySet:
    """Match a frequency list against a key table.

    Full-title lists match on titles, abbreviation lists on abbreviations.
    Names matching the same journal (e.g. case variants) are merged.  The
    match rate weights every lookup by its count, so it is the fraction of
    publications (or references) that landed on the map.
    """
    if freq.name_kind == "full_title":
        lookup = match_title
    elif freq.name_kind == "abbreviation":
        lookup = match_abbreviation
    else:
        raise UsageError(f"unknown name kind {freq.name_kind!r}")

    by_journal: dict[str, list] = {}
    order: list[str] = []
    skipped: list[tuple[str, int]] = []
    matched_count = 0
    total_count = 0
    for name, count in freq.entries:
        total_count += count
        row = lookup(table, name)
        if row is None:
            skipped.append((name, count))
            continue
        matched_count += count
        key = normalize_title(row.full_title)
        if key not in by_journal:
            by_journal[key] = [row, name, 0]
            order.append(key)
        by_journal[key][2] += count

    if not by_journal:
        err = ValidationError(
            f"empty overlay: none of {len(freq.entries)} names matched the key table"
        )
        err.skipped = skipped
        raise err

    matched_total = sum(by_journal[k][2] for k in order)
    items = []
    for key in order:
        row, first_name, n = by_journal[key]
        items.append(OverlayItem(
            row=row,
            matched_key=first_name,
            n_publ=n,
            p=n / matched_total,
            size=node_size(n),
        ))
    match_rate = matched_count / total_count if total_count else 0.0
    logger.info(
        "overlay: %d of %d lookups matched (%.1f%%), %d journals",
        matched_count, total_count, 100.0 * match_rate, len(items),
    )
    return OverlaySet(
        direction=table.direction,
        items=items,
        skipped=skipped,
        match_rate=match_rate,
    )


def rao_stirling(overlay: OverlaySet, layout: Layout) -> DiversityResult:
    """Quadratic-entropy diversity of an overlay on its basemap."""
    missing = [item.row.full_title for item in overlay.items if item.row.index not in layout]
    if missing:
        raise ValidationError(f"overlay journal not in layout: {missing[0]!r}")
    diagonal = map_diagonal(layout)  # raises on degenerate maps

    coords = np.array([layout.coord(item.row.index) for item in overlay.items])
    p = np.array([item.p for item in overlay.items])
    delta = quadratic_entropy(p, coords, diagonal)
    return DiversityResult(
        delta=delta,
        direction=overlay.direction,
        n_matched_journals=len(overlay.items),
    )


def quadratic_entropy(p: np.ndarray, coords: np.ndarray, diagonal: float) -> float:
    """sum over ordered pairs of p_i p_j ||x_i - x_j|| / diagonal."""
    n = len(p)
    if n <= 1:
        return 0.0
    total = 0.0
    chunk = 2048
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        diff = coords[start:stop, None, :] - coords[None, :, :]
        d = np.sqrt(np.einsum("bnk,bnk->bn", diff, diff)) / diagonal
        total += float(p[start:stop] @ d @ p)
    return total


def write_map_file(
    overlay: OverlaySet,
    table: JournalKeyTable,
    path,
    weight_header: str = "normalized_weight",
) -> list[str]:
    """Write the viewer map file: ``id,label,x,y,cluster,<weight column>``.

    Coordinates and cluster labels are taken from the key table at write
    time, so edits to the table (e.g. a custom classification) propagate.
    With ``weight_header="weight"`` the viewer renormalizes sizes per file
    instead of treating them as absolute.  Returns the labels in row order
    (row k has id k+1).
    """
    if weight_header not in WEIGHT_HEADERS:
        raise UsageError(
            f"weight_header must be one of {sorted(WEIGHT_HEADERS)}, got {weight_header!r}"
        )
    if not overlay.items:
        raise ValidationError("cannot write an empty overlay")

    ordered = sorted(overlay.items, key=lambda it: normalize_title(it.row.full_title))
    lines = [",".join(MAP_FILE_FIXED_HEADER + [WEIGHT_HEADERS[weight_header]])]
    labels = []
    for rank, item in enumerate(ordered, start=1):
        current = match_title(table, item.row.full_title)
        if current is None:
            raise ValidationError(
                f"journal {item.row.full_title!r} vanished from the key table"
            )
        labels.append(current.full_title)
        lines.append(",".join([
            str(rank),
            _csv_field(current.full_title),
            repr(float(current.x)),
            repr(float(current.y)),
            str(current.cluster),
            repr(float(item.size)),
        ]))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return labels


@dataclass
class MapFileRow:
    id: int
    label: str
    x: float
    y: float
    cluster: int
    weight: float


def read_map_file(path) -> tuple[list[MapFileRow], str]:
    """Read a map file back; returns (rows, weight header kind)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise FormatError(f"{path}: empty map file")
        header = [h.strip() for h in header]
        if header[:5] != MAP_FILE_FIXED_HEADER or len(header) != 6:
            raise FormatError(
                f"{path}: expected header 'id,label,x,y,cluster,<weight>'"
            )
        weight_kind = None
        for kind, text in WEIGHT_HEADERS.items():
            if header[5] == text:
                weight_kind = kind
        if weight_kind is None:
            raise FormatError(
                f"{path}: weight column must be 'normalized weight' or 'weight', "
                f"got {header[5]!r}"
            )
        rows = []
        for row in reader:
            if len(row) != 6:
                raise FormatError(f"{path}:{reader.line_num}: expected 6 fields")
            try:
                rows.append(MapFileRow(
                    id=int(row[0]), label=row[1], x=float(row[2]), y=float(row[3]),
                    cluster=int(row[4]), weight=float(row[5]),
                ))
            except ValueError:
                raise FormatError(f"{path}:{reader.line_num}: bad numeric field") from None
    return rows, weight_kind


def weight_to_publications(weight: float) -> int | float:
    """Invert the log4(n + 1) sizing; non-integral results pass through."""
    n = 4.0 ** weight - 1.0
    rounded = round(n)
    if abs(n - rounded) < 1e-6 and rounded >= 0:
        return int(rounded)
    return n


def write_overlay_table(overlay: OverlaySet, path) -> None:
    """Write the per-journal overlay table plus a skipped-names section.

    The file is overwritten on every run.
    """
    lines = [",".join(OVERLAY_TABLE_HEADER)]
    for item in overlay.items:
        lines.append(",".join([
            _csv_field(item.row.full_title),
            _csv_field(item.matched_key),
            str(item.n_publ),
            repr(float(item.p)),
            repr(float(item.size)),
            str(item.row.cluster),
            repr(float(item.row.x)),
            repr(float(item.row.y)),
        ]))
    lines.append("")
    lines.append(SKIPPED_SECTION_MARKER)
    lines.append("name,count")
    for name, count in overlay.skipped:
        lines.append(",".join([_csv_field(name), str(count)]))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def read_overlay_table(path):
    """Read an overlay table back as (data rows, skipped rows)."""
    with open(path, newline="", encoding="utf-8") as fh:
        text = fh.read()
    if SKIPPED_SECTION_MARKER in text:
        data_part, skipped_part = text.split("\n" + SKIPPED_SECTION_MARKER + "\n", 1)
    else:
        raise FormatError(f"{path}: missing skipped-names section")
    data_rows = list(csv.reader(data_part.strip().splitlines()))
    if not data_rows or data_rows[0] != OVERLAY_TABLE_HEADER:
        raise FormatError(f"{path}: expected header {','.join(OVERLAY_TABLE_HEADER)!r}")
    skipped_rows = list(csv.reader(skipped_part.strip().splitlines()))
    if not skipped_rows or skipped_rows[0] != ["name", "count"]:
        raise FormatError(f"{path}: malformed skipped-names section")
    return data_rows[1:], [(name, int(count)) for name, count in skipped_rows[1:]]


def write_rao(result: DiversityResult, path) -> None:
    """Write the diversity value to a file, overwriting it.

    The first line is the display value (6 decimals); the ``delta_full``
    line carries the unrounded value for exact cross-checks.
    """
    text = (
        f"{result.delta:.6f}\n"
        f"direction: {result.direction}\n"
        f"journals: {result.n_matched_journals}\n"
        f"delta_full: {result.delta!r}\n"
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    logger.info("rao-stirling diversity (%s): %.6f", result.direction, result.delta)


def read_rao(path) -> DiversityResult:
    """Read a rao.txt file back (full-precision value when present)."""
    lines = {}
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().strip()
        for line in fh:
            if ":" in line:
                key, value = line.split(":", 1)
                lines[key.strip()] = value.strip()
    try:
        delta = float(lines.get("delta_full", first))
        return DiversityResult(
            delta=delta,
            direction=lines.get("direction", "citing"),
            n_matched_journals=int(lines.get("journals", 0)),
        )
    except ValueError:
        raise FormatError(f"{path}: not a rao output file") from None


def _csv_field(value: str) -> str:
    if any(ch in value for ch in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value
