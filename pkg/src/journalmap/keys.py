"""Key tables mapping journal names to map coordinates and cluster labels.

A key table is the lookup artifact produced from a basemap run: one row per
journal in the mapped component, keyed both by full title and (optionally) by
the standard abbreviation.  Matching is exact after case-folding and
whitespace trimming; there is deliberately no fuzzy matching, since a silent
near-miss would corrupt every downstream statistic.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .citation import DIRECTIONS, normalize_title
from .communities import Partition
from .errors import FormatError, UsageError, ValidationError
from .layout import Layout

KEY_TABLE_HEADER = ["full_title", "abbreviation", "x", "y", "cluster"]


@dataclass(frozen=True)
class KeyRow:
    full_title: str
    abbreviation: str
    x: float
    y: float
    cluster: int
    index: int  # in-memory journal handle; not serialized


@dataclass
class JournalKeyTable:
    direction: str
    rows: list[KeyRow]
    _by_title: dict[str, KeyRow] = field(init=False, repr=False)
    _by_abbrev: dict[str, KeyRow] = field(init=False, repr=False)

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise UsageError(f"unknown direction: {self.direction!r}")
        self._by_title = {}
        self._by_abbrev = {}
        title_collisions = []
        abbrev_collisions = []
        for row in self.rows:
            tkey = normalize_title(row.full_title)
            if not tkey:
                raise ValidationError("key table rows must have a non-empty full title")
            if tkey in self._by_title:
                title_collisions.append(row.full_title)
            self._by_title[tkey] = row
            akey = normalize_title(row.abbreviation)
            if akey:
                if akey in self._by_abbrev:
                    abbrev_collisions.append(row.abbreviation)
                self._by_abbrev[akey] = row
        if title_collisions or abbrev_collisions:
            parts = []
            if title_collisions:
                parts.append("titles: " + "; ".join(sorted(set(title_collisions))))
            if abbrev_collisions:
                parts.append("abbreviations: " + "; ".join(sorted(set(abbrev_collisions))))
            raise ValidationError("duplicate keys after case-folding (" + ", ".join(parts) + ")")

    def __len__(self) -> int:
        return len(self.rows)


def build_key_table(layout: Layout, partition: Partition, titles, direction: str) -> JournalKeyTable:
    """Assemble the key table for a mapped component.

    ``titles`` maps journal index to either a full title or a
    (full title, abbreviation) pair and must cover every mapped journal.
    Layout and partition must cover exactly the same journal set.
    """
    layout_set = {int(v) for v in layout.nodes}
    partition_set = set(partition.labels)
    if layout_set != partition_set:
        missing = sorted(layout_set ^ partition_set)
        raise ValidationError(
            f"layout and partition cover different journals (first mismatch: {missing[0]})"
        )
    rows = []
    for idx in sorted(layout_set):
        try:
            entry = titles[idx]
        except (KeyError, IndexError):
            raise ValidationError(f"no title for journal index {idx}") from None
        if isinstance(entry, str):
            title, abbrev = entry, ""
        else:
            title, abbrev = entry
        x, y = layout.coord(idx)
        rows.append(KeyRow(
            full_title=title.strip(),
            abbreviation=(abbrev or "").strip(),
            x=x,
            y=y,
            cluster=int(partition.labels[idx]),
            index=idx,
        ))
    return JournalKeyTable(direction=direction, rows=rows)


def match_title(table: JournalKeyTable, title: str) -> KeyRow | None:
    """Case-insensitive, whitespace-trimmed exact match on the full title.

    A miss is a normal, countable outcome, not an error.
    """
    key = normalize_title(title)
    if not key:
        return None
    return table._by_title.get(key)


def match_abbreviation(table: JournalKeyTable, abbrev: str) -> KeyRow | None:
    """Like :func:`match_title` but on the abbreviation key."""
    key = normalize_title(abbrev)
    if not key:
        return None
    return table._by_abbrev.get(key)


def write_key_table(table: JournalKeyTable, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(KEY_TABLE_HEADER)
        for row in table.rows:
            writer.writerow([
                row.full_title,
                row.abbreviation,
                repr(float(row.x)),
                repr(float(row.y)),
                row.cluster,
            ])


def read_key_table(path, direction: str) -> JournalKeyTable:
    """Read a key table; rows get fresh sequential journal handles."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != KEY_TABLE_HEADER:
            raise FormatError(
                f"{path}: expected header {','.join(KEY_TABLE_HEADER)!r}"
            )
        for i, row in enumerate(reader):
            if len(row) != 5:
                raise FormatError(f"{path}:{reader.line_num}: expected 5 fields")
            try:
                rows.append(KeyRow(
                    full_title=row[0],
                    abbreviation=row[1],
                    x=float(row[2]),
                    y=float(row[3]),
                    cluster=int(row[4]),
                    index=i,
                ))
            except ValueError:
                raise FormatError(f"{path}:{reader.line_num}: bad numeric field") from None
    return JournalKeyTable(direction=direction, rows=rows)


def layout_from_key_table(table: JournalKeyTable) -> Layout:
    """Reconstruct the basemap geometry recorded in a key table."""
    nodes = np.array([row.index for row in table.rows], dtype=np.int64)
    xy = np.array([[row.x, row.y] for row in table.rows], dtype=np.float64)
    return Layout(nodes=nodes, xy=xy)
