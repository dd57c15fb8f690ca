"""Parsers for the three document-set input flavors.

Three kinds of files describe a document set:

* ``data.txt`` -- a tagged-format download.  Records are sequences of
  ``XY value`` lines (two-character tag, one space), continuation lines are
  indented, ``ER`` terminates a record and ``EF`` the file.  We care about
  the ``SO`` field (source journal title) and the ``CR`` field (cited
  references, one per line including continuations).
* ``analyze.txt`` -- a tab-separated "Analyze Results" listing of
  journal title, record count and a percentage column (ignored).
* core CSV -- any CSV with a column named ``SO`` holding journal titles,
  e.g. a renamed citation-report download.

All parsers are total on well-formed prefixes: junk lines are skipped (with
warnings where that may hide data) rather than aborting the run.
"""

from __future__ import annotations

import csv
import logging
from collections import Counter
from dataclasses import dataclass, field

from .errors import FormatError, UsageError

logger = logging.getLogger(__name__)

NAME_KINDS = ("full_title", "abbreviation")


@dataclass
class DocumentRecord:
    source_title: str = ""
    cited_refs: list[str] = field(default_factory=list)


@dataclass
class FrequencyList:
    """Journal-name counts; names are unique and counts are positive."""

    entries: list[tuple[str, int]]
    name_kind: str

    @property
    def total(self) -> int:
        return sum(count for _name, count in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def parse_tagged(path) -> list[DocumentRecord]:
    """Parse a tagged-format export into document records.

    A record missing its ``ER`` terminator at end of file is dropped with a
    warning.  Records without an ``SO`` field are kept with an empty source
    title so reference-level statistics still see them.
    """
    records: list[DocumentRecord] = []
    fields: dict[str, list[str]] = {}
    tag = None
    open_record = False

    def finish():
        nonlocal fields, tag, open_record
        so = " ".join(part.strip() for part in fields.get("SO", ())).strip()
        refs = [r.strip() for r in fields.get("CR", ()) if r.strip()]
        records.append(DocumentRecord(source_title=so, cited_refs=refs))
        fields = {}
        tag = None
        open_record = False

    with open(path, encoding="utf-8-sig") as fh:
        for raw in fh:
            line = raw.rstrip("\n").rstrip("\r")
            stripped = line.strip()
            if stripped == "ER":
                if open_record:
                    finish()
                continue
            if stripped == "EF":
                break
            if len(line) >= 3 and line[:2].isalnum() and line[:2].upper() == line[:2] and line[2] == " ":
                tag = line[:2]
                fields.setdefault(tag, []).append(line[3:])
                open_record = True
            elif line[:1] in (" ", "\t") and tag is not None and stripped:
                fields[tag].append(stripped)
            # anything else (blank lines, headers without values) is skipped

    if open_record:
        logger.warning("tagged file %s: missing record terminator; dropped partial record", path)
    logger.info("tagged file %s: %d records", path, len(records))
    return records


def extract_cr_journal(reference: str) -> str | None:
    """Journal abbreviation from one cited-reference string, if extractable.

    The abbreviation is the third comma-separated segment, accepted only
    when the second segment is a four-digit year, e.g.
    ``"DOE J A, 2007, J AM SOC INF SCI TEC, V58, P1303"``.
    Returns None (a normal outcome) for anything else.
    """
    parts = reference.split(",")
    if len(parts) < 3:
        return None
    year = parts[1].strip()
    if len(year) != 4 or not year.isdigit():
        return None
    journal = parts[2].strip().upper()
    return journal or None


def parse_analyze(path) -> FrequencyList:
    """Parse a tab-separated "Analyze Results" listing into title counts.

    Expected columns: journal title, record count, percentage (ignored);
    extra columns are ignored too.  Header/footer lines and rows whose count
    column is not a positive integer are skipped.
    """
    counts: Counter[str] = Counter()
    first_data_seen = False
    with open(path, encoding="utf-8-sig") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                if first_data_seen:
                    logger.warning("%s:%d: not a tab-separated row; skipped", path, lineno)
                continue
            title = parts[0].strip()
            try:
                count = int(parts[1].strip())
            except ValueError:
                if first_data_seen or lineno > 1:
                    logger.warning("%s:%d: count %r is not numeric; row skipped",
                                   path, lineno, parts[1].strip())
                continue
            if not title or count <= 0:
                logger.warning("%s:%d: row skipped (empty title or non-positive count)",
                               path, lineno)
                continue
            if title in counts:
                logger.warning("%s:%d: duplicate title %r; counts summed", path, lineno, title)
            counts[title] += count
            first_data_seen = True
    return FrequencyList(entries=list(counts.items()), name_kind="full_title")


def parse_core(path) -> FrequencyList:
    """Tally the ``SO`` column of a CSV file into title counts."""
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise FormatError(f"{path}: empty file")
        so_col = None
        for i, name in enumerate(header):
            if name.strip().lower() == "so":
                so_col = i
                break
        if so_col is None:
            raise FormatError(
                f"{path}: no 'SO' column found; rename the source-title column to 'SO'"
            )
        counts: Counter[str] = Counter()
        for row in reader:
            if so_col >= len(row):
                continue
            title = row[so_col].strip()
            if title:
                counts[title] += 1
    return FrequencyList(entries=list(counts.items()), name_kind="full_title")


def tally(records: list[DocumentRecord], field_name: str) -> FrequencyList:
    """Aggregate parsed records into a frequency list.

    ``SO`` counts source titles over records (records without one are
    excluded); ``CR`` counts extractable journal abbreviations over all
    cited references of all records.
    """
    if field_name == "SO":
        counts: Counter[str] = Counter()
        for record in records:
            if record.source_title:
                counts[record.source_title] += 1
        return FrequencyList(entries=list(counts.items()), name_kind="full_title")
    if field_name == "CR":
        counts = Counter()
        considered = 0
        for record in records:
            for ref in record.cited_refs:
                considered += 1
                abbrev = extract_cr_journal(ref)
                if abbrev is not None:
                    counts[abbrev] += 1
        logger.info("CR tally: %d references considered, %d with extractable journals",
                    considered, sum(counts.values()))
        return FrequencyList(entries=list(counts.items()), name_kind="abbreviation")
    raise UsageError(f"unknown tally field {field_name!r} (use 'SO' or 'CR')")
