from __future__ import annotations

import numpy as np
import pytest

from journalmap import (
    Layout,
    ValidationError,
    build_key_table,
    layout_from_key_table,
    match_abbreviation,
    match_title,
    read_key_table,
    write_key_table,
)
from journalmap.communities import Partition
from journalmap.keys import JournalKeyTable, KeyRow


def small_table():
    rows = [
        KeyRow("Journal of Informetrics", "J INFORMETR", 0.25, -0.5, 0, 0),
        KeyRow("Nature", "NATURE", -1.0, 0.75, 1, 1),
        KeyRow("Scientometrics", "", 0.75, -0.25, 0, 2),
    ]
    return JournalKeyTable("citing", rows)


class TestBuildKeyTable:
    def make_inputs(self):
        layout = Layout(nodes=np.array([0, 1, 2]),
                        xy=np.array([[0.1, 0.2], [-0.3, 0.4], [0.2, -0.6]]))
        partition = Partition(labels={0: 0, 1: 1, 2: 0}, n_communities=2, q=0.4, gamma=1.0)
        titles = {0: ("Alpha Journal", "ALPHA J"), 1: ("Beta Review", "BETA REV"),
                  2: ("Gamma Letters", "")}
        return layout, partition, titles

    def test_three_rows_round_trip(self, tmp_path):
        layout, partition, titles = self.make_inputs()
        table = build_key_table(layout, partition, titles, "citing")
        assert len(table) == 3
        path = tmp_path / "keys.csv"
        write_key_table(table, path)
        back = read_key_table(path, "citing")
        assert [(r.full_title, r.abbreviation, r.x, r.y, r.cluster) for r in back.rows] == \
               [(r.full_title, r.abbreviation, r.x, r.y, r.cluster) for r in table.rows]
        # writing the re-read table reproduces the file byte for byte
        path2 = tmp_path / "keys2.csv"
        write_key_table(back, path2)
        assert path.read_bytes() == path2.read_bytes()

    def test_coverage_mismatch(self):
        layout, partition, titles = self.make_inputs()
        bad = Partition(labels={0: 0, 1: 0}, n_communities=1, q=0.0, gamma=1.0)
        with pytest.raises(ValidationError, match="cover"):
            build_key_table(layout, bad, titles, "citing")

    def test_case_collision_rejected(self):
        layout, partition, _ = self.make_inputs()
        titles = {0: "Same Name", 1: "SAME NAME", 2: "Other"}
        with pytest.raises(ValidationError, match="duplicate"):
            build_key_table(layout, partition, titles, "citing")

    def test_user_edited_cluster_column_respected(self, tmp_path):
        # recolor workflow: rewrite the cluster column, matching still works
        layout, partition, titles = self.make_inputs()
        table = build_key_table(layout, partition, titles, "citing")
        path = tmp_path / "keys.csv"
        write_key_table(table, path)
        text = path.read_text().splitlines()
        text[1] = text[1].rsplit(",", 1)[0] + ",9"
        path.write_text("\n".join(text) + "\n")
        edited = read_key_table(path, "citing")
        assert match_title(edited, "alpha journal").cluster == 9


class TestMatching:
    def test_case_insensitive_title(self):
        table = small_table()
        row = match_title(table, "JOURNAL OF INFORMETRICS")
        assert row is not None and row.cluster == 0

    def test_absent_title_is_no_match(self):
        assert match_title(small_table(), "Unknown Quarterly") is None

    def test_whitespace_trimmed(self):
        assert match_title(small_table(), "  Nature  ") is not None

    def test_abbreviation_match(self):
        row = match_abbreviation(small_table(), "j informetr")
        assert row is not None and row.full_title == "Journal of Informetrics"

    def test_misspelled_abbreviation_no_match(self):
        assert match_abbreviation(small_table(), "J INFORMETRICS") is None

    def test_empty_abbreviation_never_matches(self):
        assert match_abbreviation(small_table(), "") is None
        assert match_abbreviation(small_table(), "   ") is None

    def test_match_iff_in_key_set(self):
        table = small_table()
        keys = {r.full_title.strip().casefold() for r in table.rows}
        probes = [r.full_title for r in table.rows] + ["nope", "NATURE", " nature "]
        for probe in probes:
            hit = match_title(table, probe) is not None
            assert hit == (probe.strip().casefold() in keys)


class TestLayoutFromKeyTable:
    def test_geometry_preserved(self):
        table = small_table()
        lay = layout_from_key_table(table)
        assert lay.coord(0) == (0.25, -0.5)
        assert lay.coord(2) == (0.75, -0.25)
