from __future__ import annotations

import numpy as np
import pytest

from oracles import brute_rao_stirling

from journalmap import (
    Layout,
    UsageError,
    ValidationError,
    build_overlay,
    node_size,
    rao_stirling,
    read_map_file,
    read_overlay_table,
    write_map_file,
    write_overlay_table,
    write_rao,
)
from journalmap.ingest import FrequencyList
from journalmap.keys import JournalKeyTable, KeyRow
from journalmap.overlay import DiversityResult, weight_to_publications


def fixture_table():
    rows = [
        KeyRow("Alpha Journal", "ALPHA J", 0.0, 0.0, 0, 0),
        KeyRow("Beta Review", "BETA REV", 3.0, 4.0, 1, 1),
        KeyRow("Gamma Letters", "GAMMA LETT", 3.0, 0.0, 0, 2),
        KeyRow("Delta, The Journal", "DELTA J", -1.0, -1.0, 2, 3),
    ]
    return JournalKeyTable("citing", rows)


def fixture_layout():
    return Layout(nodes=np.array([0, 1, 2, 3]),
                  xy=np.array([[0.0, 0.0], [3.0, 4.0], [3.0, 0.0], [-1.0, -1.0]]))


class TestBuildOverlay:
    def test_sizes_follow_log4(self):
        freq = FrequencyList([("Alpha Journal", 3), ("Beta Review", 15)], "full_title")
        overlay = build_overlay(freq, fixture_table())
        sizes = {it.row.full_title: it.size for it in overlay.items}
        assert sizes["Alpha Journal"] == 1.0   # log4(4)
        assert sizes["Beta Review"] == 2.0     # log4(16)
        assert node_size(0) == 0.0

    def test_proportions_over_matched_only(self):
        freq = FrequencyList([("Alpha Journal", 2), ("Nowhere J", 6), ("Beta Review", 2)],
                             "full_title")
        overlay = build_overlay(freq, fixture_table())
        assert [it.p for it in overlay.items] == [0.5, 0.5]
        assert overlay.skipped == [("Nowhere J", 6)]
        assert overlay.match_rate == pytest.approx(4 / 10)

    def test_match_bookkeeping_exact(self):
        freq = FrequencyList([("Alpha Journal", 2), ("X", 1), ("Y", 3)], "full_title")
        overlay = build_overlay(freq, fixture_table())
        matched = overlay.matched_total
        skipped = sum(c for _n, c in overlay.skipped)
        assert matched + skipped == freq.total

    def test_case_variants_merge_to_one_journal(self):
        freq = FrequencyList([("ALPHA JOURNAL", 2), ("alpha journal ", 3)], "full_title")
        overlay = build_overlay(freq, fixture_table())
        assert len(overlay.items) == 1
        assert overlay.items[0].n_publ == 5

    def test_abbreviation_kind_uses_abbreviations(self):
        freq = FrequencyList([("ALPHA J", 4), ("NO SUCH ABBR", 2)], "abbreviation")
        overlay = build_overlay(freq, fixture_table())
        assert overlay.items[0].row.full_title == "Alpha Journal"
        assert overlay.skipped == [("NO SUCH ABBR", 2)]

    def test_empty_overlay_is_an_error_with_skipped_report(self):
        freq = FrequencyList([("X", 1), ("Y", 2)], "full_title")
        with pytest.raises(ValidationError, match="empty overlay") as err:
            build_overlay(freq, fixture_table())
        assert err.value.skipped == [("X", 1), ("Y", 2)]


class TestRaoStirling:
    def test_single_journal_zero(self):
        freq = FrequencyList([("Alpha Journal", 7)], "full_title")
        overlay = build_overlay(freq, fixture_table())
        result = rao_stirling(overlay, fixture_layout())
        assert result.delta == 0.0
        assert result.n_matched_journals == 1

    def test_two_equal_journals_half_d(self):
        freq = FrequencyList([("Alpha Journal", 5), ("Beta Review", 5)], "full_title")
        layout = fixture_layout()
        result = rao_stirling(build_overlay(freq, fixture_table()), layout)
        from journalmap import normalized_distance

        d = normalized_distance(layout, 0, 1)
        assert result.delta == 0.5 * d

    def test_matches_brute_force(self):
        rng = np.random.default_rng(77)
        for _ in range(30):
            k = int(rng.integers(2, 13))
            xy = rng.normal(size=(k, 2)) * rng.uniform(0.5, 20)
            counts = rng.integers(1, 40, size=k)
            rows = [KeyRow(f"J{i}", "", float(xy[i, 0]), float(xy[i, 1]), 0, i)
                    for i in range(k)]
            table = JournalKeyTable("citing", rows)
            layout = Layout(nodes=np.arange(k), xy=xy)
            if layout.diagonal == 0:
                continue
            freq = FrequencyList([(f"J{i}", int(counts[i])) for i in range(k)], "full_title")
            overlay = build_overlay(freq, table)
            got = rao_stirling(overlay, layout).delta
            p = counts / counts.sum()
            expected = brute_rao_stirling(p, xy, layout.diagonal)
            assert got == pytest.approx(expected, abs=1e-12)
            assert 0.0 <= got <= 1.0

    def test_translation_and_scale_invariance(self):
        rng = np.random.default_rng(13)
        k = 8
        xy = rng.normal(size=(k, 2))
        rows = [KeyRow(f"J{i}", "", float(xy[i, 0]), float(xy[i, 1]), 0, i) for i in range(k)]
        freq = FrequencyList([(f"J{i}", int(1 + i)) for i in range(k)], "full_title")
        overlay = build_overlay(freq, JournalKeyTable("citing", rows))
        base = rao_stirling(overlay, Layout(nodes=np.arange(k), xy=xy)).delta
        shifted = rao_stirling(overlay, Layout(nodes=np.arange(k), xy=xy + [3.5, -2.0])).delta
        scaled = rao_stirling(overlay, Layout(nodes=np.arange(k), xy=xy * 12.0)).delta
        assert abs(base - shifted) < 1e-12
        assert abs(base - scaled) < 1e-12

    def test_degenerate_layout_rejected(self):
        freq = FrequencyList([("Alpha Journal", 1), ("Beta Review", 1)], "full_title")
        overlay = build_overlay(freq, fixture_table())
        degenerate = Layout(nodes=np.arange(4), xy=np.zeros((4, 2)))
        with pytest.raises(ValidationError, match="degenerate"):
            rao_stirling(overlay, degenerate)

    def test_missing_journal_named(self):
        freq = FrequencyList([("Alpha Journal", 1), ("Beta Review", 1)], "full_title")
        overlay = build_overlay(freq, fixture_table())
        partial = Layout(nodes=np.array([0]), xy=np.array([[0.0, 0.0]]))
        with pytest.raises(ValidationError, match="Beta Review"):
            rao_stirling(overlay, partial)

    def test_merging_duplicates_does_not_change_delta(self):
        layout = fixture_layout()
        merged = FrequencyList([("Alpha Journal", 4), ("Beta Review", 2)], "full_title")
        split = FrequencyList([("Alpha Journal", 2), ("ALPHA JOURNAL", 2), ("Beta Review", 2)],
                              "full_title")
        d1 = rao_stirling(build_overlay(merged, fixture_table()), layout).delta
        d2 = rao_stirling(build_overlay(split, fixture_table()), layout).delta
        assert d1 == pytest.approx(d2, abs=1e-15)


class TestMapFile:
    def test_round_trip(self, tmp_path):
        freq = FrequencyList([("Alpha Journal", 3), ("Delta, The Journal", 15)], "full_title")
        overlay = build_overlay(freq, fixture_table())
        path = tmp_path / "map.csv"
        write_map_file(overlay, fixture_table(), path)
        rows, kind = read_map_file(path)
        assert kind == "normalized_weight"
        assert len(rows) == 2
        by_label = {r.label: r for r in rows}
        assert by_label["Delta, The Journal"].weight == 2.0
        assert by_label["Alpha Journal"].cluster == 0
        # byte-stable: writing again produces identical bytes
        data1 = path.read_bytes()
        write_map_file(overlay, fixture_table(), path)
        assert path.read_bytes() == data1

    def test_weight_header_variant(self, tmp_path):
        freq = FrequencyList([("Alpha Journal", 3)], "full_title")
        overlay = build_overlay(freq, fixture_table())
        path = tmp_path / "map.csv"
        write_map_file(overlay, fixture_table(), path, weight_header="weight")
        assert path.read_text().splitlines()[0] == "id,label,x,y,cluster,weight"
        _rows, kind = read_map_file(path)
        assert kind == "weight"
        with pytest.raises(UsageError):
            write_map_file(overlay, fixture_table(), path, weight_header="sizes")

    def test_cluster_follows_edited_table(self, tmp_path):
        freq = FrequencyList([("Alpha Journal", 3)], "full_title")
        overlay = build_overlay(freq, fixture_table())
        edited_rows = [KeyRow("Alpha Journal", "ALPHA J", 0.0, 0.0, 7, 0)]
        edited = JournalKeyTable("citing", edited_rows)
        path = tmp_path / "map.csv"
        write_map_file(overlay, edited, path)
        rows, _ = read_map_file(path)
        assert rows[0].cluster == 7

    def test_weight_inversion(self):
        for n in (0, 1, 3, 15, 63, 1000, 123456):
            assert weight_to_publications(node_size(n)) == n


class TestOverlayTable:
    def test_data_and_skipped_sections(self, tmp_path):
        freq = FrequencyList([("Alpha Journal", 2), ("Beta Review", 1),
                              ("Gamma Letters", 1), ("Lost J", 4)], "full_title")
        overlay = build_overlay(freq, fixture_table())
        path = tmp_path / "overlay_table.csv"
        write_overlay_table(overlay, path)
        data, skipped = read_overlay_table(path)
        assert len(data) == 3
        assert skipped == [("Lost J", 4)]
        n_publ_total = sum(int(r[2]) for r in data)
        assert n_publ_total == overlay.matched_total

    def test_rerun_overwrites(self, tmp_path):
        table = fixture_table()
        path = tmp_path / "overlay_table.csv"
        ov1 = build_overlay(FrequencyList([("Alpha Journal", 2)], "full_title"), table)
        write_overlay_table(ov1, path)
        ov2 = build_overlay(FrequencyList([("Beta Review", 9)], "full_title"), table)
        write_overlay_table(ov2, path)
        data, _ = read_overlay_table(path)
        assert len(data) == 1
        assert data[0][0] == "Beta Review"


class TestWriteRao:
    def test_six_decimals_and_overwrite(self, tmp_path):
        path = tmp_path / "rao.txt"
        write_rao(DiversityResult(0.218, "citing", 42), path)
        text = path.read_text()
        assert text.splitlines()[0] == "0.218000"
        assert "citing" in text
        write_rao(DiversityResult(0.092, "citing", 7), path)
        text = path.read_text()
        assert "0.092000" in text and "0.218000" not in text
