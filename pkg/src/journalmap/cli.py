"""Command-line interface.

One executable with four subcommands covering the pipeline end to end:

* ``basemap``   -- citation matrix -> cosine graph -> threshold -> largest
  component -> communities -> layout; writes the key table, partition,
  layout and a run report.
* ``overlay``   -- project a document set onto an existing basemap, write
  the map file, the overlay table and rao.txt, and print the diversity.
  With ``--field SO`` it plays the role of the classic citing/cited
  routines (or the analyze/core variants depending on ``--input-kind``);
  with ``--field CR`` it overlays the cited references instead.
* ``localmap``  -- ego map of one seed journal's citation environment.
* ``diversity`` -- recompute the diversity of a previously written map file.

Defaults follow the recommended workflow: cosine threshold 0.2, resolution
gamma 1, and the citing direction unless there is a reason to prefer cited.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import __version__
from .citation import (
    cosine_similarity_graph,
    largest_component,
    load_matrix,
    threshold_edges,
)
from .communities import louvain, write_partition_csv
from .errors import JournalMapError, UsageError, ValidationError
from .ingest import FrequencyList, parse_analyze, parse_core, parse_tagged, tally
from .keys import (
    build_key_table,
    layout_from_key_table,
    match_title,
    normalize_title,
    read_key_table,
    write_key_table,
)
from .layout import map_diagonal, stress_layout, write_layout_csv
from .localmap import ego_subset, local_basemap
from .overlay import (
    quadratic_entropy,
    build_overlay,
    rao_stirling,
    read_map_file,
    weight_to_publications,
    write_map_file,
    write_overlay_table,
    write_rao,
)

logger = logging.getLogger(__name__)

OUT_DIR_ENV = "JOURNALMAP_OUT"


@contextmanager
def _stage(name: str):
    try:
        yield
    except JournalMapError as exc:
        if not getattr(exc, "stage", None):
            exc.stage = name
        raise


def _out_dir(args) -> Path:
    out = args.out or os.environ.get(OUT_DIR_ENV) or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _read_exclusions(path) -> list[str]:
    titles = []
    with open(path, encoding="utf-8-sig") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                titles.append(line)
    return titles


def _read_abbreviations(path) -> dict[str, str]:
    table = {}
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["full_title", "abbreviation"]:
            raise UsageError(f"{path}: expected header 'full_title,abbreviation'")
        for row in reader:
            if len(row) >= 2 and row[0].strip():
                table[normalize_title(row[0])] = row[1].strip()
    return table


def cmd_basemap(args) -> int:
    out = _out_dir(args)
    report: dict = {"command": "basemap", "direction": args.direction, "tau": args.tau,
                    "gamma": args.gamma, "seed": args.seed}
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    with _stage("load"):
        matrix = load_matrix(args.matrix)
    timings["load"] = time.perf_counter() - t0
    report.update(n_journals=matrix.n_journals, nonzero_cells=matrix.nonzero_cells,
                  grand_total=matrix.grand_total)

    t0 = time.perf_counter()
    with _stage("cosine"):
        graph = cosine_similarity_graph(
            matrix, direction=args.direction,
            include_self_citations=args.include_self_citations,
            min_weight=args.tau,
        )
        graph = threshold_edges(graph, args.tau)
    timings["cosine"] = time.perf_counter() - t0
    report.update(graph_nodes=graph.n_nodes, graph_edges=graph.n_edges)

    exclusions = []
    if args.exclusions:
        with _stage("exclusions"):
            exclusions = [matrix.index(t) for t in _read_exclusions(args.exclusions)]
    report["n_excluded"] = len(exclusions)

    t0 = time.perf_counter()
    with _stage("component"):
        component = largest_component(graph, exclusions)
    timings["component"] = time.perf_counter() - t0
    retained = component.n_nodes / graph.n_nodes if graph.n_nodes else 0.0
    report.update(component_nodes=component.n_nodes, component_edges=component.n_edges,
                  retained_fraction=retained)

    t0 = time.perf_counter()
    with _stage("louvain"):
        partition = louvain(component, gamma=args.gamma,
                            refinement=args.refinement, seed=args.seed)
    timings["louvain"] = time.perf_counter() - t0
    report.update(q=partition.q, n_communities=partition.n_communities)

    t0 = time.perf_counter()
    with _stage("layout"):
        layout = stress_layout(component, seed=args.seed,
                               max_iters=args.max_iters, tol=args.layout_tol)
    timings["layout"] = time.perf_counter() - t0
    report.update(stress=layout.stress, layout_iterations=layout.iterations)

    with _stage("keys"):
        abbrevs = _read_abbreviations(args.abbreviations) if args.abbreviations else {}
        titles = {
            int(v): (matrix.titles[int(v)], abbrevs.get(normalize_title(matrix.titles[int(v)]), ""))
            for v in component.nodes
        }
        table = build_key_table(layout, partition, titles, args.direction)
        key_path = out / f"{args.direction}_keys.csv"
        write_key_table(table, key_path)
        write_partition_csv(partition, matrix.titles, out / "partition.csv")
        write_layout_csv(layout, matrix.titles, out / "layout.csv")

    report["timings"] = {k: round(v, 3) for k, v in timings.items()}
    with open(out / "report.json", "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")

    print(f"journals: {matrix.n_journals}  cells: {matrix.nonzero_cells}  "
          f"total: {matrix.grand_total}")
    print(f"graph ({args.direction}): {graph.n_nodes} nodes, {graph.n_edges} edges "
          f"above {args.tau}")
    print(f"largest component: {component.n_nodes} nodes ({100*retained:.1f}%), "
          f"{component.n_edges} edges")
    print(f"communities: {partition.n_communities}  Q = {partition.q:.4f}  "
          f"(gamma = {args.gamma})")
    print(f"layout: stress {layout.stress:.6g} after {layout.iterations} iterations")
    print(f"wrote {key_path}, partition.csv, layout.csv, report.json in {out}")
    return 0


DEFAULT_INPUT_NAMES = {"tagged": "data.txt", "analyze": "analyze.txt", "core": "core.csv"}


def _parse_overlay_input(args) -> FrequencyList:
    source = args.input or DEFAULT_INPUT_NAMES[args.input_kind]
    if args.input_kind == "tagged":
        records = parse_tagged(source)
        return tally(records, args.field)
    if args.field == "CR":
        raise UsageError("--field CR requires --input-kind tagged (references live there)")
    if args.input_kind == "analyze":
        return parse_analyze(source)
    return parse_core(source)


def _sniff_direction(path, flag_value) -> str:
    if flag_value:
        return flag_value
    name = Path(path).name.lower()
    if "citing" in name:
        return "citing"
    if "cited" in name:
        return "cited"
    return "citing"


def cmd_overlay(args) -> int:
    out = _out_dir(args)
    direction = _sniff_direction(args.key_table, args.direction)
    with _stage("keys"):
        table = read_key_table(args.key_table, direction)
    with _stage("parse"):
        freq = _parse_overlay_input(args)
    with _stage("overlay"):
        try:
            overlay = build_overlay(freq, table)
        except ValidationError as exc:
            for name, count in getattr(exc, "skipped", [])[:25]:
                print(f"skipped: {name} ({count})")
            raise
    with _stage("diversity"):
        layout = layout_from_key_table(table)
        result = rao_stirling(overlay, layout)
    with _stage("write"):
        write_map_file(overlay, table, out / "map.csv", weight_header=args.weight_header)
        write_overlay_table(overlay, out / "overlay_table.csv")
        write_rao(result, out / "rao.txt")

    for name, count in overlay.skipped[:10]:
        print(f"skipped: {name} ({count})")
    if len(overlay.skipped) > 10:
        print(f"... and {len(overlay.skipped) - 10} more skipped names (see overlay_table.csv)")
    print(f"matched {overlay.n_matched} journals; match rate {100*overlay.match_rate:.1f}%")
    print(f"rao-stirling diversity ({result.direction}): {result.delta:.6f}")
    print(f"wrote map.csv, overlay_table.csv, rao.txt in {out}")
    return 0


def cmd_localmap(args) -> int:
    out = _out_dir(args)
    with _stage("load"):
        matrix = load_matrix(args.matrix)
        seed_idx = matrix.index(args.seed_journal)
    with _stage("ego"):
        members = ego_subset(matrix, seed_idx, min_count=args.min_count,
                             top_n=args.top_n, direction=args.ego_direction)
    with _stage("pipeline"):
        component, partition, layout = local_basemap(
            matrix, members, tau=args.tau, gamma=args.gamma, seed=args.seed,
            max_iters=args.max_iters, tol=args.layout_tol,
        )

    with _stage("write"):
        local_titles = component.titles
        titles_map = {int(v): local_titles[int(v)] for v in component.nodes}
        table = build_key_table(layout, partition, titles_map, "citing")

        # node sizes follow the ego citation counts, like overlay sizing
        if args.ego_direction == "cited_by_seed":
            vec = np.asarray(matrix.counts[[seed_idx], :].todense()).ravel()
        else:
            vec = np.asarray(matrix.counts[:, [seed_idx]].todense()).ravel()
        entries = []
        for m in members:
            count = int(vec[m]) if m != seed_idx else max(int(vec[m]), 1)
            title = matrix.titles[m]
            entries.append((title, max(count, 1)))
        freq = FrequencyList(entries=entries, name_kind="full_title")
        overlay = build_overlay(freq, table)

        labels = write_map_file(overlay, table, out / "map.csv",
                                weight_header=args.weight_header)
        write_partition_csv(partition, local_titles, out / "partition.csv")
        ids = {normalize_title(label): i + 1 for i, label in enumerate(labels)}
        with open(out / "network.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["i", "j", "weight"])
            for a, b, w in zip(component.edge_i, component.edge_j, component.weights):
                ka = ids.get(normalize_title(local_titles[int(a)]))
                kb = ids.get(normalize_title(local_titles[int(b)]))
                if ka is not None and kb is not None:
                    writer.writerow([ka, kb, repr(float(w))])

    print(f"ego environment of {matrix.titles[seed_idx]!r}: {len(members)} journals, "
          f"{component.n_nodes} mapped")
    print(f"communities: {partition.n_communities}  Q = {partition.q:.4f}")
    print(f"wrote map.csv, partition.csv, network.csv in {out}")
    return 0


def cmd_diversity(args) -> int:
    with _stage("read"):
        rows, _kind = read_map_file(args.map_file)
        direction = _sniff_direction(args.key_table, args.direction)
        table = read_key_table(args.key_table, direction)
    with _stage("diversity"):
        layout = layout_from_key_table(table)
        diagonal = map_diagonal(layout)
        missing = [r.label for r in rows if match_title(table, r.label) is None]
        if missing:
            raise ValidationError(f"map journal not in key table: {missing[0]!r}")
        publications = np.array([float(weight_to_publications(r.weight)) for r in rows])
        if (publications < 0).any():
            raise ValidationError("map file weights must be non-negative")
        total = publications.sum()
        if total <= 0:
            raise ValidationError("map file carries no publication mass")
        p = publications / total
        coords = np.array([[r.x, r.y] for r in rows])
        delta = quadratic_entropy(p, coords, diagonal)
    print(f"rao-stirling diversity ({direction}): {delta:.6f}")
    print(f"delta_full: {delta!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="journalmap",
        description="Journal citation basemaps, overlays, and diversity measurement.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    common_out = dict(default=None, help=f"output directory (default: ${OUT_DIR_ENV} or .)")

    p = sub.add_parser("basemap", help="build a basemap from a citation-matrix CSV")
    p.add_argument("matrix", help="citation matrix CSV (citing,cited,count)")
    p.add_argument("--direction", choices=["citing", "cited"], default="citing")
    p.add_argument("--tau", type=float, default=0.2, help="cosine threshold (default 0.2)")
    p.add_argument("--gamma", type=float, default=1.0, help="resolution (default 1)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--refinement", choices=["single_level", "multi_level"],
                   default="multi_level")
    p.add_argument("--include-self-citations", action="store_true",
                   help="keep the self-citation diagonal in the cosine vectors")
    p.add_argument("--exclusions", default=None,
                   help="file with journal titles to drop before component extraction")
    p.add_argument("--abbreviations", default=None,
                   help="CSV full_title,abbreviation supplying the abbreviation key")
    p.add_argument("--max-iters", type=int, default=1000, help="layout iteration cap")
    p.add_argument("--layout-tol", type=float, default=1e-6,
                   help="relative stress tolerance (default 1e-6)")
    p.add_argument("--out", **common_out)
    p.set_defaults(func=cmd_basemap)

    p = sub.add_parser("overlay", help="project a document set onto a basemap")
    p.add_argument("input", nargs="?", default=None,
                   help="document-set file; defaults to data.txt / analyze.txt / "
                        "core.csv depending on --input-kind")
    p.add_argument("--input-kind", choices=["tagged", "analyze", "core"], default="tagged")
    p.add_argument("--field", choices=["SO", "CR"], default="SO",
                   help="count source journals (SO) or cited-reference journals (CR)")
    p.add_argument("--key-table", required=True, help="key table CSV from a basemap run")
    p.add_argument("--direction", choices=["citing", "cited"], default=None,
                   help="basemap direction (default: guessed from the key-table name)")
    p.add_argument("--weight-header", choices=["normalized_weight", "weight"],
                   default="normalized_weight")
    p.add_argument("--out", **common_out)
    p.set_defaults(func=cmd_overlay)

    p = sub.add_parser("localmap", help="map one journal's citation environment")
    p.add_argument("matrix", help="citation matrix CSV (citing,cited,count)")
    p.add_argument("seed_journal", help="full title of the seed journal")
    p.add_argument("--min-count", type=int, default=10,
                   help="minimum citations from/to the seed (default 10)")
    p.add_argument("--top-n", type=int, default=None, help="cap the environment size")
    p.add_argument("--ego-direction", choices=["cited_by_seed", "citing_seed"],
                   default="cited_by_seed")
    p.add_argument("--tau", type=float, default=0.2)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weight-header", choices=["normalized_weight", "weight"],
                   default="normalized_weight")
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--layout-tol", type=float, default=1e-6)
    p.add_argument("--out", **common_out)
    p.set_defaults(func=cmd_localmap)

    p = sub.add_parser("diversity", help="recompute diversity from an existing map file")
    p.add_argument("--map-file", required=True)
    p.add_argument("--key-table", required=True)
    p.add_argument("--direction", choices=["citing", "cited"], default=None)
    p.set_defaults(func=cmd_diversity)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except JournalMapError as exc:
        stage = getattr(exc, "stage", None) or "run"
        message = " ".join(str(exc).split())
        print(f"error: {stage}: {message}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
