"""
Building a journal basemap from citation counts
================================================

A basemap is built once from an aggregated journal-journal citation matrix
and reused for every overlay afterwards.  This script fabricates a small
citation system with three planted disciplines, runs the pipeline one stage
at a time, and prints what each stage decides.
"""

import tempfile
from pathlib import Path

import journalmap as jm
from _fixture import write_citation_matrix

out_dir = Path(tempfile.mkdtemp(prefix="journalmap_demo_"))

# ---------------------------------------------------------------------------
# 1. A citation matrix: three fields of 15 journals.  Journals cite mostly
#    inside their own field, with two "general science" hubs read by
#    everyone (this is what keeps the network in one component).
matrix_path = out_dir / "citations.csv"
write_citation_matrix(matrix_path)
matrix = jm.load_matrix(matrix_path)
print(f"matrix: {matrix.n_journals} journals, {matrix.nonzero_cells} cells, "
      f"{matrix.grand_total} citations")

# ---------------------------------------------------------------------------
# 2. Cosine-normalize the citing rows.  Two journals are similar when they
#    cite the same literature in the same proportions, regardless of size.
graph = jm.cosine_similarity_graph(matrix, direction="citing")
print(f"cosine graph: {graph.n_edges} positive-similarity pairs")

# 3. Threshold at cosine > 0.2 and keep the largest connected component;
#    isolated journals cannot be placed meaningfully on the map.
graph = jm.threshold_edges(graph, 0.2)
component = jm.largest_component(graph)
print(f"after threshold 0.2: {graph.n_edges} edges; "
      f"largest component keeps {component.n_nodes}/{graph.n_nodes} journals")

# 4. Louvain communities at resolution 1: these become the map colors.
partition = jm.louvain(component, gamma=1.0)
print(f"communities: {partition.n_communities}, modularity Q = {partition.q:.3f}")
for c in range(partition.n_communities):
    members = partition.members(c)
    sample = ", ".join(matrix.titles[m] for m in members[:3])
    print(f"  cluster {c}: {len(members)} journals ({sample}, ...)")

# 5. Stress layout: minimize similarity-weighted squared distances under a
#    unit mean-pairwise-distance constraint, so the scale is comparable
#    between runs.
layout = jm.stress_layout(component, seed=0)
print(f"layout: stress {layout.stress:.4f} after {layout.iterations} iterations, "
      f"map diagonal {jm.map_diagonal(layout):.3f}")

# 6. The key table ties it together: title -> (x, y, cluster).  Overlays are
#    matched against this file, so it is the one artifact to keep.
table = jm.build_key_table(layout, partition,
                           {int(v): matrix.titles[int(v)] for v in component.nodes},
                           "citing")
jm.write_key_table(table, out_dir / "citing_keys.csv")
print(f"\nwrote {out_dir / 'citing_keys.csv'}")
print("the same pipeline runs as:  journalmap basemap citations.csv --out", out_dir)
