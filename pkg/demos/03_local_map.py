"""
Local maps: one journal's citation neighbourhood in detail
==========================================================

Global maps are too coarse to show the structure of a single specialty.  A
local map takes one seed journal, collects the journals it cites most, and
reruns the whole basemap pipeline on that induced submatrix, so similarity
is judged by the members' mutual citing patterns only.
"""

import tempfile
from pathlib import Path

import journalmap as jm
from _fixture import TITLES, write_citation_matrix
from journalmap.cli import main

out_dir = Path(tempfile.mkdtemp(prefix="journalmap_demo_"))
matrix_path = out_dir / "citations.csv"
write_citation_matrix(matrix_path)
matrix = jm.load_matrix(matrix_path)

# ---------------------------------------------------------------------------
# 1. Pick a seed and inspect its environment: journals it cites >= 3 times.
seed_title = TITLES[1]
seed = matrix.index(seed_title)
members = jm.ego_subset(matrix, seed, min_count=3, direction="cited_by_seed")
print(f"{seed_title} cites {len(members) - 1} journals at least 3 times")

# 2. The local pipeline: cosine over the members' mutual citing patterns,
#    threshold, largest component, communities, layout.
graph, partition, layout = jm.local_basemap(matrix, members, tau=0.2, gamma=1.0)
print(f"local map: {graph.n_nodes} journals, {partition.n_communities} communities, "
      f"Q = {partition.q:.3f}")

# 3. The CLI writes the map file plus a network file (i,j,weight) so the
#    viewer can draw the edges of a local map.
main(["localmap", str(matrix_path), seed_title, "--min-count", "3",
      "--out", str(out_dir / "local")])
print(f"\nartifacts in {out_dir / 'local'}")
