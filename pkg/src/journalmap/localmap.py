"""Local (ego) journal maps.

A local map runs the basemap pipeline on the citation environment of one
seed journal: the journals it cites (or that cite it) at least ``min_count``
times.  Cosines are computed over the induced submatrix only, i.e. the
members are compared in terms of their mutual citing patterns, not their
global vectors, so local structure is resolved at a finer grain than the
global map allows.
"""

from __future__ import annotations

import logging

import numpy as np

from .citation import (
    CitationMatrix,
    SimilarityGraph,
    cosine_similarity_graph,
    largest_component,
    threshold_edges,
)
from .communities import Partition, louvain
from .errors import UsageError, ValidationError
from .layout import Layout, stress_layout

logger = logging.getLogger(__name__)

EGO_DIRECTIONS = ("cited_by_seed", "citing_seed")


def ego_subset(
    matrix: CitationMatrix,
    seed: int,
    min_count: int = 1,
    top_n: int | None = None,
    direction: str = "cited_by_seed",
) -> list[int]:
    """Journals in the citation environment of a seed journal.

    ``cited_by_seed`` selects the journals the seed cites at least
    ``min_count`` times; ``citing_seed`` the journals citing it that often.
    Results are ranked by count descending (ties by index) and truncated to
    ``top_n``, except that journals tied with the last kept one are all
    retained.  The seed itself is always included, first.
    """
    if direction not in EGO_DIRECTIONS:
        raise UsageError(f"unknown ego direction {direction!r} (use one of {EGO_DIRECTIONS})")
    if min_count < 1:
        raise UsageError(f"min_count must be >= 1, got {min_count}")
    if not 0 <= seed < matrix.n_journals:
        raise UsageError(f"seed index {seed} out of range")

    if direction == "cited_by_seed":
        vec = np.asarray(matrix.counts[[seed], :].todense()).ravel()
    else:
        vec = np.asarray(matrix.counts[:, [seed]].todense()).ravel()

    candidates = [(int(c), int(j)) for j, c in enumerate(vec) if c >= min_count and j != seed]
    candidates.sort(key=lambda pair: (-pair[0], pair[1]))

    if top_n is not None and len(candidates) > top_n:
        if top_n > 0:
            boundary = candidates[top_n - 1][0]
            kept = [pair for i, pair in enumerate(candidates) if i < top_n or pair[0] == boundary]
        else:
            kept = []
        if len(kept) > (top_n or 0):
            logger.info("ego subset: boundary tie kept %d journals (cap was %s)",
                        len(kept), top_n)
        candidates = kept

    return [seed] + [j for _c, j in candidates]


def submatrix(matrix: CitationMatrix, members) -> tuple[CitationMatrix, list[int]]:
    """Citation matrix induced on a member set (sorted by global index).

    Returns (local matrix, global indices aligned with the local ones).
    """
    idx = sorted({int(m) for m in members})
    for m in idx:
        if not 0 <= m < matrix.n_journals:
            raise ValidationError(f"member index {m} out of range")
    sub = matrix.counts[idx, :][:, idx].tocsr()
    titles = [matrix.titles[m] for m in idx]
    return CitationMatrix(titles=titles, counts=sub), idx


def local_basemap(
    matrix: CitationMatrix,
    members,
    tau: float = 0.2,
    gamma: float = 1.0,
    seed: int = 0,
    max_iters: int = 1000,
    tol: float = 1e-6,
) -> tuple[SimilarityGraph, Partition, Layout]:
    """Run the basemap pipeline on the submatrix induced by ``members``.

    Cosine normalization is over the members' mutual citing patterns, then
    threshold, largest component, clustering and layout as for a global map.
    Members dropped by the component extraction are reported with a warning.
    All returned artifacts use the local matrix's index space; titles carry
    the journal identities.
    """
    local, idx = submatrix(matrix, members)
    if local.n_journals < 2:
        raise ValidationError("local basemap needs at least 2 member journals")

    graph = cosine_similarity_graph(local, direction="citing", min_weight=tau)
    graph = threshold_edges(graph, tau)
    component = largest_component(graph)
    dropped = sorted(set(int(v) for v in graph.nodes) - set(int(v) for v in component.nodes))
    if dropped:
        names = ", ".join(local.titles[d] for d in dropped[:10])
        logger.warning("local basemap: %d members dropped outside the largest component: %s",
                       len(dropped), names)
    partition = louvain(component, gamma=gamma, seed=seed)
    layout = stress_layout(component, seed=seed, max_iters=max_iters, tol=tol)
    return component, partition, layout
