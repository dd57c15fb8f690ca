"""Journal-journal citation matrices and cosine similarity graphs.

The citation matrix stores directed citation counts ``counts[i, j]`` from
journal ``i`` (citing) to journal ``j`` (cited).  Similarity between two
journals is the cosine between their citation vectors: rows in the *citing*
direction (outgoing reference profiles), columns in the *cited* direction
(incoming citation profiles).  Cosine is used instead of Pearson because
citation distributions are heavily skewed.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .errors import FormatError, UnknownJournalError, UsageError, ValidationError

logger = logging.getLogger(__name__)

DIRECTIONS = ("citing", "cited")

MATRIX_HEADER = ["citing", "cited", "count"]


def normalize_title(title: str) -> str:
    """Key form of a journal title: whitespace-trimmed and case-folded."""
    return title.strip().casefold()


@dataclass
class CitationMatrix:
    """Directed, weighted journal-to-journal citation counts.

    ``titles[i]`` is the canonical full title of journal ``i``; indices are
    dense and stable for the lifetime of the instance.
    """

    titles: list[str]
    counts: sparse.csr_matrix
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self._index = {normalize_title(t): i for i, t in enumerate(self.titles)}
        if len(self._index) != len(self.titles):
            raise ValidationError("journal titles are not unique after case-folding")
        if self.counts.shape != (len(self.titles), len(self.titles)):
            raise ValidationError("count matrix shape does not match title list")

    @property
    def n_journals(self) -> int:
        return len(self.titles)

    @property
    def nonzero_cells(self) -> int:
        return int(self.counts.nnz)

    @property
    def grand_total(self) -> int:
        return int(self.counts.sum())

    def index(self, title: str) -> int:
        """Resolve a journal title (case-insensitive, trimmed) to its index."""
        key = normalize_title(title)
        if key not in self._index:
            raise UnknownJournalError(f"unknown journal: {title!r}")
        return self._index[key]

    def find(self, title: str) -> int | None:
        """Like :meth:`index` but returns None instead of raising."""
        return self._index.get(normalize_title(title))


@dataclass
class SimilarityGraph:
    """Undirected weighted graph of cosine similarities between journals.

    Each unordered pair is stored once with ``edge_i < edge_j``; weights lie
    in (0, 1] up to floating-point roundoff.  ``nodes`` are indices into the
    shared ``titles`` list and may be a subset of it (after component
    extraction).
    """

    direction: str
    titles: list[str]
    nodes: np.ndarray
    edge_i: np.ndarray
    edge_j: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise UsageError(f"unknown direction: {self.direction!r}")
        self.nodes = np.asarray(self.nodes, dtype=np.int64)
        self.edge_i = np.asarray(self.edge_i, dtype=np.int64)
        self.edge_j = np.asarray(self.edge_j, dtype=np.int64)
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if len(self.edge_i) and not (self.edge_i < self.edge_j).all():
            raise ValidationError("edges must be stored once with i < j and no self-loops")

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.weights)

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def compact(self):
        """Return (csr adjacency over compact node positions, position array).

        The adjacency is symmetric; position ``p`` corresponds to journal
        index ``self.nodes[p]``.  The position array maps journal index to
        compact position (-1 for absent journals).
        """
        pos = np.full(len(self.titles), -1, dtype=np.int64)
        pos[self.nodes] = np.arange(len(self.nodes), dtype=np.int64)
        ci = pos[self.edge_i]
        cj = pos[self.edge_j]
        n = len(self.nodes)
        adj = sparse.coo_matrix(
            (np.concatenate([self.weights, self.weights]),
             (np.concatenate([ci, cj]), np.concatenate([cj, ci]))),
            shape=(n, n),
        ).tocsr()
        return adj, pos


def load_matrix(path) -> CitationMatrix:
    """Load a citation matrix from CSV with header ``citing,cited,count``.

    One row per nonzero cell.  Rows with a zero count are tolerated and
    ignored; duplicate (citing, cited) pairs and negative counts are
    rejected.  Titles differing only in case or surrounding whitespace are
    treated as the same journal (first spelling wins).
    """
    titles: list[str] = []
    index: dict[str, int] = {}
    rows_i: list[int] = []
    rows_j: list[int] = []
    data: list[int] = []
    seen: set[tuple[int, int]] = set()

    def journal_id(title: str) -> int:
        key = normalize_title(title)
        if key not in index:
            index[key] = len(titles)
            titles.append(title.strip())
        return index[key]

    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError(f"{path}: empty file") from None
        if [h.strip().lower() for h in header] != MATRIX_HEADER:
            raise FormatError(
                f"{path}: expected header 'citing,cited,count', got {','.join(header)!r}"
            )
        for row in reader:
            lineno = reader.line_num
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise FormatError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            citing, cited, count_str = row
            if not citing.strip() or not cited.strip():
                raise FormatError(f"{path}:{lineno}: empty journal title")
            try:
                count = int(count_str.strip())
            except ValueError:
                raise FormatError(
                    f"{path}:{lineno}: count {count_str!r} is not an integer"
                ) from None
            if count < 0:
                raise ValidationError(f"{path}:{lineno}: negative citation count {count}")
            if count == 0:
                continue
            i = journal_id(citing)
            j = journal_id(cited)
            if (i, j) in seen:
                raise ValidationError(
                    f"{path}:{lineno}: duplicate cell ({citing.strip()!r} -> {cited.strip()!r})"
                )
            seen.add((i, j))
            rows_i.append(i)
            rows_j.append(j)
            data.append(count)

    if not data:
        raise ValidationError(f"{path}: no citation data")

    n = len(titles)
    counts = sparse.coo_matrix(
        (np.asarray(data, dtype=np.float64),
         (np.asarray(rows_i, dtype=np.int64), np.asarray(rows_j, dtype=np.int64))),
        shape=(n, n),
    ).tocsr()
    matrix = CitationMatrix(titles=titles, counts=counts)
    logger.info(
        "loaded citation matrix: %d journals, %d nonzero cells, grand total %d",
        matrix.n_journals, matrix.nonzero_cells, matrix.grand_total,
    )
    return matrix


def cosine_similarity_graph(
    matrix: CitationMatrix,
    direction: str = "citing",
    include_self_citations: bool = False,
    min_weight: float = 0.0,
) -> SimilarityGraph:
    """Cosine-normalize the citation matrix into a similarity graph.

    In the *citing* direction the compared vectors are matrix rows; in the
    *cited* direction, columns.  The self-citation diagonal is excluded from
    the vectors unless ``include_self_citations`` is set.  Every journal is a
    node; journals with all-zero vectors simply have no edges.

    ``min_weight`` is a prefilter for large runs: only edges with cosine
    strictly greater than it are materialized.  The default 0.0 keeps every
    positive cosine, and for any tau,
    ``cosine_similarity_graph(m, d, min_weight=tau)`` equals
    ``threshold_edges(cosine_similarity_graph(m, d), tau)``.
    """
    if direction not in DIRECTIONS:
        raise UsageError(f"unknown direction: {direction!r} (use 'citing' or 'cited')")
    if matrix.nonzero_cells == 0:
        raise ValidationError("no citation data")
    if not 0.0 <= min_weight < 1.0:
        raise UsageError(f"min_weight must be in [0, 1), got {min_weight}")

    a = matrix.counts.tocoo()
    if not include_self_citations:
        keep = a.row != a.col
        a = sparse.coo_matrix(
            (a.data[keep], (a.row[keep], a.col[keep])), shape=a.shape
        )
    a = a.tocsr().astype(np.float64)
    if direction == "cited":
        a = a.T.tocsr()

    norms = np.sqrt(np.asarray(a.multiply(a).sum(axis=1)).ravel())
    inv = np.zeros_like(norms)
    nonzero = norms > 0
    inv[nonzero] = 1.0 / norms[nonzero]
    unit = sparse.diags(inv) @ a
    unit = unit.tocsr()
    unit_t = unit.T.tocsr()

    n = matrix.n_journals
    block = n if n <= 2048 else 512
    ei_parts, ej_parts, w_parts = [], [], []
    for start in range(0, n, block):
        stop = min(start + block, n)
        product = (unit[start:stop] @ unit_t).tocoo()
        keep = (product.col > product.row + start) & (product.data > min_weight)
        if keep.any():
            ei_parts.append(product.row[keep].astype(np.int64) + start)
            ej_parts.append(product.col[keep].astype(np.int64))
            w_parts.append(product.data[keep])

    if ei_parts:
        edge_i = np.concatenate(ei_parts)
        edge_j = np.concatenate(ej_parts)
        weights = np.concatenate(w_parts)
        order = np.lexsort((edge_j, edge_i))
        edge_i, edge_j, weights = edge_i[order], edge_j[order], weights[order]
    else:
        edge_i = np.empty(0, dtype=np.int64)
        edge_j = np.empty(0, dtype=np.int64)
        weights = np.empty(0, dtype=np.float64)

    graph = SimilarityGraph(
        direction=direction,
        titles=matrix.titles,
        nodes=np.arange(n, dtype=np.int64),
        edge_i=edge_i,
        edge_j=edge_j,
        weights=weights,
    )
    logger.info(
        "cosine graph (%s): %d nodes, %d edges above %g",
        direction, graph.n_nodes, graph.n_edges, min_weight,
    )
    return graph


def threshold_edges(graph: SimilarityGraph, tau: float) -> SimilarityGraph:
    """Keep exactly the edges with weight strictly greater than ``tau``.

    Nodes are retained even when they become isolated.
    """
    if not 0.0 <= tau < 1.0:
        raise UsageError(f"threshold must be in [0, 1), got {tau}")
    keep = graph.weights > tau
    return SimilarityGraph(
        direction=graph.direction,
        titles=graph.titles,
        nodes=graph.nodes.copy(),
        edge_i=graph.edge_i[keep],
        edge_j=graph.edge_j[keep],
        weights=graph.weights[keep],
    )


def largest_component(graph: SimilarityGraph, exclusions=()) -> SimilarityGraph:
    """Induced subgraph on the largest connected component.

    ``exclusions`` (journal indices) are removed before the component search;
    ties between equally large components go to the one containing the lowest
    journal index, so repeated runs are reproducible.
    """
    excluded = set()
    node_set = {int(v) for v in graph.nodes}
    for idx in exclusions:
        idx = int(idx)
        if idx not in node_set:
            raise ValidationError(f"excluded journal index {idx} is not in the graph")
        excluded.add(idx)

    if excluded:
        keep = np.zeros(len(graph.titles), dtype=bool)
        keep[graph.nodes] = True
        keep[list(excluded)] = False
        mask = keep[graph.edge_i] & keep[graph.edge_j]
        work = SimilarityGraph(
            direction=graph.direction,
            titles=graph.titles,
            nodes=np.flatnonzero(keep).astype(np.int64),
            edge_i=graph.edge_i[mask],
            edge_j=graph.edge_j[mask],
            weights=graph.weights[mask],
        )
    else:
        work = graph

    if work.n_nodes == 0:
        return work

    adj, _pos = work.compact()
    n_comp, labels = csgraph.connected_components(adj, directed=False)
    sizes = np.bincount(labels, minlength=n_comp)
    best_size = sizes.max()
    # ties: component whose minimum journal index is lowest
    candidates = np.flatnonzero(sizes == best_size)
    if len(candidates) == 1:
        best = candidates[0]
    else:
        first_member = {c: work.nodes[labels == c].min() for c in candidates}
        best = min(candidates, key=lambda c: first_member[c])

    keep_positions = labels == best
    kept_nodes = work.nodes[keep_positions]
    in_component = np.zeros(len(graph.titles), dtype=bool)
    in_component[kept_nodes] = True
    edge_mask = in_component[work.edge_i] & in_component[work.edge_j]
    result = SimilarityGraph(
        direction=graph.direction,
        titles=graph.titles,
        nodes=kept_nodes,
        edge_i=work.edge_i[edge_mask],
        edge_j=work.edge_j[edge_mask],
        weights=work.weights[edge_mask],
    )
    if graph.n_nodes:
        logger.info(
            "largest component: %d of %d journals retained (%.1f%%)",
            result.n_nodes, graph.n_nodes, 100.0 * result.n_nodes / graph.n_nodes,
        )
    return result
