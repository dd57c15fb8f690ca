"""Community detection by greedy modularity optimization (Louvain).

Modularity of a partition of a weighted undirected graph is

    Q = sum_c [ W_c / W  -  gamma * (S_c / 2W)^2 ]

with W the total edge weight, W_c the weight inside community c, S_c the
summed weighted degree of c, and gamma the resolution parameter.  The
optimizer is the usual two-phase scheme: local moving of single nodes until
no move improves Q, then aggregation of communities into supernodes, repeated
until the partition is stable.  A refinement stage re-runs local moving
either on the original graph only (``single_level``) or while unwinding every
aggregation level (``multi_level``, the default).

All moves are deterministic: nodes are visited in ascending index order (a
nonzero seed selects a reproducible permutation instead), ties between
equally good target communities go to the lowest label, and a move counts as
improving only when it gains more than 1e-12.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .citation import SimilarityGraph
from .errors import FormatError, UsageError, ValidationError

logger = logging.getLogger(__name__)

MOVE_TOLERANCE = 1e-12

REFINEMENTS = ("single_level", "multi_level")


@dataclass
class Partition:
    """Community assignment per journal with its modularity score."""

    labels: dict[int, int]
    n_communities: int
    q: float
    gamma: float

    def __post_init__(self):
        present = set(self.labels.values())
        if present != set(range(self.n_communities)):
            raise ValidationError("community labels must be contiguous from 0")

    def members(self, community: int) -> list[int]:
        return sorted(i for i, c in self.labels.items() if c == community)


def modularity(graph: SimilarityGraph, partition, gamma: float = 1.0) -> float:
    """Evaluate Q for an assignment covering every node of the graph.

    ``partition`` may be a :class:`Partition` or a plain mapping from journal
    index to community label.
    """
    if gamma <= 0:
        raise UsageError(f"resolution gamma must be positive, got {gamma}")
    labels_map = partition.labels if isinstance(partition, Partition) else partition
    missing = [int(v) for v in graph.nodes if int(v) not in labels_map]
    if missing:
        raise ValidationError(
            f"partition does not cover {len(missing)} graph nodes (first: {missing[0]})"
        )
    total = graph.weights.sum()
    if not total > 0:
        raise ValidationError("modularity undefined: graph has zero total edge weight")

    pos = np.full(len(graph.titles), -1, dtype=np.int64)
    pos[graph.nodes] = np.arange(graph.n_nodes, dtype=np.int64)
    node_labels = np.fromiter(
        (labels_map[int(v)] for v in graph.nodes), dtype=np.int64, count=graph.n_nodes
    )
    n_comms = int(node_labels.max()) + 1 if graph.n_nodes else 0

    ci = pos[graph.edge_i]
    cj = pos[graph.edge_j]
    deg = np.bincount(ci, weights=graph.weights, minlength=graph.n_nodes)
    deg += np.bincount(cj, weights=graph.weights, minlength=graph.n_nodes)
    s_c = np.bincount(node_labels, weights=deg, minlength=n_comms)

    intra = node_labels[ci] == node_labels[cj]
    w_c = np.bincount(
        node_labels[ci[intra]], weights=graph.weights[intra], minlength=n_comms
    )
    return float(w_c.sum() / total - gamma * np.sum((s_c / (2.0 * total)) ** 2))


def louvain(
    graph: SimilarityGraph,
    gamma: float = 1.0,
    refinement: str = "multi_level",
    seed: int = 0,
) -> Partition:
    """Decompose a similarity graph into communities maximizing Q.

    Deterministic for a fixed seed; the reported ``q`` is an independent
    re-evaluation of the returned assignment on the input graph.
    """
    if gamma <= 0:
        raise UsageError(f"resolution gamma must be positive, got {gamma}")
    if refinement not in REFINEMENTS:
        raise UsageError(f"unknown refinement {refinement!r} (use one of {REFINEMENTS})")
    if graph.n_nodes == 0:
        raise ValidationError("cannot cluster an empty graph")
    if not graph.weights.sum() > 0:
        raise ValidationError("cannot cluster a graph with zero total edge weight")

    pos = np.full(len(graph.titles), -1, dtype=np.int64)
    pos[graph.nodes] = np.arange(graph.n_nodes, dtype=np.int64)
    level = _LevelGraph(
        n=graph.n_nodes,
        ei=pos[graph.edge_i],
        ej=pos[graph.edge_j],
        w=graph.weights.astype(np.float64),
        loops=np.zeros(graph.n_nodes),
    )

    call_counter = [0]

    def visit_order(n: int) -> np.ndarray:
        call_counter[0] += 1
        if seed == 0:
            return np.arange(n, dtype=np.int64)
        rng = np.random.default_rng([seed, call_counter[0]])
        return rng.permutation(n).astype(np.int64)

    # coarsening phase
    chain: list[tuple[_LevelGraph, np.ndarray]] = []
    current = level
    while True:
        labels, moved = _local_move(
            current, np.arange(current.n, dtype=np.int64), gamma, visit_order(current.n)
        )
        if not moved:
            break
        labels = _contiguous(labels)
        chain.append((current, labels))
        coarser = _aggregate(current, labels)
        if coarser.n == current.n:
            break
        current = coarser

    # refinement phase, unwinding from the coarsest level
    n_top = chain[-1][1].max() + 1 if chain else level.n
    assign = np.arange(n_top, dtype=np.int64)
    for t in reversed(range(len(chain))):
        graph_t, proj_t = chain[t]
        init_t = assign[proj_t]
        if refinement == "multi_level" or t == 0:
            refined, _ = _local_move(graph_t, init_t.copy(), gamma, visit_order(graph_t.n))
            assign = _contiguous(refined)
        else:
            assign = init_t
    if not chain:
        assign = np.arange(level.n, dtype=np.int64)

    final = _relabel_by_first_appearance(assign)
    labels_map = {int(v): int(final[p]) for p, v in enumerate(graph.nodes)}
    n_comms = int(final.max()) + 1
    q = modularity(graph, labels_map, gamma)
    logger.info("louvain (gamma=%g, %s): %d communities, Q=%.4f", gamma, refinement, n_comms, q)
    return Partition(labels=labels_map, n_communities=n_comms, q=q, gamma=gamma)


@dataclass
class _LevelGraph:
    """One aggregation level: undirected edges (i < j) plus self-loop weights."""

    n: int
    ei: np.ndarray
    ej: np.ndarray
    w: np.ndarray
    loops: np.ndarray

    def adjacency(self):
        adj = sparse.coo_matrix(
            (np.concatenate([self.w, self.w]),
             (np.concatenate([self.ei, self.ej]), np.concatenate([self.ej, self.ei]))),
            shape=(self.n, self.n),
        ).tocsr()
        return adj

    def degrees(self) -> np.ndarray:
        k = np.bincount(self.ei, weights=self.w, minlength=self.n)
        k += np.bincount(self.ej, weights=self.w, minlength=self.n)
        return k + 2.0 * self.loops


def _local_move(level: _LevelGraph, labels: np.ndarray, gamma: float, order: np.ndarray):
    """Single-node moving until no move gains more than the tolerance.

    Returns (labels, moved_any).  Labels in the input must be < level.n;
    nodes that benefit from isolation get fresh labels above that range.
    """
    adj = level.adjacency()
    indptr, indices, wdata = adj.indptr, adj.indices, adj.data
    k = level.degrees()
    two_w = k.sum()
    w_total = two_w / 2.0
    inv_w = 1.0 / w_total
    inv_2w2 = 1.0 / (2.0 * w_total * w_total)

    capacity = 2 * level.n + 1
    s_comm = np.zeros(capacity)
    sizes = np.zeros(capacity, dtype=np.int64)
    next_fresh = level.n

    np.add.at(s_comm, labels, k)
    np.add.at(sizes, labels, 1)

    moved_any = False
    for _sweep in range(10_000):
        moves = 0
        for u in order:
            a = labels[u]
            lo, hi = indptr[u], indptr[u + 1]
            s_comm[a] -= k[u]
            sizes[a] -= 1
            if hi > lo:
                nbr = indices[lo:hi]
                ws = wdata[lo:hi]
                cand, inv = np.unique(labels[nbr], return_inverse=True)
                kuc = np.bincount(inv, weights=ws)
                scores = kuc * inv_w - gamma * k[u] * s_comm[cand] * inv_2w2
                best_idx = int(np.argmax(scores))
                best_label = int(cand[best_idx])
                best_score = float(scores[best_idx])
                stay_idx = np.searchsorted(cand, a)
                if stay_idx < len(cand) and cand[stay_idx] == a:
                    stay_score = float(scores[stay_idx])
                else:
                    stay_score = -gamma * k[u] * s_comm[a] * inv_2w2
            else:
                best_label, best_score = a, -np.inf
                stay_score = -gamma * k[u] * s_comm[a] * inv_2w2

            # isolation is always available at zero gain
            if best_score < 0.0:
                best_label, best_score = -1, 0.0

            if best_score > stay_score + MOVE_TOLERANCE and best_label != a:
                if best_label == -1:
                    if sizes[a] == 0:
                        best_label = a  # own community emptied: isolation is free
                    else:
                        if next_fresh >= capacity:
                            labels = _contiguous(labels)
                            s_comm[:] = 0.0
                            sizes[:] = 0
                            np.add.at(s_comm, labels, k)
                            np.add.at(sizes, labels, 1)
                            next_fresh = int(labels.max()) + 1
                            a = labels[u]
                            s_comm[a] -= k[u]
                            sizes[a] -= 1
                        best_label = next_fresh
                        next_fresh += 1
                labels[u] = best_label
                if best_label != a:
                    moves += 1
            else:
                labels[u] = a
            s_comm[labels[u]] += k[u]
            sizes[labels[u]] += 1
        if moves == 0:
            break
        moved_any = True
    else:
        logger.warning("local moving did not settle within the sweep limit")
    return labels, moved_any


def _aggregate(level: _LevelGraph, labels: np.ndarray) -> _LevelGraph:
    """Collapse communities into supernodes, summing parallel edge weights."""
    m = int(labels.max()) + 1
    ci = labels[level.ei]
    cj = labels[level.ej]
    intra = ci == cj
    loops = np.bincount(ci[intra], weights=level.w[intra], minlength=m)
    loops += np.bincount(labels, weights=level.loops, minlength=m)

    inter = ~intra
    lo = np.minimum(ci[inter], cj[inter])
    hi = np.maximum(ci[inter], cj[inter])
    if len(lo):
        coo = sparse.coo_matrix((level.w[inter], (lo, hi)), shape=(m, m)).tocsr().tocoo()
        ei, ej, w = coo.row.astype(np.int64), coo.col.astype(np.int64), coo.data
    else:
        ei = np.empty(0, dtype=np.int64)
        ej = np.empty(0, dtype=np.int64)
        w = np.empty(0)
    return _LevelGraph(n=m, ei=ei, ej=ej, w=w, loops=loops)


def _contiguous(labels: np.ndarray) -> np.ndarray:
    _, out = np.unique(labels, return_inverse=True)
    return out.astype(np.int64)


def _relabel_by_first_appearance(labels: np.ndarray) -> np.ndarray:
    mapping: dict[int, int] = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels):
        lab = int(lab)
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return out


def write_partition_csv(partition: Partition, titles, path) -> None:
    """Write ``journal,cluster`` rows in ascending journal-index order."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["journal", "cluster"])
        for idx in sorted(partition.labels):
            writer.writerow([titles[idx], partition.labels[idx]])


def read_partition_csv(path) -> list[tuple[str, int]]:
    """Read a partition CSV back as (journal, cluster) rows."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["journal", "cluster"]:
            raise FormatError(f"{path}: expected header 'journal,cluster'")
        for row in reader:
            if len(row) != 2:
                raise FormatError(f"{path}:{reader.line_num}: expected 2 fields")
            try:
                rows.append((row[0], int(row[1])))
            except ValueError:
                raise FormatError(
                    f"{path}:{reader.line_num}: cluster {row[1]!r} is not an integer"
                ) from None
    return rows
