"""Two-dimensional stress layout of similarity graphs.

The embedding minimizes the system-level objective

    V(x) = sum_{i<j} w_ij * ||x_i - x_j||^2

subject to the constraint that the mean distance over *all* node pairs
(connected or not) equals 1.  Heavily similar journals are pulled together
while the constraint keeps the cloud from collapsing, which is what makes
the map distances usable as a dissimilarity measure.

The optimizer is a majorization scheme.  At the current (feasible) iterate
the constraint surface is relaxed using the Cauchy-Schwarz minorizer of the
distance sum, the quadratic objective is decreased within that relaxation by
an exact line search along the projected gradient, and the iterate is
rescaled back onto the constraint (which, by the minorizer, cannot raise the
stress).  Every accepted step is additionally verified, so the reported
stress sequence is non-increasing by construction.  Runs are deterministic
for a fixed seed.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csgraph

from .citation import SimilarityGraph
from .errors import FormatError, UnknownJournalError, ValidationError

logger = logging.getLogger(__name__)

_PAIR_CHUNK = 64


@dataclass
class Layout:
    """2-D coordinates per journal, centered on the origin."""

    nodes: np.ndarray
    xy: np.ndarray
    stress: float = math.nan
    iterations: int = 0
    stress_history: list[float] = field(default_factory=list, repr=False)
    _pos: dict[int, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=np.int64)
        self.xy = np.asarray(self.xy, dtype=np.float64)
        if self.xy.shape != (len(self.nodes), 2):
            raise ValidationError("layout coordinates must be one (x, y) pair per node")
        self._pos = {int(v): p for p, v in enumerate(self.nodes)}

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def bounding_box(self) -> tuple[float, float, float, float]:
        if self.n_nodes == 0:
            raise ValidationError("empty layout has no bounding box")
        x_min, y_min = self.xy.min(axis=0)
        x_max, y_max = self.xy.max(axis=0)
        return float(x_min), float(y_min), float(x_max), float(y_max)

    @property
    def diagonal(self) -> float:
        x_min, y_min, x_max, y_max = self.bounding_box
        return math.hypot(x_max - x_min, y_max - y_min)

    def coord(self, journal: int) -> tuple[float, float]:
        if int(journal) not in self._pos:
            raise UnknownJournalError(f"journal index {journal} is not in the layout")
        x, y = self.xy[self._pos[int(journal)]]
        return float(x), float(y)

    def __contains__(self, journal) -> bool:
        return int(journal) in self._pos


def map_diagonal(layout: Layout) -> float:
    """Bounding-box diagonal of the layout, the distance normalizer."""
    if layout.n_nodes == 0:
        raise ValidationError("empty layout")
    diag = layout.diagonal
    if diag <= 0.0:
        raise ValidationError("degenerate map: all journals share one position")
    return diag


def normalized_distance(layout: Layout, i: int, j: int) -> float:
    """Distance between two journals as a fraction of the map diagonal."""
    xi, yi = layout.coord(i)
    xj, yj = layout.coord(j)
    return math.hypot(xi - xj, yi - yj) / map_diagonal(layout)


def stress_layout(
    graph: SimilarityGraph,
    seed: int = 0,
    max_iters: int = 1000,
    tol: float = 1e-6,
) -> Layout:
    """Embed a connected similarity graph in the plane.

    Stops when the relative stress change drops below ``tol`` or after
    ``max_iters`` iterations.  The result is centered on the origin and
    satisfies the unit mean-pairwise-distance constraint exactly (up to
    floating point).
    """
    n = graph.n_nodes
    if n < 2:
        raise ValidationError("layout needs at least 2 journals")
    adj, pos = graph.compact()
    n_comp, _ = csgraph.connected_components(adj, directed=False)
    if n_comp != 1:
        raise ValidationError("layout requires largest component (graph is disconnected)")

    ei = pos[graph.edge_i]
    ej = pos[graph.edge_j]
    w = graph.weights

    rng = np.random.default_rng(seed)
    xy = rng.uniform(0.0, 1.0, size=(n, 2))
    xy -= xy.mean(axis=0)
    mean_dist, pull = _pair_stats(xy, want_pull=True)
    if mean_dist <= 0.0:
        # vanishingly unlikely with random init; nudge apart deterministically
        xy[:, 0] += np.linspace(0.0, 1.0, n)
        xy -= xy.mean(axis=0)
        mean_dist, pull = _pair_stats(xy, want_pull=True)
    xy /= mean_dist
    # unit pair vectors are invariant under the rescale, so pull stays valid

    stress = _edge_stress(ei, ej, w, xy)
    history = [stress]
    iterations = 0
    pair_norm = 2.0 / (n * (n - 1))

    for iterations in range(1, max_iters + 1):
        # steepest feasible direction: project -grad onto the tangent of the
        # linearized constraint <y, c> = 1, then take the exact minimizer of
        # the quadratic objective along it
        c = pull * pair_norm
        grad = 2.0 * _laplacian_apply(ei, ej, w, xy, n)
        c_sq = float(np.sum(c * c))
        if c_sq <= 0.0:
            break
        direction = -grad + (float(np.sum(grad * c)) / c_sq) * c
        slope = float(np.sum(grad * direction))
        curvature = float(np.sum(direction * _laplacian_apply(ei, ej, w, direction, n)))
        if slope >= 0.0 or curvature <= 0.0:
            break  # stationary point of the constrained problem
        step = -slope / (2.0 * curvature)
        candidate = xy + step * direction
        if _edge_stress(ei, ej, w, candidate) > stress:
            break  # round-off dominates: stop rather than record an increase

        # the true mean distance minorizes to 1 along the step, so rescaling
        # back onto the constraint cannot raise the stress
        mean_dist, cand_pull = _pair_stats(candidate, want_pull=True)
        if mean_dist <= 0.0:
            break
        candidate -= candidate.mean(axis=0)
        candidate /= mean_dist
        new_stress = _edge_stress(ei, ej, w, candidate)
        if new_stress > stress:
            break
        xy = candidate
        pull = cand_pull  # translation- and scale-invariant, so still exact here
        history.append(new_stress)

        if stress > 0 and (stress - new_stress) <= tol * stress:
            stress = new_stress
            break
        stress = new_stress

    xy = xy - xy.mean(axis=0)
    layout = Layout(nodes=graph.nodes.copy(), xy=xy, stress=float(stress),
                    iterations=iterations, stress_history=history)
    logger.info(
        "layout: %d nodes, stress %.6g after %d iterations", n, stress, iterations
    )
    return layout


def _edge_stress(ei, ej, w, xy) -> float:
    diff = xy[ei] - xy[ej]
    return float(np.sum(w * np.einsum("ek,ek->e", diff, diff)))


def _laplacian_apply(ei, ej, w, xy, n) -> np.ndarray:
    """Graph-Laplacian action: out_i = sum_j w_ij (x_i - x_j)."""
    diff = xy[ei] - xy[ej]
    out = np.zeros((n, 2))
    for d in range(2):
        contrib = w * diff[:, d]
        out[:, d] = np.bincount(ei, weights=contrib, minlength=n)
        out[:, d] -= np.bincount(ej, weights=contrib, minlength=n)
    return out


def _pair_stats(xy: np.ndarray, want_pull: bool):
    """All-pairs pass: mean pairwise distance and, optionally, the unit-vector
    sums pull_i = sum_j (x_i - x_j) / d_ij used by the constraint minorizer.

    Small layouts take the exact pairwise-difference route; large ones use
    the Gram-matrix expansion, which avoids (n, n, 2) temporaries at the cost
    of harmless round-off on near-coincident pairs (the optimizer's descent
    guard absorbs it).
    """
    n = len(xy)
    dist_sum = 0.0
    pull = np.zeros_like(xy) if want_pull else None
    if n <= 1500:
        for start in range(0, n, _PAIR_CHUNK):
            stop = min(start + _PAIR_CHUNK, n)
            diff = xy[start:stop, None, :] - xy[None, :, :]
            d = np.sqrt(np.einsum("bnk,bnk->bn", diff, diff))
            dist_sum += float(d.sum())
            if want_pull:
                inv = np.zeros_like(d)
                positive = d > 0.0
                inv[positive] = 1.0 / d[positive]
                pull[start:stop] = np.einsum("bnk,bn->bk", diff, inv)
    else:
        sq = np.einsum("nk,nk->n", xy, xy)
        for start in range(0, n, _PAIR_CHUNK):
            stop = min(start + _PAIR_CHUNK, n)
            d2 = sq[start:stop, None] + sq[None, :] - 2.0 * (xy[start:stop] @ xy.T)
            np.maximum(d2, 0.0, out=d2)
            d = np.sqrt(d2, out=d2)
            dist_sum += float(d.sum())
            if want_pull:
                positive = d > 0.0
                inv = np.divide(1.0, d, out=np.zeros_like(d), where=positive)
                pull[start:stop] = xy[start:stop] * inv.sum(axis=1)[:, None] - inv @ xy
    mean = dist_sum / (n * (n - 1)) if n > 1 else 0.0
    return mean, pull


def mean_pairwise_distance(layout: Layout) -> float:
    """Mean distance over all unordered node pairs of the layout."""
    mean, _ = _pair_stats(layout.xy, want_pull=False)
    return mean


def write_layout_csv(layout: Layout, titles, path) -> None:
    """Write ``journal,x,y`` rows in ascending journal-index order."""
    order = np.argsort(layout.nodes)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["journal", "x", "y"])
        for p in order:
            idx = int(layout.nodes[p])
            x, y = layout.xy[p]
            writer.writerow([titles[idx], repr(float(x)), repr(float(y))])


def read_layout_csv(path) -> list[tuple[str, float, float]]:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["journal", "x", "y"]:
            raise FormatError(f"{path}: expected header 'journal,x,y'")
        for row in reader:
            if len(row) != 3:
                raise FormatError(f"{path}:{reader.line_num}: expected 3 fields")
            try:
                rows.append((row[0], float(row[1]), float(row[2])))
            except ValueError:
                raise FormatError(f"{path}:{reader.line_num}: bad coordinate") from None
    return rows
