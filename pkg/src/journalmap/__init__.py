"""Journal citation basemaps, document-set overlays, and diversity measurement.

The pipeline: load an aggregated journal-journal citation matrix, normalize
it into a cosine similarity graph (citing or cited direction), threshold,
extract the largest component, cluster it with Louvain, lay it out in 2-D,
then project document sets onto the map as overlays and score their
interdisciplinarity as Rao-Stirling diversity.
"""

__version__ = "0.1.0"

from .citation import (
    CitationMatrix,
    SimilarityGraph,
    cosine_similarity_graph,
    largest_component,
    load_matrix,
    threshold_edges,
)
from .communities import Partition, louvain, modularity, read_partition_csv, write_partition_csv
from .errors import (
    FormatError,
    JournalMapError,
    UnknownJournalError,
    UsageError,
    ValidationError,
)
from .ingest import (
    DocumentRecord,
    FrequencyList,
    extract_cr_journal,
    parse_analyze,
    parse_core,
    parse_tagged,
    tally,
)
from .keys import (
    JournalKeyTable,
    KeyRow,
    build_key_table,
    layout_from_key_table,
    match_abbreviation,
    match_title,
    read_key_table,
    write_key_table,
)
from .layout import (
    Layout,
    map_diagonal,
    mean_pairwise_distance,
    normalized_distance,
    read_layout_csv,
    stress_layout,
    write_layout_csv,
)
from .localmap import ego_subset, local_basemap, submatrix
from .overlay import (
    DiversityResult,
    OverlayItem,
    OverlaySet,
    build_overlay,
    node_size,
    quadratic_entropy,
    rao_stirling,
    read_map_file,
    read_overlay_table,
    read_rao,
    write_map_file,
    write_overlay_table,
    write_rao,
)

__all__ = [
    "CitationMatrix",
    "SimilarityGraph",
    "Partition",
    "Layout",
    "JournalKeyTable",
    "KeyRow",
    "DocumentRecord",
    "FrequencyList",
    "OverlaySet",
    "OverlayItem",
    "DiversityResult",
    "JournalMapError",
    "FormatError",
    "ValidationError",
    "UsageError",
    "UnknownJournalError",
    "load_matrix",
    "cosine_similarity_graph",
    "threshold_edges",
    "largest_component",
    "modularity",
    "louvain",
    "write_partition_csv",
    "read_partition_csv",
    "stress_layout",
    "map_diagonal",
    "normalized_distance",
    "mean_pairwise_distance",
    "write_layout_csv",
    "read_layout_csv",
    "build_key_table",
    "match_title",
    "match_abbreviation",
    "write_key_table",
    "read_key_table",
    "layout_from_key_table",
    "parse_tagged",
    "extract_cr_journal",
    "parse_analyze",
    "parse_core",
    "tally",
    "build_overlay",
    "rao_stirling",
    "quadratic_entropy",
    "node_size",
    "write_map_file",
    "read_map_file",
    "write_overlay_table",
    "read_overlay_table",
    "write_rao",
    "read_rao",
    "ego_subset",
    "submatrix",
    "local_basemap",
]
