import numpy as np

from ..core.edges import EdgeIndexMap, devectorize_edges
from ..core.embedding import EmbeddingMatrix
from ..utils import top_rows_order


def select_edges(q_hat: EmbeddingMatrix, s: int) -> np.ndarray:
    """Indices of the ``s`` edges with the largest ``||q_e||``, descending, ties by index."""
    if not 1 <= s <= q_hat.d:
        raise ValueError(f"s must lie in [1, {q_hat.d}], got {s}")
    return top_rows_order(q_hat.row_norms)[:s]


def sparse_edge_graph(q_hat: EmbeddingMatrix, edge_map: EdgeIndexMap, s: int) -> np.ndarray:
    """0/1 adjacency matrix of the ``s`` selected edges."""
    indicator = np.zeros(q_hat.d)
    indicator[select_edges(q_hat, s)] = 1.0
    return devectorize_edges(indicator, edge_map)


def node_degrees(graph: np.ndarray) -> np.ndarray:
    return np.asarray(graph, dtype=np.float64).sum(axis=1)


def hub_nodes(q_hat: EmbeddingMatrix, edge_map: EdgeIndexMap, s: int, top: int = 5) -> list[tuple[int, int]]:
    """
    Nodes with the most selected edges.

    :return: ``(node, degree)`` pairs, highest degree first, ties by node index.
    """
    degrees = node_degrees(sparse_edge_graph(q_hat, edge_map, s))
    order = top_rows_order(degrees)[:top]
    return [(int(u), int(degrees[u])) for u in order]
