"""
Two-dimensional embedding of a dissimilarity matrix for plotting.
"""
import numpy as np
from sklearn.decomposition import PCA

from ..core.errors import EvaluationError


def embed_dissimilarity(D: np.ndarray) -> np.ndarray:
    """
    First two principal components of the rows of D.

    Rows are treated as feature vectors and columns are centered. Each
    component's sign is fixed so that its largest-magnitude loading is
    positive. Missing components (n < 3 or rank < 2) are zero.
    """
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise EvaluationError(f"dissimilarity matrix must be square, got {D.shape}")
    n = D.shape[0]
    coords = np.zeros((n, 2))
    centered = D - D.mean(axis=0, keepdims=True)
    if n < 2 or not np.any(centered):
        return coords
    n_components = min(2, n - 1, n)
    pca = PCA(n_components=n_components, svd_solver="full")
    scores = pca.fit_transform(centered)
    for c in range(n_components):
        loadings = pca.components_[c]
        if loadings[int(np.argmax(np.abs(loadings)))] < 0:
            scores[:, c] = -scores[:, c]
    coords[:, :n_components] = scores
    return coords
