"""Index construction: normalization, PCA weights and the composite index."""

from csei.index.composite import (
    Contributions,
    compute_index,
    contribution_decomposition,
    contribution_shares,
)
from csei.index.linalg import (
    PrincipalAxes,
    covariance,
    jacobi_eigh,
    orient_axis,
    principal_axes,
)
from csei.index.normalize import minmax_normalize
from csei.index.weights import (
    derive_weights,
    load_weights,
    pc1_loadings,
    weights_from_loadings,
)

__all__ = [
    "Contributions",
    "PrincipalAxes",
    "compute_index",
    "contribution_decomposition",
    "contribution_shares",
    "covariance",
    "derive_weights",
    "jacobi_eigh",
    "load_weights",
    "minmax_normalize",
    "orient_axis",
    "pc1_loadings",
    "principal_axes",
    "weights_from_loadings",
]
