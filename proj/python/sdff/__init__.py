"""Graph classification with diffusion Fréchet functions on simplicial complexes."""

from ._sdff import (  # noqa: F401
    ForestConfig,
    LabeledGraph,
    LabeledGraphDataset,
    RandomForest,
    RunConfig,
    SdffError,
    SimplicialComplex,
    SpectralDecomposition,
    SuperGraph,
    Variant,
    clique_complex,
    compress,
    cross_validate,
    decompose,
    dff,
    diffusion_distance_sq,
    down_laplacian,
    extract_features,
    full_laplacian,
    incidence_matrix,
    laplacian,
    load_dataset,
    probability_distribution,
    run_classify,
    run_extract,
    run_report,
    simplex_weights,
    stratified_kfold,
    train,
    up_laplacian,
    write_dataset,
)

__all__ = [name for name in dir() if not name.startswith("_")]
