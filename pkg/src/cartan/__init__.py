"""Barycenters, spectra and transport on the cone of SPD matrices."""

from ._validation import (
    DimensionMismatchError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    check_ordered_positive,
    check_spd,
    check_symmetric,
    check_weights,
)
from .barycenter import (
    KarcherResult,
    arithmetic_mean,
    cartan_mean,
    eigenvalues_of_mean,
    geometric_integral,
    harmonic_mean,
    karcher_mean,
    karcher_residual,
    log_euclidean_mean,
    power_pushforward,
    product_barycenter_measure,
    pushforward_eigen,
)
from .estimators import EigenvalueMap, KarcherMean, LogEuclideanMean, SymplecticSpectrumMap
from .linalg import (
    ConvergenceError,
    EigDecomposition,
    eigenvalue_map,
    expm,
    geodesic,
    logm,
    loewner_min_eig,
    matrix_fn,
    powm,
    riemannian_distance,
    sqrtm,
    sym_eig,
    thompson_distance,
)
from .majorization import (
    Verdict,
    additive_majorizes,
    log_majorization_margins,
    log_majorizes,
    majorization_margins,
    vector_geometric_mean,
    weak_log_majorizes,
)
from .measures import DiscreteMeasure
from .symplectic import (
    SymplecticPairingError,
    SymplecticSpectrum,
    WilliamsonDecomposition,
    compound_matrix,
    extended_symplectic_map,
    standard_J,
    symplectic_eigenvalues,
    symplectic_prefix_product,
    top_symplectic_bound_holds,
    williamson,
)
from .transport import GROUNDS, TransportPlan, cost_matrix, transportation_simplex, wasserstein1

__version__ = "0.1.0"
