"""Kalman variety toolkit: Betti tables, Hilbert series, defining
equations, and independent finite-field verification."""

__version__ = "0.1.0"

from .partitions import (
    Box,
    Partition,
    SkewShape,
    cauchy_terms,
    conjugate,
    partitions_in_box,
    schur_dim,
    skew_schur_dim,
    tilde_shift,
)
from .bott import (
    BottOutcome,
    BundleTerm,
    DottedActionTrace,
    bundle_cohomology,
    bundle_weight,
    dotted_bott,
    exhaustive_dotted_check,
    rho,
)
from .report import CheckFailure, CheckReport
from .resolution import (
    BettiTable,
    BettiTerm,
    GeneratorRecord,
    HilbertSeries,
    KalmanParams,
    chain_resolution,
    codim_from_hilbert,
    f0_check,
    hilbert_numerator,
    les_euler_check,
    minimal_generators,
    part_iii_profile,
    pd_and_reg,
    resolution_normalization,
    split_parts,
    twisted_normalization_numerator,
)
from .polysym import (
    QQ,
    BlockLayout,
    PolyMatrix,
    PolyRing,
    PrimeField,
    SparsePoly,
    all_top_minors,
    determinant,
    enumerate_minors,
    minor,
    reduced_kalman_matrix,
    row_compositions,
    trace_identity_check,
    wedge_trace,
)
from .verify import (
    KalmanPoint,
    MonomialCapExceeded,
    PrimeFieldConfig,
    graded_ideal_dimension,
    hypersurface_check,
    minimality_report,
    minors_vanishing_check,
    random_kalman_point,
    truncated_hilbert,
    truncated_hilbert_check,
    vanishing_test,
)

__all__ = [
    "Box",
    "Partition",
    "SkewShape",
    "cauchy_terms",
    "conjugate",
    "partitions_in_box",
    "schur_dim",
    "skew_schur_dim",
    "tilde_shift",
    "BottOutcome",
    "BundleTerm",
    "DottedActionTrace",
    "bundle_cohomology",
    "bundle_weight",
    "dotted_bott",
    "exhaustive_dotted_check",
    "rho",
    "CheckFailure",
    "CheckReport",
    "BettiTable",
    "BettiTerm",
    "GeneratorRecord",
    "HilbertSeries",
    "KalmanParams",
    "chain_resolution",
    "codim_from_hilbert",
    "f0_check",
    "hilbert_numerator",
    "les_euler_check",
    "minimal_generators",
    "part_iii_profile",
    "pd_and_reg",
    "resolution_normalization",
    "split_parts",
    "twisted_normalization_numerator",
    "QQ",
    "BlockLayout",
    "PolyMatrix",
    "PolyRing",
    "PrimeField",
    "SparsePoly",
    "all_top_minors",
    "determinant",
    "enumerate_minors",
    "minor",
    "reduced_kalman_matrix",
    "row_compositions",
    "trace_identity_check",
    "wedge_trace",
    "KalmanPoint",
    "MonomialCapExceeded",
    "PrimeFieldConfig",
    "graded_ideal_dimension",
    "hypersurface_check",
    "minimality_report",
    "minors_vanishing_check",
    "random_kalman_point",
    "truncated_hilbert",
    "truncated_hilbert_check",
    "vanishing_test",
    "__version__",
]
