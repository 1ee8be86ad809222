"""ndg: rank-correlation degeneracy diagnostics.

Estimators for Kendall's tau and Spearman's rho with their plug-in
asymptotic-variance functionals, exact geometric example distributions,
rectangle-witness support checks, and a Monte Carlo verification engine.
Served over HTTP by :mod:`ndg.service`; driven in batch by :mod:`ndg.cli`.
"""

__version__ = "0.1.0"

from .errors import (
    BadParams,
    DegenerateRanks,
    EmptyInput,
    MalformedRectangle,
    NdgError,
    NonFiniteValue,
    SampleTooSmall,
    TiesInX,
    TiesInY,
    TooManyPoints,
    UnknownSpecName,
)
from .sample import (
    EmpiricalCdf,
    PairedSample,
    RankVector,
    ecdf_eval,
    joint_ecdf_at_points,
    joint_ecdf_eval,
    kendall_tau,
    make_sample,
    rank_transform,
    spearman_rho,
    validate_sample,
)
from .degeneracy import (
    DegeneracyReport,
    GradeValues,
    d_rho_values,
    d_tau_values,
    degeneracy_report,
    grade_values,
    rectangle_mass_identity,
    sigma2_rho,
    sigma2_tau,
)
from .distributions import (
    Arc,
    Box,
    BUILTIN_NAMES,
    CantorProduct,
    DistributionSpec,
    GaussianShift,
    MultiArc,
    Segment,
    SpecCdfValue,
    builtin_spec,
    draw,
    spec_cdf,
    spec_d_tau,
    spec_from_json,
    spec_from_jsonable,
    spec_to_json,
    spec_to_jsonable,
    support_points,
    svc_intervals,
)
from .geometry import (
    RectangleWitness,
    SnappedPointSet,
    brute_force_witness,
    find_rectangle_witness,
    occupied_fraction,
    snap,
)
from .montecarlo import (
    CurvePoint,
    CurveReport,
    McConfig,
    McReport,
    degeneracy_curve,
    replicate_seed,
    replicate_statistics,
)

__all__ = [
    "__version__",
    # errors
    "NdgError",
    "EmptyInput",
    "NonFiniteValue",
    "SampleTooSmall",
    "TiesInX",
    "TiesInY",
    "DegenerateRanks",
    "MalformedRectangle",
    "UnknownSpecName",
    "BadParams",
    "TooManyPoints",
    # sample core
    "PairedSample",
    "RankVector",
    "EmpiricalCdf",
    "make_sample",
    "validate_sample",
    "rank_transform",
    "ecdf_eval",
    "joint_ecdf_eval",
    "joint_ecdf_at_points",
    "kendall_tau",
    "spearman_rho",
    # degeneracy
    "GradeValues",
    "DegeneracyReport",
    "grade_values",
    "d_tau_values",
    "d_rho_values",
    "sigma2_tau",
    "sigma2_rho",
    "rectangle_mass_identity",
    "degeneracy_report",
    # distributions
    "DistributionSpec",
    "Segment",
    "Arc",
    "MultiArc",
    "Box",
    "CantorProduct",
    "GaussianShift",
    "SpecCdfValue",
    "BUILTIN_NAMES",
    "builtin_spec",
    "draw",
    "spec_cdf",
    "spec_d_tau",
    "support_points",
    "svc_intervals",
    "spec_to_json",
    "spec_from_json",
    "spec_to_jsonable",
    "spec_from_jsonable",
    # geometry
    "SnappedPointSet",
    "RectangleWitness",
    "snap",
    "find_rectangle_witness",
    "brute_force_witness",
    "occupied_fraction",
    # monte carlo
    "McConfig",
    "McReport",
    "CurvePoint",
    "CurveReport",
    "replicate_seed",
    "replicate_statistics",
    "degeneracy_curve",
]
