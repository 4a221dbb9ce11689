"""Mutually unbiased bases, complementarity polytopes and absolute information."""

__version__ = "0.1.0"

from .bloch import (
    DeviationTable,
    embed,
    hs_distance,
    is_density_matrix,
    maximally_mixed,
    outsphere_radius,
    reconstruct,
    scalar_product,
)
from .fields import FiniteField, build_field, field_arith, field_trace
from .gcp import (
    ClassificationReport,
    Decomposition,
    DiscrepancyReport,
    Gcp,
    Verdict,
    build_gcp,
    classify_information,
    classify_membership,
    decompose,
    gauge,
    sample_boundary_point,
    theorem_report,
)
from .info import (
    InfoProfile,
    bz_information,
    information,
    information_alpha,
    per_basis_information,
    total_information,
    uncertainty,
)
from .mub import (
    MubSet,
    MubVerificationReport,
    generate_mub,
    pauli_tabulated_mub,
    verify_mub,
    wootters_fields_mub,
)
from .sampling import haar_pure, hs_mixed, uniform_in_gcp, uniform_in_span_ball
from .streams import SeededStream
from .volume import VolumeEstimate, gcp_volume_exact, mc_volume, simplex_volume, volume_ratio_report
