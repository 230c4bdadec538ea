"""Exact intersection theory on blown-up surfaces.

Picard lattices with rational Gram matrices, restriction of classes to
marked elliptic curves, positivity certificates, numerical pullback across
contractions, and builders for four families of generalised log canonical
surfaces whose moduli parts are unbounded.
"""
from .contract import (
    Contraction,
    ContractionError,
    DiscrepancyTable,
    GlcPair,
    cartier_index_estimate,
    glc_assemble,
    log_canonical_pullback,
    log_discrepancies,
    make_contraction,
    multiple_of,
    numerical_pullback,
    pullback_coefficients,
    pushforward_intersection,
    semiample_multiple,
)
from .curvecfg import RestrictionClass, RestrictionError, divided_order, restrict, triviality_order
from .groups import INFINITE, AbelianGroup, GroupElement, group_sum, order
from .lattice import (
    BasisLabel,
    DivisorClass,
    Kind,
    LatticeError,
    MarkedCurve,
    SurfaceLattice,
    blow_up,
    from_gram,
    intersect,
    is_negative_definite,
    mark_curve,
    projective_plane,
    ruled_surface,
    scale_cover,
    total_transform,
    volume_nef_big,
)
from .positivity import (
    CertificateError,
    PositivityReport,
    Verdict,
    Witness,
    ample_certificate,
    ample_points_on_curve,
    nef_against,
    pullback_report,
    very_ample_equal_mult,
    very_ample_p2_blowup,
    very_ample_ruled_blowup,
)

__version__ = "0.1.0"
