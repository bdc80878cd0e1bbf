"""Exact toolkit for fiber cones of monomial ideals.

Computes the defining ideal of the fiber cone degree by degree, classifies
three families of ideals in closed form, certifies every closed form against
the brute-force kernel, and diagnoses depth and Cohen-Macaulayness with
re-checkable certificates.
"""

from .monomials import (
    MonomialIdeal,
    format_ideal,
    ideal,
    member_strict,
    minimalize,
    mu_power_sequence,
    parse_ideal,
    power,
)
from .kernel import (
    KernelGenerator,
    KernelReport,
    binomial,
    compute_kernel,
    image_of_z_monomial,
    monomial,
    rank_cross_check,
)
from .groebner import (
    GroebnerBasis,
    Polynomial,
    buchberger,
    colon,
    initial_ideal,
    intersect,
    normal_form,
    parse_order,
    parse_poly,
    standard_monomial_count,
)
from .classify import (
    Classification,
    certify,
    ci_ideal,
    classify_ci,
    classify_hypersurface,
    classify_symmetric,
    hypersurface_ideal,
    symmetric_ideal,
)
from .depth import (
    DepthCertificate,
    InconclusiveDepthError,
    UntrustedTruncationError,
    depth_certificate,
    dimension,
    is_cohen_macaulay,
    is_depth_zero,
    mu_monotonicity_check,
    trusted_polys,
)

__all__ = [name for name in dir() if not name.startswith("_")]
