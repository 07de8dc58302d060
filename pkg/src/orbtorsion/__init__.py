"""Exact elliptic and identity heat-trace terms for compact hyperbolic
orbifolds along rays of representations, with desk-scale verification of
the combinatorial structure (constant alternating sums, pseudopolynomial
degrees, coefficient growth) and a numeric cone-deformation demo."""

from .algebra import NuPolynomial, PhasePolynomial, numeric_phase_eval
from .cone import gradient_integrand, loglog_slope, normalized_tail, tail_integral
from .config import ConfigError, RunConfig, canonical_dict, emit_canonical, parse_config
from .elliptic import (
    EllipticPolynomial,
    LemmaViolation,
    alternating_sum,
    class_polynomial,
    coefficient_table,
    identity_alternating_sum,
    interpolation_check,
    phase_exponents,
    polynomial_part,
)
from .lie import (
    CapExceeded,
    EllipticClass,
    RayConfig,
    SignedPermutation,
    even_signed_permutations,
    half_sum_roots,
    spectral_shift,
    spectral_shifts,
    weight_vector,
    weyl_dimension,
    weyl_order,
)
from .torsion import (
    GrowthRow,
    InsufficientSamples,
    NormalizedValue,
    OrbifoldData,
    PseudoPolyReport,
    coefficient_growth_table,
    dimension_ratio,
    gaussian_moment,
    heat_trace_elliptic,
    heat_trace_identity,
    integrate_to,
    l2_log_torsion,
    log_torsion,
    mellin_elliptic,
    mellin_elliptic_exact,
    mellin_elliptic_record,
    mellin_identity,
    pseudopoly_extract,
    reduce_exponents,
    sup_growth_table,
    telescoping_check,
)

__version__ = "0.1.0"
