"""Reflection identities for binary quadratic and cubic forms, with finite
local cohomology models and the level-calculus transforms behind them."""

from .records import VerificationRecord, render_value
from .forms import (
    act_cubic,
    disc_cubic,
    disc_quadratic,
    hessian,
    simple_root_count_mod_N,
    splitting_type,
    stabilizer_order_cubic,
    superdiscriminant,
    trace_ideal_exponent_at_3,
)
from .quad_refl import (
    enumerate_superdisc,
    q_counts,
    verify_legendre_identity,
    verify_quadratic_on,
)
from .cubic_enum import (
    DiscScale,
    MaximalAt,
    OrbitRepresentative,
    RootWeight,
    ShintaniCoefficientTable,
    SimpleRootWeight,
    SimpleRootWeightComposite,
    SplittingTypeIs,
    TracedAt3,
    canonical_form,
    class_number,
    enumerate_cubic_orbits,
    is_maximal_at_p,
    shintani_coefficients,
    verify_cubic_on,
    verify_disc_reduction,
    verify_disc_reduction_multi,
    verify_shintani_reflection,
    verify_totally_ramified_reflection,
    z1n_rhs,
)
from .cohomology import (
    H1Model,
    LevelParams,
    LevelVector,
    build_generic_model,
    build_square_class_model,
    build_tame_cubic_model,
    fourier_transform,
    hilbert_symbol,
    level_fourier,
)
from .local_quad import (
    gf_assemble,
    gf_closed_form,
    local_count_direct,
    verify_gf_closed_form,
    verify_gf_symbolic_duality,
    verify_local_quad_duality,
)
from .local_cubic import (
    families,
    family_vector,
    standard_algebras,
    subring_count_oracle,
    tame_flag_table,
    traced_count,
    verify_family_consistency,
    verify_involution,
    verify_subring_counts,
    verify_symbolic_duality,
    verify_tame_duality,
)

__version__ = "0.1.0"
