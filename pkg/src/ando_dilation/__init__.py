"""Minimal isometric dilations of commuting strict contraction pairs."""

__version__ = "0.1.0"

from .ando import build_classical_U4, build_S, build_subspaces, extend_to_unitary
from .banach import (
    DilationNorm,
    NormOracle,
    a_norm_oracle,
    build_banach_dilation,
    check_a_norm,
    hilbert_S_to_banach_S,
    lp_oracle,
    mixed_pair_oracle,
    operator_p_norm,
    product_a_norm_identity,
    qhat_isometry_check,
    search_norm_one_examples,
)
from .engine import (
    DilationOperatorSpec,
    DilationState,
    OpKind,
    apply_op,
    apply_word,
    classical4_specs,
    embed,
    minimal_specs,
    naive_specs,
    schaffer_spec,
    state_norm,
)
from .errors import DilationError
from .pairs import ContractionPair, defect_data, generate_commuting_pair, load_pair, save_pair, validate_pair
from .verify import (
    VerificationReport,
    check_commutation,
    check_dilation_identity,
    check_isometry,
    check_minimality,
    check_single_dilation_identity,
)
