"""Linear maps preserving lp-norm parallel and triangle-equality-attaining pairs."""
from .classify import (
    Structure,
    StructureClass,
    gen_perm_form,
    is_monomial,
    is_row_monomial,
    rank_one_factor,
    two_by_two_c_form,
)
from .norms import NormKind, NormSpec, PeakSet, ZeroVector, norm, peak_set
from .numeric import (
    DEFAULT_TOL,
    DimensionMismatch,
    Field,
    FieldMismatch,
    Tolerance,
    approx_eq,
    as_matrix,
    as_vector,
    is_nonneg_real,
    rank,
)
from .oracle import (
    Counterexample,
    HypothesisViolated,
    SampleConfig,
    empirical_check,
    find_nonparallel_in_span,
    peaks_preserved,
    has_peak_preserving_form,
    sample_batch,
    sample_pair,
)
from .pairs import (
    PairKind,
    PairVerdict,
    definitional_check,
    is_pair,
    is_pair_l1,
    is_pair_linf,
    is_pair_lp_strict,
    pair_batch,
)
from .preserver import (
    PreserverVerdict,
    WitnessNotFound,
    build_witness,
    linf_characterisations_agree,
    decide,
    structure_for,
)

__version__ = "0.1.0"
