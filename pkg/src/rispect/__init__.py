"""Dilation indices and doubling-operator spectra of rearrangement-invariant
function spaces, computed from fundamental functions on dyadic blocks.

The package has three layers:

* step functions and dyadic block algebra (`steps`), sequence shifts and
  window constructions (`shifts`);
* space definitions with exact norms (`spaces`) and the six dilation
  indices with measured or closed-form values (`indices`);
* spectral assembly, probe experiments (`spectra`), disjoint-copy witness
  families (`witness`), and the `rispect` command line (`cli`).
"""

from .indices import (
    IndexSet,
    WeightSeq,
    analytic_indices,
    block_weights,
    estimate_indices,
    ratio_sup,
)
from .shifts import (
    SeriesDivergenceError,
    Seq,
    TruncatedSeq,
    backshift_minus,
    geometric_window,
    shift,
    shift_minus,
    solve_shift_minus,
    squared_window,
    squared_window_dual,
)
from .spaces import (
    FnSpec,
    Lorentz,
    NumericalError,
    Orlicz,
    PiecewisePower,
    PowerLog,
    PurePower,
    SpaceSpec,
    SpecJSONError,
    TableFn,
    block_norm,
    dyadic_sample_norm,
    fundamental,
    fn_from_json,
    fn_to_json,
    lorentz_norm,
    lorentz_seq_norm,
    luxemburg_norm,
    orlicz_inverse,
    orlicz_seq_norm,
    space_from_json,
    space_norm,
    space_to_json,
)
from .spectra import (
    FunctionalSumTest,
    LambdaClass,
    ProbeConfig,
    ProbeResult,
    SpectrumReport,
    ThetaInterval,
    Verdict,
    approx_eigenvalue_set,
    classify_lambda,
    frep_set,
    functional_bound_test,
    kernel_witness_curve,
    probe_lower_bound,
    range_identity_check,
    residual_curve,
    sufficient_set_general,
)
from .steps import (
    Distribution,
    DyadicStep,
    PositionedStep,
    disjoint_sum,
    dilate,
    dyadic_average,
    dyadic_embed,
    dyadic_sample,
    equimeasurable,
    rearrange,
)
from .witness import WitnessFamily, build_witness, distortion, lp_norm, standard_probes

__version__ = "0.1.0"

__all__ = [
    "IndexSet",
    "WeightSeq",
    "analytic_indices",
    "block_weights",
    "estimate_indices",
    "ratio_sup",
    "SeriesDivergenceError",
    "Seq",
    "TruncatedSeq",
    "backshift_minus",
    "geometric_window",
    "shift",
    "shift_minus",
    "solve_shift_minus",
    "squared_window",
    "squared_window_dual",
    "FnSpec",
    "Lorentz",
    "NumericalError",
    "Orlicz",
    "PiecewisePower",
    "PowerLog",
    "PurePower",
    "SpaceSpec",
    "SpecJSONError",
    "TableFn",
    "block_norm",
    "dyadic_sample_norm",
    "fundamental",
    "fn_from_json",
    "fn_to_json",
    "lorentz_norm",
    "lorentz_seq_norm",
    "luxemburg_norm",
    "orlicz_inverse",
    "orlicz_seq_norm",
    "space_from_json",
    "space_norm",
    "space_to_json",
    "FunctionalSumTest",
    "LambdaClass",
    "ProbeConfig",
    "ProbeResult",
    "SpectrumReport",
    "ThetaInterval",
    "Verdict",
    "approx_eigenvalue_set",
    "classify_lambda",
    "frep_set",
    "functional_bound_test",
    "kernel_witness_curve",
    "probe_lower_bound",
    "range_identity_check",
    "residual_curve",
    "sufficient_set_general",
    "Distribution",
    "DyadicStep",
    "PositionedStep",
    "disjoint_sum",
    "dilate",
    "dyadic_average",
    "dyadic_embed",
    "dyadic_sample",
    "equimeasurable",
    "rearrange",
    "WitnessFamily",
    "build_witness",
    "distortion",
    "lp_norm",
    "standard_probes",
    "__version__",
]
