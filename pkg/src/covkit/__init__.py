"""covkit: joint covariance construction, diagnostics, simulation, and
co-kriging for multivariate 1D spatial Gaussian processes, with first-class
support for shift-induced asymmetric cross-covariance."""

__version__ = "0.1.0"

from .builders import (
    BFunc,
    CressieSpec,
    IntrinsicSpec,
    KernelConvSpec,
    MardiaSpec,
    MaternCov,
    MultiMaternSpec,
    build_cressie,
    build_intrinsic,
    build_kernel_conv,
    build_mardia_precision,
    build_multi_matern,
    kron_logdet_inverse,
)
from .cokrige import (
    ExperimentConfig,
    ObservationSet,
    PredictionResult,
    metrics,
    predict,
    run_experiment,
    write_experiment_csvs,
)
from .core import (
    CovBlockId,
    JointCovariance,
    LocationGrid,
    Ordering,
    asymmetry_index,
    get_block,
    load_covariance,
    permute_ordering,
    save_covariance,
)
from .diagnostics import (
    CorrMatrix,
    PropertyReport,
    check_properties,
    cov_to_corr,
    empirical_correlation,
    export_corr_strips,
)
from .kernels import (
    GaussKernelParams,
    MaternParams,
    Shift,
    gauss_kernel,
    matern,
    shift_matrix,
    shifted_lag,
)
from .simulate import (
    FieldSample,
    NoiseSpec,
    add_noise,
    sample,
    sample_replicates,
    write_field_sample,
)

__all__ = [
    "BFunc",
    "CorrMatrix",
    "CovBlockId",
    "CressieSpec",
    "ExperimentConfig",
    "FieldSample",
    "GaussKernelParams",
    "IntrinsicSpec",
    "JointCovariance",
    "KernelConvSpec",
    "LocationGrid",
    "MardiaSpec",
    "MaternCov",
    "MaternParams",
    "MultiMaternSpec",
    "NoiseSpec",
    "ObservationSet",
    "Ordering",
    "PredictionResult",
    "PropertyReport",
    "Shift",
    "add_noise",
    "asymmetry_index",
    "build_cressie",
    "build_intrinsic",
    "build_kernel_conv",
    "build_mardia_precision",
    "build_multi_matern",
    "check_properties",
    "cov_to_corr",
    "empirical_correlation",
    "export_corr_strips",
    "gauss_kernel",
    "get_block",
    "kron_logdet_inverse",
    "load_covariance",
    "matern",
    "metrics",
    "permute_ordering",
    "predict",
    "run_experiment",
    "sample",
    "sample_replicates",
    "save_covariance",
    "shift_matrix",
    "shifted_lag",
    "write_experiment_csvs",
    "write_field_sample",
]
