"""Smooth Renyi entropies, error-tolerant prefix codes, and exact moment bounds."""

from .asymptotics import (
    RateSeries,
    SpectrumQuery,
    achievable_exponent,
    entropy_rate_series,
    spectrum_probability,
    theoretical_limit,
)
from .codes import (
    DeterministicCode,
    PrefixCode,
    StochasticCode,
    TiltedDistribution,
    assign_canonical_codewords,
    build_deterministic_code,
    build_stochastic_code,
    codebook_from_json,
    codebook_to_json,
    ideal_real_lengths,
    shannon_lengths,
    tilted_distribution,
)
from .distributions import (
    Distribution,
    MixtureComponent,
    MixtureSpec,
    WeightedAtom,
    distribution_from_atoms,
    distribution_from_json,
    iid_extension,
    mixture_extension,
    mixture_from_json,
    mixture_spec,
    new_distribution,
    shannon_entropy,
)
from .errors import (
    BadAlpha,
    BadEpsilon,
    BadLambda,
    BadMixture,
    EmptyDistribution,
    Infeasible,
    KraftViolated,
    Misaligned,
    NotNormalized,
    SandwichViolated,
    SmoothcodeError,
    TooLarge,
)
from .evaluation import (
    CodeReport,
    converse_bound,
    direct_bound,
    error_probability,
    evaluate_code,
    exponential_moment,
    sandwich_report,
)
from .oracle import (
    OracleResult,
    enumerate_kraft_length_multisets,
    optimal_code_bruteforce,
    smoothing_feasible_search,
)
from .smooth_renyi import (
    SubDistribution,
    optimal_smoothing,
    r_alpha_eps,
    smooth_max_entropy,
    smooth_renyi_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "BadAlpha",
    "BadEpsilon",
    "BadLambda",
    "BadMixture",
    "CodeReport",
    "DeterministicCode",
    "Distribution",
    "EmptyDistribution",
    "Infeasible",
    "KraftViolated",
    "Misaligned",
    "MixtureComponent",
    "MixtureSpec",
    "NotNormalized",
    "OracleResult",
    "PrefixCode",
    "RateSeries",
    "SandwichViolated",
    "SmoothcodeError",
    "SpectrumQuery",
    "StochasticCode",
    "SubDistribution",
    "TiltedDistribution",
    "TooLarge",
    "WeightedAtom",
    "achievable_exponent",
    "assign_canonical_codewords",
    "build_deterministic_code",
    "build_stochastic_code",
    "codebook_from_json",
    "codebook_to_json",
    "converse_bound",
    "direct_bound",
    "distribution_from_atoms",
    "distribution_from_json",
    "entropy_rate_series",
    "enumerate_kraft_length_multisets",
    "error_probability",
    "evaluate_code",
    "exponential_moment",
    "ideal_real_lengths",
    "iid_extension",
    "mixture_extension",
    "mixture_from_json",
    "mixture_spec",
    "new_distribution",
    "optimal_code_bruteforce",
    "optimal_smoothing",
    "r_alpha_eps",
    "sandwich_report",
    "shannon_entropy",
    "shannon_lengths",
    "smooth_max_entropy",
    "smooth_renyi_entropy",
    "smoothing_feasible_search",
    "spectrum_probability",
    "theoretical_limit",
    "tilted_distribution",
]
