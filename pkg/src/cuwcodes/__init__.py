"""Construction, verification and simulation of multigroup ML-decodable
space-time block codes with unitary weight matrices."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraElement,
    GroupSpec,
    SignedMonomial,
    enumerate_group,
    inverse,
    mono_mul,
    verify_group_structure,
)
from .designio import DesignFileError, deserialize, serialize
from .designs import (
    LinearDesign,
    SlotDesign,
    abba_block_pattern,
    abba_construction,
    assemble_array,
    blockdiag_construction,
    blockdiag_representation,
    column_partition,
    irreducible_representation,
    tensor_construction,
    with_partition,
)
from .gamma import GammaFamily, gamma_family, verify_hr_family
from .gaussian import GaussianInt, GaussianMatrix, conj_transpose, kron, mat_mul
from .report import Check, VerificationReport
from .simulate import (
    DecodeOutcome,
    GroupedSignalSet,
    SimPoint,
    default_signal_set,
    evaluate_design,
    grouped_signal_set,
    metric_split_check,
    ml_decode,
    results_to_csv,
    run_monte_carlo,
    split_residual,
)
from .verify import (
    RateResult,
    max_rate,
    min_nt,
    verify_cuw,
    verify_partition_decodable,
    verify_unique_decodability,
)

__all__ = [
    "AlgebraElement",
    "Check",
    "DecodeOutcome",
    "DesignFileError",
    "GammaFamily",
    "GaussianInt",
    "GaussianMatrix",
    "GroupSpec",
    "GroupedSignalSet",
    "LinearDesign",
    "RateResult",
    "SignedMonomial",
    "SimPoint",
    "SlotDesign",
    "VerificationReport",
    "abba_block_pattern",
    "abba_construction",
    "assemble_array",
    "blockdiag_construction",
    "blockdiag_representation",
    "column_partition",
    "conj_transpose",
    "default_signal_set",
    "deserialize",
    "enumerate_group",
    "evaluate_design",
    "gamma_family",
    "grouped_signal_set",
    "inverse",
    "irreducible_representation",
    "kron",
    "mat_mul",
    "max_rate",
    "metric_split_check",
    "min_nt",
    "ml_decode",
    "mono_mul",
    "results_to_csv",
    "run_monte_carlo",
    "serialize",
    "split_residual",
    "tensor_construction",
    "verify_cuw",
    "verify_group_structure",
    "verify_hr_family",
    "verify_partition_decodable",
    "verify_unique_decodability",
    "with_partition",
]
