"""Distance, disjointness, and Clifford-hierarchy level bounds for qudit
stabilizer codes, with an independent dense-simulator cross-check."""

__version__ = "0.1.0"

from .bounds import (
    FamilyExponents,
    LevelBound,
    asymptotic_level_bound,
    cleaning_level_bound,
    multiblock_level_bound,
    permuting_level_bound,
    shallow_level_bound,
    toffoli_excluded,
    transversal_level_bound,
)
from .codes import (
    DEFAULT_BUDGET,
    NOT_LOGICAL,
    TRIVIAL,
    CircuitShape,
    LogicalClass,
    MultiblockSpec,
    StabilizerCode,
    build_code,
    dumps_code_file,
    effective_multiblock,
    load_code_file,
    loads_code_file,
)
from .errors import (
    BudgetExceededError,
    CodeConstructionError,
    CodeFileError,
    CompositeDimensionError,
    DimensionMismatchError,
    DisjointnessError,
    NumericallyAmbiguousError,
    OracleSizeError,
    PauliSyntaxError,
    WitnessError,
)
from .metrics import (
    DEFAULT_C_MAX,
    DeclaredMetrics,
    DisjointWitness,
    MetricsReport,
    RationalInterval,
    c_disjointness,
    class_distance,
    clean,
    compute_metrics,
    disjointness,
    min_max_distance,
    multiblock_scrub_bound,
    scrub,
)
from .partition import Partition, support, weight
from .pauli import (
    PauliOperator,
    commutes,
    hermitian_canonical,
    multiply,
    pauli_from_string,
    symplectic_product,
)

__all__ = [
    "__version__",
    "PauliOperator", "pauli_from_string", "multiply", "symplectic_product",
    "commutes", "hermitian_canonical",
    "Partition", "support", "weight",
    "StabilizerCode", "build_code", "LogicalClass", "TRIVIAL", "NOT_LOGICAL",
    "CircuitShape", "MultiblockSpec", "effective_multiblock",
    "load_code_file", "loads_code_file", "dumps_code_file",
    "DEFAULT_BUDGET", "DEFAULT_C_MAX",
    "RationalInterval", "MetricsReport", "DeclaredMetrics", "DisjointWitness",
    "class_distance", "min_max_distance", "c_disjointness", "disjointness",
    "clean", "scrub", "multiblock_scrub_bound", "compute_metrics",
    "LevelBound", "FamilyExponents",
    "transversal_level_bound", "cleaning_level_bound", "multiblock_level_bound",
    "shallow_level_bound", "asymptotic_level_bound", "permuting_level_bound",
    "toffoli_excluded",
    "DisjointnessError", "PauliSyntaxError", "DimensionMismatchError",
    "CompositeDimensionError", "CodeConstructionError", "CodeFileError",
    "BudgetExceededError", "WitnessError", "OracleSizeError",
    "NumericallyAmbiguousError",
]
