"""Best proximity points of cyclic maps in finite-dimensional p-normed spaces."""

__version__ = "0.1.0"

from .config import Problem, builtin_problem, load_config, parse_config  # noqa: E402
from .contraction import (  # noqa: E402
    ContractionVerdict,
    OrbitalSup,
    estimate_min_eta,
    orbital_sup,
    verify,
    verify_cyclic,
    verify_orbital,
    verify_suzuki,
)
from .cyclic_map import (  # noqa: E402
    DELTA,
    OMEGA,
    AffineCyclicMap,
    AffineRule,
    CheckVerdict,
    OrbitTable,
    TableMap,
    apply,
    boundedness_check,
    cyclicity_check,
    orbit,
)
from .errors import (  # noqa: E402
    AmbiguityError,
    ConfigError,
    CyclicityViolation,
    DomainError,
    PreconditionError,
    ProximaError,
    UsageError,
)
from .lemmas import (  # noqa: E402
    LemmaVerdict,
    SequenceTriple,
    check_lemma_cauchy,
    check_lemma_close,
    generate_converging_triple,
)
from .region import Box, FinitePointSet, ProximalPair, Segment, proximal_sets, set_distance  # noqa: E402
from .solver import (  # noqa: E402
    SolveOptions,
    SolveReport,
    iterate,
    multi_start_check,
    gap_bound_check,
    write_trace_csv,
)
from .space import (  # noqa: E402
    Point,
    Space,
    distance,
    geodesic_point,
    hilbert_modulus,
    uniform_convexity_check,
)

__all__ = [
    "__version__",
    "# noqa: E402",
    "AffineCyclicMap",
    "AffineRule",
    "AmbiguityError",
    "apply",
    "boundedness_check",
    "Box",
    "builtin_problem",
    "check_lemma_cauchy",
    "check_lemma_close",
    "CheckVerdict",
    "ConfigError",
    "ContractionVerdict",
    "cyclicity_check",
    "CyclicityViolation",
    "DELTA",
    "distance",
    "DomainError",
    "estimate_min_eta",
    "FinitePointSet",
    "gap_bound_check",
    "generate_converging_triple",
    "geodesic_point",
    "hilbert_modulus",
    "iterate",
    "LemmaVerdict",
    "load_config",
    "multi_start_check",
    "OMEGA",
    "orbit",
    "orbital_sup",
    "OrbitalSup",
    "OrbitTable",
    "parse_config",
    "Point",
    "PreconditionError",
    "Problem",
    "ProximaError",
    "proximal_sets",
    "ProximalPair",
    "Segment",
    "SequenceTriple",
    "set_distance",
    "SolveOptions",
    "SolveReport",
    "Space",
    "TableMap",
    "uniform_convexity_check",
    "UsageError",
    "verify",
    "verify_cyclic",
    "verify_orbital",
    "verify_suzuki",
    "write_trace_csv",
]
