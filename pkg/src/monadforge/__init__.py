"""Exact linear algebra for nets of quadrics and symplectic monads.

Everything is computed over the rationals or a prime field; no floats
anywhere.  The public surface re-exported here covers the object types
(nets, framed points, octuples, sigma points), the verifiers, the
cohomology and plane-reduction pipelines, generators and search, and the
versioned JSON file layer.  The `monadforge` console script wraps the same
calls.
"""

from .fields import QQ, BadPrimeError, PrimeField, default_prime
from .matrices import Matrix
from .rng import CounterRng
from .reports import (
    FAIL,
    INDETERMINATE,
    PASS,
    PROBABLE,
    ConditionResult,
    VerificationReport,
)
from .nets import (
    NetError,
    NetPresentation,
    QuadricNet,
    WrongRankError,
    barth_verify,
    decompose_pr2,
    monad_maps,
    net_from_flatten,
    presentation,
)
from .cohomology import (
    CohomologyError,
    CohomologyTable,
    chi_middle_bundle,
    cohomology_table,
    line_splitting,
    line_statistics,
)
from .frames import (
    FrameError,
    GammaPoint,
    GroupElementG,
    a_of_gamma,
    embed_h_in_g,
    g_action,
    gamma_to_net,
    lift_from_net,
    misp_verify,
    std_symplectic,
)
from .slices import (
    BarthOctuple,
    BlockMismatchError,
    DCertificate,
    OctupleError,
    a_of_octuple,
    closed_residuals,
    d_certificate,
    gamma_conditions,
    gamma_of_octuple,
    h_action,
    skew_of_octuple,
    tilde_matrix,
)
from .plane import (
    FiberReport,
    PlaneError,
    SigmaPoint,
    fiber_report,
    fiber_solve,
    fiber_system,
    mx_verify,
    octuple_of_sigma,
    phi_restrict,
    plane_net_of_sigma,
    psi_project,
    sigma_h_action,
)
from .workbench import (
    DimsRow,
    GenerationError,
    OrbitReport,
    SearchConfig,
    SearchReport,
    dims_report,
    dims_row,
    gen_closed_octuple,
    gen_null_correlation,
    orbit_test,
    search_gamma_points,
)
from .serialize import (
    SchemaError,
    dumps,
    load_file,
    load_obj,
    object_to_jsonable,
    save_file,
)

__version__ = "0.1.0"

__all__ = [
    "QQ", "BadPrimeError", "PrimeField", "default_prime",
    "Matrix", "CounterRng",
    "PASS", "FAIL", "PROBABLE", "INDETERMINATE",
    "ConditionResult", "VerificationReport",
    "NetError", "NetPresentation", "QuadricNet", "WrongRankError",
    "barth_verify", "decompose_pr2", "monad_maps", "net_from_flatten",
    "presentation",
    "CohomologyError", "CohomologyTable", "chi_middle_bundle",
    "cohomology_table", "line_splitting", "line_statistics",
    "FrameError", "GammaPoint", "GroupElementG", "a_of_gamma",
    "embed_h_in_g", "g_action", "gamma_to_net", "lift_from_net",
    "misp_verify", "std_symplectic",
    "BarthOctuple", "BlockMismatchError", "DCertificate", "OctupleError",
    "a_of_octuple", "closed_residuals", "d_certificate", "gamma_conditions",
    "gamma_of_octuple", "h_action", "skew_of_octuple", "tilde_matrix",
    "FiberReport", "PlaneError", "SigmaPoint", "fiber_report",
    "fiber_solve", "fiber_system", "mx_verify", "octuple_of_sigma",
    "phi_restrict", "plane_net_of_sigma", "psi_project", "sigma_h_action",
    "DimsRow", "GenerationError", "OrbitReport", "SearchConfig",
    "SearchReport", "dims_report", "dims_row", "gen_closed_octuple",
    "gen_null_correlation", "orbit_test", "search_gamma_points",
    "SchemaError", "dumps", "load_file", "load_obj", "object_to_jsonable",
    "save_file",
]
