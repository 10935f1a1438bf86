"""liedeg: exact contractions, degenerations and rigidity of Lie algebra laws.

The toolkit works over the Gaussian rationals and the rational function
field in one parameter t, with the t-adic valuation deciding whether a
transported law has a limit.  Everything is exact; every positive claim
(a verified degeneration, a vanishing cohomology group) is a finite
computation that can be replayed.
"""

from .catalog import CATALOG, CatalogEntry, catalog, list_catalog, resolve
from .contraction import (
    ContractionResult,
    EndoContractionReport,
    Witness,
    check_endo_contraction,
    contract,
    induced_deformation,
    iw_contract,
    limit_tensor,
    scaling_witness,
    transport,
)
from .core import (
    GAUSS,
    RATFUNC,
    StructureTensor,
    ValidationReport,
    act,
    direct_sum,
    tensor_from_json,
    tensor_to_json,
    validate,
)
from .deformation import (
    CocycleReport,
    RigidityCertificate,
    TruncatedDeformation,
    defects_vanish,
    is_two_cocycle,
    jacobi_defect,
    rigidity,
)
from .degeneration import (
    DegenerationVerdict,
    HasseDiagram,
    HasseEdge,
    build_hasse,
    family_witness_to_n3,
    hasse_dim2,
    hasse_dim3,
    obstruct,
    to_dot,
    verify,
)
from .dsl import AlgebraSource, elaborate, parse, parse_algebra, print_algebra
from .errors import (
    CatalogError,
    JacobiError,
    LieDegError,
    NoLimitError,
    ParseError,
    SingularMatrixError,
    VerificationError,
)
from .invariants import (
    InvariantProfile,
    center_dim,
    cochain_differential,
    cohomology_dims,
    der_dim,
    derivations,
    orbit_dim,
    profile,
    series_dims,
)
from .scalars import (
    GaussRat,
    LaurentPoly,
    Rat,
    RatFunc,
    as_gauss,
    as_ratfunc,
    limit_at_zero,
    parse_scalar,
    scalar_str,
    taylor,
    valuation,
)

__version__ = "0.1.0"
