"""tatetors: Lattices in Tate spaces, determinantal theories and multiplicative torsors.

More info: README.md
"""

from .errors import (
    BudgetExceededError,
    ConfigurationError,
    DegreeOutOfRangeError,
    DimensionMismatchError,
    InexactSequenceError,
    InvalidGerbeError,
    InvalidReferenceError,
    LatticeError,
    NotAdmissibleError,
    ParseError,
    PrecisionError,
    SimplicialIdentityError,
    TatetorsError,
    VerificationError,
)
from .config import create_run_config, validate_config
from .exactlin import Field, Matrix, Subspace
from .exactcat import FdSpace, LinMap, SES, check_ses, complete_grid_3x3
from .tate import (
    LaurentMatrix,
    LaurentPoly,
    Lattice,
    TateSES,
    TateSpace,
    check_tate_ses,
    diagonal_lattice,
    lattice_join,
    lattice_meet,
    lift_lattice,
    project_lattice,
    relative_index,
    standard_lattice,
)
from .dimtorsor import AbelianGroup, DimTheory, RelDimTheory, eval_reldim, mu_combine
from .detline import DetTheory, GradedLine, LineIso, RelDetTheory, lambda_ses, mu_det
from .simptors import (
    Cochain,
    GerbeRep,
    MultTorsorRep,
    SimplicialSet,
    check_mult_torsor,
    classify_torsor,
    cohomology,
    gerbe_to_torsor,
    iso_decide,
    validate_simplicial_set,
)
from .swald import SObject, enumerate_s_skeleton, verify_theory_as_torsor
from .fileformats import read_file
from .report import write_manifest_file
