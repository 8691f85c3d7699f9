"""Twisted group cohomology and characteristic forms on representation
varieties of finitely presented groups."""

from .errors import (
    CharformsError,
    ConvergenceFailure,
    DegreeMismatch,
    IndexOutOfRange,
    InvalidInput,
    LeftChart,
    NoConvergence,
    NotEndomorphism,
    NotSurfacePresentation,
    NotTangent,
    RankInstability,
    SingularMatrix,
    UnknownGenerator,
    WordSyntaxError,
)
from .words import (
    GroupRingElement,
    Presentation,
    Word,
    fox_derivative,
    invert,
    multiply,
    parse_word,
    render_word,
)
from .numeric import Tolerances
from .matgroup import (
    GroupSpec,
    LieAlgebraBasis,
    Representation,
    TangentVector,
    adjoint_operator,
    coboundary,
    conjugate_representation,
    evaluate_groupring,
    evaluate_word,
    find_representation,
    is_irreducible,
    lie_algebra_basis,
)
from .cohomology import (
    BarChain,
    CocycleSpace,
    FundamentalCycle,
    cocycle_space,
    extend_cocycle,
    fox_jacobian,
    fundamental_two_cycle,
    pair,
    verify_cycle,
)
from .invariants import (
    InvariantPolynomial,
    check_invariance,
    combination,
    evaluate,
    killing_form,
    polarize,
    power_trace,
    trace_form,
)
from .forms import (
    EtaContext,
    conjugation_invariance,
    contraction_suite,
    cup_cocycle,
    endomorphism_pullback,
    eta,
    gram_matrix,
    make_context,
)
from .charts import (
    Chart,
    eta_coefficients,
    fd_exterior_derivative,
    free_group_demo,
    retract,
    transported_direction,
)
from .families import (
    FamilySpec,
    Poly,
    base_change,
    compare_base_change,
    family_pullback,
    family_tangent,
)

__version__ = "0.1.0"
