"""Single-qubit Hadamard-type gates, their admissible state families, and
numerical verification of the transformations they implement."""

from .qcore import (
    ComplementConvention,
    DomainError,
    GateMatrix,
    NonUnitaryError,
    NormalizationError,
    QubitState,
    ValidationError,
    apply,
    complement,
    equal_up_to_global_phase,
    inner_product,
    state_distance,
    unitarity_residual,
)
from .gates import (
    SuperpositionWeights,
    canonical_phase,
    equatorial_gate,
    hadamard,
    polar_gate,
    symmetric_u,
    unequal_equatorial,
    unequal_general,
    unequal_polar_gate,
)
from .ensembles import (
    FamilySweep,
    UnequalKind,
    UnequalParams,
    equatorial_state,
    polar_circle_state,
    theorem1_state,
    theorem3_state,
    unequal_family_state,
)
from .verify import (
    EQUATORIAL_TEMPLATE,
    HADAMARD_TEMPLATE,
    POLAR_TEMPLATE,
    DerivedFamily,
    FamilyMatch,
    ResidualReport,
    TransformTemplate,
    check_inner_products,
    check_pair,
    derive_family,
    family_match,
)
from .bloch import (
    BlochPoint,
    Intersection,
    circle_intersections,
    closed_form_point,
    hausdorff_distance,
    to_bloch,
    trajectory,
)

__all__ = [name for name in dir() if not name.startswith("_")]
