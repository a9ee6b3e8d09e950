"""Exact computations with derivations and automorphisms of Q[x1, ..., xn]."""
from .endomorph import (
    PolyEndo,
    apply_endo,
    compose,
    conjugate_derivation,
    fixes_euler_frame,
    fixes_partials,
    invert_bounded,
    is_shift,
    jacobian,
    jacobian_det,
    normalize_by_shift,
)
from .errors import (
    BoundExceeded,
    CapExceeded,
    CommonKernelTooLarge,
    DegreeBoundExceeded,
    DerautoError,
    HypothesisError,
    NonConstantTerminal,
    NotCommutingError,
    NotInvertibleError,
    NotLNDError,
    SeedInKernel,
    VerificationFailed,
)
from .liederiv import (
    Derivation,
    DerivationSubspace,
    GradedComponent,
    apply,
    bracket,
    centralizer_bounded,
    graded_component,
    graded_decompose,
    ideal_closure_bounded,
    module_orbit_bounded,
)
from .lndkit import (
    KernelBasis,
    SliceCertificate,
    common_kernel_bounded,
    is_lnd_bounded,
    kernel_basis_bounded,
    local_slice,
    nilpotency_index,
)
from .parsing import ParseError, parse, parse_deriv, parse_endo, parse_poly
from .polyalg import Polynomial, nullspace, partial_derivative, poly_add, poly_mul, substitute
from .recover import (
    CoordinateSystem,
    RecoveryReport,
    construct_coordinates,
    main_theorem_roundtrip,
    recover_automorphism,
)

__version__ = "0.1.0"
