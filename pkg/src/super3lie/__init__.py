"""Exact-arithmetic toolkit for finite-dimensional 3-Lie superalgebras."""

from .algebra import (AlgebraReport, DerivationSpace, ThreeLieSuperalgebra,
                      Violation, adjoint_action, derivation_space,
                      is_superderivation, leibniz_bracket_F, skew_orbit,
                      verify_algebra)
from .cohomology import (Cochain, CochainBasis, CohomologySpace, coboundary,
                         coboundary_matrix, coboundary_p1, coboundary_p2,
                         coboundary_preimage, coboundary_space, cocycle_space,
                         cohomology, eval_cochain, is_cocycle, is_fully_skew,
                         skew_cocycle_space)
from .errors import (ArityMismatch, DimensionCapExceeded, InvalidAlgebra,
                     InvalidExtension, InvalidRepresentation, LabelUnknown,
                     LevelCapExceeded, NotACocycle, NotASubspace,
                     NotCompatible, NotExtensible, NotInSubspace,
                     OddPairUnsupported, ParseError, SkewInconsistent,
                     SpaceMismatch, Super3LieError)
from .extension import (ExtensionData, ExtensionReport, SplitResult,
                        build_extension, extract_omega, extract_phi,
                        h1_zero_implies_split, is_split,
                        section_is_homomorphism, validate_extension)
from .graded import (EVEN, ODD, GradedLinearMap, SuperSpace, WedgeBasis,
                     compose_graded, supercommutator, wedge_basis,
                     wedge_expand)
from .linalg import (Matrix, QuotientData, Scalar, Subspace, kernel_basis,
                     quotient_data, rref, solve)
from .obstruction import (CompatiblePairSpace, DerivationPair, H1Action,
                          LiftedDerivation, ObstructionResult, WitnessReport,
                          check_extensible_witness, compatible_pair_space,
                          extension_obstruction, is_compatible, lift_pair,
                          obstruction_cochain, pair_supercommutator,
                          psi_action)
from .representation import (Representation, RepresentationReport,
                             adjoint_representation, phi_eval,
                             verify_representation)

__version__ = "0.1.0"
