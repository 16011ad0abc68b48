"""Empirical geometry of elementary quantum systems of the Euclidean group.

Spin-weighted harmonics, the operator algebra of the unitary irreducible
E(3) representations, classical centre-of-mass lines, and the empirical
distance, angle and volume built from E(3)-invariant observables.
"""

from .classical import (ClassicalSystem, E3Element, Line3, casimirs, com_line,
                        e3_bracket, empirical_angle_classical,
                        empirical_distance_classical, empirical_volume_classical,
                        euclidean_line_distance, relative_position,
                        system_from_line, varpi_angle)
from .empirical import (E3Placement, PairGeometry, PlacedState,
                        classical_limit_distance, cos_beta12, empirical_angle,
                        empirical_distance, empirical_volume, euler_to_rotation,
                        large_j_distance_limit, line_to_placement,
                        minimal_empirical_angle, pair_Dsq, pair_Dsq_com,
                        pair_numerator, uncertainty)
from .errors import (DegenerateSystemError, DomainError,
                     InternalConsistencyError, RangeError, UndefinedAngleError,
                     UndefinedUncertaintyError)
from .operators import (ElementaryParams, StateVector, apply, j_element,
                        moment, p_element, second_moments_closed, spectra)
from .oracle import VerificationReport, quadrature_matrix_element, run_suite
from .qnum import HalfInt, QNum, basis_indices
from .swsh import (SpherePoint, edth_ladder, eval_harmonic, product_expand_y1,
                   wigner_small_d)

__version__ = "0.1.0"
