"""Driven cavity-emitter simulator: global-basis Lindblad steady states,
emission spectra and dressed-level tracking on the truncated
Fock (x) two-level space."""

__version__ = "0.1.0"

from .operators import (SpaceConfig, Operator, DensityMatrix, OperatorSet,
                        build_space, build_operators, expectation,
                        density_matrix, trace_distance)
from .model import SystemParams, JcLevel, build_h_system, jc_reference_levels
from .dissipators import (EigenSystem, JumpChannel, ChannelSet,
                          diagonalize_h, decompose_channels)
from .liouvillian import (Superoperator, SteadyState, assemble_liouvillian,
                          steady_state, propagate, master_rhs,
                          liouvillian_matrix, vec, unvec,
                          DegenerateSteadyStateError, PropagationError)
