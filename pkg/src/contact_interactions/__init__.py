"""Contact Interactions - connection matrices, delta/epsilon factorization and scattering."""

from .connections import decompose
from .connections import decomposition_to_chain
from .connections import reconstruction_error
from .connections import v_delta
from .connections import v_epsilon
from .connections import v_general
from .exceptions import ChainFileError
from .exceptions import ChainOrderError
from .exceptions import ContactInteractionError
from .exceptions import DualityViolationError
from .exceptions import InvalidParameterError
from .exceptions import NonUnimodularError
from .exceptions import NumericalFailureError
from .loader import load_chain_file
from .loader import parse_chain
from .regularization import convergence_study
from .regularization import realize_with_deltas
from .regularization import three_delta_chain
from .regularization import three_delta_exact
from .regularization import three_delta_linearized_elements
from .schema import ConvergenceReport
from .schema import Decomposition
from .schema import DecompositionStep
from .schema import DeltaInteraction
from .schema import EpsilonInteraction
from .schema import ExchangeResult
from .schema import GeneralInteraction
from .schema import InteractionChain
from .schema import Mat2R
from .schema import ScatteringResult
from .schema import ThreeDeltaConfig
from .schema import WaveState
from .scattering import duality_check
from .scattering import fermion_boson_duality_check
from .scattering import scatter
from .scattering import scatter_chain
from .scattering import scatter_identical
from .scattering import t_delta_closed
from .scattering import t_epsilon_closed
from .transfer import chain_connection
from .transfer import free_propagator
from .transfer import free_propagator_linearized
from .transfer import mat_compose

__all__ = [
    # Transfer algebra
    "mat_compose",
    "free_propagator",
    "free_propagator_linearized",
    "chain_connection",
    # Connection matrices
    "v_delta",
    "v_epsilon",
    "v_general",
    "decompose",
    "decomposition_to_chain",
    "reconstruction_error",
    # Regularization
    "three_delta_exact",
    "three_delta_linearized_elements",
    "three_delta_chain",
    "convergence_study",
    "realize_with_deltas",
    # Scattering
    "scatter",
    "scatter_chain",
    "scatter_identical",
    "t_delta_closed",
    "t_epsilon_closed",
    "duality_check",
    "fermion_boson_duality_check",
    # Chain files
    "load_chain_file",
    "parse_chain",
    # Schemas
    "Mat2R",
    "WaveState",
    "DeltaInteraction",
    "EpsilonInteraction",
    "GeneralInteraction",
    "InteractionChain",
    "Decomposition",
    "DecompositionStep",
    "ThreeDeltaConfig",
    "ConvergenceReport",
    "ScatteringResult",
    "ExchangeResult",
    # Exceptions
    "ContactInteractionError",
    "InvalidParameterError",
    "NonUnimodularError",
    "ChainOrderError",
    "NumericalFailureError",
    "DualityViolationError",
    "ChainFileError",
]

__version__ = "0.1.0"
