"""Transfer-matrix algebra for (phi', phi) boundary values.

Free propagation across a gap x at wavenumber k is the SL(2,R) matrix

    G(k; x) = [[cos kx, -k sin kx], [sin(kx)/k, cos kx]] = exp(H(k) x),
    H(k)    = [[0, -k^2], [1, 0]],

and a chain of point interactions at x_1 < ... < x_n connects the data just
left of x_1 to the data just right of x_n through

    P_n G(k; x_n - x_{n-1}) P_{n-1} ... G(k; x_2 - x_1) P_1.
"""

import logging
import math
from collections.abc import Sequence
from functools import reduce

from .exceptions import InvalidParameterError
from .schema import DET_TOL_COMPOSED
from .schema import InteractionChain
from .schema import Mat2R
from .schema import PointInteraction
from .schema import WaveState

logger = logging.getLogger(__name__)


def _require_wavenumber(k: float) -> None:
    if not math.isfinite(k) or k <= 0:
        raise InvalidParameterError(f"wavenumber must be positive and finite, got k={k!r}", context={"k": k})


def mat_compose(a: Mat2R, b: Mat2R) -> Mat2R:
    """Matrix product a @ b."""
    return Mat2R.from_array(a.as_array() @ b.as_array())


def compose_all(*matrices: Mat2R) -> Mat2R:
    """Left-to-right product of any number of matrices; identity when empty."""
    return reduce(mat_compose, matrices, Mat2R.identity())


def free_generator(k: float) -> Mat2R:
    """Generator H(k) of free evolution, Psi'(x) = H(k) Psi(x)."""
    _require_wavenumber(k)
    return Mat2R(m11=0.0, m12=-(k**2), m21=1.0, m22=0.0)


def free_propagator(k: float, x: float) -> Mat2R:
    """Exact free propagator G(k; x) across a signed distance x."""
    _require_wavenumber(k)
    if not math.isfinite(x):
        raise InvalidParameterError(f"distance must be finite, got x={x!r}", context={"x": x})
    c = math.cos(k * x)
    s = math.sin(k * x)
    return Mat2R(m11=c, m12=-k * s, m21=s / k, m22=c)


def free_propagator_linearized(k: float, a: float) -> Mat2R:
    """First-order expansion [[1, -k^2 a], [a, 1]] of G(k; a) for small a.

    Not unimodular: its determinant is 1 + k^2 a^2.
    """
    if a < 0:
        raise InvalidParameterError(f"gap must be non-negative, got a={a!r}", context={"a": a})
    return Mat2R(m11=1.0, m12=-(k**2) * a, m21=a, m22=1.0)


def propagate(matrix: Mat2R, state: WaveState) -> WaveState:
    """Apply a connection or transfer matrix to a boundary-value vector."""
    return WaveState(
        dphi=matrix.m11 * state.dphi + matrix.m12 * state.phi,
        phi=matrix.m21 * state.dphi + matrix.m22 * state.phi,
    )


def _as_chain(chain: InteractionChain | Sequence[PointInteraction]) -> InteractionChain:
    if isinstance(chain, InteractionChain):
        return chain
    return InteractionChain(interactions=list(chain))


def chain_factors(chain: InteractionChain | Sequence[PointInteraction], k: float) -> list[Mat2R]:
    """Point and gap matrices of a chain in matrix-product order (rightmost site first)."""
    _require_wavenumber(k)
    items = _as_chain(chain).interactions
    factors: list[Mat2R] = []
    for index in range(len(items) - 1, -1, -1):
        factors.append(items[index].matrix())
        if index > 0:
            factors.append(free_propagator(k, items[index].position - items[index - 1].position))
    return factors


def chain_connection(chain: InteractionChain | Sequence[PointInteraction], k: float) -> Mat2R:
    """Total connection matrix from just left of the first site to just right of the last.

    Only the gaps between sites enter, so the result is invariant under a rigid
    translation of the chain. An empty chain gives the identity.
    """
    chain = _as_chain(chain)
    total = compose_all(*chain_factors(chain, k))
    drift = abs(total.det() - 1.0)
    if drift > DET_TOL_COMPOSED:
        logger.warning(f"Chain of {len(chain)} sites at k={k} has det drift {drift:.3e}")
    logger.debug(f"Composed chain of {len(chain)} sites at k={k}")
    return total
