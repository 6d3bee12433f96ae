"""Delta, epsilon and general connection matrices, and their delta/epsilon factorization.

Any [[t, v], [u, s]] with ts - uv = 1 splits into primitives:

- u != 0:  V_delta((t-1)/u) V_epsilon(u) V_delta((s-1)/u)
- v != 0:  V_epsilon((s-1)/v) V_delta(v) V_epsilon((t-1)/v)
- u = v = 0, t = +-rho^2:
      V_delta(rho) V_epsilon(-1/rho) V_delta(rho) V_delta(-+1/rho) V_epsilon(+-rho) V_delta(-+1/rho)
"""

import logging
import math
from typing import Literal

from .exceptions import InvalidParameterError
from .exceptions import NonUnimodularError
from .schema import DET_TOL_PRIMITIVE
from .schema import Decomposition
from .schema import DecompositionStep
from .schema import DeltaInteraction
from .schema import EpsilonInteraction
from .schema import InteractionChain
from .schema import Mat2R

logger = logging.getLogger(__name__)

BRANCH_TAU = 1e-9
"""Off-diagonal magnitude below which an entry counts as zero for branch selection."""

PIVOT_RATIO = 1e-3
"""Smallest |u|/|v| for which the default strategy still pivots on u."""

DecomposeStrategy = Literal["u-first", "larger"]


def v_delta(v: float) -> Mat2R:
    """Connection matrix [[1, v], [0, 1]] of a delta potential of strength v."""
    return Mat2R(m11=1.0, m12=v, m21=0.0, m22=1.0)


def v_epsilon(u: float) -> Mat2R:
    """Connection matrix [[1, 0], [u, 1]] of an epsilon potential of strength u.

    It is the transpose of the delta matrix of the same strength.
    """
    return v_delta(u).transpose()


def require_unimodular(matrix: Mat2R, tol: float = DET_TOL_PRIMITIVE) -> Mat2R:
    """Return the matrix unchanged, or raise NonUnimodularError."""
    det = matrix.det()
    if abs(det - 1.0) > tol:
        raise NonUnimodularError(
            f"connection matrix must have det 1, got det={det!r}",
            context={"det": det, "tolerance": tol, "entries": matrix.entries()},
        )
    return matrix


def v_general(t: float, v: float, u: float, s: float) -> Mat2R:
    """General connection matrix [[t, v], [u, s]] with ts - uv = 1."""
    return require_unimodular(Mat2R.from_entries(t, v, u, s))


def _delta(strength: float) -> DecompositionStep:
    return DecompositionStep(kind="delta", strength=strength)


def _epsilon(strength: float) -> DecompositionStep:
    return DecompositionStep(kind="epsilon", strength=strength)


def _diagonal_steps(t: float) -> list[DecompositionStep]:
    if t == 0:
        raise InvalidParameterError("diagonal connection matrix cannot have t = 0", context={"t": t})
    rho = math.sqrt(abs(t))
    sign = 1.0 if t > 0 else -1.0
    return [
        _delta(rho),
        _epsilon(-1.0 / rho),
        _delta(rho),
        _delta(-sign / rho),
        _epsilon(sign * rho),
        _delta(-sign / rho),
    ]


def decompose(matrix: Mat2R, strategy: DecomposeStrategy = "u-first") -> Decomposition:
    """Factor a unimodular connection matrix into delta and epsilon primitives.

    With the default strategy the delta-epsilon-delta form is used whenever
    |u| > BRANCH_TAU and |u| >= PIVOT_RATIO * |v|, then epsilon-delta-epsilon
    when |v| > BRANCH_TAU, and the six-factor diagonal form otherwise.
    ``strategy="larger"`` picks the three-factor form whose pivot (u or v) has
    the larger magnitude.

    Raises:
        NonUnimodularError: If det(matrix) differs from 1 by more than 1e-12
    """
    require_unimodular(matrix)
    t, v, u, s = matrix.entries()

    use_u = abs(u) > BRANCH_TAU
    use_v = abs(v) > BRANCH_TAU
    if use_u and use_v:
        if strategy == "larger":
            use_u = abs(u) >= abs(v)
        else:
            use_u = abs(u) >= PIVOT_RATIO * abs(v)

    if use_u:
        steps = [_delta((t - 1.0) / u), _epsilon(u), _delta((s - 1.0) / u)]
        branch = "delta-epsilon-delta"
    elif use_v:
        steps = [_epsilon((s - 1.0) / v), _delta(v), _epsilon((t - 1.0) / v)]
        branch = "epsilon-delta-epsilon"
    else:
        if u != 0 or v != 0:
            logger.warning(f"Off-diagonals u={u!r}, v={v!r} below {BRANCH_TAU}; using the diagonal form")
        steps = _diagonal_steps(t)
        branch = "diagonal"

    logger.debug(f"Decomposed {matrix.entries()} via {branch} branch")
    return Decomposition(steps=steps, branch=branch)


def reconstruction_error(matrix: Mat2R, decomposition: Decomposition) -> float:
    """Max-norm distance between a matrix and the product of its factors."""
    return decomposition.product().max_abs_diff(matrix)


def decomposition_to_chain(decomposition: Decomposition, b: float, center: float = 0.0) -> InteractionChain:
    """Place decomposition factors as physical point interactions at spacing b.

    The rightmost factor goes to the smallest position, so for the
    delta-epsilon-delta form the sites are (s-1)/u delta at center - b,
    u epsilon at center, (t-1)/u delta at center + b. The chain's connection
    matrix tends to the decomposed matrix as b -> 0.
    """
    if not math.isfinite(b) or b <= 0:
        raise InvalidParameterError(f"spacing must be positive, got b={b!r}", context={"b": b})

    spatial = list(reversed(decomposition.steps))
    offset = (len(spatial) - 1) / 2.0
    interactions: list[DeltaInteraction | EpsilonInteraction] = []
    for index, step in enumerate(spatial):
        position = center + (index - offset) * b
        if step.kind == "delta":
            interactions.append(DeltaInteraction(strength=step.strength, position=position))
        else:
            interactions.append(EpsilonInteraction(strength=step.strength, position=position))
    return InteractionChain(interactions=interactions)
