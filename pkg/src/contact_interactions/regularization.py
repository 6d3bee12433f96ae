"""Finite-width realization of the epsilon potential by three nearby deltas.

The potential v1 delta(x+a) + v0 delta(x) + v1 delta(x-a) connects (-a)_- to
a_+ through V_delta(v1) G(k;a) V_delta(v0) G(k;a) V_delta(v1). With fixed
couplings the a -> 0 limit is a single delta of strength v0 + 2 v1. With

    v0(a) = u / a^2,    v1(a) = 2/u - 1/a

the limit is V_epsilon(u) for every k, and the approach is first order in a.
"""

import logging
import math

import numpy as np

from .connections import decomposition_to_chain
from .connections import v_delta
from .connections import v_epsilon
from .exceptions import InvalidParameterError
from .exceptions import NumericalFailureError
from .schema import ConvergencePoint
from .schema import ConvergenceReport
from .schema import Decomposition
from .schema import DeltaInteraction
from .schema import InteractionChain
from .schema import Mat2R
from .schema import ThreeDeltaConfig
from .transfer import compose_all
from .transfer import free_propagator
from .transfer import free_propagator_linearized

logger = logging.getLogger(__name__)


def _require_gap(a: float) -> None:
    if not math.isfinite(a) or a < 0:
        raise InvalidParameterError(f"half-spacing must be non-negative, got a={a!r}", context={"a": a})


def _require_first_branch(cfg: ThreeDeltaConfig) -> None:
    if cfg.a * cfg.k >= math.pi:
        raise InvalidParameterError(
            f"a*k must stay below pi, got a={cfg.a!r}, k={cfg.k!r}",
            context={"a": cfg.a, "k": cfg.k},
        )


def three_delta_matrix(v0: float, v1: float, a: float, k: float) -> Mat2R:
    """Exact connection matrix of three deltas (v1, v0, v1) at (-a, 0, a).

    Evaluated left to right so that the 1/a^2 central coupling only ever meets
    factors that are O(a), keeping rounding at the eps/a level.
    """
    _require_gap(a)
    gap = free_propagator(k, a)
    return compose_all(v_delta(v1), gap, v_delta(v0), gap, v_delta(v1))


def three_delta_linearized_product(v0: float, v1: float, a: float, k: float) -> Mat2R:
    """The same product assembled with the linearized free propagator."""
    _require_gap(a)
    gap = free_propagator_linearized(k, a)
    return compose_all(v_delta(v1), gap, v_delta(v0), gap, v_delta(v1))


def three_delta_linearized(v0: float, v1: float, a: float, k: float) -> Mat2R:
    """Closed-form entries of the linearized three-delta product."""
    _require_gap(a)
    diagonal = 1.0 + (v0 + 2.0 * v1 + v0 * v1 * a - k**2 * a) * a
    upper = v0 + 2.0 * v1 + 2.0 * v1 * a * (v0 + v1 - k**2 * a) + v0 * v1**2 * a**2 - 2.0 * k**2 * a
    lower = 2.0 * a + v0 * a**2
    return Mat2R(m11=diagonal, m12=upper, m21=lower, m22=diagonal)


def fixed_coupling_limit_error(v0: float, v1: float, a: float, k: float) -> float:
    """Distance from the fixed-coupling three-delta matrix to V_delta(v0 + 2 v1)."""
    return three_delta_matrix(v0, v1, a, k).max_abs_diff(v_delta(v0 + 2.0 * v1))


def three_delta_exact(cfg: ThreeDeltaConfig) -> Mat2R:
    """Exact three-delta matrix with the epsilon-scaled couplings of cfg.

    Raises:
        InvalidParameterError: If a*k >= pi
    """
    _require_first_branch(cfg)
    return three_delta_matrix(cfg.v0, cfg.v1, cfg.a, cfg.k)


def three_delta_linearized_elements(cfg: ThreeDeltaConfig) -> Mat2R:
    """Closed-form linearized entries with the epsilon-scaled couplings of cfg.

    The diagonal reduces to 1 + (4/u) a - k^2 a^2 and the lower-left entry to
    2a + u.
    """
    return three_delta_linearized(cfg.v0, cfg.v1, cfg.a, cfg.k)


def three_delta_chain(cfg: ThreeDeltaConfig, center: float = 0.0) -> InteractionChain:
    """The three deltas of cfg as a physical chain around center."""
    return InteractionChain(
        interactions=[
            DeltaInteraction(strength=cfg.v1, position=center - cfg.a),
            DeltaInteraction(strength=cfg.v0, position=center),
            DeltaInteraction(strength=cfg.v1, position=center + cfg.a),
        ]
    )


def _fit_power_law(a_values: list[float], errors: list[float]) -> tuple[float, float]:
    slope, intercept = np.polyfit(np.log(a_values), np.log(errors), 1)
    return float(slope), float(math.exp(intercept))


def convergence_study(u: float, k: float, a_list: list[float]) -> ConvergenceReport:
    """Measure ||three_delta_exact - V_epsilon(u)||_max along a decreasing a-grid.

    The fitted order is the unweighted least-squares slope of log(error)
    against log(a).

    Raises:
        InvalidParameterError: If fewer than 3 a-values, or they are not strictly decreasing
        NumericalFailureError: If an error vanishes exactly (log undefined)
    """
    if len(a_list) < 3:
        raise InvalidParameterError(
            f"convergence study needs at least 3 a-values, got {len(a_list)}", context={"a_list": a_list}
        )
    if any(not later < earlier for earlier, later in zip(a_list, a_list[1:])):
        raise InvalidParameterError("a-values must be strictly decreasing", context={"a_list": a_list})

    target = v_epsilon(u)
    points: list[ConvergencePoint] = []
    for a in a_list:
        cfg = ThreeDeltaConfig(u=u, a=a, k=k)
        error = three_delta_exact(cfg).max_abs_diff(target)
        if error <= 0:
            raise NumericalFailureError(f"zero error at a={a!r}; cannot fit an order", context={"a": a})
        points.append(ConvergencePoint(a=a, error=error))
        logger.debug(f"u={u}, k={k}, a={a:.3e}: error {error:.6e}")

    order, constant = _fit_power_law([p.a for p in points], [p.error for p in points])
    logger.info(f"Convergence to V_epsilon({u}) at k={k}: order {order:.4f}, constant {constant:.4g}")
    return ConvergenceReport(
        u=u,
        k=k,
        points=points,
        fitted_order=order,
        error_constant=constant,
        target_matrix=target,
    )


def realize_with_deltas(decomposition: Decomposition, b: float, a: float) -> InteractionChain:
    """Chain of delta potentials only whose zero-range limit is the decomposed matrix.

    Factors are laid out at spacing b as in decomposition_to_chain; each
    epsilon site of strength u is then replaced by the three-delta triple of
    half-spacing a around it. Zero-strength epsilon factors are the identity
    and are dropped.

    Raises:
        InvalidParameterError: If a is not in (0, b/2)
    """
    if not (0 < a < b / 2):
        raise InvalidParameterError(
            f"half-spacing must satisfy 0 < a < b/2, got a={a!r}, b={b!r}", context={"a": a, "b": b}
        )
    layout = decomposition_to_chain(decomposition, b)
    interactions: list[DeltaInteraction] = []
    for site in layout.interactions:
        if site.kind == "delta":
            interactions.append(DeltaInteraction(strength=site.strength, position=site.position))
        elif site.strength != 0:
            v0 = site.strength / a**2
            v1 = 2.0 / site.strength - 1.0 / a
            interactions.extend(
                [
                    DeltaInteraction(strength=v1, position=site.position - a),
                    DeltaInteraction(strength=v0, position=site.position),
                    DeltaInteraction(strength=v1, position=site.position + a),
                ]
            )
    logger.debug(f"Realized {len(decomposition.steps)} factors as {len(interactions)} deltas (b={b}, a={a})")
    return InteractionChain(interactions=interactions)
