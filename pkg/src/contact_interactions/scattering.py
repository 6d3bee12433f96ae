"""Scattering off a connection matrix, for distinguishable and identical particles.

One-sided problem: A e^{ikx} + B e^{-ikx} on the left, e^{ikx} on the right,

    (A, B)^T = 1/(2ik) [[1, ik], [-1, ik]] V^{-1} (ik, 1)^T,

with T = |1/A|^2 and R = |B/A|^2.

Identical particles in the relative coordinate: e^{ikx} + C e^{-ikx} on the
left and its exchange image on the right, which turns the connection condition
into the homogeneous system

    [L -+ V Rm] (1, C)^T = 0,  L = [[-ik, ik], [1, 1]],  Rm = [[ik, -ik], [1, 1]],

upper sign for bosons, lower for fermions.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np

from .connections import require_unimodular
from .connections import v_delta
from .connections import v_epsilon
from .exceptions import DualityViolationError
from .exceptions import InvalidParameterError
from .exceptions import NumericalFailureError
from .schema import DET_TOL_PRIMITIVE
from .schema import DualityReport
from .schema import ExchangeDualityReport
from .schema import ExchangeResult
from .schema import InteractionChain
from .schema import Mat2R
from .schema import PointInteraction
from .schema import ScatteringResult
from .schema import Statistics
from .schema import WaveState
from .transfer import chain_connection
from .transfer import propagate

logger = logging.getLogger(__name__)

EXCHANGE_RESIDUAL_TOL = 1e-9
ELASTICITY_TOL = 1e-12
DUALITY_TOL = 1e-12


def _require_wavenumber(k: float) -> None:
    if not math.isfinite(k) or k <= 0:
        raise InvalidParameterError(f"wavenumber must be positive and finite, got k={k!r}", context={"k": k})


def _amplitudes(matrix: Mat2R, k: float) -> ScatteringResult:
    ik = 1j * k
    w = propagate(matrix.inverse(), WaveState(dphi=ik, phi=1 + 0j)).as_array()
    a_amp = complex((w[0] + ik * w[1]) / (2.0 * ik))
    b_amp = complex((-w[0] + ik * w[1]) / (2.0 * ik))
    return ScatteringResult(
        A=a_amp,
        B=b_amp,
        T=abs(1.0 / a_amp) ** 2,
        R=abs(b_amp / a_amp) ** 2,
        k=k,
    )


def scatter(matrix: Mat2R, k: float, det_tol: float = DET_TOL_PRIMITIVE) -> ScatteringResult:
    """Amplitudes and coefficients for a wave incident from the left.

    Raises:
        InvalidParameterError: If k <= 0
        NonUnimodularError: If det(matrix) is not 1 within det_tol
    """
    _require_wavenumber(k)
    require_unimodular(matrix, det_tol)
    return _amplitudes(matrix, k)


def t_delta_closed(v: float, k: float) -> tuple[float, float]:
    """(T, R) of a delta potential: T = k^2 / (k^2 + (v/2)^2)."""
    _require_wavenumber(k)
    half = (v / 2.0) ** 2
    return k**2 / (k**2 + half), half / (k**2 + half)


def t_epsilon_closed(u: float, k: float) -> tuple[float, float]:
    """(T, R) of an epsilon potential: T = (2/u)^2 / (k^2 + (2/u)^2); u = 0 is free."""
    _require_wavenumber(k)
    if u == 0:
        return 1.0, 0.0
    scale = (2.0 / u) ** 2
    return scale / (k**2 + scale), k**2 / (k**2 + scale)


def scatter_chain(chain: InteractionChain | Sequence[PointInteraction], k: float) -> ScatteringResult:
    """Scatter through a finite chain.

    The incident and reflected waves are phase-referenced at the first site and
    the transmitted wave at the last site, so T and R do not depend on where
    the chain sits. Every site is unimodular, so rounding drift in the composed
    determinant is divided out instead of rejected.

    Raises:
        InvalidParameterError: If k <= 0
        NumericalFailureError: If the composed determinant is not positive
    """
    _require_wavenumber(k)
    total = chain_connection(chain, k)
    det = total.det()
    if not det > 0:
        raise NumericalFailureError(
            f"composed chain matrix has det={det!r}", context={"det": det, "k": k, "entries": total.entries()}
        )
    return _amplitudes(Mat2R.from_array(total.as_array() / math.sqrt(det)), k)


def duality_check(v: float, k: float, tol: float = DUALITY_TOL) -> DualityReport:
    """Compare delta(v) at k with epsilon(u = v) at 1/k.

    Raises:
        InvalidParameterError: If v == 0 or k <= 0
        DualityViolationError: If T or R differ by more than tol
    """
    _require_wavenumber(k)
    if v == 0:
        raise InvalidParameterError("duality check needs a nonzero strength", context={"v": v})

    delta = scatter(v_delta(v), k)
    epsilon = scatter(v_epsilon(v), 1.0 / k)
    report = DualityReport(v=v, k=k, t_delta=delta.T, t_epsilon=epsilon.T, r_delta=delta.R, r_epsilon=epsilon.R)
    if report.deviation > tol:
        raise DualityViolationError(
            f"T_delta(k) and T_epsilon(1/k) differ by {report.deviation:.3e} at v={v}, k={k}",
            context={"v": v, "k": k, "deviation": report.deviation},
        )
    return report


def is_exchange_symmetric(matrix: Mat2R, tol: float = DET_TOL_PRIMITIVE) -> bool:
    """True when the connection matrix is parity invariant (t = s).

    Only such matrices admit an exchange-symmetric two-body solution.
    """
    t, _, _, s = matrix.entries()
    return abs(t - s) <= tol * max(1.0, abs(t), abs(s))


def _exchange_system(matrix: Mat2R, k: float, statistics: Statistics) -> np.ndarray:
    ik = 1j * k
    incoming = np.array([[-ik, ik], [1.0, 1.0]], dtype=complex)
    outgoing = np.array([[ik, -ik], [1.0, 1.0]], dtype=complex)
    sign = -1.0 if statistics == "boson" else 1.0
    return incoming + sign * (matrix.as_array() @ outgoing)


def scatter_identical(matrix: Mat2R, k: float, statistics: Statistics) -> ExchangeResult:
    """Two-body scattering coefficient C for identical bosons or fermions.

    C is solved from the row whose C-coefficient is larger in magnitude; the
    other row must be satisfied to 1e-9 of its norm.

    Raises:
        InvalidParameterError: If k <= 0 or statistics is unknown
        NonUnimodularError: If det(matrix) is not 1
        NumericalFailureError: If the rows are inconsistent (matrix not parity
            invariant) or the solution is not of unit modulus
    """
    _require_wavenumber(k)
    if statistics not in ("boson", "fermion"):
        raise InvalidParameterError(f"statistics must be boson or fermion, got {statistics!r}")
    require_unimodular(matrix)

    system = _exchange_system(matrix, k, statistics)
    pivot = 0 if abs(system[0, 1]) >= abs(system[1, 1]) else 1
    other = 1 - pivot
    if system[pivot, 1] == 0:
        raise NumericalFailureError("exchange system has no C dependence", context={"k": k, "statistics": statistics})

    c_amp = complex(-system[pivot, 0] / system[pivot, 1])
    residual = abs(system[other, 0] + system[other, 1] * c_amp)
    row_norm = float(np.linalg.norm(system[other]))
    if residual > EXCHANGE_RESIDUAL_TOL * row_norm:
        raise NumericalFailureError(
            f"exchange rows are inconsistent (residual {residual:.3e}); "
            f"the connection matrix must satisfy t = s for identical particles",
            context={"residual": residual, "row_norm": row_norm, "entries": matrix.entries()},
        )
    if abs(abs(c_amp) - 1.0) > ELASTICITY_TOL:
        raise NumericalFailureError(f"|C| = {abs(c_amp)!r} is not 1", context={"C": c_amp})

    logger.debug(f"{statistics} C={c_amp} at k={k} (pivot row {pivot})")
    return ExchangeResult(C=c_amp, statistics=statistics, k=k)


def exchange_delta_closed(v: float, k: float, statistics: Statistics) -> complex:
    """C for delta(v): (2ik + v)/(2ik - v) for bosons, the free value -1 for fermions."""
    _require_wavenumber(k)
    if statistics == "fermion":
        return complex(-1.0)
    return (2j * k + v) / (2j * k - v)


def exchange_epsilon_closed(u: float, k: float, statistics: Statistics) -> complex:
    """C for epsilon(u): (2ik + 4/u)/(2ik - 4/u) for fermions, 1 for bosons."""
    _require_wavenumber(k)
    if statistics == "boson":
        return complex(1.0)
    if u == 0:
        return complex(-1.0)
    return (2j * k + 4.0 / u) / (2j * k - 4.0 / u)


def fermion_boson_duality_check(v: float, u: float, k: float, tol: float = DUALITY_TOL) -> ExchangeDualityReport:
    """Fermions on epsilon(u) against bosons on delta(v), for vu = 4.

    Raises:
        InvalidParameterError: If |vu - 4| > 1e-12 or k <= 0
        DualityViolationError: If the two C values differ by more than tol
    """
    _require_wavenumber(k)
    if abs(v * u - 4.0) > DUALITY_TOL:
        raise InvalidParameterError(f"duality requires vu = 4, got vu = {v * u!r}", context={"v": v, "u": u})

    fermion = scatter_identical(v_epsilon(u), k, "fermion")
    boson = scatter_identical(v_delta(v), k, "boson")
    report = ExchangeDualityReport(v=v, u=u, k=k, c_epsilon_fermion=fermion.C, c_delta_boson=boson.C)
    if report.deviation > tol:
        raise DualityViolationError(
            f"C_epsilon(fermion) and C_delta(boson) differ by {report.deviation:.3e}",
            context={"v": v, "u": u, "k": k, "deviation": report.deviation},
        )
    return report
