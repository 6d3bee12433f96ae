"""Pydantic schemas for connection matrices, point interactions and results."""

from __future__ import annotations

import math
from typing import Annotated
from typing import Any
from typing import Literal

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import field_validator
from pydantic import model_validator

from .exceptions import ChainOrderError
from .exceptions import InvalidParameterError
from .exceptions import NonUnimodularError

DET_TOL_PRIMITIVE = 1e-12
DET_TOL_COMPOSED = 1e-10

Statistics = Literal["boson", "fermion"]
StepKind = Literal["delta", "epsilon"]


class Mat2R(BaseModel):
    """Real 2x2 matrix acting on the boundary-value vector (phi', phi).

    Units are tracked by convention only: m12 carries 1/length when it holds a
    delta strength, m21 carries length when it holds an epsilon strength.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    m11: float = Field(..., description="Row 1, column 1")
    m12: float = Field(..., description="Row 1, column 2")
    m21: float = Field(..., description="Row 2, column 1")
    m22: float = Field(..., description="Row 2, column 2")

    @classmethod
    def identity(cls) -> Mat2R:
        return cls(m11=1.0, m12=0.0, m21=0.0, m22=1.0)

    @classmethod
    def from_array(cls, arr: Any) -> Mat2R:
        """Build from any 2x2 array-like."""
        a = np.asarray(arr, dtype=float)
        if a.shape != (2, 2):
            raise ValueError(f"Expected a 2x2 array, got shape {a.shape}")
        return cls(m11=float(a[0, 0]), m12=float(a[0, 1]), m21=float(a[1, 0]), m22=float(a[1, 1]))

    @classmethod
    def from_entries(cls, t: float, v: float, u: float, s: float) -> Mat2R:
        """Build from the (t, v, u, s) reading [[t, v], [u, s]]."""
        return cls(m11=t, m12=v, m21=u, m22=s)

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=float)

    def entries(self) -> tuple[float, float, float, float]:
        """Entries in (t, v, u, s) order."""
        return (self.m11, self.m12, self.m21, self.m22)

    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def trace(self) -> float:
        return self.m11 + self.m22

    def transpose(self) -> Mat2R:
        return Mat2R(m11=self.m11, m12=self.m21, m21=self.m12, m22=self.m22)

    def inverse(self) -> Mat2R:
        """Adjugate over determinant; exact up to one rounding when det = 1."""
        det = self.det()
        if det == 0:
            raise NonUnimodularError("singular matrix has no inverse", context={"entries": self.entries()})
        return Mat2R(m11=self.m22 / det, m12=-self.m12 / det, m21=-self.m21 / det, m22=self.m11 / det)

    def is_unimodular(self, tol: float = DET_TOL_PRIMITIVE) -> bool:
        return abs(self.det() - 1.0) <= tol

    def max_abs_diff(self, other: Mat2R) -> float:
        """Entrywise max-norm distance to another matrix."""
        return float(np.max(np.abs(self.as_array() - other.as_array())))


class WaveState(BaseModel):
    """Boundary-value vector (phi'(x), phi(x)) of a wave function at a point."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    dphi: complex = Field(..., description="Derivative phi'(x)")
    phi: complex = Field(..., description="Value phi(x)")

    @classmethod
    def plane_wave(cls, k: float, amplitude: complex = 1.0, direction: Literal[1, -1] = 1) -> WaveState:
        """State of c*exp(+-ikx) at its own reference point x = 0."""
        return cls(dphi=direction * 1j * k * amplitude, phi=amplitude)

    def as_array(self) -> np.ndarray:
        return np.array([self.dphi, self.phi], dtype=complex)


class DeltaInteraction(BaseModel):
    """Delta potential v*delta(x - x0): phi continuous, phi' jumps by v*phi."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: Literal["delta"] = "delta"
    strength: float = Field(..., description="Strength v (1/length)")
    position: float = Field(0.0, description="Location x0 (length)")

    def matrix(self) -> Mat2R:
        return Mat2R(m11=1.0, m12=self.strength, m21=0.0, m22=1.0)


class EpsilonInteraction(BaseModel):
    """Epsilon potential u*epsilon(x - x0): phi' continuous, phi jumps by u*phi'."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: Literal["epsilon"] = "epsilon"
    strength: float = Field(..., description="Strength u (length)")
    position: float = Field(0.0, description="Location x0 (length)")

    def matrix(self) -> Mat2R:
        return Mat2R(m11=1.0, m12=0.0, m21=self.strength, m22=1.0)


class GeneralInteraction(BaseModel):
    """Contact interaction given directly by its SL(2,R) connection matrix."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: Literal["general"] = "general"
    connection: Mat2R = Field(..., description="Connection matrix [[t, v], [u, s]]")
    position: float = Field(0.0, description="Location x0 (length)")

    @field_validator("connection")
    @classmethod
    def _check_unimodular(cls, value: Mat2R) -> Mat2R:
        if not value.is_unimodular(DET_TOL_PRIMITIVE):
            raise NonUnimodularError(
                f"General connection matrix has det = {value.det()!r}, expected 1",
                context={"det": value.det(), "tolerance": DET_TOL_PRIMITIVE},
            )
        return value

    def matrix(self) -> Mat2R:
        return self.connection


PointInteraction = Annotated[
    DeltaInteraction | EpsilonInteraction | GeneralInteraction,
    Field(discriminator="kind"),
]


class InteractionChain(BaseModel):
    """Ordered point interactions with strictly increasing positions."""

    model_config = ConfigDict(frozen=True)

    interactions: list[PointInteraction] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_order(self) -> InteractionChain:
        positions = [item.position for item in self.interactions]
        for left, right in zip(positions, positions[1:]):
            if not right > left:
                raise ChainOrderError(
                    f"Chain positions must be strictly increasing, got {left!r} then {right!r}",
                    context={"positions": positions},
                )
        return self

    def __len__(self) -> int:
        return len(self.interactions)

    @property
    def positions(self) -> list[float]:
        return [item.position for item in self.interactions]

    def translated(self, dx: float) -> InteractionChain:
        """Same chain rigidly shifted by dx."""
        return InteractionChain(
            interactions=[item.model_copy(update={"position": item.position + dx}) for item in self.interactions]
        )


class DecompositionStep(BaseModel):
    """One delta or epsilon factor of a connection-matrix factorization."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    kind: StepKind = Field(..., description="Primitive type")
    strength: float = Field(..., description="v (1/length) for delta, u (length) for epsilon")

    def matrix(self) -> Mat2R:
        if self.kind == "delta":
            return Mat2R(m11=1.0, m12=self.strength, m21=0.0, m22=1.0)
        return Mat2R(m11=1.0, m12=0.0, m21=self.strength, m22=1.0)


class Decomposition(BaseModel):
    """Factors listed in matrix-product order.

    The leftmost factor acts last, i.e. sits at the right-hand end of the
    interaction region; the rightmost factor acts first on the left-side data.
    """

    model_config = ConfigDict(frozen=True)

    steps: list[DecompositionStep] = Field(default_factory=list)
    branch: Literal["delta-epsilon-delta", "epsilon-delta-epsilon", "diagonal", "empty"] = "empty"

    def product(self) -> Mat2R:
        result = np.eye(2)
        for step in self.steps:
            result = result @ step.matrix().as_array()
        return Mat2R.from_array(result)


class ThreeDeltaConfig(BaseModel):
    """Three deltas at -a, 0, a with couplings scaled to approach an epsilon of strength u."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    u: float = Field(..., description="Target epsilon strength (length)")
    a: float = Field(..., description="Half-spacing (length)")
    k: float = Field(..., description="Wavenumber (1/length)")

    @model_validator(mode="after")
    def _check_domain(self) -> ThreeDeltaConfig:
        if self.u == 0:
            raise InvalidParameterError("epsilon strength must be nonzero", context={"u": self.u})
        if self.a <= 0:
            raise InvalidParameterError(f"half-spacing must be positive, got a={self.a!r}", context={"a": self.a})
        if self.k <= 0:
            raise InvalidParameterError(f"wavenumber must be positive, got k={self.k!r}", context={"k": self.k})
        return self

    @property
    def v0(self) -> float:
        """Central coupling u/a^2."""
        return self.u / self.a**2

    @property
    def v1(self) -> float:
        """Outer coupling 2/u - 1/a."""
        return 2.0 / self.u - 1.0 / self.a


class ConvergencePoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float
    error: float


class ConvergenceReport(BaseModel):
    """Max-norm distance of the three-delta matrix to its zero-range target, per a."""

    model_config = ConfigDict(frozen=True)

    target: Literal["epsilon"] = "epsilon"
    u: float
    k: float
    points: list[ConvergencePoint]
    fitted_order: float = Field(..., description="Least-squares slope of log(error) against log(a)")
    error_constant: float = Field(..., description="C in error ~ C * a**p from the same fit")
    target_matrix: Mat2R

    @property
    def errors(self) -> list[float]:
        return [p.error for p in self.points]

    def is_monotonic(self) -> bool:
        return all(b < a for a, b in zip(self.errors, self.errors[1:]))

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready report."""
        return {
            "target": self.target,
            "u": self.u,
            "k": self.k,
            "points": [{"a": p.a, "error": p.error} for p in self.points],
            "fitted_order": self.fitted_order,
            "error_constant": self.error_constant,
        }


class ScatteringResult(BaseModel):
    """Amplitudes for A e^{ikx} + B e^{-ikx} -> e^{ikx} and derived coefficients."""

    model_config = ConfigDict(frozen=True)

    A: complex = Field(..., description="Incident amplitude")
    B: complex = Field(..., description="Reflected amplitude")
    T: float = Field(..., description="Transmission |1/A|^2")
    R: float = Field(..., description="Reflection |B/A|^2")
    k: float = Field(..., gt=0)


class ExchangeResult(BaseModel):
    """Two identical particles: e^{ikx} + C e^{-ikx} on the left, exchange image on the right."""

    model_config = ConfigDict(frozen=True)

    C: complex = Field(..., description="Scattering coefficient")
    statistics: Statistics
    k: float = Field(..., gt=0)

    @property
    def free_amplitude(self) -> int:
        """Value of C with no interaction: +1 for bosons, -1 for fermions."""
        return 1 if self.statistics == "boson" else -1

    @property
    def relative_amplitude(self) -> complex:
        """C measured against free propagation; exactly 1 when the interaction is inoperative."""
        return self.C / self.free_amplitude

    @property
    def phase(self) -> float:
        return math.atan2(self.C.imag, self.C.real)


class DualityReport(BaseModel):
    """T_delta(k) against T_epsilon(1/k) at u = v."""

    model_config = ConfigDict(frozen=True)

    v: float
    k: float
    t_delta: float
    t_epsilon: float
    r_delta: float
    r_epsilon: float

    @property
    def deviation(self) -> float:
        return max(abs(self.t_delta - self.t_epsilon), abs(self.r_delta - self.r_epsilon))


class ExchangeDualityReport(BaseModel):
    """Fermions on epsilon(u) against bosons on delta(v) with vu = 4."""

    model_config = ConfigDict(frozen=True)

    v: float
    u: float
    k: float
    c_epsilon_fermion: complex
    c_delta_boson: complex

    @property
    def deviation(self) -> float:
        return abs(self.c_epsilon_fermion - self.c_delta_boson)


class SweepSpec(BaseModel):
    """k-sweep request for the command line.

    A single-point sweep has k_min == k_max and k_count == 1.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    quantity: Literal["T", "R", "C_phase"] = "T"
    interaction: Mat2R | InteractionChain = Field(..., description="Connection matrix or chain being scattered from")
    k_min: float = Field(..., gt=0)
    k_max: float = Field(..., gt=0)
    k_count: int = Field(..., ge=1)
    log: bool = False
    statistics: Statistics | None = None

    @model_validator(mode="after")
    def _check_grid(self) -> SweepSpec:
        if self.k_max < self.k_min:
            raise ValueError(f"k_max ({self.k_max}) must not be below k_min ({self.k_min})")
        if self.k_count == 1 and self.k_min != self.k_max:
            raise ValueError("a sweep over a k range needs k_count >= 2")
        if self.k_count >= 2 and self.k_min == self.k_max:
            raise ValueError("a multi-point sweep needs k_max > k_min")
        return self

    def k_values(self) -> list[float]:
        if self.k_count == 1:
            return [self.k_min]
        if self.log:
            return [float(k) for k in np.geomspace(self.k_min, self.k_max, self.k_count)]
        return [float(k) for k in np.linspace(self.k_min, self.k_max, self.k_count)]
