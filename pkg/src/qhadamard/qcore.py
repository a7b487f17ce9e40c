"""Exact two-level state and 2x2 complex matrix arithmetic.

Conventions used throughout the package:

  - A qubit state a|0> + b|1> is the complex pair (a, b), normalized to
    |a|^2 + |b|^2 = 1 within ``NORM_TOL`` at construction.  Inputs farther
    out are rejected, never renormalized.  Global phase is significant:
    states compare phase-sensitively unless ``equal_up_to_global_phase``
    is called explicitly.
  - The orthogonal complement has two sign conventions,
    A: b*|0> - a*|1>   and   B: -b*|0> + a*|1>,
    which differ by an overall minus sign.
  - Residuals and distances are componentwise max-modulus (inf-norm), so
    every tolerance reads directly as a bound on matrix/vector entries.

All values are immutable after construction and every operation is a pure
function; everything here is safe to share across threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

NORM_TOL = 1e-12
APPLY_UNITARITY_TOL = 1e-9


class ValidationError(ValueError):
    """An input violated a documented contract."""


class NormalizationError(ValidationError):
    """A state or weight vector is not normalized; carries the residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class NonUnitaryError(ValidationError):
    """A matrix failed a unitarity gate; carries the residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class DomainError(ValidationError):
    """A parameter is outside its documented domain."""


def abs2(z: complex) -> float:
    """|z|^2 without the square root."""
    return z.real * z.real + z.imag * z.imag


def require_finite(name: str, z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValidationError(f"{name} must be finite, got {z!r}")
    return z


def format_float(x: float) -> str:
    """Shortest decimal form that round-trips exactly; used by all emitters."""
    return repr(float(x))


class ComplementConvention(enum.Enum):
    """Sign convention for the orthogonal complement of a|0> + b|1>."""

    A = "A"  # psi_perp =  b*|0> - a*|1>
    B = "B"  # psi_perp = -b*|0> + a*|1>


@dataclass(frozen=True)
class QubitState:
    """Normalized state a|0> + b|1> with explicit global phase."""

    a: complex
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "a", require_finite("a", self.a))
        object.__setattr__(self, "b", require_finite("b", self.b))
        residual = abs(abs2(self.a) + abs2(self.b) - 1.0)
        if residual >= NORM_TOL:
            raise NormalizationError(
                f"state violates |a|^2+|b|^2=1 by {residual:.3e}", residual
            )


@dataclass(frozen=True)
class GateMatrix:
    """Row-major 2x2 complex matrix.

    Construction only checks finiteness; unitarity is enforced by the gate
    constructors that produce these and re-checked by ``apply``.
    """

    m00: complex
    m01: complex
    m10: complex
    m11: complex

    def __post_init__(self):
        for name in ("m00", "m01", "m10", "m11"):
            object.__setattr__(self, name, require_finite(name, getattr(self, name)))

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.m00, self.m01, self.m10, self.m11)


def matmul(g: GateMatrix, h: GateMatrix) -> GateMatrix:
    return GateMatrix(
        g.m00 * h.m00 + g.m01 * h.m10,
        g.m00 * h.m01 + g.m01 * h.m11,
        g.m10 * h.m00 + g.m11 * h.m10,
        g.m10 * h.m01 + g.m11 * h.m11,
    )


def adjoint(g: GateMatrix) -> GateMatrix:
    return GateMatrix(
        g.m00.conjugate(),
        g.m10.conjugate(),
        g.m01.conjugate(),
        g.m11.conjugate(),
    )


def unitarity_residual(g: GateMatrix) -> float:
    """Max-modulus of G^dagger G - I; zero iff G is exactly unitary."""
    p = matmul(adjoint(g), g)
    return max(
        abs(p.m00 - 1.0),
        abs(p.m01),
        abs(p.m10),
        abs(p.m11 - 1.0),
    )


def inner_product(psi: QubitState, chi: QubitState) -> complex:
    """<psi|chi> with the bra conjugated; conjugate-symmetric."""
    return psi.a.conjugate() * chi.a + psi.b.conjugate() * chi.b


def complement(psi: QubitState, convention: ComplementConvention) -> QubitState:
    """The state orthogonal to psi under the given sign convention."""
    if convention is ComplementConvention.A:
        return QubitState(psi.b.conjugate(), -psi.a.conjugate())
    return QubitState(-psi.b.conjugate(), psi.a.conjugate())


def apply(gate: GateMatrix, psi: QubitState) -> QubitState:
    """Matrix-vector product; rejects matrices that are measurably non-unitary."""
    residual = unitarity_residual(gate)
    if residual >= APPLY_UNITARITY_TOL:
        raise NonUnitaryError(
            f"gate is not unitary: residual {residual:.3e}", residual
        )
    return QubitState(
        gate.m00 * psi.a + gate.m01 * psi.b,
        gate.m10 * psi.a + gate.m11 * psi.b,
    )


def state_distance(psi: QubitState, chi: QubitState) -> float:
    """Phase-sensitive componentwise max-modulus distance."""
    return max(abs(psi.a - chi.a), abs(psi.b - chi.b))


def equal_up_to_global_phase(psi: QubitState, chi: QubitState, tol: float = 1e-12) -> bool:
    """True when psi equals chi after the optimal unit-phase alignment.

    The minimizing phase is <chi|psi>/|<chi|psi>|.  Orthogonal states
    (zero overlap) are never phase-equal.
    """
    overlap = inner_product(chi, psi)
    mag = abs(overlap)
    if mag == 0.0:
        return False
    phase = overlap / mag
    aligned = QubitState(phase * chi.a, phase * chi.b)
    return state_distance(psi, aligned) < tol
