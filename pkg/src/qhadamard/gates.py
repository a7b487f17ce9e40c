"""Constructors for the Hadamard gate and its polar/equatorial/unequal variants.

Each constructor is a pure function of its parameters and returns a
``GateMatrix`` that is unitary to machine precision.  Parameters are
validated here, at construction, so an invalid gate can never be built.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .qcore import (
    DomainError,
    GateMatrix,
    NormalizationError,
    abs2,
    require_finite,
)

TWO_PI = 2.0 * math.pi
SQRT1_2 = math.sqrt(0.5)  # correctly rounded 1/sqrt(2)

# |Im| bound for parameters that the closed forms require to be real
REAL_TOL = 1e-12


def canonical_phase(phi: float) -> float:
    """Reduce an angle into [0, 2*pi)."""
    phi = float(phi)
    if not math.isfinite(phi):
        raise DomainError(f"phase angle must be finite, got {phi!r}")
    return phi % TWO_PI


@dataclass(frozen=True)
class SuperpositionWeights:
    """Weights (p, q) of p|psi> + q|psi_perp>, normalized like amplitudes."""

    p: complex
    q: complex

    def __post_init__(self):
        object.__setattr__(self, "p", require_finite("p", self.p))
        object.__setattr__(self, "q", require_finite("q", self.q))
        residual = abs(abs2(self.p) + abs2(self.q) - 1.0)
        if residual >= 1e-12:
            raise NormalizationError(
                f"weights violate |p|^2+|q|^2=1 by {residual:.3e}", residual
            )


def hadamard() -> GateMatrix:
    """H = (1/sqrt2) [[1, 1], [1, -1]]."""
    return GateMatrix(SQRT1_2, SQRT1_2, SQRT1_2, -SQRT1_2)


def polar_gate(phi: float) -> GateMatrix:
    """(1/sqrt2) [[1, -e^{-i phi}], [e^{i phi}, 1]].

    At phi = 0 this is sigma_x . H, the gate producing equal superpositions
    (with a sign flip in the second image) on the polar great circle; other
    phi cover every other polar circle.
    """
    w = cmath.exp(1j * canonical_phase(phi))
    return GateMatrix(SQRT1_2, -SQRT1_2 * w.conjugate(), SQRT1_2 * w, SQRT1_2)


def equatorial_gate() -> GateMatrix:
    """(1/sqrt2) [[1-i, 0], [0, 1+i]]; phase-i superpositions on the equator."""
    return GateMatrix(SQRT1_2 * (1 - 1j), 0.0, 0.0, SQRT1_2 * (1 + 1j))


def symmetric_u() -> GateMatrix:
    """(1/sqrt2) [[1, i], [i, 1]]; symmetric under psi <-> psi_perp exchange."""
    return GateMatrix(SQRT1_2, SQRT1_2 * 1j, SQRT1_2 * 1j, SQRT1_2)


def unequal_general(w: SuperpositionWeights) -> GateMatrix:
    """[[p, q*], [q, -p*]]: sends |0>,|1> to the unequal superposition images."""
    return GateMatrix(w.p, w.q.conjugate(), w.q, -w.p.conjugate())


def unequal_polar_gate(w: SuperpositionWeights, phi: float) -> GateMatrix:
    """[[p, -q e^{-i phi}], [q e^{i phi}, p]] for real weights; phi=0 gives U_P."""
    if abs(w.p.imag) >= REAL_TOL or abs(w.q.imag) >= REAL_TOL:
        raise DomainError(
            "unequal polar gate requires real weights: "
            f"|Im p| = {abs(w.p.imag):.3e}, |Im q| = {abs(w.q.imag):.3e}"
        )
    p, q = w.p.real, w.q.real
    ph = cmath.exp(1j * canonical_phase(phi))
    return GateMatrix(p, -q * ph.conjugate(), q * ph, p)


def unequal_equatorial(w: SuperpositionWeights) -> GateMatrix:
    """[[p, i q*], [i q, p*]]: phase-i unequal superposition of the basis."""
    return GateMatrix(w.p, 1j * w.q.conjugate(), 1j * w.q, w.p.conjugate())
