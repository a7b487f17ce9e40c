"""State-family constructors.

Each family constructor returns an orthonormal pair (psi, psi_perp) with the
explicit global phase the family definition carries.  Dependent parameters
are resolved through an explicit square-root ``branch`` argument (+1 or -1),
never inferred, so parameter sweeps are single-valued.

``FamilySweep`` packages a family with one free parameter and a fixed sweep
domain; trajectories and intersection scans run over sweeps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .gates import SQRT1_2, SuperpositionWeights, canonical_phase
from .qcore import (
    ComplementConvention,
    DomainError,
    QubitState,
    abs2,
    complement,
    require_finite,
)

# how far a radicand may dip below zero before the parameters are rejected
RADICAND_TOL = 1e-12
# |Im(q conj(b))| bound: the single condition covering the admissible cases
CASE_TOL = 1e-12


def _check_branch(branch: int) -> int:
    if branch not in (1, -1):
        raise DomainError(f"branch must be +1 or -1, got {branch!r}")
    return branch


def _dependent(radicand: float, branch: int, bound_msg: str) -> float:
    if radicand < -RADICAND_TOL:
        raise DomainError(bound_msg)
    return branch * math.sqrt(max(radicand, 0.0))


def theorem1_state(
    alpha: float, branch: int, convention: ComplementConvention
) -> tuple[QubitState, QubitState]:
    """Family on which the Hadamard gate itself produces equal superpositions.

    Convention A: psi = (alpha + i*beta)|0> + alpha|1> with
    beta = branch*sqrt(1 - 2 alpha^2), i.e. one complex and one real
    amplitude sharing their real part.  Convention B is the isomorphic
    family whose amplitudes share their imaginary part: the given parameter
    is that shared imaginary part t, and psi = (s + i*t)|0> + i*t|1> with
    s = branch*sqrt(1 - 2 t^2).  Convention B at -t lands on the same
    sphere point as convention A at t.
    """
    alpha = float(alpha)
    _check_branch(branch)
    dep = _dependent(
        1.0 - 2.0 * alpha * alpha,
        branch,
        f"|parameter| must be <= 1/sqrt(2) for this family, got {alpha!r}",
    )
    if convention is ComplementConvention.A:
        psi = QubitState(complex(alpha, dep), complex(alpha, 0.0))
    else:
        psi = QubitState(complex(dep, alpha), complex(0.0, alpha))
    return psi, complement(psi, convention)


def polar_circle_state(theta: float, phi: float) -> tuple[QubitState, QubitState]:
    """cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> and its companion
    -sin(theta/2)|0> + e^{i phi} cos(theta/2)|1> on the polar circle at phi."""
    theta = float(theta)
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta!r}")
    w = cmath.exp(1j * canonical_phase(phi))
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    psi = QubitState(complex(c, 0.0), w * s)
    perp = QubitState(complex(-s, 0.0), w * c)
    return psi, perp


def equatorial_state(phi: float) -> tuple[QubitState, QubitState]:
    """(1/sqrt2) e^{-i phi/2} (|0> + e^{i phi}|1>) and the orthogonal
    (1/sqrt2) e^{i phi/2} (|1> - e^{-i phi}|0>) on the equatorial great circle."""
    half = canonical_phase(phi) / 2.0
    u = cmath.exp(-1j * half)  # e^{-i phi/2}
    v = cmath.exp(1j * half)   # e^{+i phi/2}
    psi = QubitState(SQRT1_2 * u, SQRT1_2 * v)
    perp = QubitState(-SQRT1_2 * u, SQRT1_2 * v)
    return psi, perp


def theorem3_state(
    alpha: float, branch: int, convention: ComplementConvention
) -> tuple[QubitState, QubitState]:
    """Family for the symmetric gate (1/sqrt2)[[1, i], [i, 1]].

    Convention A: psi = i*alpha|0> + beta|1>, psi_perp = beta|0> + i*alpha|1>;
    convention B: psi = alpha|0> + i*beta|1>, psi_perp = i*beta|0> + alpha|1>;
    in both, beta = branch*sqrt(1 - alpha^2).  One real and one imaginary
    amplitude in either order.
    """
    alpha = float(alpha)
    _check_branch(branch)
    beta = _dependent(
        1.0 - alpha * alpha,
        branch,
        f"|alpha| must be <= 1 for this family, got {alpha!r}",
    )
    if convention is ComplementConvention.A:
        psi = QubitState(complex(0.0, alpha), complex(beta, 0.0))
    else:
        psi = QubitState(complex(alpha, 0.0), complex(0.0, beta))
    return psi, complement(psi, convention)


class UnequalKind(Enum):
    GENERAL = "general"
    EQUATORIAL = "equatorial"


@dataclass(frozen=True)
class UnequalParams:
    """Parameters of the unequal-superposition families.

    Admissible (q, b) make q*conj(b) real; equivalently b/q is real.  That
    single condition covers all three admissible cases (both real, both
    imaginary, or complex with matched real/imaginary ratios); ``qb_case``
    reports which one holds.
    """

    w: SuperpositionWeights
    b: complex
    a2_sign: int
    kind: UnequalKind

    def __post_init__(self):
        object.__setattr__(self, "b", require_finite("b", self.b))
        _check_branch(self.a2_sign)
        if not isinstance(self.kind, UnequalKind):
            raise DomainError(f"kind must be an UnequalKind, got {self.kind!r}")
        q = self.w.q
        if abs(q) == 0.0:
            raise DomainError("q must be nonzero: the family constraint divides by q")
        im = (q * self.b.conjugate()).imag
        if abs(im) >= CASE_TOL:
            raise DomainError(
                "q*conj(b) must be real (admissible cases: q and b both real; "
                "both imaginary; or complex with Re(q)/Im(q) = Re(b)/Im(b)); "
                f"got Im(q conj(b)) = {im:.3e}"
            )

    @property
    def qb_case(self) -> str:
        q, b = self.w.q, self.b
        if abs(q.imag) < CASE_TOL and abs(b.imag) < CASE_TOL:
            return "both-real"
        if abs(q.real) < CASE_TOL and abs(b.real) < CASE_TOL:
            return "both-imaginary"
        return "ratio-matched"


def unequal_family_state(u: UnequalParams) -> tuple[QubitState, QubitState]:
    """psi = (a1 + i*a2)|0> + b|1> with a1 pinned by the weights.

    a1 = (b/q) * Re(p) for the general kind and (b/q) * Im(p) for the
    equatorial kind; a2 = a2_sign * sqrt(1 - a1^2 - |b|^2).
    """
    p, q, b = u.w.p, u.w.q, u.b
    r = (b * q.conjugate()).real / abs2(q)  # b/q, real by the case condition
    a1 = r * (p.real if u.kind is UnequalKind.GENERAL else p.imag)
    radicand = 1.0 - a1 * a1 - abs2(b)
    if radicand < -RADICAND_TOL:
        raise DomainError(
            f"infeasible normalization: 1 - a1^2 - |b|^2 = {radicand:.3e} < 0"
        )
    a2 = u.a2_sign * math.sqrt(max(radicand, 0.0))
    psi = QubitState(complex(a1, a2), b)
    return psi, complement(psi, ComplementConvention.A)


@dataclass(frozen=True)
class FamilySweep:
    """A one-parameter family restricted to a sweep domain [lo, hi].

    ``closed`` marks whether hi belongs to the sample grid (periodic sweeps
    exclude it).  ``state_at`` maps the parameter to the family's psi.
    """

    family_id: str
    label: str
    lo: float
    hi: float
    closed: bool
    state_fn: Callable[[float], QubitState] = field(compare=False)

    def grid(self, n: int) -> list[float]:
        if n < 2:
            raise DomainError(f"need at least 2 samples, got {n}")
        span = self.hi - self.lo
        if self.closed:
            ts = [self.lo + span * k / (n - 1) for k in range(n)]
            ts[-1] = self.hi
            return ts
        return [self.lo + span * k / n for k in range(n)]

    def state_at(self, t: float) -> QubitState:
        return self.state_fn(t)


def theorem1_sweep(branch: int, convention: ComplementConvention) -> FamilySweep:
    _check_branch(branch)
    bound = SQRT1_2
    return FamilySweep(
        "theorem1",
        f"theorem1:{'+' if branch > 0 else '-'},{convention.value}",
        -bound,
        bound,
        True,
        lambda a: theorem1_state(a, branch, convention)[0],
    )


def polar_sweep(phi: float) -> FamilySweep:
    phi_c = canonical_phase(phi)
    return FamilySweep(
        "polar",
        f"polar:{phi_c!r}",
        0.0,
        math.pi,
        True,
        lambda theta: polar_circle_state(theta, phi_c)[0],
    )


def equatorial_sweep() -> FamilySweep:
    return FamilySweep(
        "equatorial",
        "equatorial",
        0.0,
        2.0 * math.pi,
        False,
        lambda phi: equatorial_state(phi)[0],
    )


def theorem3_sweep(branch: int, convention: ComplementConvention) -> FamilySweep:
    _check_branch(branch)
    return FamilySweep(
        "theorem3",
        f"theorem3:{'+' if branch > 0 else '-'},{convention.value}",
        -1.0,
        1.0,
        True,
        lambda a: theorem3_state(a, branch, convention)[0],
    )


def unequal_sweep(
    kind: UnequalKind, w: SuperpositionWeights, a2_sign: int
) -> FamilySweep:
    """Sweep of b = r*q along the feasible segment |r| <= r_max.

    Writing b = r*q (r real) is exactly the admissibility condition, so the
    scale r is the family's natural free parameter.
    """
    _check_branch(a2_sign)
    if abs(w.q) == 0.0:
        raise DomainError("q must be nonzero: the family constraint divides by q")
    pin = w.p.real if kind is UnequalKind.GENERAL else w.p.imag
    rmax = 1.0 / math.sqrt(pin * pin + abs2(w.q))
    family_id = "unequal-general" if kind is UnequalKind.GENERAL else "unequal-equatorial"
    sign = "+" if a2_sign > 0 else "-"
    label = (
        f"{family_id}:{w.p.real!r},{w.p.imag!r},{w.q.real!r},{w.q.imag!r},{sign}"
    )
    return FamilySweep(
        family_id,
        label,
        -rmax,
        rmax,
        True,
        lambda r: unequal_family_state(UnequalParams(w, r * w.q, a2_sign, kind))[0],
    )
