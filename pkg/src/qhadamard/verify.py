"""Transformation templates, residual checks, and the brute-force family oracle.

A ``TransformTemplate`` prescribes the images a gate must produce on a pair:
G|psi> = c11|psi> + c12|psi_perp> and G|psi_perp> = c21|psi> + c22|psi_perp>.
``check_pair`` measures how far a given pair is from satisfying both rows.

``derive_family`` recovers a gate's admissible ensemble independently of any
closed form: it scans the full three-parameter state space (polar angle,
azimuth, global phase -- phase included because family membership here is
phase-sensitive) and keeps every grid point whose residual beats a tolerance.
The output is sorted and deterministic regardless of how the scan is split.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bloch import to_bloch
from .qcore import (
    APPLY_UNITARITY_TOL,
    ComplementConvention,
    DomainError,
    GateMatrix,
    NonUnitaryError,
    QubitState,
    apply,
    complement,
    format_float,
    inner_product,
    unitarity_residual,
)
from .gates import SQRT1_2, SuperpositionWeights

ORTHOGONALITY_TOL = 1e-12

DERIVED_CSV_HEADER = "theta,phi,gamma,residual,x,y,z"


@dataclass(frozen=True)
class TransformTemplate:
    """Target images per row; the coefficient matrix must be unitary."""

    c11: complex
    c12: complex
    c21: complex
    c22: complex
    name: str

    def __post_init__(self):
        residual = unitarity_residual(
            GateMatrix(self.c11, self.c12, self.c21, self.c22)
        )
        if residual >= 1e-12:
            raise DomainError(
                f"template {self.name!r} coefficients are not unitary: "
                f"residual {residual:.3e}"
            )


HADAMARD_TEMPLATE = TransformTemplate(SQRT1_2, SQRT1_2, SQRT1_2, -SQRT1_2, "hadamard")
POLAR_TEMPLATE = TransformTemplate(SQRT1_2, SQRT1_2, -SQRT1_2, SQRT1_2, "polar")
EQUATORIAL_TEMPLATE = TransformTemplate(
    SQRT1_2, SQRT1_2 * 1j, SQRT1_2 * 1j, SQRT1_2, "equatorial"
)


def unequal_template(w: SuperpositionWeights) -> TransformTemplate:
    """(p, q; q*, -p*) -- the general unequal-superposition images."""
    return TransformTemplate(w.p, w.q, w.q.conjugate(), -w.p.conjugate(), "unequal")


def unequal_polar_template(w: SuperpositionWeights) -> TransformTemplate:
    """(p, q; -q, p) for real weights."""
    if abs(w.p.imag) >= 1e-12 or abs(w.q.imag) >= 1e-12:
        raise DomainError("unequal polar template requires real weights")
    p, q = w.p.real, w.q.real
    return TransformTemplate(p, q, -q, p, "unequal-polar")


def unequal_equatorial_template(w: SuperpositionWeights) -> TransformTemplate:
    """(p, iq; iq*, p*) -- the phase-i unequal images."""
    return TransformTemplate(
        w.p, 1j * w.q, 1j * w.q.conjugate(), w.p.conjugate(), "unequal-equatorial"
    )


@dataclass(frozen=True)
class ResidualReport:
    """Inf-norm deviations of G|psi> and G|psi_perp> from their template images."""

    row1: float
    row2: float
    tol: float
    passed: bool


def check_pair(
    gate: GateMatrix,
    psi: QubitState,
    perp: QubitState,
    template: TransformTemplate,
    tol: float,
) -> ResidualReport:
    """Residuals of both template rows on an orthonormal pair."""
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    overlap = abs(inner_product(psi, perp))
    if overlap >= ORTHOGONALITY_TOL:
        raise DomainError(f"input pair is not orthogonal: |<psi|perp>| = {overlap:.3e}")
    g_psi = apply(gate, psi)
    g_perp = apply(gate, perp)
    row1 = max(
        abs(g_psi.a - (template.c11 * psi.a + template.c12 * perp.a)),
        abs(g_psi.b - (template.c11 * psi.b + template.c12 * perp.b)),
    )
    row2 = max(
        abs(g_perp.a - (template.c21 * psi.a + template.c22 * perp.a)),
        abs(g_perp.b - (template.c21 * psi.b + template.c22 * perp.b)),
    )
    return ResidualReport(row1, row2, tol, max(row1, row2) < tol)


Pair = tuple[QubitState, QubitState]


def check_inner_products(pair_k: Pair, pair_l: Pair) -> float:
    """Max violation of the ensemble inner-product identities.

    On an admissible ensemble the cross overlaps obey
    x = -conj(y) = y (x = <psi_k|perp_l>, y = <perp_k|psi_l>) and the
    diagonal overlaps obey s = conj(t); substituting those into the two
    superposition-preservation identities reduces them to s = Re(s) + x and
    t = Re(s) - x.  All six deviations are measured; the largest is returned.
    """
    psi_k, perp_k = pair_k
    psi_l, perp_l = pair_l
    s = inner_product(psi_k, psi_l)
    x = inner_product(psi_k, perp_l)
    y = inner_product(perp_k, psi_l)
    t = inner_product(perp_k, perp_l)
    re_s = complex(s.real, 0.0)
    return max(
        abs(x + y.conjugate()),
        abs(x - y),
        abs(s - t.conjugate()),
        abs(s - (re_s + x)),
        abs(t - (re_s - x)),
    )


@dataclass(frozen=True)
class DerivedPoint:
    """One accepted grid point of a derivation, with its residual."""

    theta: float
    phi: float
    gamma: float
    residual: float


def grid_state(theta: float, phi: float, gamma: float) -> QubitState:
    """State e^{i gamma}(cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>)."""
    a = cmath.exp(1j * gamma) * math.cos(theta / 2.0)
    b = cmath.exp(1j * (gamma + phi)) * math.sin(theta / 2.0)
    return QubitState(a, b)


@dataclass(frozen=True)
class DerivedFamily:
    """Sorted accepted grid points of one derivation run."""

    points: tuple[DerivedPoint, ...]
    grid_spec: tuple[int, int, int]
    convention: ComplementConvention
    tolerance: float

    @property
    def empty(self) -> bool:
        return not self.points

    def states(self) -> list[QubitState]:
        return [grid_state(p.theta, p.phi, p.gamma) for p in self.points]


def derive_family(
    gate: GateMatrix,
    template: TransformTemplate,
    convention: ComplementConvention,
    grid: tuple[int, int, int] = (64, 128, 128),
    tol: float = 1e-6,
) -> DerivedFamily:
    """Brute-force scan of the full (theta, phi, gamma) state space.

    Grid: theta_j = j*pi/(n_theta - 1), phi_k = 2*pi*k/n_phi,
    gamma_m = 2*pi*m/n_gamma.  A point is accepted when both rows of
    ``check_pair`` stay below ``tol``.  Duplicate states at the theta
    endpoints (where phi is degenerate) are kept so the output depends only
    on the inputs.  Output is sorted ascending by (theta, phi, gamma).
    """
    n_theta, n_phi, n_gamma = (int(n) for n in grid)
    if n_theta < 2 or n_phi < 1 or n_gamma < 1:
        raise DomainError(f"grid must be at least (2, 1, 1), got {grid!r}")
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    gate_residual = unitarity_residual(gate)
    if gate_residual >= APPLY_UNITARITY_TOL:
        raise NonUnitaryError(
            f"gate is not unitary: residual {gate_residual:.3e}", gate_residual
        )

    thetas = [(math.pi * j) / (n_theta - 1) for j in range(n_theta)]
    phis = [(2.0 * math.pi * k) / n_phi for k in range(n_phi)]
    gammas = [(2.0 * math.pi * m) / n_gamma for m in range(n_gamma)]
    phi_grid, gamma_grid = np.meshgrid(np.array(phis), np.array(gammas), indexing="ij")

    g00, g01, g10, g11 = gate.entries()
    c11, c12, c21, c22 = template.c11, template.c12, template.c21, template.c22
    perp_sign = 1.0 if convention is ComplementConvention.A else -1.0

    points: list[DerivedPoint] = []
    for theta in thetas:
        c = math.cos(theta / 2.0)
        s = math.sin(theta / 2.0)
        a = np.exp(1j * gamma_grid) * c
        b = np.exp(1j * (gamma_grid + phi_grid)) * s
        pa = perp_sign * np.conj(b)
        pb = -perp_sign * np.conj(a)
        row1 = np.maximum(
            np.abs(g00 * a + g01 * b - (c11 * a + c12 * pa)),
            np.abs(g10 * a + g11 * b - (c11 * b + c12 * pb)),
        )
        row2 = np.maximum(
            np.abs(g00 * pa + g01 * pb - (c21 * a + c22 * pa)),
            np.abs(g10 * pa + g11 * pb - (c21 * b + c22 * pb)),
        )
        residual = np.maximum(row1, row2)
        for i, m in zip(*np.nonzero(residual < tol)):
            points.append(
                DerivedPoint(theta, phis[i], gammas[m], float(residual[i, m]))
            )
    return DerivedFamily(tuple(points), (n_theta, n_phi, n_gamma), convention, tol)


@dataclass(frozen=True)
class FamilyMatch:
    """Two-sided set comparison between a derived family and family samples.

    max_outlier: worst distance from an accepted point to the samples
    (soundness).  max_gap: worst distance from a sample to the accepted set
    (completeness up to grid spacing); +inf when the derived set is empty.
    """

    max_outlier: float
    max_gap: float
    empty: bool
    delta: float
    passed: bool


def family_match(
    derived: DerivedFamily, family_samples: list[QubitState], delta: float
) -> FamilyMatch:
    if not family_samples:
        raise DomainError("family_samples must be nonempty")
    if derived.empty:
        return FamilyMatch(0.0, math.inf, True, delta, False)
    acc = derived.states()
    acc_a = np.array([st.a for st in acc])
    acc_b = np.array([st.b for st in acc])
    sam_a = np.array([st.a for st in family_samples])
    sam_b = np.array([st.b for st in family_samples])

    max_outlier = 0.0
    gap_minima = np.full(len(family_samples), np.inf)
    chunk = 512
    for start in range(0, len(acc), chunk):
        da = np.abs(acc_a[start : start + chunk, None] - sam_a[None, :])
        db = np.abs(acc_b[start : start + chunk, None] - sam_b[None, :])
        dist = np.maximum(da, db)
        max_outlier = max(max_outlier, float(dist.min(axis=1).max()))
        gap_minima = np.minimum(gap_minima, dist.min(axis=0))
    max_gap = float(gap_minima.max())
    passed = max_outlier <= delta and max_gap <= delta
    return FamilyMatch(max_outlier, max_gap, False, delta, passed)


def derived_pair(
    point: DerivedPoint, convention: ComplementConvention
) -> Pair:
    """The (psi, psi_perp) pair an accepted grid point stands for."""
    psi = grid_state(point.theta, point.phi, point.gamma)
    return psi, complement(psi, convention)


def derived_family_csv(derived: DerivedFamily) -> str:
    """CSV export: header theta,phi,gamma,residual,x,y,z, sorted rows, LF."""
    lines = [DERIVED_CSV_HEADER]
    for p, st in zip(derived.points, derived.states()):
        bl = to_bloch(st)
        lines.append(
            ",".join(
                format_float(v)
                for v in (p.theta, p.phi, p.gamma, p.residual, bl.x, bl.y, bl.z)
            )
        )
    return "\n".join(lines) + "\n"


def derived_family_records(derived: DerivedFamily) -> dict:
    """JSON-ready form with an explicit empty flag."""
    points = []
    for p, st in zip(derived.points, derived.states()):
        bl = to_bloch(st)
        points.append(
            {
                "theta": p.theta,
                "phi": p.phi,
                "gamma": p.gamma,
                "residual": p.residual,
                "x": bl.x,
                "y": bl.y,
                "z": bl.z,
            }
        )
    return {"empty": derived.empty, "count": len(points), "points": points}
