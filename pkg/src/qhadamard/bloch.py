"""Bloch-sphere mapping, closed-form family curves, trajectories, intersections.

The Cartesian coordinates are computed from amplitude bilinears,
x = 2 Re(conj(a) b), y = 2 Im(conj(a) b), z = |a|^2 - |b|^2, which stay
stable at the poles; the angles are derived from them afterwards.  The
global phase gamma is the argument of a away from the south pole and the
argument of b there, so e^{i gamma}(cos(theta/2)|0> + e^{i phi}
sin(theta/2)|1>) reconstructs the input state.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .ensembles import FamilySweep
from .qcore import DomainError, QubitState, abs2

TWO_PI = 2.0 * math.pi

# below this |sin(theta)| (resp. |a|) the azimuth (resp. phase source) is degenerate
POLE_TOL = 1e-12

# intersection scan: initial sample count, bisection depth, duplicate merging
SCAN_SAMPLES = 4096
BISECT_WIDTH = 1e-14
MERGE_TOL = 1e-9

TRAJECTORY_CSV_HEADER = "param,x,y,z,theta,phi,gamma"

GREAT_CIRCLES = ("polar", "equatorial")  # defined by y = 0 resp. z = 0


@dataclass(frozen=True)
class BlochPoint:
    """Unit-sphere point with its angles and the extracted global phase."""

    x: float
    y: float
    z: float
    theta: float
    phi: float
    gamma: float


def _angles(x: float, y: float, z: float) -> tuple[float, float]:
    radial = math.hypot(x, y)
    # atan2(sin(theta), cos(theta)) == acos(z) on the unit sphere but keeps
    # full precision near the poles, where acos loses ~ulp/sin(theta)
    theta = math.atan2(radial, z)
    if radial < POLE_TOL:
        return theta, 0.0
    return theta, math.atan2(y, x) % TWO_PI


def _gamma(a: complex, b: complex) -> float:
    source = a if abs(a) > POLE_TOL else b
    return cmath.phase(source) % TWO_PI


def to_bloch(psi: QubitState) -> BlochPoint:
    """Map a normalized state to its Bloch point."""
    cross = psi.a.conjugate() * psi.b
    x = 2.0 * cross.real
    y = 2.0 * cross.imag
    z = abs2(psi.a) - abs2(psi.b)
    theta, phi = _angles(x, y, z)
    return BlochPoint(x, y, z, theta, phi, _gamma(psi.a, psi.b))


CURVES = ("curve1", "curve2")


def closed_form_point(curve: str, alpha: float, branch: int) -> BlochPoint:
    """Closed-form sphere coordinates of the two family curves.

    curve1: (2a^2, -branch * 2a sqrt(1-2a^2), 1-2a^2), |a| <= 1/sqrt(2);
    curve2: (0, branch * 2a sqrt(1-a^2), 2a^2 - 1), |a| <= 1.

    These are computed from the formulas, independently of ``to_bloch``;
    only gamma is read off the generating amplitudes.
    """
    alpha = float(alpha)
    if branch not in (1, -1):
        raise DomainError(f"branch must be +1 or -1, got {branch!r}")
    if curve == "curve1":
        radicand = 1.0 - 2.0 * alpha * alpha
        if radicand < -1e-12:
            raise DomainError(f"curve1 needs |alpha| <= 1/sqrt(2), got {alpha!r}")
        root = math.sqrt(max(radicand, 0.0))
        x = 2.0 * alpha * alpha
        y = -branch * 2.0 * alpha * root
        z = 1.0 - 2.0 * alpha * alpha
        a, b = complex(alpha, branch * root), complex(alpha, 0.0)
    elif curve == "curve2":
        radicand = 1.0 - alpha * alpha
        if radicand < -1e-12:
            raise DomainError(f"curve2 needs |alpha| <= 1, got {alpha!r}")
        root = math.sqrt(max(radicand, 0.0))
        x = 0.0
        y = branch * 2.0 * alpha * root
        z = 2.0 * alpha * alpha - 1.0
        # generating state i*alpha|0> + beta|1> maps to y = -2*alpha*beta
        a, b = complex(0.0, alpha), complex(-branch * root, 0.0)
    else:
        raise DomainError(f"unknown curve {curve!r}; valid curves: {', '.join(CURVES)}")
    theta, phi = _angles(x, y, z)
    return BlochPoint(x, y, z, theta, phi, _gamma(a, b))


def trajectory(family: FamilySweep, n: int) -> list[BlochPoint]:
    """n uniform parameter samples over the family domain, in parameter order."""
    return [to_bloch(family.state_at(t)) for t in family.grid(n)]


@dataclass(frozen=True)
class Intersection:
    param: float
    point: BlochPoint
    state: QubitState


def _circle_coordinate(circle: str):
    if circle == "polar":
        return lambda pt: pt.y
    if circle == "equatorial":
        return lambda pt: pt.z
    raise DomainError(
        f"unknown circle {circle!r}; valid circles: {', '.join(GREAT_CIRCLES)}"
    )


def circle_intersections(
    family: FamilySweep, circle: str, tol: float
) -> list[Intersection]:
    """Parameters where the family crosses a great circle.

    Sign changes over a dense scan are refined by bisection; samples already
    within ``tol`` of the circle count directly (catches tangential contact
    at domain endpoints).  Candidates closer than MERGE_TOL in parameter are
    merged, keeping the one nearest the circle.
    """
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    coord = _circle_coordinate(circle)

    def f(t: float) -> float:
        return coord(to_bloch(family.state_at(t)))

    grid = family.grid(SCAN_SAMPLES)
    values = [f(t) for t in grid]

    candidates: list[float] = []
    for t, v in zip(grid, values):
        if abs(v) < tol:
            candidates.append(t)
    for (t0, v0), (t1, v1) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if abs(v0) < tol or abs(v1) < tol:
            continue
        if (v0 < 0.0) == (v1 < 0.0):
            continue
        lo, hi, flo = t0, t1, v0
        while hi - lo > BISECT_WIDTH:
            mid = 0.5 * (lo + hi)
            fmid = f(mid)
            if (fmid < 0.0) == (flo < 0.0):
                lo, flo = mid, fmid
            else:
                hi = mid
        root = 0.5 * (lo + hi)
        if abs(f(root)) < tol:
            candidates.append(root)

    candidates.sort()
    merged: list[float] = []
    for t in candidates:
        if merged and t - merged[-1] <= MERGE_TOL:
            if abs(f(t)) < abs(f(merged[-1])):
                merged[-1] = t
        else:
            merged.append(t)

    results = []
    for t in merged:
        state = family.state_at(t)
        results.append(Intersection(t, to_bloch(state), state))
    return results


def hausdorff_distance(points_a: list[BlochPoint], points_b: list[BlochPoint]) -> float:
    """Symmetric Hausdorff distance between two Bloch point sets (Euclidean xyz)."""
    if not points_a or not points_b:
        raise DomainError("point sets must be nonempty")
    xyz_a = np.array([[p.x, p.y, p.z] for p in points_a])
    xyz_b = np.array([[p.x, p.y, p.z] for p in points_b])

    def directed(src: np.ndarray, dst: np.ndarray) -> float:
        worst = 0.0
        for start in range(0, len(src), 256):
            block = src[start : start + 256]
            d2 = ((block[:, None, :] - dst[None, :, :]) ** 2).sum(axis=2)
            worst = max(worst, float(np.sqrt(d2.min(axis=1)).max()))
        return worst

    return max(directed(xyz_a, xyz_b), directed(xyz_b, xyz_a))
