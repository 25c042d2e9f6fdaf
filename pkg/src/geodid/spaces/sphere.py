"""Positive-orthant unit-sphere backend for compositional data."""

import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import (
    DegenerateTangentError,
    InvariantViolationError,
    OrthantExitWarning,
    SpaceMismatchError,
)

UNIT_TOL = 1e-10
ORTHANT_SLACK = 1e-12


@dataclass(frozen=True)
class UnitCompositionPoint:
    """Unit vector on the positive orthant of the sphere."""

    coords: np.ndarray
    space_id: str = field(default="sphere", init=False, repr=False)

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", coords)
        if coords.ndim != 1 or len(coords) < 2:
            raise InvariantViolationError("sphere point needs >= 2 coordinates")
        if abs(np.linalg.norm(coords) - 1.0) > UNIT_TOL:
            raise InvariantViolationError("sphere point is not unit norm")
        if np.any(coords < -ORTHANT_SLACK):
            raise InvariantViolationError("sphere point leaves the positive orthant")

    @property
    def dim(self):
        return len(self.coords)


def _check_same_dim(*points):
    d = points[0].dim
    for p in points[1:]:
        if p.dim != d:
            raise SpaceMismatchError(f"sphere dimension mismatch: {d} vs {p.dim}")


def _clamped_dot(x, y):
    return float(np.clip(np.dot(x, y), -1.0, 1.0))


def distance(z1, z2):
    """Great-circle distance arccos(z1'z2).

    Evaluated through the chord length, 2 arcsin(|z1 - z2| / 2), which is
    the same angle but stays accurate for nearly identical points where
    arccos of the dot product loses half the significant digits.
    """
    _check_same_dim(z1, z2)
    half_chord = 0.5 * np.linalg.norm(z1.coords - z2.coords)
    return float(2.0 * np.arcsin(min(half_chord, 1.0)))


def interpolate(z1, z2, t):
    """Slerp: point at fraction t of the geodesic from z1 to z2."""
    _check_same_dim(z1, z2)
    a, b = z1.coords, z2.coords
    theta = np.arccos(_clamped_dot(a, b))
    if theta < 1e-14:
        return z1
    v = b - np.dot(a, b) * a
    u = v / np.linalg.norm(v)
    coords = np.cos(theta * t) * a + np.sin(theta * t) * u
    return _finish(coords)


def _finish(coords):
    coords = coords / np.linalg.norm(coords)
    if np.any(coords < -ORTHANT_SLACK):
        warnings.warn(
            "result left the positive orthant of the sphere", OrthantExitWarning
        )
    p = object.__new__(UnitCompositionPoint)
    object.__setattr__(p, "coords", coords)
    object.__setattr__(p, "space_id", "sphere")
    return p


def transport(alpha, beta, omega):
    """Rotate omega along the geodesic direction determined by alpha and beta."""
    _check_same_dim(alpha, beta, omega)
    a, b, w = alpha.coords, beta.coords, omega.coords
    theta = np.arccos(_clamped_dot(a, b))
    if theta < 1e-14:
        return omega
    v_ab = b - np.dot(a, b) * a
    v = v_ab - np.dot(w, v_ab) * w
    nv = np.linalg.norm(v)
    if nv < 1e-12:
        raise DegenerateTangentError(
            "tangent projection vanished; transport direction undefined at omega"
        )
    coords = np.cos(theta) * w + np.sin(theta) * v / nv
    return _finish(coords)


def embed_composition(shares):
    """Square-root embedding of a composition (shares summing to 1)."""
    shares = np.asarray(shares, dtype=float)
    if np.any(shares < -1e-8):
        raise InvariantViolationError("composition has a negative entry")
    total = shares.sum()
    if abs(total - 1.0) > 1e-8:
        raise InvariantViolationError(f"composition sums to {total}, not 1")
    shares = np.clip(shares, 0.0, None) / total
    return UnitCompositionPoint(np.sqrt(shares))


def unembed(point):
    """Inverse of the square-root embedding: shares[j] = coords[j]^2."""
    return point.coords**2


def log_map(base, point):
    """Tangent vector at `base` pointing to `point` with length d(base, point)."""
    theta = np.arccos(_clamped_dot(base.coords, point.coords))
    if theta < 1e-14:
        return np.zeros(base.dim)
    u = point.coords - np.cos(theta) * base.coords
    return theta * u / np.linalg.norm(u)


def exp_map(base, tangent):
    """Exponential map at `base` applied to a tangent vector."""
    norm = np.linalg.norm(tangent)
    if norm < 1e-16:
        return base
    coords = np.cos(norm) * base.coords + np.sin(norm) * tangent / norm
    return _finish(coords)


def random_point(rng, dim=3):
    """Random point in the interior of the positive orthant, for property tests."""
    shares = rng.dirichlet(np.full(dim, 5.0))
    shares = np.clip(shares, 1e-6, None)
    return embed_composition(shares / shares.sum())
