"""Geodesic algebra shared by all space backends.

Geodesics are stored as endpoint pairs and evaluated on demand; every backend
has closed-form interpolation. Differences between geodesics and the quotient
metric are built on top of the per-space transport maps.
"""

from dataclasses import dataclass, field

from .errors import SpaceMismatchError
from .spaces import matrix as _matrix
from .spaces import sphere as _sphere
from .spaces import wasserstein as _wasserstein

POINT_TOL = 1e-10

_BACKENDS = {
    "wasserstein": _wasserstein,
    "sphere": _sphere,
    "frobenius": _matrix,
}

# spaces whose transport map satisfies the path-independence identity
# Gamma_{zeta,beta} o Gamma_{alpha,zeta} == Gamma_{alpha,beta}
PATH_INDEPENDENT_SPACES = frozenset({"wasserstein", "frobenius"})


def backend_of(*points):
    space = points[0].space_id
    for p in points[1:]:
        if p.space_id != space:
            raise SpaceMismatchError(
                f"space mismatch: {space} vs {p.space_id}"
            )
    return _BACKENDS[space]


def distance(a, b):
    """Native metric of the points' common space."""
    backend = backend_of(a, b)
    if backend is _wasserstein:
        return _wasserstein.w2_distance(a, b)
    return backend.distance(a, b)


def transport(alpha, beta, omega):
    """Geodesic transport of omega along the geodesic from alpha to beta."""
    return backend_of(alpha, beta, omega).transport(alpha, beta, omega)


def is_path_independent(space_id):
    return space_id in PATH_INDEPENDENT_SPACES


@dataclass(frozen=True)
class Geodesic:
    """Constant-speed geodesic between two points of one space."""

    start: object
    end: object
    _space_id: str = field(init=False, repr=False)

    def __post_init__(self):
        backend_of(self.start, self.end)
        object.__setattr__(self, "_space_id", self.start.space_id)

    @property
    def space_id(self):
        return self._space_id

    def length(self):
        return distance(self.start, self.end)

    def evaluate(self, t):
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"geodesic parameter t={t} outside [0, 1]")
        return backend_of(self.start, self.end).interpolate(self.start, self.end, t)

    def __call__(self, t):
        return self.evaluate(t)


def evaluate_geodesic(g, t):
    return g.evaluate(t)


def reverse(g):
    return Geodesic(g.end, g.start)


def concatenate(g1, g2):
    """Concatenation of geodesics sharing the middle point: gamma_{a,z} then gamma_{z,b}."""
    if distance(g1.end, g2.start) > POINT_TOL:
        raise SpaceMismatchError("concatenation requires g1.end == g2.start")
    return Geodesic(g1.start, g2.end)


def geodesic_difference(subtrahend, minuend):
    """Difference of geodesics: transport the subtrahend to the minuend's start.

    Returns the geodesic from Gamma_{sub.start, sub.end}(minuend.start) to
    minuend.end.
    """
    moved = transport(subtrahend.start, subtrahend.end, minuend.start)
    return Geodesic(moved, minuend.end)


def quotient_distance(g1, g2, reference):
    """Metric on equivalence classes of geodesics, anchored at a fixed reference point."""
    z1 = transport(g1.start, g1.end, reference)
    z2 = transport(g2.start, g2.end, reference)
    return distance(z1, z2)


@dataclass(frozen=True)
class GeodesicClass:
    """Equivalence class of a geodesic, tied to the reference point of its metric."""

    representative: Geodesic
    reference_point: object

    def __post_init__(self):
        backend_of(self.representative.start, self.reference_point)

    def distance_to(self, other):
        if distance(self.reference_point, other.reference_point) > POINT_TOL:
            raise SpaceMismatchError(
                "quotient distance requires a common reference point"
            )
        return quotient_distance(
            self.representative, other.representative, self.reference_point
        )
