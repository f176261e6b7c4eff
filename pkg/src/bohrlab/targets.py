"""Planar target domains: hull distance, supporting lines, inscribed disks.

Shapes are immutable.  A target enters the Bohr condition only through the
distance from an interior point to the boundary of its convex hull and,
for exactness experiments, through an inscribed disk tangent to that
boundary.  Spec strings:

    disk:<cx>,<cy>,<R>
    halfplane:<px>,<py>,<nx>,<ny>     (boundary point, inward normal)
    strip:<cx>,<cy>,<dx>,<dy>,<w>     (center, axis direction, half width)
    polygon:<x1>,<y1>;<x2>,<y2>;...   (strictly convex, counterclockwise)
    plane
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

__all__ = [
    "ConvexPolygon",
    "ConvexTarget",
    "Disk",
    "HalfPlane",
    "NoWitnessDirection",
    "OutsideHull",
    "RegularConvexityWitness",
    "Strip",
    "UnsupportedTarget",
    "WholePlane",
    "contains_point",
    "disk_to_target_map",
    "format_target",
    "hull_distance",
    "parse_target",
    "regular_convexity_witness",
    "supporting_halfplane",
]


class OutsideHull(ValueError):
    """Reference point outside the closed convex hull of the target."""


class NoWitnessDirection(ValueError):
    """No inscribed tangent disk exists in the requested direction."""


class UnsupportedTarget(ValueError):
    """Operation not defined for this target shape."""


def _rdot(a: complex, b: complex) -> float:
    """Real inner product Re(conj(a) * b) of plane vectors."""
    return (a.conjugate() * b).real


def _unit(v: complex) -> complex:
    m = abs(v)
    if m == 0:
        raise ValueError("zero vector cannot be normalized")
    return v / m


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"disk radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", complex(self.center))


@dataclass(frozen=True)
class HalfPlane:
    """Open half-plane {w : Re(conj(inward_normal) * (w - boundary_point)) > 0}."""

    boundary_point: complex
    inward_normal: complex

    def __post_init__(self):
        object.__setattr__(self, "boundary_point", complex(self.boundary_point))
        object.__setattr__(self, "inward_normal", _unit(complex(self.inward_normal)))

    def signed_distance(self, w: complex) -> float:
        return _rdot(self.inward_normal, complex(w) - self.boundary_point)


@dataclass(frozen=True)
class Strip:
    """Open strip of given half width around the line through `center` along `direction`."""

    center: complex
    direction: complex
    half_width: float

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError(f"strip half width must be positive, got {self.half_width}")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "direction", _unit(complex(self.direction)))

    @property
    def normal(self) -> complex:
        return 1j * self.direction

    def cross_coordinate(self, w: complex) -> float:
        return _rdot(self.normal, complex(w) - self.center)


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple

    def __post_init__(self):
        vs = tuple(complex(v) for v in self.vertices)
        if len(vs) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        m = len(vs)
        for i in range(m):
            a, b, c = vs[i], vs[(i + 1) % m], vs[(i + 2) % m]
            cross = ((b - a).conjugate() * (c - b)).imag
            if cross <= 0:
                raise ValueError(
                    "polygon must be strictly convex and counterclockwise"
                )
        object.__setattr__(self, "vertices", vs)

    def edges(self) -> list:
        """Per edge: (start vertex, end vertex, inward unit normal)."""
        vs = self.vertices
        out = []
        for i in range(len(vs)):
            a, b = vs[i], vs[(i + 1) % len(vs)]
            out.append((a, b, 1j * _unit(b - a)))
        return out


@dataclass(frozen=True)
class WholePlane:
    """Target whose convex hull is the whole plane; every Bohr condition holds."""


ConvexTarget = Union[Disk, HalfPlane, Strip, ConvexPolygon, WholePlane]


@dataclass(frozen=True)
class RegularConvexityWitness:
    """Inscribed disk touching the hull boundary at `point`."""

    point: complex
    disk: Disk


# -- membership and hull geometry --------------------------------------------


def contains_point(target: ConvexTarget, w: complex, strict: bool = True) -> bool:
    w = complex(w)
    if isinstance(target, WholePlane):
        return True
    if isinstance(target, Disk):
        d = target.radius - abs(w - target.center)
    elif isinstance(target, HalfPlane):
        d = target.signed_distance(w)
    elif isinstance(target, Strip):
        d = target.half_width - abs(target.cross_coordinate(w))
    elif isinstance(target, ConvexPolygon):
        d = min(_rdot(nu, w - a) for a, _, nu in target.edges())
    else:
        raise UnsupportedTarget(f"unknown target {target!r}")
    return d > 0 if strict else d >= 0


def _signed_hull_depth(target: ConvexTarget, w: complex) -> float:
    if isinstance(target, Disk):
        return target.radius - abs(w - target.center)
    if isinstance(target, HalfPlane):
        return target.signed_distance(w)
    if isinstance(target, Strip):
        return target.half_width - abs(target.cross_coordinate(w))
    if isinstance(target, ConvexPolygon):
        return min(_rdot(nu, w - a) for a, _, nu in target.edges())
    raise UnsupportedTarget(f"unknown target {target!r}")


def hull_distance(target: ConvexTarget, w: complex) -> float:
    """Euclidean distance from an interior point to the hull boundary.

    Infinite for the whole plane; raises OutsideHull when w lies strictly
    outside the closed hull.
    """
    if isinstance(target, WholePlane):
        return math.inf
    depth = _signed_hull_depth(target, complex(w))
    if depth < -1e-12:
        raise OutsideHull(f"point {w} lies outside the closed hull")
    return max(depth, 0.0)


def supporting_halfplane(target: ConvexTarget, w: complex) -> HalfPlane:
    """Supporting half-plane through a nearest hull-boundary point to w.

    The returned half-plane contains the hull and satisfies
    dist(w, boundary) == hull_distance(target, w).  When several boundary
    points are nearest (e.g. the center of a polygon), the lowest-index
    edge / canonical direction is chosen deterministically.
    """
    w = complex(w)
    if isinstance(target, WholePlane):
        raise UnsupportedTarget("the whole plane has no supporting half-plane")
    depth = _signed_hull_depth(target, w)
    if depth <= 0:
        raise OutsideHull(f"point {w} is not interior to the hull")
    if isinstance(target, Disk):
        direction = 1.0 + 0j if w == target.center else _unit(w - target.center)
        zeta = target.center + target.radius * direction
        return HalfPlane(zeta, -direction)
    if isinstance(target, HalfPlane):
        return target
    if isinstance(target, Strip):
        x = target.cross_coordinate(w)
        # nearest side: the one the point leans toward; ties go to +normal
        side = 1.0 if x >= 0 else -1.0
        nu = target.normal * side
        axial = w - target.center - x * target.normal
        zeta = target.center + axial + target.half_width * nu
        return HalfPlane(zeta, -nu)
    if isinstance(target, ConvexPolygon):
        best = None
        for a, b, nu in target.edges():
            d = _rdot(nu, w - a)
            if best is None or d < best[0] - 1e-15:
                best = (d, a, nu)
        d, a, nu = best
        zeta = w - d * nu
        return HalfPlane(zeta, nu)
    raise UnsupportedTarget(f"unknown target {target!r}")


def regular_convexity_witness(
    target: ConvexTarget, direction: complex
) -> RegularConvexityWitness:
    """Inscribed disk tangent to the hull boundary in the given outward direction.

    Raises NoWitnessDirection when the shape admits no tangent inscribed
    disk that way (half-plane or strip off their normals, polygon vertex
    directions).
    """
    d = _unit(complex(direction))
    if isinstance(target, WholePlane):
        raise UnsupportedTarget("the whole plane has no boundary")
    if isinstance(target, Disk):
        zeta = target.center + target.radius * d
        return RegularConvexityWitness(zeta, target)
    if isinstance(target, HalfPlane):
        outward = -target.inward_normal
        if abs(d - outward) > 1e-9:
            raise NoWitnessDirection(
                f"half-plane admits a witness only along {outward}"
            )
        zeta = target.boundary_point
        return RegularConvexityWitness(zeta, Disk(zeta - d, 1.0))
    if isinstance(target, Strip):
        for outward in (target.normal, -target.normal):
            if abs(d - outward) <= 1e-9:
                zeta = target.center + target.half_width * outward
                return RegularConvexityWitness(
                    zeta, Disk(target.center, target.half_width)
                )
        raise NoWitnessDirection("strip admits witnesses only along its normals")
    if isinstance(target, ConvexPolygon):
        for a, b, nu in target.edges():
            outward = -nu
            if abs(d - outward) <= 1e-9:
                zeta = (a + b) / 2.0
                rho = _max_inscribed_radius(target, zeta, outward)
                return RegularConvexityWitness(zeta, Disk(zeta - rho * outward, rho))
        raise NoWitnessDirection(
            "direction matches no edge normal (polygon vertices admit no witness)"
        )
    raise UnsupportedTarget(f"unknown target {target!r}")


def _max_inscribed_radius(
    poly: ConvexPolygon, zeta: complex, outward: complex
) -> float:
    """Largest rho with the disk of radius rho centered at zeta - rho*outward inside."""
    rho = math.inf
    for a, _, nu in poly.edges():
        denom = 1.0 + _rdot(nu, outward)
        if denom <= 1e-12:
            continue  # the tangent edge itself
        rho = min(rho, _rdot(nu, zeta - a) / denom)
    if not rho > 0:
        raise NoWitnessDirection("no inscribed disk fits at this boundary point")
    return rho


# -- conformal gallery --------------------------------------------------------


def disk_to_target_map(
    target: ConvexTarget, halfplane_scale: float = 2.0
) -> Callable:
    """Closed-form surjective holomorphic map from the unit disk onto the target.

    Disk: affine.  Half-plane: scaled Cayley transform placing the image of 0
    at distance `halfplane_scale` from the boundary.  Strip: logarithmic map,
    rotated to the strip axis, sending 0 to the center line.  The returned
    callable accepts scalars or ndarrays.
    """
    if isinstance(target, Disk):
        c, R = target.center, target.radius

        def h_disk(z):
            return c + R * z

        return h_disk
    if isinstance(target, HalfPlane):
        if not halfplane_scale > 0:
            raise ValueError("half-plane map scale must be positive")
        b, nu, s = target.boundary_point, target.inward_normal, halfplane_scale

        def h_halfplane(z):
            return b + nu * s * (1.0 - z) / (1.0 + z)

        return h_halfplane
    if isinstance(target, Strip):
        c, u, hw = target.center, target.direction, target.half_width
        rot = u / 1j

        def h_strip(z):
            core = (2j / np.pi) * np.log((1.0 + 1j * z) / (1.0 - 1j * z))
            return c + rot * hw * core

        return h_strip
    raise UnsupportedTarget(
        f"no closed-form disk map for target {type(target).__name__}"
    )


# -- spec strings -------------------------------------------------------------


def parse_target(spec: str) -> ConvexTarget:
    spec = spec.strip()
    if spec == "plane":
        return WholePlane()
    kind, _, rest = spec.partition(":")
    if kind == "disk":
        cx, cy, R = (float(x) for x in rest.split(","))
        return Disk(complex(cx, cy), R)
    if kind == "halfplane":
        px, py, nx, ny = (float(x) for x in rest.split(","))
        return HalfPlane(complex(px, py), complex(nx, ny))
    if kind == "strip":
        cx, cy, dx, dy, w = (float(x) for x in rest.split(","))
        return Strip(complex(cx, cy), complex(dx, dy), w)
    if kind == "polygon":
        vertices = []
        for chunk in rest.split(";"):
            x, y = (float(v) for v in chunk.split(","))
            vertices.append(complex(x, y))
        return ConvexPolygon(tuple(vertices))
    raise ValueError(f"bad target spec {spec!r}")


def format_target(target: ConvexTarget) -> str:
    if isinstance(target, WholePlane):
        return "plane"
    if isinstance(target, Disk):
        c = target.center
        return f"disk:{c.real:g},{c.imag:g},{target.radius:g}"
    if isinstance(target, HalfPlane):
        b, nu = target.boundary_point, target.inward_normal
        return f"halfplane:{b.real:g},{b.imag:g},{nu.real:g},{nu.imag:g}"
    if isinstance(target, Strip):
        c, u = target.center, target.direction
        return f"strip:{c.real:g},{c.imag:g},{u.real:g},{u.imag:g},{target.half_width:g}"
    if isinstance(target, ConvexPolygon):
        body = ";".join(f"{v.real:g},{v.imag:g}" for v in target.vertices)
        return f"polygon:{body}"
    raise UnsupportedTarget(f"unknown target {target!r}")
