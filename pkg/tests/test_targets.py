"""Target geometry: hull distance, supporting lines, witnesses, gallery maps."""

import cmath
import math

import numpy as np
import pytest

from bohrlab.targets import (
    ConvexPolygon,
    Disk,
    HalfPlane,
    NoWitnessDirection,
    OutsideHull,
    RegularConvexityWitness,
    Strip,
    UnsupportedTarget,
    WholePlane,
    contains_point,
    disk_to_target_map,
    format_target,
    hull_distance,
    parse_target,
    regular_convexity_witness,
    supporting_halfplane,
)

UNIT_DISK = Disk(0, 1.0)
RE_LT_1 = HalfPlane(1, -1)  # Re w < 1
RE_GT_0 = HalfPlane(0, 1)  # Re w > 0
VSTRIP = Strip(0, 1j, 1.0)  # |Re w| < 1
SQUARE = ConvexPolygon((0, 1, 1 + 1j, 1j))

SHAPES = [UNIT_DISK, RE_LT_1, VSTRIP, SQUARE]


def random_interior(shape, rng):
    if isinstance(shape, Disk):
        return shape.center + shape.radius * 0.98 * math.sqrt(
            rng.uniform()
        ) * cmath.exp(2j * math.pi * rng.uniform())
    if isinstance(shape, HalfPlane):
        depth = rng.uniform(0.02, 5.0)
        along = rng.uniform(-5.0, 5.0)
        return shape.boundary_point + depth * shape.inward_normal + along * (
            1j * shape.inward_normal
        )
    if isinstance(shape, Strip):
        x = rng.uniform(-0.98, 0.98) * shape.half_width
        along = rng.uniform(-5.0, 5.0)
        return shape.center + x * shape.normal + along * shape.direction
    if isinstance(shape, ConvexPolygon):
        ws = rng.dirichlet(np.ones(len(shape.vertices)))
        return complex(sum(w * v for w, v in zip(ws, shape.vertices)))
    raise AssertionError(shape)


def random_hull_point(shape, rng):
    """Random point of the closed hull (interior is enough for the inclusion check)."""
    return random_interior(shape, rng)


def test_hull_distance_disk():
    assert hull_distance(UNIT_DISK, 0.3) == pytest.approx(0.7, abs=0.0)


def test_hull_distance_halfplane():
    assert hull_distance(RE_LT_1, 0.2) == pytest.approx(0.8, abs=0.0)


def test_hull_distance_strip_matches_one_minus_abs_re():
    assert hull_distance(VSTRIP, 0.3 + 5j) == pytest.approx(0.7, abs=1e-15)


def test_hull_distance_wholeplane_infinite():
    assert hull_distance(WholePlane(), 123 + 4j) == math.inf


def test_hull_distance_outside_raises():
    with pytest.raises(OutsideHull):
        hull_distance(UNIT_DISK, 2.0)


def test_hull_distance_disk_exact_formula():
    rng = np.random.default_rng(5)
    disk = Disk(2 - 1j, 3.0)
    for _ in range(100):
        w = random_interior(disk, rng)
        assert hull_distance(disk, w) == pytest.approx(
            disk.radius - abs(w - disk.center), abs=1e-12
        )


def test_supporting_halfplane_disk():
    hp = supporting_halfplane(UNIT_DISK, 0.5)
    assert hp.boundary_point == pytest.approx(1.0)
    assert hp.inward_normal == pytest.approx(-1.0)


def test_supporting_halfplane_strip():
    hp = supporting_halfplane(VSTRIP, -0.2)
    # nearest side is Re w = -1, inward direction +1
    assert hp.signed_distance(-0.2) == pytest.approx(0.8, abs=1e-15)
    assert hp.inward_normal == pytest.approx(1.0)


def test_supporting_halfplane_square():
    hp = supporting_halfplane(SQUARE, 0.5 + 0.1j)
    assert hp.inward_normal == pytest.approx(1j)
    assert hp.signed_distance(0.5 + 0.1j) == pytest.approx(0.1, abs=1e-12)
    # brute force over edges agrees
    edges = SQUARE.edges()
    brute = min((nu.conjugate() * ((0.5 + 0.1j) - a)).real for a, _, nu in edges)
    assert hp.signed_distance(0.5 + 0.1j) == pytest.approx(brute, abs=1e-12)


@pytest.mark.parametrize("shape", SHAPES, ids=lambda s: type(s).__name__)
def test_supporting_halfplane_contains_hull_and_matches_distance(shape):
    rng = np.random.default_rng(11)
    for _ in range(100):
        w = random_interior(shape, rng)
        hp = supporting_halfplane(shape, w)
        assert hp.signed_distance(w) == pytest.approx(
            hull_distance(shape, w), abs=1e-12
        )
        for _ in range(200):
            q = random_hull_point(shape, rng)
            assert hp.signed_distance(q) >= -1e-9


def _transformed(shape, scale, rot, shift):
    factor = scale * rot
    if isinstance(shape, Disk):
        return Disk(factor * shape.center + shift, scale * shape.radius)
    if isinstance(shape, HalfPlane):
        return HalfPlane(factor * shape.boundary_point + shift, rot * shape.inward_normal)
    if isinstance(shape, Strip):
        return Strip(
            factor * shape.center + shift, rot * shape.direction, scale * shape.half_width
        )
    if isinstance(shape, ConvexPolygon):
        return ConvexPolygon(tuple(factor * v + shift for v in shape.vertices))
    raise AssertionError(shape)


@pytest.mark.parametrize("shape", SHAPES, ids=lambda s: type(s).__name__)
def test_hull_distance_similarity_equivariance(shape):
    rng = np.random.default_rng(17)
    for _ in range(100):
        w = random_interior(shape, rng)
        scale = rng.uniform(0.2, 3.0)
        rot = cmath.exp(2j * math.pi * rng.uniform())
        shift = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        moved = _transformed(shape, scale, rot, shift)
        assert hull_distance(moved, scale * rot * w + shift) == pytest.approx(
            scale * hull_distance(shape, w), rel=1e-12, abs=1e-12
        )


def test_witness_disk_is_itself():
    w = regular_convexity_witness(UNIT_DISK, 1)
    assert w.point == pytest.approx(1.0)
    assert w.disk == UNIT_DISK


def test_witness_halfplane_canonical():
    w = regular_convexity_witness(RE_LT_1, 1)
    assert w.point == pytest.approx(1.0)
    assert w.disk.center == pytest.approx(0.0)
    assert w.disk.radius == 1.0


def test_witness_strip():
    w = regular_convexity_witness(VSTRIP, 1)
    assert w.point == pytest.approx(1.0)
    assert w.disk == Disk(0, 1.0)


def test_witness_wrong_direction_raises():
    with pytest.raises(NoWitnessDirection):
        regular_convexity_witness(RE_LT_1, 1j)


def test_witness_polygon_edge_and_vertex():
    w = regular_convexity_witness(SQUARE, -1j)  # bottom edge, outward -i
    assert w.point == pytest.approx(0.5)
    assert w.disk.radius == pytest.approx(0.5)
    assert contains_point(SQUARE, w.disk.center)
    with pytest.raises(NoWitnessDirection):
        regular_convexity_witness(SQUARE, cmath.exp(-0.75j * math.pi))


def test_witness_point_on_disk_and_hull_boundary():
    for shape, direction in [(UNIT_DISK, 1j), (VSTRIP, -1), (SQUARE, 1)]:
        w = regular_convexity_witness(shape, direction)
        assert abs(w.point - w.disk.center) == pytest.approx(w.disk.radius, rel=1e-12)
        assert _on_hull_boundary(shape, w.point)
        # the inscribed disk is tangent from inside: its center sits one
        # radius deep in the hull
        assert hull_distance(shape, w.disk.center) == pytest.approx(
            w.disk.radius, rel=1e-9
        )


def _on_hull_boundary(shape, zeta):
    if isinstance(shape, Disk):
        return abs(abs(zeta - shape.center) - shape.radius) < 1e-12
    if isinstance(shape, HalfPlane):
        return abs(shape.signed_distance(zeta)) < 1e-12
    if isinstance(shape, Strip):
        return abs(abs(shape.cross_coordinate(zeta)) - shape.half_width) < 1e-12
    if isinstance(shape, ConvexPolygon):
        return abs(min((nu.conjugate() * (zeta - a)).real for a, _, nu in shape.edges())) < 1e-12
    return False


def test_disk_map_affine():
    h = disk_to_target_map(Disk(2 + 1j, 3.0))
    assert h(0) == 2 + 1j
    assert h(0.5) == 2 + 1j + 1.5


def test_halfplane_map_values():
    h = disk_to_target_map(RE_LT_1, halfplane_scale=2.0)
    assert complex(h(0)).real == pytest.approx(-1.0, abs=1e-15)
    assert complex(h(0.5)).real == pytest.approx(1 - 2 * (0.5 / 1.5), abs=1e-12)


def test_strip_map_limits():
    h = disk_to_target_map(VSTRIP)
    assert abs(complex(h(0))) < 1e-15
    assert complex(h(0.999)).real == pytest.approx(-1.0, abs=0.02)
    assert complex(h(-0.999)).real == pytest.approx(1.0, abs=0.02)


@pytest.mark.parametrize(
    "shape", [UNIT_DISK, Disk(3 - 2j, 0.5), RE_LT_1, RE_GT_0, VSTRIP, Strip(1j, 1 + 1j, 0.3)],
    ids=format_target,
)
def test_gallery_maps_land_inside(shape):
    h = disk_to_target_map(shape)
    rng = np.random.default_rng(23)
    radii = np.sqrt(rng.uniform(0, 1, 10000)) * 0.9999
    angles = rng.uniform(0, 2 * np.pi, 10000)
    zs = radii * np.exp(1j * angles)
    ws = h(zs)
    for w in np.asarray(ws).ravel():
        assert contains_point(shape, complex(w))


def test_gallery_map_unsupported_shapes():
    with pytest.raises(UnsupportedTarget):
        disk_to_target_map(SQUARE)
    with pytest.raises(UnsupportedTarget):
        disk_to_target_map(WholePlane())


def test_polygon_validation():
    with pytest.raises(ValueError):
        ConvexPolygon((0, 1j, 1))  # clockwise
    with pytest.raises(ValueError):
        ConvexPolygon((0, 1))
    with pytest.raises(ValueError):
        ConvexPolygon((0, 1, 2, 1 + 1j))  # collinear edge


def test_target_spec_round_trip():
    for spec in (
        "disk:0,0,1",
        "disk:3,-2,0.5",
        "halfplane:1,0,-1,0",
        "strip:0,0,0,1,1",
        "polygon:0,0;1,0;1,1;0,1",
        "plane",
    ):
        assert format_target(parse_target(spec)) == spec


def test_parse_target_rejects_garbage():
    for bad in ("disk:1,2", "blob:1", "strip:1,2,3", "halfplane:a,b,c,d"):
        with pytest.raises(ValueError):
            parse_target(bad)
