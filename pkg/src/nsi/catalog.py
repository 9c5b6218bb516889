"""Named fans used throughout the tests and demos."""

from __future__ import annotations

from .toric import Fan


def projective_plane() -> Fan:
    return Fan.from_rays_2d([(1, 0), (0, 1), (-1, -1)])


def p1_x_p1() -> Fan:
    return Fan.from_rays_2d([(1, 0), (0, 1), (-1, 0), (0, -1)])


def quadric_cone() -> Fan:
    """P(1,1,2): one A1 point, at the cone spanned by (-1,-2) and (1,0)."""
    return Fan.from_rays_2d([(1, 0), (0, 1), (-1, -2)])


def weighted_113() -> Fan:
    """P(1,1,3): one 1/3(1,1) point."""
    return Fan.from_rays_2d([(1, 0), (0, 1), (-1, -3)])


def two_point() -> Fan:
    """Two singular points, of index 4 and 2."""
    return Fan.from_rays_2d([(1, 0), (0, 1), (-1, -2), (1, -2)])


def two_a1() -> Fan:
    """Two A1 points, at the cones ending and starting at (1,-2)."""
    return Fan.from_rays_2d([(1, 0), (0, 1), (-1, 0), (1, -2)])


def one_a1() -> Fan:
    """Four rays, one A1 point at the cone of (-1,1) and (-1,-1)."""
    return Fan.from_rays_2d([(1, 0), (0, 1), (-1, 1), (-1, -1)])


def projective_space() -> Fan:
    return Fan(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)),
               ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)))


def weighted_1112() -> Fan:
    """P(1,1,1,2); ray 3 has weight 1, ray 2 weight 2 (Cartier)."""
    return Fan(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -2)),
               ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)))


def quadric_cone_x_line() -> Fan:
    """P(1,1,2) x P^1; rays 3 and 4 are the two fibre directions."""
    base = quadric_cone()
    rays = tuple(r + (0,) for r in base.rays) + ((0, 0, 1), (0, 0, -1))
    cones = tuple(c + (t,) for c in base.maximal_cones for t in (3, 4))
    return Fan(3, rays, cones)


SURFACES = {
    "p2": projective_plane,
    "p1xp1": p1_x_p1,
    "quadric_cone": quadric_cone,
    "p113": weighted_113,
    "two_point": two_point,
    "two_a1": two_a1,
    "one_a1": one_a1,
}

THREEFOLDS = {
    "p3": projective_space,
    "p1112": weighted_1112,
    "quadric_cone_x_p1": quadric_cone_x_line,
}
