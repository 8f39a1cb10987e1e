"""Realize hedgehog surfaces from support numbers.

Reconstruction places each surface vertex at the intersection of the
planes (x, n_j) = h_j of the first three faces of its cell, assembles the
face polygons by walking the cells around each face in the fan-induced
order, and reads oriented areas off the signed shoelace sum.  The sign
convention comes from the counterclockwise orientation of the spherical
cells: an outward-equipped convex body gets positive areas everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateEquipment,
    DegenerateFace,
    FanMismatch,
    InconsistentVertex,
    SingularVertex,
)
from .fan import Fan, arc_key

VERTEX_DET_TOL = 1e-12
CONSISTENCY_TOL = 1e-8     # relative to scale, cells with more than 3 faces
EDGE_TOL = 1e-9            # relative to scale
AREA_TOL = 1e-12           # relative to scale**2


def support_scale(h) -> float:
    """Length scale used by every relative tolerance: max(1, max |h_j|)."""
    h = np.asarray(h, dtype=float)
    return max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0


def face_frame(normal):
    """Deterministic orthonormal basis (u, v) of the plane with this normal.

    u is the normalized projection of the smallest-index coordinate axis not
    parallel to the normal; v completes a right-handed triple (u, v, normal).
    """
    n = np.asarray(normal, dtype=float)
    for k in range(3):
        axis = np.zeros(3)
        axis[k] = 1.0
        if 1.0 - abs(float(n @ axis)) > 1e-8:
            break
    u = axis - (axis @ n) * n
    u = u / np.linalg.norm(u)
    v = np.cross(n, u)
    return u, v


@dataclass(frozen=True)
class Realization:
    """Raw geometry of (fan, h) before any strictness checks."""

    vertices: np.ndarray               # (V, 3), one point per cell
    areas: np.ndarray                  # (m,) oriented
    perimeters: np.ndarray             # (m,)
    min_edge: float
    consistency: float                 # max |extra-plane residual|, 0.0 if all simple
    consistency_where: tuple[int, int] | None   # (cell, face) of the worst residual
    edge_lengths: dict[tuple[int, int], float]


def _realize(fan: Fan, h) -> Realization:
    h = np.asarray(h, dtype=float)
    eq = fan.equipment
    if h.shape != (fan.m,):
        raise ValueError(f"support vector has length {h.shape}, fan has m={fan.m}")

    vertices = np.empty((len(fan.cells), 3))
    worst = 0.0
    worst_where = None
    for ci, cell in enumerate(fan.cells):
        first = list(cell[:3])
        mat = eq[first]
        if abs(float(np.linalg.det(mat))) < VERTEX_DET_TOL:
            raise SingularVertex(f"cell {ci}: faces {tuple(first)} have coplanar normals")
        v = np.linalg.solve(mat, h[first])
        vertices[ci] = v
        for f in cell[3:]:
            res = abs(float(eq[f] @ v - h[f]))
            if res > worst:
                worst = res
                worst_where = (ci, f)

    areas = np.empty(fan.m)
    perimeters = np.empty(fan.m)
    min_edge = np.inf
    edge_lengths: dict[tuple[int, int], float] = {}
    for j in range(fan.m):
        ring, neighbors = fan.face_rings[j]
        pts = vertices[list(ring)]
        nxt = np.roll(pts, -1, axis=0)
        areas[j] = 0.5 * float(np.einsum("ij,ij->", np.cross(pts, nxt), np.broadcast_to(eq[j], pts.shape)))
        lens = np.linalg.norm(nxt - pts, axis=1)
        perimeters[j] = float(lens.sum())
        min_edge = min(min_edge, float(lens.min()))
        for i, k in enumerate(neighbors):
            edge_lengths.setdefault(arc_key(j, k), float(lens[i]))

    return Realization(
        vertices=vertices,
        areas=areas,
        perimeters=perimeters,
        min_edge=float(min_edge),
        consistency=worst,
        consistency_where=worst_where,
        edge_lengths=edge_lengths,
    )


@dataclass(frozen=True)
class Herisson:
    """A realized hedgehog surface: fan, supports, vertices, signed areas."""

    fan: Fan
    h: np.ndarray
    vertices: np.ndarray
    signs: np.ndarray
    oriented_areas: np.ndarray

    def __post_init__(self):
        for name in ("h", "vertices", "signs", "oriented_areas"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def m(self) -> int:
        return self.fan.m

    @property
    def scale(self) -> float:
        return support_scale(self.h)

    def face_cycle(self, j: int) -> tuple[int, ...]:
        """Cell indices around face j, in boundary order."""
        return self.fan.face_rings[j][0]

    def face_polygon(self, j: int) -> np.ndarray:
        """Vertex coordinates of face j's polygon, (k, 3)."""
        return self.vertices[list(self.face_cycle(j))]

    def edge_lengths(self) -> dict[tuple[int, int], float]:
        """Length of the shared edge dual to each arc."""
        out: dict[tuple[int, int], float] = {}
        for j in range(self.m):
            ring, neighbors = self.fan.face_rings[j]
            pts = self.vertices[list(ring)]
            nxt = np.roll(pts, -1, axis=0)
            lens = np.linalg.norm(nxt - pts, axis=1)
            for i, k in enumerate(neighbors):
                out.setdefault(arc_key(j, k), float(lens[i]))
        return out

    def translated(self, c) -> "Herisson":
        """The same surface moved by c (support numbers shift by (c, n_j))."""
        c = np.asarray(c, dtype=float)
        return reconstruct(self.fan, self.h + self.fan.equipment @ c)


def reconstruct(fan: Fan, h) -> Herisson:
    """Realize the herisson with the given support numbers.

    Raises SingularVertex for coplanar normals at a cell, InconsistentVertex
    when a fourth plane misses its vertex beyond 1e-8*scale, DegenerateFace
    when an edge or an oriented area falls under the degeneracy tolerances.
    """
    h = np.asarray(h, dtype=float)
    if not np.all(np.isfinite(h)):
        raise ValueError("support numbers must be finite")
    real = _realize(fan, h)
    scale = support_scale(h)
    if real.consistency > CONSISTENCY_TOL * scale:
        ci, f = real.consistency_where
        raise InconsistentVertex(
            f"cell {ci}: plane of face {f} misses the vertex by {real.consistency:.3e}"
        )
    if real.min_edge <= EDGE_TOL * scale:
        raise DegenerateFace(f"shortest edge {real.min_edge:.3e} below tolerance")
    amin = float(np.min(np.abs(real.areas)))
    if amin <= AREA_TOL * scale**2:
        raise DegenerateFace(f"smallest |oriented area| {amin:.3e} below tolerance")
    return Herisson(
        fan=fan,
        h=h,
        vertices=real.vertices,
        signs=np.sign(real.areas).astype(int),
        oriented_areas=real.areas,
    )


def balance_residual(f, fan: Fan) -> np.ndarray:
    """Sum of oriented areas times equipment vectors (zero for any herisson)."""
    f = np.asarray(f, dtype=float)
    if f.shape != (fan.m,):
        raise ValueError("area vector length does not match the fan")
    return fan.equipment.T @ f


def gauge_fix(fan: Fan, h) -> np.ndarray:
    """Translate the surface so that sum h_j n_j = 0.

    Removes the three translation degrees of freedom: the returned supports
    describe a translate of the input surface and the map is a projection
    (applying it twice changes nothing).
    """
    h = np.asarray(h, dtype=float)
    eq = fan.equipment
    gram = eq.T @ eq
    if abs(float(np.linalg.det(gram))) < 1e-12:
        raise DegenerateEquipment("equipment does not span 3-space")
    c = np.linalg.solve(gram, eq.T @ h)
    return h - eq @ c


def minkowski_sum(h1: Herisson, h2: Herisson) -> Herisson:
    """Minkowski sum of two herissons over one fan: supports add.

    Requires identical fans and matching face signs; every face of the
    result is the planar Minkowski sum of the parallel input faces, and
    edge lengths add arc by arc.
    """
    if h1.fan.cells != h2.fan.cells or not np.allclose(
        h1.fan.equipment, h2.fan.equipment, rtol=0.0, atol=1e-12
    ):
        raise FanMismatch("operands are not built on the same fan")
    if not np.array_equal(h1.signs, h2.signs):
        raise FanMismatch("parallel faces carry different signs")
    return reconstruct(h1.fan, h1.h + h2.h)


def perimeter_bound(target_area: float, min_angle: float) -> float:
    """Longest side of a convex polygon with bounded area and edge-line angles.

    For a polygon of area at most target_area whose distinct edge lines meet
    at angles no smaller than min_angle (and with no parallel sides), any
    side is at most 2*sqrt(area)/sin(angle): the isosceles triangle raised
    on a side of length l with base angles a has area l^2 sin^2(a)/4 and
    fits inside the polygon.  The solver multiplies this by the side count
    as a divergence sentinel.
    """
    if not target_area > 0.0:
        raise ValueError("target_area must be positive")
    if not 0.0 < min_angle <= np.pi / 2:
        raise ValueError("min_angle must lie in (0, pi/2]")
    return 2.0 * float(np.sqrt(target_area)) / float(np.sin(min_angle))
