"""Metric structure of 2D unit spheres: distances, arcs, stars, bisectors.

Angle sets are represented as unions of closed intervals normalised to
``[0, 2pi)``; all searches exploit that the distance from a fixed sphere
point to a moving one is monotone along each arc toward the antipode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import DEFAULT_TOLS
from .norms import (Norm, PolygonNorm, SpherePoint, radial_point,
                    radial_points_vec, radial_vec, sphere_point)
from .numerics import TWO_PI, bisect_first_true, bisect_root

__all__ = [
    "ArcSet", "SphereSegment", "BisectorPair", "arcset", "arc_hausdorff",
    "sphere_distance", "diametral_set", "star", "is_flat", "maximal_segments",
    "bisector_points", "is_isosceles_orthogonal", "self_circumference",
    "arc_length_map",
]


@dataclass(frozen=True)
class ArcSet:
    """Union of closed angle intervals on the circle, owned by a 2D norm."""

    intervals: tuple[tuple[float, float], ...]
    norm: Norm | None = None

    def measure(self) -> float:
        return sum(b - a for a, b in self.intervals)

    def contains(self, theta: float, tol: float = 1e-12) -> bool:
        t = theta % TWO_PI
        return any(a - tol <= t <= b + tol
                   or a - tol <= t + TWO_PI <= b + tol
                   for a, b in self.intervals)

    def negated(self) -> "ArcSet":
        """The set of antipodes: every angle shifted by pi."""
        return arcset([(a + math.pi, b + math.pi) for a, b in self.intervals],
                      norm=self.norm)

    def endpoints(self) -> list[float]:
        out: list[float] = []
        for a, b in self.intervals:
            out.extend((a, b))
        return out

    def sample(self, per_interval: int = 256) -> np.ndarray:
        """Angles covering the set, endpoints included."""
        parts = [np.linspace(a, b, per_interval) for a, b in self.intervals]
        return np.concatenate(parts) % TWO_PI

    def to_json(self) -> dict:
        return {"intervals": [[a, b] for a, b in self.intervals]}


def arcset(intervals, norm: Norm | None = None,
           merge_gap: float = DEFAULT_TOLS.arc_merge) -> ArcSet:
    """Normalise raw intervals: reduce mod 2pi, split wraps, merge near-abutting."""
    pieces: list[tuple[float, float]] = []
    for lo, hi in intervals:
        if hi < lo:
            raise ValueError(f"interval endpoints out of order: ({lo}, {hi})")
        if hi - lo >= TWO_PI:
            return ArcSet(((0.0, TWO_PI),), norm)
        shift = math.floor(lo / TWO_PI) * TWO_PI
        lo, hi = lo - shift, hi - shift
        if hi <= TWO_PI:
            pieces.append((lo, hi))
        else:
            pieces.append((lo, TWO_PI))
            pieces.append((0.0, hi - TWO_PI))
    pieces.sort()
    merged: list[list[float]] = []
    for lo, hi in pieces:
        if merged and lo - merged[-1][1] < merge_gap:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    # a set touching the 0/2pi seam stays split; circular metrics see one arc
    return ArcSet(tuple((a, b) for a, b in merged), norm)


def _circular_point_distance(theta: float, intervals) -> float:
    best = math.inf
    for a, b in intervals:
        for shift in (-TWO_PI, 0.0, TWO_PI):
            t = theta + shift
            if a <= t <= b:
                return 0.0
            best = min(best, abs(t - a), abs(t - b))
    return best


def arc_hausdorff(first: ArcSet, second: ArcSet) -> float:
    """Hausdorff distance between two angle sets, in the circular metric.

    The supremum of the distance-to-set function over a union of arcs is
    attained at arc endpoints or at gap midpoints of the other set, so the
    computation is exact up to roundoff.
    """
    def directed(a: ArcSet, b: ArcSet) -> float:
        cands = list(a.endpoints())
        gaps = sorted(x % TWO_PI for x in b.endpoints())
        for i in range(len(gaps)):
            lo = gaps[i]
            hi = gaps[(i + 1) % len(gaps)] + (TWO_PI if i + 1 == len(gaps) else 0.0)
            mid = 0.5 * (lo + hi)
            if a.contains(mid):
                cands.append(mid)
        return max(_circular_point_distance(t % TWO_PI, b.intervals) for t in cands)

    if not first.intervals or not second.intervals:
        raise ValueError("hausdorff distance needs nonempty sets")
    return max(directed(first, second), directed(second, first))


def _require_owner(norm: Norm, p: SpherePoint) -> None:
    if p.owner != norm:
        raise ValueError("sphere point belongs to a different norm")


def sphere_distance(norm: Norm, p: SpherePoint, q: SpherePoint) -> float:
    """Chordal distance ``||p - q||`` between two points of the same sphere."""
    _require_owner(norm, p)
    _require_owner(norm, q)
    return norm(p.vec - q.vec)


def _theta_of(p: SpherePoint) -> float:
    if p.theta is not None:
        return p.theta % TWO_PI
    return math.atan2(p.v[1], p.v[0]) % TWO_PI


def diametral_set(norm: Norm, x: SpherePoint, *,
                  level_tol: float = DEFAULT_TOLS.evaluation,
                  angle_tol: float = DEFAULT_TOLS.angle) -> ArcSet:
    """Sphere points at chordal distance exactly 2 from ``x``.

    The distance to ``x`` rises monotonically from 0 to 2 along each arc
    toward ``-x``, so the boundary of the level set {distance = 2} is found
    by predicate bisection on each side; the result is one closed arc that
    always contains the antipode of ``x``.
    """
    if norm.dim != 2:
        raise ValueError("diametral_set requires a 2D norm")
    _require_owner(norm, x)
    alpha = _theta_of(x)
    xv = x.vec

    def dist(t: float) -> float:
        return float(norm(xv - radial_vec(norm, alpha + t)))

    # anchor the level at the attained maximum so near-sphere inputs stay safe
    level = dist(math.pi) - level_tol
    t_fwd = bisect_first_true(lambda t: dist(t) >= level, 0.0, math.pi,
                              xtol=angle_tol)
    t_bwd = bisect_first_true(lambda u: dist(TWO_PI - u) >= level, 0.0, math.pi,
                              xtol=angle_tol)
    return arcset([(alpha + t_fwd, alpha + TWO_PI - t_bwd)], norm=norm)


def star(norm: Norm, x: SpherePoint, *,
         level_tol: float = DEFAULT_TOLS.evaluation,
         angle_tol: float = DEFAULT_TOLS.angle) -> ArcSet:
    """Points x' whose segment [x, x'] lies inside the sphere.

    By convexity this is exactly {x' : ||(x + x')/2|| = 1}; the midpoint norm
    decreases monotonically away from ``x`` on both sides.
    """
    if norm.dim != 2:
        raise ValueError("star requires a 2D norm")
    _require_owner(norm, x)
    alpha = _theta_of(x)
    xv = x.vec

    def midnorm(t: float) -> float:
        return float(norm(0.5 * (xv + radial_vec(norm, alpha + t))))

    level = midnorm(0.0) - 0.5 * level_tol
    t_fwd = bisect_first_true(lambda t: midnorm(t) < level, 0.0, math.pi,
                              xtol=angle_tol)
    t_bwd = bisect_first_true(lambda u: midnorm(TWO_PI - u) < level, 0.0, math.pi,
                              xtol=angle_tol)
    return arcset([(alpha - t_bwd, alpha + t_fwd)], norm=norm)


def is_flat(norm: Norm, x: SpherePoint, radius: float = 1e-3,
            *, tol: float = 1e-6) -> bool:
    """True when the distance-2 set is locally constant around ``x``.

    Probes one point at sphere distance ``radius`` on each side of ``x`` and
    compares the three diametral sets in the circular Hausdorff metric.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    _require_owner(norm, x)
    alpha = _theta_of(x)
    xv = x.vec
    base = diametral_set(norm, x)
    for side in (1.0, -1.0):
        t = bisect_root(
            lambda t: float(norm(xv - radial_vec(norm, alpha + side * t))) - radius,
            0.0, math.pi, xtol=1e-13)
        probe = radial_point(norm, alpha + side * t)
        if arc_hausdorff(base, diametral_set(norm, probe)) > tol:
            return False
    return True


@dataclass(frozen=True)
class SphereSegment:
    """A straight segment contained in a unit sphere."""

    start: SpherePoint
    end: SpherePoint
    length: float
    maximal: bool
    spans_unit: bool


def maximal_segments(norm: PolygonNorm) -> list[SphereSegment]:
    """The faces of a polygon sphere, with own-norm lengths."""
    if not isinstance(norm, PolygonNorm):
        raise TypeError("maximal segments are defined for polygon norms")
    verts = norm.vertex_array()
    n = verts.shape[0]
    out = []
    for i in range(n):
        a = verts[i]
        b = verts[(i + 1) % n]
        length = float(norm(b - a))
        out.append(SphereSegment(
            sphere_point(norm, a), sphere_point(norm, b),
            length, True, length >= 1.0 - 1e-12))
    return out


@dataclass(frozen=True)
class BisectorPair:
    """The (antipodal) sphere points equidistant from ``x`` and ``-x``."""

    point: SpherePoint
    antipode: SpherePoint
    unique: bool


def bisector_points(norm: Norm, x: SpherePoint, *,
                    tie_tol: float = 1e-10,
                    width_tol: float = 1e-6) -> BisectorPair:
    """Solve ``||z - x|| = ||z + x||`` on the sphere.

    ``g(theta) = ||s - x|| - ||s + x||`` rises monotonically from -2 to 2 on
    the half circle, so a sign-change bisection is safe.  If ``g`` vanishes
    on an interval wider than ``width_tol`` the result is flagged non-unique
    and the interval midpoint is returned.
    """
    if norm.dim != 2:
        raise ValueError("bisector_points requires a 2D norm")
    _require_owner(norm, x)
    alpha = _theta_of(x)
    xv = x.vec

    def g(t: float) -> float:
        s = radial_vec(norm, alpha + t)
        return float(norm(s - xv) - norm(s + xv))

    root = bisect_root(g, 1e-9, math.pi - 1e-9, xtol=DEFAULT_TOLS.angle)
    t_lo = bisect_first_true(lambda t: abs(g(t)) <= tie_tol, 0.0, root,
                             xtol=DEFAULT_TOLS.angle)
    t_hi = math.pi - bisect_first_true(
        lambda u: abs(g(math.pi - u)) <= tie_tol, 0.0, math.pi - root,
        xtol=DEFAULT_TOLS.angle)
    unique = (t_hi - t_lo) <= width_tol
    t_mid = 0.5 * (t_lo + t_hi)
    z = radial_point(norm, alpha + t_mid)
    return BisectorPair(z, z.antipode(), unique)


def is_isosceles_orthogonal(norm: Norm, x, z, tol: float = 1e-10) -> bool:
    """True when ``||x + z|| == ||x - z||`` within ``tol``."""
    xa = np.asarray(x, dtype=float)
    za = np.asarray(z, dtype=float)
    return abs(norm(xa + za) - norm(xa - za)) <= tol


def _sphere_angle_grid(norm: Norm, resolution: int) -> np.ndarray:
    base = np.linspace(0.0, TWO_PI, resolution, endpoint=False)
    corners = np.asarray(norm.corner_angles(), dtype=float)
    if corners.size:
        base = np.unique(np.concatenate([base, corners % TWO_PI]))
    return base


def self_circumference(norm: Norm, resolution: int = 4096) -> float:
    """Length of the unit sphere measured in its own norm.

    Inscribed-polyline length over a uniform angle grid; corner angles are
    inserted so polygon spheres are measured exactly at any resolution.
    """
    if norm.dim != 2:
        raise ValueError("self_circumference requires a 2D norm")
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    thetas = _sphere_angle_grid(norm, resolution)
    pts = radial_points_vec(norm, thetas)
    chords = norm(np.roll(pts, -1, axis=0) - pts)
    return float(chords.sum())


class _PolygonArcMap:
    """Exact arc-length parametrization of a polygon sphere.

    Nodes are the vertices plus the angle-0 point; between nodes the sphere
    is a straight face, so positions interpolate linearly and the own-norm
    cumulative length is exact.
    """

    def __init__(self, norm: PolygonNorm):
        self.norm = norm
        angles = sorted(set(norm.corner_angles()) | {0.0})
        thetas = np.asarray(angles, dtype=float)
        pts = radial_points_vec(norm, thetas)
        closed = np.vstack([pts, pts[:1]])
        seg = norm(closed[1:] - closed[:-1])
        self._nodes = closed
        self._seglen = seg
        self._cum = np.concatenate([[0.0], np.cumsum(seg)])
        self.circumference = float(self._cum[-1])

    def point_at(self, arc) -> np.ndarray:
        t = np.mod(np.asarray(arc, dtype=float), self.circumference)
        idx = np.clip(np.searchsorted(self._cum, t, side="right") - 1,
                      0, len(self._seglen) - 1)
        frac = (t - self._cum[idx]) / self._seglen[idx]
        a = self._nodes[idx]
        b = self._nodes[idx + 1]
        return a + frac[:, None] * (b - a)


class _TableArcMap:
    """Arc-length parametrization from a dense cumulative chord table.

    The grid is refined by doubling until the total length stabilises (well
    below the 1e-10 contract, so that placement interpolation error stays
    under 1e-12 in chord terms); placement interpolates the angle against
    the cumulative length.
    """

    def __init__(self, norm: Norm, *, start: int = 1 << 13, cap: int = 1 << 21,
                 stop: float = 2e-11):
        self.norm = norm
        corners = np.mod(np.asarray(norm.corner_angles(), dtype=float), TWO_PI)
        prev = None
        m = start
        while True:
            grid = np.linspace(0.0, TWO_PI, m, endpoint=False)
            if corners.size:
                grid = np.unique(np.concatenate([grid, corners]))
            pts = radial_points_vec(norm, grid)
            closed = np.vstack([pts, pts[:1]])
            seg = norm(closed[1:] - closed[:-1])
            total = float(seg.sum())
            if prev is not None and abs(total - prev) < stop:
                break
            if m >= cap:
                break
            prev = total
            m *= 2
        self._thetas = np.concatenate([grid, [TWO_PI]])
        self._cum = np.concatenate([[0.0], np.cumsum(seg)])
        self.circumference = float(self._cum[-1])

    def point_at(self, arc) -> np.ndarray:
        t = np.mod(np.asarray(arc, dtype=float), self.circumference)
        theta = np.interp(t, self._cum, self._thetas)
        return radial_points_vec(self.norm, theta)


@lru_cache(maxsize=32)
def arc_length_map(norm: Norm):
    """Cached arc-length parametrization of the sphere of a 2D norm."""
    if norm.dim != 2:
        raise ValueError("arc-length parametrization requires a 2D norm")
    if isinstance(norm, PolygonNorm):
        return _PolygonArcMap(norm)
    return _TableArcMap(norm)
