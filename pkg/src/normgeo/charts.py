"""Coordinate charts from sphere bases, and determination tests for sphere maps.

A chart identifies a space with R^n by sending a basis of unit vectors to the
standard basis; a sphere map between charted spaces extends linearly exactly
when its coordinate representation is the identity, which the linearity
defect measures directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLS
from .norms import Norm, SpherePoint, radial_points_vec
from .sphere import ArcSet
from .numerics import TWO_PI, bisect_first_true

__all__ = [
    "CoordinateChart", "LinearImageNorm", "SphereMapSample", "LinearityReport",
    "InjectivityResult", "ConeDistanceCheck", "make_chart", "linearity_defect",
    "antipodality_defect", "four_distance_injectivity", "arc_distinguishes",
    "cone_distance_check", "cone_reconstruct_abscissa", "top_face_half_width",
    "base_leftmost_crossing", "sample_sphere_map",
]


@dataclass(frozen=True)
class LinearImageNorm(Norm):
    """``v -> base(B @ v)``: the norm making a chosen basis orthonormal-like.

    ``matrix`` holds the basis vectors as columns, so coordinates map back to
    vectors by ``B @ coords``.
    """

    base: Norm
    matrix: tuple[tuple[float, ...], ...]
    kind = "linear-image"

    def __post_init__(self):
        arr = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "dim", arr.shape[0])
        object.__setattr__(self, "_matrix_arr", arr)

    def _gauge(self, batch):
        return self.base._gauge(batch @ self._matrix_arr.T)

    def payload(self):
        raise TypeError("chart-induced norms are not serialisable")


@dataclass(frozen=True)
class CoordinateChart:
    """Linear identification of a normed space with R^n via a sphere basis."""

    norm: Norm
    basis: tuple[tuple[float, ...], ...]
    condition_number: float
    induced_norm: LinearImageNorm

    @property
    def matrix(self) -> np.ndarray:
        """Basis vectors as columns."""
        return np.asarray(self.basis, dtype=float).T

    def to_coordinates(self, vectors) -> np.ndarray:
        arr = np.atleast_2d(np.asarray(vectors, dtype=float))
        return np.linalg.solve(self.matrix, arr.T).T

    def from_coordinates(self, coords) -> np.ndarray:
        arr = np.atleast_2d(np.asarray(coords, dtype=float))
        return (self.matrix @ arr.T).T


def _vectors_of(points) -> np.ndarray:
    rows = []
    for p in points:
        rows.append(p.vec if isinstance(p, SpherePoint) else np.asarray(p, dtype=float))
    return np.asarray(rows, dtype=float)


def make_chart(norm: Norm, basis, *, tol: float = DEFAULT_TOLS.geometric) -> CoordinateChart:
    """Chart sending ``basis[i]`` (unit vectors) to the standard basis.

    Raises when the basis is linearly dependent or not normalised; the
    condition number of the basis matrix is reported, not capped.
    """
    vecs = _vectors_of(basis)
    n = norm.dim
    if vecs.shape != (n, n):
        raise ValueError(f"need {n} basis vectors of dimension {n}, got {vecs.shape}")
    values = norm(vecs)
    if np.abs(values - 1.0).max() > tol:
        raise ValueError(f"basis vectors must have norm 1, got {values.tolist()}")
    matrix = vecs.T
    scale = float(np.prod(np.sqrt((vecs * vecs).sum(axis=1))))
    det = float(np.linalg.det(matrix))
    if abs(det) < 1e-12 * max(scale, 1e-300):
        raise ValueError(f"basis vectors are linearly dependent: {vecs.tolist()}")
    cond = float(np.linalg.cond(matrix))
    induced = LinearImageNorm(norm, tuple(tuple(float(x) for x in row) for row in matrix))
    return CoordinateChart(norm, tuple(tuple(float(x) for x in v) for v in vecs),
                           cond, induced)


class SphereMapSample:
    """Paired samples of a map between unit spheres."""

    def __init__(self, norm_x: Norm, norm_y: Norm, sources, images,
                 *, tol: float = DEFAULT_TOLS.geometric):
        src = np.asarray(sources, dtype=float)
        img = np.asarray(images, dtype=float)
        if src.shape[0] != img.shape[0]:
            raise ValueError("sources and images must pair up")
        off_src = float(np.abs(norm_x(src) - 1.0).max())
        off_img = float(np.abs(norm_y(img) - 1.0).max())
        if off_src > tol:
            raise ValueError(f"sources leave the sphere by {off_src:.2e}")
        if off_img > tol:
            raise ValueError(f"images leave the sphere by {off_img:.2e}")
        self.norm_x = norm_x
        self.norm_y = norm_y
        self.sources = src
        self.images = img

    def __len__(self) -> int:
        return self.sources.shape[0]


def sample_sphere_map(norm_x: Norm, norm_y: Norm, fn, n: int = 256) -> SphereMapSample:
    """Sample a 2D sphere map at ``n`` angles, antipodal pairs guaranteed.

    Angles are taken as ``theta`` and ``theta + pi`` together so antipodality
    can be tested without interpolation.
    """
    if norm_x.dim != 2:
        raise ValueError("sampling requires a 2D source norm")
    half = max(2, n // 2)
    base = np.linspace(0.0, math.pi, half, endpoint=False)
    thetas = np.concatenate([base, base + math.pi])
    sources = radial_points_vec(norm_x, thetas)
    images = np.asarray([fn(s) for s in sources], dtype=float)
    return SphereMapSample(norm_x, norm_y, sources, images)


@dataclass(frozen=True)
class LinearityReport:
    """Coordinate discrepancy of a sampled sphere map against linearity."""

    max_defect: float
    antipodal_defect: float
    condition_x: float
    condition_y: float
    samples: int

    def to_json(self) -> dict:
        return {
            "max_defect": self.max_defect,
            "antipodal_defect": self.antipodal_defect,
            "samples": self.samples,
        }


def antipodality_defect(sample: SphereMapSample, *,
                        match_tol: float = DEFAULT_TOLS.geometric) -> float:
    """``max ||tau(-x) + tau(x)||_Y`` over the sample.

    Every source must come with its exact antipode; a missing antipode is a
    sampler bug and raises.
    """
    src = sample.sources
    sums = np.abs(src[None, :, :] + src[:, None, :]).sum(axis=2)
    partner = np.argmin(sums, axis=1)
    worst = float(sums[np.arange(len(sample)), partner].max())
    if worst > match_tol:
        raise ValueError(f"sample is missing antipodes (worst gap {worst:.2e})")
    return float(sample.norm_y(sample.images + sample.images[partner]).max())


def _locate_rows(haystack: np.ndarray, needles: np.ndarray, tol: float) -> list[int]:
    out = []
    for needle in needles:
        gaps = np.abs(haystack - needle[None, :]).max(axis=1)
        idx = int(np.argmin(gaps))
        if gaps[idx] > tol:
            raise ValueError(
                f"chart basis vector {needle.tolist()} is not among the sampled sources")
        out.append(idx)
    return out


def linearity_defect(sample: SphereMapSample, chart_x: CoordinateChart,
                     chart_y: CoordinateChart) -> LinearityReport:
    """Max coordinate gap ``||phi_Y(tau(x)) - phi_X(x)||_2`` over the sample.

    The chart bases must be present among the sampled sources (otherwise the
    correspondence cannot be anchored and this raises).  A flipped or
    permuted image basis is not an error: it simply shows up as a defect.
    """
    if chart_x.norm != sample.norm_x or chart_y.norm != sample.norm_y:
        raise ValueError("charts do not belong to the sampled norms")
    _locate_rows(sample.sources, np.asarray(chart_x.basis, dtype=float), 1e-8)
    coords_x = chart_x.to_coordinates(sample.sources)
    coords_y = chart_y.to_coordinates(sample.images)
    gaps = np.sqrt(((coords_y - coords_x) ** 2).sum(axis=1))
    return LinearityReport(
        max_defect=float(gaps.max()),
        antipodal_defect=antipodality_defect(sample),
        condition_x=chart_x.condition_number,
        condition_y=chart_y.condition_number,
        samples=len(sample),
    )


@dataclass(frozen=True)
class InjectivityResult:
    """Outcome of the four-distance injectivity scan."""

    injective: bool
    witness: tuple[tuple[float, float], tuple[float, float]] | None
    min_gap: float


def four_distance_injectivity(norm: Norm, u1, u2, resolution: int = 4096,
                              *, tol: float = 1e-6,
                              min_separation_steps: int = 4) -> InjectivityResult:
    """Does ``v -> (||v+u1||, ||v-u1||, ||v+u2||, ||v-u2||)`` separate the sphere?

    Scans ``resolution`` angles; two samples further apart than
    ``min_separation_steps`` grid steps whose distance 4-tuples agree within
    ``tol`` (sup metric) are a collision witness.
    """
    if norm.dim != 2:
        raise ValueError("the scan works on 2D spheres")
    a = np.asarray(u1, dtype=float)
    b = np.asarray(u2, dtype=float)
    if abs(a[0] * b[1] - a[1] * b[0]) < 1e-12:
        raise ValueError("u1, u2 must form a basis")
    thetas = np.linspace(0.0, TWO_PI, resolution, endpoint=False)
    pts = radial_points_vec(norm, thetas)
    tuples = np.column_stack([
        norm(pts + a), norm(pts - a), norm(pts + b), norm(pts - b)])
    n = resolution
    min_gap = math.inf
    block = 256
    for start in range(0, n, block):
        stop = min(start + block, n)
        diff = np.abs(tuples[start:stop, None, :] - tuples[None, :, :]).max(axis=2)
        idx = np.arange(start, stop)[:, None]
        sep = np.abs(idx - np.arange(n)[None, :])
        sep = np.minimum(sep, n - sep)
        far = sep > min_separation_steps
        masked = np.where(far, diff, np.inf)
        local = float(masked.min())
        if local < min_gap:
            min_gap = local
            if local <= tol:
                i, j = np.unravel_index(int(np.argmin(masked)), masked.shape)
                wit = (tuple(pts[start + i]), tuple(pts[j]))
                return InjectivityResult(False, wit, min_gap)
    return InjectivityResult(True, None, min_gap)


def arc_distinguishes(norm: Norm, arc, p, q, tol: float = 1e-9,
                      *, per_interval: int = 512) -> bool:
    """True when some point of ``arc`` has different distances to ``p`` and ``q``.

    ``arc`` is an :class:`ArcSet` (sampled along each interval) or an explicit
    array of points.
    """
    pv = np.asarray(p, dtype=float)
    qv = np.asarray(q, dtype=float)
    if np.array_equal(pv, qv):
        return False
    if isinstance(arc, ArcSet):
        pts = radial_points_vec(norm, arc.sample(per_interval))
    else:
        pts = np.atleast_2d(np.asarray(arc, dtype=float))
    gaps = np.abs(norm(pts - pv) - norm(pts - qv))
    return bool(gaps.max() > tol)


def top_face_half_width(norm) -> float:
    """Half-width of the horizontal sphere face at height 1.

    Requires a polygon norm whose sphere contains a segment
    ``[-w, w] x {1}``; returns ``w``.
    """
    from .norms import PolygonNorm
    if not isinstance(norm, PolygonNorm):
        raise TypeError("the flat-top construction needs a polygon norm")
    verts = norm.vertex_array()
    top = verts[np.abs(verts[:, 1] - 1.0) <= 1e-12]
    if top.shape[0] < 2:
        raise ValueError("the sphere has no horizontal face at height 1")
    w = float(top[:, 0].max())
    if abs(w + float(top[:, 0].min())) > 1e-12:
        raise ValueError("the top face is not symmetric about the vertical axis")
    return w


@dataclass(frozen=True)
class ConeDistanceCheck:
    """Distance of a vector pair inside the flat-top cone."""

    distance: float
    vertical_gap: float
    half_width: float
    in_cone: bool
    law_holds: bool


def cone_distance_check(norm, p, q, *, half_width: float | None = None,
                        tol: float = 1e-12) -> ConeDistanceCheck:
    """Inside the cone ``|dx| <= w |dy|`` distances reduce to ``|dy|``.

    When the sphere's top face is ``[-w, w] x {1}``, any pair whose offset
    lies in that cone has ``||p - q|| = |p2 - q2|``.  Outside the cone the
    check is flagged and no equality is asserted.
    """
    w = top_face_half_width(norm) if half_width is None else float(half_width)
    pv = np.asarray(p, dtype=float)
    qv = np.asarray(q, dtype=float)
    dx = float(abs(pv[0] - qv[0]))
    dy = float(abs(pv[1] - qv[1]))
    dist = float(norm(pv - qv))
    in_cone = bool(dx <= w * dy + 1e-15)
    law = bool(in_cone and abs(dist - dy) <= tol)
    return ConeDistanceCheck(dist, dy, w, in_cone, law)


def cone_reconstruct_abscissa(delta: float, beta: float, half_width: float) -> float:
    """First coordinate recovered from the leftmost base crossing:
    ``alpha = delta + (1 + beta) * w``."""
    return delta + (1.0 + beta) * half_width


def base_leftmost_crossing(norm, point, *, level: float | None = None) -> float:
    """Leftmost ``t`` with ``||(t, -1) - point|| <= level`` (default ``1 + beta``).

    The distance along the line ``y = -1`` decreases toward the point, so a
    sign bisection on the left branch lands on the left edge of the level
    set exactly.
    """
    pv = np.asarray(point, dtype=float)
    lvl = (1.0 + pv[1]) if level is None else float(level)

    def f(t: float) -> float:
        return float(norm(np.array([t, -1.0]) - pv)) - lvl

    lo = pv[0]
    span = 1.0
    while f(lo) <= 0.0:
        lo -= span
        span *= 2.0
        if span > 1e6:
            raise ValueError("no exterior bracket found on the base line")
    return bisect_first_true(lambda t: f(t) <= 0.0, lo, pv[0], xtol=1e-13)
