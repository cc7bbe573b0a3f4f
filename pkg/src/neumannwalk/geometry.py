"""Bounded Lipschitz domains and the geometric queries the walk needs.

Three kinds are built in: axis-aligned hyperrectangles, balls, and a planar
L-shape (square with one quadrant notched out).  Every domain answers
membership, signed distance, nearest-boundary projection with inward normal,
the boundary-zone test, and provides a surface quadrature.

Conventions
-----------
* The domain is treated as closed: points exactly on the boundary are
  contained.  All boundary comparisons use an absolute tolerance of
  ``GEOM_RTOL * diameter`` to absorb floating-point drift.
* Projection ties (equidistant faces, e.g. near box corners) are broken
  deterministically: lowest axis index first, then the lower-coordinate
  face.  At non-smooth boundary points the inward normal of the chosen face
  is assigned; this is a measure-zero heuristic consistent with Lipschitz
  boundaries.
* The zone test is exact (corner enumeration semantics) up to
  ``EXACT_ZONE_MAX_DIM`` dimensions and falls back to the conservative
  distance test ``signed_distance < (sqrt(d)/2) * sqrt(h)`` above that.
  The conservative zone is a superset of the exact one.

Scalar queries delegate to the vectorized ``*_many`` primitives so that the
two paths cannot drift apart; the compiled kernel replicates the same
formulas term for term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Relative geometric tolerance; boundary comparisons use GEOM_RTOL * diameter.
GEOM_RTOL = 1e-12

#: Largest dimension for which the boundary-zone test is exact.
EXACT_ZONE_MAX_DIM = 12

#: Integer tags understood by the compiled kernel.
KIND_HYPERRECTANGLE = 0
KIND_BALL = 1
KIND_LSHAPE2D = 2


@dataclass(frozen=True)
class BoundaryPoint:
    """A boundary location together with the unit inward normal there."""

    position: np.ndarray
    inward_normal: np.ndarray

    @property
    def outward_normal(self) -> np.ndarray:
        return -self.inward_normal


@dataclass(frozen=True)
class SurfaceQuadrature:
    """Nodes and weights approximating integration against surface measure."""

    positions: np.ndarray  # (n, d)
    inward_normals: np.ndarray  # (n, d)
    weights: np.ndarray  # (n,)

    def __len__(self) -> int:
        return len(self.weights)

    def nodes(self):
        for i in range(len(self.weights)):
            yield BoundaryPoint(self.positions[i], self.inward_normals[i])


def as_point(y, dimension: int) -> np.ndarray:
    """Validate and convert ``y`` to a finite float vector of length d."""
    p = np.asarray(y, dtype=float)
    if p.shape != (dimension,):
        raise ValueError(f"expected a point of dimension {dimension}, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"point has non-finite coordinates: {p}")
    return p


class Domain:
    """Geometric contract shared by all built-in domain kinds.

    Immutable after construction; every query is a pure function and safe
    for unrestricted concurrent use.
    """

    dimension: int

    # -- subclass responsibilities (vectorized over rows of Y) --------------

    def contains_many(self, Y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def signed_distance_many(self, Y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def project_many(self, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Nearest boundary points and unit inward normals, row per row."""
        raise NotImplementedError

    def _zone_exact_many(self, Y: np.ndarray, h: float) -> np.ndarray:
        """Corner-enumeration zone semantics, without the membership guard."""
        raise NotImplementedError

    def surface_quadrature(self, n_nodes: int) -> SurfaceQuadrature:
        raise NotImplementedError

    def volume_integral(self, g, n_per_dim: int = 64) -> float:
        """Midpoint-rule volume integral of ``g`` (callable on points)."""
        raise NotImplementedError

    @property
    def diameter(self) -> float:
        raise NotImplementedError

    @property
    def volume(self) -> float:
        raise NotImplementedError

    @property
    def surface_area(self) -> float:
        raise NotImplementedError

    @property
    def min_feature_size(self) -> float:
        """Smallest geometric feature: layer constructions must stay below it."""
        raise NotImplementedError

    def kernel_spec(self) -> tuple[int, np.ndarray]:
        """(kind tag, flat parameter vector) consumed by the walk kernels."""
        raise NotImplementedError

    # -- shared scalar API ---------------------------------------------------

    @property
    def tol(self) -> float:
        return GEOM_RTOL * self.diameter

    def contains(self, y) -> bool:
        y = as_point(y, self.dimension)
        return bool(self.contains_many(y[None, :])[0])

    def signed_distance(self, y) -> float:
        y = as_point(y, self.dimension)
        return float(self.signed_distance_many(y[None, :])[0])

    def project_to_boundary(self, y) -> BoundaryPoint:
        y = as_point(y, self.dimension)
        pos, normal = self.project_many(y[None, :])
        return BoundaryPoint(pos[0], normal[0])

    def in_boundary_zone(self, y, h: float) -> bool:
        y = as_point(y, self.dimension)
        if h <= 0:
            raise ValueError(f"h must be positive, got {h}")
        if not self.contains(y):
            raise ValueError(f"zone test requires a point of the closed domain, got {y}")
        return bool(self.zone_many(y[None, :], h)[0])

    def zone_many(self, Y: np.ndarray, h: float, conservative: bool | None = None) -> np.ndarray:
        """Vectorized zone test; mode picked from the dimension by default."""
        if conservative is None:
            conservative = self.dimension > EXACT_ZONE_MAX_DIM
        if conservative:
            lam0 = math.sqrt(self.dimension) / 2.0
            return self.signed_distance_many(Y) < lam0 * math.sqrt(h)
        return self._zone_exact_many(Y, h)


class Hyperrectangle(Domain):
    """Axis-aligned box ``[lo_0, hi_0] x ... x [lo_{d-1}, hi_{d-1}]``."""

    def __init__(self, lo, hi):
        lo = np.atleast_1d(np.asarray(lo, dtype=float))
        hi = np.atleast_1d(np.asarray(hi, dtype=float))
        if lo.ndim != 1 or lo.shape != hi.shape:
            raise ValueError("lo and hi must be 1-d arrays of equal length")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("box bounds must be finite")
        if not np.all(lo < hi):
            raise ValueError(f"every lo must be strictly below hi, got lo={lo}, hi={hi}")
        self.lo = lo
        self.hi = hi
        self.dimension = len(lo)
        self._sides = hi - lo
        self._diameter = float(np.sqrt(np.sum(self._sides**2)))

    def __repr__(self) -> str:
        return f"Hyperrectangle(lo={self.lo.tolist()}, hi={self.hi.tolist()})"

    @property
    def diameter(self) -> float:
        return self._diameter

    @property
    def volume(self) -> float:
        return float(np.prod(self._sides))

    @property
    def surface_area(self) -> float:
        if self.dimension == 1:
            return 2.0  # counting measure on the two endpoints
        v = self.volume
        return float(np.sum(2.0 * v / self._sides))

    @property
    def min_feature_size(self) -> float:
        return float(np.min(self._sides))

    def kernel_spec(self) -> tuple[int, np.ndarray]:
        return KIND_HYPERRECTANGLE, np.concatenate([self.lo, self.hi])

    def contains_many(self, Y: np.ndarray) -> np.ndarray:
        t = self.tol
        return np.all((Y >= self.lo - t) & (Y <= self.hi + t), axis=1)

    def signed_distance_many(self, Y: np.ndarray) -> np.ndarray:
        below = self.lo - Y
        above = Y - self.hi
        outside = np.sqrt(np.sum(np.maximum(below, 0.0) ** 2 + np.maximum(above, 0.0) ** 2, axis=1))
        inside = np.min(np.minimum(Y - self.lo, self.hi - Y), axis=1)
        return np.where(outside > 0.0, -outside, inside)

    def project_many(self, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        n, d = Y.shape
        pos = np.clip(Y, self.lo, self.hi)
        normals = np.zeros_like(Y)
        out_lo = Y < self.lo
        out_hi = Y > self.hi
        is_out = np.any(out_lo | out_hi, axis=1)

        # Exterior points project by clamping; the normal comes from the
        # first clipped axis (ties across axes are broken by axis order).
        if np.any(is_out):
            rows = np.nonzero(is_out)[0]
            first = np.argmax(out_lo[rows] | out_hi[rows], axis=1)
            sign = np.where(out_lo[rows, first], 1.0, -1.0)
            normals[rows, first] = sign

        # Interior points go to the face of least margin, lo face first.
        if not np.all(is_out):
            rows = np.nonzero(~is_out)[0]
            margins = np.empty((len(rows), 2 * d))
            margins[:, 0::2] = Y[rows] - self.lo
            margins[:, 1::2] = self.hi - Y[rows]
            face = np.argmin(margins, axis=1)  # first minimum wins ties
            axis = face // 2
            to_lo = face % 2 == 0
            pos[rows, axis] = np.where(to_lo, self.lo[axis], self.hi[axis])
            normals[rows, axis] = np.where(to_lo, 1.0, -1.0)
        return pos, normals

    def _zone_exact_many(self, Y: np.ndarray, h: float) -> np.ndarray:
        # Some step corner y +- (sqrt(h)/2) e leaves the closed box iff some
        # face margin is below sqrt(h)/2; no corner enumeration is needed.
        half = 0.5 * math.sqrt(h)
        t = self.tol
        return np.any((Y - half < self.lo - t) | (Y + half > self.hi + t), axis=1)

    def surface_quadrature(self, n_nodes: int) -> SurfaceQuadrature:
        d = self.dimension
        if n_nodes < 1:
            raise ValueError("n_nodes must be >= 1")
        if d == 1:
            positions = np.array([[self.lo[0]], [self.hi[0]]])
            normals = np.array([[1.0], [-1.0]])
            weights = np.array([1.0, 1.0])
            return SurfaceQuadrature(positions, normals, weights)

        m = max(1, round((n_nodes / (2 * d)) ** (1.0 / (d - 1))))
        axes_pts = [self.lo[i] + self._sides[i] * (np.arange(m) + 0.5) / m for i in range(d)]
        positions, normals, weights = [], [], []
        for axis in range(d):
            others = [i for i in range(d) if i != axis]
            grids = np.meshgrid(*[axes_pts[i] for i in others], indexing="ij")
            face_pts = np.stack([g.ravel() for g in grids], axis=1) if others else np.zeros((1, 0))
            face_area = np.prod([self._sides[i] for i in others]) if others else 1.0
            w = face_area / len(face_pts)
            for coord, sign in ((self.lo[axis], 1.0), (self.hi[axis], -1.0)):
                pts = np.empty((len(face_pts), d))
                pts[:, others] = face_pts
                pts[:, axis] = coord
                nrm = np.zeros((len(face_pts), d))
                nrm[:, axis] = sign
                positions.append(pts)
                normals.append(nrm)
                weights.append(np.full(len(face_pts), w))
        return SurfaceQuadrature(
            np.concatenate(positions), np.concatenate(normals), np.concatenate(weights)
        )

    def volume_integral(self, g, n_per_dim: int = 64) -> float:
        d = self.dimension
        m = int(n_per_dim)
        axes = [self.lo[i] + self._sides[i] * (np.arange(m) + 0.5) / m for i in range(d)]
        grids = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([grid.ravel() for grid in grids], axis=1)
        cell = self.volume / m**d
        return float(np.sum(_eval_on_points(g, pts)) * cell)


class Ball(Domain):
    """Closed Euclidean ball of given center and radius."""

    def __init__(self, center, radius: float):
        center = np.atleast_1d(np.asarray(center, dtype=float))
        if center.ndim != 1 or not np.all(np.isfinite(center)):
            raise ValueError("center must be a finite vector")
        radius = float(radius)
        if not (radius > 0 and math.isfinite(radius)):
            raise ValueError(f"radius must be positive and finite, got {radius}")
        self.center = center
        self.radius = radius
        self.dimension = len(center)

    def __repr__(self) -> str:
        return f"Ball(center={self.center.tolist()}, radius={self.radius})"

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    @property
    def volume(self) -> float:
        d = self.dimension
        return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0) * self.radius**d

    @property
    def surface_area(self) -> float:
        d = self.dimension
        return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0) * self.radius ** (d - 1)

    @property
    def min_feature_size(self) -> float:
        return self.radius

    def kernel_spec(self) -> tuple[int, np.ndarray]:
        return KIND_BALL, np.concatenate([self.center, [self.radius]])

    def _radii(self, Y: np.ndarray) -> np.ndarray:
        Z = Y - self.center
        s = np.zeros(len(Y))
        for i in range(self.dimension):  # fixed order, matches the kernels
            s += Z[:, i] * Z[:, i]
        return np.sqrt(s)

    def contains_many(self, Y: np.ndarray) -> np.ndarray:
        return self._radii(Y) <= self.radius + self.tol

    def signed_distance_many(self, Y: np.ndarray) -> np.ndarray:
        return self.radius - self._radii(Y)

    def project_many(self, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        Z = Y - self.center
        r = self._radii(Y)
        deg = r == 0.0
        if np.any(deg):
            Z = Z.copy()
            Z[deg, 0] = 1.0  # center projects along the first axis
            r = np.where(deg, 1.0, r)
        u = Z / r[:, None]
        pos = self.center + self.radius * u
        return pos, -u

    def _zone_exact_many(self, Y: np.ndarray, h: float) -> np.ndarray:
        # max over step corners of |y - c + sqrt(h) xi|^2 has the closed form
        # |z|^2 + sqrt(h) * ||z||_1 + h d / 4.
        Z = Y - self.center
        sq = np.zeros(len(Y))
        l1 = np.zeros(len(Y))
        for i in range(self.dimension):
            sq += Z[:, i] * Z[:, i]
            l1 += np.abs(Z[:, i])
        worst = sq + math.sqrt(h) * l1 + h * self.dimension / 4.0
        lim = self.radius + self.tol
        return worst > lim * lim

    def surface_quadrature(self, n_nodes: int) -> SurfaceQuadrature:
        d = self.dimension
        n = max(int(n_nodes), 2 * d)
        if d == 1:
            positions = np.array([[self.center[0] - self.radius], [self.center[0] + self.radius]])
            normals = np.array([[1.0], [-1.0]])
            return SurfaceQuadrature(positions, normals, np.array([1.0, 1.0]))
        if d == 2:
            theta = 2.0 * math.pi * (np.arange(n) + 0.5) / n
            u = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        elif d == 3:
            # Fibonacci spiral on the sphere.
            k = np.arange(n) + 0.5
            phi = math.pi * (1.0 + math.sqrt(5.0)) * k
            z = 1.0 - 2.0 * k / n
            rho = np.sqrt(np.maximum(1.0 - z * z, 0.0))
            u = np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)
        else:
            u = _halton_directions(n, d)
        positions = self.center + self.radius * u
        weights = np.full(n, self.surface_area / n)
        return SurfaceQuadrature(positions, -u, weights)

    def volume_integral(self, g, n_per_dim: int = 64) -> float:
        d = self.dimension
        m = int(n_per_dim)
        axes = [
            self.center[i] - self.radius + 2.0 * self.radius * (np.arange(m) + 0.5) / m
            for i in range(d)
        ]
        grids = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([grid.ravel() for grid in grids], axis=1)
        inside = self._radii(pts) <= self.radius
        cell = (2.0 * self.radius / m) ** d
        return float(np.sum(_eval_on_points(g, pts[inside])) * cell)


class LShape2D(Domain):
    """Planar L-shape: a square with one quadrant removed.

    The canonical orientation notches the north-east quadrant
    ``(side/2, side] x (side/2, side]``; other quadrants are handled by
    reflecting coordinates.  The re-entrant corner lies strictly inside the
    outer square and carries the tie-broken normal of one adjacent wall.
    """

    QUADRANTS = ("ne", "nw", "se", "sw")

    def __init__(self, side: float = 1.0, notch: str = "ne"):
        side = float(side)
        if not (side > 0 and math.isfinite(side)):
            raise ValueError(f"side must be positive and finite, got {side}")
        if notch not in self.QUADRANTS:
            raise ValueError(f"notch must be one of {self.QUADRANTS}, got {notch!r}")
        self.side = side
        self.notch = notch
        self.dimension = 2
        self._flip_x = notch in ("nw", "sw")
        self._flip_y = notch in ("se", "sw")
        s = side
        m = side / 2.0
        # Canonical boundary walls in tie-break order: axis 0 walls by
        # ascending coordinate, then axis 1 walls.  Each row is
        # (axis, coord, span_lo, span_hi, inward sign along axis).
        self._walls = (
            (0, 0.0, 0.0, s, 1.0),
            (0, m, m, s, -1.0),
            (0, s, 0.0, m, -1.0),
            (1, 0.0, 0.0, s, 1.0),
            (1, m, m, s, -1.0),
            (1, s, 0.0, m, -1.0),
        )

    def __repr__(self) -> str:
        return f"LShape2D(side={self.side}, notch={self.notch!r})"

    @property
    def diameter(self) -> float:
        return self.side * math.sqrt(2.0)

    @property
    def volume(self) -> float:
        return 0.75 * self.side**2

    @property
    def surface_area(self) -> float:
        return 4.0 * self.side

    @property
    def min_feature_size(self) -> float:
        return self.side / 2.0

    def kernel_spec(self) -> tuple[int, np.ndarray]:
        return KIND_LSHAPE2D, np.array(
            [self.side, 1.0 if self._flip_x else 0.0, 1.0 if self._flip_y else 0.0]
        )

    def _to_canonical(self, Y: np.ndarray) -> np.ndarray:
        C = Y.copy()
        if self._flip_x:
            C[:, 0] = self.side - C[:, 0]
        if self._flip_y:
            C[:, 1] = self.side - C[:, 1]
        return C

    def _from_canonical_vec(self, V: np.ndarray) -> np.ndarray:
        W = V.copy()
        if self._flip_x:
            W[:, 0] = -W[:, 0]
        if self._flip_y:
            W[:, 1] = -W[:, 1]
        return W

    def _from_canonical_pts(self, P: np.ndarray) -> np.ndarray:
        Q = P.copy()
        if self._flip_x:
            Q[:, 0] = self.side - Q[:, 0]
        if self._flip_y:
            Q[:, 1] = self.side - Q[:, 1]
        return Q

    def contains_many(self, Y: np.ndarray) -> np.ndarray:
        C = self._to_canonical(Y)
        t = self.tol
        s, m = self.side, self.side / 2.0
        in_box = np.all((C >= -t) & (C <= s + t), axis=1)
        in_notch = (C[:, 0] > m + t) & (C[:, 1] > m + t)
        return in_box & ~in_notch

    def _wall_distances(self, C: np.ndarray) -> np.ndarray:
        """(n, 6) squared distances to the canonical walls, in tie order."""
        n = len(C)
        out = np.empty((n, 6))
        for j, (axis, coord, a, b, _sign) in enumerate(self._walls):
            perp = C[:, axis] - coord
            along = np.clip(C[:, 1 - axis], a, b) - C[:, 1 - axis]
            out[:, j] = perp * perp + along * along
        return out

    def signed_distance_many(self, Y: np.ndarray) -> np.ndarray:
        C = self._to_canonical(Y)
        dist = np.sqrt(np.min(self._wall_distances(C), axis=1))
        return np.where(self.contains_many(Y), dist, -dist)

    def project_many(self, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        C = self._to_canonical(Y)
        d2 = self._wall_distances(C)
        j = np.argmin(d2, axis=1)  # first minimum = tie-break order
        pos = np.empty_like(C)
        nrm = np.zeros_like(C)
        for wall_idx, (axis, coord, a, b, sign) in enumerate(self._walls):
            rows = np.nonzero(j == wall_idx)[0]
            if len(rows) == 0:
                continue
            pos[rows, axis] = coord
            pos[rows, 1 - axis] = np.clip(C[rows, 1 - axis], a, b)
            nrm[rows, axis] = sign
        return self._from_canonical_pts(pos), self._from_canonical_vec(nrm)

    def _zone_exact_many(self, Y: np.ndarray, h: float) -> np.ndarray:
        C = self._to_canonical(Y)
        half = 0.5 * math.sqrt(h)
        t = self.tol
        s, m = self.side, self.side / 2.0
        out_box = (
            (C[:, 0] - half < -t)
            | (C[:, 0] + half > s + t)
            | (C[:, 1] - half < -t)
            | (C[:, 1] + half > s + t)
        )
        corner_in_notch = (C[:, 0] + half > m + t) & (C[:, 1] + half > m + t)
        return out_box | corner_in_notch

    def surface_quadrature(self, n_nodes: int) -> SurfaceQuadrature:
        n = max(int(n_nodes), 6)
        per_len = n / self.surface_area
        positions, normals, weights = [], [], []
        for axis, coord, a, b, sign in self._walls:
            length = b - a
            m = max(1, round(per_len * length))
            tline = a + length * (np.arange(m) + 0.5) / m
            pts = np.empty((m, 2))
            pts[:, axis] = coord
            pts[:, 1 - axis] = tline
            nrm = np.zeros((m, 2))
            nrm[:, axis] = sign
            positions.append(pts)
            normals.append(nrm)
            weights.append(np.full(m, length / m))
        return SurfaceQuadrature(
            self._from_canonical_pts(np.concatenate(positions)),
            self._from_canonical_vec(np.concatenate(normals)),
            np.concatenate(weights),
        )

    def volume_integral(self, g, n_per_dim: int = 64) -> float:
        # Decompose the L into three congruent sub-squares; no indicator chop.
        m = int(n_per_dim)
        half = self.side / 2.0
        total = 0.0
        for ox, oy in ((0.0, 0.0), (half, 0.0), (0.0, half)):
            ax = ox + half * (np.arange(m) + 0.5) / m
            ay = oy + half * (np.arange(m) + 0.5) / m
            gx, gy = np.meshgrid(ax, ay, indexing="ij")
            pts = self._from_canonical_pts(np.stack([gx.ravel(), gy.ravel()], axis=1))
            total += float(np.sum(_eval_on_points(g, pts))) * (half / m) ** 2
        return total


def _eval_on_points(g, pts: np.ndarray) -> np.ndarray:
    """Evaluate a scalar function on rows of ``pts``, batching if supported."""
    try:
        vals = g(pts)
        vals = np.asarray(vals, dtype=float)
        if vals.shape == (len(pts),):
            return vals
    except Exception:
        pass
    return np.array([float(g(p)) for p in pts])


def _halton_directions(n: int, d: int) -> np.ndarray:
    """n low-discrepancy unit vectors in d dimensions (Halton + Box-Muller)."""
    n_pairs = (d + 1) // 2
    u = np.empty((n, 2 * n_pairs))
    idx = np.arange(1, n + 1)
    for j in range(2 * n_pairs):
        u[:, j] = _van_der_corput(idx, _PRIMES[j])
    z = np.empty((n, 2 * n_pairs))
    r = np.sqrt(-2.0 * np.log(np.clip(u[:, 0::2], 1e-16, None)))
    z[:, 0::2] = r * np.cos(2.0 * math.pi * u[:, 1::2])
    z[:, 1::2] = r * np.sin(2.0 * math.pi * u[:, 1::2])
    z = z[:, :d]
    norms = np.sqrt(np.sum(z * z, axis=1))
    norms = np.where(norms == 0.0, 1.0, norms)
    return z / norms[:, None]


def _van_der_corput(idx: np.ndarray, base: int) -> np.ndarray:
    out = np.zeros(len(idx), dtype=float)
    denom = 1.0
    k = idx.copy()
    while np.any(k > 0):
        denom *= base
        out += (k % base) / denom
        k //= base
    return out


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


def surface_integral(domain: Domain, g, n_nodes: int = 4096) -> float:
    """Quadrature approximation of the surface integral of ``g``.

    ``g`` is called with a :class:`BoundaryPoint` (so data depending on the
    normal direction are supported) and must return a float.
    """
    quad = domain.surface_quadrature(n_nodes)
    total = 0.0
    for i, bp in enumerate(quad.nodes()):
        total += quad.weights[i] * float(g(bp))
    return total


def random_interior_points(domain: Domain, n: int, rng: np.random.Generator) -> np.ndarray:
    """n points sampled uniformly from the domain interior (test utility)."""
    if isinstance(domain, Hyperrectangle):
        lo, hi = domain.lo, domain.hi
    elif isinstance(domain, Ball):
        lo = domain.center - domain.radius
        hi = domain.center + domain.radius
    elif isinstance(domain, LShape2D):
        lo = np.zeros(2)
        hi = np.full(2, domain.side)
    else:
        raise TypeError(f"unsupported domain {domain!r}")
    out = np.empty((n, domain.dimension))
    filled = 0
    while filled < n:
        cand = rng.uniform(lo, hi, size=(2 * (n - filled) + 16, domain.dimension))
        keep = cand[domain.contains_many(cand) & (domain.signed_distance_many(cand) > 0)]
        take = min(len(keep), n - filled)
        out[filled : filled + take] = keep[:take]
        filled += take
    return out
