"""The boundary-layer Markov chain: lattice steps plus boundary resolution.

The chain advances by lattice increments ``sqrt(h) * xi`` with Rademacher
components.  Whenever the proposed point lies in the boundary zone (some
step outcome would leave the closed domain), it is resolved into a two-point
jump: to the nearest boundary point with probability

    p = lam*sqrt(h) / | y + lam*sqrt(h)*eta(y_pi) - y_pi |

or deflected inward to ``y + lam*sqrt(h)*eta(y_pi)`` otherwise, which
preserves the mean position exactly.  In absorbing mode a boundary contact
stops the walk; in reflecting mode it scores ``lam*sqrt(h) * f(y_pi)``,
counts one discrete local-time increment, and the walk re-enters at
``y_pi + lam*sqrt(h)*eta(y_pi)``.

This module is the scalar reference implementation: it defines the exact
step semantics (including the draw schedule) that the compiled kernel and
the vectorized numpy fallback reproduce bit for bit.  Use it for traces,
tests, and single trajectories; use :mod:`neumannwalk.estimator` for
batches.

Near corners the two-point construction can leave the re-entry or deflected
point inside the zone, and a subsequent proposal may then fall outside the
closed domain.  Such proposals are resolved to the boundary with probability
one (the jump formula clamps at p = 1); the per-trajectory count of clamped
resolutions is reported so corner effects stay observable.  A deflection
that lands outside the domain aborts the trajectory with
:class:`GeometryInconsistencyError` semantics instead of clamping.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .datum import BoundaryDatum
from .errors import GeometryInconsistencyError
from .geometry import BoundaryPoint, Domain, as_point
from .streams import RandomStream, rademacher_step


class WalkMode(enum.Enum):
    ABSORBING = "absorbing"
    REFLECTING = "reflecting"


class WalkStatus(enum.IntEnum):
    RUNNING = -1
    ABSORBED = 0
    HORIZON_REACHED = 1
    CENSORED = 2
    GEOMETRY_ERROR = 3


@dataclass(frozen=True)
class WalkParams:
    """Step size, layer width, mode and stopping configuration.

    ``lam`` defaults to sqrt(d)/2, the smallest layer coefficient for which
    the deflected point clears the zone along its own face (the lattice step
    has maximum displacement ``(sqrt(d)/2) * sqrt(h)``).  ``horizon_T`` is
    required in reflecting mode; the walk then runs ``ceil(T / h)`` steps.
    """

    h: float
    mode: WalkMode
    lam: float | None = None
    horizon_T: float | None = None
    max_steps: int | None = None
    deflect_from_projection: bool = False

    def __post_init__(self):
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError(f"h must be positive and finite, got {self.h}")
        inv = 1.0 / self.h
        if abs(inv - round(inv)) > 1e-9 * inv:
            warnings.warn(
                f"1/h = {inv:.6g} is not an integer; the chain is still well defined",
                stacklevel=2,
            )
        if self.mode == WalkMode.REFLECTING:
            if self.horizon_T is None or not self.horizon_T > 0:
                raise ValueError("reflecting mode requires a positive horizon_T")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be positive")

    def n_steps(self) -> int | None:
        if self.mode == WalkMode.REFLECTING:
            return int(math.ceil(self.horizon_T / self.h))
        return None

    def resolve(self, domain: Domain) -> "ResolvedParams":
        """Bind the parameters to a domain, filling defaults and validating."""
        d = domain.dimension
        lam = math.sqrt(d) / 2.0 if self.lam is None else float(self.lam)
        if lam < math.sqrt(d) / 2.0 - 1e-12:
            raise ValueError(
                f"lam must be at least sqrt(d)/2 = {math.sqrt(d) / 2.0:.6g}, got {lam}"
            )
        if lam * math.sqrt(self.h) >= domain.min_feature_size:
            raise ValueError(
                f"layer width lam*sqrt(h) = {lam * math.sqrt(self.h):.4g} must stay below "
                f"the domain's minimal feature size {domain.min_feature_size:.4g}"
            )
        n_steps = self.n_steps()
        if self.max_steps is not None:
            max_steps = int(self.max_steps)
        elif n_steps is not None:
            max_steps = 10 * n_steps
        else:
            max_steps = 10**7
        return ResolvedParams(
            h=self.h,
            lam=lam,
            mode=self.mode,
            n_steps=n_steps if n_steps is not None else max_steps + 1,
            max_steps=max_steps,
            deflect_from_projection=self.deflect_from_projection,
            conservative_zone=domain.dimension > _exact_zone_limit(),
        )


def _exact_zone_limit() -> int:
    from .geometry import EXACT_ZONE_MAX_DIM

    return EXACT_ZONE_MAX_DIM


@dataclass(frozen=True)
class ResolvedParams:
    """Walk parameters bound to a domain; consumed by the kernels."""

    h: float
    lam: float
    mode: WalkMode
    n_steps: int
    max_steps: int
    deflect_from_projection: bool
    conservative_zone: bool

    @property
    def sqrt_h(self) -> float:
        return math.sqrt(self.h)

    @property
    def layer_width(self) -> float:
        return self.lam * math.sqrt(self.h)


@dataclass
class WalkState:
    """Evolving chain state (reference walker only)."""

    position: np.ndarray
    layer_width: float
    k: int = 0
    score: float = 0.0
    boundary_hits: int = 0
    status: WalkStatus = WalkStatus.RUNNING

    @property
    def discrete_local_time(self) -> float:
        return self.layer_width * self.boundary_hits


@dataclass(frozen=True)
class TrajectoryOutcome:
    """Result of one walk."""

    mode: WalkMode
    score: float
    boundary_hits: int
    steps_taken: int
    censored: bool
    exit_point: BoundaryPoint | None = None
    exit_step: int | None = None
    clamped_resolutions: int = 0

    def discrete_local_time(self, params: WalkParams | ResolvedParams) -> float:
        lam = params.lam
        if lam is None:
            raise ValueError("layer coefficient undefined; resolve the params first")
        return lam * math.sqrt(params.h) * self.boundary_hits


def interior_step(y, xi, h: float) -> np.ndarray:
    """One lattice move ``y + sqrt(h) * xi``."""
    y = np.asarray(y, dtype=float)
    xi = np.asarray(xi, dtype=float)
    return y + math.sqrt(h) * xi


def jump_probability(y, ypi: BoundaryPoint, h: float, lam: float) -> float:
    """Probability of the jump to the boundary from a zone point.

    Computed literally as ``lam*sqrt(h) / |y + lam*sqrt(h)*eta - y_pi|``.
    For a point at distance r from the boundary along the normal this equals
    ``lam*sqrt(h) / (r + lam*sqrt(h))``, i.e. 1 on the boundary and 1/2 at
    the outer edge of the layer.
    """
    y = np.asarray(y, dtype=float)
    layer = lam * math.sqrt(h)
    diff = y + layer * ypi.inward_normal - ypi.position
    den = 0.0
    for i in range(len(diff)):
        den += diff[i] * diff[i]
    den = math.sqrt(den)
    if den < 1e-300:
        raise RuntimeError("degenerate jump denominator; geometry inputs are inconsistent")
    return layer / den


@dataclass(frozen=True)
class Resolution:
    """Outcome of one boundary-zone resolution."""

    to_boundary: bool
    point: np.ndarray
    boundary: BoundaryPoint
    jump_p: float
    clamped: bool


def boundary_resolution(
    y,
    h: float,
    lam: float,
    domain: Domain,
    stream: RandomStream,
    deflect_from_projection: bool = False,
) -> Resolution:
    """Resolve a zone point into a boundary contact or an inward deflection.

    Consumes exactly one uniform draw.  Raises
    :class:`GeometryInconsistencyError` if the deflected point leaves the
    closed domain (possible near re-entrant corners when the layer width
    exceeds the local feature size).
    """
    y = as_point(y, domain.dimension)
    ypi = domain.project_to_boundary(y)
    p_raw = jump_probability(y, ypi, h, lam)
    clamped = p_raw > 1.0
    p = 1.0 if clamped else p_raw
    layer = lam * math.sqrt(h)
    u = stream.uniform()
    if u < p:
        return Resolution(True, ypi.position.copy(), ypi, p, clamped)
    base = ypi.position if deflect_from_projection else y
    deflected = base + layer * ypi.inward_normal
    if not domain.contains(deflected):
        raise GeometryInconsistencyError(
            f"deflected point {deflected} left the domain (from {y}); "
            f"the layer width {layer:.4g} exceeds the local feature size"
        )
    return Resolution(False, deflected, ypi, p, clamped)


def _needs_resolution(domain: Domain, y: np.ndarray, params: ResolvedParams) -> tuple[bool, bool]:
    """(resolve?, outside?) for a proposal; exterior proposals always resolve."""
    inside = domain.contains_many(y[None, :])[0]
    if not inside:
        return True, True
    zone = domain.zone_many(y[None, :], params.h, conservative=params.conservative_zone)[0]
    return bool(zone), False


def _run(
    x0,
    params: WalkParams | ResolvedParams,
    domain: Domain,
    f: BoundaryDatum | None,
    stream: RandomStream,
    trace=None,
) -> TrajectoryOutcome:
    rp = params.resolve(domain) if isinstance(params, WalkParams) else params
    pos = as_point(x0, domain.dimension)
    if not domain.contains(pos):
        raise ValueError(f"start point {pos} lies outside the closed domain")
    layer = rp.layer_width
    reflecting = rp.mode == WalkMode.REFLECTING

    st = WalkState(position=pos, layer_width=layer)
    clamps = 0
    while True:
        resolve, _outside = _needs_resolution(domain, st.position, rp)
        event = "interior"
        if resolve:
            res = boundary_resolution(
                st.position, rp.h, rp.lam, domain, stream, rp.deflect_from_projection
            )
            clamps += res.clamped
            if res.to_boundary:
                st.boundary_hits += 1
                if not reflecting:
                    st.position = res.point
                    st.status = WalkStatus.ABSORBED
                    if trace is not None:
                        trace({"k": st.k, "position": res.point.tolist(), "in_zone": True,
                               "event": "absorbed", "score": st.score})
                    return TrajectoryOutcome(
                        mode=rp.mode,
                        score=st.score,
                        boundary_hits=st.boundary_hits,
                        steps_taken=st.k,
                        censored=False,
                        exit_point=res.boundary,
                        exit_step=st.k,
                        clamped_resolutions=clamps,
                    )
                st.score += layer * float(f(res.boundary))
                if not math.isfinite(st.score):
                    raise ValueError(
                        f"boundary datum produced a non-finite value at {res.boundary.position}"
                    )
                st.position = res.boundary.position + layer * res.boundary.inward_normal
                event = "boundary_hit"
                if not domain.contains(st.position):
                    raise GeometryInconsistencyError(
                        f"re-entry point {st.position} left the domain at {res.boundary.position}"
                    )
            else:
                st.position = res.point
                event = "deflected"
        if trace is not None:
            trace({"k": st.k, "position": st.position.tolist(), "in_zone": bool(resolve),
                   "event": event, "score": st.score})
        if reflecting and st.k >= rp.n_steps:
            st.status = WalkStatus.HORIZON_REACHED
            return TrajectoryOutcome(rp.mode, st.score, st.boundary_hits, st.k, False,
                                     clamped_resolutions=clamps)
        if st.k >= rp.max_steps:
            st.status = WalkStatus.CENSORED
            return TrajectoryOutcome(rp.mode, st.score, st.boundary_hits, st.k, True,
                                     clamped_resolutions=clamps)
        xi = rademacher_step(stream, domain.dimension)
        st.position = st.position + rp.sqrt_h * xi
        st.k += 1


def run_absorbing(x0, params: WalkParams, domain: Domain, stream: RandomStream,
                  trace=None) -> TrajectoryOutcome:
    """Run the chain until its first boundary contact (or censoring).

    Follows the stepping rule exactly: the zone check applies to the
    proposed point before any move is accepted, including the start point,
    so a start on the boundary exits immediately with ``exit_step = 0``.
    """
    if params.mode != WalkMode.ABSORBING:
        raise ValueError("run_absorbing requires absorbing-mode parameters")
    return _run(x0, params, domain, None, stream, trace)


def run_reflecting(x0, params: WalkParams, domain: Domain, f: BoundaryDatum,
                   stream: RandomStream, trace=None) -> TrajectoryOutcome:
    """Run the reflecting chain for ``ceil(T/h)`` steps, accumulating the score.

    Boundary contacts do not stop the walk: each adds
    ``lam*sqrt(h) * f(y_pi)`` to the score and re-enters the domain at
    ``y_pi + lam*sqrt(h)*eta(y_pi)``.
    """
    if params.mode != WalkMode.REFLECTING:
        raise ValueError("run_reflecting requires reflecting-mode parameters")
    return _run(x0, params, domain, f, stream, trace)
