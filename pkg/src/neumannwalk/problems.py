"""Built-in benchmark Neumann problems with closed-form harmonic solutions.

Each problem pairs a domain with a compatible boundary datum and, where
available, the exact solution used as oracle by the benchmark and
convergence harnesses.  The registry favors harmonic polynomials whose
volume mean vanishes by symmetry, so no post-hoc normalization is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .datum import BoundaryDatum, Polynomial
from .geometry import Ball, Domain, Hyperrectangle, LShape2D, surface_integral


@dataclass(frozen=True)
class BenchmarkProblem:
    name: str
    domain: Domain
    datum: BoundaryDatum
    exact_w: Polynomial | None
    default_points: np.ndarray  # (n, d)
    horizon_T: float
    difference_only: bool = False
    notes: str = ""

    def exact_at(self, x) -> float:
        if self.exact_w is None:
            raise ValueError(f"problem {self.name!r} has no exact solution")
        return float(self.exact_w(np.asarray(x, dtype=float)))


def _saddle(dim: int, i: int = 0, j: int = 1) -> Polynomial:
    """The harmonic saddle x_i^2 - x_j^2 in ``dim`` coordinates."""
    ei = [0] * dim
    ei[i] = 2
    ej = [0] * dim
    ej[j] = 2
    return Polynomial.from_terms([(1.0, tuple(ei)), (-1.0, tuple(ej))], dim)


def _build_zero_square() -> BenchmarkProblem:
    dom = Hyperrectangle([0.0, 0.0], [1.0, 1.0])
    return BenchmarkProblem(
        name="zero-square",
        domain=dom,
        datum=BoundaryDatum.zero(2),
        exact_w=Polynomial.zero(2),
        default_points=np.array([[0.5, 0.5]]),
        horizon_T=20.0,
        notes="trivial problem: zero datum, zero solution",
    )


def _build_saddle_square() -> BenchmarkProblem:
    dom = Hyperrectangle([0.0, 0.0], [1.0, 1.0])
    w = _saddle(2)
    return BenchmarkProblem(
        name="saddle-square",
        domain=dom,
        datum=BoundaryDatum.from_normal_derivative(w),
        exact_w=w,
        default_points=np.array([[0.75, 0.25]]),
        horizon_T=20.0,
        notes="harmonic saddle x^2 - y^2 on the unit square; volume mean zero by symmetry",
    )


def _build_linear_disk() -> BenchmarkProblem:
    dom = Ball([0.0, 0.0], 1.0)
    w = Polynomial.from_terms([(1.0, (1, 0))], 2)
    return BenchmarkProblem(
        name="linear-disk",
        domain=dom,
        datum=BoundaryDatum.from_normal_derivative(w),
        exact_w=w,
        default_points=np.array([[0.5, 0.0]]),
        horizon_T=20.0,
        notes="linear solution w = x1 on the unit disk; datum equals y1 on the circle",
    )


def _build_saddle_hypercube_5d() -> BenchmarkProblem:
    dom = Hyperrectangle([0.0] * 5, [1.0] * 5)
    w = _saddle(5)
    return BenchmarkProblem(
        name="saddle-hypercube-5d",
        domain=dom,
        datum=BoundaryDatum.from_normal_derivative(w),
        exact_w=w,
        default_points=np.array([[0.75, 0.25, 0.5, 0.5, 0.5]]),
        horizon_T=10.0,
        notes="five-dimensional saddle x1^2 - x2^2 on the unit hypercube",
    )


def _build_saddle_lshape() -> BenchmarkProblem:
    dom = LShape2D(side=1.0, notch="ne")
    w = _saddle(2)
    return BenchmarkProblem(
        name="saddle-lshape",
        domain=dom,
        datum=BoundaryDatum.from_normal_derivative(w),
        exact_w=w,
        default_points=np.array([[0.25, 0.25], [0.75, 0.25]]),
        horizon_T=20.0,
        difference_only=True,
        notes=(
            "saddle on the L-shape; no volume-mean-zero guarantee is relied on, "
            "use difference normalization against the first default point"
        ),
    )


_BUILDERS = {
    "zero-square": _build_zero_square,
    "saddle-square": _build_saddle_square,
    "linear-disk": _build_linear_disk,
    "saddle-hypercube-5d": _build_saddle_hypercube_5d,
    "saddle-lshape": _build_saddle_lshape,
}


def names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def builtin(name: str) -> BenchmarkProblem:
    """Return the registered benchmark problem called ``name``."""
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise ValueError(
            f"unknown problem {name!r}; available: {', '.join(names())}"
        ) from None


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float


@dataclass
class VerifyReport:
    problem: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify(problem: BenchmarkProblem, n_quad: int = 4096, rng_seed: int = 0) -> VerifyReport:
    """Numerically check the consistency of a problem's data.

    Four checks: the exact solution is harmonic (finite-difference
    Laplacian), the datum matches the outward normal derivative of the
    exact solution (central differences, an independent path from the
    analytic gradient used in scoring), the datum has zero surface mean,
    and the exact solution has zero volume mean.
    """
    from .geometry import random_interior_points

    report = VerifyReport(problem.name)
    dom = problem.domain
    d = dom.dimension
    rng = np.random.default_rng(rng_seed)

    if problem.exact_w is not None:
        w = problem.exact_w
        pts = random_interior_points(dom, 1000, rng)
        step = 1e-4 * dom.diameter
        # keep the stencil inside the domain
        ok = dom.signed_distance_many(pts) > 2 * step
        pts = pts[ok] if np.any(ok) else pts
        lap = np.zeros(len(pts))
        for i in range(d):
            e = np.zeros(d)
            e[i] = step
            lap += (w(pts + e) - 2.0 * w(pts) + w(pts - e)) / step**2
        scale = max(1.0, float(np.max(np.abs(w(pts)))))
        residual = float(np.max(np.abs(lap)))
        tol = 1e-6 * scale
        report.checks.append(CheckResult("exact solution harmonic", residual <= tol, residual, tol))

        quad = dom.surface_quadrature(n_quad)
        eps = 1e-5 * dom.diameter
        fd = np.zeros(len(quad.weights))
        nu = -quad.inward_normals
        fd = (w(quad.positions + eps * nu) - w(quad.positions - eps * nu)) / (2 * eps)
        fvals = problem.datum.eval_many(quad.positions, nu)
        residual = float(np.max(np.abs(fvals - fd)))
        scale = max(1.0, float(np.max(np.abs(fvals))))
        tol = 1e-9 * scale
        report.checks.append(
            CheckResult("datum is the outward normal derivative", residual <= tol, residual, tol)
        )

    integral = surface_integral(dom, problem.datum, n_quad)
    abs_integral = surface_integral(dom, problem.datum.abs_bound_proxy(), n_quad)
    tol = 1e-9 * max(abs_integral, 1e-12)
    report.checks.append(
        CheckResult("datum has zero surface mean", abs(integral) <= tol, abs(integral), tol)
    )

    if problem.exact_w is not None:
        n_per_dim = 128 if d <= 3 else 8
        vol_mean = dom.volume_integral(problem.exact_w, n_per_dim) / dom.volume
        tol = 1e-6
        name = "exact solution has zero volume mean"
        if problem.difference_only:
            name += " (informational)"
            report.checks.append(CheckResult(name, True, abs(vol_mean), math.inf))
        else:
            report.checks.append(CheckResult(name, abs(vol_mean) <= tol, abs(vol_mean), tol))

    return report
