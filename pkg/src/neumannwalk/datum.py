"""Multivariate polynomials and Neumann boundary data built from them.

A boundary datum is the function f prescribed on the boundary.  Two closed
forms compose freely:

* a polynomial *trace*: f(y) = P(y) evaluated at the boundary point, and
* the outward normal derivative of a polynomial *potential*:
  f(y) = grad U(y) . nu(y).

Keeping data in this restricted family lets the compiled kernel evaluate f
without calling back into Python, and it is exactly the family the run
config accepts (sums of monomials in the boundary coordinates).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .geometry import BoundaryPoint


@dataclass(frozen=True)
class Polynomial:
    """Sum of monomials ``sum_k coeffs[k] * prod_i x_i ** powers[k, i]``."""

    coeffs: np.ndarray  # (K,)
    powers: np.ndarray  # (K, d), small nonnegative ints
    dimension: int

    @staticmethod
    def from_terms(terms, dimension: int) -> "Polynomial":
        """Build from an iterable of (coefficient, exponent-tuple) pairs."""
        terms = list(terms)
        if not terms:
            return Polynomial(np.zeros(0), np.zeros((0, dimension), dtype=np.int32), dimension)
        coeffs = np.array([float(c) for c, _ in terms])
        powers = np.array([list(p) for _, p in terms], dtype=np.int32)
        if powers.shape != (len(terms), dimension) or np.any(powers < 0):
            raise ValueError("each term needs one nonnegative exponent per coordinate")
        return Polynomial(coeffs, powers, dimension)

    @staticmethod
    def zero(dimension: int) -> "Polynomial":
        return Polynomial.from_terms([], dimension)

    @staticmethod
    def constant(c: float, dimension: int) -> "Polynomial":
        return Polynomial.from_terms([(c, (0,) * dimension)], dimension)

    @property
    def n_terms(self) -> int:
        return len(self.coeffs)

    def __call__(self, x) -> float | np.ndarray:
        """Evaluate at one point (d,) or at rows of an (n, d) array.

        Powers are expanded by repeated multiplication in fixed term order;
        the compiled kernel performs the same operations in the same order.
        """
        X = np.asarray(x, dtype=float)
        single = X.ndim == 1
        if single:
            X = X[None, :]
        acc = np.zeros(len(X))
        for k in range(self.n_terms):
            term = np.full(len(X), self.coeffs[k])
            for i in range(self.dimension):
                for _ in range(int(self.powers[k, i])):
                    term = term * X[:, i]
            acc = acc + term
        return float(acc[0]) if single else acc

    def gradient(self) -> tuple["Polynomial", ...]:
        grads = []
        for i in range(self.dimension):
            terms = []
            for k in range(self.n_terms):
                e = int(self.powers[k, i])
                if e > 0:
                    p = self.powers[k].copy()
                    p[i] = e - 1
                    terms.append((self.coeffs[k] * e, tuple(int(v) for v in p)))
            grads.append(Polynomial.from_terms(terms, self.dimension))
        return tuple(grads)

    def scaled(self, a: float) -> "Polynomial":
        return Polynomial(self.coeffs * float(a), self.powers, self.dimension)

    def plus(self, other: "Polynomial") -> "Polynomial":
        if other.dimension != self.dimension:
            raise ValueError("polynomial dimensions differ")
        return Polynomial(
            np.concatenate([self.coeffs, other.coeffs]),
            np.concatenate([self.powers, other.powers]),
            self.dimension,
        )


_TERM_SPLIT = re.compile(r"(?=[+-])")
_FACTOR = re.compile(r"^(x(\d+)|[xyz])(?:\^(\d+))?$")
_ALIASES = {"x": 0, "y": 1, "z": 2}


def parse_polynomial(expr: str, dimension: int) -> Polynomial:
    """Parse a sum of monomials such as ``"2*x0^2 - x1 + 3"``.

    Grammar: terms joined by ``+``/``-``; each term is an optional numeric
    coefficient and ``*``-separated factors ``xI`` or ``xI^P`` (aliases
    ``x, y, z`` name the first three coordinates).
    """
    text = expr.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial expression")
    terms = []
    for chunk in _TERM_SPLIT.split(text):
        if not chunk:
            continue
        sign = 1.0
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = -1.0
            chunk = chunk[1:]
        if not chunk:
            raise ValueError(f"dangling sign in {expr!r}")
        coeff = sign
        powers = [0] * dimension
        for factor in chunk.split("*"):
            m = _FACTOR.match(factor)
            if m:
                name, idx, power = m.groups()
                i = int(idx) if idx is not None else _ALIASES[name]
                if i >= dimension:
                    raise ValueError(
                        f"coordinate x{i} out of range for dimension {dimension} in {expr!r}"
                    )
                powers[i] += int(power) if power else 1
            else:
                try:
                    coeff *= float(factor)
                except ValueError:
                    raise ValueError(f"cannot parse factor {factor!r} in {expr!r}") from None
        terms.append((coeff, tuple(powers)))
    return Polynomial.from_terms(terms, dimension)


@dataclass(frozen=True)
class BoundaryDatum:
    """Neumann datum f on the boundary, in kernel-evaluable closed form.

    ``f(y) = trace(y) + grad(potential)(y) . nu(y)`` where nu is the unit
    outward normal.  Either part may be absent.
    """

    dimension: int
    trace: Polynomial
    potential: Polynomial

    @staticmethod
    def from_trace(p: Polynomial) -> "BoundaryDatum":
        return BoundaryDatum(p.dimension, p, Polynomial.zero(p.dimension))

    @staticmethod
    def from_normal_derivative(potential: Polynomial) -> "BoundaryDatum":
        return BoundaryDatum(
            potential.dimension, Polynomial.zero(potential.dimension), potential
        )

    @staticmethod
    def zero(dimension: int) -> "BoundaryDatum":
        return BoundaryDatum.from_trace(Polynomial.zero(dimension))

    def __call__(self, bp: BoundaryPoint) -> float:
        val = 0.0
        if self.trace.n_terms:
            val += self.trace(bp.position)
        if self.potential.n_terms:
            grad = self.potential.gradient()
            nu = bp.outward_normal
            for i in range(self.dimension):
                if grad[i].n_terms:
                    val += nu[i] * grad[i](bp.position)
        return val

    def eval_many(self, positions: np.ndarray, outward_normals: np.ndarray) -> np.ndarray:
        """Vectorized evaluation; same accumulation order as the kernels."""
        vals = np.zeros(len(positions))
        if self.trace.n_terms:
            vals = vals + self.trace(positions)
        if self.potential.n_terms:
            grad = self.potential.gradient()
            for i in range(self.dimension):
                if grad[i].n_terms:
                    vals = vals + outward_normals[:, i] * grad[i](positions)
        return vals

    def scaled(self, a: float) -> "BoundaryDatum":
        return BoundaryDatum(self.dimension, self.trace.scaled(a), self.potential.scaled(a))

    def plus(self, other: "BoundaryDatum") -> "BoundaryDatum":
        if other.dimension != self.dimension:
            raise ValueError("datum dimensions differ")
        return BoundaryDatum(
            self.dimension, self.trace.plus(other.trace), self.potential.plus(other.potential)
        )

    def shifted(self, c: float) -> "BoundaryDatum":
        """f + c: adds a constant to the trace part (perturbation helper)."""
        return BoundaryDatum(
            self.dimension,
            self.trace.plus(Polynomial.constant(c, self.dimension)),
            self.potential,
        )

    def abs_bound_proxy(self):
        """Callable |f| for quadrature of the compatibility denominator."""
        return lambda bp: abs(self(bp))
