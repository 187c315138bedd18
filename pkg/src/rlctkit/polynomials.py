"""Exact sparse polynomials over the rationals.

A polynomial in n variables is a map from exponent tuples to nonzero
Fraction coefficients.  Coefficients stay exact end to end; floating
point enters only at evaluation boundaries (single-point evaluation
rounds once at the end, batch evaluation is a documented float path for
sampling).

Conventions that matter here:

* The *leading form* of a polynomial is its LOWEST-degree homogeneous
  part, not the highest.  Thresholds of an analytic germ are governed by
  the behavior at the zero, so ``leading_form(x**2 + x**3)`` is ``x**2``.
* ``screen_simple_type`` checks positive-definiteness of a homogeneous
  form on the unit sphere by deterministic grid search.  It is a screen,
  not a decision procedure: a strictly positive minimum certifies
  nothing beyond the sampled points, so the verdict is three-valued.
  The screen uses the positive-sign convention; for a form that is
  negative away from the origin, screen ``-f`` instead (thresholds of
  ``|f|`` do not see the sign).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    NonHomogeneousError,
    SchemaError,
    ZeroPolynomialError,
)
from .rationals import rational_from_str, rational_to_str

# Exponent tuple: entry i is the power of variable x_i.
Exponents = tuple[int, ...]


class SparsePolynomial:
    """Immutable sparse polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples to coefficients; zero coefficients are
    dropped on construction, so equality of the term maps is equality of
    polynomials.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Exponents, Fraction | int]):
        if n < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {n}")
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != n:
                raise DimensionMismatchError(
                    f"exponent vector {exps} has length {len(exps)}, expected {n}"
                )
            if any(not isinstance(e, int) or e < 0 for e in exps):
                raise ValueError(f"exponents must be nonnegative integers: {exps}")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
        self.n = n
        self._terms = {e: c for e, c in clean.items() if c != 0}

    @property
    def terms(self) -> dict[Exponents, Fraction]:
        return dict(self._terms)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "SparsePolynomial":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, value: Fraction | int) -> "SparsePolynomial":
        return cls(n, {(0,) * n: Fraction(value)})

    @classmethod
    def variable(cls, n: int, index: int) -> "SparsePolynomial":
        """The coordinate polynomial x_index in n variables."""
        if not 0 <= index < n:
            raise ValueError(f"variable index {index} out of range for n={n}")
        exps = tuple(1 if i == index else 0 for i in range(n))
        return cls(n, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Fraction | int = 1) -> "SparsePolynomial":
        exps = tuple(exps)
        return cls(len(exps), {exps: Fraction(coeff)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.total_degrees()) <= 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exps in sorted(self._terms, key=lambda e: (sum(e), e)):
            coeff = self._terms[exps]
            factors = [
                f"x{i}" if e == 1 else f"x{i}^{e}"
                for i, e in enumerate(exps)
                if e
            ]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            else:
                parts.append(str(coeff) + "*" + "*".join(factors))
        return " + ".join(parts)

    # -- arithmetic --------------------------------------------------------

    def _check_same_space(self, other: "SparsePolynomial") -> None:
        if self.n != other.n:
            raise DimensionMismatchError(
                f"polynomials in {self.n} and {other.n} variables"
            )

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check_same_space(other)
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return SparsePolynomial(self.n, out)

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self + (-other)

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other: "SparsePolynomial | Fraction | int") -> "SparsePolynomial":
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial(
                self.n, {e: c * other for e, c in self._terms.items()}
            )
        self._check_same_space(other)
        out: dict[Exponents, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exps = tuple(a + b for a, b in zip(ea, eb))
                out[exps] = out.get(exps, Fraction(0)) + ca * cb
        return SparsePolynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "SparsePolynomial":
        if power < 0:
            raise ValueError("negative powers are not polynomials")
        result = SparsePolynomial.constant(self.n, 1)
        for _ in range(power):
            result = result * self
        return result

    # -- evaluation --------------------------------------------------------

    def evaluate_exact(self, point: Sequence[Fraction | int]) -> Fraction:
        """Evaluate at a rational point with exact arithmetic throughout."""
        if len(point) != self.n:
            raise DimensionMismatchError(
                f"point has length {len(point)}, expected {self.n}"
            )
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for v, e in zip(vals, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def evaluate(self, point: Sequence[float]) -> float:
        """Evaluate at a real point.

        The accumulation is exact (floats convert to rationals without
        loss), rounded to machine precision once at the end.
        """
        return float(self.evaluate_exact([Fraction(v) for v in point]))

    def values(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at many points in float64 arithmetic.

        ``points`` has shape (N, n).  This is the throughput path for
        sampling; it does not carry the exactness guarantee of
        :meth:`evaluate`.
        """
        points = np.asarray(points, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != self.n:
            raise DimensionMismatchError(
                f"points of shape {points.shape}, expected (N, {self.n})"
            )
        out = np.zeros(len(points))
        for exps, coeff in self._terms.items():
            term = np.full(len(points), float(coeff))
            for i, e in enumerate(exps):
                if e:
                    term *= points[:, i] ** e
            out += term
        return out

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        """Canonical JSON form: terms sorted by exponent tuple, coefficients "p/q"."""
        return {
            "n": self.n,
            "terms": [
                {"c": rational_to_str(self._terms[e]), "e": list(e)}
                for e in sorted(self._terms)
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: object, where: str = "polynomial") -> "SparsePolynomial":
        if not isinstance(doc, dict):
            raise SchemaError(f"{where}: expected an object")
        n = doc.get("n")
        if not isinstance(n, int) or n < 1:
            raise SchemaError(f"{where}.n: expected a positive integer")
        raw_terms = doc.get("terms")
        if not isinstance(raw_terms, list):
            raise SchemaError(f"{where}.terms: expected a list")
        terms: dict[Exponents, Fraction] = {}
        for i, item in enumerate(raw_terms):
            path = f"{where}.terms[{i}]"
            if not isinstance(item, dict):
                raise SchemaError(f"{path}: expected an object")
            try:
                coeff = rational_from_str(item["c"])
            except (KeyError, TypeError, ValueError):
                raise SchemaError(f"{path}.c: expected a \"p/q\" string") from None
            if not isinstance(coeff, Fraction):
                raise SchemaError(f"{path}.c: coefficients must be finite rationals")
            exps = item.get("e")
            if (
                not isinstance(exps, list)
                or len(exps) != n
                or any(not isinstance(e, int) or e < 0 for e in exps)
            ):
                raise SchemaError(
                    f"{path}.e: expected a length-{n} list of nonnegative integers"
                )
            key = tuple(exps)
            if key in terms:
                raise SchemaError(f"{path}.e: duplicate exponent vector {exps}")
            terms[key] = coeff
        return cls(n, terms)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def evaluate(p: SparsePolynomial, point: Sequence[float]) -> float:
    """Evaluate p at a real point (exact accumulation, one final rounding)."""
    return p.evaluate(point)


def leading_form(p: SparsePolynomial) -> tuple[int, SparsePolynomial]:
    """Split off the lowest-degree homogeneous part of p.

    Returns:
        ``(d, f_d)`` where d is the minimal total degree among the terms
        of p and f_d is the sum of all degree-d terms.

    Raises:
        ZeroPolynomialError: for the zero polynomial, which has no
            leading form.
    """
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no leading form")
    terms = p.terms
    d = min(sum(e) for e in terms)
    low = {e: c for e, c in terms.items() if sum(e) == d}
    return d, SparsePolynomial(p.n, low)


class SimpleTypeStatus(enum.Enum):
    SIMPLE_TYPE = "simple-type"
    NOT_SIMPLE_TYPE = "not-simple-type"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SimpleTypeVerdict:
    """Outcome of the positivity screen for a leading form.

    ``witness`` is set exactly when the screen found a sphere point with
    value <= 0; ``min_found`` is the smallest value seen on the sphere.
    """

    status: SimpleTypeStatus
    witness: tuple[float, ...] | None
    min_found: float


def _angles_to_points(angles: np.ndarray) -> np.ndarray:
    """Map spherical angles (N, n-1) to unit vectors (N, n)."""
    count, m = angles.shape
    pts = np.empty((count, m + 1))
    sin_prod = np.ones(count)
    for i in range(m):
        pts[:, i] = sin_prod * np.cos(angles[:, i])
        sin_prod = sin_prod * np.sin(angles[:, i])
    pts[:, m] = sin_prod
    return pts


def _angle_grid(lows: np.ndarray, highs: np.ndarray, density: int) -> np.ndarray:
    axes = [np.linspace(lo, hi, density) for lo, hi in zip(lows, highs)]
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def screen_simple_type(
    f_d: SparsePolynomial,
    grid_density: int = 50,
    tolerance: float = 1e-6,
) -> SimpleTypeVerdict:
    """Screen a homogeneous form for positivity on the unit sphere.

    Minimizes f_d over a deterministic grid in spherical angles
    (``grid_density`` points per angular dimension) followed by one local
    refinement pass around the grid minimizer.  Classification:

    * minimum found > tolerance: SIMPLE_TYPE
    * minimum found <= 0: NOT_SIMPLE_TYPE, with the minimizing point as witness
    * otherwise: INCONCLUSIVE

    A screen only: SIMPLE_TYPE means no zero was found at this density,
    not that none exists.  Cost grows as grid_density**(n-1); lower the
    density for n above 3.

    Raises:
        NonHomogeneousError: if f_d has terms of mixed total degree.
        ZeroPolynomialError: if f_d is zero.
    """
    if f_d.is_zero():
        raise ZeroPolynomialError("cannot screen the zero form")
    if not f_d.is_homogeneous():
        raise NonHomogeneousError(
            f"leading form expected to be homogeneous, degrees {sorted(f_d.total_degrees())}"
        )
    if grid_density < 2:
        raise ValueError("grid_density must be at least 2")

    if f_d.n == 1:
        pts = np.array([[1.0], [-1.0]])
        vals = f_d.values(pts)
        best = int(np.argmin(vals))
        min_found = float(vals[best])
        witness_pt = tuple(float(v) for v in pts[best])
    else:
        m = f_d.n - 1
        lows = np.zeros(m)
        highs = np.full(m, np.pi)
        highs[-1] = 2 * np.pi * (1 - 1.0 / grid_density)  # avoid duplicating 0
        angles = _angle_grid(lows, highs, grid_density)
        pts = _angles_to_points(angles)
        vals = f_d.values(pts)
        best = int(np.argmin(vals))
        min_found = float(vals[best])
        best_angles = angles[best]

        # One refinement pass: same density inside +-1 coarse step.
        steps = (highs - lows) / (grid_density - 1)
        fine = _angle_grid(best_angles - steps, best_angles + steps, grid_density)
        fine_pts = _angles_to_points(fine)
        fine_vals = f_d.values(fine_pts)
        fbest = int(np.argmin(fine_vals))
        if fine_vals[fbest] < min_found:
            min_found = float(fine_vals[fbest])
            witness_pt = tuple(float(v) for v in fine_pts[fbest])
        else:
            witness_pt = tuple(float(v) for v in pts[best])

    if min_found > tolerance:
        return SimpleTypeVerdict(SimpleTypeStatus.SIMPLE_TYPE, None, min_found)
    if min_found <= 0.0:
        return SimpleTypeVerdict(SimpleTypeStatus.NOT_SIMPLE_TYPE, witness_pt, min_found)
    return SimpleTypeVerdict(SimpleTypeStatus.INCONCLUSIVE, None, min_found)


def sum_of_squares(polys: Iterable[SparsePolynomial]) -> SparsePolynomial:
    """Exact sum of squares of the given polynomials.

    This is the reduction from an ideal generated by f_1..f_r to a single
    function: integrability of |g| / (sum_i |f_i|)**alpha is equivalent to
    integrability of |g| / f**(alpha/2) for f = sum_i f_i**2, because
    sum |f_i|**2 <= (sum |f_i|)**2 <= r * sum |f_i|**2.  Thresholds of the
    ideal are therefore exactly TWICE the thresholds of the returned
    polynomial.

    Raises:
        ValueError: on an empty list.
        DimensionMismatchError: if the inputs live in different dimensions.
        ZeroPolynomialError: if every input is zero.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("sum_of_squares needs at least one polynomial")
    n = polys[0].n
    total = SparsePolynomial.zero(n)
    for p in polys:
        if p.n != n:
            raise DimensionMismatchError(f"mixed dimensions {n} and {p.n}")
        total = total + p * p
    if total.is_zero():
        raise ZeroPolynomialError("all generators are zero")
    return total


def exponent_box(n: int, bound: int) -> list[Exponents]:
    """All exponent vectors with entries in [0, bound], first coordinate fastest.

    This is the enumeration order used for witness searches: (0,...,0),
    (1,0,...,0), (2,0,...,0), ...  The first vector found is the
    reported witness, so the order is part of the reproducibility
    contract.
    """
    return [t[::-1] for t in itertools.product(range(bound + 1), repeat=n)]
