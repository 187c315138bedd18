"""Normal-crossing resolution data and the exact threshold engine.

A :class:`ResolutionModel` records, for each exceptional or strict
transform divisor of a resolution of f: the multiplicity m of the pulled
back function, the multiplicity a of the Jacobian, whether the divisor
has real points, and (optionally) a weight vector w with
ord(pullback of x^nu) = <w, nu> along the divisor.  Weight vectors cover
ordinary and weighted blow-ups at the origin; models whose real divisors
lack weights can still answer threshold queries but reject monomial
membership with :class:`UnsupportedModelError`.

From this data the package computes exactly:

* the real log canonical threshold, min over real divisors of (a+1)/m
  (infinity when no divisor has real points);
* the log canonical threshold of the complexification, the same minimum
  over all divisors (exact when the model lists the full complex
  resolution; an upper bound otherwise);
* membership of a monomial x^nu in the multiplier ideal at level alpha:
  for every real divisor, a + <w, nu> >= floor(alpha * m);
* the left limit (membership just below alpha), which replaces the
  floor by alpha*m - 1 exactly when alpha*m is an integer -- no numeric
  epsilon is involved, the jump structure is piecewise constant with
  rational breakpoints;
* the real jumping numbers up to a bound, each certified by a monomial
  witness that lies in the ideal just below the jump but not at it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InvalidModelError, SchemaError, UnsupportedModelError
from .polynomials import Exponents, exponent_box
from .rationals import INFINITY, Threshold, rational_to_str


@dataclass(frozen=True)
class DivisorRecord:
    """One divisor of the resolution.

    m: multiplicity of the pulled-back function along the divisor (>= 1).
    a: multiplicity of the Jacobian along the divisor (>= 0).
    real: whether the divisor has real points.
    weights: optional length-n vector w with ord(pullback of x^nu) = <w, nu>.
    """

    id: str
    m: int
    a: int
    real: bool
    weights: tuple[int, ...] | None = None

    def validate(self, n: int) -> None:
        if not self.id:
            raise InvalidModelError("divisor id must be a nonempty string")
        if self.m < 1:
            raise InvalidModelError(f"divisor {self.id!r}: m must be >= 1, got {self.m}")
        if self.a < 0:
            raise InvalidModelError(f"divisor {self.id!r}: a must be >= 0, got {self.a}")
        if self.weights is not None:
            w = self.weights
            if len(w) != n:
                raise InvalidModelError(
                    f"divisor {self.id!r}: weights length {len(w)}, expected {n}"
                )
            if any(x < 0 for x in w):
                raise InvalidModelError(f"divisor {self.id!r}: weights must be nonnegative")
            if not any(w):
                raise InvalidModelError(f"divisor {self.id!r}: weights must not be all zero")


@dataclass(frozen=True)
class ResolutionModel:
    """A finite set of divisor records encoding one resolution."""

    n: int
    divisors: tuple[DivisorRecord, ...]
    label: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise InvalidModelError(f"ambient dimension must be >= 1, got {self.n}")
        object.__setattr__(self, "divisors", tuple(self.divisors))
        ids = [d.id for d in self.divisors]
        if len(set(ids)) != len(ids):
            raise InvalidModelError(f"duplicate divisor ids in {ids}")
        for d in self.divisors:
            d.validate(self.n)

    @property
    def real_divisors(self) -> tuple[DivisorRecord, ...]:
        return tuple(d for d in self.divisors if d.real)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        divisors = []
        for d in self.divisors:
            rec: dict = {"id": d.id, "m": d.m, "a": d.a, "real": d.real}
            if d.weights is not None:
                rec["weights"] = list(d.weights)
            divisors.append(rec)
        return {"n": self.n, "label": self.label, "divisors": divisors}

    @classmethod
    def from_json_dict(cls, doc: object, where: str = "model") -> "ResolutionModel":
        if not isinstance(doc, dict):
            raise SchemaError(f"{where}: expected an object")
        n = doc.get("n")
        if not isinstance(n, int) or n < 1:
            raise SchemaError(f"{where}.n: expected a positive integer")
        label = doc.get("label", "")
        if not isinstance(label, str):
            raise SchemaError(f"{where}.label: expected a string")
        raw = doc.get("divisors")
        if not isinstance(raw, list):
            raise SchemaError(f"{where}.divisors: expected a list")
        divisors = []
        for i, item in enumerate(raw):
            path = f"{where}.divisors[{i}]"
            if not isinstance(item, dict):
                raise SchemaError(f"{path}: expected an object")
            div_id = item.get("id")
            if not isinstance(div_id, str) or not div_id:
                raise SchemaError(f"{path}.id: expected a nonempty string")
            m = item.get("m")
            if not isinstance(m, int) or m < 1:
                raise SchemaError(f"{path}.m: expected an integer >= 1")
            a = item.get("a")
            if not isinstance(a, int) or a < 0:
                raise SchemaError(f"{path}.a: expected an integer >= 0")
            real = item.get("real")
            if not isinstance(real, bool):
                raise SchemaError(f"{path}.real: expected a boolean")
            weights = item.get("weights")
            if weights is not None:
                if (
                    not isinstance(weights, list)
                    or len(weights) != n
                    or any(not isinstance(w, int) or w < 0 for w in weights)
                    or not any(weights)
                ):
                    raise SchemaError(
                        f"{path}.weights: expected a length-{n} list of nonnegative "
                        "integers, not all zero"
                    )
                weights = tuple(weights)
            try:
                divisors.append(DivisorRecord(div_id, m, a, real, weights))
            except InvalidModelError as exc:
                raise SchemaError(f"{path}: {exc}") from None
        try:
            return cls(n=n, divisors=tuple(divisors), label=label)
        except InvalidModelError as exc:
            raise SchemaError(f"{where}: {exc}") from None


@dataclass(frozen=True)
class JumpReport:
    """Sorted real jumping numbers with monomial witnesses.

    Each witness nu satisfies membership just below the jump value but
    not at it.  ``rlct`` equals the first jump whenever the first jump
    is within the bound and the witness box was large enough.
    """

    jumps: tuple[tuple[Fraction, Exponents], ...]
    bound: Fraction
    rlct: Threshold

    def values(self) -> list[Fraction]:
        return [v for v, _ in self.jumps]

    def to_json_dict(self) -> dict:
        return {
            "rlct": rational_to_str(self.rlct),
            "bound": rational_to_str(self.bound),
            "jumps": [
                {"value": rational_to_str(v), "witness": list(w)} for v, w in self.jumps
            ],
        }


@dataclass(frozen=True)
class ThresholdComparison:
    rlct: Threshold
    lct: Fraction
    ordered: bool


# ---------------------------------------------------------------------------
# Thresholds
# ---------------------------------------------------------------------------


def rlct(model: ResolutionModel) -> Threshold:
    """min over divisors with real points of (a + 1) / m; infinity if none.

    An infinite threshold means f has no real zeros: |f|**(-alpha) is
    locally integrable for every alpha.
    """
    reals = model.real_divisors
    if not reals:
        return INFINITY
    return min(Fraction(d.a + 1, d.m) for d in reals)


def lct(model: ResolutionModel) -> Fraction:
    """min over ALL divisors of (a + 1) / m.

    Exact for the complexification when the model lists a full complex
    resolution; otherwise an upper bound (a minimum over a subset).
    """
    if not model.divisors:
        raise InvalidModelError("lct needs at least one divisor")
    return min(Fraction(d.a + 1, d.m) for d in model.divisors)


def compare(model: ResolutionModel) -> ThresholdComparison:
    """Both thresholds plus the ordering check rlct >= lct."""
    r = rlct(model)
    c = lct(model)
    return ThresholdComparison(rlct=r, lct=c, ordered=r >= c)


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------


def _order_threshold(alpha: Fraction, m: int, left: bool) -> int:
    """Required divisor order floor(alpha*m), or its exact left limit.

    For the left limit (membership at alpha - epsilon for infinitesimal
    epsilon) the threshold drops by 1 exactly when alpha*m is an integer.
    """
    am = alpha * m
    if left and am.denominator == 1:
        return int(am) - 1
    return math.floor(am)


def _real_constraints(
    model: ResolutionModel, alpha: Fraction, left: bool
) -> list[tuple[int, tuple[int, ...], int]]:
    """(a, weights, threshold) for each real divisor; raises without weights."""
    if not isinstance(alpha, Fraction):
        alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    out = []
    for d in model.real_divisors:
        if d.weights is None:
            raise UnsupportedModelError(
                f"divisor {d.id!r} is real but carries no weights; "
                "monomial membership is undefined for this model"
            )
        out.append((d.a, d.weights, _order_threshold(alpha, d.m, left)))
    return out


def _check_exponents(model: ResolutionModel, nu: Exponents) -> Exponents:
    nu = tuple(nu)
    if len(nu) != model.n:
        raise ValueError(f"exponent vector {nu} has length {len(nu)}, expected {model.n}")
    if any(e < 0 for e in nu):
        raise ValueError(f"exponents must be nonnegative: {nu}")
    return nu


def member(model: ResolutionModel, nu: Exponents, alpha: Fraction) -> bool:
    """Is the monomial x^nu in the real multiplier ideal at level alpha?

    True iff for every real divisor, a + <w, nu> >= floor(alpha * m).
    Vacuously true when no divisor has real points.
    """
    nu = _check_exponents(model, nu)
    return all(
        a + sum(w * e for w, e in zip(weights, nu)) >= threshold
        for a, weights, threshold in _real_constraints(model, Fraction(alpha), left=False)
    )


def member_left(model: ResolutionModel, nu: Exponents, alpha: Fraction) -> bool:
    """Membership just below alpha (exact left limit, no numeric epsilon)."""
    nu = _check_exponents(model, nu)
    return all(
        a + sum(w * e for w, e in zip(weights, nu)) >= threshold
        for a, weights, threshold in _real_constraints(model, Fraction(alpha), left=True)
    )


@lru_cache(maxsize=64)
def _exponent_box_array(n: int, bound: int) -> np.ndarray:
    arr = np.array(exponent_box(n, bound), dtype=np.int64)
    arr.setflags(write=False)
    return arr


def member_box(
    model: ResolutionModel, alpha: Fraction, box_bound: int, left: bool = False
) -> np.ndarray:
    """Membership of every monomial with exponents in [0, box_bound]^n.

    Returns a boolean array aligned with :func:`exponent_box` order
    (first coordinate varying fastest).  Batch counterpart of
    :func:`member` / :func:`member_left`; both share the same threshold
    computation.
    """
    if box_bound < 0:
        raise ValueError("box_bound must be nonnegative")
    box = _exponent_box_array(model.n, box_bound)
    mask = np.ones(len(box), dtype=bool)
    for a, weights, threshold in _real_constraints(model, Fraction(alpha), left):
        orders = a + box @ np.asarray(weights, dtype=np.int64)
        mask &= orders >= threshold
    return mask


def graded_piece_nonempty(
    model: ResolutionModel, alpha: Fraction, box_bound: int
) -> Exponents | None:
    """Search for a monomial that leaves the ideal exactly at alpha.

    Scans exponent vectors with entries in [0, box_bound] in
    :func:`exponent_box` order and returns the first nu that is a member
    just below alpha but not at alpha, or None if the box holds no such
    witness.  A None certifies nothing beyond the box.
    """
    alpha = Fraction(alpha)
    in_left = member_box(model, alpha, box_bound, left=True)
    in_at = member_box(model, alpha, box_bound, left=False)
    hits = np.flatnonzero(in_left & ~in_at)
    if hits.size == 0:
        return None
    return tuple(int(e) for e in _exponent_box_array(model.n, box_bound)[hits[0]])


def default_box_bound(model: ResolutionModel, bound: Fraction) -> int:
    """Witness box large enough for weight vectors with all entries >= 1."""
    reals = model.real_divisors
    if not reals:
        return 0
    return math.ceil(bound * max(d.m for d in reals))


def real_jumping_numbers(
    model: ResolutionModel, bound: Fraction, box_bound: int | None = None
) -> JumpReport:
    """Enumerate real jumping numbers up to ``bound`` with witnesses.

    Candidates are the rationals k/m for real divisors' multiplicities m
    (duplicates merged); a candidate is a jump iff some monomial in the
    witness box leaves the ideal there.  Jumps whose every witness lies
    outside the box are missed; the default box, ceil(bound * max m),
    suffices for weight vectors with all entries >= 1.
    """
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError(f"bound must be positive, got {bound}")
    if box_bound is None:
        box_bound = default_box_bound(model, bound)
    candidates: set[Fraction] = set()
    for d in model.real_divisors:
        k_max = math.floor(bound * d.m)
        candidates.update(Fraction(k, d.m) for k in range(1, k_max + 1))
    jumps = []
    for alpha in sorted(candidates):
        witness = graded_piece_nonempty(model, alpha, box_bound)
        if witness is not None:
            jumps.append((alpha, witness))
    return JumpReport(jumps=tuple(jumps), bound=bound, rlct=rlct(model))
