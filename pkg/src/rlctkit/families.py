"""Fixture families with known thresholds and jumping numbers.

Each constructor returns a :class:`FamilyFixture` bundling a polynomial
(when a concrete instance exists), its resolution model, and the
expected invariants in closed form.  The fixtures are the ground truth
for cross-validating the exact engine against the Monte-Carlo oracle:
every expected value here comes from a closed-form derivation, never
from running the code.

The closed forms:

* monomial x^m: normal crossings already, one divisor per variable that
  actually appears, rlct = min 1/m_i, jumps = union of {k/m_i}.
* sum of even powers sum x_i^d: an isolated real zero whose lowest
  degree form is positive off the origin ("simple type"); the weighted
  blow-up of the origin gives rlct = n/d and jumps {k/d : k >= n}.
* deformed even power g^e + h with g positive definite of degree d1/e
  and deg h = d1 + c: two blow-ups resolve it; the second divisor has
  no real points, which forces rlct = n/d1 strictly above the complex
  threshold (n+1)/(d1+e).  The flagship instance is
  (x^2+y^2+z^2)^2 + x^6+y^6+z^6 with rlct 3/4 and lct 2/3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .polynomials import SparsePolynomial
from .rationals import Threshold
from .resolution import DivisorRecord, ResolutionModel

JumpRule = Callable[[Fraction], list[Fraction]]


@dataclass(frozen=True)
class FamilyFixture:
    """A polynomial (optional), its model, and closed-form expectations.

    ``expected_rjn`` and ``complex_jn_superset``, when present, map a
    bound to the sorted list of values <= bound.  ``lct_exact`` records
    whether the model lists a full complex resolution, in which case
    lct(model) is the threshold of the complexification rather than an
    upper bound for it.
    """

    f: SparsePolynomial | None
    model: ResolutionModel
    expected_rlct: Threshold
    expected_lct: Fraction | None = None
    expected_rjn: JumpRule | None = None
    notes: str = ""
    lct_exact: bool = False
    complex_jn_superset: JumpRule | None = None


def monomial_family(m: tuple[int, ...]) -> FamilyFixture:
    """f = prod x_i^{m_i}: already normal crossings, resolved by the identity.

    One divisor per nonzero exponent, with multiplicity m_i, Jacobian
    multiplicity 0, and weight vector e_i.  rlct = min 1/m_i and the
    real jumping numbers are the union of the arithmetic progressions
    {k/m_i : k >= 1}.
    """
    m = tuple(m)
    if not m:
        raise ValueError("need at least one variable")
    if any(not isinstance(e, int) or e < 0 for e in m):
        raise ValueError(f"exponents must be nonnegative integers: {m}")
    if not any(m):
        raise ValueError("exponent vector must not be all zero")
    n = len(m)
    divisors = []
    for i, mi in enumerate(m):
        if mi == 0:
            continue
        weights = tuple(1 if j == i else 0 for j in range(n))
        divisors.append(DivisorRecord(id=f"D{i + 1}", m=mi, a=0, real=True, weights=weights))
    multiplicities = [mi for mi in m if mi]

    def rjn(bound: Fraction) -> list[Fraction]:
        values = {
            Fraction(k, mi)
            for mi in multiplicities
            for k in range(1, math.floor(bound * mi) + 1)
        }
        return sorted(values)

    return FamilyFixture(
        f=SparsePolynomial.monomial(m),
        model=ResolutionModel(n=n, divisors=tuple(divisors), label=f"monomial {m}"),
        expected_rlct=min(Fraction(1, mi) for mi in multiplicities),
        expected_lct=min(Fraction(1, mi) for mi in multiplicities),
        expected_rjn=rjn,
        notes=(
            "Coordinate hyperplanes are their own resolution; every divisor is "
            "real, so the real and complex thresholds agree."
        ),
        lct_exact=True,
    )


def simple_type_family(n: int, d: int) -> FamilyFixture:
    """f = sum x_i^d with d even: isolated real zero of simple type.

    The weighted blow-up of the origin carries multiplicity d and
    Jacobian multiplicity n-1, and is the only divisor with real points
    (the strict transform of {f=0} meets no real point off the origin
    because f is positive there).  Hence rlct = n/d and the real
    jumping numbers are {k/d : k >= n}.
    """
    if n < 1 or d < 1:
        raise ValueError(f"n and d must be positive, got n={n}, d={d}")
    if d % 2:
        raise ValueError(f"d must be even so that sum of d-th powers has an isolated real zero, got d={d}")
    f = SparsePolynomial.zero(n)
    for i in range(n):
        f = f + SparsePolynomial.variable(n, i) ** d

    def rjn(bound: Fraction) -> list[Fraction]:
        return [Fraction(k, d) for k in range(n, math.floor(bound * d) + 1)]

    return FamilyFixture(
        f=f,
        model=ResolutionModel(
            n=n,
            divisors=(DivisorRecord(id="E1", m=d, a=n - 1, real=True, weights=(1,) * n),),
            label=f"simple-type n={n} d={d}",
        ),
        expected_rlct=Fraction(n, d),
        expected_rjn=rjn,
        notes=(
            "The model keeps only the origin blow-up, the sole divisor with real "
            "points; the strict transform of the complex zero locus is dropped, so "
            "lct(model) = n/d is only an upper bound for the complex threshold "
            "(the true value is min(n/d, 1))."
        ),
        lct_exact=False,
    )


def deformed_power_family(n: int, d1: int, e: int, c: int) -> FamilyFixture:
    """Model for g^e + h, g positive definite of degree d1/e, deg h = d1 + c.

    Requires e | d1, c >= e >= 2, and n > d1/e.  Blowing up the origin
    gives a real divisor (m = d1, a = n-1); blowing up the strict
    transform of {g = 0}, which has no real points, gives a second
    divisor (m = d1 + e, a = n) that only the complexification sees.
    So rlct = n/d1 while the complex threshold is (n+1)/(d1+e), which
    is strictly smaller under the stated inequalities.

    No polynomial instance is attached (``f is None``): the closed
    forms hold for any h in generic position, and picking one is the
    caller's business.  :func:`quartic_sextic_fixture` supplies the
    concrete flagship instance n=3, d1=4, e=c=2.  The parameter c, the
    gap between the two degrees, enters only the validity conditions,
    not the divisor data.

    The second divisor carries no weight vector: membership queries
    need the real divisors only, and the order function along the
    second blow-up is not monomial.
    """
    for name, value in (("n", n), ("d1", d1), ("e", e), ("c", c)):
        if not isinstance(value, int) or value < 1:
            raise ValueError(f"{name} must be a positive integer, got {value!r}")
    if d1 % e:
        raise ValueError(f"e must divide d1, got d1={d1}, e={e}")
    if not (c >= e >= 2):
        raise ValueError(f"need c >= e >= 2, got c={c}, e={e}")
    if not (n > d1 // e):
        raise ValueError(f"need n > d1/e, got n={n}, d1/e={d1 // e}")
    exact = (n, d1, e, c) == (3, 4, 2, 2)
    return FamilyFixture(
        f=None,
        model=ResolutionModel(
            n=n,
            divisors=(
                DivisorRecord(id="E1", m=d1, a=n - 1, real=True, weights=(1,) * n),
                DivisorRecord(id="E2", m=d1 + e, a=n, real=False),
            ),
            label=f"deformed-power n={n} d1={d1} e={e} c={c}",
        ),
        expected_rlct=Fraction(n, d1),
        expected_lct=min(Fraction(n, d1), Fraction(n + 1, d1 + e)),
        notes=(
            "Two blow-ups: the origin, then the nowhere-real strict transform of "
            "{g=0}. "
            + (
                "For these parameters the two blow-ups already resolve the "
                "flagship instance, so lct(model) is exact for it."
                if exact
                else "Divisors from any further blow-ups are omitted, so "
                "lct(model) is an upper bound for the complex threshold."
            )
        ),
        lct_exact=exact,
    )


def quartic_sextic_fixture() -> FamilyFixture:
    """f = (x^2+y^2+z^2)^2 + x^6+y^6+z^6, the flagship deformed power.

    rlct = 3/4, complex threshold 2/3, real jumping numbers
    {k/4 : k >= 3}.  The complex jumping numbers lie in
    {k/6 + j : k in {4,5,6}, j >= 0}; the fixture carries that superset
    so callers can confirm the real jumps avoid its non-integral
    members entirely, the cleanest display of the real/complex
    asymmetry.

    The transversality this instance needs (the quadric {g=0} is smooth
    with no real points, the sextic {x^6+y^6+z^6=0} is smooth and not
    divisible by g) was verified analytically; nothing is checked at
    runtime.
    """
    base = deformed_power_family(3, 4, 2, 2)
    x, y, z = (SparsePolynomial.variable(3, i) for i in range(3))
    g = x * x + y * y + z * z
    f = g * g + x**6 + y**6 + z**6

    def rjn(bound: Fraction) -> list[Fraction]:
        return [Fraction(k, 4) for k in range(3, math.floor(bound * 4) + 1)]

    def jn_superset(bound: Fraction) -> list[Fraction]:
        values = set()
        for k in (4, 5, 6):
            j = 0
            while Fraction(k, 6) + j <= bound:
                values.add(Fraction(k, 6) + j)
                j += 1
        return sorted(values)

    return FamilyFixture(
        f=f,
        model=ResolutionModel(n=3, divisors=base.model.divisors, label="quartic-sextic"),
        expected_rlct=Fraction(3, 4),
        expected_lct=Fraction(2, 3),
        expected_rjn=rjn,
        notes=(
            "Concrete instance of deformed-power n=3 d1=4 e=2 c=2 with "
            "h = x^6+y^6+z^6; its required transversality was verified "
            "analytically. The two blow-ups resolve this instance, so "
            "lct(model) = 2/3 is the exact complex threshold."
        ),
        lct_exact=True,
        complex_jn_superset=jn_superset,
    )


def nonintegral(values: list[Fraction]) -> list[Fraction]:
    """The non-integer members, in order."""
    return [v for v in values if v.denominator != 1]


# -- registry for the command-line front end --------------------------------

FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "monomial": ("m",),
    "simple-type": ("n", "d"),
    "deformed-power": ("n", "d1", "e", "c"),
    "quartic-sextic": (),
}


def build_family(name: str, params: dict) -> FamilyFixture:
    """Construct a registered family by name.

    ``params`` must supply exactly the keys in ``FAMILY_PARAMS[name]``;
    ``m`` is a tuple of nonnegative integers, everything else a positive
    integer.  Raises ValueError on unknown names, missing or extra
    parameters, and constructor precondition failures.
    """
    if name not in FAMILY_PARAMS:
        known = ", ".join(sorted(FAMILY_PARAMS))
        raise ValueError(f"unknown family {name!r}; known families: {known}")
    expected = FAMILY_PARAMS[name]
    missing = [k for k in expected if k not in params]
    extra = [k for k in params if k not in expected]
    if missing:
        raise ValueError(f"family {name!r} needs parameter(s) {', '.join(missing)}")
    if extra:
        raise ValueError(f"family {name!r} does not take parameter(s) {', '.join(extra)}")
    if name == "monomial":
        return monomial_family(tuple(params["m"]))
    if name == "simple-type":
        return simple_type_family(params["n"], params["d"])
    if name == "deformed-power":
        return deformed_power_family(params["n"], params["d1"], params["e"], params["c"])
    return quartic_sextic_fixture()


def default_fixtures() -> list[tuple[str, FamilyFixture]]:
    """Representative fixtures of every family, for cross-validation loops."""
    return [
        ("monomial m=(1,)", monomial_family((1,))),
        ("monomial m=(2,3)", monomial_family((2, 3))),
        ("monomial m=(2,2,2)", monomial_family((2, 2, 2))),
        ("simple-type n=2 d=2", simple_type_family(2, 2)),
        ("simple-type n=3 d=2", simple_type_family(3, 2)),
        ("simple-type n=3 d=4", simple_type_family(3, 4)),
        ("simple-type n=4 d=2", simple_type_family(4, 2)),
        ("simple-type n=2 d=4", simple_type_family(2, 4)),
        ("deformed-power n=3 d1=4 e=2 c=2", deformed_power_family(3, 4, 2, 2)),
        ("quartic-sextic", quartic_sextic_fixture()),
    ]
