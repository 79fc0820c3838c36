"""Weierstrass equations over Q: invariants, the family y^2 = x^3 + s,
and local minimalization at primes p >= 5.

Sign convention note: we use the standard c6 = -b2^3 + 36 b2 b4 - 216 b6,
which gives c6 = -864 s for the family curve (0,0,0,0,s). Some tables print
the opposite sign for c6; no congruence condition used anywhere downstream
depends on it (they are all stated on s directly).

Minimalization at 2 and 3 for arbitrary curves is deliberately not
implemented; the family's reduction data at 2 and 3 enters through
tabulated valuation ranges in the monodromy module instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import INFINITY, Rational, valuation
from .errors import InvalidInputError, SingularCurveError, UnsupportedPrimeError


@dataclass(frozen=True)
class WeierstrassCurve:
    """Long Weierstrass equation y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.discriminant() == 0:
            raise SingularCurveError(f"singular curve: {self}")

    def is_short_form(self) -> bool:
        return self.a1 == self.a2 == self.a3 == 0

    def is_family_form(self) -> bool:
        """True for y^2 = x^3 + s, i.e. a1 = a2 = a3 = a4 = 0."""
        return self.is_short_form() and self.a4 == 0

    def discriminant(self) -> Fraction:
        b2 = self.a1**2 + 4 * self.a2
        b4 = 2 * self.a4 + self.a1 * self.a3
        b6 = self.a3**2 + 4 * self.a6
        b8 = (
            self.a1**2 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3**2
            - self.a4**2
        )
        return -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class CurveInvariants:
    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    delta: Fraction
    j: Fraction


@dataclass(frozen=True)
class ValuationProfile:
    """p-adic valuations of the main invariants; +infinity for zero values."""

    p: int
    v_delta: int | float
    v_c4: int | float
    v_c6: int | float
    v_j: int | float


def compute_invariants(curve: WeierstrassCurve) -> CurveInvariants:
    """All derived b/c invariants, discriminant and j of a Weierstrass curve.

    The exact identities 1728*delta = c4^3 - c6^2 and 4*b8 = b2*b6 - b4^2
    are asserted on every call.
    """
    b2 = curve.a1**2 + 4 * curve.a2
    b4 = 2 * curve.a4 + curve.a1 * curve.a3
    b6 = curve.a3**2 + 4 * curve.a6
    b8 = (
        curve.a1**2 * curve.a6
        + 4 * curve.a2 * curve.a6
        - curve.a1 * curve.a3 * curve.a4
        + curve.a2 * curve.a3**2
        - curve.a4**2
    )
    c4 = b2**2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    delta = -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6
    if delta == 0:
        raise SingularCurveError("discriminant vanishes")
    assert 4 * b8 == b2 * b6 - b4**2
    assert 1728 * delta == c4**3 - c6**2
    return CurveInvariants(
        b2=b2, b4=b4, b6=b6, b8=b8, c4=c4, c6=c6, delta=delta, j=c4**3 / delta
    )


def valuation_profile(curve: WeierstrassCurve, p: int) -> ValuationProfile:
    inv = compute_invariants(curve)
    return ValuationProfile(
        p=p,
        v_delta=valuation(inv.delta, p),
        v_c4=valuation(inv.c4, p),
        v_c6=valuation(inv.c6, p),
        v_j=valuation(inv.j, p) if inv.j != 0 else INFINITY,
    )


def family_curve(s: Rational) -> WeierstrassCurve:
    """The member y^2 = x^3 + s of the parameterized family (s != 0)."""
    s = Fraction(s)
    if s == 0:
        raise SingularCurveError("s = 0 gives a singular cubic")
    return WeierstrassCurve(Fraction(0), Fraction(0), Fraction(0), Fraction(0), s)


def _require_tame_prime(p: int) -> None:
    if p in (2, 3):
        raise UnsupportedPrimeError(
            "only p >= 5 supported; reduction at 2 and 3 is handled through "
            "the family's tabulated valuation ranges"
        )


def minimalize_at_p(
    curve: WeierstrassCurve, p: int
) -> tuple[WeierstrassCurve, int]:
    """Minimal model at p >= 5 for a short-form curve, with scaling exponent.

    Applies the substitution (x, y) -> (p^2 x, p^3 y) while v_p(c4) >= 4,
    v_p(c6) >= 6 and v_p(delta) >= 12, dividing (a4, a6) by (p^4, p^6);
    each step drops v_p(delta) by 12 and preserves j.
    """
    _require_tame_prime(p)
    if not curve.is_short_form():
        raise InvalidInputError(
            "minimalization implemented for short-form curves only"
        )
    if valuation(curve.a4, p) < 0 or valuation(curve.a6, p) < 0:
        raise InvalidInputError(
            f"curve is not integral at {p}; clear denominators first"
        )
    steps = 0
    a4, a6 = curve.a4, curve.a6
    while True:
        c4 = -48 * a4
        c6 = -864 * a6
        delta = -16 * (4 * a4**3 + 27 * a6**2)
        if (
            valuation(c4, p) >= 4
            and valuation(c6, p) >= 6
            and valuation(delta, p) >= 12
        ):
            a4 /= p**4
            a6 /= p**6
            steps += 1
        else:
            break
    if steps == 0:
        return curve, 0
    return (
        WeierstrassCurve(Fraction(0), Fraction(0), Fraction(0), a4, a6),
        steps,
    )


def reduction_class_at_p(curve: WeierstrassCurve, p: int) -> str:
    """Reduction type at p >= 5 of a curve already minimal at p.

    One of 'good', 'multiplicative', 'additive-potentially-good',
    'additive-potentially-multiplicative'. Potential behavior of an additive
    curve is read off the valuation of j: negative means potentially
    multiplicative.
    """
    _require_tame_prime(p)
    prof = valuation_profile(curve, p)
    if prof.v_delta == 0:
        return "good"
    if prof.v_c4 == 0:
        return "multiplicative"
    if prof.v_j < 0:
        return "additive-potentially-multiplicative"
    return "additive-potentially-good"
