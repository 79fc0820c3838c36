"""Finite monodromy groups of y^2 = x^3 + s and the semi-stability degree.

The local monodromy group at a prime p is the Galois group of the smallest
extension of the maximal unramified local field over which the curve becomes
semi-stable; its order always divides 24. The semi-stability degree d(E) is
the lcm of these orders over all bad primes of the minimal model.

At p = 2 and p = 3 the groups come from the reduction tables for the
family, valid only in small valuation ranges of s; outside those ranges we
refuse (NotTabulatedError) rather than extrapolate. At p >= 5 reduction is
tame and the group follows from the valuation of the minimal discriminant.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import Rational, factorize, lcm_all, residue, unit_part, valuation
from .curves import (
    WeierstrassCurve,
    family_curve,
    minimalize_at_p,
    reduction_class_at_p,
    valuation_profile,
)
from .errors import (
    NotTabulatedError,
    SingularCurveError,
    TheoremViolationError,
    UnsupportedPrimeError,
)

#: Valuation ranges of s covered by the reduction tables at 2 and 3.
TABULATED_V2 = range(0, 3)
TABULATED_V3 = range(0, 5)


class MonodromyGroup(enum.Enum):
    """The finite groups arising as local monodromy of the family."""

    C1 = ("C1", 1)
    C2 = ("C2", 2)
    C3 = ("C3", 3)
    C4 = ("C4", 4)
    C6 = ("C6", 6)
    DIC3 = ("Dic3", 12)  # Z/3 : Z/4, dicyclic of order 12
    SL2F3 = ("SL2(F3)", 24)

    def __init__(self, label: str, order: int):
        self.label = label
        self.order = order


_CYCLIC_BY_ORDER = {
    1: MonodromyGroup.C1,
    2: MonodromyGroup.C2,
    3: MonodromyGroup.C3,
    4: MonodromyGroup.C4,
    6: MonodromyGroup.C6,
}


@dataclass(frozen=True)
class LocalMonodromyResult:
    p: int
    group: MonodromyGroup
    provenance: str  # family-table-2 | family-table-3 | tame-rule | good-reduction

    def __post_init__(self) -> None:
        ok = {
            "family-table-2": self.p == 2,
            "family-table-3": self.p == 3,
            "tame-rule": self.p >= 5,
            "good-reduction": True,
        }
        if not ok.get(self.provenance, False):
            raise TheoremViolationError(
                f"provenance {self.provenance} inconsistent with p={self.p}"
            )


@dataclass(frozen=True)
class DegreeReport:
    """Semi-stability degree of one family member, with its local data."""

    s: Fraction
    locals: tuple[LocalMonodromyResult, ...]
    degree: int
    divides_bound: bool

    def local_at(self, p: int) -> LocalMonodromyResult | None:
        for entry in self.locals:
            if entry.p == p:
                return entry
        return None


def phi_family_at_3(s: Rational) -> MonodromyGroup:
    """Monodromy group at 3 of y^2 = x^3 + s, for v3(s) in {0..4}.

    v3(s) = 0: C4 when s = +-1 mod 9, else Dic3. v3(s) in {1, 2, 4}: Dic3.
    v3(s) = 3, s = 27u: C4 when u = +-1 mod 9, else Dic3. Congruences of a
    rational unit are taken on its image in the 3-adic units mod 9.
    """
    s = Fraction(s)
    if s == 0:
        raise SingularCurveError("s = 0")
    v = valuation(s, 3)
    if v not in TABULATED_V3:
        raise NotTabulatedError(f"v3(s) = {v} outside tabulated range 0..4")
    if v == 0:
        return (
            MonodromyGroup.C4
            if residue(s, 9) in (1, 8)
            else MonodromyGroup.DIC3
        )
    if v == 3:
        u = unit_part(s, 3)
        return (
            MonodromyGroup.C4
            if residue(u, 9) in (1, 8)
            else MonodromyGroup.DIC3
        )
    return MonodromyGroup.DIC3


def phi_family_at_2(s: Rational) -> MonodromyGroup:
    """Monodromy group at 2 of y^2 = x^3 + s, for v2(s) in {0, 1, 2}.

    v2(s) = 0: C3 when s = 1 mod 4, else C6. v2(s) = 1: C2. v2(s) = 2:
    C3 when s/4 = -1 mod 4, else SL2(F3).
    """
    s = Fraction(s)
    if s == 0:
        raise SingularCurveError("s = 0")
    v = valuation(s, 2)
    if v not in TABULATED_V2:
        raise NotTabulatedError(f"v2(s) = {v} outside tabulated range 0..2")
    if v == 0:
        return (
            MonodromyGroup.C3 if residue(s, 4) == 1 else MonodromyGroup.C6
        )
    if v == 1:
        return MonodromyGroup.C2
    u = unit_part(s, 2)
    return (
        MonodromyGroup.C3 if residue(u, 4) == 3 else MonodromyGroup.SL2F3
    )


def phi_tame(curve: WeierstrassCurve, p: int) -> MonodromyGroup:
    """Monodromy group at a tame prime p >= 5, for a curve minimal at p.

    Good or multiplicative reduction: trivial. Additive potentially
    multiplicative: C2. Additive potentially good: cyclic of order
    12 / gcd(v_p(delta_min), 12), always in {2, 3, 4, 6}.
    """
    if p in (2, 3):
        raise UnsupportedPrimeError("tame rule valid only for p >= 5")
    klass = reduction_class_at_p(curve, p)
    if klass in ("good", "multiplicative"):
        return MonodromyGroup.C1
    if klass == "additive-potentially-multiplicative":
        return MonodromyGroup.C2
    v_delta = valuation_profile(curve, p).v_delta
    e = 12 // math.gcd(int(v_delta), 12)
    if e not in (2, 3, 4, 6):
        raise TheoremViolationError(
            f"tame semistability defect {e} outside {{2,3,4,6}} "
            f"(v_p(delta) = {v_delta}, p = {p}); curve not minimal?"
        )
    return _CYCLIC_BY_ORDER[e]


def _minimal_family_parameter(s: Fraction, p: int) -> Fraction:
    """Rescale s by a 6th power of p so that v_p(s) lies in 0..5."""
    v = valuation(s, p)
    shift = 6 * (v // 6)
    return s / Fraction(p) ** shift


def _phi_family_tame(s: Fraction, p: int) -> MonodromyGroup:
    """Closed form of the tame rule for the family: order 6/gcd(v_p(s), 6).

    Equivalent to minimalizing y^2 = x^3 + s at p and applying phi_tame
    (v_p of the minimal discriminant is 2 * (v_p(s) mod 6)); kept closed-form
    to avoid building curve invariants in batch paths.
    """
    k = int(valuation(s, p)) % 6
    if k == 0:
        return MonodromyGroup.C1
    return _CYCLIC_BY_ORDER[6 // math.gcd(k, 6)]


def bad_primes(s: Fraction) -> list[int]:
    """Primes of bad reduction of the minimal model of y^2 = x^3 + s.

    Candidates divide 432 * num(s) * den(s); a candidate p >= 5 is good
    exactly when v_p(s) = 0 mod 6 (the curve minimalizes to a unit
    parameter there). 2 and 3 always remain bad (432 = 2^4 * 3^3).
    """
    candidates = {2, 3}
    candidates.update(factorize(s.numerator))
    candidates.update(factorize(s.denominator))
    bad = []
    for p in sorted(candidates):
        if p >= 5 and valuation(s, p) % 6 == 0:
            continue
        bad.append(p)
    return bad


def phi_general_curve(curve: WeierstrassCurve, p: int) -> LocalMonodromyResult:
    """Local monodromy of an arbitrary integral Weierstrass curve at p.

    For p >= 5 the curve is minimalized and the tame rule applies. At 2 and
    3, family-form curves are routed to the tables; anything else is only
    resolved when the given model has good reduction there.
    """
    if p >= 5:
        if curve.is_family_form():
            # Rescaling s by a 6th power of p is the family's minimalization
            # and also covers parameters with negative valuation at p.
            minimal = family_curve(_minimal_family_parameter(Fraction(curve.a6), p))
        else:
            minimal, _ = minimalize_at_p(curve, p)
        group = phi_tame(minimal, p)
        provenance = "good-reduction" if group is MonodromyGroup.C1 else "tame-rule"
        return LocalMonodromyResult(p=p, group=group, provenance=provenance)
    if curve.is_family_form():
        s = curve.a6
        if p == 2:
            return LocalMonodromyResult(
                p=2, group=phi_family_at_2(s), provenance="family-table-2"
            )
        return LocalMonodromyResult(
            p=3, group=phi_family_at_3(s), provenance="family-table-3"
        )
    if valuation(curve.discriminant(), p) == 0:
        return LocalMonodromyResult(
            p=p, group=MonodromyGroup.C1, provenance="good-reduction"
        )
    raise NotTabulatedError(
        f"monodromy at {p} is tabulated only for family curves y^2 = x^3 + s"
    )


def semistability_degree(s: Rational) -> DegreeReport:
    """d(E_s) = lcm over bad primes of the local monodromy orders.

    Requires v2(s) in {0,1,2} and v3(s) in {0..4}; the result always
    divides 24 and this is asserted.
    """
    s = Fraction(s)
    if s == 0:
        raise SingularCurveError("s = 0")
    locals_: list[LocalMonodromyResult] = []
    for p in bad_primes(s):
        if p == 2:
            group = phi_family_at_2(s)
            provenance = "family-table-2"
        elif p == 3:
            group = phi_family_at_3(s)
            provenance = "family-table-3"
        else:
            group = _phi_family_tame(s, p)
            provenance = "tame-rule"
        locals_.append(LocalMonodromyResult(p=p, group=group, provenance=provenance))
    degree = lcm_all([entry.group.order for entry in locals_])
    if 24 % degree != 0:
        raise TheoremViolationError(
            f"degree {degree} does not divide the g=1 bound 24 (s = {s})"
        )
    return DegreeReport(
        s=s, locals=tuple(locals_), degree=degree, divides_bound=True
    )
