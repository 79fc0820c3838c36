"""Congruence-class covers of the family parameter space at p = 2 and 3.

The family's monodromy group at p is locally constant: the parameter line
splits into disjoint p-adic balls (congruence classes center + p^k Z_p) on
each of which the group is constant. This module enumerates those balls for
the tabulated valuation strata and checks the covering properties.

A ball is stored as (center, modulus_exponent k) with v_p(center) < k, so
every element of center + p^k Z_p automatically shares the center's
valuation; the stratum is readable off the center.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import Rational, residue, unit_part, valuation
from .errors import NotTabulatedError, TheoremViolationError
from .monodromy import (
    TABULATED_V2,
    TABULATED_V3,
    MonodromyGroup,
    phi_family_at_2,
    phi_family_at_3,
)


@dataclass(frozen=True)
class PadicBall:
    """The congruence class center + p^k Z_p with constant monodromy group."""

    p: int
    center: int
    modulus_exponent: int
    group: MonodromyGroup

    def __post_init__(self) -> None:
        if not 0 <= self.center < self.p**self.modulus_exponent:
            raise TheoremViolationError("center not reduced mod p^k")
        if valuation(self.center, self.p) >= self.modulus_exponent:
            raise TheoremViolationError("center does not determine the stratum")

    @property
    def stratum(self) -> int:
        """The common valuation v_p of every element of the ball."""
        return int(valuation(self.center, self.p))

    def contains(self, x: Rational) -> bool:
        x = Fraction(x)
        if x == 0 or valuation(x, self.p) != self.stratum:
            return False
        modulus = self.p**self.modulus_exponent
        return residue(x, modulus) == self.center

    def label(self) -> str:
        return f"{self.center}+{self.p}^{self.modulus_exponent}"


@dataclass(frozen=True)
class CoverReport:
    p: int
    valuation_range: tuple[int, int]  # inclusive
    balls: tuple[PadicBall, ...]

    def classes(self) -> list[tuple[MonodromyGroup, int]]:
        """Groups occurring in the cover with their ball counts."""
        counts: dict[MonodromyGroup, int] = {}
        for ball in self.balls:
            counts[ball.group] = counts.get(ball.group, 0) + 1
        return sorted(counts.items(), key=lambda kv: kv[0].order)


def _phi(p: int, s: Rational) -> MonodromyGroup:
    return phi_family_at_2(s) if p == 2 else phi_family_at_3(s)


def _stratum_balls(p: int, v: int) -> list[PadicBall]:
    """All balls of the stratum v_p(s) = v, per the reduction tables.

    The table condition on the stratum is a congruence of the unit part
    s / p^v mod p^d (d = 2 at both primes where a congruence is needed,
    d = 1 where the group is constant on the whole stratum), giving balls
    of modulus exponent v + d.
    """
    depth = 1
    if (p == 3 and v in (0, 3)) or (p == 2 and v in (0, 2)):
        depth = 2
    modulus = p ** (v + depth)
    balls = []
    for u in range(1, p**depth):
        if u % p == 0:
            continue
        center = u * p**v
        group = _phi(p, Fraction(center))
        balls.append(
            PadicBall(p=p, center=center, modulus_exponent=v + depth, group=group)
        )
    assert all(b.center < modulus for b in balls)
    return balls


def enumerate_cover(p: int, valuation_range: tuple[int, int]) -> CoverReport:
    """Disjoint-ball decomposition of the strata v_p(s) in the given range.

    Only the tabulated strata are available: 0..4 at p = 3, 0..2 at p = 2.
    Disjointness and exact coverage of each stratum are asserted before the
    report is returned.
    """
    lo, hi = valuation_range
    if lo > hi:
        raise NotTabulatedError("empty valuation range")
    tabulated = TABULATED_V2 if p == 2 else TABULATED_V3 if p == 3 else None
    if tabulated is None:
        raise NotTabulatedError(f"no reduction tables at p = {p}")
    if lo not in tabulated or hi not in tabulated:
        raise NotTabulatedError(
            f"valuation range {lo}..{hi} outside tabulated {tabulated}"
        )
    balls: list[PadicBall] = []
    for v in range(lo, hi + 1):
        balls.extend(_stratum_balls(p, v))
    balls.sort(key=lambda b: (b.stratum, b.center))
    report = CoverReport(p=p, valuation_range=(lo, hi), balls=tuple(balls))
    _assert_disjoint_exact_cover(report)
    return report


def _assert_disjoint_exact_cover(report: CoverReport) -> None:
    """Every residue of the covered strata lies in exactly one ball."""
    p = report.p
    lo, hi = report.valuation_range
    max_exp = max(max(b.modulus_exponent for b in report.balls) + 2, 7)
    modulus = p**max_exp
    for r in range(1, modulus):
        v = valuation(r, p)
        if not lo <= v <= hi:
            continue
        hits = sum(1 for b in report.balls if r % p**b.modulus_exponent == b.center)
        if hits != 1:
            raise TheoremViolationError(
                f"residue {r} mod {p}^{max_exp} lies in {hits} balls"
            )


def locate(s: Rational, report: CoverReport) -> PadicBall:
    """The unique ball of the report containing s."""
    s = Fraction(s)
    v = valuation(s, report.p)
    lo, hi = report.valuation_range
    if s == 0 or not lo <= v <= hi:
        raise NotTabulatedError(
            f"v_{report.p}(s) = {v} outside report range {lo}..{hi}"
        )
    for ball in report.balls:
        if ball.contains(s):
            return ball
    raise TheoremViolationError(f"{s} escaped every ball of the cover at {report.p}")
