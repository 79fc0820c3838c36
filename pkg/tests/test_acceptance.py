"""Acceptance gate: one criterion per test, one printed PASS/FAIL line each.

Tolerances and runtime budgets are pinned here and must not be loosened.
The lines are printed outside pytest's capture so they always appear.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from semistab.arith import valuation
from semistab.cli import main
from semistab.cover import enumerate_cover
from semistab.galois import (
    classify_point,
    enumerate_subgroups,
    fixed_point_check,
    galois_closure,
    isomorphic,
)
from semistab.minkowski import (
    asymptotic_ratio_diagnostic,
    gl_cardinality,
    minkowski_bound,
    minkowski_exponent,
    to_scientific,
)
from semistab.monodromy import (
    MonodromyGroup,
    phi_family_at_2,
    phi_family_at_3,
    semistability_degree,
)
from conftest import make_tabulated_s
from test_cover import random_ball_member
from test_galois import (
    NAMED_COVERS,
    coset_fixed_point_oracle,
    random_transitive_cover,
)

G = MonodromyGroup


def report(capsys, number: int, label: str, passed: bool) -> None:
    with capsys.disabled():
        print(f"ACCEPTANCE {number:2d} {'PASS' if passed else 'FAIL'}  {label}")
    assert passed, f"acceptance criterion {number} failed: {label}"


def test_01_minkowski_table(capsys):
    start = time.perf_counter()
    values = [minkowski_bound(g) for g in (1, 2, 3, 4)]
    elapsed = time.perf_counter() - start
    ok = values == [24, 5760, 2903040, 1393459200] and elapsed < 1e-3
    report(capsys, 1, "Minkowski bounds g=1..4 exact, < 1 ms", ok)


def test_02_gl_table(capsys):
    start = time.perf_counter()
    exact = gl_cardinality(2, 12)
    rounded = [to_scientific(gl_cardinality(n, 12)) for n in (4, 6, 8)]
    elapsed = time.perf_counter() - start
    ok = (
        exact == 4608
        and rounded == ["3.2e+16", "1.2e+38", "1.9e+68"]
        and elapsed < 1e-2
    )
    report(capsys, 2, "GL_n(Z/12) cardinalities exact and rounded, < 10 ms", ok)


def test_03_bound_consistency(capsys):
    from semistab.arith import primes_up_to

    ok = True
    for g in range(1, 11):
        product = 1
        for p in primes_up_to(2 * g + 1):
            product *= p ** minkowski_exponent(g, p)
        ok = ok and minkowski_bound(g) == product
        ok = ok and all(
            minkowski_exponent(g, p) == 0
            for p in primes_up_to(4 * g + 10)
            if p - 1 > 2 * g
        )
    report(capsys, 3, "bound = product formula and exponent cutoff, g <= 10", ok)


def test_04_asymptotic_diagnostic(capsys):
    start = time.perf_counter()
    value = asymptotic_ratio_diagnostic(10**5)
    elapsed = time.perf_counter() - start
    ok = abs(value - 3.4109) < 0.35 and elapsed < 5.0
    report(
        capsys, 4,
        f"(M(n)/n!)^(1/n) at n=1e5 within 0.35 of 3.4109 (got {value:.4f}), < 5 s",
        ok,
    )


def test_05_example_regression(capsys):
    ok = all(phi_family_at_3(s) is G.C4 for s in (1, 8, 10, 17, 216))
    ok = ok and all(phi_family_at_3(s) is G.DIC3 for s in (2, 9, 81, 27 * 2))
    ok = ok and all(phi_family_at_2(s) is G.C3 for s in (1, 5, 12))
    ok = ok and all(phi_family_at_2(s) is G.C6 for s in (3, 7))
    ok = ok and all(phi_family_at_2(s) is G.C2 for s in (2, 6))
    ok = ok and all(phi_family_at_2(s) is G.SL2F3 for s in (4, 20))
    ok = ok and semistability_degree(4).degree == 24
    c4_balls = {
        (b.center, b.modulus_exponent)
        for b in enumerate_cover(3, (0, 4)).balls
        if b.group is G.C4
    }
    ok = ok and {(1, 2), (8, 2), (27, 5), (216, 5)} <= c4_balls
    report(capsys, 5, "monodromy tables, d(E_4) = 24, four C4 balls (exact)", ok)


def test_06_divisibility(capsys):
    rng = random.Random(6)
    start = time.perf_counter()
    violations = sum(
        1
        for _ in range(10_000)
        if 24 % semistability_degree(make_tabulated_s(rng)).degree != 0
    )
    elapsed = time.perf_counter() - start
    ok = violations == 0 and elapsed < 10.0
    report(
        capsys, 6,
        f"degree | 24 for 10000 random tabulated s ({violations} violations), < 10 s",
        ok,
    )


def test_07_sextic_twist_invariance(capsys):
    rng = random.Random(7)
    units = [5, 7, 11, 13, 25, 35, 49, 55, 65, 77]
    violations = 0
    for _ in range(1_000):
        s = make_tabulated_s(rng)
        u = Fraction(rng.choice(units))
        base = semistability_degree(s)
        twisted = semistability_degree(s * u**6)
        if twisted.degree != base.degree or twisted.locals != base.locals:
            violations += 1
    report(
        capsys, 7,
        f"identical reports for 1000 sextic-twist pairs ({violations} violations)",
        violations == 0,
    )


def test_08_covering_properties(capsys):
    rng = random.Random(8)
    ok = True
    for p, val_range in ((2, (0, 2)), (3, (0, 4))):
        cover = enumerate_cover(p, val_range)
        lo, hi = val_range
        for r in range(1, p**7):
            v = valuation(r, p)
            if not lo <= v <= hi:
                continue
            hits = sum(
                1 for b in cover.balls if r % p**b.modulus_exponent == b.center
            )
            ok = ok and hits == 1
        phi = phi_family_at_2 if p == 2 else phi_family_at_3
        for ball in cover.balls:
            ok = ok and all(
                phi(random_ball_member(rng, ball)) is ball.group
                for _ in range(200)
            )
    report(
        capsys, 8,
        "balls disjoint, exact cover mod p^7, group constant on 200 samples/ball",
        ok,
    )


def test_09_galois_suite(capsys):
    rng = random.Random(9)
    start = time.perf_counter()
    ok = True
    for _ in range(200):
        cover = random_transitive_cover(rng)
        closure = galois_closure(cover)
        ok = ok and len(closure.orbit) == closure.monodromy_group.order
        ok = ok and closure.deck_group.order == len(closure.orbit)
        ev = closure.evaluation_map()
        ok = ok and sorted(ev.values()) == list(range(cover.degree))
        images = {
            closure.deck_action_on_fiber(d) for d in closure.deck_group.elements
        }
        ok = ok and len(images) == closure.deck_group.order
    for cover in NAMED_COVERS.values():
        closure = galois_closure(cover)
        deck = closure.deck_group
        if deck.order > 72:
            continue
        subs = enumerate_subgroups(deck)
        for H, I in itertools.product(subs, repeat=2):
            ok = ok and fixed_point_check(closure, H, I) == coset_fixed_point_oracle(
                deck, H, I
            )
        reps = []
        for sub in subs:
            if not any(isomorphic(sub, r) for r in reps):
                reps.append(sub)
        cells = [classify_point(closure, sub, reps) for sub in subs]
        ok = ok and all(
            isomorphic(sub, reps[i]) for sub, i in zip(subs, cells)
        )
        ok = ok and set(cells) == set(range(len(reps)))
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 60.0
    report(
        capsys, 9,
        f"200 random closures, fpc = coset oracle, classify routes agree "
        f"({elapsed:.1f} s < 60 s)",
        ok,
    )


def test_10_sweep_determinism(capsys, tmp_path):
    first = tmp_path / "sweep_a.jsonl"
    second = tmp_path / "sweep_b.jsonl"
    args = ["sweep", "--from", "1", "--to", "2000", "--threads", "8"]
    code_a = main(args + ["--out", str(first)])
    code_b = main(args + ["--out", str(second)])
    ok = (
        code_a == 0
        and code_b == 0
        and first.read_bytes() == second.read_bytes()
        and len(first.read_text().splitlines()) == 2000
    )
    report(capsys, 10, "sweep 1..2000 with 8 threads is byte-deterministic", ok)
