"""Finite connected covers as permutation actions and their Galois closures.

A degree-n connected cover is modeled by a transitive action of finitely
many monodromy generators on the fiber {0..n-1}. Its Galois closure is the
orbit of the base tuple (0,..,n-1) under the diagonal action inside the
n-fold product of the fiber; the deck group is the commuting (right
multiplication) action on that orbit, simply transitive by construction.

Points are 0-based internally; cycle notation at the I/O boundary is
1-based.
"""

from __future__ import annotations

import functools
import itertools
import math
import re
from dataclasses import dataclass, field

from .errors import (
    DisconnectedCoverError,
    InvalidInputError,
    SizeLimitError,
    TheoremViolationError,
)

Perm = tuple[int, ...]

MAX_DEGREE = 10
MAX_GROUP_ORDER = 10_000


# ---------------------------------------------------------------------------
# permutation primitives


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    """a after b: (a*b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, ai in enumerate(a):
        inv[ai] = i
    return tuple(inv)


def perm_order(a: Perm) -> int:
    order = 1
    seen = [False] * len(a)
    for start in range(len(a)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = a[i]
            length += 1
        order = math.lcm(order, length)
    return order


def check_perm(a, degree: int) -> Perm:
    a = tuple(a)
    if sorted(a) != list(range(degree)):
        raise InvalidInputError(f"{a} is not a permutation of 0..{degree - 1}")
    return a


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation like '(1 2 3)(4 5)' or '1,2,3'."""
    text = text.strip()
    if not text:
        return identity(degree)
    if "(" in text:
        cycles = re.findall(r"\(([^()]*)\)", text)
        if not cycles and text.strip("() "):
            raise InvalidInputError(f"unbalanced cycle notation: {text!r}")
    else:
        cycles = [text]
    image = list(range(degree))
    for cycle in cycles:
        points = [int(tok) - 1 for tok in re.split(r"[,\s]+", cycle.strip()) if tok]
        if not points:
            continue
        if len(set(points)) != len(points):
            raise InvalidInputError(f"repeated point in cycle {cycle!r}")
        for pt in points:
            if not 0 <= pt < degree:
                raise InvalidInputError(
                    f"point {pt + 1} outside 1..{degree} in {text!r}"
                )
        for i, pt in enumerate(points):
            image[pt] = points[(i + 1) % len(points)]
    return tuple(image)


def format_cycles(a: Perm) -> str:
    """1-based disjoint-cycle string; '()' for the identity."""
    out = []
    seen = [False] * len(a)
    for start in range(len(a)):
        if seen[start] or a[start] == start:
            seen[start] = True
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(str(i + 1))
            i = a[i]
        out.append("(" + " ".join(cycle) + ")")
    return "".join(out) or "()"


# ---------------------------------------------------------------------------
# permutation groups


@dataclass(frozen=True)
class PermutationGroup:
    """A finite permutation group given by its full element set."""

    degree: int
    generators: tuple[Perm, ...]
    elements: frozenset[Perm]

    @classmethod
    def generate(
        cls,
        generators: list[Perm] | tuple[Perm, ...],
        degree: int,
        limit: int = MAX_GROUP_ORDER,
    ) -> "PermutationGroup":
        gens = tuple(check_perm(g, degree) for g in generators)
        elements = {identity(degree)}
        frontier = [identity(degree)]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = compose(g, x)
                    if y not in elements:
                        elements.add(y)
                        nxt.append(y)
                        if len(elements) > limit:
                            raise SizeLimitError(
                                f"group order exceeds limit {limit}"
                            )
            frontier = nxt
        return cls(degree=degree, generators=gens, elements=frozenset(elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, perm: Perm) -> bool:
        return perm in self.elements

    def sorted_elements(self) -> list[Perm]:
        return sorted(self.elements)

    def is_abelian(self) -> bool:
        gens = self.generators or tuple(self.elements)
        return all(
            compose(a, b) == compose(b, a)
            for a, b in itertools.combinations(gens, 2)
        )

    def element_order_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(perm_order(x) for x in self.elements))

    def conjugate_set(self, subset: frozenset[Perm], g: Perm) -> frozenset[Perm]:
        ginv = inverse(g)
        return frozenset(compose(compose(g, x), ginv) for x in subset)


@dataclass(frozen=True)
class Subgroup:
    """An element subset of a parent group, validated to be a subgroup."""

    parent: PermutationGroup
    elements: frozenset[Perm]

    def validate(self) -> bool:
        if identity(self.parent.degree) not in self.elements:
            return False
        if not self.elements <= self.parent.elements:
            return False
        return all(
            compose(a, b) in self.elements
            for a in self.elements
            for b in self.elements
        )

    def __post_init__(self) -> None:
        if not self.validate():
            raise InvalidInputError("element set is not a subgroup")

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_abelian(self) -> bool:
        return all(
            compose(a, b) == compose(b, a)
            for a, b in itertools.combinations(self.elements, 2)
        )

    def element_order_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(perm_order(x) for x in self.elements))

    def conjugate_by(self, g: Perm) -> "Subgroup":
        return Subgroup(
            parent=self.parent, elements=self.parent.conjugate_set(self.elements, g)
        )

    def sort_key(self) -> tuple:
        return (len(self.elements), tuple(sorted(self.elements)))


def enumerate_subgroups(
    group: PermutationGroup, limit: int = MAX_GROUP_ORDER
) -> list[Subgroup]:
    """All subgroups, by iterative closure.

    Seed with the cyclic subgroups, then extend each known subgroup by one
    extra group element and close, until no new subgroup appears. Output is
    deterministic: sorted by order, then by element set.
    """
    if group.order > limit:
        raise SizeLimitError(
            f"group order {group.order} exceeds enumeration limit {limit}"
        )
    return list(_subgroups_cached(group))


@functools.lru_cache(maxsize=64)
def _subgroups_cached(group: PermutationGroup) -> tuple[Subgroup, ...]:
    elements = group.sorted_elements()
    full = frozenset(group.elements)
    order = group.order

    def close(seed: set[Perm]) -> frozenset[Perm]:
        # A subset of more than half the group generates the whole group
        # (its closure has order dividing |G| and exceeding |G|/2).
        closed = set(seed)
        frontier = list(seed)
        while frontier:
            x = frontier.pop()
            for y in tuple(closed):
                for z in (compose(x, y), compose(y, x)):
                    if z not in closed:
                        closed.add(z)
                        frontier.append(z)
                        if 2 * len(closed) > order:
                            return full
        return frozenset(closed)

    known: set[frozenset[Perm]] = set()
    for x in elements:
        cyclic = {x}
        y = x
        while True:
            y = compose(y, x)
            if y in cyclic:
                break
            cyclic.add(y)
        cyclic.add(identity(group.degree))
        known.add(frozenset(cyclic))
    seen_seeds: set[frozenset[Perm]] = set()
    frontier = list(known)
    while frontier:
        nxt = []
        for sub in frontier:
            if sub == full:
                continue
            for x in elements:
                if x in sub:
                    continue
                seed = sub | {x}
                key = frozenset(seed)
                if key in seen_seeds:
                    continue
                seen_seeds.add(key)
                extended = close(seed)
                if extended not in known:
                    known.add(extended)
                    nxt.append(extended)
        frontier = nxt
    known.add(full)
    subs = [Subgroup(parent=group, elements=s) for s in known]
    subs.sort(key=Subgroup.sort_key)
    return tuple(subs)


def _close_subset(seed: set[Perm]) -> frozenset[Perm]:
    """Close a nonempty subset of a finite group under multiplication."""
    closed = set(seed)
    frontier = list(seed)
    while frontier:
        x = frontier.pop()
        for y in tuple(closed):
            for z in (compose(x, y), compose(y, x)):
                if z not in closed:
                    closed.add(z)
                    frontier.append(z)
    return frozenset(closed)


# ---------------------------------------------------------------------------
# covers and closures


@dataclass(frozen=True)
class FiniteCover:
    """A degree-n cover: monodromy generators acting transitively on the fiber."""

    degree: int
    generators: tuple[Perm, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "generators",
            tuple(check_perm(g, self.degree) for g in self.generators),
        )
        if not self.generators:
            raise InvalidInputError("at least one generator required")
        if not self.is_transitive():
            raise DisconnectedCoverError(
                "generators do not act transitively on the fiber"
            )

    def is_transitive(self) -> bool:
        reached = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for g in self.generators:
                for j in (g[i], inverse(g)[i]):
                    if j not in reached:
                        reached.add(j)
                        frontier.append(j)
        return len(reached) == self.degree


@dataclass(frozen=True)
class GaloisClosure:
    """Galois closure data of a finite cover.

    orbit: the diagonal orbit of the base tuple, i.e. the monodromy group's
    elements written as tuples; deck_group: the commuting simply-transitive
    action on orbit indices; projections[i][j] = i-th coordinate of orbit
    element j (the n maps closure -> fiber).
    """

    base_cover: FiniteCover
    orbit: tuple[Perm, ...]
    monodromy_group: PermutationGroup
    deck_group: PermutationGroup
    projections: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def base_index(self) -> int:
        return self.orbit.index(identity(self.base_cover.degree))

    def deck_action_on_fiber(self, deck_element: Perm) -> Perm:
        """The fiber permutation induced by a deck element on the projections.

        A deck element sends projection p_i to p_{h(i)} where h is the
        monodromy element it right-multiplies by; h is read off the image
        of the base (identity) tuple.
        """
        if deck_element not in self.deck_group:
            raise InvalidInputError("not a deck group element")
        return self.orbit[deck_element[self.base_index]]

    def evaluation_map(self) -> dict[int, int]:
        """Projection index -> its value on the base tuple (a bijection)."""
        base = self.orbit[self.base_index]
        return {i: base[i] for i in range(self.base_cover.degree)}


def galois_closure(
    cover: FiniteCover,
    max_degree: int = MAX_DEGREE,
    max_group_order: int = MAX_GROUP_ORDER,
) -> GaloisClosure:
    """Construct the Galois closure of a transitive cover.

    The orbit of (0,..,n-1) under the diagonal action is in bijection with
    the generated monodromy group, so the closure is Galois with deck group
    of the same order.
    """
    n = cover.degree
    if n > max_degree:
        raise SizeLimitError(f"degree {n} exceeds limit {max_degree}")
    group = PermutationGroup.generate(cover.generators, n, limit=max_group_order)
    orbit = tuple(sorted(group.elements))
    index = {t: j for j, t in enumerate(orbit)}
    # Right multiplication by h permutes the orbit and commutes with the
    # (left) diagonal monodromy action.
    def right_mult(h: Perm) -> Perm:
        return tuple(index[compose(t, h)] for t in orbit)

    deck_gens = [right_mult(h) for h in cover.generators]
    deck_elements = frozenset(right_mult(h) for h in group.elements)
    deck = PermutationGroup(
        degree=len(orbit), generators=tuple(deck_gens), elements=deck_elements
    )
    if deck.order != group.order:
        raise TheoremViolationError("deck action is not simply transitive")
    projections = tuple(
        tuple(t[i] for t in orbit) for i in range(n)
    )
    return GaloisClosure(
        base_cover=cover,
        orbit=orbit,
        monodromy_group=group,
        deck_group=deck,
        projections=projections,
    )


# ---------------------------------------------------------------------------
# rational-point lemmas


def fixed_point_check(closure: GaloisClosure, H: Subgroup, I: Subgroup) -> bool:
    """Whether I lies in some conjugate of H inside the deck group.

    This is the criterion for the H-subcover's fiber to carry a rational
    point when I is the image of the Galois action.
    """
    deck = closure.deck_group
    if H.parent != deck or I.parent != deck:
        raise InvalidInputError("H and I must be subgroups of the deck group")
    return any(I.elements <= c for c in _distinct_conjugates(deck, H.elements))


@functools.lru_cache(maxsize=4096)
def _distinct_conjugates(
    group: PermutationGroup, subset: frozenset[Perm]
) -> tuple[frozenset[Perm], ...]:
    return tuple({group.conjugate_set(subset, g) for g in group.elements})


def isomorphic(a: Subgroup | PermutationGroup, b: Subgroup | PermutationGroup) -> bool:
    """Abstract-group isomorphism test for small groups.

    Cheap invariants first (order, element-order multiset, abelianness);
    a backtracking generator-mapping search settles the remaining cases.
    """
    if a.order != b.order:
        return False
    if a.element_order_multiset() != b.element_order_multiset():
        return False
    abelian_a, abelian_b = a.is_abelian(), b.is_abelian()
    if abelian_a != abelian_b:
        return False
    if abelian_a:
        # Finite abelian groups are determined by their element orders.
        return True
    return _generator_mapping_search(
        sorted(a.elements), sorted(b.elements)
    )


def _minimal_generators(elements: list[Perm]) -> list[Perm]:
    degree = len(elements[0])
    gens: list[Perm] = []
    span: set[Perm] = {identity(degree)}
    for x in sorted(elements, key=perm_order, reverse=True):
        if x in span:
            continue
        gens.append(x)
        span = set(_close_subset(set(gens)))
        if len(span) == len(elements):
            break
    return gens


def _generator_mapping_search(a_elements: list[Perm], b_elements: list[Perm]) -> bool:
    gens = _minimal_generators(a_elements)
    a_set = set(a_elements)
    b_by_order: dict[int, list[Perm]] = {}
    for y in b_elements:
        b_by_order.setdefault(perm_order(y), []).append(y)

    def extends_to_isomorphism(images: list[Perm]) -> bool:
        # Grow the map by closing words in the generators; reject on the
        # first multiplicative conflict.
        degree_a = len(a_elements[0])
        degree_b = len(b_elements[0])
        mapping = {identity(degree_a): identity(degree_b)}
        frontier = [identity(degree_a)]
        while frontier:
            x = frontier.pop()
            for g, h in zip(gens, images):
                xg = compose(x, g)
                yh = compose(mapping[x], h)
                if xg in mapping:
                    if mapping[xg] != yh:
                        return False
                else:
                    mapping[xg] = yh
                    frontier.append(xg)
        if len(mapping) != len(a_elements):
            return False
        return len(set(mapping.values())) == len(a_elements)

    candidates = [b_by_order.get(perm_order(g), []) for g in gens]
    return any(
        extends_to_isomorphism(list(images))
        for images in itertools.product(*candidates)
    )


def classify_point(
    closure: GaloisClosure,
    I: Subgroup,
    class_reps: list[Subgroup],
) -> int:
    """Index of the isomorphism class of I among class_reps, two ways.

    Route (a) matches I against the representatives directly. Route (b)
    replays the covering construction: I belongs to the cell of the
    subgroup H whose subcover has a rational point while no proper
    subgroup's does. The two routes must agree; disagreement raises.
    """
    deck = closure.deck_group
    if I.parent != deck or any(h.parent != deck for h in class_reps):
        raise InvalidInputError("inputs must be subgroups of the deck group")
    direct_matches = [i for i, rep in enumerate(class_reps) if isomorphic(I, rep)]
    if len(direct_matches) != 1:
        raise InvalidInputError(
            "class_reps must contain exactly one representative per "
            f"isomorphism class (got {len(direct_matches)} matches)"
        )
    direct = direct_matches[0]

    all_subs = enumerate_subgroups(deck)
    cells = []
    for H in all_subs:
        if not fixed_point_check(closure, H, I):
            continue
        proper_hit = any(
            G.elements < H.elements and fixed_point_check(closure, G, I)
            for G in all_subs
        )
        if not proper_hit:
            cells.append(H)
    if not cells:
        raise TheoremViolationError("no cell contains I")
    via_cover = {
        next(i for i, rep in enumerate(class_reps) if isomorphic(H, rep))
        for H in cells
    }
    if via_cover != {direct}:
        raise TheoremViolationError(
            f"covering construction gives classes {via_cover}, direct gives {direct}"
        )
    return direct
