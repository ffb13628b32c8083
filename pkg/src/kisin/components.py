"""Irreducible components, dimension, intersection graph, counting polynomial.

A factor of length l is a run of free columns, consecutive ones joined by a
single link; each link touches one row of each of its two endpoint columns.
Position k (1-indexed) presents a slope alternation when its two adjacent
links touch the same row of k.  A subset S of [1, l] is exprimable when
every open stretch between consecutive elements of S contains an alternation
(for loop factors the stretches are read cyclically, the loop link
participating in the alternation test at positions 1 and l).  Equivalently:
S meets each closed interval between consecutive alternations (extended to
the boundary in the linear case) at most once.

For exprimable S the positions outside S are forced: a free position pins
its neighbours through the adjacent links and the pins propagate until a
link is already satisfied, which happens exactly at alternation positions.
Maximal exprimable sets are fully pinned and index the irreducible
components; the component is a product of one projective line per element
of S.

Degenerate cases that only arise for abstract symbol bands (never from
valid arithmetic input): a loop with no alternation at all has a finite
solution set enumerated directly, and a "twisted" class (column identified
with its own row swap by the closing half-twist) contributes the two points
with equal-or-opposite coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .variety import Factor, ReducedDiagram, invert_chart


def alternations(factor: Factor) -> list[int]:
    """Positions (1-indexed) where the slope flips."""
    l = factor.length
    out = []
    for k in range(2, l):
        if factor.links[k - 2].right_row == factor.links[k - 1].left_row:
            out.append(k)
    if factor.loop is not None and l >= 1:
        if l == 1:
            # single position adjacent to the loop link on both sides
            if factor.loop.right_row == factor.loop.left_row:
                out.append(1)
        else:
            if factor.loop.right_row == factor.links[0].left_row:
                out.append(1)
            if factor.links[-1].right_row == factor.loop.left_row:
                out.append(l)
    return sorted(out)


def slope_intervals(factor: Factor) -> list[tuple[int, ...]]:
    """The closed stretches between consecutive alternations; exprimable sets
    meet each at most once.  Linear factors include the boundary stretches;
    loop factors use cyclic arcs (the wrap arc plays the extra-interval role)."""
    l = factor.length
    alt = alternations(factor)
    if factor.loop is None:
        cuts = [1] + alt + [l]
        return [tuple(range(cuts[m], cuts[m + 1] + 1)) for m in range(len(cuts) - 1)]
    if not alt:
        return [tuple(range(1, l + 1))]
    if len(alt) == 1:
        j = alt[0]
        return [tuple((j - 1 + k) % l + 1 for k in range(l))]
    arcs = []
    for m, j in enumerate(alt):
        j_next = alt[(m + 1) % len(alt)]
        arc = [j]
        k = j
        while k != j_next:
            k = k % l + 1
            arc.append(k)
        arcs.append(tuple(arc))
    return arcs


def is_exprimable(factor: Factor, s: frozenset[int] | set[int]) -> bool:
    """Every open stretch between consecutive elements of S contains an
    alternation (cyclically for loops; singletons in a loop need an
    alternation somewhere else on the cycle)."""
    l = factor.length
    alt = set(alternations(factor))
    elems = sorted(s)
    if not all(1 <= k <= l for k in elems):
        raise ValueError("positions must lie in [1, length]")
    if factor.loop is None:
        for a, b in zip(elems, elems[1:]):
            if not any(a < j < b for j in alt):
                return False
        return True
    if len(elems) <= 1:
        if not elems:
            return True
        return bool(alt - {elems[0]})
    for idx, a in enumerate(elems):
        b = elems[(idx + 1) % len(elems)]
        stretch = set()
        k = a
        while True:
            k = k % l + 1
            if k == b:
                break
            stretch.add(k)
        if not stretch & alt:
            return False
    return True


def _all_exprimable(factor: Factor) -> list[frozenset[int]]:
    l = factor.length
    out: list[frozenset[int]] = []

    def extend(prefix: list[int], start: int) -> None:
        out.append(frozenset(prefix))
        for k in range(start, l + 1):
            cand = prefix + [k]
            if is_exprimable(factor, cand):
                extend(cand, k + 1)

    extend([], 1)
    return out


def maximal_exprimables(factor: Factor) -> list[tuple[int, ...]]:
    """Inclusion-maximal exprimable subsets, sorted; empty for the
    alternation-free loop (its variety is a finite point set)."""
    if factor.twisted:
        return []
    if factor.loop is not None and not alternations(factor):
        return []
    sets = _all_exprimable(factor)
    universe = set(range(1, factor.length + 1))
    maximal = [
        s
        for s in sets
        if not any(is_exprimable(factor, s | {x}) for x in universe - s)
    ]
    return sorted(tuple(sorted(s)) for s in maximal)


def pin_map(factor: Factor, s) -> dict[int, int]:
    """Forced zero-rows of the positions outside S (propagation fixpoint).

    Returns {position: row forced to 0}.  For maximal exprimable S every
    position outside S is determined; inconsistency cannot occur.
    """
    l = factor.length
    free = set(s)
    links = [(k, k + 1, factor.links[k - 1]) for k in range(1, l)]
    if factor.loop is not None:
        links.append((l, 1, factor.loop))
    pins: dict[int, int] = {}

    def pin(pos: int, row: int) -> None:
        if pos in free:
            raise ValueError(f"set {sorted(free)} is not exprimable: position {pos} forced")
        if pins.setdefault(pos, row) != row:
            raise ValueError(f"set {sorted(free)} pins position {pos} both ways")

    changed = True
    while changed:
        changed = False
        rest = []
        for a, b, lk in links:
            va = None if a in free else pins.get(a)
            vb = None if b in free else pins.get(b)
            if va == lk.left_row or vb == lk.right_row:
                changed = True  # satisfied, drop
            elif a in free or va is not None:
                pin(b, lk.right_row)
                changed = True
            elif b in free or vb is not None:
                pin(a, lk.left_row)
                changed = True
            else:
                rest.append((a, b, lk))
        links = rest
    return pins


@dataclass(frozen=True)
class FactorComponent:
    """One irreducible component of a factor: free positions plus pins.

    Pins are zero-rows in the coordinates of the class representatives;
    special 0-dimensional pieces (twisted columns, alternation-free loops)
    carry explicit charts instead.
    """

    factor_pos: int
    indices: tuple[int, ...]
    pins: tuple[tuple[int, int], ...]  # (position, zero row)
    charts: tuple | None = None  # length-l chart tuple for special point pieces

    @property
    def dimension(self) -> int:
        return len(self.indices)

    def to_json(self) -> dict:
        return {
            "factor": self.factor_pos,
            "indices": list(self.indices),
            "pinned": {str(p): ("[0:1]" if r == 0 else "[1:0]") for p, r in self.pins},
            "special": [list(c) for c in self.charts] if self.charts else None,
            "dimension": self.dimension,
        }


def _special_point_components(factor: Factor, pos: int) -> list[FactorComponent]:
    if factor.twisted:
        return [
            FactorComponent(pos, (), (), charts=((1, 1),)),
            FactorComponent(pos, (), (), charts=((1, -1),)),
        ]
    # alternation-free loop: binary assignments making every link vanish
    l = factor.length
    links = [(k, k % l + 1, lk) for k, lk in enumerate(factor.links, start=1)]
    links.append((l, 1, factor.loop))
    comps = []
    for rows in product((0, 1), repeat=l):
        if all(rows[a - 1] == lk.left_row or rows[b - 1] == lk.right_row for a, b, lk in links):
            charts = tuple((0, 1) if r == 0 else (1, 0) for r in rows)
            comps.append(FactorComponent(pos, (), (), charts=charts))
    return comps


def factor_components(factor: Factor, pos: int = 0) -> list[FactorComponent]:
    if factor.twisted or (factor.loop is not None and not alternations(factor)):
        return _special_point_components(factor, pos)
    comps = []
    for s in maximal_exprimables(factor):
        pins = pin_map(factor, s)
        assert len(pins) + len(s) == factor.length, "maximal set left a position free"
        comps.append(FactorComponent(pos, s, tuple(sorted(pins.items()))))
    return comps


def component_points(comp: FactorComponent, factor: Factor, ell: int):
    """All F_ell points of the component, as tuples of charts per position."""
    charts_free = [(1, t) for t in range(ell)] + [(0, 1)]
    if comp.charts is not None:
        yield tuple((a % ell if a < 0 else a, b % ell) for a, b in comp.charts)
        return
    pins = dict(comp.pins)
    slots = []
    for k in range(1, factor.length + 1):
        if k in pins:
            slots.append([(0, 1) if pins[k] == 0 else (1, 0)])
        else:
            slots.append(charts_free)
    yield from product(*slots)


def components_meet(c1: FactorComponent, c2: FactorComponent) -> bool:
    """Exact intersection test: products intersect iff their pins agree
    wherever both pin (a position free on one side absorbs the other's pin)."""
    if c1.charts is not None or c2.charts is not None:
        if c1.charts is not None and c2.charts is not None:
            return c1.charts == c2.charts
        point, prod = (c1, c2) if c1.charts is not None else (c2, c1)
        pins = dict(prod.pins)
        for k, chart in enumerate(point.charts, start=1):
            if k in pins:
                want = (0, 1) if pins[k] == 0 else (1, 0)
                if chart != want:
                    return False
        return True
    p1, p2 = dict(c1.pins), dict(c2.pins)
    return all(p1[k] == p2[k] for k in p1.keys() & p2.keys())


def intersection_graph(comps: list[FactorComponent]) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i in range(len(comps))
        for j in range(i + 1, len(comps))
        if components_meet(comps[i], comps[j])
    ]


def factor_is_connected(factor: Factor) -> bool:
    comps = factor_components(factor)
    if len(comps) <= 1:
        return True
    edges = intersection_graph(comps)
    seen = {0}
    frontier = [0]
    adj: dict[int, list[int]] = {}
    for i, j in edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    while frontier:
        cur = frontier.pop()
        for nb in adj.get(cur, []):
            if nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    return len(seen) == len(comps)


@dataclass
class Components:
    """Component data of the whole variety (product over factors)."""

    diagram: ReducedDiagram
    per_factor: list[list[FactorComponent]]

    @property
    def dimension(self) -> int:
        if self.diagram.contradiction:
            return -1
        return sum(
            max(c.dimension for c in comps) if comps else 0 for comps in self.per_factor
        )

    @property
    def count(self) -> int:
        if self.diagram.contradiction:
            return 0
        n = 1
        for comps in self.per_factor:
            n *= max(len(comps), 1)
        return n

    def dimension_multisets(self) -> list[list[int]]:
        return [sorted(c.dimension for c in comps) for comps in self.per_factor]

    def is_connected(self) -> bool:
        return not self.diagram.contradiction and all(
            factor_is_connected(fa) for fa in self.diagram.factors
        )

    def global_points(self, ell: int):
        """All F_ell points of the variety, assembled from the components."""
        if self.diagram.contradiction:
            return set()
        factor_sets = []
        for fa, comps in zip(self.diagram.factors, self.per_factor):
            pts = set()
            for comp in comps:
                for assignment in component_points(comp, fa, ell):
                    pts.add(assignment)
            factor_sets.append((fa, sorted(pts)))
        out = set()
        for combo in product(*(pts for _fa, pts in factor_sets)):
            assignment = {}
            for (fa, _pts), factor_point in zip(factor_sets, combo):
                for cls, chart in zip(fa.classes, factor_point):
                    assignment[cls] = chart
            out.add(_lift_point(self.diagram, assignment, ell))
        return out

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "count": self.count,
            "per_factor": [[c.to_json() for c in comps] for comps in self.per_factor],
            "connected": self.is_connected(),
        }


def _lift_point(diagram: ReducedDiagram, assignment: dict, ell: int):
    point = []
    for c in range(diagram.f):
        r = diagram.root[c]
        if r in diagram.pinned:
            chart = (0, 1) if diagram.pinned[r] == 0 else (1, 0)
        else:
            chart = assignment[r]
        a, b = chart
        chart = (a % ell, b % ell)
        if chart[0] not in (0, 1):  # renormalize odd specials like (1, -1)
            chart = (1, chart[1] * pow(chart[0], -1, ell) % ell)
        if diagram.flip[c]:
            chart = invert_chart(chart, ell)
        point.append(chart)
    return tuple(point)


def components_of(diagram: ReducedDiagram) -> Components:
    per_factor = [
        factor_components(fa, pos) for pos, fa in enumerate(diagram.factors)
    ]
    return Components(diagram=diagram, per_factor=per_factor)


def count_polynomial(l: int) -> tuple[int, ...]:
    """Coefficients (by degree) of the component-count polynomial of the
    fully alternating factor: P_0 = 1, P_1 = X, P_2 = 2X,
    P_l = X (P_{l-2} + P_{l-3})."""
    if l < 0:
        raise ValueError("length must be >= 0")
    table = {0: (1,), 1: (0, 1), 2: (0, 2)}
    for m in range(3, l + 1):
        a, b = table[m - 2], table[m - 3]
        width = max(len(a), len(b))
        summed = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(width)]
        table[m] = tuple([0] + summed)
    return table[l]
