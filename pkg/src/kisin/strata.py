"""Genre of a point, the stratification census, and ring descriptors.

Each column i in [0, f-1] of a variety point carries a fine genre in
{I_eta, I_eta_prime, II} read off the decorated band at the gap (i, i+1):
a column whose couple is {AB, 0} is always II; when the same letter
dominates on both sides of the gap the verdict follows the diagonal link
and the vanishing pattern of its two coordinates; when dominance
alternates it follows the horizontal links.  Exchanging the roles of the
two letters exchanges I_eta and I_eta_prime.  The coarse genre collapses
both I's to I; coarse vectors stratify the variety, ordered componentwise
by I <= II (closures grow upward).

Ring descriptors translate coarse vectors into deformation-space shapes:
each I contributes a one-variable formal ball, each II a two-variable
annulus of depth m (relation UV + p^m), depth 1 for point fibers.  The
chain-shaped candidate (l balls plus one annulus of depth l+1) is
conjectural and labeled as such.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .decorate import BOTTOM_UP, H_BOTTOM, H_TOP, TOP_DOWN, Decoration
from .gene import SYM_0, SYM_A, SYM_AB, SYM_B
from .variety import (
    EquationSystem,
    Factor,
    coordinate,
    enumerate_points,
    invert_chart,
    satisfies,
)
from . import components as comp_mod

FINE_I_ETA = "I_eta"
FINE_I_ETA_PRIME = "I_eta_prime"
GENRE_I = "I"
GENRE_II = "II"


class PointNotOnVariety(ValueError):
    code = "point-not-on-variety"


class NotAChain(ValueError):
    code = "not-a-chain"


def coarse(fine: str) -> str:
    return GENRE_II if fine == GENRE_II else GENRE_I


def coarse_vector(fine_vec) -> tuple[str, ...]:
    return tuple(coarse(g) for g in fine_vec)


def genre_le(g1, g2) -> bool:
    """Componentwise closure order: I <= II."""
    return all(a == b or (a == GENRE_I and b == GENRE_II) for a, b in zip(g1, g2))


def _swap(fine: str, dominant: str) -> str:
    if dominant == SYM_A:
        return fine
    if fine == FINE_I_ETA:
        return FINE_I_ETA_PRIME
    if fine == FINE_I_ETA_PRIME:
        return FINE_I_ETA
    return fine


def genre_of_point(
    gene, decoration: Decoration, point, ell: int, eqsys: EquationSystem | None = None
) -> tuple[str, ...]:
    """Fine genre vector of a variety point (combinatorial case analysis)."""
    from .variety import build_equations

    f = gene.f
    if eqsys is None:
        eqsys = build_equations(gene, decoration)
    if not satisfies(eqsys, point, ell):
        raise PointNotOnVariety(f"point {point} does not satisfy the equations")

    def x(j: int) -> int:
        return coordinate(point, j, f) % ell

    out = []
    for i in range(f):
        couple = {gene.symbols[i], gene.symbols[(i + f) % (2 * f)]}
        if couple == {SYM_AB, SYM_0}:
            out.append(GENRE_II)
            continue
        dom = decoration.dominance
        assert dom is not None, "a dominant letter exists once {AB,0} columns are excluded"
        y, y_next = dom[i], dom[(i + 1) % f]
        if y == y_next:
            td = (TOP_DOWN, i) in decoration.diagonal_links
            bu = (BOTTOM_UP, i) in decoration.diagonal_links
            if td and bu:
                # cross: the eta-side numerator corner is a unit times u^nu
                fine = FINE_I_ETA
            elif not td and not bu:
                fine = GENRE_II
            elif td:
                if x(i) == 0 and x(i + f + 1) == 0:
                    fine = GENRE_II
                elif x(i + f + 1) != 0:
                    fine = FINE_I_ETA
                else:
                    fine = FINE_I_ETA_PRIME
            else:
                if x(i + f) == 0 and x(i + 1) == 0:
                    fine = GENRE_II
                elif x(i + 1) != 0:
                    fine = FINE_I_ETA
                else:
                    fine = FINE_I_ETA_PRIME
        else:
            top = (H_TOP, i) in decoration.horizontal_links
            bottom = (H_BOTTOM, i) in decoration.horizontal_links
            if top and bottom:
                equal = (x(i) * x(i + 1) - x(i + f + 1) * x(i + f)) % ell == 0
                fine = GENRE_II if equal else FINE_I_ETA_PRIME
            elif top:
                fine = GENRE_II if x(i) * x(i + 1) % ell == 0 else FINE_I_ETA_PRIME
            elif bottom:
                fine = GENRE_II if x(i + f) * x(i + f + 1) % ell == 0 else FINE_I_ETA_PRIME
            else:
                raise AssertionError("alternating gap without horizontal link")
        out.append(_swap(fine, y))
    return tuple(out)


def slot_point(point, j: int, f: int, ell: int) -> tuple[int, int]:
    """The projective point [x_j : x_{j+f}]; beyond j = f-1 this revisits the
    columns with the rows exchanged (the half-twist)."""
    j %= 2 * f
    if j < f:
        return point[j]
    return invert_chart(point[j - f], ell)


def delta_genre(point, i: int, f: int, ell: int) -> str:
    """Coarse genre at gap i via the inversion formula: II exactly when the
    column point equals the inverse of the next one."""
    a = slot_point(point, i, f, ell)
    b = invert_chart(slot_point(point, i + 1, f, ell), ell)
    return GENRE_II if (a[0] * b[1] - a[1] * b[0]) % ell == 0 else GENRE_I


@dataclass(frozen=True)
class RingDescriptor:
    """Ball/annulus factorization: balls are one-variable formal disks, each
    annulus of depth m is a two-variable factor with relation UV + p^m."""

    balls: int
    annuli: tuple[int, ...]
    status: str = "fiber"

    @property
    def columns(self) -> int:
        return self.balls + len(self.annuli)

    def to_json(self) -> dict:
        return {
            "balls": self.balls,
            "annuli": list(self.annuli),
            "status": self.status,
        }


def ring_descriptor(coarse_vec) -> RingDescriptor:
    balls = sum(1 for g in coarse_vec if g == GENRE_I)
    annuli = tuple(1 for g in coarse_vec if g == GENRE_II)
    return RingDescriptor(balls=balls, annuli=annuli)


def fiber_descriptor(gene, decoration: Decoration, point, ell: int) -> RingDescriptor:
    """Descriptor of the specialization fiber over a variety point."""
    return ring_descriptor(coarse_vector(genre_of_point(gene, decoration, point, ell)))


def chain_candidate(factor: Factor) -> RingDescriptor:
    """Conjectural descriptor of the deformation factor of a chain: l balls
    plus one annulus of depth l+1.  Raises NotAChain unless the factor is a
    plain chain (no slope alternation, no loop, not twisted)."""
    if factor.twisted or factor.loop is not None or comp_mod.alternations(factor):
        raise NotAChain("factor is not a chain of projective lines")
    return RingDescriptor(
        balls=factor.length, annuli=(factor.length + 1,), status="candidate"
    )


def strata_census(
    gene,
    decoration: Decoration,
    eqsys: EquationSystem,
    field_order: int,
    cap: int | None = None,
    components=None,
) -> dict:
    """Census of coarse strata over F_ell, with per-point detail.

    Returns {"census": [{"genre", "count"}...], "points": [...]} where each
    point record carries its fine and coarse vectors and the component ids
    (factor.component) containing it.
    """
    from .variety import DEFAULT_BUDGET

    points = enumerate_points(eqsys, field_order, cap if cap is not None else DEFAULT_BUDGET)
    counter: Counter = Counter()
    detail = []
    for pt in points:
        fine = genre_of_point(gene, decoration, pt, field_order, eqsys)
        cvec = coarse_vector(fine)
        counter[cvec] += 1
        rec = {
            "point": [f"[1:{b}]" if a == 1 else "[0:1]" for a, b in pt],
            "fine": list(fine),
            "coarse": ",".join(cvec),
        }
        if components is not None:
            rec["components"] = _component_membership(components, pt, field_order)
        detail.append(rec)
    census = [
        {"genre": ",".join(genre), "count": count}
        for genre, count in sorted(counter.items())
    ]
    return {"census": census, "points": detail}


def _component_membership(components, point, ell: int) -> list[str]:
    """Ids "factor.component" of the irreducible components through a point."""
    diagram = components.diagram
    class_chart: dict[int, tuple[int, int]] = {}
    for c in range(diagram.f):
        r = diagram.root[c]
        if r in diagram.pinned:
            continue
        chart = point[c]
        if diagram.flip[c]:
            chart = invert_chart(chart, ell)
        class_chart[r] = chart

    def comp_contains(fa: Factor, comp) -> bool:
        charts = [class_chart[r] for r in fa.classes]
        if comp.charts is not None:
            want = [((a % ell), (b % ell)) for a, b in comp.charts]
            want = [
                c if c[0] in (0, 1) else (1, c[1] * pow(c[0], -1, ell) % ell)
                for c in want
            ]
            return charts == want
        pins = dict(comp.pins)
        for k, chart in enumerate(charts, start=1):
            if k in pins and chart != ((0, 1) if pins[k] == 0 else (1, 0)):
                return False
        return True

    ids = []
    for fpos, (fa, comps) in enumerate(zip(diagram.factors, components.per_factor)):
        for cpos, comp in enumerate(comps):
            if comp_contains(fa, comp):
                ids.append(f"{fpos}.{cpos}")
    return sorted(ids)
