"""Equations of the variety, diagram reduction, factors, and the point oracle.

Coordinates x_0, ..., x_{2f-1} (indices mod 2f) pair into projective points
[x_i : x_{i+f}], one per column i in [0, f-1].  The equation families are:

    Vanish(j)         x_j = 0            for every symbol 0 at position j
    Cross(i)          x_i x_{i+f+1} = x_{i+1} x_{i+f}   (double link at gap i)
    ProductZero(a,b)  x_a x_b = 0        (lone diagonal link at a gap)

Reduction follows four rules: crosses fuse adjacent columns (at the seam gap
the identification reverses the rows, which is the half-twist), a coordinate
forced to 0 normalizes its partner to 1, links touching a known 0 are
dropped, and links touching a known 1 force their other end to 0.  The rules
iterate to a fixpoint; what survives is a set of pinned columns plus chains
of free columns ("allele sequences") joined by single links, possibly closed
into a loop when the band carries no 0 at all.

enumerate_points is the independent brute-force oracle over P^1(F_ell)^f;
it works directly on the equations and never consults the reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decorate import BOTTOM_UP, TOP_DOWN, Decoration
from .gene import SYM_0

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    code = "budget-exceeded"


# -- equations ---------------------------------------------------------------


@dataclass(frozen=True)
class Vanish:
    index: int

    def to_json(self) -> dict:
        return {"type": "vanish", "index": self.index}


@dataclass(frozen=True)
class Cross:
    gap: int

    def to_json(self) -> dict:
        return {"type": "cross", "gap": self.gap}


@dataclass(frozen=True)
class ProductZero:
    a: int
    b: int
    gap: int | None = None  # the gap whose lone link produced the equation

    def to_json(self) -> dict:
        return {"type": "product-zero", "a": self.a, "b": self.b, "gap": self.gap}


@dataclass(frozen=True)
class EquationSystem:
    f: int
    equations: tuple

    def to_json(self) -> dict:
        return {"f": self.f, "equations": [eq.to_json() for eq in self.equations]}


def build_equations(gene, decoration: Decoration) -> EquationSystem:
    """Read the equations off the decorated band."""
    f = gene.f
    n2 = 2 * f
    eqs: list = [Vanish(j) for j in range(n2) if gene.symbols[j] == SYM_0]
    for i in range(f):
        td = (TOP_DOWN, i) in decoration.diagonal_links
        bu = (BOTTOM_UP, i) in decoration.diagonal_links
        if td and bu:
            eqs.append(Cross(i))
        elif td:
            eqs.append(ProductZero(i, (i + f + 1) % n2, gap=i))
        elif bu:
            eqs.append(ProductZero((i + 1) % n2, (i + f) % n2, gap=i))
    return EquationSystem(f=f, equations=tuple(eqs))


# -- points ------------------------------------------------------------------
# A point is a tuple of f charts; a chart is (1, t) for [1:t] or (0, 1).


def chart_str(chart: tuple[int, int]) -> str:
    return f"[1:{chart[1]}]" if chart[0] == 1 else "[0:1]"


def point_str(point) -> list[str]:
    return [chart_str(c) for c in point]


def invert_chart(chart: tuple[int, int], ell: int) -> tuple[int, int]:
    """[u:v] -> [v:u], renormalized to the two standard charts."""
    a, b = chart
    if a % ell == 0:
        return (1, 0)
    if b % ell == 0:
        return (0, 1)
    return (1, a * pow(b, -1, ell) % ell)


def coordinate(point, j: int, f: int) -> int:
    """Value of x_j at the point (j taken mod 2f)."""
    j %= 2 * f
    return point[j % f][j // f]


def satisfies(eqsys: EquationSystem, point, ell: int) -> bool:
    f = eqsys.f
    for eq in eqsys.equations:
        if isinstance(eq, Vanish):
            if coordinate(point, eq.index, f) % ell:
                return False
        elif isinstance(eq, ProductZero):
            if coordinate(point, eq.a, f) * coordinate(point, eq.b, f) % ell:
                return False
        else:
            i = eq.gap
            lhs = coordinate(point, i, f) * coordinate(point, i + f + 1, f)
            rhs = coordinate(point, i + 1, f) * coordinate(point, i + f, f)
            if (lhs - rhs) % ell:
                return False
    return True


def all_points(f: int, ell: int):
    """All of P^1(F_ell)^f in canonical (code lexicographic) order."""
    from itertools import product

    charts = [(1, t) for t in range(ell)] + [(0, 1)]
    return product(charts, repeat=f)


def _kernel_form(eqsys: EquationSystem):
    f = eqsys.f

    def slot(j: int) -> tuple[int, int]:
        j %= 2 * f
        return (j % f, j // f)

    vanish, prodzero, cross = [], [], []
    for eq in eqsys.equations:
        if isinstance(eq, Vanish):
            vanish.extend(slot(eq.index))
        elif isinstance(eq, ProductZero):
            prodzero.extend(slot(eq.a) + slot(eq.b))
        else:
            i = eq.gap
            cross.extend(slot(i) + slot(i + f + 1) + slot(i + 1) + slot(i + f))
    return vanish, prodzero, cross


def enumerate_points(
    eqsys: EquationSystem, field_order: int, cap: int = DEFAULT_BUDGET
) -> list:
    """Exact solution set over P^1(F_ell)^f, as a canonically ordered list.

    Pure brute force (the testing oracle); dispatches to the compiled kernel
    when available.  Raises BudgetExceeded when (ell+1)^f > cap.
    """
    from . import kernel

    f, ell = eqsys.f, field_order
    if (ell + 1) ** f > cap:
        raise BudgetExceeded(f"(ell+1)^f = {(ell + 1) ** f} exceeds cap {cap}")
    vanish, prodzero, cross = _kernel_form(eqsys)
    codes = kernel.solve_points(f, ell, vanish, prodzero, cross)
    charts = [(1, t) for t in range(ell)] + [(0, 1)]
    return [tuple(charts[c] for c in code) for code in codes]


# -- reduction ---------------------------------------------------------------


class _SignedUF:
    """Union-find over columns with a Z/2 flip on each edge (row exchange)."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rel = [0] * n  # flip relative to parent
        self.twisted: set[int] = set()

    def find(self, x: int) -> tuple[int, int]:
        if self.parent[x] == x:
            return x, 0
        root, flip = self.find(self.parent[x])
        self.parent[x] = root
        self.rel[x] ^= flip
        return root, self.rel[x]

    def union(self, a: int, b: int, rel: int) -> None:
        ra, fa = self.find(a)
        rb, fb = self.find(b)
        if ra == rb:
            if fa ^ fb != rel:
                self.twisted.add(ra)
            return
        self.parent[rb] = ra
        self.rel[rb] = fa ^ fb ^ rel


@dataclass(frozen=True)
class FactorLink:
    left_row: int  # row (in the left class's own coordinates) the link touches
    right_row: int


@dataclass(frozen=True)
class Factor:
    """A maximal run of free fused columns joined by single links."""

    classes: tuple[int, ...]  # class representatives, band order
    provenance: tuple[tuple[int, ...], ...]  # original columns behind each class
    links: tuple[FactorLink, ...]  # between positions k, k+1 (len = length-1)
    loop: FactorLink | None = None  # extra link joining the last and first positions
    twisted: bool = False  # class identified with its own row swap

    @property
    def length(self) -> int:
        return len(self.classes)

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "columns": [list(cols) for cols in self.provenance],
            "links": [[lk.left_row, lk.right_row] for lk in self.links],
            "loop": [self.loop.left_row, self.loop.right_row] if self.loop else None,
            "twisted": self.twisted,
        }


@dataclass
class ReducedDiagram:
    f: int
    root: tuple[int, ...]  # per column: class representative
    flip: tuple[int, ...]  # per column: row exchange relative to the representative
    pinned: dict  # class -> row (in class coordinates) forced to 0
    contradiction: bool
    factors: tuple[Factor, ...] = field(default_factory=tuple)

    def column_value(self, c: int) -> tuple[int, int] | None:
        """Pinned chart of column c, or None when the column is free."""
        r = self.root[c]
        if r not in self.pinned:
            return None
        zero_row = self.pinned[r] ^ self.flip[c]
        return (0, 1) if zero_row == 0 else (1, 0)

    def free_classes(self) -> list[int]:
        seen, out = set(), []
        for c in range(self.f):
            r = self.root[c]
            if r not in self.pinned and r not in seen:
                seen.add(r)
                out.append(r)
        return out

    def fully_pinned(self) -> bool:
        return not self.contradiction and all(
            self.root[c] in self.pinned for c in range(self.f)
        )

    def to_json(self) -> dict:
        return {
            "contradiction": self.contradiction,
            "fusion_classes": [
                sorted(c for c in range(self.f) if self.root[c] == r)
                for r in sorted(set(self.root))
            ],
            "pinned_columns": {
                str(c): chart_str(self.column_value(c))
                for c in range(self.f)
                if self.column_value(c) is not None
            },
            "factors": [fa.to_json() for fa in self.factors],
        }


def reduce_diagram(eqsys: EquationSystem, gene, decoration: Decoration) -> ReducedDiagram:
    """Fixpoint of the four reduction rules.

    Rule i (fuse crosses) runs once globally; rules ii-iv run as a worklist.
    Termination: every step either drops a link or pins a previously free
    coordinate, both finite resources.
    """
    f = eqsys.f
    uf = _SignedUF(f)
    for eq in eqsys.equations:
        if isinstance(eq, Cross):
            uf.union(eq.gap, (eq.gap + 1) % f, 1 if eq.gap == f - 1 else 0)
    uf.twisted = {uf.find(t)[0] for t in uf.twisted}

    pinned: dict[int, int] = {}
    state = {"contradiction": False}

    def slot_of(j: int) -> tuple[int, int]:
        # coordinate x_j -> (class, row in class coordinates)
        j %= 2 * f
        root, flip = uf.find(j % f)
        return root, (j // f) ^ flip

    def pin(cls: int, zero_row: int) -> None:
        if cls in uf.twisted:
            state["contradiction"] = True  # a twisted column has no zero coordinate
            return
        if cls in pinned:
            if pinned[cls] != zero_row:
                state["contradiction"] = True
        else:
            pinned[cls] = zero_row

    # links as (gap, left slot, right slot); left = class of column gap
    links: list[tuple[int, tuple[int, int], tuple[int, int]]] = []
    for eq in eqsys.equations:
        if isinstance(eq, Vanish):
            pin(*slot_of(eq.index))
        elif isinstance(eq, ProductZero):
            if eq.gap is None:
                raise ValueError("reduce_diagram needs gap-tagged product equations")
            sa, sb = slot_of(eq.a), slot_of(eq.b)
            left, right = (sa, sb) if eq.a % f == eq.gap else (sb, sa)
            links.append((eq.gap, left, right))

    def slot_value(slot: tuple[int, int]) -> int | None:
        cls, row = slot
        if cls not in pinned:
            return None
        return 0 if pinned[cls] == row else 1

    changed = True
    while changed and not state["contradiction"]:
        changed = False
        remaining = []
        for gap, left, right in links:
            left = (uf.find(left[0])[0], left[1])
            right = (uf.find(right[0])[0], right[1])
            if left[0] == right[0]:
                # same class twice: the product is a square, so the slot is 0
                assert left[1] == right[1], "link joining partner rows of one class"
                pin(left[0], left[1])
                changed = True
                continue
            va, vb = slot_value(left), slot_value(right)
            if va == 0 or vb == 0:
                changed = True
            elif va == 1:
                pin(*right)
                changed = True
            elif vb == 1:
                pin(*left)
                changed = True
            else:
                remaining.append((gap, left, right))
        links = remaining

    diagram = ReducedDiagram(
        f=f,
        root=tuple(uf.find(c)[0] for c in range(f)),
        flip=tuple(uf.find(c)[1] for c in range(f)),
        pinned=pinned,
        contradiction=state["contradiction"],
    )
    if not state["contradiction"]:
        diagram.factors = _split_factors(diagram, links, uf.twisted)
    return diagram


def _split_factors(diagram: ReducedDiagram, links, twisted: set[int]) -> tuple[Factor, ...]:
    f = diagram.f
    cols_of: dict[int, list[int]] = {}
    for c in range(f):
        cols_of.setdefault(diagram.root[c], []).append(c)
    free = [r for r in diagram.free_classes() if r not in twisted]

    nxt: dict[int, tuple[int, FactorLink]] = {}
    prv: dict[int, int] = {}
    for _gap, left, right in links:
        lk = FactorLink(left_row=left[1], right_row=right[1])
        nxt[left[0]] = (right[0], lk)
        prv[right[0]] = left[0]

    factors = []
    visited: set[int] = set()
    # path factors first: start wherever no link arrives
    for start in free:
        if start in visited or start in prv:
            continue
        classes, seq_links = [start], []
        visited.add(start)
        cur = start
        while cur in nxt:
            cur, lk = nxt[cur]
            classes.append(cur)
            seq_links.append(lk)
            visited.add(cur)
        factors.append(_make_factor(classes, seq_links, None, cols_of))
    # whatever is left is a single cycle (loop factor)
    remaining = [r for r in free if r not in visited]
    if remaining:
        start = min(remaining, key=lambda r: min(cols_of[r]))
        classes, seq_links = [start], []
        visited.add(start)
        cur = start
        while True:
            cur, lk = nxt[cur]
            if cur == start:
                loop_link = FactorLink(left_row=lk.left_row, right_row=lk.right_row)
                break
            classes.append(cur)
            seq_links.append(lk)
            visited.add(cur)
        factors.append(_make_factor(classes, seq_links, loop_link, cols_of))
    for r in sorted(twisted, key=lambda r: min(cols_of[r])):
        factors.append(
            Factor(
                classes=(r,),
                provenance=(tuple(cols_of[r]),),
                links=(),
                loop=None,
                twisted=True,
            )
        )
    factors.sort(key=lambda fa: min(min(cols) for cols in fa.provenance))
    return tuple(factors)


def _make_factor(classes, seq_links, loop_link, cols_of) -> Factor:
    return Factor(
        classes=tuple(classes),
        provenance=tuple(tuple(cols_of[r]) for r in classes),
        links=tuple(seq_links),
        loop=loop_link,
    )


def is_empty(gene) -> bool:
    """The variety is empty iff some column carries the couple (0, 0)."""
    return any(c == (SYM_0, SYM_0) for c in gene.couples())


def point_from_classes(diagram: ReducedDiagram, assignment: dict, ell: int):
    """Lift a per-class chart assignment (plus the pinned classes) to a point."""
    point = []
    for c in range(diagram.f):
        r = diagram.root[c]
        if r in diagram.pinned:
            chart = (0, 1) if diagram.pinned[r] == 0 else (1, 0)
        else:
            chart = assignment[r]
        if diagram.flip[c]:
            chart = invert_chart(chart, ell)
        point.append(chart)
    return tuple(point)


def witness_point(diagram: ReducedDiagram, ell: int = 5):
    """A point of the variety obtained by specifying each free class to a
    constant boundary value (0/1 specification walk); None on contradiction."""
    if diagram.contradiction:
        return None
    assignment = {}
    for fa in diagram.factors:
        if fa.twisted:
            assignment[fa.classes[0]] = (1, 1)
            continue
        chart = (0, 1)
        if fa.loop is not None and fa.loop.left_row == 1:
            # a loop link on the bottom row: make the bottom coordinates vanish
            chart = (1, 0)
        for r in fa.classes:
            assignment[r] = chart
    return point_from_classes(diagram, assignment, ell)
