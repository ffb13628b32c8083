"""Dominance, diagonal and horizontal links, and the text rendering.

Columns are indexed by i in Z/f; column i holds the couple (X_i, X_{i+f}).
A column is self-determining when its couple names a single letter (any
couple containing exactly one of A, B together with A/B/AB/0 as listed
below); the remaining columns inherit the letter of column i+1, sweeping
downward from a self-determining start column.  Links live on gaps
(i, i+1 mod f): a diagonal link leaves a symbol equal to the dominant letter
when the dominant letter is the same on both sides, a horizontal link when
it alternates.  Coordinate indices are always taken mod 2f, which encodes
the half-twist of the band (column f-1 connects to column 0 with the rows
exchanged).
"""

from __future__ import annotations

from dataclasses import dataclass

from .gene import SYM_0, SYM_A, SYM_AB, SYM_B

TOP_DOWN = "top-down"
BOTTOM_UP = "bottom-up"
H_TOP = "top"
H_BOTTOM = "bottom"

_A_SELF = {
    (SYM_A, SYM_AB),
    (SYM_AB, SYM_A),
    (SYM_A, SYM_A),
    (SYM_A, SYM_0),
    (SYM_0, SYM_A),
}
_B_SELF = {
    (SYM_B, SYM_AB),
    (SYM_AB, SYM_B),
    (SYM_B, SYM_B),
    (SYM_B, SYM_0),
    (SYM_0, SYM_B),
}


@dataclass(frozen=True)
class Decoration:
    dominance: tuple[str, ...] | None  # length f, entries "A"/"B"; None when no dominant letter
    diagonal_links: frozenset[tuple[str, int]]  # (TOP_DOWN | BOTTOM_UP, gap)
    horizontal_links: frozenset[tuple[str, int]]  # (H_TOP | H_BOTTOM, gap)

    def is_cross(self, gap: int) -> bool:
        return (TOP_DOWN, gap) in self.diagonal_links and (
            BOTTOM_UP,
            gap,
        ) in self.diagonal_links

    def to_json(self) -> dict:
        return {
            "dominance": list(self.dominance) if self.dominance else None,
            "diagonal_links": [
                {"kind": k, "column": c} for k, c in sorted(self.diagonal_links)
            ],
            "horizontal_links": [
                {"row": r, "column": c} for r, c in sorted(self.horizontal_links)
            ],
        }


def _self_letter(couple: tuple[str, str]) -> str | None:
    if couple in _A_SELF:
        return SYM_A
    if couple in _B_SELF:
        return SYM_B
    return None


def dominance_from(symbols: tuple[str, ...], f: int, i0: int) -> tuple[str, ...]:
    """Run the assignment sweep i0, i0-1, ..., 0, f-1, ..., i0+1."""
    couples = [(symbols[i], symbols[(i + f) % (2 * f)]) for i in range(f)]
    assert _self_letter(couples[i0]) is not None
    dom: dict[int, str] = {}
    order = [(i0 - k) % f for k in range(f)]
    for i in order:
        letter = _self_letter(couples[i])
        dom[i] = letter if letter is not None else dom[(i + 1) % f]
    return tuple(dom[i] for i in range(f))


def assign_dominance(symbols: tuple[str, ...], f: int) -> tuple[str, ...] | None:
    """Dominant letter per column, or None when no column self-determines
    (the gene then contains a (0,0) couple or is the odd alternating 0/AB band)."""
    starts = [
        i
        for i in range(f)
        if _self_letter((symbols[i], symbols[(i + f) % (2 * f)])) is not None
    ]
    if not starts:
        return None
    return dominance_from(symbols, f, starts[0])


def compute_links(
    symbols: tuple[str, ...], f: int, dominance: tuple[str, ...] | None
) -> Decoration:
    diagonal: set[tuple[str, int]] = set()
    horizontal: set[tuple[str, int]] = set()
    n2 = 2 * f
    if dominance is not None:
        for i in range(f):
            y, y_next = dominance[i], dominance[(i + 1) % f]
            if y == y_next:
                if symbols[i] == y:
                    diagonal.add((TOP_DOWN, i))
                if symbols[(i + f) % n2] == y:
                    diagonal.add((BOTTOM_UP, i))
            else:
                if symbols[i] == y:
                    horizontal.add((H_TOP, i))
                if symbols[(i + f) % n2] == y:
                    horizontal.add((H_BOTTOM, i))
    return Decoration(
        dominance=dominance,
        diagonal_links=frozenset(diagonal),
        horizontal_links=frozenset(horizontal),
    )


def decorate(gene) -> Decoration:
    """Dominance plus links for a Gene or AbstractGene."""
    return compute_links(gene.symbols, gene.f, assign_dominance(gene.symbols, gene.f))


_WIDTH = 4


def render_moebius(gene, decoration: Decoration) -> str:
    """Three-line band picture: top symbols, gap glyphs, bottom symbols.

    Gap glyphs: "\\" lone top-down, "/" lone bottom-up, "X" cross; "-" on a
    symbol row marks a horizontal link.  The trailing gap is the seam and is
    marked "~" on both symbol rows (the band closes there with a half-twist).
    """
    f = gene.f
    symbols = gene.symbols
    top, mid, bottom = [], [], []
    for i in range(f):
        top.append(symbols[i].ljust(_WIDTH - 1))
        bottom.append(symbols[i + f].ljust(_WIDTH - 1))
        td = (TOP_DOWN, i) in decoration.diagonal_links
        bu = (BOTTOM_UP, i) in decoration.diagonal_links
        glyph = "X" if td and bu else "\\" if td else "/" if bu else " "
        mid.append(" " * (_WIDTH - 1) + glyph)
        top.append("-" if (H_TOP, i) in decoration.horizontal_links else " ")
        bottom.append("-" if (H_BOTTOM, i) in decoration.horizontal_links else " ")
    # seam: the last gap closes the band with a half-twist
    top.append("~")
    mid.append("~")
    bottom.append("~")
    lines = ["".join(top).rstrip(), "".join(mid).rstrip(), "".join(bottom).rstrip()]
    return "\n".join(line if line else "" for line in lines) + "\n"
