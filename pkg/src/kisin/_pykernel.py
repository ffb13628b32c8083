"""Pure-Python fallback for the compiled search kernel (same contract)."""

from __future__ import annotations

from itertools import product


def _slot(code: int, row: int, ell: int) -> int:
    if row == 0:
        return 1 if code < ell else 0
    return code if code < ell else 1


def solve_points(f: int, ell: int, vanish, prodzero, cross):
    van = [(vanish[2 * k], vanish[2 * k + 1]) for k in range(len(vanish) // 2)]
    prod = [tuple(prodzero[4 * k : 4 * k + 4]) for k in range(len(prodzero) // 4)]
    crs = [tuple(cross[8 * k : 8 * k + 8]) for k in range(len(cross) // 8)]
    out = []
    for codes in product(range(ell + 1), repeat=f):
        if any(_slot(codes[c], r, ell) for c, r in van):
            continue
        if any(
            _slot(codes[c1], r1, ell) * _slot(codes[c2], r2, ell) % ell
            for c1, r1, c2, r2 in prod
        ):
            continue
        if any(
            (
                _slot(codes[a], ra, ell) * _slot(codes[b], rb, ell)
                - _slot(codes[c], rc, ell) * _slot(codes[d], rd, ell)
            )
            % ell
            for a, ra, b, rb, c, rc, d, rd in crs
        ):
            continue
        out.append(codes)
    return out
