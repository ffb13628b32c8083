"""First-principles lattice oracle: passage and Frobenius-numerator matrices.

Everything here is driven by the alpha/alpha' exponents and the candidate
point only — never by symbols, dominance or links — so it cross-validates
the combinatorial route end to end.

Per column i the passage matrix has the shape

    P(i) = [ u^{alpha_i} a_i        u^{alpha'_i} b'_i      ]
           [ u^{alpha_{i+f}} b_i    u^{alpha'_{i+f}} a'_i  ]

with scalar entries a, b, a', b'.  Unbalanced columns (one of the two
exponent sums alpha_i + alpha'_{i+f}, alpha'_i + alpha_{i+f} exceeds nu)
take a rigid diagonal/antidiagonal form; balanced columns read one column
of scalars off the point's chart representative — (a_i, b_i) = (x_i, x_{i+f})
when alpha_i + alpha_{i+f} < nu, (a'_i, b'_i) = (x_i, x_{i+f}) otherwise —
and complete the other column so the determinant is a unit times u^nu (the
completion never affects the lattice, which is asserted by trying two of
them).

The Frobenius numerator is K(i) = adj(P(i+1)) G(i) phi(P(i)) where phi
multiplies exponents by p (prime-subfield coefficients are Frobenius-fixed)
and G(i) is diag(u^{h_i}, u^{h_{i+f}}) away from the seam and the
theta-twisted antidiagonal at i = f-1.  Stability of the lattice under
Frobenius says exactly that every monomial of K(i) in degrees < nu
vanishes; the genre reads off which diagonal corner of K(i) has valuation
exactly nu.  Division by det P(i+1) is avoided throughout: all conditions
are stated on K with the nu offset.
"""

from __future__ import annotations

from .gene import Gene
from .strata import FINE_I_ETA, FINE_I_ETA_PRIME, GENRE_II, PointNotOnVariety
from .variety import coordinate

Poly = dict  # exponent -> nonzero coefficient mod ell
Matrix = tuple  # 2x2 nested tuples of Poly


class NotIntegral(ValueError):
    code = "not-integral"


def p_mono(exp: int, coeff: int, ell: int) -> Poly:
    coeff %= ell
    return {exp: coeff} if coeff else {}


def p_add(a: Poly, b: Poly, ell: int) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = (out.get(e, 0) + c) % ell
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def p_mul(a: Poly, b: Poly, ell: int) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = (out.get(e, 0) + ca * cb) % ell
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def p_neg(a: Poly, ell: int) -> Poly:
    return {e: (-c) % ell for e, c in a.items()}


def p_val(a: Poly) -> int | None:
    return min(a) if a else None


def p_phi(a: Poly, p: int) -> Poly:
    return {e * p: c for e, c in a.items()}


def p_str(a: Poly) -> str:
    if not a:
        return "0"
    return " + ".join(f"{c}*u^{e}" for e, c in sorted(a.items()))


def m_mul(a: Matrix, b: Matrix, ell: int) -> Matrix:
    return tuple(
        tuple(
            p_add(p_mul(a[r][0], b[0][s], ell), p_mul(a[r][1], b[1][s], ell), ell)
            for s in range(2)
        )
        for r in range(2)
    )


def m_adj(a: Matrix, ell: int) -> Matrix:
    return (
        (a[1][1], p_neg(a[0][1], ell)),
        (p_neg(a[1][0], ell), a[0][0]),
    )


def m_det(a: Matrix, ell: int) -> Poly:
    return p_add(
        p_mul(a[0][0], a[1][1], ell), p_neg(p_mul(a[0][1], a[1][0], ell), ell), ell
    )


def m_phi(a: Matrix, p: int) -> Matrix:
    return tuple(tuple(p_phi(entry, p) for entry in row) for row in a)


def m_str(a: Matrix) -> str:
    return "[[{}, {}], [{}, {}]]".format(
        p_str(a[0][0]), p_str(a[0][1]), p_str(a[1][0]), p_str(a[1][1])
    )


def _scalars(gene: Gene, point, i: int, ell: int, completion: int):
    """(a, b, b', a') scalar entries of P(i), raising when the point's chart
    contradicts a rigid column."""
    f, nu = gene.f, gene.params.nu
    al, alp = gene.alpha, gene.alpha_prime
    n2 = 2 * f
    ai, aif = al[i], al[(i + f) % n2]
    api, apif = alp[i], alp[(i + f) % n2]
    xi, xif = point[i][0] % ell, point[i][1] % ell
    if ai + apif > nu:  # x_i = 0 forced; eta-eigenvector sits on e_1
        if xi:
            raise PointNotOnVariety(f"column {i}: coordinate x_{i} must vanish")
        return (0, 1, 1, 0)
    if api + aif > nu:  # x_{i+f} = 0 forced
        if xif:
            raise PointNotOnVariety(f"column {i}: coordinate x_{i + f} must vanish")
        return (1, 0, 0, 1)
    delta = nu - ai - aif
    assert delta != 0, "balanced column with equal exponent sums"
    if delta > 0:
        a, b = xi, xif
        bp, ap = (0, 1) if xi else (1, 0)
        if completion:
            bp, ap = (bp + a) % ell, (ap + b) % ell
        return (a, b, bp, ap)
    ap, bp = xi, xif
    a, b = (1, 0) if xi else (0, 1)
    if completion:
        a, b = (a + bp) % ell, (b + ap) % ell
    return (a, b, bp, ap)


def passage_matrix(gene: Gene, point, i: int, ell: int, completion: int = 0) -> Matrix:
    """P(i) built from the point; det is a unit times u^nu."""
    f = gene.f
    n2 = 2 * f
    al, alp = gene.alpha, gene.alpha_prime
    a, b, bp, ap = _scalars(gene, point, i, ell, completion)
    return (
        (p_mono(al[i], a, ell), p_mono(alp[i], bp, ell)),
        (p_mono(al[(i + f) % n2], b, ell), p_mono(alp[(i + f) % n2], ap, ell)),
    )


def structure_matrix(gene: Gene, i: int, ell: int) -> Matrix:
    """G(i): diagonal u^{h_i}, u^{h_{i+f}}, antidiagonal theta twist at the seam."""
    pr = gene.params
    f = pr.f
    if i != f - 1:
        return (
            (p_mono(pr.h_digit(i), 1, ell), {}),
            ({}, p_mono(pr.h_digit(i + f), 1, ell)),
        )
    theta_inv = pow(pr.theta % ell, -1, ell)
    return (
        ({}, p_mono(pr.h_digit(2 * f - 1), theta_inv, ell)),
        (p_mono(pr.h_digit(f - 1), 1, ell), {}),
    )


def frobenius_numerator(
    gene: Gene, point, i: int, ell: int, completions: tuple[int, int] = (0, 0)
) -> Matrix:
    """K(i) = adj(P(i+1)) G(i) phi(P(i))."""
    p = gene.params.p
    pi = passage_matrix(gene, point, i, ell, completions[0])
    pnext = passage_matrix(gene, point, (i + 1) % gene.f, ell, completions[1])
    return m_mul(m_adj(pnext, ell), m_mul(structure_matrix(gene, i, ell), m_phi(pi, p), ell), ell)


def _coordinate_checks(gene: Gene, point, ell: int) -> bool:
    f, nu = gene.f, gene.params.nu
    n2 = 2 * f
    al, alp = gene.alpha, gene.alpha_prime
    for i in range(f):
        if al[i] + alp[(i + f) % n2] > nu and coordinate(point, i, f) % ell:
            return False
        if alp[i] + al[(i + f) % n2] > nu and coordinate(point, i + f, f) % ell:
            return False
    return True


def integrality_check(
    gene: Gene, point, ell: int, completions: tuple[int, int] = (0, 0)
) -> bool:
    """True exactly when the point carries a Frobenius-stable lattice: the
    rigid-column coordinate conditions hold and every entry of every K(i)
    has no monomial below degree nu."""
    if not _coordinate_checks(gene, point, ell):
        return False
    nu = gene.params.nu
    for i in range(gene.f):
        k = frobenius_numerator(gene, point, i, ell, completions)
        for row in k:
            for entry in row:
                if any(e < nu for e in entry):
                    return False
    return True


def genre_from_matrices(gene: Gene, point, ell: int) -> tuple[str, ...]:
    """Fine genre from the corner valuations of K(i): top-left at exactly nu
    gives I_eta, else bottom-right at exactly nu gives I_eta_prime, else II."""
    if not integrality_check(gene, point, ell):
        raise NotIntegral("point does not satisfy the lattice stability conditions")
    nu = gene.params.nu
    out = []
    for i in range(gene.f):
        k = frobenius_numerator(gene, point, i, ell)
        if p_val(k[0][0]) == nu:
            out.append(FINE_I_ETA)
        elif p_val(k[1][1]) == nu:
            out.append(FINE_I_ETA_PRIME)
        else:
            out.append(GENRE_II)
    return tuple(out)


# -- symbolic lattice description and round-trip ------------------------------


def lattice_description(gene: Gene, point, ell: int) -> list[dict]:
    """Per column: case tag, defining exponents, and for balanced columns the
    chart line and the gap exponent |delta|."""
    f, nu = gene.f, gene.params.nu
    n2 = 2 * f
    al, alp = gene.alpha, gene.alpha_prime
    out = []
    for i in range(f):
        ai, aif = al[i], al[(i + f) % n2]
        api, apif = alp[i], alp[(i + f) % n2]
        xi, xif = point[i][0] % ell, point[i][1] % ell
        if ai + apif > nu:
            if xi:
                raise PointNotOnVariety(f"column {i}: coordinate x_{i} must vanish")
            out.append({"case": "A", "column": i, "exponents": (api, aif)})
        elif api + aif > nu:
            if xif:
                raise PointNotOnVariety(f"column {i}: coordinate x_{i + f} must vanish")
            out.append({"case": "A_prime", "column": i, "exponents": (ai, apif)})
        else:
            delta = nu - ai - aif
            case = "B" if delta > 0 else "B_prime"
            exps = (ai, aif) if delta > 0 else (api, apif)
            out.append(
                {
                    "case": case,
                    "column": i,
                    "exponents": exps,
                    "line": (xi, xif),
                    "gap": abs(delta),
                }
            )
    return out


def rebuild_passage(record: dict, ell: int) -> Matrix:
    """Reconstruct a passage matrix from a description record (column span
    representative; equality with passage_matrix is up to column operations)."""
    e0, e1 = record["exponents"]
    if record["case"] == "A":
        return ((({}), p_mono(e0, 1, ell)), (p_mono(e1, 1, ell), {}))
    if record["case"] == "A_prime":
        return ((p_mono(e0, 1, ell), {}), ({}, p_mono(e1, 1, ell)))
    xi, xif = record["line"]
    gap = record["gap"]
    if record["case"] == "B_prime":
        # the eta'-eigencolumn carries the chart with the rows crossed
        xi, xif = xif, xi
    if xi:
        return (
            (p_mono(e0, xi, ell), {}),
            (p_mono(e1, xif, ell), p_mono(e1 + gap, 1, ell)),
        )
    return (
        ({}, p_mono(e0 + gap, 1, ell)),
        (p_mono(e1, xif, ell), {}),
    )


def span_contains(p: Matrix, col: tuple[Poly, Poly], nu: int, ell: int) -> bool:
    """col lies in the u-power-series column span of p (val det p = nu)."""
    adj = m_adj(p, ell)
    for r in range(2):
        entry = p_add(p_mul(adj[r][0], col[0], ell), p_mul(adj[r][1], col[1], ell), ell)
        v = p_val(entry)
        if v is not None and v < nu:
            return False
    return True


def spans_equal(p: Matrix, q: Matrix, nu: int, ell: int) -> bool:
    dp, dq = p_val(m_det(p, ell)), p_val(m_det(q, ell))
    if dp != nu or dq != nu:
        return False
    cols = lambda m: (((m[0][0]), (m[1][0])), ((m[0][1]), (m[1][1])))  # noqa: E731
    return all(span_contains(p, col, nu, ell) for col in cols(q)) and all(
        span_contains(q, col, nu, ell) for col in cols(p)
    )
