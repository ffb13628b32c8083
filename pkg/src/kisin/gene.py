"""The gene: alpha-sequences and the 2f-periodic symbol band.

alpha_i is the representative in [0, e-1] of floor(p^i h / (q+1)) - p^i
gamma_prime mod e; alpha_prime_i is the same with gamma in place of
gamma_prime.  Each index carries a symbol in {A, B, AB, 0} read off from the
position of alpha_i inside [0, e-1]:

    A  : [0, nu/p + eps_{i+f})
    AB : [nu/p + eps_{i+f}, (p-1)nu/p - eps_i]
    B  : ((p-1)nu/p - eps_i, nu]
    0  : (nu, e)

with eps_i = 1 exactly when h_i = p - 1.  The four intervals partition
[0, e-1]; the closed right end of AB is a convention (the source presentation
is ambiguous there) and is pinned down by the lattice-oracle cross-check.

The floor values are computed twice, by direct big-integer division and by
the closed forms

    floor(p^i h/(q+1)) ≡ sum_{j<i} h_{i-j-1} p^j                (0 <= i < f)
                       ≡ p^{i-f} - 1 + sum_{j=i-f}^{f-1} h_{i-j-1} p^j  (f <= i < 2f)

and the two paths are required to agree; a disagreement is an internal bug,
never bad input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .params import Params, derive_params

SYM_A = "A"
SYM_B = "B"
SYM_AB = "AB"
SYM_0 = "0"
SYMBOLS = (SYM_A, SYM_B, SYM_AB, SYM_0)


class InternalMismatch(RuntimeError):
    """The two alpha computation paths disagree (implementation bug)."""

    code = "internal-mismatch"


@dataclass(frozen=True)
class Gene:
    """Arithmetic gene: alphas, symbols and epsilon shifts, all of period 2f."""

    params: Params
    alpha: tuple[int, ...]
    alpha_prime: tuple[int, ...]
    symbols: tuple[str, ...]
    epsilon: tuple[int, ...]

    @property
    def f(self) -> int:
        return self.params.f

    def couple(self, i: int) -> tuple[str, str]:
        f = self.f
        return (self.symbols[i % (2 * f)], self.symbols[(i + f) % (2 * f)])

    def couples(self) -> list[tuple[str, str]]:
        return [self.couple(i) for i in range(self.f)]

    def symbol_string(self) -> str:
        f = self.f
        return "{} | {}".format(
            " ".join(self.symbols[:f]), " ".join(self.symbols[f:])
        )

    def to_json(self) -> dict:
        return {
            "alpha": [str(a) for a in self.alpha],
            "alpha_prime": [str(a) for a in self.alpha_prime],
            "symbols": ["O" if s == SYM_0 else s for s in self.symbols],
            "epsilon": list(self.epsilon),
        }


@dataclass(frozen=True)
class AbstractGene:
    """Bare symbol band, no arithmetic behind it."""

    f: int
    symbols: tuple[str, ...]

    def couple(self, i: int) -> tuple[str, str]:
        f = self.f
        return (self.symbols[i % (2 * f)], self.symbols[(i + f) % (2 * f)])

    def couples(self) -> list[tuple[str, str]]:
        return [self.couple(i) for i in range(self.f)]

    def symbol_string(self) -> str:
        f = self.f
        return "{} | {}".format(
            " ".join(self.symbols[:f]), " ".join(self.symbols[f:])
        )


def parse_abstract(text: str) -> AbstractGene:
    """Parse "A,A,B,0|B,AB,0,A" (top row | bottom row); "O"/"o" also mean 0."""
    rows = text.split("|")
    if len(rows) != 2:
        raise ValueError("abstract gene must be 'top row|bottom row'")
    symbols = []
    for row in rows:
        for token in row.split(","):
            s = token.strip().upper()
            if s == "O":
                s = SYM_0
            if s not in SYMBOLS:
                raise ValueError(f"bad symbol {token!r}")
            symbols.append(s)
    f, rem = divmod(len(symbols), 2)
    if rem or f < 1 or len(rows[0].split(",")) != f:
        raise ValueError("the two rows must have the same length")
    return AbstractGene(f=f, symbols=tuple(symbols))


def _floors_direct(params: Params) -> list[int]:
    p, f, h, q, e = params.p, params.f, params.h, params.q, params.e
    return [(p**i * h) // (q + 1) % e for i in range(2 * f)]


def _floors_closed(params: Params) -> list[int]:
    # Write h = b(q+1) + r with r in [1, q]; the digit closed forms compute
    # floor(p^i r/(q+1)) mod e and the quotient contributes p^i b on top.
    p, f, e = params.p, params.f, params.e
    hd = params.h_digits
    b = params.h // (params.q + 1)
    out = []
    for i in range(f):
        out.append((b * pow(p, i, e) + sum(hd[i - j - 1] * p**j for j in range(i))) % e)
    for i in range(f, 2 * f):
        out.append(
            (
                b * pow(p, i, e)
                + p ** (i - f)
                - 1
                + sum(hd[(i - j - 1) % (2 * f)] * p**j for j in range(i - f, f))
            )
            % e
        )
    return out


def classify_symbol(alpha: int, eps_i: int, eps_if: int, nu: int, p: int) -> str:
    lo = nu // p  # nu/p is exact: nu = p * (1 + p + ... + p^{f-2})
    if alpha < lo + eps_if:
        return SYM_A
    if alpha <= (p - 1) * lo - eps_i:
        return SYM_AB
    if alpha <= nu:
        return SYM_B
    return SYM_0


def compute_gene(params: Params) -> Gene:
    """Compute alphas (two independent paths), classify symbols, sanity-check."""
    p, f, e, nu = params.p, params.f, params.e, params.nu
    direct = _floors_direct(params)
    closed = _floors_closed(params)
    if direct != closed:
        raise InternalMismatch(
            f"floor computations disagree: direct={direct} closed={closed}"
        )
    alpha = tuple((direct[i] - pow(p, i, e) * params.gamma_prime) % e for i in range(2 * f))
    alpha_prime = tuple((direct[i] - pow(p, i, e) * params.gamma) % e for i in range(2 * f))
    eps = tuple(params.epsilon(i) for i in range(2 * f))
    symbols = tuple(
        classify_symbol(alpha[i], eps[i], eps[(i + f) % (2 * f)], nu, p)
        for i in range(2 * f)
    )
    gene = Gene(
        params=params, alpha=alpha, alpha_prime=alpha_prime, symbols=symbols, epsilon=eps
    )
    report = validate_gene(gene)
    bad = [name for name, res in report.items() if not res["passed"]]
    if bad:
        raise InternalMismatch(f"computed gene violates {bad}: {report}")
    return gene


def transform_gene(gene: Gene, op: str, n: int = 0) -> Gene:
    """Symmetries of the input that leave the underlying pair unchanged:
    frobenius_twist (h -> qh), swap_characters (gamma <-> gamma_prime),
    shift_embedding(n) ((h, gamma, gamma_prime) -> p^n * same)."""
    pr = gene.params
    if op == "frobenius_twist":
        h, g, gp = pr.q * pr.h, pr.gamma, pr.gamma_prime
    elif op == "swap_characters":
        h, g, gp = pr.h, pr.gamma_prime, pr.gamma
    elif op == "shift_embedding":
        s = pow(pr.p, n % (2 * pr.f), pr.q * pr.q - 1)
        h, g, gp = s * pr.h, s * pr.gamma, s * pr.gamma_prime
    else:
        raise ValueError(f"unknown transform {op!r}")
    return compute_gene(derive_params(pr.p, pr.f, h, g, gp, pr.theta))


def validate_gene(gene: Gene) -> dict[str, dict]:
    """Per-law pass/fail report for the structural constraints of the band.

    Checks the alpha recurrence (with the symbol-controlled carry), the
    AB->0 and 0-predecessor successor laws, the excluded all-{A,B}
    configuration, the zero-symbol guarantee for nondegenerate
    representations, the alpha' complement congruence, and the equivalence
    symbol = 0 <=> alpha_i + alpha'_{i+f} > nu.
    """
    from .params import degeneracy_flags

    pr = gene.params
    p, f, e, nu = pr.p, pr.f, pr.e, pr.nu
    n2 = 2 * f
    al, alp, sym = gene.alpha, gene.alpha_prime, gene.symbols
    report: dict[str, dict] = {}

    def add(name: str, passed: bool, detail: str = "") -> None:
        report[name] = {"passed": passed, "detail": detail}

    bad = []
    for i in range(n2):
        nxt, cur = al[(i + 1) % n2], p * al[i] + pr.h_digit(i)
        if (cur - nxt) % e:
            bad.append((i, "congruence"))
        elif sym[i] in (SYM_A, SYM_AB) and cur != nxt:
            bad.append((i, "equality"))
        elif sym[i] == SYM_B and cur - e != nxt:
            bad.append((i, "carry-1"))
        elif sym[i] == SYM_0 and cur <= nxt:
            bad.append((i, "carry>=1"))
    add("alpha_recurrence", not bad, str(bad))

    bad = [i for i in range(n2) if sym[i] == SYM_AB and sym[(i + 1) % n2] != SYM_0]
    add("ab_forces_zero", not bad, str(bad))
    bad = [
        i
        for i in range(n2)
        if sym[(i + 1) % n2] == SYM_0 and sym[i] not in (SYM_0, SYM_AB)
    ]
    add("zero_predecessor", not bad, str(bad))

    all_ab = all({sym[i], sym[(i + f) % n2]} == {SYM_A, SYM_B} for i in range(f))
    add("not_all_mixed_couples", not all_ab)

    if degeneracy_flags(pr)["rho_nondegenerate"]:
        add("nondegenerate_has_zero", SYM_0 in sym)
    else:
        add("nondegenerate_has_zero", True, "vacuous: rho degenerate")

    bad = [i for i in range(n2) if (alp[i] + al[(i + f) % n2] - nu) % e]
    add("alpha_prime_complement", not bad, str(bad))

    bad = [
        i
        for i in range(n2)
        if (sym[i] == SYM_0) != (al[i] + alp[(i + f) % n2] > nu)
    ]
    add("zero_iff_alpha_sum_exceeds_nu", not bad, str(bad))
    return report
