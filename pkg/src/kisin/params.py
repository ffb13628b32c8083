"""Arithmetic input: validation, canonical reduction and derived constants.

The input of every computation is a tuple (p, f, h, gamma, gamma_prime, theta):
p >= 5 a prime, f >= 2 the degree of the unramified base field, h the exponent
of the level-2f fundamental character inducing the irreducible residual
representation (a residue mod q^2 - 1 with q = p^f), and gamma, gamma_prime
the exponents of the two tame inertia characters of the principal-series type
(residues mod e = q - 1).  theta is the unramified twist scalar; it only ever
enters the seam matrix of the lattice module.

Derived data: q, e, nu = p + p^2 + ... + p^{f-1}, the base-p digit sequence
(h_i) determined by h ≡ 1 + sum h_i p^{f-1-i} (mod q+1) and extended to
period 2f by h_{i+f} = p - 1 - h_i, and the digits (c_i) of
c ≡ gamma - gamma_prime (mod e).

Three compatibility conditions are enforced: h is not a multiple of q + 1
(irreducibility), gamma != gamma_prime (distinct characters), and the
determinant congruence h ≡ 1 + nu + gamma + gamma_prime (mod e), which is the
numeric shadow of det = (product of the two characters) x cyclotomic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class ParamError(ValueError):
    """Invalid arithmetic input."""

    code = "invalid-input"


class RejectSmallPrime(ParamError):
    code = "reject-small-prime"


class RejectReducible(ParamError):
    code = "reject-reducible"


class RejectEqualCharacters(ParamError):
    code = "reject-equal-characters"


class RejectDeterminant(ParamError):
    code = "reject-determinant"


class NoSolution(ParamError):
    code = "no-solution"


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin, deterministic for n < 3.3e24 with the fixed witness set."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_EXPR_CHARS = re.compile(r"^[0-9p+\-*/^() \t]*$")


def parse_value(value: int | str, p: int) -> int:
    """Parse an integer given as an int, a decimal string, or a signed
    polynomial-in-p expression such as "(p-1)/2 + (p-1)*p^3 + p^8".

    Divisions must be exact; the result is an ordinary (signed) integer,
    reduced to its canonical residue range by the caller.
    """
    if isinstance(value, int):
        return value
    text = value.strip()
    if not text or not _EXPR_CHARS.match(text):
        raise ParamError(f"cannot parse parameter value {value!r}")
    expr = text.replace("^", "**")
    try:
        result = eval(expr, {"__builtins__": {}}, {"p": Fraction(p)})  # noqa: S307
    except (SyntaxError, ZeroDivisionError, TypeError) as exc:
        raise ParamError(f"cannot parse parameter value {value!r}") from exc
    result = Fraction(result)
    if result.denominator != 1:
        raise ParamError(f"parameter value {value!r} is not an integer at p={p}")
    return int(result)


def digits(h: int, p: int, f: int) -> tuple[int, ...]:
    """The unique (h_0, ..., h_{f-1}) in [0, p-1]^f with
    h ≡ 1 + sum h_i p^{f-1-i} (mod q+1).  Raises RejectReducible when
    h ≡ 0 (mod q+1), the excluded reducible case."""
    q = p**f
    r = h % (q + 1)
    if r == 0:
        raise RejectReducible(f"h={h} is a multiple of q+1={q + 1}")
    m = (r - 1) % (q + 1)  # in [0, q-1]
    out = []
    for _ in range(f):
        m, d = divmod(m, p)
        out.append(d)
    # out holds digits of m in little-endian base p; h_i sits at weight f-1-i
    return tuple(reversed(out))


def _crt(r1: int, m1: int, r2: int, m2: int) -> int | None:
    """Smallest nonnegative x with x ≡ r1 (mod m1), x ≡ r2 (mod m2);
    None when the congruences are incompatible."""
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    lcm = m1 // g * m2
    step = m1 // g
    t = (r2 - r1) // g * pow(step, -1, m2 // g) % (m2 // g)
    return (r1 + m1 * t) % lcm


def realize_h(
    digit_vector: tuple[int, ...] | list[int], gamma: int, gamma_prime: int, p: int, f: int
) -> int:
    """Reconstruct an h (mod q^2-1) from a digit vector and a type.

    Solves h ≡ 1 + sum h_i p^{f-1-i} (mod q+1) jointly with the determinant
    congruence h ≡ 1 + nu + gamma + gamma_prime (mod q-1).  The two moduli
    share the factor 2, so a parity obstruction may make the system
    unsolvable (NoSolution).  Returns the smallest nonnegative solution so
    golden tests are deterministic.
    """
    if len(digit_vector) != f or any(d < 0 or d >= p for d in digit_vector):
        raise ParamError(f"digit vector must lie in [0,{p - 1}]^{f}")
    q = p**f
    e = q - 1
    nu = e // (p - 1) - 1
    m = sum(d * p ** (f - 1 - i) for i, d in enumerate(digit_vector))
    h = _crt((1 + m) % (q + 1), q + 1, (1 + nu + gamma + gamma_prime) % e, e)
    if h is None:
        raise NoSolution(
            "digit vector and type are incompatible modulo 2 (q+1 vs q-1 obstruction)"
        )
    return h


@dataclass(frozen=True)
class Params:
    """Validated input with all derived constants.

    h, gamma, gamma_prime are stored in canonical residue ranges
    ([0, q^2-2] and [0, e-1]).  h_digits has length 2f (complement rule
    applied); c_digits are the f base-p digits of gamma - gamma_prime mod e.
    """

    p: int
    f: int
    h: int
    gamma: int
    gamma_prime: int
    theta: int
    q: int
    e: int
    nu: int
    h_digits: tuple[int, ...]
    c_digits: tuple[int, ...]

    def h_digit(self, i: int) -> int:
        return self.h_digits[i % (2 * self.f)]

    def epsilon(self, i: int) -> int:
        """1 when h_i = p - 1, else 0 (the interval shift in symbol classification)."""
        return 1 if self.h_digit(i) == self.p - 1 else 0

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "f": self.f,
            "h": str(self.h),
            "gamma": str(self.gamma),
            "gamma_prime": str(self.gamma_prime),
            "theta": str(self.theta),
            "q": str(self.q),
            "e": str(self.e),
            "nu": str(self.nu),
            "h_digits": [str(d) for d in self.h_digits],
            "c_digits": [str(d) for d in self.c_digits],
        }


def derive_params(
    p: int | str,
    f: int | str,
    h: int | str,
    gamma: int | str,
    gamma_prime: int | str | None = None,
    theta: int | str = 1,
) -> Params:
    """Validate and normalize the input, computing all derived fields.

    gamma_prime=None derives the second character exponent from the
    determinant congruence (the first one determines it).  All residues are
    reduced to canonical ranges; signed polynomial-in-p expressions are
    accepted for h, gamma, gamma_prime, theta.
    """
    p = parse_value(p, 0) if isinstance(p, str) else p
    f = int(f)
    if f < 2:
        raise ParamError(f"f must be >= 2, got {f}")
    if p < 5:
        raise RejectSmallPrime(f"p must be a prime >= 5, got {p}")
    if not is_prime(p):
        raise ParamError(f"p must be prime, got {p}")
    q = p**f
    e = q - 1
    nu = e // (p - 1) - 1
    h = parse_value(h, p) % (q * q - 1)
    gamma = parse_value(gamma, p) % e
    if gamma_prime is None:
        gamma_prime = (h - 1 - nu - gamma) % e
    else:
        gamma_prime = parse_value(gamma_prime, p) % e
    theta = parse_value(theta, p) % p
    if theta == 0:
        raise ParamError("theta must be nonzero")
    if gamma == gamma_prime:
        raise RejectEqualCharacters(
            f"gamma ≡ gamma_prime ≡ {gamma} (mod {e}); the two tame characters must differ"
        )
    if (h - 1 - nu - gamma - gamma_prime) % e:
        raise RejectDeterminant(
            f"determinant congruence fails: h - (1 + nu + gamma + gamma_prime) "
            f"≡ {(h - 1 - nu - gamma - gamma_prime) % e} (mod {e})"
        )
    base = digits(h, p, f)  # raises RejectReducible when h ≡ 0 mod q+1
    h_digits = base + tuple(p - 1 - d for d in base)
    c = (gamma - gamma_prime) % e
    c_digits = []
    for _ in range(f):
        c, d = divmod(c, p)
        c_digits.append(d)
    return Params(
        p=p,
        f=f,
        h=h,
        gamma=gamma,
        gamma_prime=gamma_prime,
        theta=theta,
        q=q,
        e=e,
        nu=nu,
        h_digits=h_digits,
        c_digits=tuple(c_digits),
    )


def degeneracy_flags(params: Params) -> dict[str, bool]:
    """Nondegeneracy of the representation and of the type, plus genericity.

    rho is nondegenerate when some digit h_i avoids {0, p-1}; the type when
    some c_j avoids {0, 1, p-2, p-1}; the representation is generic when
    every h_i lies in [1, p-2].
    """
    p, f = params.p, params.f
    head = params.h_digits[:f]
    return {
        "rho_nondegenerate": any(d not in (0, p - 1) for d in head),
        "type_nondegenerate": any(d not in (0, 1, p - 2, p - 1) for d in params.c_digits),
        "generic": all(1 <= d <= p - 2 for d in head),
    }
