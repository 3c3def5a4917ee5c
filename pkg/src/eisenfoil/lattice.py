"""
Integer-lattice side of the story: subtori of E0 x E0, intersection numbers,
and counting ideals of Z[w] by norm.

E0 = C / Z[w].  Multiplication by x = a + b*w acts on the lattice Z[w] = Z^2
through the integer matrix ``mat_of(x)``, so every question about subtori
E_{alpha,beta} = {(alpha*z, beta*z)} reduces to integer determinants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .eisenstein import (
    ONE,
    W,
    ZERO,
    EisInt,
    canonical_ab,
    gcd,
    norm,
)

IntMat = tuple[tuple[int, ...], ...]


def mat_of(x: EisInt) -> IntMat:
    """Matrix of z -> x*z on Z[w] in the basis (1, w), acting on column vectors."""
    x = EisInt.coerce(x)
    return ((x.a, -x.b), (x.b, x.a - x.b))


def mat_mul(m: IntMat, n: IntMat) -> IntMat:
    return tuple(
        tuple(sum(m[i][k] * n[k][j] for k in range(len(n))) for j in range(len(n[0])))
        for i in range(len(m))
    )


def int_det(m) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(row) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True, slots=True, init=False)
class Subtorus:
    """The elliptic curve E_{alpha,beta}, image of z -> (alpha*z, beta*z).

    The pair is coprime and normalised so that its first nonzero entry is a
    canonical associate; the same unit is applied to both entries.
    """

    alpha: EisInt
    beta: EisInt

    def __init__(self, alpha: EisInt | int, beta: EisInt | int):
        alpha, beta = EisInt.coerce(alpha), EisInt.coerce(beta)
        if not alpha and not beta:
            raise ValueError("Subtorus needs a nonzero pair")
        if gcd(alpha, beta) != ONE:
            raise ValueError(f"Subtorus pair ({alpha}, {beta}) is not coprime")
        lead = alpha if alpha else beta
        _, _, ua, ub = canonical_ab(lead.a, lead.b)
        u = EisInt(ua, ub)
        object.__setattr__(self, "alpha", u * alpha)
        object.__setattr__(self, "beta", u * beta)

    def __iter__(self):
        return iter((self.alpha, self.beta))

    def __str__(self):
        return f"({self.alpha},{self.beta})"


# the four reference curves through the origin
E_10 = Subtorus(ONE, ZERO)
E_01 = Subtorus(ZERO, ONE)
E_11 = Subtorus(ONE, ONE)
E_1mw = Subtorus(ONE, -W)
REFERENCE_CURVES = (E_10, E_01, E_11, E_1mw)


def _pair(p) -> tuple[EisInt, EisInt]:
    x, y = p
    return EisInt.coerce(x), EisInt.coerce(y)


def intersection_oracle(A, B) -> int:
    """Intersection count of E_A and E_B from the 4x4 lattice determinant.

    Points of E_A n E_B are solutions (z1, z2) in (C/Z[w])^2 of
    alpha*z1 - gamma*z2 = beta*z1 - delta*z2 = 0 mod Z[w]; their number is
    |det| of the real-linear map [[M_alpha, -M_gamma], [M_beta, -M_delta]].
    """
    (al, be), (ga, de) = _pair(A), _pair(B)
    ma, mb, mg, md = mat_of(al), mat_of(be), mat_of(ga), mat_of(de)
    rows = [
        [ma[0][0], ma[0][1], -mg[0][0], -mg[0][1]],
        [ma[1][0], ma[1][1], -mg[1][0], -mg[1][1]],
        [mb[0][0], mb[0][1], -md[0][0], -md[0][1]],
        [mb[1][0], mb[1][1], -md[1][0], -md[1][1]],
    ]
    return abs(int_det(rows))


def intersection_number(A, B) -> Fraction:
    """E_{alpha,beta} . E_{gamma,delta} = N(alpha*delta - beta*gamma) / (N(alpha,beta) N(gamma,delta)).

    N(x, y) is the norm of the ideal (x, y) = (gcd(x, y)), so the pairs need
    not be coprime.  Raises ValueError when a pair is (0, 0).
    """
    (al, be), (ga, de) = _pair(A), _pair(B)
    if not (al or be) or not (ga or de):
        raise ValueError("intersection_number: zero pair")
    num = norm(al * de - be * ga)
    return Fraction(num, _pair_norm(A, al, be) * _pair_norm(B, ga, de))


def _pair_norm(p, x: EisInt, y: EisInt) -> int:
    # a Subtorus is coprime by construction
    return 1 if isinstance(p, Subtorus) else norm(gcd(x, y))


def intersection_swapped(A, B) -> int:
    """N(alpha*gamma - beta*delta), the determinant with the second pair's
    entries swapped.  Kept for comparison only; it disagrees with the lattice
    count (the two axes give 0 instead of 1)."""
    (al, be), (ga, de) = _pair(A), _pair(B)
    return norm(al * ga - be * de)


# ---------------------------------------------------------------------------
# counting by norm
# ---------------------------------------------------------------------------

def count_norm(k: int) -> tuple[int, int]:
    """Return (#elements of norm k, #ideals of norm k) by direct enumeration."""
    if k < 1:
        raise ValueError("count_norm needs k >= 1 (the zero ideal is excluded)")
    bound = math.isqrt(4 * k // 3) + 1
    elements = sum(
        1
        for a in range(-bound, bound + 1)
        for b in range(-bound, bound + 1)
        if a * a - a * b + b * b == k
    )
    return elements, elements // 6


@lru_cache(maxsize=8)
def _norm_table(n: int) -> np.ndarray:
    """r(k) = #{(a, b): N(a + b*w) = k} for 0 <= k <= n, by vectorised enumeration."""
    counts = np.zeros(n + 1, dtype=np.int64)
    bound = math.isqrt(4 * n // 3) + 1
    b = np.arange(-bound, bound + 1, dtype=np.int64)
    for a in range(-bound, bound + 1):
        nv = a * a - a * b + b * b
        nv = nv[nv <= n]
        counts += np.bincount(nv, minlength=n + 1)
    counts.flags.writeable = False
    return counts


def ideal_counts(n: int) -> np.ndarray:
    """Array whose k-th entry is the number of ideals of norm k (entry 0 is 0)."""
    table = _norm_table(n) // 6
    table[0] = 0
    return table


def H(n: int) -> int:
    """Number of nonzero ideals of Z[w] with norm <= n."""
    if n < 1:
        return 0
    return int(ideal_counts(n).sum())


def ideal_density() -> float:
    """Limit of H(n)/n: area of {N <= 1} (2*pi/sqrt 3) over six units."""
    return math.pi / (3 * math.sqrt(3))


def zeta_K(s: float, terms: int) -> float:
    """Partial sum of the Dedekind zeta of Q(w) over ideals of norm <= terms."""
    if terms < 1:
        raise ValueError("zeta_K needs terms >= 1")
    counts = ideal_counts(terms).astype(np.float64)
    k = np.arange(terms + 1, dtype=np.float64)
    k[0] = 1.0
    return float(math.fsum(counts[1:] / k[1:] ** s))


def dirichlet_L_chi3(s: float, pairs: int = 200_000) -> float:
    """L(s, chi_{-3}) = sum over m >= 0 of (3m+1)^-s - (3m+2)^-s."""
    m = np.arange(pairs, dtype=np.float64)
    return float(math.fsum((3 * m + 1) ** -s - (3 * m + 2) ** -s))


def zeta_K2_reference(pairs: int = 200_000) -> float:
    """zeta(2) * L(2, chi_{-3}), the factorised value of zeta_K(2)."""
    return math.pi ** 2 / 6 * dirichlet_L_chi3(2.0, pairs)
