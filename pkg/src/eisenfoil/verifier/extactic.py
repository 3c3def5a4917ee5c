"""
Probabilistic certification of the minimal degree of a rational first
integral via the extactic determinant.

For a planar field X and the monomials v_1..v_N of degree <= d the extactic
matrix has rows (v_i, X v_i, X^2 v_i, ..., X^{N-1} v_i).  If X has a rational
first integral P/Q with deg P, deg Q <= d, two combinations of rows are
proportional and the determinant vanishes identically.  Conversely a single
nonzero evaluation proves there is no such integral.

The determinant is evaluated at random points over prime fields F_p with
p = 1 mod 3, where w becomes a primitive cube root of unity.  X^k v_i at a
point only depends on the order-k jet of v_i there, so everything is done on
truncated Taylor expansions in shifted coordinates rather than on full
polynomials.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from math import comb

import numpy as np

from ..eisenstein import EisRat, format_eisrat
from .poly import Poly

PRIME_LO = 1 << 30
PRIME_HI = 1 << 31     # products of two residues stay below 2**62


class Verdict(enum.Enum):
    NO_INTEGRAL_LEQ_D = "NO_INTEGRAL_LEQ_d"
    CONSISTENT_WITH_D = "CONSISTENT_WITH_d"


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.4e14."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
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


def random_prime_1mod3(rng: random.Random) -> int:
    while True:
        p = rng.randrange(PRIME_LO, PRIME_HI) | 1
        p -= (p - 1) % 6      # p = 1 mod 6
        if p > PRIME_LO and is_prime(p):
            return p


def cube_root_of_unity(p: int, rng: random.Random | None = None) -> int:
    if p % 3 != 1:
        raise ValueError("need p = 1 mod 3 for a cube root of unity")
    rng = rng or random.Random(p)
    while True:
        g = pow(rng.randrange(2, p - 1), (p - 1) // 3, p)
        if g != 1:
            return g


class BadPrime(ArithmeticError):
    """p divides a denominator of some coefficient."""


def reduce_mod(x: EisRat, p: int, w: int) -> int:
    num = (x.num.a + x.num.b * w) % p
    den = (x.den.a + x.den.b * w) % p
    if den == 0:
        raise BadPrime(p)
    return num * pow(den, -1, p) % p


def _shift_matrix(deg: int, x0: int, p: int) -> list[list[int]]:
    """Row e holds the coefficients of (x0 + u)^e in u."""
    return [
        [comb(e, k) * pow(x0, e - k, p) % p if k <= e else 0 for k in range(deg + 1)]
        for e in range(deg + 1)
    ]


def shifted_coeffs(P: Poly, x0: int, y0: int, p: int, w: int) -> np.ndarray:
    """Coefficients of P(x0 + u, y0 + v) mod p, indexed [i, j] for u^i v^j."""
    D = max(P.degree(), 0)
    sx, sy = _shift_matrix(D, x0, p), _shift_matrix(D, y0, p)
    out = [[0] * (D + 1) for _ in range(D + 1)]
    for (ex, ey), c in P.terms.items():
        c = reduce_mod(c, p, w)
        for i in range(ex + 1):
            ci = c * sx[ex][i] % p
            for j in range(ey + 1):
                out[i][j] = (out[i][j] + ci * sy[ey][j]) % p
    return np.array(out, dtype=np.int64)


def monomials(d: int) -> list[tuple[int, int]]:
    return [(i, k - i) for k in range(d + 1) for i in range(k, -1, -1)]


def extactic_matrix_mod(A: Poly, B: Poly, d: int, x0: int, y0: int, p: int, w: int) -> np.ndarray:
    """The N x N extactic matrix of degree d evaluated at (x0, y0) over F_p."""
    mons = monomials(d)
    N = len(mons)
    K = N - 1
    m = K + 1
    sa, sb = shifted_coeffs(A, x0, y0, p, w), shifted_coeffs(B, x0, y0, p, w)
    a_terms = [(i, j, int(sa[i, j])) for i, j in zip(*np.nonzero(sa))]
    b_terms = [(i, j, int(sb[i, j])) for i, j in zip(*np.nonzero(sb))]

    # jets of the monomials, truncated to indices < m in each variable
    jets = np.zeros((N, m, m), dtype=np.int64)
    sx, sy = _shift_matrix(d, x0, p), _shift_matrix(d, y0, p)
    for idx, (ex, ey) in enumerate(mons):
        row = np.array(sx[ex][: ex + 1], dtype=np.int64)
        col = np.array(sy[ey][: ey + 1], dtype=np.int64)
        jets[idx, : ex + 1, : ey + 1] = np.outer(row, col) % p

    M = np.zeros((N, N), dtype=np.int64)
    for k in range(N):
        M[:, k] = jets[:, 0, 0]
        if k == N - 1:
            break
        n = m - 1
        idx = np.arange(1, m, dtype=np.int64)
        du = (jets[:, 1:, :n] * idx[None, :n, None]) % p
        dv = (jets[:, :n, 1:] * idx[None, None, :n]) % p
        out = np.zeros((N, n, n), dtype=np.int64)
        for terms, der in ((a_terms, du), (b_terms, dv)):
            for i, j, c in terms:
                if i < n and j < n:
                    out[:, i:, j:] = (out[:, i:, j:] + c * der[:, : n - i, : n - j]) % p
        jets, m = out, n
    return M


def det_mod(M: np.ndarray, p: int) -> int:
    """Determinant over F_p by Gaussian elimination."""
    a = M.copy() % p
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        r = c + int(nz[0])
        if r != c:
            a[[c, r]] = a[[r, c]]
            det = -det
        piv = int(a[c, c])
        det = det * piv % p
        inv = pow(piv, -1, p)
        factors = (a[c + 1:, c] * inv) % p
        a[c + 1:, c:] = (a[c + 1:, c:] - (factors[:, None] * a[c, c:][None, :]) % p) % p
    return det % p


@dataclass
class CertifierResult:
    d: int
    verdict: Verdict
    primes: list[int]
    points: list[tuple[int, int, int]]      # (p, x0, y0)
    values: list[int]
    seed: int
    label: str = ""
    t: str | None = None

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "d": self.d,
            "verdict": self.verdict.value,
            "primes": self.primes,
            "points": [list(pt) for pt in self.points],
            "seed": self.seed,
        }


def extactic_certifier(field_, d: int, trials: int = 3, primes: int = 2, seed: int = 0) -> CertifierResult:
    """Test for a rational first integral of degree <= d.

    NO_INTEGRAL_LEQ_D is a proof (some evaluation is nonzero).
    CONSISTENT_WITH_D means every evaluation vanished: by Schwartz-Zippel
    the determinant is identically zero with overwhelming probability.
    """
    if d < 0:
        raise ValueError("d must be >= 0")
    if trials < 1 or primes < 1:
        raise ValueError("need at least one prime and one point")
    rng = random.Random(seed)
    used_primes, points, values = [], [], []
    while len(used_primes) < primes:
        p = random_prime_1mod3(rng)
        w = cube_root_of_unity(p, rng)
        try:
            for c in (*field_.A.terms.values(), *field_.B.terms.values()):
                reduce_mod(c, p, w)
        except BadPrime:
            continue
        used_primes.append(p)
        for _ in range(trials):
            x0, y0 = rng.randrange(p), rng.randrange(p)
            v = det_mod(extactic_matrix_mod(field_.A, field_.B, d, x0, y0, p, w), p)
            points.append((p, x0, y0))
            values.append(v)
    verdict = Verdict.NO_INTEGRAL_LEQ_D if any(values) else Verdict.CONSISTENT_WITH_D
    t = getattr(field_, "t", None)
    return CertifierResult(
        d, verdict, used_primes, points, values, seed,
        getattr(field_, "label", ""), None if t is None else format_eisrat(t),
    )


@dataclass
class MinimalDegreeScan:
    minimal: int | None
    results: list[CertifierResult] = field(default_factory=list)


def minimal_degree(field_, d_max: int, step: int = 1, trials: int = 3, primes: int = 2, seed: int = 0) -> MinimalDegreeScan:
    """Scan d = step, 2*step, ... <= d_max; stop at the first consistent d."""
    scan = MinimalDegreeScan(None)
    for d in range(step, d_max + 1, step):
        res = extactic_certifier(field_, d, trials, primes, seed)
        scan.results.append(res)
        if res.verdict is Verdict.CONSISTENT_WITH_D:
            scan.minimal = d
            break
    return scan
