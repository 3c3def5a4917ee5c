"""
Counting integrable parameters by the degree of their first integral.

pi(n) is the number of parameters t of P4 whose first integral has degree
at most n.  Parameters correspond one-to-one to coprime pairs
(alpha1, beta1) with beta1 a canonical associate, plus (1, 0) for
t = inf.  Every one of the four norms in the degree is nonnegative, so
N(alpha1) + N(beta1) <= n bounds the search.

The module also carries the reference pencil alpha*x dy - y dx on P^2,
whose integrable parameters are the rationals (plus infinity).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .eisenstein import EisInt, format_eisrat, gcd_ab, norm_ab
from .lattice import H, zeta_K
from .pencil import (
    DEFAULT_VARIANT,
    DegreeRecord,
    PencilParam,
    Variant,
    degree_of_pair,
)

CSV_COLUMNS = ("t", "alpha", "a", "b", "c", "d", "d_paper", "d_corrected")


# ---------------------------------------------------------------------------
# vectorised helpers
# ---------------------------------------------------------------------------

def _vnorm(a, b):
    return a * a - a * b + b * b


def _vdegree(a, b, c, d, variant: Variant):
    base = _vnorm(c, d) + _vnorm(a, b) + _vnorm(c - a, d - b)
    if variant is Variant.PAPER:
        return base + _vnorm(c - b, d + a - b)
    return base + _vnorm(a - d, b + c - d)


def _vcoprime(a: np.ndarray, b: np.ndarray, c: int, d: int) -> np.ndarray:
    """Elementwise test gcd(a + b*w, c + d*w) is a unit, for a fixed nonzero c + d*w."""
    x0, x1 = np.full_like(a, c), np.full_like(a, d)
    y0, y1 = a.copy(), b.copy()
    active = (y0 != 0) | (y1 != 0)
    while active.any():
        n = _vnorm(y0, y1)
        safe = np.where(active, n, 1)
        # x * conj(y), conj(y) = (y0 - y1) - y1*w
        u = x0 * (y0 - y1) + x1 * y1
        v = x1 * y0 - x0 * y1
        q0 = -((safe - 2 * u) // (2 * safe))
        q1 = -((safe - 2 * v) // (2 * safe))
        r0 = x0 - (q0 * y0 - q1 * y1)
        r1 = x1 - (q0 * y1 + q1 * y0 - q1 * y1)
        x0, x1 = np.where(active, y0, x0), np.where(active, y1, x1)
        y0, y1 = np.where(active, r0, 0), np.where(active, r1, 0)
        active = (y0 != 0) | (y1 != 0)
    return _vnorm(x0, x1) == 1


def _canonical_betas(bound: int):
    """Canonical associates c + d*w (c > 0, 0 <= d < c) with norm <= bound."""
    cmax = math.isqrt(4 * bound // 3) + 2
    for c in range(1, cmax + 1):
        for d in range(0, c):
            if norm_ab(c, d) <= bound:
                yield c, d


def enumerate_pairs(n: int, variant: Variant = DEFAULT_VARIANT):
    """Yield (a, b, c, d, degree) for every parameter with degree <= n.

    alpha1 = a + b*w, beta1 = c + d*w; the infinite parameter is (1, 0, 0, 0).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    variant = Variant(variant)
    deg_inf = degree_of_pair(EisInt(1, 0), EisInt(0, 0), variant)
    if deg_inf <= n:
        yield 1, 0, 0, 0, deg_inf
    for c, d in _canonical_betas(n):
        rest = n - norm_ab(c, d)
        amax = math.isqrt(4 * rest // 3) + 1
        rng = np.arange(-amax, amax + 1, dtype=np.int64)
        a, b = np.meshgrid(rng, rng, indexing="ij")
        a, b = a.ravel(), b.ravel()
        keep = _vnorm(a, b) <= rest
        a, b = a[keep], b[keep]
        deg = _vdegree(a, b, c, d, variant)
        keep = deg <= n
        a, b, deg = a[keep], b[keep], deg[keep]
        if a.size == 0:
            continue
        keep = _vcoprime(a, b, c, d)
        for ai, bi, di in zip(a[keep].tolist(), b[keep].tolist(), deg[keep].tolist()):
            yield ai, bi, c, d, di


def degree_spectrum(n: int, variant: Variant = DEFAULT_VARIANT) -> np.ndarray:
    """Sorted degrees of all parameters with degree <= n."""
    degs = [row[4] for row in enumerate_pairs(n, variant)]
    return np.sort(np.array(degs, dtype=np.int64))


def pi_p4(n: int, variant: Variant = DEFAULT_VARIANT) -> int:
    """Number of parameters of P4 with first integral of degree <= n."""
    return sum(1 for _ in enumerate_pairs(n, variant))


@dataclass
class CountReport:
    n: int
    variant: Variant
    count: int
    parameters: list[DegreeRecord]
    ratio: float
    elapsed: float

    def csv_lines(self) -> list[str]:
        out = [",".join(CSV_COLUMNS)]
        for rec in self.parameters:
            row = rec.as_dict()
            out.append(",".join(str(row[k]) for k in CSV_COLUMNS))
        return out

    def as_dict(self, include_parameters: bool = True) -> dict:
        d = {
            "n": self.n,
            "variant": self.variant.value,
            "count": self.count,
            "ratio": self.ratio,
            "elapsed": self.elapsed,
        }
        if include_parameters:
            d["parameters"] = [r.as_dict() for r in self.parameters]
        return d


def _sort_key(rec: DegreeRecord, variant: Variant):
    p = rec.param
    return (rec.degree(variant), p.beta1.norm(), p.alpha1.norm(), format_eisrat(p.t))


def enumerate_parameters(n: int, variant: Variant = DEFAULT_VARIANT) -> CountReport:
    """All parameters with degree <= n under ``variant``, with both degrees recorded."""
    variant = Variant(variant)
    start = time.perf_counter()
    other = Variant.PAPER if variant is Variant.CORRECTED else Variant.CORRECTED
    records = []
    seen = set()
    for a, b, c, d, deg in enumerate_pairs(n, variant):
        key = (a, b, c, d)
        if key in seen:
            continue
        seen.add(key)
        a1, b1 = EisInt(a, b), EisInt(c, d)
        param = PencilParam.from_pair(a1, b1, trusted=True)
        d_other = degree_of_pair(a1, b1, other)
        if variant is Variant.PAPER:
            rec = DegreeRecord(param, deg, d_other, d_other)
        else:
            rec = DegreeRecord(param, d_other, deg, deg)
        records.append(rec)
    records.sort(key=lambda r: _sort_key(r, variant))
    elapsed = time.perf_counter() - start
    return CountReport(n, variant, len(records), records, len(records) / n ** 2, elapsed)


def variant_difference(n: int) -> dict:
    """Parameters counted by exactly one of the two variants at bound n."""
    sets = {
        v: {format_eisrat(r.param.t) for r in enumerate_parameters(n, v).parameters}
        for v in Variant
    }
    return {
        "paper_only": sorted(sets[Variant.PAPER] - sets[Variant.CORRECTED]),
        "corrected_only": sorted(sets[Variant.CORRECTED] - sets[Variant.PAPER]),
    }


def degree_table(max_norm: int) -> list[DegreeRecord]:
    """DegreeRecords of every parameter with N(alpha1), N(beta1) <= max_norm."""
    recs = []
    if max_norm >= 1:
        recs.append(_record(EisInt(1, 0), EisInt(0, 0)))
    bound = math.isqrt(4 * max_norm // 3) + 1
    for c, d in _canonical_betas(max_norm):
        for a in range(-bound, bound + 1):
            for b in range(-bound, bound + 1):
                if norm_ab(a, b) <= max_norm and norm_ab(*gcd_ab(a, b, c, d)) == 1:
                    recs.append(_record(EisInt(a, b), EisInt(c, d)))
    recs.sort(key=lambda r: _sort_key(r, DEFAULT_VARIANT))
    return recs


def _record(a1: EisInt, b1: EisInt) -> DegreeRecord:
    from .pencil import degree_record
    return degree_record(PencilParam.from_pair(a1, b1))


# ---------------------------------------------------------------------------
# growth
# ---------------------------------------------------------------------------

@dataclass
class GrowthRow:
    n: int
    pi: int
    pi_over_n2: float
    H: int
    pi_over_H2: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class GrowthReport:
    variant: Variant
    rows: list[GrowthRow]
    inverse_zeta_bound: float
    fitted_C: float = field(init=False)

    def __post_init__(self):
        self.fitted_C = max(r.pi_over_n2 for r in self.rows)

    def as_dict(self) -> dict:
        return {
            "variant": self.variant.value,
            "inverse_zeta_K_2": self.inverse_zeta_bound,
            "fitted_C": self.fitted_C,
            "rows": [r.as_dict() for r in self.rows],
        }


def log_grid(n_min: int, n_max: int, points: int = 12) -> list[int]:
    return sorted({int(round(x)) for x in np.geomspace(n_min, n_max, points)})


def growth_report(n_max: int, variant: Variant = DEFAULT_VARIANT, points: int = 12,
                  zeta_terms: int = 1_000_000) -> GrowthReport:
    if n_max < 10:
        raise ValueError("growth_report needs n_max >= 10")
    variant = Variant(variant)
    spectrum = degree_spectrum(n_max, variant)
    rows = []
    for n in log_grid(10, n_max, points):
        pi = int(np.searchsorted(spectrum, n, side="right"))
        h = H(n)
        rows.append(GrowthRow(n, pi, pi / n ** 2, h, pi / h ** 2))
    return GrowthReport(variant, rows, 1.0 / zeta_K(2.0, zeta_terms))


# ---------------------------------------------------------------------------
# reference pencil alpha*x dy - y dx
# ---------------------------------------------------------------------------

def ref_degree(p: int, q: int) -> int:
    """Degree of the first integral at alpha = p/q: max(p, q) if p >= 0, |p| + q if p < 0."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    if math.gcd(abs(p), q) != 1:
        raise ValueError(f"({p}, {q}) is not coprime")
    return max(p, q) if p >= 0 else -p + q


def ref_count(n: int) -> int:
    """Brute-force count of alpha in Q u {inf} with first-integral degree <= n.

    alpha = inf (the foliation x dy = 0, first integral y) has degree 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 1                                        # alpha = inf
    p = np.arange(-n, n + 1, dtype=np.int64)
    for q in range(1, n + 1):
        ok = np.gcd(np.abs(p), q) == 1
        deg = np.where(p >= 0, np.maximum(p, q), q - p)
        total += int(np.count_nonzero(ok & (deg <= n)))
    return total


def ref_count_stern_brocot(n: int) -> int:
    """Same count by walking the Stern-Brocot tree of positive reduced fractions."""
    def walk(bound_ok):
        count = 0
        stack = [(0, 1, 1, 0)]                      # interval (a/b, c/d)
        while stack:
            a, b, c, d = stack.pop()
            p, q = a + c, b + d
            if not bound_ok(p, q):
                continue
            count += 1
            stack.append((a, b, p, q))
            stack.append((p, q, c, d))
        return count

    # both children of a node have larger p and q, so pruning is exact
    positive = walk(lambda p, q: max(p, q) <= n)
    negative = walk(lambda p, q: p + q <= n)
    zero = 1                                         # alpha = 0, degree 1
    infinity = 1
    return positive + negative + zero + infinity


def totients(n: int) -> np.ndarray:
    phi = np.arange(n + 1, dtype=np.int64)
    for k in range(2, n + 1):
        if phi[k] == k:
            phi[k::k] -= phi[k::k] // k
    return phi


def totient_formula(n: int) -> int:
    """2 + 3 * sum_{j <= n} phi(j)."""
    return 2 + 3 * int(totients(n)[1:].sum())


def ref_comparison(ns) -> list[dict]:
    """Brute count against the closed formula, with the offset surfaced."""
    rows = []
    for n in ns:
        brute, formula = ref_count(n), totient_formula(n)
        rows.append({"n": n, "brute": brute, "formula": formula, "offset": formula - brute,
                     "brute_over_n2": brute / n ** 2})
    return rows
