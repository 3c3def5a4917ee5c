"""
Parameters of the degree-4 pencil P4 and the degree of their rational first
integrals.

A parameter t of P4 corresponds to the linear foliation dy = alpha*dx on
E0 x E0 through the affine map t = Lambda(alpha) = (w**2 - 1)*alpha + 1.
Writing alpha = alpha1/beta1 with a coprime pair in Z[w], the degree of the
first integral is a sum of four norms, one per reference curve
E_{1,0}, E_{0,1}, E_{1,1}, E_{1,-w}.

Two closed forms are provided.  ``Variant.PAPER`` intersects the reference
curves with E_{alpha1,beta1}; ``Variant.CORRECTED`` intersects them with the
leaf {(z, alpha*z)} = E_{beta1,alpha1}.  They differ only in the last norm.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .eisenstein import (
    INFINITY,
    ONE,
    W,
    ZERO,
    EisInt,
    EisRat,
    EisRatOrInf,
    format_eisrat,
    coprime,
    norm_ab,
    parse_eisrat,
)
from .lattice import REFERENCE_CURVES, intersection_number


class Variant(enum.Enum):
    PAPER = "paper"
    CORRECTED = "corrected"


class LeafOrientation(enum.Enum):
    AS_WRITTEN = "as_written"          # E_{alpha1, beta1}
    LEAF_OF_ALPHA = "leaf_of_alpha"    # {(z, alpha z)} = E_{beta1, alpha1}


DEFAULT_VARIANT = Variant.CORRECTED

# Lambda(alpha) = SLOPE * alpha + 1, SLOPE = w**2 - 1 = -2 - w
SLOPE = EisRat(EisInt(-2, -1))

DEGENERATE_ALPHAS = (EisRat(0), EisRat(1), EisRat(-W), INFINITY)
DEGENERATE_TS = (EisRat(1), EisRat(W * W), EisRat(W), INFINITY)


def as_param(t) -> EisRatOrInf:
    """Accept EisRat, INFINITY, ints, EisInt or a literal string."""
    if t is INFINITY:
        return t
    if isinstance(t, str):
        return parse_eisrat(t)
    return EisRat.coerce(t)


def lambda_map(alpha) -> EisRatOrInf:
    """Lambda(alpha) = (w**2 - 1)*alpha + 1, with Lambda(inf) = inf."""
    alpha = as_param(alpha)
    if alpha is INFINITY:
        return INFINITY
    return SLOPE * alpha + 1


def alpha_of(t) -> EisRatOrInf:
    """Inverse of lambda_map: alpha = (t - 1)/(-2 - w)."""
    t = as_param(t)
    if t is INFINITY:
        return INFINITY
    return (t - 1) / SLOPE


def coprime_pair(alpha) -> tuple[EisInt, EisInt]:
    """(alpha1, beta1) with alpha = alpha1/beta1, beta1 canonical; inf -> (1, 0)."""
    alpha = as_param(alpha)
    if alpha is INFINITY:
        return ONE, ZERO
    return alpha.num, alpha.den


def is_degenerate(t) -> bool:
    return as_param(t) in DEGENERATE_TS


@dataclass(frozen=True)
class PencilParam:
    """A parameter t together with alpha = alpha_of(t) and its coprime pair."""

    t: EisRatOrInf
    alpha: EisRatOrInf
    alpha1: EisInt
    beta1: EisInt
    degenerate: bool

    @classmethod
    def from_t(cls, t) -> "PencilParam":
        t = as_param(t)
        alpha = alpha_of(t)
        a1, b1 = coprime_pair(alpha)
        return cls(t, alpha, a1, b1, t in DEGENERATE_TS)

    @classmethod
    def from_alpha(cls, alpha) -> "PencilParam":
        return cls.from_t(lambda_map(alpha))

    @classmethod
    def from_pair(cls, alpha1: EisInt, beta1: EisInt, trusted: bool = False) -> "PencilParam":
        """Build from alpha1/beta1.  With ``trusted`` the caller promises the
        pair is coprime and beta1 canonical, which skips a gcd."""
        if not beta1:
            return cls.from_t(INFINITY)
        if not trusted and (beta1.canonical() != beta1 or not coprime(alpha1, beta1)):
            return cls.from_alpha(EisRat(alpha1, beta1))
        alpha = EisRat._from_reduced(alpha1, beta1)
        t = EisRat(SLOPE.num * alpha1 + beta1, beta1)
        return cls(t, alpha, alpha1, beta1, t in DEGENERATE_TS)

    @property
    def pair(self) -> tuple[EisInt, EisInt]:
        return self.alpha1, self.beta1

    def __str__(self):
        return format_eisrat(self.t)


@dataclass(frozen=True)
class Integrability:
    integrable: bool
    k: int   # least k >= 1 with k*alpha*Z[w] contained in Z[w]


def is_integrable(t) -> Integrability:
    """Every parameter of Q(w) u {inf} is integrable; also return the least k
    with k*alpha in Z[w], i.e. the index after which the leaf through the
    origin closes up.  The leaf at alpha = inf is {0} x E0, so k = 1 there."""
    alpha = alpha_of(t)
    if alpha is INFINITY:
        return Integrability(True, 1)
    r, s = alpha.coords()
    return Integrability(True, _lcm(r.denominator, s.denominator))


def leaf_closure_index_bruteforce(alpha: EisRat, limit: int = 10_000) -> int:
    """Least k with k*alpha*(m + n*w) in Z[w] for the lattice generators 1, w."""
    for k in range(1, limit + 1):
        if all((k * alpha * g).is_integral() for g in (EisRat(1), EisRat(W))):
            return k
    raise ValueError("no closing index below limit")


def _lcm(a: int, b: int) -> int:
    from math import gcd as igcd
    return a * b // igcd(a, b)


# ---------------------------------------------------------------------------
# degree formulas
# ---------------------------------------------------------------------------

def degree_of_pair(alpha1: EisInt, beta1: EisInt, variant: Variant = DEFAULT_VARIANT) -> int:
    """Four-norm degree of a coprime pair."""
    a, b, c, d = alpha1.a, alpha1.b, beta1.a, beta1.b
    base = norm_ab(c, d) + norm_ab(a, b) + norm_ab(c - a, d - b)
    if variant is Variant.PAPER:
        # beta1 + w*alpha1
        return base + norm_ab(c - b, d + a - b)
    # alpha1 + w*beta1
    return base + norm_ab(a - d, b + c - d)


def degree(t, variant: Variant = DEFAULT_VARIANT) -> int:
    """Degree of the rational first integral of the P4 foliation at t."""
    a1, b1 = coprime_pair(alpha_of(t))
    return degree_of_pair(a1, b1, Variant(variant))


def degree_via_intersections(t, orientation: LeafOrientation = LeafOrientation.LEAF_OF_ALPHA) -> int:
    """Sum of intersection numbers of the leaf with the four reference curves."""
    a1, b1 = coprime_pair(alpha_of(t))
    leaf = (a1, b1) if LeafOrientation(orientation) is LeafOrientation.AS_WRITTEN else (b1, a1)
    total = sum(intersection_number(leaf, F) for F in REFERENCE_CURVES)
    assert isinstance(total, Fraction) and total.denominator == 1
    return int(total)


def quartic_form(a: int, b: int, c: int, d: int) -> int:
    """3(a^2 - ab + b^2 - ac + c^2 + ad - bd - cd + d^2), for alpha1 = a + bw, beta1 = c + dw."""
    return 3 * (a * a - a * b + b * b - a * c + c * c + a * d - b * d - c * d + d * d)


@dataclass(frozen=True)
class DegreeRecord:
    param: PencilParam
    d_paper: int
    d_corrected: int
    d_intersection: int

    @property
    def quartic_inputs(self) -> tuple[int, int, int, int]:
        p = self.param
        return p.alpha1.a, p.alpha1.b, p.beta1.a, p.beta1.b

    def degree(self, variant: Variant = DEFAULT_VARIANT) -> int:
        return self.d_paper if Variant(variant) is Variant.PAPER else self.d_corrected

    def as_dict(self) -> dict:
        p = self.param
        a, b, c, d = self.quartic_inputs
        return {
            "t": format_eisrat(p.t),
            "alpha": format_eisrat(p.alpha),
            "a": a, "b": b, "c": c, "d": d,
            "d_paper": self.d_paper,
            "d_corrected": self.d_corrected,
            "degenerate": p.degenerate,
        }


def degree_record(param: PencilParam, check_intersections: bool = True) -> DegreeRecord:
    a1, b1 = param.pair
    d_corr = degree_of_pair(a1, b1, Variant.CORRECTED)
    d_int = degree_via_intersections(param.t, LeafOrientation.LEAF_OF_ALPHA) if check_intersections else d_corr
    return DegreeRecord(param, degree_of_pair(a1, b1, Variant.PAPER), d_corr, d_int)
