"""
The foliations of the pencil P4, the configuration of nine lines and twelve
points, and exact checks on invariant lines, singular points and degree-3
first integrals.

Sign convention: the foliation at parameter t is defined by omega - t*eta,
with omega = (x^3-1)x dy - (y^3-1)y dx and eta = (x^3-1)y^2 dy - (y^3-1)x^2 dx.
With this sign the special members (twelve singular points) sit at
t in {1, w, w^2, inf}.  Under omega + t*eta they would sit at {-1, -w, -w^2, inf}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from ..eisenstein import CUBE_ROOTS, INFINITY, EisRat, EisRatOrInf, format_eisrat
from ..pencil import DEGENERATE_TS, as_param
from .poly import X, Y, Poly, lie_derivative

PENCIL_SIGN = -1

ONE_P = Poly.const(1)

# 1-forms as (M, N) meaning M dx + N dy
OMEGA = (-(Y ** 3 - 1) * Y, (X ** 3 - 1) * X)
ETA = (-(Y ** 3 - 1) * X ** 2, (X ** 3 - 1) * Y ** 2)


@dataclass(frozen=True)
class VectorField:
    """Planar polynomial vector field A d/dx + B d/dy."""

    A: Poly
    B: Poly
    label: str = ""

    def lie(self, f: Poly) -> Poly:
        return lie_derivative(self.A, self.B, f)

    def degree(self) -> int:
        return max(self.A.degree(), self.B.degree())

    def foliation_degree(self) -> int:
        """Degree of the induced foliation of P^2: one less than the field
        degree when the top parts are radial (x g, y g)."""
        D = self.degree()
        top = lambda P: Poly({m: c for m, c in P.terms.items() if sum(m) == D})
        return D - 1 if (top(self.A) * Y - top(self.B) * X).is_zero() else D

    def jacobian(self) -> tuple[tuple[Poly, Poly], tuple[Poly, Poly]]:
        return ((self.A.diff(0), self.A.diff(1)), (self.B.diff(0), self.B.diff(1)))

    def chart_at_infinity(self, which: str) -> "VectorField":
        """The saturated field in the chart around [1:0:0] (which="x") or [0:1:0] (which="y").

        Chart "x": u = z/x, v = y/x.  Chart "y": u = z/y, v = x/y.
        """
        D = self.degree()
        u, v = Poly.var(0), Poly.var(1)
        Ah, Bh = self.A.homogenize(D), self.B.homogenize(D)
        if which == "x":
            sub = [ONE_P, v, u]
            lead, other = Ah.substitute(sub), Bh.substitute(sub)
        elif which == "y":
            sub = [v, ONE_P, u]
            lead, other = Bh.substitute(sub), Ah.substitute(sub)
        else:
            raise ValueError(f"unknown chart {which!r}")
        U = -(u * lead)
        V = other - v * lead
        k = min(m[0] for m in itertools.chain(U.terms, V.terms))
        if k:
            shift = lambda P: Poly({(m[0] - k, m[1]): c for m, c in P.terms.items()})
            U, V = shift(U), shift(V)
        return VectorField(U, V, f"{self.label}[chart {which}]")


@dataclass(frozen=True)
class Foliation(VectorField):
    """Member of P4 at parameter t, as the field annihilated by omega - t*eta."""

    t: EisRatOrInf = field(default=INFINITY)

    @classmethod
    def from_parameter(cls, t) -> "Foliation":
        """A = (x^3-1)(x - t y^2), B = (y^3-1)(y - t x^2); at t = inf the
        eta-field A = (x^3-1) y^2, B = (y^3-1) x^2."""
        t = as_param(t)
        if t is INFINITY:
            A, B = (X ** 3 - 1) * Y ** 2, (Y ** 3 - 1) * X ** 2
        else:
            A = (X ** 3 - 1) * (X - Y ** 2 * t)
            B = (Y ** 3 - 1) * (Y - X ** 2 * t)
        F = cls(A, B, f"F_{format_eisrat(t)}", t)
        if not annihilates(pencil_form(t), F):
            raise ArithmeticError(f"field at t={format_eisrat(t)} does not annihilate its 1-form")
        return F

    def one_form(self) -> tuple[Poly, Poly]:
        return pencil_form(self.t)

    @property
    def degenerate(self) -> bool:
        return self.t in DEGENERATE_TS


def pencil_form(t: EisRatOrInf) -> tuple[Poly, Poly]:
    """(M, N) of omega - t*eta; eta alone at t = inf."""
    if t is INFINITY:
        return ETA
    s = PENCIL_SIGN * t
    return OMEGA[0] + ETA[0] * s, OMEGA[1] + ETA[1] * s


def annihilates(form: tuple[Poly, Poly], field_: VectorField) -> bool:
    M, N = form
    return (M * field_.A + N * field_.B).is_zero()


def reference_field(p: int, q: int) -> VectorField:
    """Field of the pencil alpha*x dy - y dx at alpha = p/q, scaled by q: (p x, q y)."""
    return VectorField(X * p, Y * q, f"ref_{p}/{q}")


# ---------------------------------------------------------------------------
# configuration of nine lines and twelve points
# ---------------------------------------------------------------------------

Point = tuple[EisRat, EisRat, EisRat]   # homogeneous [x:y:z]


@dataclass(frozen=True)
class Line:
    name: str
    coeffs: tuple[EisRat, EisRat, EisRat]   # l_x X + l_y Y + l_z Z

    @property
    def affine(self) -> Poly:
        lx, ly, lz = self.coeffs
        return X * lx + Y * ly + lz

    def contains(self, p: Point) -> bool:
        return not sum((c * x for c, x in zip(self.coeffs, p)), EisRat(0))


def _r(x) -> EisRat:
    return EisRat.coerce(x)


def _lines() -> tuple[Line, ...]:
    out = []
    for z in CUBE_ROOTS:
        out.append(Line(f"x={format_eisrat(_r(z))}", (_r(1), _r(0), -_r(z))))
    for z in CUBE_ROOTS:
        out.append(Line(f"y={format_eisrat(_r(z))}", (_r(0), _r(1), -_r(z))))
    for z in CUBE_ROOTS:
        out.append(Line(f"y=({format_eisrat(_r(z))})x", (-_r(z), _r(1), _r(0))))
    return tuple(out)


def _points() -> tuple[Point, ...]:
    pts = [(_r(a), _r(b), _r(1)) for a in CUBE_ROOTS for b in CUBE_ROOTS]
    pts.append((_r(0), _r(0), _r(1)))
    pts.append((_r(1), _r(0), _r(0)))
    pts.append((_r(0), _r(1), _r(0)))
    return tuple(pts)


@dataclass(frozen=True)
class ConfigurationData:
    lines: tuple[Line, ...]
    points: tuple[Point, ...]
    torus_fixed: tuple[EisRat, EisRat, EisRat]

    def incidences(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i, line in enumerate(self.lines)
            for j, p in enumerate(self.points)
            if line.contains(p)
        ]

    def tangency_curve(self) -> Poly:
        """(x^3-1)(y^3-1)(x^3-y^3) in the affine chart z = 1."""
        return (X ** 3 - 1) * (Y ** 3 - 1) * (X ** 3 - Y ** 3)

    def fixed_points(self) -> list[tuple[EisRat, EisRat]]:
        return [(p, q) for p in self.torus_fixed for q in self.torus_fixed]


CONFIGURATION = ConfigurationData(
    _lines(),
    _points(),
    (
        EisRat(0),
        EisRat.from_coords(Fraction(2, 3), Fraction(1, 3)),
        EisRat.from_coords(Fraction(1, 3), Fraction(2, 3)),
    ),
)


def format_point(p: Point) -> str:
    x, y, z = p
    if z:
        return f"({format_eisrat(x / z)},{format_eisrat(y / z)})"
    if x:
        return f"[1:{format_eisrat(y / x)}:0]"
    return "[0:1:0]"


def normalize_point(p: Point) -> Point:
    x, y, z = p
    for c in (z, x, y):
        if c:
            return (x / c, y / c, z / c)
    raise ValueError("zero vector is not a projective point")


# ---------------------------------------------------------------------------
# invariant lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LineVerdict:
    line: Line
    invariant: bool
    cofactor: Poly | None


def check_line_invariance(F: VectorField, config: ConfigurationData = CONFIGURATION) -> list[LineVerdict]:
    """For each line l, decide whether X(l) is an exact multiple of l.

    None of the nine lines is the line at infinity, so the affine chart is
    enough: a curve invariant on a dense open set is invariant.
    """
    out = []
    for line in config.lines:
        ell = line.affine
        q, r = F.lie(ell).divmod(ell)
        out.append(LineVerdict(line, r.is_zero(), q if r.is_zero() else None))
    return out


DEFAULT_LINE_SAMPLES = ("2", "3+w", "2-w", "-1/2+w", "5/3-2*w", "7")


def certify_lines_identically(samples=DEFAULT_LINE_SAMPLES) -> dict:
    """All nine lines invariant at each sample parameter.

    X_t(l) mod l is affine in t, so agreement at any two distinct finite
    samples already forces invariance for every t; six are used.
    """
    ts = [as_param(s) for s in samples]
    if len(set(ts)) != len(ts):
        raise ValueError("sample parameters must be distinct")
    results = {}
    for t in ts:
        verdicts = check_line_invariance(Foliation.from_parameter(t))
        results[format_eisrat(t)] = [v.invariant for v in verdicts]
    passes = sum(sum(v) for v in results.values())
    return {"samples": results, "passes": passes, "identically": passes == 9 * len(ts)}


# ---------------------------------------------------------------------------
# singular points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SingularPoint:
    point: Point
    chart: str
    kind: str          # "radial", "(-3:1)" or "other"
    trace: EisRat
    det: EisRat
    on_line: str = ""

    def as_dict(self) -> dict:
        return {
            "point": format_point(self.point),
            "chart": self.chart,
            "kind": self.kind,
            "trace": format_eisrat(self.trace),
            "det": format_eisrat(self.det),
            **({"line": self.on_line} if self.on_line else {}),
        }


@dataclass(frozen=True)
class SingularityReport:
    t: EisRatOrInf
    degenerate: bool
    config: tuple[SingularPoint, ...]
    extra: tuple[SingularPoint, ...]

    @property
    def total(self) -> int:
        return len(self.config) + len(self.extra)


def _chart_coords(F: VectorField, p: Point) -> tuple[VectorField, str, tuple[EisRat, EisRat]]:
    x, y, z = p
    if z:
        return F, "affine", (x / z, y / z)
    if x:
        return F.chart_at_infinity("x"), "x", (z / x, y / x)
    return F.chart_at_infinity("y"), "y", (z / y, x / y)


def classify_point(F: VectorField, p: Point, on_line: str = "") -> SingularPoint:
    """Verify p is singular and classify its linear part exactly.

    Raises ValueError when p is not a zero of the field.
    """
    G, chart, (a, b) = _chart_coords(F, p)
    if G.A(a, b) or G.B(a, b):
        raise ValueError(f"{format_point(p)} is not singular for {F.label}")
    (j00, j01), (j10, j11) = ((P(a, b) for P in row) for row in G.jacobian())
    j00, j01, j10, j11 = (EisRat.coerce(v) for v in (j00, j01, j10, j11))
    tr, det = j00 + j11, j00 * j11 - j01 * j10
    if not j01 and not j10 and j00 == j11 and j00:
        kind = "radial"
    elif not (3 * tr * tr + 4 * det) and tr:
        kind = "(-3:1)"
    else:
        kind = "other"
    return SingularPoint(p, chart, kind, tr, det, on_line)


def extra_singular_points(t: EisRat) -> list[tuple[Point, str]]:
    """Closed-form non-configuration singular points, one per line.

    Restricting the field to each line: on x = z0 the second component is
    (y^3-1)(y - t z0^2), giving (z0, t z0^2); symmetrically (t z0^2, z0) on
    y = z0; on y = z0 x both components reduce to multiples of
    (x^3-1) x (1 - t z0^2 x), giving (z0/t, z0^2/t) = [z0 : z0^2 : t].
    """
    out = []
    one = EisRat(1)
    for z in CUBE_ROOTS:
        z = EisRat(z)
        out.append(((z, t * z * z, one), f"x={format_eisrat(z)}"))
    for z in CUBE_ROOTS:
        z = EisRat(z)
        out.append(((t * z * z, z, one), f"y={format_eisrat(z)}"))
    for z in CUBE_ROOTS:
        z = EisRat(z)
        out.append(((z, z * z, t), f"y=({format_eisrat(z)})x"))
    return out


def singular_points(F: Foliation, config: ConfigurationData = CONFIGURATION) -> SingularityReport:
    """The twelve configuration points (checked radial) and, for a
    nondegenerate parameter, the nine closed-form extra points."""
    conf = tuple(classify_point(F, p) for p in config.points)
    if F.degenerate:
        return SingularityReport(F.t, True, conf, ())
    extra = tuple(classify_point(F, p, name) for p, name in extra_singular_points(F.t))
    seen = {normalize_point(p.point) for p in conf}
    for sp in extra:
        key = normalize_point(sp.point)
        if key in seen:
            raise ArithmeticError(f"extra point {format_point(sp.point)} is not distinct")
        seen.add(key)
    return SingularityReport(F.t, False, conf, extra)


# ---------------------------------------------------------------------------
# degree-3 first integrals at the special parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubicIntegral:
    numerator: Poly
    denominator: Poly
    lines_num: tuple[str, ...]
    lines_den: tuple[str, ...]
    certificate: Poly     # X(C_i) C_j - C_i X(C_j), identically zero

    def as_dict(self) -> dict:
        return {
            "numerator": str(self.numerator),
            "denominator": str(self.denominator),
            "lines_num": list(self.lines_num),
            "lines_den": list(self.lines_den),
            "certificate": str(self.certificate),
        }


def _candidate_cubics(config: ConfigurationData):
    """The three concurrent-line cubics x^3-1, y^3-1, x^3-y^3 first, then every
    other product of three of the nine lines."""
    lines = config.lines
    concurrent = [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    rest = [c for c in itertools.combinations(range(9), 3) if c not in concurrent]
    return [(idx, tuple(lines[i] for i in idx)) for idx in concurrent + rest]


def degenerate_first_integral(F: Foliation, config: ConfigurationData = CONFIGURATION) -> CubicIntegral | None:
    """Search for C_i/C_j, products of three invariant lines with no line in
    common, with X(C_i) C_j - C_i X(C_j) = 0 exactly.  None if no pair works."""
    cofactors = []
    for v in check_line_invariance(F, config):
        if not v.invariant:
            return None
        cofactors.append(v.cofactor)
    cands = _candidate_cubics(config)
    sums = [sum((cofactors[i] for i in idx), Poly()) for idx, _ in cands]
    for (i, (idx_i, li)), (j, (idx_j, lj)) in itertools.combinations(enumerate(cands), 2):
        if set(idx_i) & set(idx_j) or sums[i] != sums[j]:
            continue
        Ci = li[0].affine * li[1].affine * li[2].affine
        Cj = lj[0].affine * lj[1].affine * lj[2].affine
        cert = F.lie(Ci) * Cj - Ci * F.lie(Cj)
        if cert.is_zero():
            return CubicIntegral(Ci, Cj, tuple(l.name for l in li), tuple(l.name for l in lj), cert)
    return None
