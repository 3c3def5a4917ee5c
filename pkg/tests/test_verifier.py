import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import eisrats
from eisenfoil.eisenstein import INFINITY, EisInt, EisRat, W, parse_eisrat
from eisenfoil.pencil import DEGENERATE_TS
from eisenfoil.verifier.extactic import (
    PRIME_HI,
    PRIME_LO,
    BadPrime,
    Verdict,
    cube_root_of_unity,
    det_mod,
    extactic_certifier,
    extactic_matrix_mod,
    is_prime,
    minimal_degree,
    monomials,
    random_prime_1mod3,
    reduce_mod,
)
from eisenfoil.verifier.foliation import (
    CONFIGURATION,
    Foliation,
    VectorField,
    annihilates,
    certify_lines_identically,
    check_line_invariance,
    degenerate_first_integral,
    extra_singular_points,
    pencil_form,
    reference_field,
    singular_points,
)
from eisenfoil.verifier.poly import Poly, X, Y, lie_derivative

# ---------------------------------------------------------------------------
# polynomials

small_coef = st.builds(EisRat, st.builds(EisInt, st.integers(-5, 5), st.integers(-5, 5)),
                       st.sampled_from([EisInt(1, 0), EisInt(2, 0), EisInt(2, 1)]))
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small_coef, max_size=5).map(Poly)

x_s, y_s, w_s = sympy.symbols("x y w")


def to_sympy(P: Poly):
    expr = 0
    for (i, j), c in P.terms.items():
        num = c.num.a + c.num.b * w_s
        den = c.den.a + c.den.b * w_s
        expr += num / den * x_s ** i * y_s ** j
    return expr


def same_in_q_w(e1, e2) -> bool:
    # reduce modulo w^2 + w + 1 after clearing denominators
    diff = sympy.together(sympy.expand(e1 - e2))
    num, _ = sympy.fraction(diff)
    return sympy.rem(sympy.expand(num), w_s ** 2 + w_s + 1, w_s) == 0


@settings(max_examples=40)
@given(polys, polys)
def test_poly_product_matches_sympy(f, g):
    assert same_in_q_w(to_sympy(f * g), to_sympy(f) * to_sympy(g))


@settings(max_examples=100)
@given(polys, polys, polys, polys)
def test_lie_derivative_leibniz(A, B, f, g):
    assert lie_derivative(A, B, f * g) == f * lie_derivative(A, B, g) + g * lie_derivative(A, B, f)
    assert lie_derivative(A, B, f + g) == lie_derivative(A, B, f) + lie_derivative(A, B, g)


@settings(max_examples=100)
@given(polys, polys)
def test_division_identity(f, g):
    if not g:
        return
    q, r = f.divmod(g)
    assert q * g + r == f
    assert (f * g).divides_by(g)


def test_poly_basics():
    f = (X + 1) ** 2
    assert f == X * X + 2 * X + 1
    assert f.degree() == 2 and Poly().degree() == -1
    assert f(EisRat(W), 0) == EisRat(W) ** 2 + 2 * EisRat(W) + 1
    assert f.diff(0) == 2 * X + 2
    assert f.homogenize().nvars == 3
    assert ((X - Y) * (X + Y)).exact_div(X - Y) == X + Y
    with pytest.raises(ArithmeticError):
        (X + 1).exact_div(Y)


# ---------------------------------------------------------------------------
# the pencil of fields

@settings(max_examples=15)
@given(eisrats)
def test_field_annihilates_its_form(t):
    F = Foliation.from_parameter(t)
    assert annihilates(pencil_form(t), F)
    assert F.foliation_degree() == 4


def test_field_at_infinity():
    F = Foliation.from_parameter(INFINITY)
    assert F.A == (X ** 3 - 1) * Y ** 2 and F.B == (Y ** 3 - 1) * X ** 2
    assert F.degenerate and F.foliation_degree() == 4


def test_foliation_degree():
    assert Foliation.from_parameter("2-w").A.degree() == 5
    assert VectorField(X ** 2, Y).foliation_degree() == 2


def test_configuration_incidences():
    inc = CONFIGURATION.incidences()
    assert len(inc) == 36
    assert all(sum(1 for i, _ in inc if i == k) == 4 for k in range(9))
    assert all(sum(1 for _, j in inc if j == k) == 3 for k in range(12))


def test_torus_fixed_points_fixed_by_w():
    for p in CONFIGURATION.torus_fixed:
        assert (EisRat(W) * p - p).is_integral()
    assert len(CONFIGURATION.fixed_points()) == 9


def test_line_examples():
    F = Foliation.from_parameter("2-w")
    verdicts = {v.line.name: v for v in check_line_invariance(F)}
    assert verdicts["x=1"].invariant
    assert verdicts["y=(w)x"].invariant
    # a line outside the configuration is not invariant
    assert F.lie(X + Y - 5).divmod(X + Y - 5)[1]


def test_lines_invariant_identically():
    cert = certify_lines_identically()
    assert cert["passes"] == 54 and cert["identically"]


def test_singular_points_nondegenerate():
    rep = singular_points(Foliation.from_parameter("3+w"))
    assert len(rep.config) == 12 and all(p.kind == "radial" for p in rep.config)
    assert len(rep.extra) == 9
    for p in rep.extra:
        assert p.kind == "(-3:1)"
        assert 3 * p.trace * p.trace + 4 * p.det == 0 and p.trace
    assert rep.total == 21


def test_extra_point_on_diagonal():
    t = parse_eisrat("3+w")
    F = Foliation.from_parameter(t)
    on_diag = [p for p, line in extra_singular_points(t) if line == "y=(1)x"]
    assert len(on_diag) == 1
    x, y, z = on_diag[0]
    assert x == y and F.A(x / z, y / z) == 0 and F.B(x / z, y / z) == 0


def test_singular_points_degenerate():
    rep = singular_points(Foliation.from_parameter(1))
    assert rep.degenerate and not rep.extra and len(rep.config) == 12


@pytest.mark.parametrize("t", DEGENERATE_TS, ids=str)
def test_degenerate_first_integrals(t):
    F = Foliation.from_parameter(t)
    cubic = degenerate_first_integral(F)
    assert cubic is not None and cubic.certificate.is_zero()
    assert cubic.numerator.degree() == cubic.denominator.degree() == 3
    assert F.lie(cubic.numerator) * cubic.denominator == cubic.numerator * F.lie(cubic.denominator)


@pytest.mark.parametrize("t", ["2-w", "3+w"])
def test_no_cubic_integral_off_the_degenerate_set(t):
    assert degenerate_first_integral(Foliation.from_parameter(t)) is None


# ---------------------------------------------------------------------------
# extactic certifier

def test_primes():
    rng = random.Random(5)
    for _ in range(20):
        p = random_prime_1mod3(rng)
        assert PRIME_LO < p < PRIME_HI and p % 3 == 1 and sympy.isprime(p)
        w = cube_root_of_unity(p, rng)
        assert w != 1 and pow(w, 3, p) == 1 and (w * w + w + 1) % p == 0
    for n in range(1, 2000):
        assert is_prime(n) == sympy.isprime(n)


def test_reduce_mod():
    p = 1000003
    w = cube_root_of_unity(p)
    assert reduce_mod(EisRat(W), p, w) == w
    assert reduce_mod(EisRat(1, 2), p, w) * 2 % p == 1
    with pytest.raises(BadPrime):
        reduce_mod(EisRat(1, 7), 7, 2)


def exact_extactic_det(field_: VectorField, d: int, x0: int, y0: int) -> EisRat:
    """Full polynomial Lie derivatives and exact elimination over Q(w)."""
    rows = []
    for i, j in monomials(d):
        f = X ** i * Y ** j
        row = []
        for _ in range(len(monomials(d))):
            row.append(f(x0, y0))
            f = field_.lie(f)
        rows.append(row)
    n, det = len(rows), EisRat(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c]), None)
        if piv is None:
            return EisRat(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c]
        for r in range(c + 1, n):
            f = rows[r][c] / rows[c][c]
            rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return det


@pytest.mark.parametrize("field_, d", [
    (reference_field(3, 2), 2),
    (Foliation.from_parameter("2-w"), 1),
    (Foliation.from_parameter("2-w"), 2),
    (Foliation.from_parameter(1), 2),
])
def test_jets_match_exact_determinant(field_, d):
    rng = random.Random(11)
    p = random_prime_1mod3(rng)
    w = cube_root_of_unity(p, rng)
    for x0, y0 in [(2, 3), (-1, 5)]:
        exact = exact_extactic_det(field_, d, x0, y0)
        fast = det_mod(extactic_matrix_mod(field_.A, field_.B, d, x0 % p, y0 % p, p, w), p)
        assert fast == reduce_mod(exact, p, w)


def test_reference_pencil_minimal_degrees():
    for (p, q), expected in {(3, 2): 3, (-1, 1): 2, (1, 1): 1, (-3, 4): 7}.items():
        assert minimal_degree(reference_field(p, q), 8).minimal == expected


def test_degenerate_parameter_certified_at_three():
    F = Foliation.from_parameter(1)
    assert extactic_certifier(F, 3).verdict is Verdict.CONSISTENT_WITH_D
    assert extactic_certifier(F, 2).verdict is Verdict.NO_INTEGRAL_LEQ_D


def test_certifier_deterministic_and_recorded():
    F = Foliation.from_parameter("2-w")
    a, b = extactic_certifier(F, 3, seed=7), extactic_certifier(F, 3, seed=7)
    assert a.as_dict() == b.as_dict()
    rec = a.as_dict()
    assert rec["t"] == "2-w" and rec["verdict"] == "NO_INTEGRAL_LEQ_d"
    assert len(rec["primes"]) == 2 and len(rec["points"]) == 6


def test_certifier_argument_checks():
    F = Foliation.from_parameter(1)
    with pytest.raises(ValueError):
        extactic_certifier(F, -1)
    with pytest.raises(ValueError):
        extactic_certifier(F, 3, trials=0)
