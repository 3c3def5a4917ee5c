import math

import numpy as np
import pytest

from eisenfoil.eisenstein import INFINITY, EisInt, EisRat, format_eisrat
from eisenfoil.lattice import H
from eisenfoil.pencil import DEGENERATE_TS, PencilParam, Variant, degree
from eisenfoil.counting import (
    CSV_COLUMNS,
    degree_spectrum,
    enumerate_parameters,
    growth_report,
    log_grid,
    pi_p4,
    ref_comparison,
    ref_count,
    ref_count_stern_brocot,
    ref_degree,
    totient_formula,
    totients,
    variant_difference,
)


def naive_parameters(n, variant):
    """Every alpha1/beta1 in a box, deduplicated through EisRat."""
    found = {INFINITY} if degree(INFINITY, variant) <= n else set()
    r = math.isqrt(4 * n // 3) + 1
    box = [EisInt(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)]
    for b1 in box:
        if not b1:
            continue
        for a1 in box:
            t = PencilParam.from_alpha(EisRat(a1, b1)).t
            if degree(t, variant) <= n:
                found.add(t)
    return {format_eisrat(t) for t in found}


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("n", [3, 6, 9, 12, 21])
def test_enumeration_matches_naive_oracle(n, variant):
    report = enumerate_parameters(n, variant)
    names = [format_eisrat(r.param.t) for r in report.parameters]
    assert len(names) == len(set(names)) == report.count
    assert set(names) == naive_parameters(n, variant)


def test_small_counts():
    assert enumerate_parameters(2).count == 0
    three = {r.param.t for r in enumerate_parameters(3, Variant.CORRECTED).parameters}
    assert set(DEGENERATE_TS) <= three


def test_monotone():
    counts = [pi_p4(n) for n in range(1, 60)]
    assert counts == sorted(counts)
    assert counts == [enumerate_parameters(n).count for n in range(1, 60)]


def test_every_degree_is_a_multiple_of_three():
    for v in Variant:
        assert np.all(degree_spectrum(300, v) % 3 == 0)


def test_sorted_deterministic_order():
    report = enumerate_parameters(30)
    keys = [(r.d_corrected, r.param.beta1.norm(), r.param.alpha1.norm(), format_eisrat(r.param.t))
            for r in report.parameters]
    assert keys == sorted(keys)
    again = enumerate_parameters(30)
    assert [r.as_dict() for r in again.parameters] == [r.as_dict() for r in report.parameters]


def test_record_fields_consistent():
    for r in enumerate_parameters(18, Variant.PAPER).parameters:
        assert r.d_paper == degree(r.param.t, Variant.PAPER) <= 18
        assert r.d_corrected == degree(r.param.t, Variant.CORRECTED)


def test_variant_difference():
    diff = variant_difference(9)
    paper = {format_eisrat(r.param.t) for r in enumerate_parameters(9, Variant.PAPER).parameters}
    corrected = {format_eisrat(r.param.t) for r in enumerate_parameters(9, Variant.CORRECTED).parameters}
    assert set(diff["paper_only"]) == paper - corrected
    assert set(diff["corrected_only"]) == corrected - paper
    for t in diff["paper_only"]:
        assert degree(t, Variant.PAPER) != degree(t, Variant.CORRECTED)


def test_csv():
    lines = enumerate_parameters(6).csv_lines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1].startswith("inf,inf,1,0,0,0,")


def test_errors():
    with pytest.raises(ValueError):
        enumerate_parameters(0)
    with pytest.raises(ValueError):
        growth_report(5)


def test_ref_degree():
    assert ref_degree(1, 1) == 1
    assert ref_degree(-1, 1) == 2
    assert ref_degree(3, 2) == 3
    with pytest.raises(ValueError):
        ref_degree(2, 4)
    with pytest.raises(ValueError):
        ref_degree(1, 0)


def test_totients():
    phi = totients(30)
    assert [int(phi[k]) for k in range(1, 31)] == [
        sum(1 for j in range(1, k + 1) if math.gcd(j, k) == 1) for k in range(1, 31)
    ]
    assert totient_formula(1) == 5
    assert totient_formula(2) == 8


@pytest.mark.parametrize("n", [1, 2, 5, 17, 60])
def test_ref_count_two_oracles(n):
    assert ref_count(n) == ref_count_stern_brocot(n)


def test_ref_comparison_reports_offset():
    rows = ref_comparison([1, 2, 10])
    assert [r["offset"] for r in rows] == [r["formula"] - r["brute"] for r in rows]
    assert all(r["brute"] == ref_count(r["n"]) for r in rows)


def test_growth_report():
    rep = growth_report(300, zeta_terms=10_000)
    assert [r.n for r in rep.rows] == log_grid(10, 300)
    for row in rep.rows:
        assert row.pi == pi_p4(row.n)
        assert row.H == H(row.n)
        assert row.pi <= rep.fitted_C * row.n ** 2


def test_ref_count_is_three_totient_sums():
    # positive fractions 2*Phi - 1, negative Phi - 1, plus 0 and inf
    for n in range(1, 200):
        assert ref_count(n) == 3 * int(totients(n)[1:].sum()) == totient_formula(n) - 2
