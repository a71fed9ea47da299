from fractions import Fraction
from math import gcd, lcm

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lieorder.quasipoly import (
    FitError,
    GcdExpression,
    QuasiPolynomial,
    detect_period,
    emit_table,
    evaluate,
    fit,
    format_poly,
    from_json,
    interpolate,
    poly_eval,
    residue_label,
    to_json,
)


def g2_sampler(m):
    return (m * m + 6 * m + {0: 12, 1: 5, 2: 8, 3: 9, 4: 8, 5: 5}[m % 6]) // 12


def test_fit_g2_residue_zero():
    qp = fit(g2_sampler, 2, 6)
    assert qp.polys[0] == (Fraction(1), Fraction(1, 2), Fraction(1, 12))
    assert format_poly(qp.polys[0], 12) == "(m^2+6m+12)/12"
    assert evaluate(qp, 12) == 19


def test_fit_constant():
    qp = fit(lambda m: 1, 0, 1)
    assert qp.polys == ((Fraction(1),),)


def test_fit_rejects_wrong_period():
    with pytest.raises(FitError):
        fit(g2_sampler, 2, 5)


def test_fit_g2_column_seven():
    def col7(m):
        r = m % 12
        if r == 0:
            return Fraction(m * (m - 9), 12) + 2
        if r in (1, 5, 7, 11):
            return Fraction((m - 1) * (m - 5), 12)
        if r in (2, 10):
            return Fraction((m - 2) * (m - 7), 12)
        if r in (3, 9):
            return Fraction((m - 3) ** 2, 12)
        if r in (4, 8):
            return Fraction((m - 4) * (m - 5), 12)
        return Fraction((m - 3) * (m - 6), 12)

    qp = fit(col7, 2, 12)
    assert format_poly(qp.polys[0], 12) == "(m^2-9m+24)/12"


def test_evaluate_rejects_non_integers():
    qp = QuasiPolynomial(1, ((Fraction(1, 2),),))
    with pytest.raises(ArithmeticError):
        evaluate(qp, 1)
    with pytest.raises(ValueError):
        evaluate(qp, 0)


@given(st.lists(st.fractions(max_denominator=7), min_size=1, max_size=5))
def test_interpolate_round_trip(coeffs):
    xs = list(range(3, 3 + len(coeffs)))
    ys = [poly_eval(coeffs, x) for x in xs]
    p = interpolate(xs, ys)
    assert all(poly_eval(p, x) == y for x, y in zip(xs, ys))


terms = st.lists(
    st.tuples(st.integers(-5, 5), st.integers(0, 2), st.lists(st.sampled_from([2, 3, 4, 6, 12]), max_size=2)),
    max_size=5,
)


def _build(ts):
    e = GcdExpression()
    for c, a, bag in ts:
        e = e + GcdExpression.term(c, a, bag)
    return e


def _direct(ts, m):
    total = Fraction(0)
    for c, a, bag in ts:
        v = Fraction(c) * m**a
        for d in bag:
            v *= gcd(d, m)
        total += v
    return total


@given(terms)
def test_expression_evaluates_termwise(ts):
    e = _build(ts)
    assert all(e.evaluate(m) == _direct(ts, m) for m in range(1, 40))


@given(terms)
def test_detected_period_is_minimal_and_valid(ts):
    e = _build(ts)
    p = detect_period(e)
    qp = e.to_quasipoly()
    assert qp.period == p
    assert all(poly_eval(qp.poly(m), m) == e.evaluate(m) for m in range(1, 60))
    # no proper divisor is a period of the residue table
    for q in range(1, p):
        if p % q == 0:
            assert any(qp.polys[r] != qp.polys[r % q] for r in range(p))


def test_detect_period_examples():
    assert detect_period(GcdExpression.term(3, 0)) == 1
    assert detect_period(GcdExpression()) == 1
    # gcd(2,m) - gcd(2,m) cancels
    e = GcdExpression.term(1, 1, [2]) - GcdExpression.term(1, 1, [2]) + GcdExpression.term(1, 0, [4])
    assert detect_period(e) == 4


def test_gcd_expression_json_round_trip():
    e = GcdExpression.term(Fraction(1, 12), 2) + GcdExpression.term(Fraction(1, 4), 0, [6, 2])
    assert GcdExpression.from_json(e.to_json()) == e


def test_emit_table_formats():
    qp = fit(g2_sampler, 2, 6)
    md = emit_table(qp, "markdown", 12, "N(G2,m)")
    assert md.splitlines()[2] == "| 0 | (m^2+6m+12)/12 |"
    assert len(md.splitlines()) == 6
    csv = emit_table(qp, "csv", 12)
    assert csv.splitlines()[0].startswith("residue")
    assert from_json(to_json(qp, 12)) == qp
    import json

    assert from_json(json.loads(emit_table(qp, "json", 12))) == qp


def test_constant_column_renders_over_denominator():
    qp = QuasiPolynomial(1, ((Fraction(1),),))
    assert "1152/1152" in emit_table(qp, "markdown", 1152)


def test_residue_labels():
    assert residue_label([1, 5, 7, 11], 12) == "±1,±5"
    assert residue_label([0], 6) == "0"
    assert residue_label([6], 12) == "6"
    assert residue_label([2, 10], 12) == "±2"
