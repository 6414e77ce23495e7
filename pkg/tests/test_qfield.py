"""Field arithmetic in Q(i)(s, Q) with s = q^{1/2}."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlbsw.qfield import (
    GaussRat,
    I,
    LaurentPoly,
    PoleError,
    Qv,
    RatFunc,
    S,
    SpecializationError,
    as_ratfunc,
    delta_Q,
    delta_q,
    eval_point,
    kappa,
    parse,
    qfact,
    qint,
    qq,
    qsym,
    render,
    specialize,
)

# --------------------------------------------------------------------------
# strategies

coeffs = st.integers(-3, 3)
monos = st.tuples(st.integers(-4, 4), st.integers(-2, 2))
laurents = st.dictionaries(monos, coeffs, max_size=3).map(lambda d: RatFunc(LaurentPoly(d)))
s_only = st.dictionaries(st.tuples(st.integers(-4, 4), st.just(0)), coeffs, max_size=3).map(
    lambda d: RatFunc(LaurentPoly(d))
)
nonzero_laurents = laurents.filter(bool)


@st.composite
def ratfuncs(draw: st.DrawFn) -> RatFunc:
    return draw(laurents) / draw(nonzero_laurents)


# --------------------------------------------------------------------------
# frozen values


def test_q_is_s_squared():
    assert qq == S * S
    assert render(qq) == "(s^2)"


def test_loop_constants():
    assert render(delta_q()) == "(-s^2 - s^-2)"
    assert render(delta_Q()) == "(-Q - Q^-1)"
    assert kappa() == qq / Qv + Qv / qq


@pytest.mark.parametrize(
    "k, expected",
    [
        (0, "(0)"),
        (1, "(1)"),
        (2, "(1 + s^-4)"),
        (3, "(1 + s^-4 + s^-8)"),
    ],
)
def test_qint_frozen(k, expected):
    assert render(qint(k)) == expected


def test_qint_is_geometric_sum():
    q = qq
    for k in range(1, 6):
        assert qint(k) == (1 - q ** (-2 * k)) / (1 - q**-2)


def test_qfact_products():
    assert qfact(0) == as_ratfunc(1)
    assert qfact(3) == qint(1) * qint(2) * qint(3)


def test_qsym_balanced():
    assert render(qsym(2)) == "(s^2 + s^-2)"
    assert qsym(3) == (qq**3 - qq**-3) / (qq - qq.inverse())
    assert qsym(-2) == -qsym(2)


def test_qint_at_two():
    assert eval_point(qint(2), 2) == GaussRat(17, 0) / 16


def test_kappa_at_one():
    assert eval_point(kappa(), 1, 1) == GaussRat(2)


def test_delta_Q_vanishes_at_i():
    assert specialize(delta_Q(), {"Q": "i"}).is_zero()


def test_specialize_Q_to_function_of_s():
    assert specialize(Qv, {"Q": I * qq}) == I * S**2


def test_specialize_reports_vanishing_factor():
    f = as_ratfunc(1) / (qq + I * Qv)
    with pytest.raises(SpecializationError, match=r"s\^2 \+ i\*Q"):
        specialize(f, {"Q": I * qq})


def test_eval_pole():
    with pytest.raises(PoleError):
        eval_point(as_ratfunc(1) / (S - 1), 1)


def test_canonical_form_cancels():
    f = (S**2 - 1) / (S - 1)
    assert f == S + 1
    assert f.den.is_one()


def test_parse_render_examples():
    assert parse("q") == qq
    assert parse("i^2") == as_ratfunc(-1)
    assert parse("(s^2 + Q)/(s - 1)") == (S**2 + Qv) / (S - 1)
    with pytest.raises(ValueError):
        parse("s^(1/2)")
    with pytest.raises(ValueError):
        parse("import os")


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        as_ratfunc(1) / as_ratfunc(0)


def test_gauss_rat_inverse():
    z = GaussRat(3, 4)
    assert z * z.inverse() == GaussRat(1)
    assert z.conjugate() == GaussRat(3, -4)


# --------------------------------------------------------------------------
# properties


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == as_ratfunc(0)


@given(ratfuncs())
def test_inverse(a):
    if a:
        assert a * a.inverse() == as_ratfunc(1)


@given(ratfuncs())
def test_render_parse_roundtrip(a):
    assert parse(render(a)) == a


@given(ratfuncs(), ratfuncs())
def test_equal_values_hash_equal(a, b):
    x, y = a * b, b * a
    assert x == y and hash(x) == hash(y)


@given(s_only, s_only)
def test_evaluation_is_ring_homomorphism(a, b):
    p = GaussRat(3, 0) / 7
    assert eval_point(a * b, p) == eval_point(a, p) * eval_point(b, p)
    assert eval_point(a + b, p) == eval_point(a, p) + eval_point(b, p)


@given(st.integers(0, 8))
def test_qsym_vs_qint(n):
    # [n] = q^{n-1} <n>
    assert qsym(n) == qq ** (n - 1) * qint(n)
