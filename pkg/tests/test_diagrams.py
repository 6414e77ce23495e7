"""Marked diagrams: validation, composition rules, enumeration."""

from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlbsw.diagrams import (
    GENERIC,
    DiagramError,
    DiagramSum,
    MarkedDiagram,
    Rules,
    cap,
    compose,
    count_oracle,
    cup,
    e_gen,
    enumerate_diagrams,
    identity,
    left_exposed_arcs,
    marked_identity,
    monic_diagrams,
    parse_diagram,
    reflect,
    reflect_sum,
    rotate_to_top,
    standardize,
    tensor_right,
)
from tlbsw.qfield import GaussRat, as_ratfunc, delta_Q, delta_q, kappa

FIG_DIAGRAM = "4->6 : b1-t5**, b2-b3, b4-t6, t1-t4*, t2-t3"


# --------------------------------------------------------------------------
# construction and text format


def test_text_roundtrip_frozen():
    d = parse_diagram(FIG_DIAGRAM)
    assert str(d) == FIG_DIAGRAM
    assert d.shape() == (4, 6)
    assert d.total_marks() == 3
    assert not d.is_standard()


def test_left_region_of_figure_diagram():
    d = parse_diagram(FIG_DIAGRAM)
    assert left_exposed_arcs(d) == {("b1", "t5"), ("t1", "t4")}


def test_rotation_frozen():
    d = parse_diagram(FIG_DIAGRAM)
    assert str(rotate_to_top(d)) == "0->10 : t1-t4*, t2-t3, t5-t10**, t6-t7, t8-t9"


@pytest.mark.parametrize(
    "text, message",
    [
        ("2->2 : b1-t2, b2-t1", "not planar"),
        ("2->2 : b1-b2, t1-t2*, b1-t1", "perfect matching"),
        ("1->2 : b1-t1", "even"),
        ("0->4 : t1-t4, t2-t3*", "left region"),
        ("2->2 : b1-t3, b2-t2", "out of range|bad"),
    ],
)
def test_invalid_diagrams(text, message):
    with pytest.raises(DiagramError, match=message):
        parse_diagram(text)


def test_empty_diagram():
    d = parse_diagram("0->0 :")
    assert str(d) == "0->0 :"
    assert enumerate_diagrams(0, 0) == [d]


# --------------------------------------------------------------------------
# composition rules


def test_closed_loop_is_delta_q():
    assert compose(cap(), cup()) == DiagramSum(0, 0, {parse_diagram("0->0 :"): delta_q()})


def test_marked_loop_is_kappa():
    assert compose(cap(), cup(marked=True)).coeff(parse_diagram("0->0 :")) == kappa()
    assert compose(cap(marked=True), cup(marked=True)).coeff(parse_diagram("0->0 :")) == kappa() * delta_Q()


def test_double_mark_is_delta_Q():
    c0 = marked_identity(1)
    assert compose(c0, c0) == c0.to_sum(delta_Q())


def test_c1_c0_c1_is_kappa_c1():
    # e1 (x) c0 e1 on two strands: the marked strand closes into a marked loop
    c0 = marked_identity(2)
    c1 = e_gen(1, 2)
    assert compose(compose(c1, c0), c1) == c1.to_sum(kappa())


def test_identity_is_neutral():
    for d in enumerate_diagrams(2, 4):
        assert compose(d, identity(2)) == d.to_sum(as_ratfunc(1))
        assert compose(identity(4), d) == d.to_sum(as_ratfunc(1))


def test_standardize_removes_surplus_marks():
    d = parse_diagram(FIG_DIAGRAM)
    s = standardize(d)
    (d2, c), = s.items()
    assert d2.total_marks() == 2
    assert c == delta_Q()


def test_compose_shape_mismatch():
    with pytest.raises(DiagramError):
        compose(DiagramSum.lift(identity(2), as_ratfunc(1)), DiagramSum.lift(identity(3), as_ratfunc(1)))


def test_tensor_right_rejects_marked_factor():
    with pytest.raises(DiagramError):
        tensor_right(identity(1), marked_identity(1))


def test_tensor_right_builds_generators():
    assert tensor_right(marked_identity(1), identity(2)) == marked_identity(3)
    assert tensor_right(identity(1), e_gen(1, 2)) == e_gen(2, 3)


def test_rules_at_point():
    rules = Rules.at_point(2, 3)
    c0 = marked_identity(1)
    assert compose(c0, c0, rules).coeff(c0) == -(GaussRat(3) + GaussRat(1) / 3)


# --------------------------------------------------------------------------
# enumeration


@pytest.mark.parametrize("r, s, count", [(0, 2, 2), (0, 4, 6), (0, 0, 1), (1, 1, 2), (2, 2, 6), (3, 3, 20), (2, 4, 20), (4, 4, 70)])
def test_counts_frozen(r, s, count):
    assert len(enumerate_diagrams(r, s)) == count


@pytest.mark.parametrize("m", range(0, 6))
def test_count_oracle(m):
    assert count_oracle(m) == comb(2 * m, m)


def test_parity_error():
    with pytest.raises(DiagramError, match="parity"):
        enumerate_diagrams(1, 2)


@pytest.mark.parametrize("t, n, count", [(0, 2, 2), (1, 3, 3), (0, 4, 6), (2, 4, 4), (3, 5, 5), (1, 5, 10)])
def test_monic_counts(t, n, count):
    assert len(monic_diagrams(t, n)) == count


def test_enumeration_is_sorted_and_unique():
    ds = enumerate_diagrams(3, 3)
    assert ds == sorted(ds)
    assert len(set(ds)) == len(ds)


def test_marks_allowed_on_left_through_string():
    d = parse_diagram("1->1 : b1-t1*")
    assert d in enumerate_diagrams(1, 1)


# --------------------------------------------------------------------------
# properties

shapes = st.sampled_from([(0, 2), (1, 1), (2, 2), (1, 3), (3, 3), (2, 4), (0, 4)])


@st.composite
def diagram(draw: st.DrawFn, r: int, s: int) -> MarkedDiagram:
    return draw(st.sampled_from(enumerate_diagrams(r, s)))


@st.composite
def composable_triple(draw: st.DrawFn):
    a, b, c, d = (draw(st.integers(0, 3)) for _ in range(4))
    # parities must match pairwise along the chain
    b = b + (a + b) % 2
    c = c + (b + c) % 2
    d = d + (c + d) % 2
    return draw(diagram(a, b)), draw(diagram(b, c)), draw(diagram(c, d))


@given(composable_triple())
def test_composition_associative(triple):
    x, y, z = triple  # x: a->b, y: b->c, z: c->d
    left = compose(z, compose(y, x))
    right = compose(compose(z, y), x)
    assert left == right


@given(composable_triple())
def test_reflection_is_anti_involution(triple):
    x, y, _ = triple
    assert reflect(reflect(x)) == x
    assert reflect_sum(compose(y, x)) == compose(reflect(x), reflect(y))


@given(shapes.flatmap(lambda rs: diagram(*rs)))
def test_text_roundtrip(d):
    assert parse_diagram(str(d)) == d


@given(shapes.flatmap(lambda rs: diagram(*rs)))
def test_rotation_preserves_structure(d):
    rot = rotate_to_top(d)
    assert rot.shape() == (0, d.n_bottom + d.n_top)
    assert rot.total_marks() == d.total_marks()
    assert len(left_exposed_arcs(rot)) == len(left_exposed_arcs(d))
