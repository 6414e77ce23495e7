"""Cell modules, Gram determinants and the semisimplicity criterion."""

from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tlbsw.cellular import (
    action_is_homomorphism,
    cell_datum,
    cell_labels,
    cell_module,
    check_symmetries,
    ell_Q,
    gram,
    gram_det,
    intertwiner_dim,
    is_semisimple,
    predicted_homs,
    scan,
    verdict_matches_rule,
)
from tlbsw.diagrams import DiagramError
from tlbsw.qfield import as_ratfunc, delta_Q, delta_q, kappa, parse, render
from tlbsw.tlb import generators, word_product


def test_cell_labels():
    assert cell_labels(3) == [-3, -1, 1, 3]
    assert cell_labels(2) == [-2, 0, 2]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cell_datum_is_bijection(n):
    cd = cell_datum(n)
    assert sum(len(m) ** 2 for m in cd.m_sets.values()) == comb(2 * n, n)


@pytest.mark.parametrize("n", range(1, 6))
def test_cell_dimensions(n):
    for t in cell_labels(n):
        k = (n - abs(t)) // 2
        assert cell_module(n, t).dim == comb(abs(t) + 2 * k, k)


def test_gram_2_0_frozen():
    G = gram(2, 0)
    assert G.entries == [[delta_q(), kappa()], [kappa(), kappa() * delta_Q()]]
    assert render(G.det()) == "(s^4 + Q^2 + Q^-2 + s^-4)"


@pytest.mark.parametrize(
    "n, t, det",
    [
        (1, -1, "(-Q - Q^-1)"),
        (1, 1, "(1)"),
        (2, -2, "(-Q - Q^-1)"),
        (2, 2, "(1)"),
        (3, 1, "(-s^6 - s^2*Q^2 - s^-2*Q^-2 - s^-6)"),
        (3, -3, "(-Q - Q^-1)"),
    ],
)
def test_gram_dets_frozen(n, t, det):
    assert render(gram_det(n, t)) == det


def test_gram_at_Q_i_vanishes():
    assert gram_det(1, -1, "i").is_zero()


def test_gram_symmetric():
    for t in cell_labels(4):
        assert gram(4, t).is_symmetric()


def test_bad_cell_label():
    with pytest.raises(DiagramError):
        gram(3, 0)
    with pytest.raises(DiagramError):
        cell_module(2, 1)


@pytest.mark.parametrize(
    "ell, r, expected",
    [
        (-1, 2, [(2, -2), (-2, 2)]),
        (0, 2, [(2, 0)]),
        (0, 3, [(3, -1)]),
        (1, 3, [(3, 1)]),
        (2, 4, [(4, 2)]),
        (1, 2, []),
    ],
)
def test_predicted_homs_frozen(ell, r, expected):
    assert predicted_homs(ell, r) == expected


def test_predicted_homs_literal_sign():
    assert predicted_homs(0, 3, literal=True) == [(-3, -1)]


@pytest.mark.parametrize(
    "n, s, t, ell, dim",
    [
        (3, 3, -1, 0, 1),
        (4, 4, -2, 0, 1),
        (2, 2, 0, 0, 1),
        (3, -3, -1, 0, 0),
        (3, 3, 1, 0, 0),
    ],
)
def test_intertwiners(n, s, t, ell, dim):
    assert intertwiner_dim(n, s, t, ell_Q(ell)) == dim


def test_intertwiner_prescreen_agrees():
    assert intertwiner_dim(3, 3, 1, ell_Q(1), prescreen=False) == intertwiner_dim(3, 3, 1, ell_Q(1))


def test_generic_has_no_intertwiners():
    for n in (2, 3):
        labels = cell_labels(n)
        for s in labels:
            for t in labels:
                if s != t:
                    assert intertwiner_dim(n, s, t) == 0


@pytest.mark.parametrize(
    "ell, r, semisimple",
    [(-1, 1, False), (-1, 3, False), (0, 1, True), (0, 2, False), (1, 2, True), (1, 3, False), (2, 3, True), (2, 4, False)],
)
def test_semisimplicity_points(ell, r, semisimple):
    assert is_semisimple(r, ell_Q(ell)).semisimple is semisimple
    assert verdict_matches_rule(ell, r, semisimple)


def test_generic_is_semisimple():
    assert is_semisimple(3, None).semisimple


@pytest.mark.parametrize("ell", [-1, 0, 1])
def test_symmetry_of_verdicts(ell):
    v = check_symmetries(3, ell_Q(ell))
    assert len(set(v.values())) == 1


def test_scan_rows():
    rows = scan([0, 1], 3)
    assert all(r["match"] for r in rows)
    assert [r["verdict"] for r in rows] == [
        "semisimple",
        "non-semisimple",
        "non-semisimple",
        "semisimple",
        "semisimple",
        "non-semisimple",
    ]


def test_hom_consistency_with_verdicts():
    for ell in range(-1, 3):
        for r in range(1, 5):
            ss = is_semisimple(r, ell_Q(ell)).semisimple
            assert bool(predicted_homs(ell, r)) == (not ss)
            assert bool(predicted_homs(ell, r, literal=True)) == (not ss)


words = st.lists(st.integers(0, 2), max_size=4)


@given(words, words, st.sampled_from(cell_labels(3)))
def test_cell_module_is_representation(u, v, t):
    mod = cell_module(3, t, parse("i*s^-4"))
    a, b = word_product(u, 3, mod.rules), word_product(v, 3, mod.rules)
    assert action_is_homomorphism(mod, a, b)


def test_generator_matrices_frozen():
    c0 = cell_module(2, 0).generator_matrices()[0]
    assert c0 == [[as_ratfunc(0), as_ratfunc(0)], [as_ratfunc(1), delta_Q()]]
    assert len(cell_module(3, 1).generator_matrices()) == len(generators(3).c) + 1
