"""Functor images on M(ell) ⊗ V^r and the certificates built from them."""

from __future__ import annotations

import json

import pytest

from tlbsw.duality import (
    BlockMatrix,
    FunctorContext,
    algebra_image_dimension,
    commutant_inclusion,
    functoriality,
    generator_image,
    safe_words,
    sample_points,
    semisimplicity_experiment,
    truncation_stability,
    verify_affine_relations,
    verify_category_relations,
    word_level,
)
from tlbsw.qfield import S, as_ratfunc, delta_q, qq


def test_sample_points_are_seeded():
    assert sample_points(3) == sample_points(3)
    assert len(set(map(str, sample_points(4)))) == 4


def test_safe_words_levels():
    words = safe_words("MV", 0, 2)
    assert all(word_level("MV", w) <= 2 for w in words)
    assert (2, -1) not in words and (2, 1) in words
    assert len(words) == 5


def test_depth_guard():
    with pytest.raises(ValueError):
        FunctorContext(0, 3, D=3)
    assert FunctorContext(0, 3).D == 5


def test_bad_parameters():
    with pytest.raises(ValueError):
        FunctorContext(-2, 2)
    with pytest.raises(ValueError):
        FunctorContext(0, 0)
    with pytest.raises(IndexError):
        FunctorContext(0, 2).op_E(2)


def test_context_dimension():
    ctx = FunctorContext(1, 2, D=3)
    assert ctx.dim == sum(len(ws) for ws in ctx.levels.values())
    assert ctx.params() == {"ell": 1, "r": 2, "D": 3, "Q": "(i*s^4)"}


@pytest.mark.parametrize("ell", [-1, 0, 1, 2])
@pytest.mark.parametrize("r", [1, 2])
def test_category_relations(ell, r):
    cert = verify_category_relations(FunctorContext(ell, r))
    assert cert.passed, cert.witness


def test_category_relations_negative_control():
    cert = verify_category_relations(FunctorContext(1, 2, omega=S**2))
    bad = {k for k, v in cert.witness.items() if v != "zero"}
    assert cert.status == "fail"
    assert bad == {"quadratic (qX-Omega)(qX-Omega^-1) = 0", "tangled loop = -(Omega+Omega^-1)"}


def test_degenerate_branch_label():
    cert = verify_category_relations(FunctorContext(-1, 1))
    assert "quadratic (qX-1)^2 = 0" in cert.witness


@pytest.mark.parametrize("ell", [-1, 0, 2])
def test_affine_relations_exact(ell):
    cert = verify_affine_relations(FunctorContext(ell, 2), method="exact")
    assert cert.passed, cert.witness


def test_affine_relations_points_r3():
    cert = verify_affine_relations(FunctorContext(1, 3))
    assert cert.witness["method"] == "points"
    assert cert.passed, cert.witness


def test_affine_needs_two_strands():
    with pytest.raises(ValueError):
        verify_affine_relations(FunctorContext(0, 1))


def test_e_image_is_idempotent_up_to_loop():
    ctx = FunctorContext(0, 2)
    E = ctx.image("E", 1)
    assert E @ E == E.scale(delta_q())
    R = ctx.image("R", 1)
    # s R = q + E
    assert R.scale(S) == E.plus_scalar(qq)


def test_generator_image_kinds():
    ctx = FunctorContext(0, 2)
    assert isinstance(generator_image(ctx, "E", 1), BlockMatrix)
    assert callable(generator_image(ctx, "U", 1))


@pytest.mark.parametrize("ell, r, dim", [(0, 1, 2), (1, 2, 6), (-1, 2, 6), (2, 3, 20)])
def test_image_dimension(ell, r, dim):
    cert = algebra_image_dimension(FunctorContext(ell, r))
    assert cert.witness["dimension"] == dim and cert.passed


def test_functoriality_and_controls():
    ctx = FunctorContext(0, 2)
    assert functoriality(ctx, n_words=60).passed
    assert not functoriality(ctx, n_words=60, diagram_Q=-ctx.Q).passed
    assert not functoriality(ctx, n_words=60, diagram_Q=ctx.Q * qq).passed


@pytest.mark.parametrize("ell", [-1, 1])
def test_commutant(ell):
    assert commutant_inclusion(FunctorContext(ell, 2)).passed


def test_truncation_stability():
    cert = truncation_stability(0, 2)
    assert cert.passed
    assert cert.witness["D_big"] == cert.witness["D"] + 2


def test_semisimplicity_experiment():
    cert = semisimplicity_experiment([-1, 0, 1], 3)
    assert cert.passed
    assert [row["semisimple"] for row in cert.witness["rows"][:3]] == [False, False, False]


def test_certificate_json_deterministic():
    a = algebra_image_dimension(FunctorContext(0, 2)).to_json(timing=False)
    b = algebra_image_dimension(FunctorContext(0, 2)).to_json(timing=False)
    assert a == b
    data = json.loads(a)
    assert set(data) == {"check", "params", "status", "witness", "elapsed_ms"}
    assert data["elapsed_ms"] == 0


def test_block_matrix_arithmetic():
    one = as_ratfunc(1)
    A = BlockMatrix({0: [[one]], 1: [[one, one], [as_ratfunc(0), one]]})
    assert (A - A).is_zero()
    two = as_ratfunc(2)
    assert A @ A == BlockMatrix({0: [[one]], 1: [[one, two], [as_ratfunc(0), one]]})
    assert (A.plus_scalar(-1) @ A.plus_scalar(-1)).is_zero()
    assert A.dim == 3
