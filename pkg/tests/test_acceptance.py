"""Acceptance suite: nine end-to-end criteria, each under a wall-clock budget.

Every criterion prints one ``PASS`` or ``FAIL`` line with its elapsed time.
Run ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from collections.abc import Callable
from math import comb

import pytest

from tlbsw.cellular import cell_labels, cell_module, check_symmetries, ell_Q, is_semisimple, predicted_homs
from tlbsw.diagrams import compose, enumerate_diagrams, reflect, reflect_sum
from tlbsw.duality import (
    FunctorContext,
    algebra_image_dimension,
    functoriality,
    semisimplicity_experiment,
    truncation_stability,
    verify_affine_relations,
    verify_category_relations,
)
from tlbsw.qfield import as_ratfunc
from tlbsw.tlb import check_presentation
from tlbsw.uqsl2 import (
    apply,
    casimir_apply,
    casimir_value,
    chain,
    chi_exponent,
    drinfeld_s_exponent,
    module_v1,
    rcheck_op,
    rtr_oracle,
    spow,
    tensor,
    verma,
)

ONE = as_ratfunc(1)


def _report(name: str, limit: float, body: Callable[[], list[str]]) -> None:
    """Run ``body`` (returns failure messages) and print one verdict line."""
    t0 = time.perf_counter()
    failures = body()
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'}  {name}  ({elapsed:.1f}s, limit {limit:.0f}s)"
    if failures:
        line += f"  first failure: {failures[0]}"
    elif elapsed >= limit:
        line += "  over time budget"
    print(f"\n{line}", flush=True)
    assert ok, line


# 1 ---------------------------------------------------------------------------


def _counting() -> list[str]:
    bad = []
    for total in range(0, 11, 2):
        m = total // 2
        for r in range(total + 1):
            n = len(enumerate_diagrams(r, total - r))
            if n != comb(2 * m, m):
                bad.append(f"|{r}->{total - r}| = {n}")
    return bad


# 2 ---------------------------------------------------------------------------


def _cell_dimensions() -> list[str]:
    bad = []
    for n in range(1, 6):
        total = 0
        for t in cell_labels(n):
            k = (n - abs(t)) // 2
            d = cell_module(n, t).dim
            total += d * d
            if d != comb(abs(t) + 2 * k, k):
                bad.append(f"dim W_{t}({n}) = {d}")
        if total != comb(2 * n, n):
            bad.append(f"sum of squares for n={n} is {total}")
    return bad


# 3 ---------------------------------------------------------------------------


def _presentation() -> list[str]:
    bad = []
    for n in (2, 3):
        rep = check_presentation(n)
        bad += [f"n={n}: {f}" for f in rep.failures]
    return bad


# 4 ---------------------------------------------------------------------------

_REQUIRED_CATEGORY = (
    "YBE on V⊗V⊗V",
    "YBE on M⊗V⊗V",
    "sliding over cap, M strand, positive",
    "twist = -q^{3/2}",
    "q^{1/2} R_VV = q + cup∘cap",
    "tangled loop = -(Omega+Omega^-1)",
)


def _functor_relations() -> list[str]:
    bad = []
    for ell in (-1, 0, 1, 2):
        for r in (1, 2):
            cert = verify_category_relations(FunctorContext(ell, r))
            w = cert.witness
            missing = [k for k in _REQUIRED_CATEGORY if k not in w]
            quad = [k for k in w if k.startswith("quadratic")]
            if ell == -1 and quad != ["quadratic (qX-1)^2 = 0"]:
                missing.append("degenerate quadratic branch")
            bad += [f"ell={ell} r={r}: missing {k}" for k in missing]
            bad += [f"ell={ell} r={r}: {k}" for k, v in w.items() if v != "zero"]
    return bad


# 5 ---------------------------------------------------------------------------


def _affine() -> list[str]:
    bad = []
    for ell in (-1, 0, 1, 2):
        for r, method in ((2, "exact"), (3, "points")):
            cert = verify_affine_relations(FunctorContext(ell, r), method=method, points=2)
            bad += [f"ell={ell} r={r}: {k}" for k, v in cert.witness["relations"].items() if v != "zero"]
            if method == "points" and len(set(cert.witness["points"])) != 2:
                bad.append("expected two distinct points")
    return bad


# 6 ---------------------------------------------------------------------------


def _duality_dimension() -> list[str]:
    bad = []
    for ell in (0, 1, 2):
        for r in (1, 2, 3):
            cert = algebra_image_dimension(FunctorContext(ell, r), method="points", points=2)
            dims = cert.witness["dimensions"]
            if len(dims) != 2 or any(d != comb(2 * r, r) for d in dims):
                bad.append(f"ell={ell} r={r}: {dims}")
    return bad


# 7 ---------------------------------------------------------------------------


def _semisimplicity() -> list[str]:
    cert = semisimplicity_experiment(list(range(-1, 4)), 5, hom_check=True)
    bad = [f"ell={row['ell']} r={row['r']}" for row in cert.witness["rows"] if not row["match"]]
    for r in range(1, 5):
        if is_semisimple(r, ell_Q(-1)).semisimple:
            bad.append(f"ell=-1 r={r} semisimple")
    for ell in range(0, 4):
        for r in range(1, 6):
            ss = is_semisimple(r, ell_Q(ell)).semisimple
            if ss != (r <= ell + 1):
                bad.append(f"ell={ell} r={r}")
            if bool(predicted_homs(ell, r)) == ss:
                bad.append(f"homs ell={ell} r={r}")
    return bad


# 8 ---------------------------------------------------------------------------


def _singular_vector(M, V):
    """Highest-weight vector of weight ``ell - 1`` in ``M(ell) ⊗ V``."""
    sp = tensor([M, V])
    a = sp.act("E", (0, -1)).get((0, 1), 0 * ONE)
    b = sp.act("E", (1, 1)).get((0, 1), 0 * ONE)
    # at ell = 0, F m_+ is itself singular
    vec = {(1, 1): ONE} if not b else {(0, -1): ONE, (1, 1): -a / b}
    assert not sp.apply("E", vec)
    return vec


def _oracles() -> list[str]:
    bad = []
    V = module_v1()
    for ell in range(-1, 4):
        M = verma(ell, 4)
        rtr = chain(rcheck_op(V, M), rcheck_op(M, V))
        for v in (1, -1):
            if rtr((0, v)) != rtr_oracle(ell, v, M, V):
                bad.append(f"RtR oracle ell={ell} v={v}")
        for k in range(4):
            if casimir_apply(M, {k: ONE}) != {k: casimir_value(ell)}:
                bad.append(f"casimir ell={ell} k={k}")
        # R^T R on a highest-weight vector of weight w is the Drinfeld ratio
        for w, vec in ((ell + 1, {(0, 1): ONE}), (ell - 1, _singular_vector(M, V))):
            e = chi_exponent(w, ell, 1)
            if e != drinfeld_s_exponent(ell) + drinfeld_s_exponent(1) - drinfeld_s_exponent(w):
                bad.append(f"exponent bookkeeping ell={ell}")
            if apply(rtr, vec) != {x: c * spow(e) for x, c in vec.items()}:
                bad.append(f"Drinfeld scalar ell={ell} weight {w}")
    return bad


# 9 ---------------------------------------------------------------------------


def _properties() -> list[str]:
    bad = []
    rng = random.Random(5)
    pool = {n: enumerate_diagrams(n, n) for n in (2, 3, 4)}
    for _ in range(150):
        n = rng.choice((2, 3, 4))
        x, y, z = (rng.choice(pool[n]) for _ in range(3))
        if compose(z, compose(y, x)) != compose(compose(z, y), x):
            bad.append(f"associativity {x} {y} {z}")
        if reflect(reflect(x)) != x or reflect_sum(compose(y, x)) != compose(reflect(x), reflect(y)):
            bad.append(f"anti-involution {x} {y}")
    for ell in (-1, 0, 1, 2):
        cert = functoriality(FunctorContext(ell, 2), n_words=200)
        if not cert.passed:
            bad.append(f"functoriality ell={ell}: {cert.witness}")
    if not functoriality(FunctorContext(1, 3), n_words=200).passed:
        bad.append("functoriality ell=1 r=3")
    for ell in (-1, 0, 1, 2):
        if not truncation_stability(ell, 2).passed:
            bad.append(f"truncation ell={ell}")
    for n in (1, 2, 3, 4):
        for Qspec in [None] + [ell_Q(e) for e in range(-1, 4)]:
            v = check_symmetries(n, Qspec) if Qspec is not None else {"generic": is_semisimple(n, None).semisimple}
            if len(set(v.values())) != 1:
                bad.append(f"symmetry n={n} Q={Qspec}: {v}")
    return bad


CRITERIA: list[tuple[str, float, Callable[[], list[str]]]] = [
    ("1 counting of marked diagrams", 10, _counting),
    ("2 cell module dimensions", 10, _cell_dimensions),
    ("3 presentation of TLB_n", 30, _presentation),
    ("4 functor relations", 120, _functor_relations),
    ("5 affine relations", 120, _affine),
    ("6 duality dimension", 300, _duality_dimension),
    ("7 semisimplicity", 300, _semisimplicity),
    ("8 oracle agreement", 30, _oracles),
    ("9 property suites", 300, _properties),
]


@pytest.mark.parametrize("name, limit, body", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, limit, body, capsys):
    with capsys.disabled():
        _report(name, limit, body)


if __name__ == "__main__":
    failed = 0
    for name, limit, body in CRITERIA:
        try:
            _report(name, limit, body)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
