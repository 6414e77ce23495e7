"""The functor from marked diagrams to ``End(M(ell) ⊗ V^{⊗r})`` and its certificates.

Everything runs on the *safe subspace* of ``M(ell; D) ⊗ V^{⊗r}``: tensor words
``(k, e_1, .., e_r)`` whose level ``k + #{i : e_i = -1}`` is at most ``D``.
Each level is a full weight space of the truncated tensor product, every
operator used here preserves weight, and no operator applied to a safe word
ever asks for ``F^{D+1} m_+``.  Endomorphisms are therefore block diagonal
with one block per level (:class:`BlockMatrix`).

Generator images:

* ``E_i = Č∘Ĉ`` on the ``V`` factors ``i, i+1`` (image of the TL generator);
* ``R_i = Ř_{V,V}`` on the same factors;
* ``X_1 = Ř_{V,M}∘Ř_{M,V}`` on ``M ⊗ V_1`` and ``X_{i+1} = R_i X_i R_i``;
* the marked generator goes to ``x_1 = i q X_1`` in ``TLB_r(q, i q^{ell+1})``.
"""

from __future__ import annotations

import json
import random
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from math import comb
from typing import Any

from .cellular import ell_Q, is_semisimple, predicted_homs, verdict_matches_rule
from .diagrams import Rules
from .linalg import EchelonSpan, Matrix, matmul, solve
from .qfield import GaussRat, I, RatFunc, S, as_ratfunc, delta_q, eval_point, qq, render
from .tlb import basis as tlb_basis
from .tlb import word_product
from .uqsl2 import (
    Op,
    TruncationError,
    Vec,
    Word,
    cap_op,
    chain,
    cup_op,
    identity_op,
    local,
    module_v1,
    ops_residual,
    rcheck_inv_op,
    rcheck_op,
    tensor,
    verma,
)

__all__ = [
    "BlockMatrix",
    "Certificate",
    "FunctorContext",
    "generator_image",
    "verify_category_relations",
    "verify_affine_relations",
    "algebra_image_dimension",
    "semisimplicity_experiment",
    "functoriality",
    "truncation_stability",
    "commutant_inclusion",
    "safe_words",
]

ONE = as_ratfunc(1)
ZERO = as_ratfunc(0)

# Independent evaluation points for rational-point certificates.  They are
# drawn from a seeded generator so certificates are reproducible.
_POINT_SEED = 20240611


def sample_points(count: int = 2, seed: int = _POINT_SEED) -> list[GaussRat]:
    rng = random.Random(seed)
    pts: list[GaussRat] = []
    while len(pts) < count:
        num, den = rng.randint(2, 97), rng.randint(2, 97)
        if num == den:
            continue
        p = GaussRat(num) / GaussRat(den)
        if p not in pts:
            pts.append(p)
    return pts


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    check: str
    params: dict[str, Any]
    status: str
    witness: dict[str, Any]
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self, timing: bool = True) -> dict[str, Any]:
        return {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "elapsed_ms": self.elapsed_ms if timing else 0,
        }

    def to_json(self, timing: bool = True, indent: int | None = 2) -> str:
        return json.dumps(self.as_dict(timing), indent=indent, sort_keys=True)


def _timed(fn: Callable[..., Certificate]) -> Callable[..., Certificate]:
    def wrapper(*args: Any, **kwargs: Any) -> Certificate:
        t0 = time.perf_counter()
        cert = fn(*args, **kwargs)
        cert.elapsed_ms = int(round((time.perf_counter() - t0) * 1000))
        return cert

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn  # type: ignore[attr-defined]
    return wrapper


def _status(flags: Iterable[bool]) -> str:
    return "pass" if all(flags) else "fail"


# ---------------------------------------------------------------------------
# block matrices


class BlockMatrix:
    """A weight-preserving endomorphism stored as one dense block per level."""

    __slots__ = ("blocks",)

    def __init__(self, blocks: dict[int, Matrix]) -> None:
        self.blocks = blocks

    def _zip(self, other: BlockMatrix, fn: Callable[[Any, Any], Any]) -> BlockMatrix:
        return BlockMatrix(
            {L: [[fn(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, other.blocks[L])] for L, A in self.blocks.items()}
        )

    def __add__(self, other: BlockMatrix) -> BlockMatrix:
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: BlockMatrix) -> BlockMatrix:
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> BlockMatrix:
        return self.scale(-1)

    def __matmul__(self, other: BlockMatrix) -> BlockMatrix:
        return BlockMatrix({L: matmul(A, other.blocks[L]) for L, A in self.blocks.items()})

    def scale(self, c: Any) -> BlockMatrix:
        return BlockMatrix({L: [[a * c if a else a for a in row] for row in A] for L, A in self.blocks.items()})

    def plus_scalar(self, c: Any) -> BlockMatrix:
        """``self + c·id``."""
        return BlockMatrix(
            {L: [[a + c if i == j else a for j, a in enumerate(row)] for i, row in enumerate(A)] for L, A in self.blocks.items()}
        )

    def is_zero(self) -> bool:
        return not any(x for A in self.blocks.values() for row in A for x in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return self.blocks.keys() == other.blocks.keys() and (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def flatten(self) -> list[Any]:
        return [x for L in sorted(self.blocks) for row in self.blocks[L] for x in row]

    def restrict(self, levels: Iterable[int]) -> BlockMatrix:
        return BlockMatrix({L: self.blocks[L] for L in levels})

    def evaluate(self, s0: GaussRat) -> BlockMatrix:
        return BlockMatrix({L: [[_at(x, s0) for x in row] for row in A] for L, A in self.blocks.items()})

    def first_nonzero(self) -> str | None:
        for L in sorted(self.blocks):
            for i, row in enumerate(self.blocks[L]):
                for j, x in enumerate(row):
                    if x:
                        return f"level {L} entry ({i},{j}) = {render(x) if isinstance(x, RatFunc) else x}"
        return None

    @property
    def dim(self) -> int:
        return sum(len(A) for A in self.blocks.values())


def _at(x: Any, s0: GaussRat) -> GaussRat:
    if isinstance(x, RatFunc):
        return eval_point(x, s0)
    return GaussRat.coerce(x)


# ---------------------------------------------------------------------------
# word spaces


def safe_words(pattern: str, ell: int, D: int, max_level: int | None = None) -> list[Word]:
    """Words over factors ``pattern`` (letters ``M`` and ``V``) of level at most ``max_level``.

    ``max_level`` defaults to ``D``.  Words are sorted by level, then
    lexicographically.
    """
    import itertools

    top = D if max_level is None else max_level
    choices = [range(D + 1) if ch == "M" else (1, -1) for ch in pattern]
    out = []
    for w in itertools.product(*choices):
        if word_level(pattern, w) <= top:
            out.append(tuple(w))
    return sorted(out, key=lambda w: (word_level(pattern, w), w))


def word_level(pattern: str, w: Word) -> int:
    return sum(b if ch == "M" else (1 if b == -1 else 0) for ch, b in zip(pattern, w))


# ---------------------------------------------------------------------------
# functor context


class FunctorContext:
    """Generator images on the safe subspace of ``M(ell; D) ⊗ V^{⊗r}``."""

    def __init__(self, ell: int, r: int, D: int | None = None, omega: RatFunc | None = None) -> None:
        if ell < -1:
            raise ValueError("ell must be at least -1")
        if r < 1:
            raise ValueError("r must be at least 1")
        D = r + 2 if D is None else D
        if D < r + 1:
            raise ValueError(f"depth D={D} is below r+1={r + 1}")
        self.ell, self.r, self.D = ell, r, D
        self.omega_true = S ** (2 * (ell + 1))
        self.Omega = self.omega_true if omega is None else as_ratfunc(omega)
        self.M = verma(ell, D)
        self.V = module_v1()
        self.pattern = "M" + "V" * r
        self.levels: dict[int, list[Word]] = {}
        for w in safe_words(self.pattern, ell, D):
            self.levels.setdefault(word_level(self.pattern, w), []).append(w)
        self._index = {L: {w: i for i, w in enumerate(ws)} for L, ws in self.levels.items()}
        self._cache: dict[tuple, BlockMatrix] = {}

    # -- parameters

    @property
    def Q(self) -> RatFunc:
        """``Q = i q^{ell+1}``, the parameter of the image algebra."""
        return I * self.omega_true

    def params(self) -> dict[str, Any]:
        return {"ell": self.ell, "r": self.r, "D": self.D, "Q": render(self.Q)}

    @property
    def words(self) -> list[Word]:
        return [w for L in sorted(self.levels) for w in self.levels[L]]

    @property
    def dim(self) -> int:
        return sum(len(ws) for ws in self.levels.values())

    # -- sparse operators on words (position 0 is M)

    def op_R(self, i: int) -> Op:
        self._check_index(i, self.r - 1)
        return local(rcheck_op(self.V, self.V), i, 2)

    def op_Rinv(self, i: int) -> Op:
        self._check_index(i, self.r - 1)
        return local(rcheck_inv_op(self.V, self.V), i, 2)

    def op_E(self, i: int) -> Op:
        self._check_index(i, self.r - 1)
        return chain(local(cup_op, i, 0), local(cap_op, i, 2))

    def op_X1(self) -> Op:
        return local(chain(rcheck_op(self.V, self.M), rcheck_op(self.M, self.V)), 0, 2)

    def _check_index(self, i: int, top: int) -> None:
        if not 1 <= i <= top:
            raise IndexError(f"generator index {i} outside 1..{top}")

    # -- block images

    def block(self, op: Op) -> BlockMatrix:
        blocks = {}
        for L, ws in self.levels.items():
            idx = self._index[L]
            n = len(ws)
            A = [[ZERO] * n for _ in range(n)]
            for j, w in enumerate(ws):
                for w2, c in op(w).items():
                    i = idx.get(w2)
                    if i is None:
                        raise ValueError(f"operator leaves level {L}: {w} -> {w2}")
                    A[i][j] = c
            blocks[L] = A
        return BlockMatrix(blocks)

    def image(self, name: str, i: int = 1) -> BlockMatrix:
        key = (name, i)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if name == "I":
            out = self.block(identity_op)
        elif name == "E":
            out = self.block(self.op_E(i))
        elif name == "R":
            out = self.block(self.op_R(i))
        elif name == "Rinv":
            out = self.block(self.op_Rinv(i))
        elif name in ("X", "L"):
            self._check_index(i, self.r if name == "X" else 1)
            if i == 1:
                out = self.block(self.op_X1())
            else:
                R = self.image("R", i - 1)
                out = R @ self.image("X", i - 1) @ R
        elif name == "x":
            # affine generator x_i = q^{i-1} X_i
            out = self.image("X", i).scale(qq ** (i - 1))
        elif name == "c0":
            # marked generator: x_1 - Q with x_1 = i q X_1
            out = self.image("X", 1).scale(I * qq).plus_scalar(-self.Q)
        else:
            raise KeyError(f"unknown generator {name!r}")
        self._cache[key] = out
        return out

    def tlb_generators(self) -> list[BlockMatrix]:
        """Images of ``c0, e_1, .., e_{r-1}`` in the order used by :func:`tlb.word_product`."""
        return [self.image("c0")] + [self.image("E", i) for i in range(1, self.r)]


def generator_image(ctx: FunctorContext, g: str, i: int = 1) -> BlockMatrix | Op:
    """Image of a generator.

    ``I``, ``E``, ``R``, ``Rinv``, ``X``, ``L`` and ``c0`` are endomorphisms and
    come back as :class:`BlockMatrix`.  ``A`` (cap) and ``U`` (cup) change the
    number of ``V`` factors and come back as sparse operators on words, acting
    at ``V`` positions ``i, i+1``.
    """
    if g == "A":
        ctx._check_index(i, ctx.r - 1)
        return local(cap_op, i, 2)
    if g == "U":
        ctx._check_index(i, ctx.r + 1)
        return local(cup_op, i, 0)
    return ctx.image(g, i)


# ---------------------------------------------------------------------------
# category relations (exact, sparse)


def _residual_report(a: Op, b: Op, domain: Sequence[Word]) -> tuple[bool, str | None]:
    try:
        bad = ops_residual(a, b, domain)
    except TruncationError as exc:
        return False, f"truncation: {exc}"
    if not bad:
        return True, None
    w, vec = next(iter(bad.items()))
    shown = ", ".join(f"{k}: {render(c)}" for k, c in list(vec.items())[:3])
    return False, f"on {w}: {{{shown}}}"


def _scalar(c: Any) -> Op:
    c = as_ratfunc(c)
    return lambda w: {w: c} if c else {}


def _lin(*terms: tuple[Any, Op]) -> Op:
    def op(w: Word) -> Vec:
        out: Vec = {}
        for c, f in terms:
            c = as_ratfunc(c)
            for w2, x in f(w).items():
                y = out.get(w2, ZERO) + c * x
                if y:
                    out[w2] = y
                else:
                    out.pop(w2, None)
        return out

    return op


@_timed
def verify_category_relations(ctx: FunctorContext) -> Certificate:
    """Exact checks of the ribbon-category relations behind the functor.

    Instances live on small tensor products (``V^{⊗2}``, ``V^{⊗3}``, ``M⊗V``,
    ``V⊗M⊗V``, ``M⊗V⊗V``) restricted to words of level at most ``D``, plus
    the Temperley-Lieb relations on ``M ⊗ V^{⊗r}`` itself.
    """
    ell, D = ctx.ell, ctx.D
    V, M = ctx.V, ctx.M
    q, s = qq, S
    Om = ctx.Omega
    RVV, RVVi = rcheck_op(V, V), rcheck_inv_op(V, V)
    RMV, RMVi = rcheck_op(M, V), rcheck_inv_op(M, V)
    RVM, RVMi = rcheck_op(V, M), rcheck_inv_op(V, M)
    X = chain(RVM, RMV)
    cup, cap = cup_op, cap_op
    checks: dict[str, tuple[bool, str | None]] = {}

    VV = safe_words("VV", ell, D)
    VVV = safe_words("VVV", ell, D)
    Vw = safe_words("V", ell, D)
    MV = safe_words("MV", ell, D)
    VM = safe_words("VM", ell, D)
    MVV = safe_words("MVV", ell, D)
    VMV = safe_words("VMV", ell, D)
    Mw = safe_words("M", ell, D, D - 1)

    # inverse crossings
    checks["inverse crossing V,V"] = _residual_report(chain(RVVi, RVV), identity_op, VV)
    checks["inverse crossing V,V (other order)"] = _residual_report(chain(RVV, RVVi), identity_op, VV)
    checks["inverse crossing M,V"] = _residual_report(chain(RMVi, RMV), identity_op, MV)
    checks["inverse crossing V,M"] = _residual_report(chain(RVMi, RVM), identity_op, VM)

    # braid / Yang-Baxter
    R1, R2 = local(RVV, 0, 2), local(RVV, 1, 2)
    checks["YBE on V⊗V⊗V"] = _residual_report(chain(R1, R2, R1), chain(R2, R1, R2), VVV)
    lhs = chain(local(RVV, 0, 2), local(RMV, 1, 2), local(RMV, 0, 2))
    rhs = chain(local(RMV, 1, 2), local(RMV, 0, 2), local(RVV, 1, 2))
    checks["YBE on M⊗V⊗V"] = _residual_report(lhs, rhs, MVV)

    # straightening
    checks["straightening (id⊗cap)(cup⊗id)"] = _residual_report(
        chain(local(cap, 1, 2), local(cup, 0, 0)), identity_op, Vw
    )
    checks["straightening (cap⊗id)(id⊗cup)"] = _residual_report(
        chain(local(cap, 0, 2), local(cup, 1, 0)), identity_op, Vw
    )

    # sliding a strand of colour a through a cap
    for name, Rva, Rvai, Rav, Ravi, dom in (
        ("V", RVV, RVVi, RVV, RVVi, VVV),
        ("M", RVM, RVMi, RMV, RMVi, VMV),
    ):
        checks[f"sliding over cap, {name} strand, positive"] = _residual_report(
            chain(local(cap, 1, 2), local(Rva, 0, 2)), chain(local(cap, 0, 2), local(Rvai, 1, 2)), dom
        )
        checks[f"sliding over cap, {name} strand, negative"] = _residual_report(
            chain(local(cap, 1, 2), local(Ravi, 0, 2)), chain(local(cap, 0, 2), local(Rav, 1, 2)), dom
        )

    # twist, free loop, normal R
    twist_pos = chain(local(cap, 1, 2), local(RVV, 0, 2), local(cup, 1, 0))
    twist_neg = chain(local(cap, 1, 2), local(RVVi, 0, 2), local(cup, 1, 0))
    checks["twist = -q^{3/2}"] = _residual_report(twist_pos, _scalar(-(s**3)), Vw)
    checks["inverse twist = -q^{-3/2}"] = _residual_report(twist_neg, _scalar(-(s**-3)), Vw)
    checks["free loop = delta_q"] = _residual_report(chain(cap, cup), _scalar(delta_q()), [()])
    checks["q^{1/2} R_VV = q + cup∘cap"] = _residual_report(
        _lin((s, RVV)), _lin((q, identity_op), (1, chain(cup, cap))), VV
    )

    # quadratic and tangled loop, at the (possibly perturbed) Omega
    quad = chain(_lin((q, X), (-Om, identity_op)), _lin((q, X), (-Om.inverse(), identity_op)))
    branch = "(qX-1)^2 = 0" if ctx.Omega == ONE else "(qX-Omega)(qX-Omega^-1) = 0"
    checks[f"quadratic {branch}"] = _residual_report(quad, lambda w: {}, MV)
    tangled = chain(local(cap, 1, 2), local(X, 0, 2), local(cup, 1, 0))
    checks["tangled loop = -(Omega+Omega^-1)"] = _residual_report(tangled, _scalar(-(Om + Om.inverse())), Mw)

    # Temperley-Lieb relations on the context space
    words = ctx.words
    dq = delta_q()
    for i in range(1, ctx.r):
        Ei = ctx.op_E(i)
        checks[f"E{i}^2 = delta_q E{i}"] = _residual_report(chain(Ei, Ei), _lin((dq, Ei)), words)
        if i + 1 < ctx.r:
            Ej = ctx.op_E(i + 1)
            checks[f"E{i} E{i+1} E{i} = E{i}"] = _residual_report(chain(Ei, Ej, Ei), Ei, words)
            checks[f"E{i+1} E{i} E{i+1} = E{i+1}"] = _residual_report(chain(Ej, Ei, Ej), Ej, words)

    witness = {k: ("zero" if ok else msg) for k, (ok, msg) in checks.items()}
    return Certificate("category-relations", ctx.params(), _status(ok for ok, _ in checks.values()), witness)


# ---------------------------------------------------------------------------
# affine relations (block matrices, exact or at rational points)


def _affine_checks(ctx: FunctorContext, conv: Callable[[Any], Any]) -> dict[str, bool | str]:
    r = ctx.r
    q = conv(qq)
    dq = conv(delta_q())
    Om = conv(ctx.Omega)
    Q = conv(ctx.Q)
    ev = (lambda B: B) if conv is _identity else (lambda B: B.evaluate(conv.point))  # type: ignore[attr-defined]
    E = {i: ev(ctx.image("E", i)) for i in range(1, r)}
    R = {i: ev(ctx.image("R", i)) for i in range(1, r)}
    X1 = ev(ctx.image("X", 1))
    xs = {1: X1}
    for i in range(1, r):
        xs[i + 1] = (E[i].plus_scalar(q) @ xs[i] @ E[i].plus_scalar(q))
    out: dict[str, bool | str] = {}

    def put(name: str, diff: BlockMatrix) -> None:
        bad = diff.first_nonzero()
        out[name] = "zero" if bad is None else bad

    for i in range(1, r):
        for j in range(i + 2, r):
            put(f"e{i} e{j} = e{j} e{i}", E[i] @ E[j] - E[j] @ E[i])
        put(f"e{i}^2 = delta e{i}", E[i] @ E[i] - E[i].scale(dq))
        if i + 1 < r:
            put(f"e{i} e{i+1} e{i} = e{i}", E[i] @ E[i + 1] @ E[i] - E[i])
            put(f"e{i+1} e{i} e{i+1} = e{i+1}", E[i + 1] @ E[i] @ E[i + 1] - E[i + 1])
        # recursion against the braid construction x_{i+1} = q^i X_{i+1}
        Xn = ev(ctx.image("X", i + 1)).scale(q**i)
        put(f"x{i+1} = (q+e{i}) x{i} (q+e{i})", xs[i + 1] - Xn)
        put(f"q + e{i} = q^(1/2) R{i}", E[i].plus_scalar(q) - R[i].scale(conv(S)))
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            put(f"x{i} x{j} = x{j} x{i}", xs[i] @ xs[j] - xs[j] @ xs[i])
    for i in range(2, r):
        put(f"x1 e{i} = e{i} x1", X1 @ E[i] - E[i] @ X1)
    if r >= 2:
        e1 = E[1]
        sigma = R[1]
        put("braid-B: s1 x1 s1 x1 = x1 s1 x1 s1", sigma @ X1 @ sigma @ X1 - X1 @ sigma @ X1 @ sigma)
        xt = X1.scale(conv(I) * q)  # TLB generator x1 = i q X1
        xt2 = xt @ xt
        put(
            "constraints: q e1 x1^2 + e1 x1 e1 x1 = q x1^2 e1 + x1 e1 x1 e1",
            (e1 @ xt2).scale(q) + e1 @ xt @ e1 @ xt - (xt2 @ e1).scale(q) - xt @ e1 @ xt @ e1,
        )
        left = (e1 @ xt2).scale(q) + e1 @ xt @ e1 @ xt
        mid = (e1 @ xt2 @ e1).scale(q) + e1 @ xt @ e1 @ xt @ e1
        right = (xt2 @ e1).scale(q) + xt @ e1 @ xt @ e1
        put("extra-inv: delta(q e1 x1^2 + e1 x1 e1 x1) = q e1 x1^2 e1 + e1 x1 e1 x1 e1", left.scale(dq) - mid)
        put("extra-inv: q e1 x1^2 e1 + e1 x1 e1 x1 e1 = delta(q x1^2 e1 + x1 e1 x1 e1)", mid - right.scale(dq))
        put("(x1 - Q)(x1 + Q^-1) = 0", xt.plus_scalar(-Q) @ xt.plus_scalar(Q.inverse()))
        put("e1 x1 e1 + q(Q - Q^-1) e1 = 0", e1 @ xt @ e1 + e1.scale(q * (Q - Q.inverse())))
    # central skein with the scalars of the two-parameter presentation
    u = Om + Om.inverse()
    a1 = -u
    a2 = -(u * u + dq * q.inverse()) * q.inverse()
    put(
        "central skein: q delta X1^2 + delta a1 X1 = (q a2 + a1^2) id",
        (X1 @ X1).scale(q * dq) + X1.scale(dq * a1) - ev(ctx.image("I")).scale(q * a2 + a1 * a1),
    )
    return out


def _identity(x: Any) -> Any:
    return x


class _PointConv:
    def __init__(self, point: GaussRat) -> None:
        self.point = point

    def __call__(self, x: Any) -> Any:
        return _at(x, self.point)


def _loop_scalars(ctx: FunctorContext) -> dict[str, bool | str]:
    """Partial traces of ``X`` and ``X^2`` against the tangled-loop scalars ``a_1``, ``a_2``."""
    V, M = ctx.V, ctx.M
    X = chain(rcheck_op(V, M), rcheck_op(M, V))
    Om = ctx.Omega
    u = Om + Om.inverse()
    a1 = -u
    a2 = -(u * u + delta_q() * qq.inverse()) * qq.inverse()
    dom = safe_words("M", ctx.ell, ctx.D, ctx.D - 1)
    out: dict[str, bool | str] = {}
    for name, op, val in (
        ("loop z1 = a1", X, a1),
        ("loop z2 = a2", chain(X, X), a2),
    ):
        traced = chain(local(cap_op, 1, 2), local(op, 0, 2), local(cup_op, 1, 0))
        ok, msg = _residual_report(traced, _scalar(val), dom)
        out[name] = "zero" if ok else msg
    return out


@_timed
def verify_affine_relations(ctx: FunctorContext, method: str = "auto", points: int = 2) -> Certificate:
    """Affine Temperley-Lieb and type-B relations for the images.

    ``method`` is ``exact`` (symbolic), ``points`` (``points`` independent
    rational specializations of ``s``) or ``auto`` (exact for ``r <= 2``).
    """
    if ctx.r < 2:
        raise ValueError("affine relations need r >= 2")
    if method == "auto":
        method = "exact" if ctx.r <= 2 else "points"
    witness: dict[str, Any] = {"method": method}
    if method == "exact":
        results = [_affine_checks(ctx, _identity)]
    elif method == "points":
        pts = sample_points(points)
        witness["points"] = [str(p) for p in pts]
        results = [_affine_checks(ctx, _PointConv(p)) for p in pts]
    else:
        raise ValueError(f"unknown method {method!r}")
    merged: dict[str, Any] = {}
    for res in results:
        for k, v in res.items():
            merged[k] = v if merged.get(k, "zero") == "zero" else merged[k]
    merged.update(_loop_scalars(ctx))
    witness["relations"] = merged
    status = _status(v == "zero" for v in merged.values())
    return Certificate("affine-relations", ctx.params(), status, witness)


# ---------------------------------------------------------------------------
# dimension of the image algebra


def _closure_dim(gens: Sequence[BlockMatrix], one: BlockMatrix, cap_dim: int) -> int:
    span = EchelonSpan(len(one.flatten()))
    span.add(one.flatten())
    frontier = [one]
    while frontier:
        nxt = []
        for B in frontier:
            for g in gens:
                P = g @ B
                if span.add(P.flatten()):
                    nxt.append(P)
                    if len(span) > cap_dim:
                        return len(span)
        frontier = nxt
    return len(span)


@_timed
def algebra_image_dimension(ctx: FunctorContext, method: str = "auto", points: int = 2) -> Certificate:
    """Dimension of the algebra generated by ``id``, ``E_i`` and ``x_1 = i q X_1``.

    The closure under left multiplication by generators equals the span of
    all words.  ``auto`` computes exactly for ``r <= 2`` and at two
    independent rational points otherwise.
    """
    expected = comb(2 * ctx.r, ctx.r)
    if method == "auto":
        method = "exact" if ctx.r <= 2 else "points"
    gens = [ctx.image("X", 1).scale(I * qq)] + [ctx.image("E", i) for i in range(1, ctx.r)]
    one = ctx.image("I")
    witness: dict[str, Any] = {"method": method, "expected": expected}
    cap_dim = one.dim * one.dim
    if method == "exact":
        dims = [_closure_dim(gens, one, cap_dim)]
    elif method == "points":
        pts = sample_points(points)
        witness["points"] = [str(p) for p in pts]
        dims = [_closure_dim([g.evaluate(p) for g in gens], one.evaluate(p), cap_dim) for p in pts]
    else:
        raise ValueError(f"unknown method {method!r}")
    witness["dimensions"] = dims
    witness["dimension"] = max(dims)
    status = _status(d == expected for d in dims)
    return Certificate("algebra-image-dimension", ctx.params(), status, witness)


# ---------------------------------------------------------------------------
# functoriality on random words


def _rho_builder(ctx: FunctorContext, rules: Rules, conv: Callable[[Any], Any]) -> tuple:
    """Images of the diagram basis, obtained from generator words spanning the algebra."""
    r = ctx.r
    B = tlb_basis(r)
    N = len(B)
    gens = ctx.tlb_generators()
    if conv is not _identity:
        gens = [g.evaluate(conv.point) for g in gens]  # type: ignore[attr-defined]
    one = ctx.image("I") if conv is _identity else ctx.image("I").evaluate(conv.point)  # type: ignore[attr-defined]
    zero = rules.one * 0

    def coords(x: Any) -> list[Any]:
        return [x.value.coeff(d, zero) for d in B]

    # breadth-first over words until their values span TLB_r
    span = EchelonSpan(N)
    chosen_vals: list[list[Any]] = []
    chosen_imgs: list[BlockMatrix] = []
    frontier: list[tuple[tuple[int, ...], BlockMatrix]] = [((), one)]
    letters = list(range(r))
    while frontier and len(span) < N:
        nxt = []
        for word, img in frontier:
            c = coords(word_product(word, r, rules))
            if span.add(c):
                chosen_vals.append(c)
                chosen_imgs.append(img)
                for a in letters:
                    nxt.append((word + (a,), img @ gens[a]))
        frontier = nxt
    if len(span) < N:
        raise RuntimeError("generator words do not span the diagram algebra")
    # columns of W are coordinates of the chosen word values
    W = [[chosen_vals[k][j] for k in range(N)] for j in range(N)]
    Winv = solve(W, [[rules.one if i == j else zero for j in range(N)] for i in range(N)])
    basis_imgs = []
    for j in range(N):
        acc = None
        for k in range(N):
            c = Winv[k][j]
            if c:
                term = chosen_imgs[k].scale(c)
                acc = term if acc is None else acc + term
        basis_imgs.append(acc)

    def rho(x: Any) -> BlockMatrix:
        acc = one.scale(zero)
        for c, img in zip(coords(x), basis_imgs):
            if c:
                acc = acc + img.scale(c)
        return acc

    return rho, gens


@_timed
def functoriality(
    ctx: FunctorContext,
    n_words: int = 200,
    max_len: int = 6,
    seed: int = 7,
    method: str = "auto",
    diagram_Q: Any = None,
) -> Certificate:
    """``ρ(w1 ∘ w2) = ρ(w1) ρ(w2)`` for random generator words.

    ``ρ`` is the linear map on ``TLB_r(q, i q^{ell+1})`` fixed by sending a
    spanning family of generator words to the products of generator images.
    Products of random words are multiplied in the diagram algebra, expanded
    in the diagram basis and pushed through ``ρ``.  ``diagram_Q`` replaces
    the parameter of the diagram algebra (a negative control).
    """
    if method == "auto":
        method = "exact" if ctx.r <= 2 else "points"
    rng = random.Random(seed)
    witness: dict[str, Any] = {"method": method, "words": n_words}
    Qd = ctx.Q if diagram_Q is None else as_ratfunc(diagram_Q)
    if method == "exact":
        rules = Rules.specialized(Qd)
        conv: Callable[[Any], Any] = _identity
    else:
        p = sample_points(1)[0]
        conv = _PointConv(p)
        rules = Rules.at_point(p, _at(Qd, p))
        witness["point"] = str(p)
    rho, gens = _rho_builder(ctx, rules, conv)
    failures = 0
    first_bad = None
    for t in range(n_words):
        w1 = tuple(rng.randrange(ctx.r) for _ in range(rng.randint(0, max_len)))
        w2 = tuple(rng.randrange(ctx.r) for _ in range(rng.randint(0, max_len)))
        v1 = word_product(w1, ctx.r, rules)
        v2 = word_product(w2, ctx.r, rules)
        lhs = rho(v1 * v2)
        rhs = rho(v1) @ rho(v2)
        direct = _word_image(w1 + w2, gens, rho(word_product((), ctx.r, rules)))
        if not (lhs == rhs and lhs == direct):
            failures += 1
            if first_bad is None:
                first_bad = {"w1": list(w1), "w2": list(w2)}
    witness["failures"] = failures
    if first_bad:
        witness["first_failure"] = first_bad
    return Certificate("functoriality", ctx.params(), "pass" if failures == 0 else "fail", witness)


def _word_image(word: Sequence[int], gens: Sequence[BlockMatrix], one: BlockMatrix) -> BlockMatrix:
    out = one
    for a in word:
        out = out @ gens[a]
    return out


# ---------------------------------------------------------------------------
# commutant inclusion and truncation stability


@_timed
def commutant_inclusion(ctx: FunctorContext) -> Certificate:
    """Every generator image commutes with ``E``, ``F`` and ``K``.

    ``E`` and ``K`` are checked on all safe words, ``F`` on words below the
    top level so that its image stays safe.
    """
    T = tensor([ctx.M] + [ctx.V] * ctx.r)
    gens: dict[str, Op] = {"X1": ctx.op_X1()}
    for i in range(1, ctx.r):
        gens[f"E{i}"] = ctx.op_E(i)
        gens[f"R{i}"] = ctx.op_R(i)
    words = ctx.words
    below_top = [w for w in words if word_level(ctx.pattern, w) < ctx.D]
    witness: dict[str, Any] = {}
    for gname, g in gens.items():
        for op, dom in (("E", words), ("K", words), ("F", below_top)):
            a = lambda w, op=op: T.act(op, w)  # noqa: E731
            ok, msg = _residual_report(chain(g, a), chain(a, g), dom)
            witness[f"{gname} commutes with {op}"] = "zero" if ok else msg
    return Certificate("commutant-inclusion", ctx.params(), _status(v == "zero" for v in witness.values()), witness)


@_timed
def truncation_stability(ell: int, r: int, D: int | None = None, extra: int = 2) -> Certificate:
    """Generator images at depth ``D`` agree with those at ``D + extra`` on common levels."""
    small = FunctorContext(ell, r, D)
    big = FunctorContext(ell, r, small.D + extra)
    names = [("X", i) for i in range(1, r + 1)] + [("E", i) for i in range(1, r)] + [("R", i) for i in range(1, r)]
    witness: dict[str, Any] = {"D": small.D, "D_big": big.D}
    levels = sorted(small.levels)
    same_words = all(small.levels[L] == big.levels[L] for L in levels)
    witness["word bases agree"] = same_words
    for name, i in names:
        a = small.image(name, i)
        b = big.image(name, i).restrict(levels)
        witness[f"{name}{i}"] = "stable" if a == b else "changed"
    dims = (
        algebra_image_dimension(small, method="points").witness["dimensions"],
        algebra_image_dimension(big, method="points").witness["dimensions"],
    )
    witness["image dimensions"] = list(dims)
    ok = same_words and all(v == "stable" for k, v in witness.items() if k[:1] in "XER" and k[1:].isdigit()) and dims[0] == dims[1]
    return Certificate("truncation-stability", small.params(), "pass" if ok else "fail", witness)


# ---------------------------------------------------------------------------
# semisimplicity


@_timed
def semisimplicity_experiment(ells: Sequence[int], r_max: int, hom_check: bool = True) -> Certificate:
    """Cellular verdicts at ``Q = i q^{-(ell+1)}`` against the rule ``r <= ell + 1``.

    Verdicts at ``i q^{ell+1}`` are computed too and must agree.  With
    ``hom_check``, the predicted nonzero cell-module maps are nonempty exactly
    when the verdict is non-semisimple.
    """
    rows = []
    ok = True
    for ell in ells:
        for r in range(1, r_max + 1):
            v = is_semisimple(r, ell_Q(ell))
            v_alt = is_semisimple(r, ell_Q(ell, inverse=True))
            match = verdict_matches_rule(ell, r, v.semisimple) and v.semisimple == v_alt.semisimple
            row: dict[str, Any] = {
                "ell": ell,
                "r": r,
                "semisimple": v.semisimple,
                "semisimple_inverse_convention": v_alt.semisimple,
                "predicted": ell != -1 and r <= ell + 1,
                "match": match,
            }
            if hom_check:
                homs = predicted_homs(ell, r)
                row["predicted_homs"] = [list(p) for p in homs]
                row["homs_consistent"] = bool(homs) == (not v.semisimple)
                match = match and row["homs_consistent"]
            ok = ok and match
            rows.append(row)
    params = {"ell": list(ells), "r": r_max, "D": 0, "Q": "i*s^(-2(ell+1))"}
    return Certificate("semisimplicity", params, "pass" if ok else "fail", {"rows": rows})
