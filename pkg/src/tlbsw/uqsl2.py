"""Exact weight modules over U_q(sl2), tensor products and R-matrices.

Vectors are sparse ``dict[word, RatFunc]`` where a *word* is a tuple with one
basis label per tensor factor.  The two module families are

* ``V = V(1)`` with labels ``+1`` (``v_1``) and ``-1`` (``v_{-1}``);
* the Verma module ``M(ell)`` truncated at depth ``D`` with labels
  ``k = 0..D`` standing for ``F^k m_+``.

Applying ``F`` to ``F^D m_+`` raises :class:`TruncationError`: nothing is
silently dropped at the truncation boundary.

Conventions: ``K v = q^{wt} v``,  ``Δ(E) = E⊗K + 1⊗E``,
``Δ(F) = F⊗1 + K^{-1}⊗F`` and
``R = Ξ · Σ_j (q-q^{-1})^j / <j>! · E^j ⊗ F^j`` with ``Ξ = s^{wt_1 wt_2}``.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from .linalg import Matrix
from .qfield import RatFunc, S, as_ratfunc, qfact, qq, qsym

__all__ = [
    "TruncationError",
    "WeightModule",
    "TensorSpace",
    "module_v1",
    "verma",
    "tensor",
    "Vec",
    "Op",
    "apply",
    "local",
    "chain",
    "add_ops",
    "scale_op",
    "ops_equal",
    "ops_residual",
    "r_op",
    "rcheck_op",
    "rcheck_inv_op",
    "rmat",
    "cup_op",
    "cap_op",
    "rtr_oracle",
    "chi_exponent",
    "verma_e_coefficients",
]

Word = tuple
Vec = dict  # Word -> RatFunc
Op = Callable[[Word], Vec]

ONE = as_ratfunc(1)
ZERO = as_ratfunc(0)


class TruncationError(ArithmeticError):
    """A computation consulted a vector beyond the truncation depth."""


def spow(k: int) -> RatFunc:
    return _spow(k)


@lru_cache(maxsize=None)
def _spow(k: int) -> RatFunc:
    return S**k


def _acc(out: Vec, w: Word, c: RatFunc) -> None:
    v = out.get(w)
    if v is None:
        out[w] = c
    else:
        v = v + c
        if v:
            out[w] = v
        else:
            del out[w]


# ---------------------------------------------------------------------------
# modules


_SENTINEL = object()


@dataclass
class WeightModule:
    """A based module: weights plus sparse ``E`` and ``F`` actions.

    ``E[label]`` and ``F[label]`` are lists of ``(label, coeff)``.  A value
    ``None`` in ``F`` marks the truncation boundary.
    """

    name: str
    labels: list[Hashable]
    weight: dict[Hashable, int]
    E: dict[Hashable, list[tuple[Hashable, RatFunc]]]
    F: dict[Hashable, list[tuple[Hashable, RatFunc]] | None]
    truncated: bool = False
    depth: int | None = None
    _index: dict[Hashable, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._index = {b: i for i, b in enumerate(self.labels)}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def e(self, b: Hashable) -> list[tuple[Hashable, RatFunc]]:
        return self.E[b]

    def f(self, b: Hashable) -> list[tuple[Hashable, RatFunc]]:
        out = self.F[b]
        if out is None:
            raise TruncationError(f"F applied at the truncation boundary of {self.name} (label {b!r})")
        return out

    def k(self, b: Hashable, power: int = 1) -> RatFunc:
        return spow(2 * power * self.weight[b])

    def matrix(self, op: str, allow_boundary: bool = False) -> Matrix:
        """Dense matrix of ``E``, ``F``, ``K`` or ``Kinv`` (columns = images)."""
        n = self.dim
        M = [[ZERO] * n for _ in range(n)]
        for j, b in enumerate(self.labels):
            if op in ("K", "Kinv"):
                M[j][j] = self.k(b, 1 if op == "K" else -1)
                continue
            if op == "F" and self.F[b] is None:
                if allow_boundary:
                    continue
                raise TruncationError(f"F column at the boundary of {self.name}")
            for c, x in (self.E[b] if op == "E" else self.F[b]):
                M[self._index[c]][j] = M[self._index[c]][j] + x
        return M

    def apply(self, op: str, vec: dict[Hashable, RatFunc]) -> dict[Hashable, RatFunc]:
        out: dict[Hashable, RatFunc] = {}
        for b, c in vec.items():
            if op == "E":
                terms = self.e(b)
            elif op == "F":
                terms = self.f(b)
            elif op in ("K", "Kinv"):
                terms = [(b, self.k(b, 1 if op == "K" else -1))]
            else:
                raise ValueError(op)
            for b2, x in terms:
                _acc(out, b2, c * x)
        return out


def module_v1() -> WeightModule:
    return WeightModule(
        "V",
        [1, -1],
        {1: 1, -1: -1},
        {1: [], -1: [(1, ONE)]},
        {1: [(-1, ONE)], -1: []},
    )


def verma_e_coefficients(ell: int, D: int) -> list[RatFunc]:
    """``c_k`` with ``E F^k m_+ = c_k F^{k-1} m_+``, by induction on ``k``.

    From ``EF = FE + (K - K^{-1})/(q - q^{-1})`` applied to ``F^{k-1} m_+``
    (weight ``ell - 2k + 2``):  ``c_k = c_{k-1} + (q^w - q^{-w})/(q - q^{-1})``.
    """
    q = qq
    out = [ZERO]
    for k in range(1, D + 1):
        w = ell - 2 * (k - 1)
        out.append(out[-1] + (q**w - q ** (-w)) / (q - q.inverse()))
    return out


def verma(ell: int, D: int) -> WeightModule:
    """``M(ell)`` on ``F^k m_+``, ``0 <= k <= D``."""
    if D < 1:
        raise ValueError("depth must be at least 1")
    c = verma_e_coefficients(ell, D)
    labels = list(range(D + 1))
    E = {k: ([(k - 1, c[k])] if k >= 1 and c[k] else []) for k in labels}
    F: dict[Hashable, Any] = {k: [(k + 1, ONE)] for k in labels[:-1]}
    F[D] = None
    return WeightModule(f"M({ell})", labels, {k: ell - 2 * k for k in labels}, E, F, True, D)


# ---------------------------------------------------------------------------
# tensor products


@dataclass
class TensorSpace:
    factors: list[WeightModule]
    words: list[Word] | None = None

    def __post_init__(self) -> None:
        if sum(1 for m in self.factors if m.truncated) > 1:
            raise ValueError("at most one truncated factor is supported")
        if self.words is None:
            import itertools

            self.words = [tuple(w) for w in itertools.product(*(m.labels for m in self.factors))]

    @property
    def dim(self) -> int:
        return len(self.words)

    def weight(self, w: Word) -> int:
        return sum(m.weight[b] for m, b in zip(self.factors, w))

    def act(self, op: str, w: Word) -> Vec:
        """``Δ^{(n)}`` applied to a basis word, left-associated."""
        fs = self.factors
        n = len(fs)
        out: Vec = {}
        if op in ("K", "Kinv"):
            p = 1 if op == "K" else -1
            return {w: spow(2 * p * self.weight(w))}
        for i in range(n):
            if op == "E":
                # E at i, K on every factor to the right
                wt = sum(fs[j].weight[w[j]] for j in range(i + 1, n))
                terms = fs[i].e(w[i])
            elif op == "F":
                # F at i, K^{-1} on every factor to the left
                wt = -sum(fs[j].weight[w[j]] for j in range(i))
                terms = fs[i].f(w[i])
            else:
                raise ValueError(op)
            if not terms:
                continue
            k = spow(2 * wt)
            for b, c in terms:
                _acc(out, w[:i] + (b,) + w[i + 1 :], c * k)
        return out

    def apply(self, op: str, vec: Vec) -> Vec:
        out: Vec = {}
        for w, c in vec.items():
            for w2, x in self.act(op, w).items():
                _acc(out, w2, c * x)
        return out

    def matrix(self, op: str) -> Matrix:
        idx = {w: i for i, w in enumerate(self.words)}
        n = self.dim
        M = [[ZERO] * n for _ in range(n)]
        for j, w in enumerate(self.words):
            for w2, c in self.act(op, w).items():
                M[idx[w2]][j] = c
        return M

    def as_module(self, name: str | None = None) -> WeightModule:
        """Collapse to a single :class:`WeightModule` whose labels are words."""

        def terms(op: str, w: Word) -> list[tuple[Word, RatFunc]] | None:
            try:
                return sorted(self.act(op, w).items(), key=lambda kv: repr(kv[0]))
            except TruncationError:
                return None

        labels = list(self.words)
        return WeightModule(
            name or "⊗".join(m.name for m in self.factors),
            labels,
            {w: self.weight(w) for w in labels},
            {w: terms("E", w) or [] for w in labels},
            {w: terms("F", w) for w in labels},
            any(m.truncated for m in self.factors),
        )


def tensor(factors: Sequence[WeightModule]) -> TensorSpace:
    return TensorSpace(list(factors))


# ---------------------------------------------------------------------------
# sparse operators on words


def apply(op: Op, vec: Vec) -> Vec:
    out: Vec = {}
    for w, c in vec.items():
        for w2, x in op(w).items():
            _acc(out, w2, c * x)
    return out


def local(op: Op, pos: int, width: int) -> Op:
    """Lift an operator on ``width`` adjacent factors to position ``pos``."""

    def lifted(w: Word) -> Vec:
        head, mid, tail = w[:pos], w[pos : pos + width], w[pos + width :]
        return {head + m + tail: c for m, c in op(mid).items()}

    return lifted


def chain(*ops: Op) -> Op:
    """Composition; ``chain(a, b)(w) = a(b(w))``."""

    def composed(w: Word) -> Vec:
        vec: Vec = {w: ONE}
        for op in reversed(ops):
            vec = apply(op, vec)
        return vec

    return composed


def add_ops(*terms: tuple[Any, Op]) -> Op:
    def summed(w: Word) -> Vec:
        out: Vec = {}
        for c, op in terms:
            for w2, x in op(w).items():
                _acc(out, w2, x * c)
        return out

    return summed


def scale_op(c: Any) -> Op:
    c = as_ratfunc(c)
    return lambda w: {w: c} if c else {}


def identity_op(w: Word) -> Vec:
    return {w: ONE}


def ops_residual(a: Op, b: Op, domain: Iterable[Word]) -> dict[Word, Vec]:
    """Nonzero columns of ``a - b`` over the given basis words."""
    bad = {}
    for w in domain:
        x = dict(a(w))
        for w2, c in b(w).items():
            _acc(x, w2, -c)
        if x:
            bad[w] = x
    return bad


def ops_equal(a: Op, b: Op, domain: Iterable[Word]) -> bool:
    return not ops_residual(a, b, domain)


# ---------------------------------------------------------------------------
# R-matrices


def _r_coeff(j: int) -> RatFunc:
    return _r_coeff_cached(j)


@lru_cache(maxsize=None)
def _r_coeff_cached(j: int) -> RatFunc:
    q = qq
    return (q - q.inverse()) ** j / qfact(j)


def _check_truncates(A: WeightModule, B: WeightModule) -> None:
    if A.truncated and B.truncated:
        raise ValueError(f"R-matrix sum does not truncate on {A.name}⊗{B.name}")


def _theta_terms(A: WeightModule, B: WeightModule, a: Hashable, b: Hashable) -> list[tuple[Hashable, Hashable, RatFunc]]:
    """``Σ_j c_j E^j a ⊗ F^j b`` as a list of ``(a', b', coeff)``."""
    out: list[tuple[Hashable, Hashable, RatFunc]] = [(a, b, ONE)]
    ea: dict[Hashable, RatFunc] = {a: ONE}
    fb: dict[Hashable, RatFunc] = {b: ONE}
    j = 0
    while True:
        j += 1
        ea = A.apply("E", ea)
        if not ea:
            break
        fb = B.apply("F", fb)
        if not fb:
            break
        cj = _r_coeff(j)
        for a2, x in ea.items():
            for b2, y in fb.items():
                out.append((a2, b2, cj * x * y))
    return out


def r_op(A: WeightModule, B: WeightModule) -> Op:
    """``R_{A,B}`` on ``A⊗B``."""
    _check_truncates(A, B)

    def op(w: Word) -> Vec:
        a, b = w
        out: Vec = {}
        for a2, b2, c in _theta_terms(A, B, a, b):
            _acc(out, (a2, b2), c * spow(A.weight[a2] * B.weight[b2]))
        return out

    return op


def rcheck_op(A: WeightModule, B: WeightModule) -> Op:
    """``Ř_{A,B} = P∘R_{A,B} : A⊗B -> B⊗A``."""
    R = r_op(A, B)

    def op(w: Word) -> Vec:
        return {(b, a): c for (a, b), c in R(w).items()}

    return op


def rcheck_inv_op(A: WeightModule, B: WeightModule) -> Op:
    """Inverse of ``Ř_{A,B}``, a map ``B⊗A -> A⊗B``.

    ``R^{-1} = Θ^{-1} Ξ^{-1}`` where ``Θ = 1 + N`` has nilpotent ``N``, so
    ``Θ^{-1} = Σ_k (-N)^k``.
    """
    _check_truncates(A, B)

    def N(w: Word) -> Vec:
        a, b = w
        return {(a2, b2): c for a2, b2, c in _theta_terms(A, B, a, b)[1:]}

    def op(w: Word) -> Vec:
        b, a = w
        start: Vec = {(a, b): spow(-A.weight[a] * B.weight[b])}
        out: Vec = dict(start)
        term = start
        sign = -1
        while term:
            term = apply(N, term)
            for w2, c in term.items():
                _acc(out, w2, c * sign)
            sign = -sign
        return out

    return op


def rmat(A: WeightModule, B: WeightModule) -> Matrix:
    """Dense matrix of ``R_{A,B}`` on the basis ``A.labels × B.labels``."""
    R = r_op(A, B)
    words = [(a, b) for a in A.labels for b in B.labels]
    idx = {w: i for i, w in enumerate(words)}
    n = len(words)
    M = [[ZERO] * n for _ in range(n)]
    for j, w in enumerate(words):
        for w2, c in R(w).items():
            M[idx[w2]][j] = c
    return M


# ---------------------------------------------------------------------------
# cup and cap on V⊗V


def cup_op(w: Word) -> Vec:
    """``Č: 1 -> V⊗V``, ``1 ↦ -q v_1⊗v_{-1} + v_{-1}⊗v_1``."""
    if w != ():
        raise ValueError("cup takes the empty word")
    return {(1, -1): -qq, (-1, 1): ONE}


def cap_op(w: Word) -> Vec:
    """``Ĉ: V⊗V -> 1`` with ``(v_1, v_{-1}) = 1`` and ``(v_{-1}, v_1) = -q^{-1}``."""
    if w == (1, -1):
        return {(): ONE}
    if w == (-1, 1):
        return {(): -qq.inverse()}
    return {}


# ---------------------------------------------------------------------------
# oracles


def rtr_oracle(ell: int, v: Hashable, M: WeightModule, Vm: WeightModule) -> Vec:
    """Closed form of ``R^T R (m_+ ⊗ v)`` on ``M(ell) ⊗ Vm`` for a weight vector ``v``."""
    q = qq
    j = Vm.weight[v]
    out: Vec = {}
    ev: dict[Hashable, RatFunc] = {v: ONE}
    fm: dict[Hashable, RatFunc] = {0: ONE}
    k = 0
    while ev and fm:
        coeff = (q - q.inverse()) ** k * q ** (j * ell + k * (ell - j - 2 * k)) / qfact(k)
        for a, x in fm.items():
            for b, y in ev.items():
                _acc(out, (a, b), coeff * x * y)
        k += 1
        ev = Vm.apply("E", ev)
        if not ev:
            break
        fm = M.apply("F", fm)
    return out


def chi_exponent(ell: int, ell1: int, ell2: int) -> int:
    """Twice the exponent of ``q`` in the ``R^T R`` eigenvalue, i.e. the power of ``s``.

    Built from the Drinfeld scalar ``q^{-ℓ(ℓ+2)/2}`` on each highest weight.
    """
    return ell * (ell + 2) - ell1 * (ell1 + 2) - ell2 * (ell2 + 2)


def drinfeld_s_exponent(ell: int) -> int:
    """Power of ``s`` by which Drinfeld's central element acts on highest weight ``ell``."""
    return -ell * (ell + 2)


def casimir_value(ell: int) -> RatFunc:
    """``χ(ℓ) = (q^{ℓ+1} + q^{-ℓ-1}) / (q - q^{-1})^2``."""
    q = qq
    return (q ** (ell + 1) + q ** (-ell - 1)) / (q - q.inverse()) ** 2


def casimir_apply(Mod: WeightModule, vec: dict[Hashable, RatFunc]) -> dict[Hashable, RatFunc]:
    """``z = FE + (qK + q^{-1}K^{-1})/(q - q^{-1})^2`` on a vector of ``Mod``."""
    q = qq
    out = Mod.apply("F", Mod.apply("E", vec))
    denom = (q - q.inverse()) ** 2
    for b, c in vec.items():
        _acc(out, b, c * (q * Mod.k(b) + q.inverse() * Mod.k(b, -1)) / denom)
    return out


__all__ += ["drinfeld_s_exponent", "casimir_value", "casimir_apply", "identity_op", "spow", "qsym"]
