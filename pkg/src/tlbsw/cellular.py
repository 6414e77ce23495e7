"""Cellular structure of TLB_n(q, Q): cell modules, Gram matrices, semisimplicity.

Cells are indexed by ``t`` in ``Λ_B(n) = {t : |t| <= n, t ≡ n mod 2}``.  The
basis ``M(t)`` of the cell module ``W_t(n)`` consists of the monic diagrams
``|t| -> n`` whose through strings carry no mark, and the cellular basis is
``C^t_{S,T} = S ∘ mk_t ∘ T*`` with ``mk_t`` the marked identity when ``t < 0``
and the identity otherwise.  The order on cells compares ``|t|`` first and
puts ``-|t|`` below ``|t|``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from .diagrams import (
    GENERIC,
    DiagramError,
    DiagramSum,
    MarkedDiagram,
    Rules,
    compose,
    e_gen,
    enumerate_diagrams,
    identity,
    marked_identity,
    monic_diagrams,
    reflect,
)
from .linalg import Matrix, det, matmul, rank, rank_at_point
from .qfield import GaussRat, RatFunc, SpecializationError, as_ratfunc, render
from .tlb import AlgebraElement, generators

__all__ = [
    "CellDatum",
    "CellModule",
    "GramMatrix",
    "SemisimplicityVerdict",
    "cell_labels",
    "cell_datum",
    "cell_module",
    "gram",
    "gram_det",
    "is_semisimple",
    "predicted_homs",
    "intertwiner_dim",
    "rules_for",
    "ell_Q",
]


def cell_labels(n: int) -> list[int]:
    return [t for t in range(-n, n + 1) if (n - t) % 2 == 0]


def rules_for(Qspec: object | None) -> Rules:
    """Generic rules for ``None``; otherwise ``Q`` specialized to a function of ``s``."""
    if Qspec is None:
        return GENERIC
    if isinstance(Qspec, Rules):
        return Qspec
    Q = as_ratfunc(Qspec)
    if Q.is_zero():
        raise SpecializationError("Q = 0 is not allowed")
    return Rules.specialized(Q)


def ell_Q(ell: int, inverse: bool = False) -> RatFunc:
    """``i q^{-(ell+1)}``, or ``i q^{ell+1}`` when ``inverse`` is set."""
    k = ell + 1 if inverse else -(ell + 1)
    return as_ratfunc(f"i*s^{2 * k}")


def _mk(t: int) -> MarkedDiagram:
    return marked_identity(-t) if t < 0 else identity(t)


@dataclass
class CellDatum:
    n: int
    labels: list[int]
    m_sets: dict[int, list[MarkedDiagram]]

    def beta(self, t: int, S: MarkedDiagram, T: MarkedDiagram) -> MarkedDiagram:
        """The cellular basis element ``C^t_{S,T}``."""
        x = compose(S, compose(_mk(t), reflect(T)))
        ((d, c),) = x.terms.items()
        if not c.is_one():
            raise DiagramError("cellular basis element is not a single diagram")
        return d


def cell_datum(n: int) -> CellDatum:
    """Build the cell datum and check that ``β`` is a bijection onto the basis."""
    if n < 1:
        raise DiagramError("cell datum needs n >= 1")
    labels = cell_labels(n)
    m_sets = {t: monic_diagrams(abs(t), n) for t in labels}
    cd = CellDatum(n, labels, m_sets)
    image = [cd.beta(t, S, T) for t in labels for S in m_sets[t] for T in m_sets[t]]
    if len(set(image)) != len(image) or set(image) != set(enumerate_diagrams(n, n)):
        raise DiagramError(f"cellular basis map is not a bijection for n={n}")
    return cd


def _cell_reduce(x: DiagramSum, t: int, rules: Rules) -> dict[MarkedDiagram, Any]:
    """Project a sum of diagrams ``|t| -> n`` onto ``W_t``.

    Terms with fewer through strings die.  A mark on the leftmost through
    string kills the term when ``t > 0`` (it lies in the lower cell ``-t``) and
    is absorbed by ``mk_t`` with a factor ``δ_Q`` when ``t < 0``.
    """
    k = abs(t)
    out: dict[MarkedDiagram, Any] = {}
    for d, c in x.terms.items():
        if d.through_count() != k:
            continue
        marked = [i for i, (p, m) in enumerate(zip(d.pairs, d.marks)) if m and d.is_through(p)]
        if marked:
            if t >= 0:
                continue
            marks = list(d.marks)
            for i in marked:
                marks[i] = 0
            d = MarkedDiagram._trusted(d.n_bottom, d.n_top, d.pairs, tuple(marks))
            c = c * rules.delta_Q
        v = out.get(d)
        out[d] = c if v is None else v + c
    return out


@dataclass
class CellModule:
    n: int
    t: int
    basis: list[MarkedDiagram]
    rules: Rules
    _index: dict[MarkedDiagram, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._index = {d: i for i, d in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def act(self, a: AlgebraElement | MarkedDiagram | DiagramSum) -> Matrix:
        """Matrix of ``a`` on ``W_t`` (column ``j`` is the image of basis ``j``)."""
        value = a.value if isinstance(a, AlgebraElement) else DiagramSum.lift(a, self.rules.one)
        zero = self.rules.one * 0
        M = [[zero] * self.dim for _ in range(self.dim)]
        for j, S in enumerate(self.basis):
            red = _cell_reduce(compose(value, S, self.rules), self.t, self.rules)
            for d, c in red.items():
                M[self._index[d]][j] = M[self._index[d]][j] + c
        return M

    def generator_matrices(self) -> list[Matrix]:
        g = generators(self.n, self.rules)
        return [self.act(g.c0), *(self.act(c) for c in g.c)]


def cell_module(n: int, t: int, Qspec: object | None = None) -> CellModule:
    if t not in cell_labels(n):
        raise DiagramError(f"t={t} is not in Λ_B({n})")
    return CellModule(n, t, monic_diagrams(abs(t), n), rules_for(Qspec))


@dataclass
class GramMatrix:
    n: int
    t: int
    entries: Matrix

    def det(self) -> Any:
        return det(self.entries)

    def is_symmetric(self) -> bool:
        E = self.entries
        return all(E[i][j] == E[j][i] for i in range(len(E)) for j in range(i))


def gram(n: int, t: int, Qspec: object | None = None) -> GramMatrix:
    """``⟨U, V⟩`` from ``C_{S,U} C_{V,T} ≡ ⟨U,V⟩ C_{S,T}`` modulo lower cells."""
    rules = rules_for(Qspec)
    if t not in cell_labels(n):
        raise DiagramError(f"t={t} is not in Λ_B({n})")
    basis = monic_diagrams(abs(t), n)
    mk = _mk(t)
    zero = rules.one * 0
    E = []
    for U in basis:
        Ustar = reflect(U)
        row = []
        for V in basis:
            x = compose(Ustar, V, rules)
            if t < 0:
                x = compose(mk, compose(x, mk, rules), rules)
            row.append(x.coeff(mk, zero))
        E.append(row)
    return GramMatrix(n, t, E)


def gram_det(n: int, t: int, Qspec: object | None = None) -> Any:
    return gram(n, t, Qspec).det()


@dataclass
class SemisimplicityVerdict:
    n: int
    Q: str
    semisimple: bool
    gram_dets: dict[int, Any]

    def as_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "Q": self.Q,
            "semisimple": self.semisimple,
            "gram_dets": {str(t): render(d) for t, d in sorted(self.gram_dets.items())},
        }


def is_semisimple(n: int, Qspec: object | None) -> SemisimplicityVerdict:
    """Semisimple iff every Gram determinant is nonzero at the given ``Q``."""
    rules = rules_for(Qspec)
    dets = {t: gram_det(n, t, rules) for t in cell_labels(n)}
    label = "generic" if Qspec is None else render(rules.Q)
    return SemisimplicityVerdict(n, label, all(bool(d) for d in dets.values()), dets)


def predicted_homs(ell: int, r: int, literal: bool = False) -> list[tuple[int, int]]:
    """Pairs ``(s, t)`` with a predicted nonzero map ``W_s(r) -> W_t(r)`` at ``Q = i q^{-(ell+1)}``.

    With ``k = ell + 1`` the families are

    * ``s = t + 2m > t >= 0`` with ``t + m = k``;
    * ``t = -2m``, ``s = 4m`` when ``Q = i q^m`` (never met for ``ell >= -1``);
    * ``t < 0 < s`` with ``s = |t| + 2k``;
    * at ``k = 0`` (``Q = i``) the coincidence ``W_t ≅ W_{-t}``, both directions.

    ``literal=True`` puts the third family at ``s < 0`` instead, which is how it
    is usually stated; exact intertwiner computations contradict that sign.
    """
    if ell < -1 or r < 1:
        raise ValueError("need ell >= -1 and r >= 1")
    k = ell + 1
    lab = set(cell_labels(r))
    out: set[tuple[int, int]] = set()
    for t in lab:
        for s in lab:
            if s == t:
                continue
            if 0 <= t < s and t + (s - t) // 2 == k:
                out.add((s, t))
            m = -k
            if t < 0 < s and m > 0 and t == -2 * m and s == 4 * m:
                out.add((s, t))
            third_sign = s < 0 if literal else s > 0
            if t < 0 and third_sign and abs(s) == abs(t) + 2 * k and k > 0:
                out.add((s, t))
            if k == 0 and t != 0 and s == -t:
                out.add((s, t))
    return sorted(out, key=lambda p: (-abs(p[0]), -p[0], -abs(p[1]), -p[1]))


_SCREEN_S = GaussRat(7, 3)
_SCREEN_Q = GaussRat(5, 11)


def intertwiner_dim(
    n: int, t_from: int, t_to: int, Qspec: object | None = None, prescreen: bool = True
) -> int:
    """Dimension of ``Hom(W_{t_from}, W_{t_to})`` by solving ``φ ρ_from(g) = ρ_to(g) φ``.

    The rank at a fixed rational point is a lower bound for the exact rank, so a
    full-rank system there certifies ``0`` without symbolic elimination.
    """
    rules = rules_for(Qspec)
    A = CellModule(n, t_from, monic_diagrams(abs(t_from), n), rules)
    B = CellModule(n, t_to, monic_diagrams(abs(t_to), n), rules)
    a, b = A.dim, B.dim
    zero = rules.one * 0
    rows: list[list[Any]] = []
    for ga, gb in zip(A.generator_matrices(), B.generator_matrices()):
        # unknown φ[i][j] at column i*a + j; equation for entry (i, k)
        for i in range(b):
            for k in range(a):
                row = [zero] * (a * b)
                for j in range(a):
                    if ga[j][k]:
                        row[i * a + j] = row[i * a + j] + ga[j][k]
                for j in range(b):
                    if gb[i][j]:
                        row[j * a + k] = row[j * a + k] - gb[i][j]
                if any(row):
                    rows.append(row)
    if not rows:
        return a * b
    if prescreen and rank_at_point(rows, _SCREEN_S, _SCREEN_Q) == a * b:
        return 0
    return a * b - rank(rows)


def action_is_homomorphism(mod: CellModule, x: AlgebraElement, y: AlgebraElement) -> bool:
    return mod.act(x * y) == matmul(mod.act(x), mod.act(y))


def check_symmetries(n: int, Qspec: object) -> dict[str, bool]:
    """Verdict at ``Q``, ``-Q`` and ``Q^{-1}``."""
    Q = as_ratfunc(Qspec)
    base = is_semisimple(n, Q).semisimple
    return {
        "Q": base,
        "-Q": is_semisimple(n, -Q).semisimple,
        "Q^-1": is_semisimple(n, Q.inverse()).semisimple,
    }


def verdict_matches_rule(ell: int, r: int, semisimple: bool) -> bool:
    expected = False if ell == -1 else r <= ell + 1
    return semisimple == expected


def scan(ells: Sequence[int], rmax: int) -> list[dict[str, Any]]:
    """Semisimplicity verdicts over a grid, in both ``Q`` conventions."""
    rows = []
    for ell in ells:
        for r in range(1, rmax + 1):
            v = is_semisimple(r, ell_Q(ell))
            v_alt = is_semisimple(r, ell_Q(ell, inverse=True))
            predicted = False if ell == -1 else r <= ell + 1
            rows.append(
                {
                    "ell": ell,
                    "r": r,
                    "verdict": "semisimple" if v.semisimple else "non-semisimple",
                    "verdict_inverse_convention": "semisimple" if v_alt.semisimple else "non-semisimple",
                    "predicted": predicted,
                    "match": v.semisimple == predicted == v_alt.semisimple,
                    "gram_dets": [render(v.gram_dets[t]) for t in cell_labels(r)],
                }
            )
    return rows


__all__ += ["action_is_homomorphism", "check_symmetries", "verdict_matches_rule", "scan"]

