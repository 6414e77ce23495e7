"""The algebras TLB_n(q, Q) = End(n) and hom-spaces of the marked-diagram category."""

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
    reflect_sum,
)

__all__ = [
    "AlgebraElement",
    "GeneratorSet",
    "PresentationReport",
    "HomSpace",
    "basis",
    "generators",
    "mul",
    "structure_constants",
    "check_presentation",
    "hom_space",
]


class AlgebraElement:
    """An element of TLB_n written in the diagram basis."""

    __slots__ = ("n", "value", "rules")

    def __init__(self, n: int, value: DiagramSum | MarkedDiagram, rules: Rules = GENERIC) -> None:
        v = DiagramSum.lift(value, rules.one)
        if v.shape() != (n, n):
            raise DiagramError(f"element of shape {v.shape()} is not in TLB_{n}")
        self.n, self.value, self.rules = n, v, rules

    @staticmethod
    def one(n: int, rules: Rules = GENERIC) -> AlgebraElement:
        return AlgebraElement(n, identity(n), rules)

    @staticmethod
    def scalar(n: int, c: Any, rules: Rules = GENERIC) -> AlgebraElement:
        return AlgebraElement(n, identity(n).to_sum(c), rules)

    def _other(self, o: object) -> AlgebraElement:
        if isinstance(o, AlgebraElement):
            if o.n != self.n:
                raise DiagramError(f"TLB_{self.n} vs TLB_{o.n}")
            return o
        return AlgebraElement.scalar(self.n, self.rules.one * o, self.rules)

    def __add__(self, o: object) -> AlgebraElement:
        return AlgebraElement(self.n, self.value + self._other(o).value, self.rules)

    __radd__ = __add__

    def __sub__(self, o: object) -> AlgebraElement:
        return AlgebraElement(self.n, self.value - self._other(o).value, self.rules)

    def __rsub__(self, o: object) -> AlgebraElement:
        return self._other(o) - self

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.n, -self.value, self.rules)

    def __mul__(self, o: object) -> AlgebraElement:
        if isinstance(o, AlgebraElement):
            return mul(self, o)
        return AlgebraElement(self.n, self.value.scale(o), self.rules)

    def __rmul__(self, c: object) -> AlgebraElement:
        return AlgebraElement(self.n, self.value.scale(c), self.rules)

    def __pow__(self, k: int) -> AlgebraElement:
        out = AlgebraElement.one(self.n, self.rules)
        for _ in range(k):
            out = out * self
        return out

    def star(self) -> AlgebraElement:
        """The anti-involution induced by reflection."""
        return AlgebraElement(self.n, reflect_sum(self.value), self.rules)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, AlgebraElement):
            return NotImplemented
        return self.n == o.n and self.value == o.value

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        return str(self.value)

    __repr__ = __str__


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """``a * b`` means ``a`` stacked on top of ``b``."""
    if a.n != b.n:
        raise DiagramError(f"cannot multiply TLB_{a.n} by TLB_{b.n}")
    return AlgebraElement(a.n, compose(a.value, b.value, a.rules), a.rules)


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    c0: AlgebraElement
    c: tuple[AlgebraElement, ...]

    def e(self, i: int) -> AlgebraElement:
        return self.c[i - 1]


def basis(n: int) -> list[MarkedDiagram]:
    if n < 0:
        raise DiagramError("n must be nonnegative")
    return enumerate_diagrams(n, n)


def generators(n: int, rules: Rules = GENERIC) -> GeneratorSet:
    if n < 1:
        raise DiagramError("generators need n >= 1")
    c0 = AlgebraElement(n, marked_identity(n), rules)
    cs = tuple(AlgebraElement(n, e_gen(i, n), rules) for i in range(1, n))
    return GeneratorSet(n, c0, cs)


def structure_constants(n: int, rules: Rules = GENERIC) -> list[list[dict[int, Any]]]:
    """``table[i][j]`` maps ``k`` to the coefficient of ``basis[k]`` in ``basis[i]*basis[j]``."""
    B = basis(n)
    index = {d: k for k, d in enumerate(B)}
    table = []
    for a in B:
        row = []
        for b in B:
            prod = compose(a, b, rules)
            row.append({index[d]: c for d, c in sorted(prod.terms.items(), key=lambda kv: index[kv[0]])})
        table.append(row)
    return table


@dataclass
class PresentationReport:
    n: int
    rules_label: str
    residuals: dict[str, AlgebraElement] = field(default_factory=dict)

    @property
    def failures(self) -> dict[str, AlgebraElement]:
        return {k: v for k, v in self.residuals.items() if not v.is_zero()}

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict[str, str]:
        return {k: ("pass" if v.is_zero() else f"residual {v}") for k, v in self.residuals.items()}


def check_presentation(n: int, rules: Rules = GENERIC, sign: int = 1) -> PresentationReport:
    """Verify the type-B Temperley-Lieb relations with ``x1 = sign*(c0 + Q)``.

    ``sign = -1`` tests the alternative normalization, which satisfies the
    same relations with ``Q`` replaced by ``-Q``.
    """
    if n < 2:
        raise DiagramError("presentation check needs n >= 2")
    g = generators(n, rules)
    one = AlgebraElement.one(n, rules)
    q, Q = rules.q, rules.Q
    Qr = Q if sign == 1 else -Q
    x1 = (g.c0 + one * Q) * sign
    e = g.e
    rep = PresentationReport(n, rules.label)
    R = rep.residuals
    R["(x1-Q)(x1+Q^-1)=0"] = (x1 - one * Qr) * (x1 + one * Qr.inverse())
    R["e1 x1 e1 + q(Q-Q^-1) e1 = 0"] = e(1) * x1 * e(1) + e(1) * (q * (Qr - Qr.inverse()))
    for i in range(1, n):
        R[f"e{i}^2 = delta_q e{i}"] = e(i) * e(i) - e(i) * rules.delta_q
        if i + 1 < n:
            R[f"e{i} e{i+1} e{i} = e{i}"] = e(i) * e(i + 1) * e(i) - e(i)
            R[f"e{i+1} e{i} e{i+1} = e{i+1}"] = e(i + 1) * e(i) * e(i + 1) - e(i + 1)
        for j in range(i + 2, n):
            R[f"e{i} e{j} = e{j} e{i}"] = e(i) * e(j) - e(j) * e(i)
        if i >= 2:
            R[f"x1 e{i} = e{i} x1"] = x1 * e(i) - e(i) * x1
    T1 = e(1) + one * q
    x2 = T1 * x1 * T1
    R["x1 x2 = x2 x1"] = x1 * x2 - x2 * x1
    R["q e1 x1^2 + e1 x1 e1 x1 = q x1^2 e1 + x1 e1 x1 e1"] = (
        e(1) * x1 * x1 * q + e(1) * x1 * e(1) * x1 - x1 * x1 * e(1) * q - x1 * e(1) * x1 * e(1)
    )
    return rep


class HomSpace:
    """``Hom(r, s)`` with TLB_s acting on the left and TLB_r on the right."""

    def __init__(self, r: int, s: int, rules: Rules = GENERIC) -> None:
        self.r, self.s, self.rules = r, s, rules
        self.basis = enumerate_diagrams(r, s)
        self._index = {d: k for k, d in enumerate(self.basis)}

    def __len__(self) -> int:
        return len(self.basis)

    def coords(self, x: DiagramSum) -> list[Any]:
        zero = self.rules.one * 0
        return [x.coeff(d, zero) for d in self.basis]

    def left_action(self, a: AlgebraElement, k: int) -> DiagramSum:
        if a.n != self.s:
            raise DiagramError("left action needs TLB_s")
        return compose(a.value, self.basis[k], self.rules)

    def right_action(self, k: int, a: AlgebraElement) -> DiagramSum:
        if a.n != self.r:
            raise DiagramError("right action needs TLB_r")
        return compose(self.basis[k], a.value, self.rules)


def hom_space(r: int, s: int, rules: Rules = GENERIC) -> HomSpace:
    return HomSpace(r, s, rules)


def word_product(word: Sequence[int], n: int, rules: Rules = GENERIC) -> AlgebraElement:
    """Product of generators; letter 0 is ``c0`` and letter ``i >= 1`` is ``c_i``."""
    g = generators(n, rules)
    out = AlgebraElement.one(n, rules)
    for w in word:
        out = out * (g.c0 if w == 0 else g.e(w))
    return out
