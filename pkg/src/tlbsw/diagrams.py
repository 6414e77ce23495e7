"""Marked Temperley-Lieb diagrams of type B.

A diagram ``r -> s`` has bottom points ``b1..br`` and top points ``t1..ts``.
Internally endpoints carry a *label index*: ``b_i -> i-1`` and
``t_j -> r+j-1``.  Planarity and the left region are computed on the
*boundary order* obtained by walking the rectangle from the left wall:
``b1, ..., br, ts, ..., t1``.  In that order a matching is noncrossing iff it
is balanced, and the arcs bounding the left region are the outermost ones.

Marks may only sit on arcs of the left region.  Composition reduces closed
loops and repeated marks with the constants held in a :class:`Rules` object,
which can be swapped for specialized or deliberately wrong values.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import comb
from typing import Any

from .qfield import GaussRat, Qv, as_ratfunc, delta_q, delta_Q, kappa, qq

__all__ = [
    "DiagramError",
    "MarkedDiagram",
    "DiagramSum",
    "Rules",
    "GENERIC",
    "left_exposed_arcs",
    "compose",
    "tensor_right",
    "reflect",
    "rotate_to_top",
    "enumerate_diagrams",
    "count_oracle",
    "monic_diagrams",
    "identity",
    "marked_identity",
    "cup",
    "cap",
    "e_gen",
    "parse_diagram",
]


class DiagramError(ValueError):
    """Malformed diagram or incompatible shapes."""


# ---------------------------------------------------------------------------
# loop and mark constants


@dataclass(frozen=True)
class Rules:
    """Values of the reduction rules.

    ``delta_q`` is an unmarked loop, ``kappa`` a loop with one mark and
    ``delta_Q`` the price of removing a surplus mark.  ``one`` is the unit of
    the coefficient ring; any ring whose elements support ``+``, ``*`` and
    truthiness (zero test) works, e.g. :class:`RatFunc` or :class:`GaussRat`.
    """

    delta_q: Any
    delta_Q: Any
    kappa: Any
    one: Any
    q: Any = None
    Q: Any = None
    label: str = "generic"
    _pow_cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @staticmethod
    def generic() -> Rules:
        return Rules(delta_q(), delta_Q(), kappa(), as_ratfunc(1), qq, Qv)

    @staticmethod
    def specialized(Q: object, label: str | None = None) -> Rules:
        """Rules with ``Q`` replaced by a nonzero element of Q(i)(s)."""
        Qs = as_ratfunc(Q)
        if Qs.is_zero():
            raise DiagramError("Q must be nonzero")
        if Qs.depends_on_Q():
            raise DiagramError("specialized Q must be a function of s only")
        q = qq
        return Rules(delta_q(), -(Qs + Qs.inverse()), q / Qs + Qs / q, as_ratfunc(1), q, Qs, label or f"Q={Qs}")

    @staticmethod
    def at_point(s0: object, Q0: object) -> Rules:
        s0g, Q0g = GaussRat.coerce(s0), GaussRat.coerce(Q0)
        q0 = s0g * s0g
        return Rules(
            -(q0 + q0.inverse()),
            -(Q0g + Q0g.inverse()),
            q0 / Q0g + Q0g / q0,
            GaussRat(1),
            q0,
            Q0g,
            f"s={s0g},Q={Q0g}",
        )

    def perturbed_kappa(self, delta: object = 1) -> Rules:
        return replace(self, kappa=self.kappa + delta, label=self.label + "+kappa-perturbed", _pow_cache={})

    def factor(self, unmarked_loops: int, marked_loops: int, extra_marks: int) -> Any:
        key = (unmarked_loops, marked_loops, extra_marks)
        hit = self._pow_cache.get(key)
        if hit is not None:
            return hit
        out = self.one
        for base, k in ((self.delta_q, unmarked_loops), (self.kappa, marked_loops), (self.delta_Q, extra_marks)):
            for _ in range(k):
                out = out * base
        self._pow_cache[key] = out
        return out


GENERIC = Rules.generic()


# ---------------------------------------------------------------------------
# diagrams


def _label_name(L: int, r: int) -> str:
    return f"b{L + 1}" if L < r else f"t{L - r + 1}"


def _parse_label(tok: str, r: int, s: int) -> int:
    m = re.fullmatch(r"([bt])(\d+)", tok.strip())
    if not m:
        raise DiagramError(f"bad endpoint {tok!r}")
    k = int(m.group(2))
    if m.group(1) == "b":
        if not 1 <= k <= r:
            raise DiagramError(f"endpoint {tok} out of range for {r} bottom points")
        return k - 1
    if not 1 <= k <= s:
        raise DiagramError(f"endpoint {tok} out of range for {s} top points")
    return r + k - 1


class MarkedDiagram:
    """A basis morphism ``n_bottom -> n_top``.

    ``pairs`` are label-index pairs ``(a, b)`` with ``a < b`` sorted by ``a``;
    ``marks[k]`` is the mark count on ``pairs[k]``.
    """

    __slots__ = ("n_bottom", "n_top", "pairs", "marks", "_partner", "_hash")

    def __init__(
        self,
        n_bottom: int,
        n_top: int,
        pairs: Iterable[tuple[object, object]],
        marks: Mapping[tuple[object, object], int] | Iterable[tuple[object, object]] | None = None,
    ) -> None:
        r, s = int(n_bottom), int(n_top)
        if r < 0 or s < 0:
            raise DiagramError("point counts must be nonnegative")
        if (r + s) % 2:
            raise DiagramError(f"{r}->{s}: number of endpoints must be even")

        def idx(p: object) -> int:
            if isinstance(p, str):
                return _parse_label(p, r, s)
            p = int(p)  # type: ignore[call-overload]
            if not 0 <= p < r + s:
                raise DiagramError(f"label index {p} out of range")
            return p

        norm = [tuple(sorted((idx(a), idx(b)))) for a, b in pairs]
        seen = [x for p in norm for x in p]
        if sorted(seen) != list(range(r + s)):
            raise DiagramError("pairs must form a perfect matching of the endpoints")
        count: dict[tuple[int, int], int] = {}
        if marks:
            items = marks.items() if isinstance(marks, Mapping) else ((m, 1) for m in marks)
            for (a, b), k in items:
                key = tuple(sorted((idx(a), idx(b))))
                if key not in norm:
                    raise DiagramError(f"mark on a non-existent pair {a}-{b}")
                if k < 0:
                    raise DiagramError("mark counts must be nonnegative")
                count[key] = count.get(key, 0) + int(k)
        norm.sort()
        _init(self, r, s, tuple(norm), tuple(count.get(p, 0) for p in norm))
        if not _noncrossing(self):
            raise DiagramError(f"{self}: matching is not planar")
        outer = _outer_set(self)
        for p, k in zip(self.pairs, self.marks):
            if k and p not in outer:
                raise DiagramError(f"{self}: mark on an arc outside the left region")

    # internal fast constructor: caller guarantees validity
    @staticmethod
    def _trusted(r: int, s: int, pairs: tuple, marks: tuple) -> MarkedDiagram:
        d = object.__new__(MarkedDiagram)
        _init(d, r, s, pairs, marks)
        return d

    # geometry helpers
    def pos(self, L: int) -> int:
        """Boundary-order position of label index ``L``."""
        r, s = self.n_bottom, self.n_top
        return L if L < r else r + s - 1 - (L - r)

    def partner(self) -> tuple[int, ...]:
        if self._partner is None:
            p = [0] * (self.n_bottom + self.n_top)
            for a, b in self.pairs:
                p[a], p[b] = b, a
            self._partner = tuple(p)
        return self._partner

    def mark_of(self) -> tuple[int, ...]:
        out = [0] * (self.n_bottom + self.n_top)
        for (a, b), k in zip(self.pairs, self.marks):
            out[a] = out[b] = k
        return tuple(out)

    def is_through(self, pair: tuple[int, int]) -> bool:
        return pair[0] < self.n_bottom <= pair[1]

    def through_count(self) -> int:
        r = self.n_bottom
        return sum(1 for a, b in self.pairs if a < r <= b)

    def total_marks(self) -> int:
        return sum(self.marks)

    def is_standard(self) -> bool:
        return all(k <= 1 for k in self.marks)

    def shape(self) -> tuple[int, int]:
        return self.n_bottom, self.n_top

    def key(self) -> tuple:
        return (self.n_bottom, self.n_top, self.pairs, self.marks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MarkedDiagram):
            return NotImplemented
        return self.key() == other.key()

    def __lt__(self, other: MarkedDiagram) -> bool:
        return self.key() < other.key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def labelled_pairs(self) -> list[tuple[str, str, int]]:
        r = self.n_bottom
        return [(_label_name(a, r), _label_name(b, r), k) for (a, b), k in zip(self.pairs, self.marks)]

    def __str__(self) -> str:
        body = ", ".join(f"{a}-{b}{'*' * k}" for a, b, k in self.labelled_pairs())
        return f"{self.n_bottom}->{self.n_top} :" + (f" {body}" if body else "")

    def __repr__(self) -> str:
        return f"MarkedDiagram({str(self)!r})"

    def to_sum(self, coeff: object = None, one: object = None) -> DiagramSum:
        c = coeff if coeff is not None else (one if one is not None else as_ratfunc(1))
        return DiagramSum(self.n_bottom, self.n_top, {self: c})


def _init(d: MarkedDiagram, r: int, s: int, pairs: tuple, marks: tuple) -> None:
    d.n_bottom = r
    d.n_top = s
    d.pairs = pairs
    d.marks = marks
    d._partner = None
    d._hash = None


def _boundary_partner(d: MarkedDiagram) -> list[int]:
    """Partner array indexed by boundary position."""
    n = d.n_bottom + d.n_top
    out = [0] * n
    for a, b in d.pairs:
        pa, pb = d.pos(a), d.pos(b)
        out[pa], out[pb] = pb, pa
    return out


def _noncrossing(d: MarkedDiagram) -> bool:
    bp = _boundary_partner(d)
    stack: list[int] = []
    for x, y in enumerate(bp):
        if y > x:
            stack.append(x)
        elif not stack or stack.pop() != y:
            return False
    return not stack


def _left_face_positions(d: MarkedDiagram) -> list[tuple[int, int]]:
    """Walk the face incident to the left wall.

    Entering the boundary just right of the left wall, each endpoint met is
    joined by its arc to its partner; the walk resumes on the boundary after
    that partner and ends when it reaches the left wall again.  The arcs used
    are exactly the arcs on the boundary of the left face.
    """
    bp = _boundary_partner(d)
    n = len(bp)
    out = []
    x = 0
    while x < n:
        y = bp[x]
        out.append((x, y))
        x = y + 1
    return out


def _outer_set(d: MarkedDiagram) -> set[tuple[int, int]]:
    r, s = d.n_bottom, d.n_top
    inv = {}
    for L in range(r + s):
        inv[d.pos(L)] = L
    return {tuple(sorted((inv[x], inv[y]))) for x, y in _left_face_positions(d)}


def left_exposed_arcs(d: MarkedDiagram) -> set[tuple[str, str]]:
    """Arcs bounding the left region, as pairs of endpoint names."""
    r = d.n_bottom
    return {(_label_name(a, r), _label_name(b, r)) for a, b in _outer_set(d)}


def parse_diagram(text: str) -> MarkedDiagram:
    """Inverse of ``str(MarkedDiagram)``; ``*`` repeated for higher mark counts."""
    m = re.fullmatch(r"\s*(\d+)\s*->\s*(\d+)\s*:(.*)", text)
    if not m:
        raise DiagramError(f"bad diagram text {text!r}")
    r, s, body = int(m.group(1)), int(m.group(2)), m.group(3).strip()
    pairs, marks = [], {}
    if body:
        for chunk in body.split(","):
            pm = re.fullmatch(r"\s*([bt]\d+)\s*-\s*([bt]\d+)\s*(\**)\s*", chunk)
            if not pm:
                raise DiagramError(f"bad pair {chunk!r}")
            a, b, stars = pm.groups()
            pairs.append((a, b))
            if stars:
                marks[(a, b)] = len(stars)
    return MarkedDiagram(r, s, pairs, marks)


# ---------------------------------------------------------------------------
# linear combinations


class DiagramSum:
    """Finite linear combination of standard diagrams of one shape."""

    __slots__ = ("n_bottom", "n_top", "terms")

    def __init__(self, n_bottom: int, n_top: int, terms: Mapping[MarkedDiagram, Any] | None = None) -> None:
        self.n_bottom = n_bottom
        self.n_top = n_top
        clean: dict[MarkedDiagram, Any] = {}
        for d, c in (terms or {}).items():
            if d.shape() != (n_bottom, n_top):
                raise DiagramError(f"term {d} does not have shape {n_bottom}->{n_top}")
            if c:
                clean[d] = c
        self.terms = clean

    @staticmethod
    def _raw(r: int, s: int, terms: dict) -> DiagramSum:
        x = object.__new__(DiagramSum)
        x.n_bottom, x.n_top, x.terms = r, s, terms
        return x

    @staticmethod
    def lift(x: MarkedDiagram | DiagramSum, one: object = None) -> DiagramSum:
        if isinstance(x, DiagramSum):
            return x
        if isinstance(x, MarkedDiagram):
            return x.to_sum(one=one)
        raise TypeError(f"expected a diagram, got {type(x).__name__}")

    def shape(self) -> tuple[int, int]:
        return self.n_bottom, self.n_top

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, d: MarkedDiagram, zero: object = 0) -> Any:
        return self.terms.get(d, zero)

    def items(self) -> list[tuple[MarkedDiagram, Any]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].key())

    def _check(self, o: DiagramSum) -> None:
        if o.shape() != self.shape():
            raise DiagramError(f"shape mismatch {self.shape()} vs {o.shape()}")

    def __add__(self, o: MarkedDiagram | DiagramSum) -> DiagramSum:
        o = DiagramSum.lift(o)
        self._check(o)
        out = dict(self.terms)
        for d, c in o.terms.items():
            v = out.get(d)
            v = c if v is None else v + c
            if v:
                out[d] = v
            else:
                out.pop(d, None)
        return DiagramSum._raw(self.n_bottom, self.n_top, out)

    def __neg__(self) -> DiagramSum:
        return DiagramSum._raw(self.n_bottom, self.n_top, {d: -c for d, c in self.terms.items()})

    def __sub__(self, o: MarkedDiagram | DiagramSum) -> DiagramSum:
        return self + (-DiagramSum.lift(o))

    def scale(self, c: object) -> DiagramSum:
        out = {}
        for d, v in self.terms.items():
            w = v * c
            if w:
                out[d] = w
        return DiagramSum._raw(self.n_bottom, self.n_top, out)

    def __eq__(self, o: object) -> bool:
        if isinstance(o, MarkedDiagram):
            o = DiagramSum.lift(o)
        if not isinstance(o, DiagramSum):
            return NotImplemented
        return self.shape() == o.shape() and self.terms == o.terms

    def __hash__(self) -> int:
        return hash((self.shape(), frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return f"0 [{self.n_bottom}->{self.n_top}]"
        return " + ".join(f"{c} * [{d}]" for d, c in self.items())

    __repr__ = __str__

    def map_coeffs(self, fn) -> DiagramSum:
        return DiagramSum(self.n_bottom, self.n_top, {d: fn(c) for d, c in self.terms.items()})


# ---------------------------------------------------------------------------
# composition


@lru_cache(maxsize=1 << 18)
def _compose_basis(top: MarkedDiagram, bottom: MarkedDiagram) -> tuple[int, int, int, MarkedDiagram]:
    """Stack ``bottom`` under ``top``.

    Returns ``(unmarked_loops, marked_loops, surplus_marks, diagram)``; the
    coefficient is ``delta_q**a * kappa**b * delta_Q**c`` for the active rules.
    """
    r, m = bottom.n_bottom, bottom.n_top
    s = top.n_top
    if top.n_bottom != m:
        raise DiagramError(f"cannot compose {top.shape()} over {bottom.shape()}")
    # global ids: bottom labels are global; top label L is global r+L
    bp, bm = bottom.partner(), bottom.mark_of()
    tp, tm = top.partner(), top.mark_of()
    lo, hi = r, r + m
    visited = [False] * m
    arcs: list[tuple[int, int, int]] = []
    done: set[int] = set()

    def walk(start: int) -> tuple[int, int]:
        x, marks = start, 0
        use_bottom = start < r
        while True:
            if use_bottom:
                y = bp[x]
                marks += bm[x]
            else:
                y = tp[x - r] + r
                marks += tm[x - r]
            if y < lo or y >= hi:
                return y, marks
            visited[y - r] = True
            x = y
            use_bottom = not use_bottom

    for start in itertools.chain(range(r), range(hi, hi + s)):
        if start in done:
            continue
        end, k = walk(start)
        done.add(end)
        done.add(start)
        a = start if start < r else start - m  # result label index
        b = end if end < r else end - m
        arcs.append((min(a, b), max(a, b), k))

    unmarked = marked = surplus = 0
    for j in range(m):
        if visited[j]:
            continue
        x = r + j
        visited[j] = True
        k = 0
        use_bottom = False
        while True:
            if use_bottom:
                y = bp[x]
                k += bm[x]
            else:
                y = tp[x - r] + r
                k += tm[x - r]
            use_bottom = not use_bottom
            if y == r + j:
                break
            visited[y - r] = True
            x = y
        if k == 0:
            unmarked += 1
        else:
            marked += 1
            surplus += k - 1

    arcs.sort()
    pairs = tuple((a, b) for a, b, _ in arcs)
    marks = []
    for _, _, k in arcs:
        if k >= 2:
            surplus += k - 1
            k = 1
        marks.append(k)
    return unmarked, marked, surplus, MarkedDiagram._trusted(r, s, pairs, tuple(marks))


def compose(
    top: MarkedDiagram | DiagramSum,
    bottom: MarkedDiagram | DiagramSum,
    rules: Rules = GENERIC,
) -> DiagramSum:
    """``top ∘ bottom``: ``bottom`` is drawn below ``top``."""
    if isinstance(top, MarkedDiagram) and isinstance(bottom, MarkedDiagram):
        a, b, c, d = _compose_basis(top, bottom)
        return DiagramSum._raw(d.n_bottom, d.n_top, {d: rules.factor(a, b, c)})
    T = DiagramSum.lift(top, rules.one)
    B = DiagramSum.lift(bottom, rules.one)
    if T.n_bottom != B.n_top:
        raise DiagramError(f"cannot compose {T.shape()} over {B.shape()}")
    out: dict[MarkedDiagram, Any] = {}
    for d1, c1 in T.terms.items():
        for d2, c2 in B.terms.items():
            a, b, c, d = _compose_basis(d1, d2)
            w = c1 * c2 * rules.factor(a, b, c)
            v = out.get(d)
            out[d] = w if v is None else v + w
    return DiagramSum._raw(B.n_bottom, T.n_top, {d: c for d, c in out.items() if c})


def standardize(d: MarkedDiagram, rules: Rules = GENERIC) -> DiagramSum:
    """Reduce surplus marks with rule (iii)."""
    surplus = sum(k - 1 for k in d.marks if k > 1)
    nd = MarkedDiagram._trusted(d.n_bottom, d.n_top, d.pairs, tuple(min(k, 1) for k in d.marks))
    return DiagramSum._raw(d.n_bottom, d.n_top, {nd: rules.factor(0, 0, surplus)})


# ---------------------------------------------------------------------------
# structural operations


def tensor_right(d: MarkedDiagram, t: MarkedDiagram) -> MarkedDiagram:
    """Juxtapose the unmarked diagram ``t`` to the right of ``d``."""
    if any(t.marks):
        raise DiagramError("the right tensor factor must be unmarked")
    r1, s1, r2, s2 = d.n_bottom, d.n_top, t.n_bottom, t.n_top
    r = r1 + r2

    def from_d(L: int) -> int:
        return L if L < r1 else r + (L - r1)

    def from_t(L: int) -> int:
        return r1 + L if L < r2 else r + s1 + (L - r2)

    arcs = [(tuple(sorted((from_d(a), from_d(b)))), k) for (a, b), k in zip(d.pairs, d.marks)]
    arcs += [(tuple(sorted((from_t(a), from_t(b)))), 0) for a, b in t.pairs]
    arcs.sort()
    return MarkedDiagram._trusted(r, s1 + s2, tuple(p for p, _ in arcs), tuple(k for _, k in arcs))


def reflect(d: MarkedDiagram) -> MarkedDiagram:
    """Mirror in a horizontal line: ``b_i <-> t_i``."""
    r, s = d.n_bottom, d.n_top

    def f(L: int) -> int:
        return s + L if L < r else L - r

    arcs = sorted((tuple(sorted((f(a), f(b)))), k) for (a, b), k in zip(d.pairs, d.marks))
    return MarkedDiagram._trusted(s, r, tuple(p for p, _ in arcs), tuple(k for _, k in arcs))


def reflect_sum(x: DiagramSum) -> DiagramSum:
    return DiagramSum._raw(x.n_top, x.n_bottom, {reflect(d): c for d, c in x.terms.items()})


def rotate_to_top(d: MarkedDiagram) -> MarkedDiagram:
    """Swing the bottom row up to the right of the top row.

    ``t_j`` keeps its name and ``b_i`` becomes ``t_{s+r+1-i}``; the boundary
    order, hence planarity and the left region, is unchanged.
    """
    r, s = d.n_bottom, d.n_top

    def f(L: int) -> int:
        return s + r - 1 - L if L < r else L - r

    arcs = sorted((tuple(sorted((f(a), f(b)))), k) for (a, b), k in zip(d.pairs, d.marks))
    return MarkedDiagram._trusted(0, r + s, tuple(p for p, _ in arcs), tuple(k for _, k in arcs))


# ---------------------------------------------------------------------------
# enumeration


def _matchings(n: int) -> Iterator[list[tuple[int, int]]]:
    """Noncrossing perfect matchings of boundary positions 0..n-1."""

    def rec(lo: int, hi: int) -> Iterator[list[tuple[int, int]]]:
        if lo >= hi:
            yield []
            return
        for j in range(lo + 1, hi, 2):
            for inner in rec(lo + 1, j):
                for outer in rec(j + 1, hi):
                    yield [(lo, j), *inner, *outer]

    yield from rec(0, n)


@lru_cache(maxsize=None)
def _enumerate(r: int, s: int) -> tuple[MarkedDiagram, ...]:
    n = r + s
    inv = [p if p < r else r + (r + s - 1 - p) for p in range(n)]  # position -> label
    out = []
    for m in _matchings(n):
        pairs = tuple(sorted(tuple(sorted((inv[x], inv[y]))) for x, y in m))
        base = MarkedDiagram._trusted(r, s, pairs, (0,) * len(pairs))
        outer = sorted(_outer_set(base))
        idx = [pairs.index(p) for p in outer]
        for bits in itertools.product((0, 1), repeat=len(idx)):
            marks = [0] * len(pairs)
            for i, b in zip(idx, bits):
                marks[i] = b
            out.append(MarkedDiagram._trusted(r, s, pairs, tuple(marks)))
    out.sort(key=lambda d: d.key())
    return tuple(out)


def enumerate_diagrams(r: int, s: int) -> list[MarkedDiagram]:
    """All standard marked diagrams ``r -> s`` in canonical order."""
    if r < 0 or s < 0:
        raise DiagramError("point counts must be nonnegative")
    if (r + s) % 2:
        raise DiagramError(f"{r}->{s}: parity violation, r+s must be even")
    return list(_enumerate(r, s))


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def count_oracle(m: int) -> int:
    """``d(m)`` three ways: the Catalan recursion, enumeration, ``C(2m, m)``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    d = [1]
    for k in range(1, m + 1):
        d.append(2 * sum(catalan(i - 1) * d[k - i] for i in range(1, k + 1)))
    by_enum = len(_enumerate(0, 2 * m))
    closed = comb(2 * m, m)
    if not d[m] == by_enum == closed:
        raise AssertionError(f"count mismatch at m={m}: recursion {d[m]}, enumeration {by_enum}, closed {closed}")
    return closed


def monic_diagrams(t: int, n: int, marked_through: bool = False) -> list[MarkedDiagram]:
    """Diagrams ``t -> n`` with ``t`` through strings.

    By default no through string carries a mark (the cell-module basis).
    """
    out = []
    for d in _enumerate(t, n):
        if d.through_count() != t:
            continue
        if not marked_through and any(k and d.is_through(p) for p, k in zip(d.pairs, d.marks)):
            continue
        out.append(d)
    return out


# ---------------------------------------------------------------------------
# named diagrams


@lru_cache(maxsize=None)
def identity(n: int) -> MarkedDiagram:
    return MarkedDiagram._trusted(n, n, tuple((i, n + i) for i in range(n)), (0,) * n)


@lru_cache(maxsize=None)
def marked_identity(n: int) -> MarkedDiagram:
    """``C_0 ⊗ I^{n-1}``: the identity with one mark on strand 1."""
    if n < 1:
        raise DiagramError("marked identity needs n >= 1")
    return MarkedDiagram._trusted(n, n, tuple((i, n + i) for i in range(n)), (1,) + (0,) * (n - 1))


def cup(marked: bool = False) -> MarkedDiagram:
    return MarkedDiagram._trusted(0, 2, ((0, 1),), (int(marked),))


def cap(marked: bool = False) -> MarkedDiagram:
    return MarkedDiagram._trusted(2, 0, ((0, 1),), (int(marked),))


@lru_cache(maxsize=None)
def e_gen(i: int, n: int) -> MarkedDiagram:
    """``I^{i-1} ⊗ (U∘A) ⊗ I^{n-i-1}``: cup-cap on strands ``i, i+1``."""
    if not 1 <= i < n:
        raise DiagramError(f"e_{i} needs 1 <= i < n={n}")
    pairs = [(i - 1, i), (n + i - 1, n + i)]
    pairs += [(k, n + k) for k in range(n) if k not in (i - 1, i)]
    pairs.sort()
    return MarkedDiagram._trusted(n, n, tuple(pairs), (0,) * len(pairs))
