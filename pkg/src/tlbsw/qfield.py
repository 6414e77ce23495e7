"""Exact arithmetic over Q(i)(s, Q).

Three layers are provided:

* :class:`GaussRat` -- Gaussian rationals ``a + b*i`` on top of ``gmpy2.mpq``.
* :class:`LaurentPoly` -- Laurent polynomials in ``s`` and ``Q``.
* :class:`RatFunc` -- reduced quotients of Laurent polynomials.

The variable ``s`` stands for a square root of ``q``; ``q`` itself is ``s**2``.
Canonical form of a :class:`RatFunc`: the denominator is a genuine polynomial
not divisible by ``s`` or ``Q``, coprime to the numerator, and has leading
coefficient 1 in the lexicographic order with ``s`` before ``Q``.  Equality of
canonical forms is therefore equality of field elements.
"""

from __future__ import annotations

import ast
from collections.abc import Iterable, Mapping
from functools import lru_cache
from typing import Union

from gmpy2 import mpq

__all__ = [
    "GaussRat",
    "LaurentPoly",
    "RatFunc",
    "QFieldError",
    "SpecializationError",
    "PoleError",
    "I",
    "S",
    "Qv",
    "qq",
    "delta_q",
    "delta_Q",
    "kappa",
    "qint",
    "qfact",
    "qsym",
    "specialize",
    "eval_point",
    "parse",
    "render",
    "as_ratfunc",
]


class QFieldError(ArithmeticError):
    """Base class for arithmetic failures in the coefficient field."""


class SpecializationError(QFieldError):
    """A substitution sends a denominator to zero."""


class PoleError(QFieldError):
    """Evaluation at a point where a denominator vanishes."""


# ---------------------------------------------------------------------------
# Gaussian rationals


_Num = Union[int, "GaussRat"]


class GaussRat:
    """An element ``re + im*i`` of Q(i), stored as two reduced ``mpq``."""

    __slots__ = ("re", "im")

    def __init__(self, re: object = 0, im: object = 0) -> None:
        if isinstance(re, GaussRat):
            self.re, self.im = re.re, re.im + mpq(im)
            return
        self.re = mpq(re)
        self.im = mpq(im)

    @staticmethod
    def _mk(re: mpq, im: mpq) -> GaussRat:
        g = object.__new__(GaussRat)
        g.re = re
        g.im = im
        return g

    @staticmethod
    def coerce(x: object) -> GaussRat:
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return GaussRat._mk(mpq(x), _ZQ)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, o: _Num) -> GaussRat:
        if isinstance(o, GaussRat):
            return GaussRat._mk(self.re + o.re, self.im + o.im)
        if isinstance(o, int):
            return GaussRat._mk(self.re + o, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, o: _Num) -> GaussRat:
        if isinstance(o, GaussRat):
            return GaussRat._mk(self.re - o.re, self.im - o.im)
        if isinstance(o, int):
            return GaussRat._mk(self.re - o, self.im)
        return NotImplemented

    def __rsub__(self, o: _Num) -> GaussRat:
        if isinstance(o, int):
            return GaussRat._mk(o - self.re, -self.im)
        return NotImplemented

    def __neg__(self) -> GaussRat:
        return GaussRat._mk(-self.re, -self.im)

    def __mul__(self, o: _Num) -> GaussRat:
        if isinstance(o, GaussRat):
            a, b, c, d = self.re, self.im, o.re, o.im
            if not b and not d:
                return GaussRat._mk(a * c, _ZQ)
            return GaussRat._mk(a * c - b * d, a * d + b * c)
        if isinstance(o, int):
            return GaussRat._mk(self.re * o, self.im * o)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> GaussRat:
        a, b = self.re, self.im
        n = a * a + b * b
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussRat._mk(a / n, -b / n)

    def __truediv__(self, o: _Num) -> GaussRat:
        return self * GaussRat.coerce(o).inverse()

    def __rtruediv__(self, o: _Num) -> GaussRat:
        return GaussRat.coerce(o) * self.inverse()

    def __pow__(self, k: int) -> GaussRat:
        if k < 0:
            return self.inverse() ** (-k)
        out = _ONE_G
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> GaussRat:
        return GaussRat._mk(self.re, -self.im)

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self) -> str:
        return f"GaussRat({_fmt_q(self.re)}, {_fmt_q(self.im)})"

    def __str__(self) -> str:
        return _fmt_gauss(self)


_ZQ = mpq(0)
_ONE_G = GaussRat._mk(mpq(1), _ZQ)
_ZERO_G = GaussRat._mk(_ZQ, _ZQ)
_I_G = GaussRat._mk(_ZQ, mpq(1))


def _fmt_q(x: mpq) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _fmt_gauss(c: GaussRat) -> str:
    if not c.im:
        return _fmt_q(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_fmt_q(c.im)}*i"
    im = c.im
    sign = "+" if im > 0 else "-"
    mag = "i" if abs(im) == 1 else f"{_fmt_q(abs(im))}*i"
    return f"({_fmt_q(c.re)}{sign}{mag})"


# ---------------------------------------------------------------------------
# Laurent polynomials

Mono = tuple[int, int]
_EXP_LIMIT = 1 << 40


class LaurentPoly:
    """Finite sum of ``c * s**a * Q**b`` with Gaussian-rational ``c``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Mono, object] | None = None) -> None:
        clean: dict[Mono, GaussRat] = {}
        if terms:
            for (a, b), c in terms.items():
                g = GaussRat.coerce(c)
                if g:
                    if abs(a) > _EXP_LIMIT or abs(b) > _EXP_LIMIT:
                        raise OverflowError("exponent out of range")
                    clean[(int(a), int(b))] = g
        self.terms = clean
        self._hash: int | None = None

    @staticmethod
    def _raw(terms: dict[Mono, GaussRat]) -> LaurentPoly:
        p = object.__new__(LaurentPoly)
        p.terms = terms
        p._hash = None
        return p

    @staticmethod
    def const(c: object) -> LaurentPoly:
        g = GaussRat.coerce(c)
        return LaurentPoly._raw({(0, 0): g} if g else {})

    @staticmethod
    def mono(a: int, b: int = 0, c: object = 1) -> LaurentPoly:
        g = GaussRat.coerce(c)
        return LaurentPoly._raw({(a, b): g} if g else {})

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_one(self) -> bool:
        t = self.terms
        return len(t) == 1 and t.get((0, 0)) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and (0, 0) in t)

    def depends_on_Q(self) -> bool:
        return any(b for _, b in self.terms)

    def min_exponents(self) -> Mono:
        return (min(a for a, _ in self.terms), min(b for _, b in self.terms))

    def leading(self) -> tuple[Mono, GaussRat]:
        m = max(self.terms)
        return m, self.terms[m]

    # ring operations
    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == LaurentPoly.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, o: LaurentPoly) -> LaurentPoly:
        if not isinstance(o, LaurentPoly):
            o = LaurentPoly.const(o)
        if len(self.terms) < len(o.terms):
            small, big = self.terms, o.terms
        else:
            small, big = o.terms, self.terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, o: LaurentPoly) -> LaurentPoly:
        if not isinstance(o, LaurentPoly):
            o = LaurentPoly.const(o)
        return self + (-o)

    def __rsub__(self, o: object) -> LaurentPoly:
        return LaurentPoly.const(o) - self

    def __mul__(self, o: LaurentPoly) -> LaurentPoly:
        if not isinstance(o, LaurentPoly):
            g = GaussRat.coerce(o)
            if not g:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({m: c * g for m, c in self.terms.items()})
        out: dict[Mono, GaussRat] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in o.terms.items():
                m = (a1 + a2, b1 + b2)
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return LaurentPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if not self.is_monomial():
                raise QFieldError("negative power of a non-monomial Laurent polynomial")
            ((a, b), c), = self.terms.items()
            return LaurentPoly._raw({(a * k, b * k): c ** k})
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, da: int, db: int) -> LaurentPoly:
        return LaurentPoly._raw({(a + da, b + db): c for (a, b), c in self.terms.items()})

    def scale(self, g: GaussRat) -> LaurentPoly:
        return self * g

    def exact_div(self, o: LaurentPoly) -> LaurentPoly:
        """Quotient in the Laurent ring; raises if ``o`` does not divide ``self``."""
        if o.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if o.is_monomial():
            ((a, b), c), = o.terms.items()
            inv = c.inverse()
            return LaurentPoly._raw({(x - a, y - b): v * inv for (x, y), v in self.terms.items()})
        ma, mb = self.min_exponents()
        oa, ob = o.min_exponents()
        q = _poly_exact_div(self.shift(-ma, -mb).terms, o.shift(-oa, -ob).terms)
        if q is None:
            raise QFieldError("inexact division of Laurent polynomials")
        return LaurentPoly._raw(q).shift(ma - oa, mb - ob)

    def evaluate(self, s0: GaussRat, Q0: GaussRat) -> GaussRat:
        acc = _ZERO_G
        spow: dict[int, GaussRat] = {}
        qpow: dict[int, GaussRat] = {}
        for (a, b), c in self.terms.items():
            x = spow.get(a)
            if x is None:
                x = spow[a] = s0 ** a
            y = qpow.get(b)
            if y is None:
                y = qpow[b] = Q0 ** b
            acc = acc + c * x * y
        return acc

    def map_coeffs(self, fn) -> LaurentPoly:
        return LaurentPoly({m: fn(c) for m, c in self.terms.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({_render_poly(self)})"

    def __str__(self) -> str:
        return _render_poly(self)


def _poly_exact_div(a: dict[Mono, GaussRat], b: dict[Mono, GaussRat]) -> dict[Mono, GaussRat] | None:
    """Exact quotient of polynomials (nonnegative exponents) in lex order, or None."""
    lm = max(b)
    inv = b[lm].inverse()
    rem = dict(a)
    quo: dict[Mono, GaussRat] = {}
    while rem:
        top = max(rem)
        e = (top[0] - lm[0], top[1] - lm[1])
        if e[0] < 0 or e[1] < 0:
            return None
        c = rem[top] * inv
        quo[e] = c
        for (x, y), v in b.items():
            m = (x + e[0], y + e[1])
            w = rem.get(m)
            w = -(c * v) if w is None else w - c * v
            if w:
                rem[m] = w
            else:
                rem.pop(m, None)
    return quo


# ---------------------------------------------------------------------------
# univariate (in s) and bivariate polynomial gcd

UPoly = tuple  # dense tuple of GaussRat, index = exponent of s, no trailing zeros


def _u_trim(c: list[GaussRat]) -> UPoly:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _u_sub(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else _ZERO_G) - (b[k] if k < len(b) else _ZERO_G) for k in range(n)]
    return _u_trim(out)


def _u_mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return ()
    out = [_ZERO_G] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return _u_trim(out)


def _u_divmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError
    rem = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    if len(rem) <= db:
        return (), a
    quo = [_ZERO_G] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        c = c * inv
        quo[k - db] = c
        for j in range(db + 1):
            rem[k - db + j] = rem[k - db + j] - c * b[j]
    return _u_trim(quo), _u_trim(rem[:db])


def _u_monic(a: UPoly) -> UPoly:
    if not a or a[-1] == 1:
        return a
    inv = a[-1].inverse()
    return tuple(x * inv for x in a)


def _u_gcd(a: UPoly, b: UPoly) -> UPoly:
    # monic remainders keep rational coefficient growth in check
    a, b = _u_monic(a), _u_monic(b)
    while b:
        a, b = b, _u_monic(_u_divmod(a, b)[1])
    return a


def _u_eval(a: UPoly, x: GaussRat) -> GaussRat:
    acc = _ZERO_G
    for c in reversed(a):
        acc = acc * x + c
    return acc


BPoly = dict  # exponent of Q -> UPoly in s (nonzero)


def _to_bpoly(terms: dict[Mono, GaussRat]) -> BPoly:
    rows: dict[int, list[GaussRat]] = {}
    for (a, b), c in terms.items():
        row = rows.setdefault(b, [])
        if len(row) <= a:
            row.extend([_ZERO_G] * (a + 1 - len(row)))
        row[a] = c
    return {b: tuple(r) for b, r in rows.items()}


def _from_bpoly(p: BPoly) -> dict[Mono, GaussRat]:
    return {(a, b): c for b, row in p.items() for a, c in enumerate(row) if c}


def _b_content(p: BPoly) -> UPoly:
    g: UPoly = ()
    for row in p.values():
        g = _u_gcd(g, row) if g else _u_monic(row)
        if len(g) == 1:
            break
    return g


def _b_div_u(p: BPoly, c: UPoly) -> BPoly:
    if len(c) == 1:
        inv = c[0].inverse()
        return {b: tuple(x * inv for x in row) for b, row in p.items()}
    out = {}
    for b, row in p.items():
        q, r = _u_divmod(row, c)
        assert not r
        out[b] = q
    return out


def _b_prem(a: BPoly, b: BPoly) -> BPoly:
    db = max(b)
    lcb = b[db]
    rem = dict(a)
    while rem and max(rem) >= db:
        dr = max(rem)
        lcr = rem[dr]
        new: BPoly = {}
        for e, row in rem.items():
            new[e] = _u_mul(row, lcb)
        for e, row in b.items():
            k = e + dr - db
            new[k] = _u_sub(new.get(k, ()), _u_mul(row, lcr))
        rem = {e: r for e, r in new.items() if r}
    return rem


_PROBES = tuple(GaussRat(k) for k in (3, -2, 5, 7, -11, 13, 17, -19))


def _coprime_in_Q(a: BPoly, b: BPoly) -> bool:
    """True only if ``gcd(a, b)`` certainly has degree 0 in ``Q``.

    At a point ``s0`` where neither leading coefficient vanishes, the
    specialized gcd is a multiple of the specialized true gcd of the same
    ``Q``-degree, so a constant specialized gcd is a proof.
    """
    da, db = max(a), max(b)
    if da == 0 or db == 0:
        return True
    for s0 in _PROBES:
        if _u_eval(a[da], s0) and _u_eval(b[db], s0):
            A = _u_trim([_u_eval(a.get(e, ()), s0) for e in range(da + 1)])
            B = _u_trim([_u_eval(b.get(e, ()), s0) for e in range(db + 1)])
            return len(_u_gcd(A, B)) == 1
    return False


def _b_gcd(a: BPoly, b: BPoly) -> BPoly:
    """gcd in Q(i)[s][Q] via content splitting and a primitive remainder sequence."""
    ca, cb = _b_content(a), _b_content(b)
    c = _u_gcd(ca, cb)
    if _coprime_in_Q(a, b):
        return {0: c}
    a, b = _b_div_u(a, ca), _b_div_u(b, cb)
    if max(a) < max(b):
        a, b = b, a
    while b:
        if max(b) == 0:
            return {0: c}
        r = _b_prem(a, b)
        a = b
        b = _b_div_u(r, _b_content(r)) if r else {}
    return {e: _u_mul(row, c) for e, row in a.items()}


def _poly_gcd(x: dict[Mono, GaussRat], y: dict[Mono, GaussRat]) -> dict[Mono, GaussRat]:
    return _from_bpoly(_b_gcd(_to_bpoly(x), _to_bpoly(y)))


def _poly_monic(t: dict[Mono, GaussRat]) -> tuple[dict[Mono, GaussRat], GaussRat]:
    lc = t[max(t)]
    inv = lc.inverse()
    return {m: c * inv for m, c in t.items()}, lc


# ---------------------------------------------------------------------------
# rational functions


_ONE_LP = LaurentPoly.const(1)
_ZERO_LP = LaurentPoly._raw({})


class RatFunc:
    """Element of Q(i)(s, Q) in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: object = 0, den: object = 1) -> None:
        n = num if isinstance(num, LaurentPoly) else LaurentPoly.const(num)
        d = den if isinstance(den, LaurentPoly) else LaurentPoly.const(den)
        self.num, self.den = _normalize(n, d)
        self._hash = None

    @staticmethod
    def _raw(num: LaurentPoly, den: LaurentPoly = _ONE_LP) -> RatFunc:
        r = object.__new__(RatFunc)
        r.num = num
        r.den = den
        r._hash = None
        return r

    @staticmethod
    def from_laurent(p: LaurentPoly) -> RatFunc:
        return RatFunc._raw(p, _ONE_LP)

    # predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def depends_on_Q(self) -> bool:
        return self.num.depends_on_Q() or self.den.depends_on_Q()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, GaussRat)):
            return self.den.is_one() and self.num == LaurentPoly.const(other)
        if isinstance(other, LaurentPoly):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # arithmetic
    def __add__(self, o: object) -> RatFunc:
        o = as_ratfunc(o)
        if self.den.is_one() and o.den.is_one():
            return RatFunc._raw(self.num + o.num)
        if self.den == o.den:
            return _make(self.num + o.num, self.den)
        # Henrici: only gcds of the (small) denominators and their cofactors
        b, d = self.den, o.den
        if b.is_one():
            return _make(self.num * d + o.num, d, reduce=False)
        if d.is_one():
            return _make(self.num + o.num * b, b, reduce=False)
        g = _lgcd(b, d)
        if g is _ONE_LP:
            return _make(self.num * d + o.num * b, b * d, reduce=False)
        b1, d1 = b.exact_div(g), d.exact_div(g)
        num = self.num * d1 + o.num * b1
        if num.is_zero():
            return RatFunc._raw(_ZERO_LP)
        g2 = _lgcd(num, g)
        return _make(_ldiv(num, g2), b1 * _ldiv(d, g2), reduce=False)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, o: object) -> RatFunc:
        return self + (-as_ratfunc(o))

    def __rsub__(self, o: object) -> RatFunc:
        return as_ratfunc(o) + (-self)

    def __mul__(self, o: object) -> RatFunc:
        if isinstance(o, (int, GaussRat)):
            g = GaussRat.coerce(o)
            if not g:
                return RatFunc._raw(_ZERO_LP)
            return RatFunc._raw(self.num * g, self.den)
        o = as_ratfunc(o)
        if self.den.is_one() and o.den.is_one():
            return RatFunc._raw(self.num * o.num)
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc._raw(_ZERO_LP)
        g1 = _ONE_LP if o.den.is_one() else _lgcd(self.num, o.den)
        g2 = _ONE_LP if self.den.is_one() else _lgcd(o.num, self.den)
        return _make(
            _ldiv(self.num, g1) * _ldiv(o.num, g2),
            _ldiv(self.den, g2) * _ldiv(o.den, g1),
            reduce=False,
        )

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(i)(s,Q)")
        return _make(self.den, self.num, reduce=False)

    def __truediv__(self, o: object) -> RatFunc:
        o = as_ratfunc(o)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(i)(s,Q)")
        if o.den.is_one() and o.num.is_monomial():
            ((a, b), c), = o.num.terms.items()
            inv = c.inverse()
            return RatFunc._raw(
                LaurentPoly._raw({(x - a, y - b): v * inv for (x, y), v in self.num.terms.items()}),
                self.den,
            )
        return self * o.inverse()

    def __rtruediv__(self, o: object) -> RatFunc:
        return as_ratfunc(o) / self

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inverse() ** (-k)
        # coprime stays coprime; a power of a monic denominator stays monic
        return RatFunc._raw(self.num**k, self.den**k)

    def evaluate(self, s0: GaussRat, Q0: GaussRat | None = None) -> GaussRat:
        return eval_point(self, s0, Q0)

    def __repr__(self) -> str:
        return f"RatFunc({render(self)})"

    def __str__(self) -> str:
        return render(self)


def _make(num: LaurentPoly, den: LaurentPoly, reduce: bool = True) -> RatFunc:
    n, d = _normalize(num, den, reduce)
    return RatFunc._raw(n, d)


def _lgcd(x: LaurentPoly, y: LaurentPoly) -> LaurentPoly:
    """gcd of two nonzero Laurent polynomials, as a polynomial with no monomial factor."""
    if x.is_monomial() or y.is_monomial():
        return _ONE_LP
    xa, xb = x.min_exponents()
    ya, yb = y.min_exponents()
    g = _poly_gcd(x.shift(-xa, -xb).terms, y.shift(-ya, -yb).terms)
    if len(g) == 1:
        return _ONE_LP
    return LaurentPoly._raw(g)


def _ldiv(x: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return x if g is _ONE_LP else x.exact_div(g)


def _normalize(num: LaurentPoly, den: LaurentPoly, reduce: bool = True) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return _ZERO_LP, _ONE_LP
    da, db = den.min_exponents()
    if den.is_monomial():
        c = den.terms[(da, db)].inverse()
        return LaurentPoly._raw({(a - da, b - db): v * c for (a, b), v in num.terms.items()}), _ONE_LP
    d = den.shift(-da, -db).terms
    na, nb = num.min_exponents()
    n = num.shift(-na, -nb).terms
    g = _poly_gcd(n, d) if reduce else {}
    if len(g) > 1:
        n = _poly_exact_div(n, g)
        d = _poly_exact_div(d, g)
        assert n is not None and d is not None
    d, lc = _poly_monic(d)
    inv = lc.inverse()
    num_out = LaurentPoly._raw({(a + na - da, b + nb - db): v * inv for (a, b), v in n.items()})
    if len(d) == 1:
        ((a, b), _), = d.items()
        return num_out.shift(-a, -b), _ONE_LP
    ea, eb = min(a for a, _ in d), min(b for _, b in d)
    if ea or eb:
        d = {(a - ea, b - eb): v for (a, b), v in d.items()}
        num_out = num_out.shift(-ea, -eb)
    return num_out, LaurentPoly._raw(d)


def as_ratfunc(x: object) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc._raw(x)
    if isinstance(x, (int, GaussRat)):
        return RatFunc._raw(LaurentPoly.const(x))
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")


# ---------------------------------------------------------------------------
# named constants and quantum numbers

I = RatFunc._raw(LaurentPoly.mono(0, 0, _I_G))
S = RatFunc._raw(LaurentPoly.mono(1, 0))
Qv = RatFunc._raw(LaurentPoly.mono(0, 1))
qq = RatFunc._raw(LaurentPoly.mono(2, 0))


def delta_q() -> RatFunc:
    """Value of an unmarked loop: ``-(q + q^-1)``."""
    return RatFunc._raw(LaurentPoly({(2, 0): -1, (-2, 0): -1}))


def delta_Q() -> RatFunc:
    """``-(Q + Q^-1)``."""
    return RatFunc._raw(LaurentPoly({(0, 1): -1, (0, -1): -1}))


def kappa() -> RatFunc:
    """Value of a loop carrying one mark: ``q/Q + Q/q``."""
    return RatFunc._raw(LaurentPoly({(2, -1): 1, (-2, 1): 1}))


@lru_cache(maxsize=None)
def qint(k: int) -> RatFunc:
    """``<k> = (1 - q^{-2k}) / (1 - q^{-2})``, a Laurent polynomial in ``s``."""
    if k < 0:
        raise ValueError("qint needs k >= 0")
    return RatFunc._raw(LaurentPoly({(-4 * j, 0): 1 for j in range(k)}))


@lru_cache(maxsize=None)
def qfact(k: int) -> RatFunc:
    """``<1><2>...<k>``; the empty product is 1."""
    if k < 0:
        raise ValueError("qfact needs k >= 0")
    out = RatFunc._raw(_ONE_LP)
    for j in range(1, k + 1):
        out = out * qint(j)
    return out


@lru_cache(maxsize=None)
def qsym(n: int) -> RatFunc:
    """Balanced quantum integer ``[n] = (q^n - q^-n)/(q - q^-1)``."""
    if n < 0:
        return -qsym(-n)
    return RatFunc._raw(LaurentPoly({(2 * (n - 1 - 2 * j), 0): 1 for j in range(n)}))


# ---------------------------------------------------------------------------
# substitution and evaluation


def _subst_poly(p: LaurentPoly, s_val: RatFunc, q_val: RatFunc) -> RatFunc:
    spow: dict[int, RatFunc] = {}
    qpow: dict[int, RatFunc] = {}
    acc = RatFunc._raw(_ZERO_LP)
    for (a, b), c in p.terms.items():
        x = spow.get(a)
        if x is None:
            x = spow[a] = s_val ** a
        y = qpow.get(b)
        if y is None:
            y = qpow[b] = q_val ** b
        acc = acc + x * y * c
    return acc


def specialize(f: RatFunc, sub: Mapping[str, object]) -> RatFunc:
    """Substitute ``Q`` (and optionally ``s``) by rational functions of ``s``."""
    f = as_ratfunc(f)
    unknown = set(sub) - {"Q", "s"}
    if unknown:
        raise KeyError(f"unknown variables {sorted(unknown)}")
    q_val = as_ratfunc(sub["Q"]) if "Q" in sub else Qv
    s_val = as_ratfunc(sub["s"]) if "s" in sub else S
    for name, v in (("Q", q_val), ("s", s_val)):
        if name in sub and v.depends_on_Q():
            raise ValueError(f"value for {name} must not involve Q")
        if name in sub and v.is_zero():
            raise SpecializationError(f"{name} -> 0 is not allowed (Laurent variable)")
    den = _subst_poly(f.den, s_val, q_val)
    if den.is_zero():
        raise SpecializationError(f"denominator factor {_vanishing_factor(f.den, s_val, q_val)} vanishes")
    return _subst_poly(f.num, s_val, q_val) / den


def _vanishing_factor(den: LaurentPoly, s_val: RatFunc, q_val: RatFunc) -> str:
    if s_val == S:
        # gcd of den with the numerator of Q - q_val isolates the factor that dies
        lin = (Qv - q_val)
        ma, mb = lin.num.min_exponents()
        g = _poly_gcd(den.terms, lin.num.shift(-ma, -mb).terms)
        if len(g) > 0:
            mon, _ = _poly_monic(g)
            return render(RatFunc._raw(LaurentPoly._raw(mon)))
    return render(RatFunc._raw(den))


def eval_point(f: RatFunc, s0: object, Q0: object | None = None) -> GaussRat:
    """Exact value of ``f`` at ``s = s0, Q = Q0``."""
    f = as_ratfunc(f)
    s0 = GaussRat.coerce(s0)
    if not s0:
        raise PoleError("s = 0 is a pole of the Laurent variable")
    if Q0 is None:
        if f.depends_on_Q():
            raise ValueError("a value for Q is required")
        Q0 = _ONE_G
    Q0 = GaussRat.coerce(Q0)
    if not Q0 and f.depends_on_Q():
        raise PoleError("Q = 0 is a pole of the Laurent variable")
    d = f.den.evaluate(s0, Q0)
    if not d:
        raise PoleError(f"denominator {render(RatFunc._raw(f.den))} vanishes at s={s0}, Q={Q0}")
    return f.num.evaluate(s0, Q0) / d


# ---------------------------------------------------------------------------
# text rendering and parsing


def _render_mono(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("s" if a == 1 else f"s^{a}")
    if b:
        parts.append("Q" if b == 1 else f"Q^{b}")
    return "*".join(parts)


def _render_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, m in enumerate(sorted(p.terms, reverse=True)):
        c = p.terms[m]
        mono = _render_mono(*m)
        neg = c.is_real() and c.re < 0
        if neg:
            c = -c
        if not mono:
            body = _fmt_gauss(c)
        elif c == 1:
            body = mono
        else:
            body = f"{_fmt_gauss(c)}*{mono}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def render(f: object) -> str:
    """Parenthesized text form, parseable by :func:`parse`."""
    f = as_ratfunc(f)
    if f.den.is_one():
        return f"({_render_poly(f.num)})"
    return f"({_render_poly(f.num)})/({_render_poly(f.den)})"


_NAMES = {"s": S, "Q": Qv, "q": qq, "i": I}


def parse(text: str) -> RatFunc:
    """Parse the grammar produced by :func:`render`.

    Accepted: integers, the names ``s``, ``q`` (= s^2), ``Q``, ``i``, the
    operators ``+ - * /``, parentheses and integer exponents ``^n``.
    """
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None
    return _eval_ast(tree.body, text)


def _eval_ast(node: ast.AST, text: str) -> RatFunc:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return as_ratfunc(node.value)
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_ast(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            return _eval_ast(node.left, text) ** _int_exponent(node.right, text)
        left, right = _eval_ast(node.left, text), _eval_ast(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    raise ValueError(f"unsupported syntax in {text!r}")


def _int_exponent(node: ast.AST, text: str) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_exponent(node.operand, text)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.UAdd):
        return _int_exponent(node.operand, text)
    raise ValueError(f"exponents must be integers in {text!r}")


def from_terms(terms: Iterable[tuple[int, int, object]]) -> RatFunc:
    """Build a Laurent polynomial from ``(e_s, e_Q, coeff)`` triples."""
    acc: dict[Mono, GaussRat] = {}
    for a, b, c in terms:
        acc[(a, b)] = acc.get((a, b), _ZERO_G) + GaussRat.coerce(c)
    return RatFunc._raw(LaurentPoly(acc))
