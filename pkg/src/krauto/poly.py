"""Sparse multivariate polynomials with exact rational coefficients.

Every polynomial lives in Q[x, y, z, t, s].  The variable registry is closed:
``x`` is the fibration coordinate, ``y`` the blown-up coordinate, ``z`` and
``t`` the plane coordinates and ``s`` the additive-group parameter.

Monomials are exponent tuples indexed by ``VARS``.  An :class:`MPoly` is an
immutable mapping from monomials to nonzero :class:`fractions.Fraction`
coefficients, so two polynomials are equal exactly when their term maps are.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

VARS = ("x", "y", "z", "t", "s")
NVARS = len(VARS)
VAR_INDEX = {v: i for i, v in enumerate(VARS)}

# x < z < t < y < s, as positions into an exponent tuple
_ORDER_POSITIONS = (0, 2, 3, 1, 4)

Monomial = Tuple[int, int, int, int, int]
ZERO_EXP: Monomial = (0,) * NVARS

Scalar = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_divide` when the quotient is not a polynomial."""


def _var_index(v: str) -> int:
    try:
        return VAR_INDEX[v]
    except KeyError:
        raise ValueError(f"unknown variable {v!r}; expected one of {VARS}") from None


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4])


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(ea <= eb for ea, eb in zip(a, b))


def _mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(eb - ea for ea, eb in zip(a, b))  # type: ignore[return-value]


def grlex_key(m: Monomial) -> tuple:
    """Sort key of graded lex order with x < z < t < y < s."""
    return (sum(m),) + tuple(m[i] for i in reversed(_ORDER_POSITIONS))


class MPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[tuple(m)] = Fraction(c)  # type: ignore[index]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "MPoly":
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "MPoly":
        return cls._raw({ZERO_EXP: Fraction(c)} if c else {})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        e = [0] * NVARS
        e[_var_index(name)] = 1
        return cls._raw({tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, c: Scalar = 1, **exps: int) -> "MPoly":
        e = [0] * NVARS
        for v, k in exps.items():
            if k < 0:
                raise ValueError("negative exponent")
            e[_var_index(v)] = k
        return cls._raw({tuple(e): Fraction(c)} if c else {})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ZERO_EXP in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(ZERO_EXP, Fraction(0))

    def coefficient(self, **exps: int) -> Fraction:
        e = [0] * NVARS
        for v, k in exps.items():
            e[_var_index(v)] = k
        return self.terms.get(tuple(e), Fraction(0))

    def variables(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(VARS[i])
        return used

    def uses(self, v: str) -> bool:
        i = _var_index(v)
        return any(m[i] for m in self.terms)

    def degree(self, v: Optional[str] = None) -> int:
        """Total degree, or degree in ``v``.  The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if v is None:
            return max(sum(m) for m in self.terms)
        i = _var_index(v)
        return max(m[i] for m in self.terms)

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    # -- ring operations -----------------------------------------------

    @staticmethod
    def _coerce(other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly._raw({})
            return MPoly._raw({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            a0, a1, a2, a3, a4 = m1
            for m2, c2 in other.terms.items():
                m = (a0 + m2[0], a1 + m2[1], a2 + m2[2], a3 + m2[3], a4 + m2[4])
                out[m] = get(m, 0) + c1 * c2
        return MPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "MPoly":
        return self * Fraction(c)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"MPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- structural helpers --------------------------------------------

    def coeff_in(self, v: str) -> Dict[int, "MPoly"]:
        """Split into ``{k: coefficient of v^k}`` with ``v`` removed."""
        i = _var_index(v)
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            k = m[i]
            rest = m[:i] + (0,) + m[i + 1:]
            parts.setdefault(k, {})[rest] = c
        return {k: MPoly._raw(t) for k, t in parts.items()}

    def truncate_in(self, v: str, n: int) -> "MPoly":
        """Drop every term whose ``v``-exponent is ``>= n``."""
        i = _var_index(v)
        return MPoly._raw({m: c for m, c in self.terms.items() if m[i] < n})

    def shift(self, v: str, k: int) -> "MPoly":
        """Multiply by ``v**k`` (``k`` may be negative if every term allows it)."""
        i = _var_index(v)
        out = {}
        for m, c in self.terms.items():
            e = m[i] + k
            if e < 0:
                raise NotDivisible(f"term not divisible by {v}^{-k}")
            out[m[:i] + (e,) + m[i + 1:]] = c
        return MPoly._raw(out)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a rational point.

        Works over a common denominator so the inner loop is integer-only.
        """
        if not self.terms:
            return Fraction(0)
        used = [i for i in range(len(VARS)) if any(m[i] for m in self.terms)]
        vals = {}
        for i in used:
            if VARS[i] not in point:
                raise ValueError(f"no value given for {VARS[i]}")
            vals[i] = Fraction(point[VARS[i]])
        top = {i: max(m[i] for m in self.terms) for i in used}
        # p_i^e * q_i^(top - e) for the value p_i/q_i
        table = {i: [vals[i].numerator ** e * vals[i].denominator ** (top[i] - e)
                     for e in range(top[i] + 1)] for i in used}
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        total = 0
        for m, c in self.terms.items():
            term = c.numerator * (den // c.denominator)
            for i in used:
                term *= table[i][m[i]]
            total += term
        for i in used:
            den *= vals[i].denominator ** top[i]
        return Fraction(total, den)


def _to_poly(p) -> MPoly:
    if isinstance(p, MPoly):
        return p
    return MPoly.const(p)


def add(p: MPoly, q: MPoly) -> MPoly:
    return _to_poly(p) + _to_poly(q)


def mul(p: MPoly, q: MPoly) -> MPoly:
    return _to_poly(p) * _to_poly(q)


def partial(p: MPoly, v: str) -> MPoly:
    i = _var_index(v)
    out = {}
    for m, c in p.terms.items():
        e = m[i]
        if e:
            out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
    return MPoly._raw(out)


def jac(f: MPoly, g: MPoly) -> MPoly:
    """The Jacobian bracket ``f_z*g_t - f_t*g_z``.

    Coefficients may involve ``x`` (and the parameter ``s``); ``y`` is rejected.
    """
    if f.uses("y") or g.uses("y"):
        raise ValueError("jac is only defined for polynomials free of y")
    return partial(f, "z") * partial(g, "t") - partial(f, "t") * partial(g, "z")


def substitute(p: MPoly, images: Mapping[str, MPoly]) -> MPoly:
    """Simultaneously replace each variable of ``p`` by its image."""
    used = p.variables()
    missing = used - set(images)
    if missing:
        raise KeyError(f"no image given for {sorted(missing)}")
    idx = [(i, _to_poly(images[VARS[i]])) for i in range(NVARS) if VARS[i] in used]
    powers = {i: [MPoly.const(1), img] for i, img in idx}

    def power(i: int, e: int) -> MPoly:
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1] * cache[1])
        return cache[e]

    result: Dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        term = MPoly._raw({ZERO_EXP: c})
        for i, _ in idx:
            if m[i]:
                term = term * power(i, m[i])
        for mm, cc in term.terms.items():
            result[mm] = result.get(mm, 0) + cc
    return MPoly._raw({m: c for m, c in result.items() if c})


def _neg_key(m: Monomial) -> tuple:
    return tuple(-v for v in grlex_key(m))


def _reduce(p: MPoly, q: MPoly, exact: bool) -> Tuple[MPoly, MPoly]:
    """Long division of ``p`` by ``q``, largest terms first (heap ordered)."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm, lc = q.leading_term()
    rest = [(m, c) for m, c in q.terms.items() if m != lm]
    work = dict(p.terms)
    heap = [(_neg_key(m), m) for m in work]
    heapq.heapify(heap)
    quot: Dict[Monomial, Fraction] = {}
    rem: Dict[Monomial, Fraction] = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue  # stale entry
        if not _mono_divides(lm, m):
            if exact:
                raise NotDivisible(f"{format_poly(q)} does not divide {format_poly(p)}")
            rem[m] = c
            continue
        qm = _mono_div(m, lm)
        qc = c / lc
        quot[qm] = qc
        for m2, c2 in rest:
            mm = _mono_mul(qm, m2)
            old = work.get(mm)
            v = (old or 0) - qc * c2
            if v:
                work[mm] = v
                if old is None:
                    heapq.heappush(heap, (_neg_key(mm), mm))
            elif old is not None:
                del work[mm]
    return MPoly._raw(quot), MPoly._raw(rem)


def divmod_poly(p: MPoly, q: MPoly) -> Tuple[MPoly, MPoly]:
    """Division with remainder by a single divisor in graded lex order.

    Returns ``(quot, rem)`` with ``p = quot*q + rem`` where no term of
    ``rem`` is divisible by the leading monomial of ``q``.
    """
    return _reduce(p, q, exact=False)


def exact_divide(p: MPoly, q: MPoly) -> MPoly:
    """Return ``r`` with ``r*q == p``; raise :class:`NotDivisible` otherwise."""
    if len(q.terms) == 1:
        ((lm, lc),) = q.terms.items()
        out = {}
        for m, c in p.terms.items():
            if not _mono_divides(lm, m):
                raise NotDivisible(f"{format_poly(q)} does not divide {format_poly(p)}")
            out[_mono_div(m, lm)] = c / lc
        return MPoly._raw(out)
    return _reduce(p, q, exact=True)[0]


def divides(q: MPoly, p: MPoly) -> bool:
    try:
        exact_divide(p, q)
    except NotDivisible:
        return False
    return True


# -- printing ----------------------------------------------------------

DISPLAY_ORDER = ("x", "z", "t", "y", "s")


def format_rational(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: MPoly, var_order: Sequence[str] = DISPLAY_ORDER) -> str:
    """Render ``p`` in ascending graded order, e.g. ``1 - 2*x*t``.

    The output re-parses to the same polynomial.  ``var_order`` controls the
    order of variables within a monomial and the tie-break between terms.
    """
    if not p.terms:
        return "0"
    pos = [_var_index(v) for v in var_order]
    pos += [i for i in range(NVARS) if i not in pos]

    def key(item):
        m = item[0]
        return (sum(m), tuple(-m[i] for i in pos))

    pieces = []
    for m, c in sorted(p.terms.items(), key=key):
        factors = []
        for i in pos:
            e = m[i]
            if e == 1:
                factors.append(VARS[i])
            elif e > 1:
                factors.append(f"{VARS[i]}^{e}")
        mag = abs(c)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = format_rational(mag) + "*" + "*".join(factors)
        pieces.append((c < 0, body))
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def as_poly(value: Union[MPoly, Scalar, str]) -> MPoly:
    """Coerce numbers, polynomials or expression strings to :class:`MPoly`."""
    if isinstance(value, MPoly):
        return value
    if isinstance(value, str):
        from .parse import parse_poly

        return parse_poly(value)
    return MPoly.const(value)


x = MPoly.var("x")
y = MPoly.var("y")
z = MPoly.var("z")
t = MPoly.var("t")
s = MPoly.var("s")


def poly_sum(polys: Iterable[MPoly]) -> MPoly:
    out: Dict[Monomial, Fraction] = {}
    for p in polys:
        for m, c in p.terms.items():
            out[m] = out.get(m, 0) + c
    return MPoly._raw({m: c for m, c in out.items() if c})
