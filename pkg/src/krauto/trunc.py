"""Arithmetic in R_d = Q[x]/(x^d)[z, t] and ideal membership with cofactors.

An element of R_d is stored as its ``d`` coefficients with respect to ``x``;
each coefficient is a polynomial in ``z`` and ``t`` (and, for the
parametrised variants, the group parameter ``s``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .poly import MPoly, NotDivisible, exact_divide, format_poly, poly_sum

_ZERO = MPoly()
_ONE = MPoly.const(1)
_X = MPoly.var("x")


class NotMember(ArithmeticError):
    """The target is not a multiple of the generator in R_d.

    ``order`` is the x-adic order at which exact division first failed.
    """

    def __init__(self, order: int, message: str = ""):
        super().__init__(message or f"not a member: division fails at order {order}")
        self.order = order


class TruncElem:
    __slots__ = ("d", "coeffs")

    def __init__(self, d: int, coeffs: Sequence[MPoly]):
        if d < 1:
            raise ValueError("truncation order must be >= 1")
        cs = list(coeffs)[:d]
        cs += [_ZERO] * (d - len(cs))
        for c in cs:
            if c.uses("x") or c.uses("y"):
                raise ValueError("coefficients of a truncated element must be free of x and y")
        self.d = d
        self.coeffs: Tuple[MPoly, ...] = tuple(cs)

    @classmethod
    def const(cls, d: int, c) -> "TruncElem":
        return cls(d, [MPoly.const(c)])

    @classmethod
    def one(cls, d: int) -> "TruncElem":
        return cls(d, [_ONE])

    @classmethod
    def zero(cls, d: int) -> "TruncElem":
        return cls(d, [])

    @classmethod
    def from_poly(cls, p: MPoly, d: int) -> "TruncElem":
        return truncate(p, d, allow_parameter=True)

    def to_poly(self) -> MPoly:
        return poly_sum(c.shift("x", m) for m, c in enumerate(self.coeffs) if c)

    def _check(self, other: "TruncElem"):
        if not isinstance(other, TruncElem):
            raise TypeError("expected a TruncElem")
        if other.d != self.d:
            raise ValueError(f"mismatched truncation orders {self.d} and {other.d}")

    def __add__(self, other: "TruncElem") -> "TruncElem":
        self._check(other)
        return TruncElem(self.d, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncElem") -> "TruncElem":
        self._check(other)
        return TruncElem(self.d, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "TruncElem":
        return TruncElem(self.d, [-a for a in self.coeffs])

    def __mul__(self, other) -> "TruncElem":
        if isinstance(other, (int, Fraction)):
            return TruncElem(self.d, [a * other for a in self.coeffs])
        if isinstance(other, MPoly):
            other = truncate(other, self.d, allow_parameter=True)
        self._check(other)
        d = self.d
        out = []
        for n in range(d):
            out.append(poly_sum(self.coeffs[i] * other.coeffs[n - i]
                                for i in range(n + 1)
                                if self.coeffs[i] and other.coeffs[n - i]))
        return TruncElem(d, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncElem":
        result = TruncElem.one(self.d)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncElem):
            return NotImplemented
        return self.d == other.d and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.d, self.coeffs))

    def __repr__(self) -> str:
        return f"TruncElem(d={self.d}, {format_poly(self.to_poly())!r})"

    def __str__(self) -> str:
        return format_poly(self.to_poly())

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def shift(self, k: int) -> "TruncElem":
        """Multiply by ``x^k``."""
        return TruncElem(self.d, [_ZERO] * k + list(self.coeffs[: self.d - k]))

    def order(self) -> int:
        """x-adic valuation; ``d`` for the zero element."""
        for m, c in enumerate(self.coeffs):
            if c:
                return m
        return self.d

    def scale_x(self, mu) -> "TruncElem":
        """Apply ``x -> mu*x``."""
        mu = Fraction(mu)
        return TruncElem(self.d, [c * (mu ** m) for m, c in enumerate(self.coeffs)])

    def map_coeffs(self, fn) -> "TruncElem":
        return TruncElem(self.d, [fn(c) for c in self.coeffs])

    def retruncate(self, d: int) -> "TruncElem":
        return TruncElem(d, self.coeffs[:d])


def truncate(p: MPoly, d: int, allow_parameter: bool = False) -> TruncElem:
    """Image of ``p`` in R_d: drop all terms with x-exponent ``>= d``."""
    if d < 1:
        raise ValueError("truncation order must be >= 1")
    if p.uses("y"):
        raise ValueError("cannot truncate a polynomial involving y")
    if p.uses("s") and not allow_parameter:
        raise ValueError("cannot truncate a polynomial involving the parameter s")
    parts = p.coeff_in("x")
    return TruncElem(d, [parts.get(m, _ZERO) for m in range(d)])


def unit_inverse(u: TruncElem) -> TruncElem:
    """Inverse of a unit of R_d, computed order by order in x."""
    c0 = u.coeffs[0]
    if not c0 or not c0.is_constant():
        raise ValueError("not a unit: the x^0 coefficient must be a nonzero constant")
    inv0 = 1 / c0.constant_term()
    v: List[MPoly] = [MPoly.const(inv0)]
    for n in range(1, u.d):
        acc = poly_sum(u.coeffs[i] * v[n - i] for i in range(1, n + 1) if u.coeffs[i])
        v.append(acc * (-inv0))
    return TruncElem(u.d, v)


@dataclass(frozen=True)
class MembershipCofactor:
    """Certificate ``b`` with ``b*G == T`` in R_d."""

    b: TruncElem

    def verify(self, target: TruncElem, generator: TruncElem) -> bool:
        return self.b * generator == target


def ideal_membership(target: TruncElem, generator: TruncElem) -> MembershipCofactor:
    """Find ``b`` with ``b*generator == target`` in R_d.

    Works one x-adic order at a time: the current lowest coefficient of the
    residual must be divisible by the x^0 coefficient of the generator.
    Raises :class:`NotMember` (with the failing order) if no cofactor exists.
    """
    if target.d != generator.d:
        raise ValueError("mismatched truncation orders")
    g0 = generator.coeffs[0]
    if not g0:
        raise ValueError("generator must have a nonzero x^0 coefficient")
    d = target.d
    residual = list(target.coeffs)
    b: List[MPoly] = []
    for n in range(d):
        try:
            bn = exact_divide(residual[n], g0)
        except NotDivisible:
            raise NotMember(n) from None
        b.append(bn)
        if bn:
            for m in range(n, d):
                gc = generator.coeffs[m - n]
                if gc:
                    residual[m] = residual[m] - bn * gc
    return MembershipCofactor(TruncElem(d, b))


def membership_with_parameter(target: TruncElem, generator: TruncElem) -> MembershipCofactor:
    """Membership for targets whose coefficients are polynomials in ``s``.

    The generator must be free of ``s``; the cofactor then lies in
    Q[s][z, t] and certifies membership for every value of the parameter.
    """
    if any(c.uses("s") for c in generator.coeffs):
        raise ValueError("generator must not depend on the parameter s")
    return ideal_membership(target, generator)


def is_member(target: TruncElem, generator: TruncElem) -> bool:
    try:
        ideal_membership(target, generator)
    except NotMember:
        return False
    return True
