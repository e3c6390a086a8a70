"""Monomial splitting relative to (k, l) and Jacobian preimages modulo r0.

Throughout, ``r0 = z^k + t^l`` with ``2 <= k < l`` coprime.  A monomial
``z^i t^j`` is a *span* monomial when ``i <= k-2`` and ``j <= l-2``; all other
monomials lie in the ideal ``(z^(k-1), t^(l-1))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .poly import MPoly, divmod_poly, grlex_key, jac, poly_sum

_X, _Y, _Z, _T, _S = range(5)


def check_kl(k: int, l: int) -> None:
    if not (2 <= k < l) or gcd(k, l) != 1:
        raise ValueError(f"need 2 <= k < l with gcd(k, l) = 1, got k={k}, l={l}")


def russell_r0(k: int, l: int) -> MPoly:
    return MPoly.monomial(z=k) + MPoly.monomial(t=l)


def is_span_monomial(i: int, j: int, k: int, l: int) -> bool:
    return i <= k - 2 and j <= l - 2


@dataclass(frozen=True)
class SplitDecomposition:
    span_part: MPoly
    ideal_part: MPoly


@dataclass(frozen=True)
class PreimageResult:
    """Pair ``(h, f)`` with ``jac(h, r0) == target + r0*f``."""

    h: MPoly
    f: MPoly


def split(u: MPoly, k: int, l: int) -> SplitDecomposition:
    check_kl(k, l)
    if u.uses("x") or u.uses("y") or u.uses("s"):
        raise ValueError("split expects a polynomial in z and t only")
    span, ideal = {}, {}
    for m, c in u.terms.items():
        if is_span_monomial(m[_Z], m[_T], k, l):
            span[m] = c
        else:
            ideal[m] = c
    return SplitDecomposition(MPoly(span), MPoly(ideal))


def jacobian_preimage(a: int, b: int, k: int, l: int) -> PreimageResult:
    """Preimage of the monomial ``z^a t^b`` under ``jac(., r0)`` modulo r0.

    For ``a >= k-1`` the Hamiltonian is a multiple of ``z^(a-k+1) t^(b+1)``;
    otherwise (``b >= l-1``) the roles of z and t are exchanged and the
    Hamiltonian is a multiple of ``z^(a+1) t^(b-l+1)``.  The identity is
    checked by expansion before returning.
    """
    check_kl(k, l)
    if a < 0 or b < 0:
        raise ValueError("negative exponent")
    if a >= k - 1:
        denom = k * (b + 1) + l * (a - k + 1)
        assert denom > 0
        lam = Fraction(1, denom)
        h = MPoly.monomial(-lam, z=a - k + 1, t=b + 1)
        if a >= k:
            f = MPoly.monomial(-lam * l * (a - k + 1), z=a - k, t=b)
        else:
            f = MPoly()
    elif b >= l - 1:
        denom = k * (b - l + 1) + l * (a + 1)
        assert denom > 0
        lam = Fraction(1, denom)
        h = MPoly.monomial(lam, z=a + 1, t=b - l + 1)
        if b >= l:
            f = MPoly.monomial(-lam * k * (b - l + 1), z=a, t=b - l)
        else:
            f = MPoly()
    else:
        raise ValueError(f"z^{a}*t^{b} is not in the ideal (z^{k - 1}, t^{l - 1})")
    r0 = russell_r0(k, l)
    target = MPoly.monomial(z=a, t=b)
    if jac(h, r0) != target + r0 * f:
        raise ArithmeticError(f"Jacobian preimage identity failed for z^{a}*t^{b}")
    return PreimageResult(h, f)


def preimage_of_polynomial(t_part: MPoly, k: int, l: int) -> PreimageResult:
    """Preimage of an ideal-part polynomial, assembled by linearity.

    Multiples of r0 are divided out first and routed into ``f``; the
    remainder is handled monomial by monomial in graded lex order.
    """
    check_kl(k, l)
    if t_part.uses("x") or t_part.uses("y") or t_part.uses("s"):
        raise ValueError("expected a polynomial in z and t only")
    r0 = russell_r0(k, l)
    quot, rem = divmod_poly(t_part, r0)
    hs, fs = [], [-quot]
    for m in sorted(rem.terms, key=grlex_key):
        c = rem.terms[m]
        pre = jacobian_preimage(m[_Z], m[_T], k, l)
        hs.append(pre.h * c)
        fs.append(pre.f * c)
    h, f = poly_sum(hs), poly_sum(fs)
    if jac(h, r0) != t_part + r0 * f:
        raise ArithmeticError("Jacobian preimage identity failed")
    return PreimageResult(h, f)
