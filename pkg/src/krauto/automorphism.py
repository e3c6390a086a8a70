"""Automorphisms of R_d and of polynomial rings.

A :class:`TruncAut` is a Q-algebra endomorphism of R_d determined by
``x -> mu*x`` and the images of ``z`` and ``t``.  Exponentials of Jacobian
derivations ``x^nu * jac(h, .)`` are the main source of such maps; they are
finite sums in R_d because every application carries another ``x^nu``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional

from .poly import MPoly, format_poly, partial, substitute
from .trunc import (
    MembershipCofactor,
    NotMember,
    TruncElem,
    membership_with_parameter,
    truncate,
)

_ZERO = MPoly()
_Z = MPoly.var("z")
_T = MPoly.var("t")
_S = MPoly.var("s")


class NonHamiltonianIncrement(ValueError):
    """The level increment of an automorphism is not a Hamiltonian vector field."""


def trunc_partial(p: TruncElem, v: str) -> TruncElem:
    return p.map_coeffs(lambda c: partial(c, v))


def trunc_jac(h: TruncElem, p: TruncElem) -> TruncElem:
    """``h_z*p_t - h_t*p_z`` computed in R_d."""
    return (trunc_partial(h, "z") * trunc_partial(p, "t")
            - trunc_partial(h, "t") * trunc_partial(p, "z"))


@dataclass(frozen=True)
class Derivation:
    """The Q[x]-derivation ``x^nu * jac(hamiltonian, .)``.

    ``hamiltonian`` is a polynomial in z and t; coefficients may involve x.
    """

    nu: int
    hamiltonian: MPoly

    def __post_init__(self):
        if self.nu < 1:
            raise ValueError("nu must be >= 1 so that the exponential is finite")
        if self.hamiltonian.uses("y") or self.hamiltonian.uses("s"):
            raise ValueError("hamiltonian must be a polynomial in x, z, t")

    def __neg__(self) -> "Derivation":
        return Derivation(self.nu, -self.hamiltonian)

    def apply(self, p: TruncElem) -> TruncElem:
        h = truncate(self.hamiltonian, p.d)
        return trunc_jac(h, p).shift(self.nu)

    def exp_apply(self, p: TruncElem, parameter: bool = False) -> TruncElem:
        """``exp(D)(p)``, or ``exp(s*D)(p)`` when ``parameter`` is set."""
        total = p
        term = p
        m = 0
        while True:
            m += 1
            term = self.apply(term)
            if term.is_zero():
                break
            scaled = term * Fraction(1, factorial(m))
            if parameter:
                scaled = scaled.map_coeffs(lambda c: c * _S ** m)
            total = total + scaled
        return total


class TruncAut:
    """Endomorphism of R_d given by ``x -> mu*x``, ``z -> z_image``, ``t -> t_image``."""

    __slots__ = ("d", "mu", "z_image", "t_image")

    def __init__(self, d: int, mu, z_image: TruncElem, t_image: TruncElem):
        if z_image.d != d or t_image.d != d:
            raise ValueError("image truncation orders must equal d")
        mu = Fraction(mu)
        if not mu:
            raise ValueError("mu must be nonzero")
        self.d = d
        self.mu = mu
        self.z_image = z_image
        self.t_image = t_image

    @classmethod
    def identity(cls, d: int) -> "TruncAut":
        return cls(d, 1, truncate(_Z, d), truncate(_T, d))

    @classmethod
    def from_images(cls, d: int, z_image, t_image, mu=1) -> "TruncAut":
        return cls(d, mu, truncate(z_image, d), truncate(t_image, d))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncAut):
            return NotImplemented
        return (self.d, self.mu, self.z_image, self.t_image) == (
            other.d, other.mu, other.z_image, other.t_image)

    def __hash__(self):
        return hash((self.d, self.mu, self.z_image, self.t_image))

    def __repr__(self) -> str:
        return (f"TruncAut(d={self.d}, mu={self.mu}, z -> {self.z_image}, "
                f"t -> {self.t_image})")

    def is_identity(self) -> bool:
        return self == TruncAut.identity(self.d)


class _PowerCache:
    def __init__(self, base: TruncElem):
        self.powers = [TruncElem.one(base.d), base]

    def __getitem__(self, e: int) -> TruncElem:
        ps = self.powers
        while len(ps) <= e:
            ps.append(ps[-1] * ps[1])
        return ps[e]


def _substitute_trunc(q: MPoly, zc: _PowerCache, tc: _PowerCache, d: int) -> TruncElem:
    """Evaluate ``q(z, t)`` (coefficients may involve s) at truncated images."""
    acc: List[MPoly] = [_ZERO] * d
    sums: List[dict] = [dict() for _ in range(d)]
    for m, c in q.terms.items():
        rest = (0, 0, 0, 0, m[4])
        img = zc[m[2]] * tc[m[3]]
        for n, coeff in enumerate(img.coeffs):
            if not coeff:
                continue
            bucket = sums[n]
            for mm, cc in coeff.terms.items():
                key = (mm[0], mm[1], mm[2], mm[3], mm[4] + rest[4])
                bucket[key] = bucket.get(key, 0) + c * cc
    for n in range(d):
        acc[n] = MPoly({k: v for k, v in sums[n].items() if v})
    return TruncElem(d, acc)


def apply(phi: TruncAut, p: TruncElem) -> TruncElem:
    """Image of ``p`` under ``phi``; a ring homomorphism R_d -> R_d."""
    if p.d != phi.d:
        raise ValueError(f"mismatched truncation orders {phi.d} and {p.d}")
    d = phi.d
    zc, tc = _PowerCache(phi.z_image), _PowerCache(phi.t_image)
    result = TruncElem.zero(d)
    for m, c in enumerate(p.coeffs):
        if not c:
            continue
        img = _substitute_trunc(c, zc, tc, d).shift(m)
        if phi.mu != 1:
            img = img * (phi.mu ** m)
        result = result + img
    return result


def apply_poly(phi: TruncAut, p: MPoly) -> TruncElem:
    return apply(phi, truncate(p, phi.d, allow_parameter=True))


def compose(phi: TruncAut, psi: TruncAut) -> TruncAut:
    """The map ``p -> phi(psi(p))``."""
    if phi.d != psi.d:
        raise ValueError("mismatched truncation orders")
    return TruncAut(phi.d, phi.mu * psi.mu, apply(phi, psi.z_image), apply(phi, psi.t_image))


def power(phi: TruncAut, m: int) -> TruncAut:
    result = TruncAut.identity(phi.d)
    for _ in range(m):
        result = compose(phi, result)
    return result


def _linear_part_inverse(phi: TruncAut) -> TruncAut:
    """Inverse of the affine map ``phi mod x``, together with ``x -> x/mu``."""
    d = phi.d
    rows = []
    for img in (phi.z_image.coeffs[0], phi.t_image.coeffs[0]):
        if img.degree() > 1 or img.uses("s"):
            raise NotImplementedError("inversion needs an affine-linear map modulo x")
        rows.append((img.coefficient(z=1), img.coefficient(t=1), img.constant_term()))
    (a, b, e), (c, dd, f) = rows
    det = a * dd - b * c
    if not det:
        raise ValueError("map is not invertible modulo x")
    # (z, t) -> A^{-1} ((z, t) - (e, f))
    zi = (dd * (_Z - e) - b * (_T - f)) * (1 / det)
    ti = (-c * (_Z - e) + a * (_T - f)) * (1 / det)
    return TruncAut(d, 1 / phi.mu, truncate(zi, d), truncate(ti, d))


def invert(phi: TruncAut) -> TruncAut:
    """Inverse automorphism, by x-adic order-by-order correction."""
    d = phi.d
    psi0 = _linear_part_inverse(phi)
    chi = compose(phi, psi0)  # fixes x, identity modulo x
    omega = TruncAut.identity(d)
    for n in range(1, d):
        eps = compose(chi, omega)
        dz, dt = eps.z_image.coeffs[n], eps.t_image.coeffs[n]
        if dz or dt:
            corr = TruncAut(d, 1,
                            truncate(_Z, d) - TruncElem(d, [_ZERO] * n + [dz]),
                            truncate(_T, d) - TruncElem(d, [_ZERO] * n + [dt]))
            omega = compose(omega, corr)
    result = compose(psi0, omega)
    if not compose(phi, result).is_identity():
        raise ArithmeticError("inversion failed to produce a two-sided inverse")
    return result


def exp_aut(D: Derivation, d: int) -> TruncAut:
    """The automorphism ``exp(D)`` of R_d."""
    return TruncAut(d, 1, D.exp_apply(truncate(_Z, d)), D.exp_apply(truncate(_T, d)))


def scaling_aut(lam, mu, k: int, l: int, d: int) -> TruncAut:
    """``x -> mu*x``, ``z -> lam^(-l) z``, ``t -> lam^(-k) t``."""
    lam, mu = Fraction(lam), Fraction(mu)
    if not lam or not mu:
        raise ValueError("scaling factors must be nonzero")
    return TruncAut(d, mu, truncate(_Z * lam ** (-l), d), truncate(_T * lam ** (-k), d))


def filtration_level(phi: TruncAut) -> Optional[int]:
    """Largest ``n <= d`` with ``phi`` fixing x and ``phi == id mod x^n``.

    Returns ``None`` when ``phi`` is not in the first filtration subgroup.
    """
    if phi.mu != 1:
        return None
    ident = TruncAut.identity(phi.d)
    for n in range(phi.d):
        if (phi.z_image.coeffs[n] != ident.z_image.coeffs[n]
                or phi.t_image.coeffs[n] != ident.t_image.coeffs[n]):
            return n if n >= 1 else None
    return phi.d


def level_increment(phi: TruncAut, n: int):
    if n < 1 or n >= phi.d:
        raise ValueError(f"level must lie in 1..{phi.d - 1}")
    lvl = filtration_level(phi)
    if lvl is None or lvl < n:
        raise ValueError(f"automorphism is not congruent to the identity modulo x^{n}")
    return phi.z_image.coeffs[n], phi.t_image.coeffs[n]


def _antiderivative(p: MPoly, v: str) -> MPoly:
    i = {"z": 2, "t": 3}[v]
    return MPoly({m[:i] + (m[i] + 1,) + m[i + 1:]: c / (m[i] + 1) for m, c in p.terms.items()})


def hamiltonian_of_increment(dz: MPoly, dt: MPoly) -> MPoly:
    """``h`` with ``jac(h, z) == dz`` and ``jac(h, t) == dt``, normalised by ``h(0,0) = 0``."""
    for p in (dz, dt):
        if p.uses("x") or p.uses("y") or p.uses("s"):
            raise ValueError("increments must be polynomials in z and t")
    if partial(dz, "z") + partial(dt, "t"):
        raise NonHamiltonianIncrement("increment is not divergence free")
    # jac(h, z) = -h_t and jac(h, t) = h_z
    h1 = -_antiderivative(dz, "t")
    rest = dt - partial(h1, "z")
    if rest.uses("t"):
        raise NonHamiltonianIncrement("increment is not divergence free")
    return h1 + _antiderivative(rest, "z")


def extract_hamiltonian(phi: TruncAut, level: Optional[int] = None) -> MPoly:
    """Hamiltonian of the level increment of ``phi``.

    With ``level=None`` the filtration level of ``phi`` is used, which must
    be below ``d``.  The result satisfies ``exp_aut(Derivation(n, h)) == phi``
    modulo ``x^(n+1)`` and has no constant term.
    """
    if level is None:
        level = filtration_level(phi)
        if level is None:
            raise ValueError("automorphism does not fix x or is not the identity modulo x")
        if level >= phi.d:
            raise ValueError("identity in R_d has no level increment below d")
    dz, dt = level_increment(phi, level)
    return hamiltonian_of_increment(dz, dt)


@dataclass(frozen=True)
class Preserves:
    cofactor: MembershipCofactor


@dataclass(frozen=True)
class FailsAtOrder:
    order: int


def verify_ga_action(D: Derivation, d: int, r0: MPoly, g: MPoly = MPoly.const(1)):
    """Check whether ``exp(s*D)`` preserves ``(x^d, r0 + x*g)`` for all ``s``.

    Returns :class:`Preserves` with a cofactor over Q[s], or
    :class:`FailsAtOrder` with the x-adic order where membership breaks.
    """
    gen = truncate(r0 + MPoly.var("x") * g, d)
    image = D.exp_apply(gen, parameter=True)
    try:
        cof = membership_with_parameter(image, gen)
    except NotMember as exc:
        return FailsAtOrder(exc.order)
    return Preserves(cof)


# -- maps of the full polynomial ring ------------------------------------

_POLY_VARS = ("x", "y", "z", "t")


@dataclass(frozen=True)
class PolyMap:
    """Endomorphism of Q[x, y, z, t] by generator images.

    Variables without an image are fixed.  ``inverse`` optionally holds the
    images of the inverse map; :meth:`check_inverse` verifies them.
    """

    images: Mapping[str, MPoly]
    inverse: Optional[Mapping[str, MPoly]] = None

    def full_images(self) -> Dict[str, MPoly]:
        return {v: self.images.get(v, MPoly.var(v)) for v in _POLY_VARS}

    def __call__(self, p: MPoly) -> MPoly:
        return substitute(p, self.full_images())

    def then(self, other: "PolyMap") -> "PolyMap":
        """The map ``p -> self(other(p))``."""
        imgs = {v: self(img) for v, img in other.full_images().items()}
        inv = None
        if self.inverse is not None and other.inverse is not None:
            a, b = PolyMap(other.inverse), PolyMap(self.inverse)
            inv = {v: a(img) for v, img in b.full_images().items()}
        return PolyMap(imgs, inv)

    def inverse_map(self) -> "PolyMap":
        if self.inverse is None:
            raise ValueError("no inverse recorded")
        return PolyMap(self.inverse, self.images)

    def check_inverse(self) -> bool:
        if self.inverse is None:
            return False
        inv = PolyMap(self.inverse)
        return all(self(inv(MPoly.var(v))) == MPoly.var(v)
                   and inv(self(MPoly.var(v))) == MPoly.var(v) for v in _POLY_VARS)

    def describe(self) -> Dict[str, str]:
        return {v: format_poly(p) for v, p in self.full_images().items()}
