"""Hypersurfaces ``x^d*y + r0(z, t) + x*g(x, z, t) = 0`` and their automorphisms.

Covers point/orbit queries on Koras-Russell threefolds, isomorphisms of
coordinate rings induced by ideal-preserving automorphisms of Q[x, z, t],
lifts of maps congruent to the identity modulo ``x^d`` to four-space, and
the locally-constant obstruction attached to a disconnected curve ``r0 = 0``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .automorphism import Derivation, PolyMap, TruncAut, apply_poly, exp_aut
from .jacobian import check_kl, russell_r0
from .poly import MPoly, NotDivisible, exact_divide, substitute
from .trunc import MembershipCofactor, ideal_membership, truncate

_X, _Y, _Z, _T = (MPoly.var(v) for v in "xyzt")


@dataclass(frozen=True)
class ThreefoldPresentation:
    d: int
    r0: MPoly
    g: MPoly = field(default_factory=lambda: MPoly.const(1))
    kl: Optional[Tuple[int, int]] = None
    factors: Optional[Tuple[MPoly, ...]] = None

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be >= 2")
        if self.r0.variables() - {"z", "t"}:
            raise ValueError("r0 must be a polynomial in z and t")
        if self.g.variables() - {"x", "z", "t"}:
            raise ValueError("g must be a polynomial in x, z and t")
        if self.kl is not None:
            check_kl(*self.kl)
            if self.r0 != russell_r0(*self.kl):
                raise ValueError("r0 does not equal z^k + t^l for the given (k, l)")
        if self.factors is not None:
            prod = MPoly.const(1)
            for f in self.factors:
                prod = prod * f
            if prod != self.r0:
                raise ValueError("factor list does not multiply to r0")

    @classmethod
    def koras_russell(cls, d: int, k: int, l: int, g: MPoly = None) -> "ThreefoldPresentation":
        return cls(d, russell_r0(k, l), MPoly.const(1) if g is None else g, (k, l))

    @property
    def P(self) -> MPoly:
        """Defining polynomial ``x^d*y + r0 + x*g``."""
        return _X ** self.d * _Y + self.r0 + _X * self.g

    @property
    def ideal_generator(self) -> MPoly:
        """``r0 + x*g``; together with ``x^d`` it generates the center ideal."""
        return self.r0 + _X * self.g

    def contains(self, point: Sequence) -> bool:
        x, y, z, t = (Fraction(c) for c in point)
        return self.P.evaluate({"x": x, "y": y, "z": z, "t": t}) == 0


class Orbit(enum.Enum):
    OPEN = "OpenOrbit"
    CYLINDER = "CylinderOrbit"
    PUNCTURED_LINE = "PuncturedLine"
    FIXED_POINT = "FixedPoint"


def orbit_classify(point: Sequence, pres: ThreefoldPresentation) -> Orbit:
    """Automorphism-group orbit of a point on a Koras-Russell threefold."""
    if pres.kl is None or pres.g != MPoly.const(1):
        raise ValueError("orbit classification needs g = 1 and r0 = z^k + t^l")
    if not pres.contains(point):
        raise ValueError(f"point {tuple(point)} does not lie on the threefold")
    x, y, z, t = (Fraction(c) for c in point)
    if x:
        return Orbit.OPEN
    if z:
        return Orbit.CYLINDER
    if y:
        return Orbit.PUNCTURED_LINE
    return Orbit.FIXED_POINT


def transport_point(images: Dict[str, MPoly], point: Sequence) -> Tuple[Fraction, ...]:
    """Image of a point under the morphism with coordinate functions ``images``."""
    vals = dict(zip("xyzt", (Fraction(c) for c in point)))
    return tuple(images.get(v, MPoly.var(v)).evaluate(vals) for v in "xyzt")


# -- induced isomorphisms -------------------------------------------------

@dataclass(frozen=True)
class InducedIso:
    """Images of x, y, z, t for the map A(g) -> A(f) and the cofactors used."""

    images: Dict[str, MPoly]
    a: MPoly
    b: MPoly
    multiplier: MPoly  # images substituted into P_g equal multiplier * P_f


def induced_iso(phi: TruncAut, r0: MPoly, g: MPoly, f: MPoly) -> InducedIso:
    """Extend ``phi`` (mapping ``J_g`` into ``J_f``) to the coordinate rings.

    ``phi`` is represented by polynomial images of degree ``< d`` in x.  With
    ``phi(r0 + x*g) = a*x^d + b*(r0 + x*f)`` the image of ``y`` is
    ``mu^(-d)*(b*y - a)``.
    """
    d, mu = phi.d, phi.mu
    zi, ti = phi.z_image.to_poly(), phi.t_image.to_poly()
    src = substitute(r0 + _X * g, {"x": _X * mu, "z": zi, "t": ti})
    gen_f = r0 + _X * f
    cof = ideal_membership(truncate(src, d), truncate(gen_f, d))
    b = cof.b.to_poly()
    a = exact_divide(src - b * gen_f, _X ** d)
    images = {"x": _X * mu, "y": (b * _Y - a) * (mu ** -d), "z": zi, "t": ti}
    Pg = _X ** d * _Y + r0 + _X * g
    Pf = _X ** d * _Y + gen_f
    image = substitute(Pg, images)
    try:
        multiplier = exact_divide(image, Pf)
    except NotDivisible:
        raise ArithmeticError("induced map does not send P_g into (P_f)") from None
    return InducedIso(images, a, b, multiplier)


# -- lifting to four-space ------------------------------------------------

class NotInAd(ValueError):
    """The map does not fix x or is not the identity modulo x^d."""


def lift_to_A4(phi: PolyMap, pres: ThreefoldPresentation) -> PolyMap:
    """Extend ``phi`` (on x, z, t, identity modulo ``x^d``) to Q[x, y, z, t].

    ``Phi(y) = y + sign*q`` with ``q = (phi(G) - G)/x^d`` and ``G = r0 + x*g``;
    the sign is the one for which ``Phi(P) == P``.
    """
    d = pres.d
    imgs = phi.full_images()
    if imgs["x"] != _X:
        raise NotInAd("map does not fix x")
    if imgs["y"] != _Y:
        raise NotInAd("expected a map of x, z, t only")
    xd = _X ** d
    for v in ("z", "t"):
        try:
            exact_divide(imgs[v] - MPoly.var(v), xd)
        except NotDivisible:
            raise NotInAd(f"{v}-image is not congruent to {v} modulo x^{d}") from None
    G = pres.ideal_generator
    try:
        q = exact_divide(phi(G) - G, xd)
    except NotDivisible:
        raise NotInAd("phi(G) - G is not divisible by x^d") from None
    inverse = None
    if phi.inverse is not None:
        inv = PolyMap(phi.inverse)
        q_inv = exact_divide(inv(G) - G, xd)
    for sign in (-1, 1):
        Phi = PolyMap({"x": _X, "y": _Y + q * sign, "z": imgs["z"], "t": imgs["t"]})
        if Phi(pres.P) == pres.P:
            if phi.inverse is not None:
                inv_imgs = inv.full_images()
                inverse = {"x": _X, "y": _Y + q_inv * sign, "z": inv_imgs["z"], "t": inv_imgs["t"]}
            return PolyMap(Phi.images, inverse)
    raise ArithmeticError("no sign makes the lift preserve P")


# -- non-extendibility obstruction ----------------------------------------

class Obstruction(enum.Enum):
    LOCALLY_CONSTANT_NON_CONSTANT = "LocallyConstantNonConstant"
    CONSTANT = "Constant"
    NOT_LOCALLY_CONSTANT = "NotLocallyConstant"


class NoRationalPoint(LookupError):
    """No rational point was found on a factor within the search bounds."""


def _grid(bound: int) -> Iterator[Fraction]:
    seen = set()
    yield Fraction(0)
    for h in range(1, 2 * bound + 1):
        for den in range(1, bound + 1):
            num = h - den
            if not (1 <= num <= bound):
                continue
            v = Fraction(num, den)
            if v in seen:
                continue
            seen.add(v)
            yield v
            yield -v


def _roots_on_grid(uni: MPoly, var: str, values: Sequence[Fraction]) -> Iterator[Fraction]:
    """Grid values that are roots of a univariate polynomial.

    Candidates are screened by the rational root theorem on the integer
    coefficients before the exact evaluation.
    """
    idx = "xyzts".index(var)
    coeffs = {m[idx]: c for m, c in uni.terms.items()}
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {e: int(c * den) for e, c in coeffs.items()}
    low, high = ints[min(ints)], ints[max(ints)]
    if min(ints) > 0:
        yield Fraction(0)
    for w in values:
        if w and low % w.numerator == 0 and high % w.denominator == 0:
            if uni.evaluate({var: w}) == 0:
                yield w


def find_rational_point(p: MPoly, bound: int = 20) -> Tuple[Fraction, Fraction]:
    """A rational zero of ``p(z, t)`` with coordinates of height at most ``bound``."""
    values = list(_grid(bound))
    for v in values:
        for fixed, free in (("z", "t"), ("t", "z")):
            uni = substitute(p, {fixed: MPoly.const(v), free: MPoly.var(free)})
            if uni.is_zero():
                return (v, Fraction(0)) if fixed == "z" else (Fraction(0), v)
            if uni.is_constant():
                continue
            for w in _roots_on_grid(uni, free, values):
                return (v, w) if fixed == "z" else (w, v)
    raise NoRationalPoint(f"no rational point of height <= {bound} on {p}")


@dataclass(frozen=True)
class ObstructionResult:
    kind: Obstruction
    residues: Tuple[Optional[Fraction], ...]


def extension_obstruction(h: MPoly, factors: Sequence[MPoly], bound: int = 20) -> ObstructionResult:
    """Is ``h`` constant on each component ``{p = 0}``, and are the constants equal?

    For each factor a constant candidate is read off at a rational point and
    confirmed by exact division of ``h - c`` by the factor.
    """
    if h.variables() - {"z", "t"}:
        raise ValueError("h must be a polynomial in z and t")
    if not factors:
        raise ValueError("need at least one factor")
    residues: List[Optional[Fraction]] = []
    for p in factors:
        if p.is_constant():
            raise ValueError("factors must be non-constant")
        zp, tp = find_rational_point(p, bound)
        c = h.evaluate({"z": zp, "t": tp})
        try:
            exact_divide(h - c, p)
        except NotDivisible:
            residues.append(None)
            continue
        residues.append(c)
    if any(c is None for c in residues):
        kind = Obstruction.NOT_LOCALLY_CONSTANT
    elif len(set(residues)) == 1:
        kind = Obstruction.CONSTANT
    else:
        kind = Obstruction.LOCALLY_CONSTANT_NON_CONSTANT
    return ObstructionResult(kind, tuple(residues))


NONEXT_R0 = _Z * (_Z * _T ** 2 + 1)
NONEXT_FACTORS = (_Z, _Z * _T ** 2 + 1)
NONEXT_H = _Z * _T ** 2


def build_section5_automorphism() -> Tuple[TruncAut, MembershipCofactor]:
    """``exp(x*jac(z*t^2, .))`` on R_2 and its cofactor for ``r0 = z*(z*t^2 + 1)``."""
    phi = exp_aut(Derivation(1, NONEXT_H), 2)
    gen = truncate(NONEXT_R0, 2)
    cof = ideal_membership(apply_poly(phi, NONEXT_R0), gen)
    return phi, cof
