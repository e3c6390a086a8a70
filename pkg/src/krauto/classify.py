"""Normal forms of deformations and the isomorphism criterion between them.

For fixed ``d`` and ``r0 = z^k + t^l`` every hypersurface
``x^d*y + r0 + x*g = 0`` is brought, by an automorphism of R_d and a unit,
to one whose ``g`` only uses span monomials ``z^i t^j`` (``i <= k-2``,
``j <= l-2``) at every x-level.  Two normal forms give isomorphic threefolds
exactly when a diagonal scaling ``(lam, mu)`` transports one onto the other.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .automorphism import (
    Derivation,
    TruncAut,
    apply_poly,
    scaling_aut,
)
from .jacobian import check_kl, is_span_monomial, preimage_of_polynomial, russell_r0, split
from .poly import MPoly, format_poly, format_rational, poly_sum
from .trunc import NotMember, TruncElem, ideal_membership, truncate, unit_inverse

_X = MPoly.var("x")


@dataclass(frozen=True)
class AlphaMatrix:
    """Coefficients ``alpha_ij(x)`` of a normal form ``g = sum alpha_ij(x) z^i t^j``.

    Each entry is a polynomial in x of degree at most ``d - 2``; zero entries
    are omitted.
    """

    d: int
    k: int
    l: int
    entries: Dict[Tuple[int, int], MPoly] = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), a in self.entries.items():
            if not (0 <= i <= self.k - 2 and 0 <= j <= self.l - 2):
                raise ValueError(f"index ({i}, {j}) outside the span range")
            if a.variables() - {"x"}:
                raise ValueError("alpha entries must be polynomials in x")
            if a.degree("x") > self.d - 2:
                raise ValueError("alpha entries must have degree <= d - 2")

    @classmethod
    def from_g(cls, g: MPoly, d: int, k: int, l: int) -> "AlphaMatrix":
        g = g.truncate_in("x", d - 1)
        entries: Dict[Tuple[int, int], Dict] = {}
        for m, c in g.terms.items():
            if m[1] or m[4]:
                raise ValueError("g must be a polynomial in x, z, t")
            i, j = m[2], m[3]
            if not is_span_monomial(i, j, k, l):
                raise ValueError(f"monomial z^{i}*t^{j} is not a span monomial")
            entries.setdefault((i, j), {})[(m[0], 0, 0, 0, 0)] = c
        return cls(d, k, l, {ij: MPoly(t) for ij, t in entries.items()})

    def entry(self, i: int, j: int) -> MPoly:
        return self.entries.get((i, j), MPoly())

    def to_g(self) -> MPoly:
        return poly_sum(a * MPoly.monomial(z=i, t=j) for (i, j), a in self.entries.items())

    def indices(self):
        return [(i, j) for i in range(self.k - 1) for j in range(self.l - 1)]

    def as_strings(self) -> Dict[str, str]:
        return {f"{i},{j}": format_poly(self.entries[(i, j)])
                for (i, j) in sorted(self.entries)}


@dataclass(frozen=True)
class NormalFormCertificate:
    """``apply(aut, r0 + x*g) == unit * (r0 + x*g_norm)`` in R_d."""

    d: int
    k: int
    l: int
    g: MPoly
    g_norm: MPoly
    aut: TruncAut
    unit: TruncElem

    @property
    def alpha(self) -> AlphaMatrix:
        return AlphaMatrix.from_g(self.g_norm, self.d, self.k, self.l)


def check_normal_form_certificate(cert: NormalFormCertificate) -> bool:
    d, k, l = cert.d, cert.k, cert.l
    r0 = russell_r0(k, l)
    if cert.aut.d != d or cert.unit.d != d:
        return False
    if cert.unit.coeffs[0] != MPoly.const(1):
        return False
    try:
        AlphaMatrix.from_g(cert.g_norm, d, k, l)
    except ValueError:
        return False
    if cert.g_norm.degree("x") > d - 2:
        return False
    lhs = apply_poly(cert.aut, r0 + _X * cert.g)
    rhs = cert.unit * truncate(r0 + _X * cert.g_norm, d)
    return lhs == rhs


def normalize(d: int, k: int, l: int, g: MPoly) -> NormalFormCertificate:
    """Reduce ``g`` to normal form one x-level at a time, with a certificate."""
    check_kl(k, l)
    if d < 2:
        raise ValueError("d must be >= 2")
    if g.uses("y") or g.uses("s"):
        raise ValueError("g must be a polynomial in x, z, t")
    r0 = russell_r0(k, l)
    P = truncate(r0 + _X * g, d)
    zi, ti = truncate(MPoly.var("z"), d), truncate(MPoly.var("t"), d)
    unit = TruncElem.one(d)
    for nu in range(1, d):
        ideal_part = split(P.coeffs[nu], k, l).ideal_part
        if not ideal_part:
            continue
        pre = preimage_of_polynomial(ideal_part, k, l)
        D = Derivation(nu, -pre.h)
        v = TruncElem.one(d) - TruncElem(d, [MPoly()] * nu + [pre.f])
        P = unit_inverse(v) * D.exp_apply(P)
        zi, ti = D.exp_apply(zi), D.exp_apply(ti)
        unit = D.exp_apply(unit) * v
        if P.coeffs[0] != r0 or split(P.coeffs[nu], k, l).ideal_part:
            raise ArithmeticError(f"reduction step at level {nu} did not clear the ideal part")
    g_norm = poly_sum(c.shift("x", m - 1) for m, c in enumerate(P.coeffs) if m >= 1 and c)
    cert = NormalFormCertificate(d, k, l, g, g_norm, TruncAut(d, 1, zi, ti), unit)
    if not check_normal_form_certificate(cert):
        raise ArithmeticError("normal form certificate does not verify")
    return cert


# -- isomorphism decision -------------------------------------------------

def integer_nthroot(a: int, n: int) -> Optional[int]:
    """Exact ``n``-th root of a non-negative integer, or ``None``."""
    if a < 0 or n < 1:
        raise ValueError("need a >= 0 and n >= 1")
    if a < 2:
        return a
    r = 1 << ((a.bit_length() + n - 1) // n)
    while True:
        nr = ((n - 1) * r + a // r ** (n - 1)) // n
        if nr >= r:
            break
        r = nr
    return r if r ** n == a else None


def rational_roots(q: Fraction, n: int) -> List[Fraction]:
    """All rational ``r`` with ``r**n == q`` (``n`` nonzero, may be negative)."""
    q = Fraction(q)
    if n == 0:
        raise ValueError("exponent must be nonzero")
    if not q:
        return []
    if n < 0:
        q, n = 1 / q, -n
    num = integer_nthroot(abs(q.numerator), n)
    den = integer_nthroot(q.denominator, n)
    if num is None or den is None:
        return []
    r = Fraction(num, den)
    if q < 0:
        return [-r] if n % 2 else []
    return [r, -r] if n % 2 == 0 else [r]


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_rows(M: List[List[int]]) -> Tuple[List[List[int]], List[List[int]]]:
    """Row-echelon form ``H = U*M`` over the integers with ``U`` unimodular.

    Pivots are positive.  Rows of ``U`` matching zero rows of ``H`` span the
    integer left kernel of ``M``.
    """
    r = len(M)
    cols = len(M[0]) if M else 0
    H = [list(row) for row in M]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    top = 0
    for c in range(cols):
        if top >= r:
            break
        for i in range(top + 1, r):
            if H[i][c] == 0:
                continue
            a, b = H[top][c], H[i][c]
            g, p, q = _xgcd(a, b)
            ag, bg = a // g, b // g
            H[top], H[i] = ([p * u + q * v for u, v in zip(H[top], H[i])],
                            [-bg * u + ag * v for u, v in zip(H[top], H[i])])
            U[top], U[i] = ([p * u + q * v for u, v in zip(U[top], U[i])],
                            [-bg * u + ag * v for u, v in zip(U[top], U[i])])
        if H[top][c] == 0:
            continue
        if H[top][c] < 0:
            H[top] = [-v for v in H[top]]
            U[top] = [-v for v in U[top]]
        top += 1
    return H, U


def _prod_pow(consts: List[Fraction], exps: List[int]) -> Fraction:
    out = Fraction(1)
    for c, e in zip(consts, exps):
        if e:
            out *= c ** e
    return out


@dataclass(frozen=True)
class Monomial2:
    """The equation ``mu^mu_exp * lam^lam_exp == const``."""

    mu_exp: int
    lam_exp: int
    const: Fraction

    def holds(self, lam: Fraction, mu: Fraction) -> bool:
        return mu ** self.mu_exp * lam ** self.lam_exp == self.const

    def __str__(self) -> str:
        parts = []
        for name, e in (("mu", self.mu_exp), ("lambda", self.lam_exp)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}" if e > 0 else f"{name}^({e})")
        return f"{'*'.join(parts) or '1'} = {format_rational(self.const)}"


@dataclass(frozen=True)
class IsoWitness:
    status: str  # "SAT" or "UNSAT"
    lam: Optional[Fraction] = None
    mu: Optional[Fraction] = None
    equations: Tuple[Monomial2, ...] = ()
    reason: str = ""

    @property
    def sat(self) -> bool:
        return self.status == "SAT"

    @property
    def explicit(self) -> bool:
        return self.lam is not None and self.mu is not None

    def describe(self) -> str:
        if not self.sat:
            return f"UNSAT: {self.reason}"
        lines = ["SAT"]
        if self.explicit:
            lines.append(f"lambda = {format_rational(self.lam)}")
            lines.append(f"mu = {format_rational(self.mu)}")
        if self.equations:
            lines.append("solutions: " + "; ".join(str(e) for e in self.equations))
        return "\n".join(lines)


def scaling_equations(A: AlphaMatrix, B: AlphaMatrix):
    """Equations ``mu^(n+1) * lam^(-e_ij) == b/a``, or a mismatch description."""
    if (A.d, A.k, A.l) != (B.d, B.k, B.l):
        raise ValueError("alpha matrices have different (d, k, l)")
    d, k, l = A.d, A.k, A.l
    eqs: List[Monomial2] = []
    mismatches = []
    for (i, j) in A.indices():
        e = l * i + k * j - k * l
        a_ij, b_ij = A.entry(i, j), B.entry(i, j)
        for n in range(d - 1):
            a = a_ij.coefficient(x=n)
            b = b_ij.coefficient(x=n)
            if not a and not b:
                continue
            if not a or not b:
                mismatches.append(f"({i},{j}) x^{n}")
            else:
                eqs.append(Monomial2(n + 1, -e, b / a))
    if mismatches:
        return None, "support mismatch at " + ", ".join(mismatches)
    return eqs, ""


def _explicit_solution(rows: List[Monomial2]):
    if not rows:
        return Fraction(1), Fraction(1)
    if len(rows) == 2:
        r0, r1 = rows  # r1 involves lambda only
        for lam in rational_roots(r1.const, r1.lam_exp):
            rhs = r0.const / lam ** r0.lam_exp
            for mu in rational_roots(rhs, r0.mu_exp):
                return lam, mu
        return None
    (row,) = rows
    for mu in rational_roots(row.const, row.mu_exp):
        return Fraction(1), mu
    if row.lam_exp:
        for lam in rational_roots(row.const, row.lam_exp):
            return lam, Fraction(1)
    g, p, q = _xgcd(row.mu_exp, row.lam_exp)
    if g < 0:
        g, p, q = -g, -p, -q
    for w in rational_roots(row.const, g):
        return w ** q, w ** p
    return None


def iso_decide(A: AlphaMatrix, B: AlphaMatrix) -> IsoWitness:
    """Decide whether some ``(lam, mu)`` in (C*)^2 transports ``A`` onto ``B``."""
    eqs, reason = scaling_equations(A, B)
    if eqs is None:
        return IsoWitness("UNSAT", reason=reason)
    if not eqs:
        return IsoWitness("SAT", Fraction(1), Fraction(1))
    M = [[e.mu_exp, e.lam_exp] for e in eqs]
    consts = [e.const for e in eqs]
    H, U = hermite_rows(M)
    rows: List[Monomial2] = []
    for h_row, u_row in zip(H, U):
        c = _prod_pow(consts, u_row)
        if h_row == [0, 0]:
            if c != 1:
                return IsoWitness("UNSAT", reason="multiplicative relation violated: "
                                  f"product of constants is {format_rational(c)}, not 1")
        else:
            rows.append(Monomial2(h_row[0], h_row[1], c))
    sol = _explicit_solution(rows)
    if sol is not None:
        lam, mu = sol
        if not all(e.holds(lam, mu) for e in eqs):
            raise ArithmeticError("explicit scaling witness fails the original equations")
        return IsoWitness("SAT", lam, mu, tuple(rows))
    return IsoWitness("SAT", equations=tuple(rows))


def iso_witness_check(w: IsoWitness, A: AlphaMatrix, B: AlphaMatrix) -> bool:
    """Confirm an explicit witness by a membership computation in R_d."""
    if not w.sat or not w.explicit:
        return False
    d, k, l = A.d, A.k, A.l
    r0 = russell_r0(k, l)
    phi = scaling_aut(w.lam, w.mu, k, l, d)
    target = apply_poly(phi, r0 + _X * A.to_g())
    gen = truncate(r0 + _X * B.to_g(), d)
    try:
        cof = ideal_membership(target, gen)
    except NotMember:
        return False
    return cof.b == TruncElem.const(d, w.lam ** (-k * l))


def transport(A: AlphaMatrix, lam, mu) -> AlphaMatrix:
    """The alpha matrix reached from ``A`` by the scaling ``(lam, mu)``."""
    lam, mu = Fraction(lam), Fraction(mu)
    entries = {}
    for (i, j), a in A.entries.items():
        e = A.l * i + A.k * j - A.k * A.l
        terms = {m: c * mu ** (m[0] + 1) * lam ** (-e) for m, c in a.terms.items()}
        entries[(i, j)] = MPoly(terms)
    return AlphaMatrix(A.d, A.k, A.l, {ij: p for ij, p in entries.items() if p})
