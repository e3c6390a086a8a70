"""Random generators shared by the property and acceptance tests."""
import random
from fractions import Fraction

from hypothesis import strategies as st

from krauto.poly import MPoly

SMALL = [Fraction(c) for c in (-3, -2, -1, 1, 2, 3)] + [Fraction(1, 2), Fraction(-2, 3)]


def rand_coeff(rng: random.Random) -> Fraction:
    return rng.choice(SMALL)


def rand_poly(rng: random.Random, nterms: int, maxdeg: dict) -> MPoly:
    """Sparse polynomial with per-variable degree caps, e.g. ``{"z": 3, "t": 2}``."""
    terms = {}
    for _ in range(nterms):
        e = [0] * 5
        for v, cap in maxdeg.items():
            e["xyzts".index(v)] = rng.randint(0, cap)
        terms[tuple(e)] = rand_coeff(rng)
    return MPoly(terms)


def rand_zt(rng: random.Random, nterms: int = 3, deg: int = 3) -> MPoly:
    """Polynomial in z, t of total degree at most ``deg``."""
    terms = {}
    for _ in range(nterms):
        i = rng.randint(0, deg)
        j = rng.randint(0, deg - i)
        terms[(0, 0, i, j, 0)] = rand_coeff(rng)
    return MPoly(terms)


ACCEPTANCE_RESULTS = {}

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, variables="xzt", max_deg=3, max_terms=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = [0] * 5
        for v in variables:
            e["xyzts".index(v)] = draw(st.integers(0, max_deg))
        terms[tuple(e)] = draw(coefficients)
    return MPoly(terms)


def solvable(rows, rhs) -> bool:
    """Exact consistency test of a sparse linear system over Q.

    ``rows`` is a list of ``{unknown: coeff}`` dicts, ``rhs`` the matching
    right-hand sides.  Plain Gauss-Jordan elimination on Fractions.
    """
    pivots = {}  # unknown -> (row dict, rhs)
    for row, b in zip(rows, rhs):
        row = dict(row)
        b = Fraction(b)
        while True:
            hit = next((u for u in row if u in pivots), None)
            if hit is None:
                break
            prow, pb = pivots[hit]
            f = row[hit]
            for u, c in prow.items():
                v = row.get(u, 0) - f * c
                if v:
                    row[u] = v
                else:
                    row.pop(u, None)
            b -= f * pb
        if not row:
            if b:
                return False
            continue
        u0 = min(row)
        c0 = row[u0]
        row = {u: c / c0 for u, c in row.items()}
        b /= c0
        for pu, (prow, pb) in list(pivots.items()):
            f = prow.get(u0)
            if f:
                for u, c in row.items():
                    v = prow.get(u, 0) - f * c
                    if v:
                        prow[u] = v
                    else:
                        prow.pop(u, None)
                pivots[pu] = (prow, pb - f * b)
        pivots[u0] = (row, b)
    return True


def brute_force_cofactor_exists(T, G, deg_bound: int) -> bool:
    """Is there ``b`` with z,t-degree <= deg_bound and ``b*G == T`` in R_d?

    Sets up the coefficient equations of ``b*G - T`` directly from the
    polynomial representatives, independently of the order-by-order solver.
    """
    d = T.d
    Gp, Tp = G.to_poly(), T.to_poly()
    unknowns = [(m, i, j) for m in range(d) for i in range(deg_bound + 1)
                for j in range(deg_bound + 1 - i)]
    eqs = {}
    for u in unknowns:
        m, i, j = u
        for mono, c in Gp.terms.items():
            key = (mono[0] + m, mono[2] + i, mono[3] + j)
            if key[0] >= d:
                continue
            eqs.setdefault(key, {})
            eqs[key][u] = eqs[key].get(u, 0) + c
    targets = {(mono[0], mono[2], mono[3]): c for mono, c in Tp.terms.items()}
    keys = set(eqs) | set(targets)
    rows = [{u: c for u, c in eqs.get(k, {}).items() if c} for k in keys]
    rhs = [targets.get(k, 0) for k in keys]
    return solvable(rows, rhs)


def expand_jac(h, p):
    """``h_z*p_t - h_t*p_z`` computed straight from the term dictionaries."""
    out = {}

    def d(terms, idx):
        res = {}
        for m, c in terms.items():
            if m[idx]:
                mm = list(m)
                mm[idx] -= 1
                res[tuple(mm)] = res.get(tuple(mm), 0) + c * m[idx]
        return res

    for sign, a, b in ((1, d(h.terms, 2), d(p.terms, 3)), (-1, d(h.terms, 3), d(p.terms, 2))):
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(u + v for u, v in zip(m1, m2))
                out[m] = out.get(m, 0) + sign * c1 * c2
    return {m: c for m, c in out.items() if c}


def expand_product(p, q):
    out = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = tuple(u + v for u, v in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def preimage_holds(h, f, target, r0) -> bool:
    """Check ``jac(h, r0) == target + r0*f`` coefficient by coefficient."""
    lhs = expand_jac(h, r0)
    rhs = dict(target.terms)
    for m, c in expand_product(r0, f).items():
        rhs[m] = rhs.get(m, 0) + c
    rhs = {m: c for m, c in rhs.items() if c}
    return lhs == rhs


def series_exp_image(nu, h, var, d):
    """``sum_m (x^nu jac(h, .))^m (var) / m!`` with plain polynomials, cut at x^d."""
    from math import factorial

    from krauto.poly import MPoly, jac

    x = MPoly.var("x")
    term = MPoly.var(var)
    total = term
    m = 0
    while True:
        m += 1
        term = (x ** nu * jac(h, term)).truncate_in("x", d)
        if term.is_zero():
            return total
        total = total + term * Fraction(1, factorial(m))


def rand_derivation(rng, d, nu_max=None):
    from krauto.automorphism import Derivation

    nu = rng.randint(1, nu_max or max(1, d - 1))
    h = rand_poly(rng, 3, {"x": max(1, d - nu), "z": 3, "t": 3})
    return Derivation(nu, h)


def sample_point(rng, pres, kind):
    """A rational point of a Koras-Russell threefold with ``g = 1``.

    ``kind`` picks the stratum: ``"open"`` (x != 0), ``"cylinder"`` (x = 0,
    z != 0; needs l odd), ``"line"`` (x = z = t = 0, y != 0) or ``"origin"``.
    """
    k, l = pres.kl
    d = pres.d
    if kind == "open":
        xv = Fraction(rng.choice([1, -1, 2, -3])) / rng.choice([1, 2])
        zv, tv = (Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2))
        return (xv, -(zv ** k + tv ** l + xv) / xv ** d, zv, tv)
    if kind == "cylinder":
        u = Fraction(rng.choice([1, -1, 2, -2, 3]), rng.choice([1, 2]))
        return (Fraction(0), Fraction(rng.randint(-9, 9)), u ** l, -u ** k)
    if kind == "line":
        return (Fraction(0), Fraction(rng.choice([1, -1, 7, Fraction(2, 3)])), Fraction(0), Fraction(0))
    return (Fraction(0),) * 4


def random_lifted_map(rng, pres):
    """A composite of lifts of triangular maps fixing x and congruent to id mod x^d."""
    from krauto.automorphism import PolyMap
    from krauto.poly import MPoly
    from krauto.threefold import lift_to_A4

    x, z, t = (MPoly.var(v) for v in "xzt")
    d = pres.d
    phi = PolyMap({}, {})
    for _ in range(rng.randint(1, 3)):
        a = rng.randint(d, d + 1)
        if rng.random() < 0.5:
            p = rand_poly(rng, 2, {"x": 1, "t": 2})
            step = PolyMap({"z": z + x ** a * p}, {"z": z - x ** a * p})
        else:
            q = rand_poly(rng, 2, {"x": 1, "z": 2})
            step = PolyMap({"t": t + x ** a * q}, {"t": t - x ** a * q})
        phi = step.then(phi)
    return lift_to_A4(phi, pres)


def substitute_mod_x(p, images, d):
    """``p(images)`` modulo ``x^d`` using plain polynomials only.

    Powers of each image are built incrementally and cut at ``x^d`` after
    every product, so high z, t degrees stay cheap.
    """
    from krauto.poly import MPoly

    powers = {v: [MPoly.const(1)] for v in images}
    out = MPoly()
    for m, c in p.terms.items():
        term = MPoly.const(c)
        for idx, v in enumerate("xyzts"):
            e = m[idx]
            if not e:
                continue
            if v not in images:
                term = term * MPoly.monomial(**{v: e})
                continue
            pw = powers[v]
            while len(pw) <= e:
                pw.append((pw[-1] * images[v]).truncate_in("x", d))
            term = (term * pw[e]).truncate_in("x", d)
        out = out + term
    return out
