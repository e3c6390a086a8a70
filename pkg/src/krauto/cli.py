"""Command-line interface.

Exit codes: 0 success, 1 parse or validation error, 2 map not in the last
filtration subgroup (``lift``), 3 not isomorphic (``iso``).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, Optional

from .automorphism import Derivation, PolyMap, apply_poly, exp_aut
from .classify import iso_decide, iso_witness_check, normalize
from .parse import ParseError, parse_poly
from .poly import MPoly, NotDivisible, exact_divide, format_poly, format_rational
from .serialize import normal_form_to_json, witness_to_json
from .threefold import (
    NONEXT_FACTORS,
    NONEXT_H,
    NONEXT_R0,
    NoRationalPoint,
    NotInAd,
    ThreefoldPresentation,
    build_section5_automorphism,
    extension_obstruction,
    induced_iso,
    lift_to_A4,
    orbit_classify,
)
from .trunc import NotMember, ideal_membership, truncate

EXIT_OK, EXIT_ERROR, EXIT_NOT_AD, EXIT_UNSAT = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _normalize_one(args):
    d, k, l, text = args
    return normal_form_to_json(normalize(d, k, l, parse_poly(text)))


def cmd_normalize(ns) -> int:
    jobs = [(ns.d, ns.k, ns.l, g) for g in ns.g]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            results = list(pool.map(_normalize_one, jobs))
    else:
        results = [_normalize_one(j) for j in jobs]
    if ns.json:
        print(_dump(results[0] if len(results) == 1 else results))
        return EXIT_OK
    for i, res in enumerate(results):
        if i:
            print()
        print(f"g = {res['inputs']['g']}")
        print(f"g_norm = {res['result']['g_norm']}")
        for key, val in res["result"]["alpha"].items():
            print(f"alpha[{key}] = {val}")
        aut = res["certificate"]["aut"]
        print(f"aut: mu = {aut['mu']}; z -> {aut['z']}; t -> {aut['t']}")
        print(f"unit = {res['certificate']['unit']}")
        print("certificate: verified")
    return EXIT_OK


def cmd_iso(ns) -> int:
    ca = normalize(ns.d, ns.k, ns.l, parse_poly(ns.ga))
    cb = normalize(ns.d, ns.k, ns.l, parse_poly(ns.gb))
    A, B = ca.alpha, cb.alpha
    w = iso_decide(A, B)
    checked = iso_witness_check(w, A, B) if w.explicit else None
    if ns.json:
        print(_dump({
            "kind": "iso",
            "inputs": {"d": ns.d, "k": ns.k, "l": ns.l, "ga": ns.ga, "gb": ns.gb},
            "result": witness_to_json(w),
            "certificate": {
                "a": normal_form_to_json(ca), "b": normal_form_to_json(cb),
                "witness_verified": checked,
            },
        }))
    else:
        print(f"g_norm(a) = {format_poly(ca.g_norm)}")
        print(f"g_norm(b) = {format_poly(cb.g_norm)}")
        print(w.describe())
        if checked is not None:
            print(f"witness check: {'verified' if checked else 'FAILED'}")
    return EXIT_OK if w.sat else EXIT_UNSAT


def cmd_verify_aut(ns) -> int:
    r0, g, h = parse_poly(ns.r0), parse_poly(ns.g), parse_poly(ns.h)
    phi = exp_aut(Derivation(ns.nu, h), ns.d)
    gen = r0 + MPoly.var("x") * g
    target = apply_poly(phi, gen)
    out = {"kind": "verify-aut",
           "inputs": {"d": ns.d, "r0": ns.r0, "g": ns.g, "nu": ns.nu, "h": ns.h},
           "certificate": {"z": str(phi.z_image), "t": str(phi.t_image)}}
    try:
        cof = ideal_membership(target, truncate(gen, ns.d))
        out["result"] = {"preserved": True, "cofactor": str(cof.b)}
    except NotMember as exc:
        out["result"] = {"preserved": False, "order": exc.order}
    if ns.json:
        print(_dump(out))
        return EXIT_OK
    print(f"phi(z) = {phi.z_image}")
    print(f"phi(t) = {phi.t_image}")
    if out["result"]["preserved"]:
        print("ideal preserved")
        print(f"cofactor = {out['result']['cofactor']}")
    else:
        print("ideal not preserved")
        print(f"fails at order {out['result']['order']}")
    return EXIT_OK


def _parse_map(text: str) -> dict:
    images = {}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        if "=" not in part:
            raise ValueError(f"map entry {part!r} must look like 'z=EXPR'")
        var, expr = (s.strip() for s in part.split("=", 1))
        if var not in ("z", "t"):
            raise ValueError(f"map may only assign z and t, got {var!r}")
        images[var] = parse_poly(expr)
    return images


def cmd_lift(ns) -> int:
    pres = ThreefoldPresentation.koras_russell(ns.d, ns.k, ns.l)
    phi = PolyMap(_parse_map(ns.map))
    try:
        Phi = lift_to_A4(phi, pres)
    except NotInAd as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_AD
    imgs = Phi.describe()
    if ns.json:
        print(_dump({"kind": "lift",
                     "inputs": {"d": ns.d, "k": ns.k, "l": ns.l, "map": ns.map},
                     "result": {f"Phi({v})": imgs[v] for v in "xyzt"},
                     "certificate": {"Phi(P) == P": True}}))
        return EXIT_OK
    for v in "xyzt":
        print(f"Phi({v}) = {imgs[v]}")
    print("Phi(P) = P: verified")
    return EXIT_OK


def cmd_obstruct(ns) -> int:
    factors = [parse_poly(p) for p in ns.r0_factors.split(";") if p.strip()]
    h = parse_poly(ns.h)
    res = extension_obstruction(h, factors)
    residues = ["none" if c is None else format_rational(c) for c in res.residues]
    if ns.json:
        print(_dump({"kind": "obstruct",
                     "inputs": {"r0_factors": [format_poly(f) for f in factors], "h": ns.h},
                     "result": res.kind.value,
                     "certificate": {"residues": residues}}))
        return EXIT_OK
    for f, c in zip(factors, residues):
        print(f"h mod ({format_poly(f)}) = {c}")
    print(res.kind.value)
    return EXIT_OK


def cmd_orbit(ns) -> int:
    pres = ThreefoldPresentation.koras_russell(ns.d, ns.k, ns.l)
    coords = [Fraction(c.strip()) for c in ns.point.split(",")]
    if len(coords) != 4:
        raise ValueError("point must have four coordinates x,y,z,t")
    label = orbit_classify(coords, pres)
    if ns.json:
        print(_dump({"kind": "orbit",
                     "inputs": {"d": ns.d, "k": ns.k, "l": ns.l, "point": ns.point},
                     "result": label.value, "certificate": None}))
    else:
        print(label.value)
    return EXIT_OK


def cmd_demo(ns) -> int:
    z, t = MPoly.var("z"), MPoly.var("t")
    phi, cof = build_section5_automorphism()
    fz = exact_divide(phi.z_image.to_poly(), z)
    ft = exact_divide(phi.t_image.to_poly(), t)
    image_r0 = apply_poly(phi, NONEXT_R0)
    factor_order = ("t", "x", "z")
    print("P = x^2*y + z*(z*t^2 + 1)")
    print(f"h = {format_poly(NONEXT_H)}")
    print(f"phi(z) = ({format_poly(fz, factor_order)})*z")
    print(f"phi(t) = ({format_poly(ft, factor_order)})*t")
    print(f"phi(r0) = ({cof.b})*r0")
    print(f"cofactor = {cof.b}")
    print(f"cofactor*r0 == phi(r0) in R_2: {cof.b * truncate(NONEXT_R0, 2) == image_r0}")
    iso = induced_iso(phi, NONEXT_R0, MPoly(), MPoly())
    print(f"phi~(y) = {format_poly(iso.images['y'])}")
    print(f"phi~(P) = ({format_poly(iso.multiplier)})*P")
    res = extension_obstruction(NONEXT_H, NONEXT_FACTORS)
    residues = ", ".join(format_rational(c) for c in res.residues)
    print(f"h on components of C0: {residues}")
    print(f"obstruction = {res.kind.value}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krauto", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def dkl(p):
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--l", type=int, required=True)

    p = sub.add_parser("normalize", help="normal form of g with certificate")
    dkl(p)
    p.add_argument("--g", action="append", required=True, help="repeat for a batch")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("iso", help="decide isomorphism of two deformations")
    dkl(p)
    p.add_argument("--ga", required=True)
    p.add_argument("--gb", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("verify-aut", help="check ideal preservation by exp(x^nu jac(h, .))")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r0", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_aut)

    p = sub.add_parser("lift", help="lift a map in the last filtration subgroup to A^4")
    dkl(p)
    p.add_argument("--map", required=True, help='e.g. "z=z;t=t+x^2"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("obstruct", help="locally-constant obstruction on the components of C0")
    p.add_argument("--r0-factors", dest="r0_factors", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("orbit", help="orbit label of a rational point")
    dkl(p)
    p.add_argument("--point", required=True, help='"x,y,z,t"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("demo-section5", help="the non-extendible automorphism example")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except (ParseError, ValueError, ZeroDivisionError, NotDivisible,
            NoRationalPoint, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
