"""JSON encoding of certificates.

Polynomials travel as expression strings that :func:`parse_poly` reads back;
rationals travel as strings ``"p/q"`` (or ``"p"`` for integers).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict

from .automorphism import TruncAut
from .classify import AlphaMatrix, IsoWitness, Monomial2, NormalFormCertificate
from .parse import parse_poly
from .poly import format_poly, format_rational
from .trunc import truncate


def aut_to_json(phi: TruncAut) -> Dict[str, Any]:
    return {"d": phi.d, "mu": format_rational(phi.mu),
            "z": str(phi.z_image), "t": str(phi.t_image)}


def aut_from_json(obj: Dict[str, Any]) -> TruncAut:
    d = int(obj["d"])
    return TruncAut(d, Fraction(obj["mu"]), truncate(parse_poly(obj["z"]), d),
                    truncate(parse_poly(obj["t"]), d))


def normal_form_to_json(cert: NormalFormCertificate) -> Dict[str, Any]:
    return {
        "kind": "normalize",
        "inputs": {"d": cert.d, "k": cert.k, "l": cert.l, "g": format_poly(cert.g)},
        "result": {"g_norm": format_poly(cert.g_norm), "alpha": cert.alpha.as_strings()},
        "certificate": {"aut": aut_to_json(cert.aut), "unit": str(cert.unit)},
    }


def normal_form_from_json(obj: Dict[str, Any]) -> NormalFormCertificate:
    inp, res, cert = obj["inputs"], obj["result"], obj["certificate"]
    d = int(inp["d"])
    return NormalFormCertificate(
        d, int(inp["k"]), int(inp["l"]),
        parse_poly(inp["g"]), parse_poly(res["g_norm"]),
        aut_from_json(cert["aut"]), truncate(parse_poly(cert["unit"]), d),
    )


def alpha_from_strings(entries: Dict[str, str], d: int, k: int, l: int) -> AlphaMatrix:
    out = {}
    for key, poly in entries.items():
        i, j = (int(v) for v in key.split(","))
        out[(i, j)] = parse_poly(poly)
    return AlphaMatrix(d, k, l, out)


def witness_to_json(w: IsoWitness) -> Dict[str, Any]:
    return {
        "status": w.status,
        "lambda": None if w.lam is None else format_rational(w.lam),
        "mu": None if w.mu is None else format_rational(w.mu),
        "equations": [{"mu_exp": e.mu_exp, "lambda_exp": e.lam_exp,
                       "const": format_rational(e.const)} for e in w.equations],
        "reason": w.reason,
    }


def witness_from_json(obj: Dict[str, Any]) -> IsoWitness:
    return IsoWitness(
        obj["status"],
        None if obj.get("lambda") is None else Fraction(obj["lambda"]),
        None if obj.get("mu") is None else Fraction(obj["mu"]),
        tuple(Monomial2(e["mu_exp"], e["lambda_exp"], Fraction(e["const"]))
              for e in obj.get("equations", [])),
        obj.get("reason", ""),
    )
