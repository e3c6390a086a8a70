import json

import pytest

from krauto.classify import check_normal_form_certificate, iso_witness_check
from krauto.cli import main
from krauto.serialize import alpha_from_strings, normal_form_from_json, witness_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normalize_russell_cubic(capsys):
    code, out, _ = run(capsys, "normalize", "--d", "2", "--k", "2", "--l", "3",
                       "--g", "1 + x + z^2 + t^3")
    assert code == 0
    assert out.splitlines() == [
        "g = 1 + x + z^2 + t^3",
        "g_norm = 1",
        "alpha[0,0] = 1",
        "aut: mu = 1; z -> z; t -> t",
        "unit = 1 + x",
        "certificate: verified",
    ]


def test_normalize_json_reverifies(capsys):
    code, out, _ = run(capsys, "normalize", "--d", "3", "--k", "2", "--l", "3",
                       "--g", "z + x*t^2 - 3*x*z*t", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "normalize"
    cert = normal_form_from_json(obj)
    assert check_normal_form_certificate(cert)


def test_normalize_batch_jobs_matches_serial(capsys):
    gs = ["z", "1 + t^4", "x*z*t + 2", "t^3 - z"]
    args = ["normalize", "--d", "3", "--k", "2", "--l", "3", "--json"]
    for g in gs:
        args += ["--g", g]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", "2")
    assert serial == parallel
    assert len(json.loads(serial)) == 4


def test_normalize_is_deterministic(capsys):
    args = ("normalize", "--d", "4", "--k", "3", "--l", "4", "--g", "z^2*t^3 + x*t^5 + 1")
    assert run(capsys, *args) == run(capsys, *args)


def test_iso_unsat_exit_code(capsys):
    code, out, _ = run(capsys, "iso", "--d", "2", "--k", "2", "--l", "3", "--ga", "1", "--gb", "t")
    assert code == 3
    assert "UNSAT" in out and "(0,1)" in out


def test_iso_sat_json(capsys):
    code, out, _ = run(capsys, "iso", "--d", "2", "--k", "2", "--l", "3",
                       "--ga", "1", "--gb", "5", "--json")
    assert code == 0
    obj = json.loads(out)
    w = witness_from_json(obj["result"])
    assert (w.lam, w.mu) == (1, 5)
    cert = obj["certificate"]
    A = alpha_from_strings(cert["a"]["result"]["alpha"], 2, 2, 3)
    B = alpha_from_strings(cert["b"]["result"]["alpha"], 2, 2, 3)
    assert iso_witness_check(w, A, B)
    assert cert["witness_verified"] is True


def test_verify_aut(capsys):
    code, out, _ = run(capsys, "verify-aut", "--d", "2", "--r0", "z*(z*t^2 + 1)",
                       "--g", "0", "--nu", "1", "--h", "z*t^2")
    assert code == 0
    assert "ideal preserved" in out and "cofactor = 1 - 2*x*t" in out
    code, out, _ = run(capsys, "verify-aut", "--d", "2", "--r0", "z^2 + t^3",
                       "--g", "1", "--nu", "1", "--h", "z")
    assert code == 0 and "fails at order 1" in out


def test_lift(capsys):
    code, out, _ = run(capsys, "lift", "--d", "2", "--k", "2", "--l", "3", "--map", "z=z;t=t+x^2")
    assert code == 0
    assert "Phi(y) = y - 3*t^2 - 3*x^2*t - x^4" in out
    code, out, err = run(capsys, "lift", "--d", "3", "--k", "2", "--l", "3", "--map", "z=z+x^2")
    assert code == 2 and "error" in err


def test_obstruct(capsys):
    code, out, _ = run(capsys, "obstruct", "--r0-factors", "z;z*t^2 + 1", "--h", "z*t^2")
    assert code == 0 and out.splitlines()[-1] == "LocallyConstantNonConstant"
    _, out, _ = run(capsys, "obstruct", "--r0-factors", "z;z*t^2 + 1", "--h", "z*t")
    assert out.splitlines()[-1] == "NotLocallyConstant"
    _, out, _ = run(capsys, "obstruct", "--r0-factors", "z;z*t^2 + 1", "--h", "5", "--json")
    assert json.loads(out)["result"] == "Constant"


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--d", "2", "--k", "2", "--l", "3", "--point", "1,-3,1,1")
    assert (code, out.strip()) == (0, "OpenOrbit")
    _, out, _ = run(capsys, "orbit", "--d", "2", "--k", "2", "--l", "3", "--point", "0,7,0,0")
    assert out.strip() == "PuncturedLine"


def test_demo_nonextendible(capsys):
    code, out, _ = run(capsys, "demo-section5")
    assert code == 0
    lines = out.splitlines()
    for expected in ("phi(z) = (1 - 2*t*x)*z", "phi(t) = (1 + t*x)*t",
                     "phi(r0) = (1 - 2*x*t)*r0", "cofactor = 1 - 2*x*t",
                     "obstruction = LocallyConstantNonConstant"):
        assert expected in lines


@pytest.mark.parametrize("argv", [
    ["normalize", "--d", "2", "--k", "2", "--l", "3", "--g", "2z"],
    ["normalize", "--d", "2", "--k", "2", "--l", "4", "--g", "1"],
    ["orbit", "--d", "2", "--k", "2", "--l", "3", "--point", "1,1,1,1"],
    ["lift", "--d", "2", "--k", "2", "--l", "3", "--map", "w=z"],
    ["obstruct", "--r0-factors", "z^2 + 1", "--h", "z"],
])
def test_errors_exit_one(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and err.startswith("error:")


def test_parse_error_reports_offset(capsys):
    _, _, err = run(capsys, "normalize", "--d", "2", "--k", "2", "--l", "3", "--g", "z +")
    assert "byte offset 3" in err
