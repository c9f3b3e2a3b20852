import json

import pytest

from spinkummer.cli import EXIT_INTERNAL, EXIT_MATH, EXIT_OK, EXIT_SCHEMA, JobSpec, dispatch, main, run
from spinkummer.fields import GF, QQ
from spinkummer.serialize import (
    SchemaError,
    curve_from_json,
    curve_to_json,
    divisor_from_json,
    divisor_to_json,
    parse_curve_spec,
)

G4 = "x^9+2x^3+x+3 over F5"
P4 = '{"U":[3,2,1,4,1],"R":[1,1,1,3]}'
PSI_P = [1, 1, 1, 3, 3, 4, 2, 3, 4, 2, 0, 4, 1, 2, 1, 3]


def run_json(argv):
    code, text = run(argv)
    return code, json.loads(text)


# --- curve parsing ----------------------------------------------------------------


def test_parse_genus_two_over_q():
    curve = parse_curve_spec("x^5+3x+1 over Q")
    assert curve.g == 2 and curve.field == QQ
    assert list(curve.coeffs) == [0, 0, 0, 3, 1]


def test_parse_genus_four_over_f5():
    curve = parse_curve_spec(G4)
    assert curve.g == 4 and curve.field == GF(5)
    assert [int(c) for c in curve.coeffs] == [0, 0, 0, 0, 0, 2, 0, 1, 3]


@pytest.mark.parametrize("text", [
    "g=2; f=x^5+3x+1; field=Q",
    "f = x^5 + 3*x + 1",
    '{"g": 2, "coeffs": ["0", "0", "0", "3", "1"], "field": {"kind": "Q"}}',
])
def test_parse_equivalent_forms(text):
    assert curve_to_json(parse_curve_spec(text)) == curve_to_json(parse_curve_spec("x^5+3x+1 over Q"))


def test_even_degree_rejected():
    from spinkummer.quadratic_space import CurveError

    with pytest.raises(CurveError):
        parse_curve_spec("x^4+1")


@pytest.mark.parametrize("text", ["g=3; f=x^5+1", "x^5+1 over R", "x^5+@", "{not json", "g=2; h=1"])
def test_malformed_curve_specs(text):
    with pytest.raises(SchemaError):
        parse_curve_spec(text)


def test_curve_and_divisor_round_trip():
    curve = parse_curve_spec(G4)
    assert curve_to_json(curve_from_json(curve_to_json(curve))) == curve_to_json(curve)
    D = divisor_from_json(json.loads(P4), curve)
    assert divisor_from_json(divisor_to_json(D), curve) == D


# --- subcommands --------------------------------------------------------------------


def test_embed_golden():
    code, out = run_json(["embed", "--curve", G4, "--point", P4])
    assert code == EXIT_OK
    assert out == {"coords": PSI_P, "projective": True}


def test_mul_sixteen():
    code, out = run_json(["mul", "16", "--curve", G4, "--point", P4])
    assert code == EXIT_OK
    assert out == {"U": [1, 3, 1, 2, 1], "V": [4, 4, 2, 3, 3, 1], "R": [2, 0, 3, 4]}


def test_mul_then_embed_matches_iterated_duplication():
    _, mul = run_json(["mul", "16", "--curve", G4, "--point", P4])
    _, target = run_json(["embed", "--curve", G4, "--point", json.dumps(mul)])
    _, dp = run_json(["dup-polys", "--curve", G4])
    F = GF(5)
    N = 16
    polys = []
    for row in dp["polys"]:
        terms = []
        for name, c in row.items():
            e = [0] * N
            for factor in name.split("*"):
                var, _, power = factor.partition("^")
                e[int(var[1:]) - 1] += int(power or 1)
            terms.append((e, F(c)))
        polys.append(terms)
    x = [F(a) for a in PSI_P]
    for _ in range(4):
        y = []
        for terms in polys:
            acc = F.zero
            for e, c in terms:
                t = c
                for xi, k in zip(x, e):
                    t = t * xi**k
                acc = acc + t
            y.append(acc)
        lead = next(a for a in y if a)
        x = [a / lead for a in y]
    lead = next(a for a in target["coords"] if a)
    assert [int(a) for a in x] == [int(F(a) / F(lead)) for a in target["coords"]]


def test_add_and_double_agree():
    _, dbl = run_json(["double", "--curve", G4, "--point", P4])
    _, add = run_json(["add", "--curve", G4, "--point1", P4, "--point2", P4])
    assert dbl == add


def test_membership_of_image():
    coords = json.dumps(PSI_P)
    code, out = run_json(["membership", "--curve", G4, "--coords", coords])
    assert code == EXIT_OK
    assert out["on_kummer"] and out["lifts"] and out["rank"] == 1


def test_enumerate_small_curve():
    code, out = run_json(["enumerate", "--curve", "x^3+x+1 over F5"])
    assert code == EXIT_OK
    assert out["order"] == 9 and len(out["points"]) == 9
    assert out["kummer_points"] == 5


def test_kummer_eq_generic_and_specialised():
    code, out = run_json(["kummer-eq"])
    assert code == EXIT_OK and out["form"]["x3^4"] == "1"
    code, out = run_json(["kummer-eq", "--curve", "x^5+3x+1 over F7"])
    assert code == EXIT_OK and out["form"]["x3^4"] == 1


def test_heights_report():
    code, out = run_json(["heights", "--curve", "x^5-x^4-13x^3+x^2+12x over Q",
                          "--point", '{"U":[2,1],"R":[6]}', "--n-max", "3", "--places", "inf,2"])
    assert code == EXIT_OK
    assert out["dagger"] <= out["naive"]
    assert set(out["local"]) == {"inf", "2"}


def test_verify_is_deterministic():
    argv = ["verify", "--seed", "0", "--g", "2", "--p", "13", "--n-points", "20"]
    a = run(argv)
    b = run(argv)
    assert a == b
    assert a[0] == EXIT_OK and json.loads(a[1])["passed"]


def test_repeated_output_is_byte_identical():
    argv = ["dup-polys", "--curve", "x^5+3x+1 over F7"]
    assert run(argv) == run(argv)


# --- exit codes ----------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["embed", "--curve", '{"bad": 1}', "--point", '{"U":[1],"R":[]}'],
    ["embed", "--curve", G4, "--point", '{"U":[1]}'],
    ["embed", "--curve", G4, "--point", "not json"],
    ["membership", "--curve", G4, "--coords", "[1, 2]"],
    ["job", '{"subcommand": "frobnicate"}'],
])
def test_schema_errors_exit_2(argv):
    code, out = run_json(argv)
    assert code == EXIT_SCHEMA and out["error"] == "schema"


@pytest.mark.parametrize("argv", [
    ["embed", "--curve", "x^4+1 over Q", "--point", '{"U":[1],"R":[]}'],
    ["embed", "--curve", "x^5 over F7", "--point", '{"U":[1],"R":[]}'],
    ["embed", "--curve", G4, "--point", '{"U":[3,2,1,4,2],"R":[1,1,1,3]}'],
    ["dup-polys", "--curve", "x^3+2x+1 over F3"],
    ["heights", "--curve", G4, "--point", P4],
])
def test_math_errors_exit_3(argv):
    code, out = run_json(argv)
    assert code == EXIT_MATH and out["error"] == "math"


def test_failed_suite_exits_4(monkeypatch):
    import spinkummer.cli as cli

    class Failing:
        name, g, p, cases, passed, failures = "fake", 1, 5, 1, False, ["boom"]

    monkeypatch.setattr(cli, "run_suite", lambda **kw: [Failing()])
    monkeypatch.setattr(cli, "format_report", lambda results: "fake FAIL")
    code, _ = dispatch(JobSpec.from_json({"subcommand": "verify"}))
    assert code == EXIT_INTERNAL


def test_job_spec_and_output_file(tmp_path):
    spec = {"subcommand": "embed", "curve": G4, "points": [json.loads(P4)]}
    path = tmp_path / "out.json"
    code, text = run(["--output", str(path), "job", json.dumps(spec)])
    assert code == EXIT_OK
    assert path.read_text() == text + "\n"
    assert json.loads(text)["coords"] == PSI_P


def test_main_streams(capsys):
    assert main(["embed", "--curve", G4, "--point", P4]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["coords"] == PSI_P
    assert main(["embed", "--curve", "x^4+1", "--point", "{}"]) == EXIT_MATH
    assert "error" in capsys.readouterr().err
