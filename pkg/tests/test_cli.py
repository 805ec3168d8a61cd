import pytest
from click.testing import CliRunner

from cacti.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def values(out):
    return dict(line.split(" = ", 1) for line in out.splitlines() if " = " in line)


def test_nap_dims():
    r = run("operad-dims", "--preset", "nap", "--coalgebra", "point", "--max-arity", "5")
    assert r.exit_code == 0, r.output
    v = values(r.output)
    assert v["dims"] == "1, 2, 9, 64, 625"
    assert v["oracle.match"] == "pass" and v["status"] == "pass"


def test_expect_mismatch_fails():
    r = run("operad-dims", "--preset", "com", "--expect", "1,1,2")
    assert r.exit_code == 1
    assert values(r.output)["expected.match"] == "fail"


def test_reruns_are_identical():
    args = ("operad-gb", "--preset", "postlie", "--max-weight", "3")
    assert run(*args).output == run(*args).output


@pytest.mark.parametrize("field", ["q", "f2", "f3"])
@pytest.mark.parametrize("args", [
    ("coalgebra-validate", "--preset", "circle"),
    ("operad-dims", "--preset", "bcact", "--coalgebra", "discrete(2)", "--max-arity", "4"),
    ("operad-gb", "--preset", "as", "--require-quadratic"),
    ("operad-dual", "--preset", "ctd", "--check-arity", "3"),
    ("operad-suboperad", "--preset", "as", "--generators", "br", "--expect", "1,1,2"),
    ("fdl-check", "--preset", "postlie"),
    ("cacti-dims", "--coalgebra", "circle", "--max-arity", "4"),
    ("series-check", "--pair", "nap", "--n", "5"),
    ("algebra-check",),
], ids=lambda a: a[0] if isinstance(a, tuple) else a)
def test_field_option(args, field):
    r = run(*args, "--field", field)
    assert r.exit_code == 0, r.output
    v = values(r.output)
    if "field" in v:
        assert v["field"] == field


def test_fdl_control():
    assert run("fdl-check", "--preset", "postlie").exit_code == 0
    r = run("fdl-check", "--preset", "postlie-mutated")
    assert r.exit_code == 1
    assert values(r.output)["weight3"] == "fail"


def test_bad_coalgebra_file(tmp_path):
    path = tmp_path / "bad.coalg"
    path.write_text("basis one deg 0\nbasis x1 deg 0\nunit one\ncounit one 1\ncounit x1 0\n"
                    "coproduct one = 1*one(x)one\ncoproduct x1 = 1*x1(x)x1\n")
    r = run("coalgebra-validate", str(path))
    assert r.exit_code == 1
    v = values(r.output)
    assert v["axiom.counit"] == "fail"
    assert v["axiom.counit.first_violation"] == "x1"


def test_parse_error_location(tmp_path):
    path = tmp_path / "bad.coalg"
    path.write_text("basis one deg 0\nunit one\ncounit one 1\ncoproduct one = 1*one(x)\n")
    r = run("coalgebra-validate", str(path))
    assert r.exit_code == 2
    assert "line 4" in r.output and "col" in r.output


def test_unknown_preset():
    r = run("operad-dims", "--preset", "nope")
    assert r.exit_code == 2
    assert "unknown operad preset" in r.output


def test_bad_field():
    assert run("operad-dims", "--preset", "com", "--field", "f4").exit_code == 2


def test_dump_preset():
    r = run("--dump-preset", "com")
    assert r.exit_code == 0
    assert "m(m(1,2),3)" in r.output
    r = run("--dump-preset", "S3")
    assert r.output.startswith("elements")
    assert run("--dump-preset", "circle").output.startswith("basis")


def test_dump_and_reload(tmp_path):
    text = run("--dump-preset", "postlie").output
    path = tmp_path / "p.txt"
    path.write_text(text)
    a = values(run("operad-dims", "--file", str(path), "--max-arity", "4").output)
    b = values(run("operad-dims", "--preset", "postlie", "--order", "path-lex", "--max-arity", "4").output)
    assert a["dims"] == b["dims"]


def test_algebra_check():
    assert run("algebra-check").exit_code == 0
    r = run("algebra-check", "--p", "0,0;0,2")
    assert r.exit_code == 1
    assert "violation" in values(r.output)
    assert run("algebra-check", "--p", "1,2,3").exit_code == 2


def test_groups_verify():
    r = run("groups-verify", "--n", "3", "--group", "S3", "--compose-m", "2")
    assert r.exit_code == 0, r.output
    v = values(r.output)
    assert v["control.weakened"] == "fails"
    assert v["composition.n3m2"] == "pass"


def test_groups_verify_file(tmp_path):
    path = tmp_path / "c4.grp"
    path.write_text(run("--dump-preset", "C4").output)
    r = run("groups-verify", "--n", "3", "--group-file", str(path), "--jobs", "2")
    assert r.exit_code == 0, r.output


def test_series_check():
    assert run("series-check", "--pair", "bcact", "--coalgebra", "circle", "--n", "5").exit_code == 0
    assert run("series-check", "--dims", "1,1,1", "--dual-dims", "1,1,2", "--n", "3").exit_code == 0
    assert run("series-check", "--dims", "1,1,1", "--dual-dims", "1,1,1", "--n", "3").exit_code == 1
    assert run("series-check").exit_code == 2


def test_cacti_dims():
    r = run("cacti-dims", "--coalgebra", "wedge_of_circles(2)", "--max-arity", "4")
    assert r.exit_code == 0
    assert values(r.output)["dims"] == "1, 6, 63, 972"


def test_require_quadratic():
    assert run("operad-gb", "--preset", "leib", "--require-quadratic").exit_code == 0
    r = run("operad-gb", "--preset", "leib", "--order", "path-lex", "--require-quadratic", "--no-show")
    assert r.exit_code == 1
    assert values(r.output)["quadratic"] == "fail"


def test_suboperad_expect():
    assert run("operad-suboperad", "--preset", "ctd", "--generators", "star",
               "--expect", "1,1,1").exit_code == 0
    assert run("operad-suboperad", "--preset", "ctd", "--generators", "star",
               "--expect", "1,1,2").exit_code == 1


def test_count_first_needs_generators():
    r = run("operad-dims", "--preset", "as", "--order", "count-first")
    assert r.exit_code == 2
    r = run("operad-dims", "--preset", "as", "--order", "count-first", "--distinguished", "zz")
    assert r.exit_code == 2


def test_timing_flag():
    r = run("--timing", "operad-dims", "--preset", "com")
    assert "time = " in r.output
