import json
import shutil
import subprocess
import sys

import pytest

from oreflag.cli import main
from oreflag.corpus import MATRIX_SETS, MODULES, PRESENTATIONS
from oreflag.presentation import parse_presentation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def qplane_file(tmp_path):
    path = tmp_path / "qplane2.ore"
    path.write_text(PRESENTATIONS["qplane-q2"])
    return str(path)


def test_normal_form_from_file(capsys, qplane_file):
    code, out, _ = run(capsys, "nf", "--presentation", qplane_file, "y x")
    assert code == 0 and out.strip() == "2*x*y"


def test_mul(capsys):
    code, out, _ = run(capsys, "mul", "--presentation", "qplane-q2", "x + y", "x")
    assert code == 0 and out.strip() == "x^2 + 2*x*y"


def test_triangularize_borel_module(capsys, tmp_path):
    pres = tmp_path / "borel.ore"
    pres.write_text(PRESENTATIONS["borel"])
    code, out, _ = run(capsys, "examples", "emit", "borel-nat")
    mod = tmp_path / "borel-nat.json"
    mod.write_text(out)
    code, out, _ = run(capsys, "triangularize", "--presentation", str(pres), "--module", str(mod), "--json")
    data = json.loads(out)
    assert code == 0
    assert data["characters"] == [{"h": "1", "e": "0"}, {"h": "-1", "e": "0"}]


def test_strict_heisenberg(capsys):
    code, out, _ = run(capsys, "strict", "--module", "heisenberg3", "--json")
    data = json.loads(out)
    assert code == 0 and data["strict"]
    assert all(v == "0" for c in data["characters"] for v in c.values())


def test_certificate_exit_code(capsys):
    code, out, _ = run(capsys, "strict", "--module", "borel-nat")
    assert code == 1 and "NonzeroCharacterRequired" in out


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "t3", "--presentation", "qplane-q2", "--json")
    assert code == 0 and json.loads(out)["overall"] == "pass"
    code, out, _ = run(capsys, "verify", "--theorem", "t3", "--presentation", "qplane-gf5", "--json")
    data = json.loads(out)
    assert code == 1 and data["overall"] == "fail"
    assert data["witnesses"][0]["orbit"] == "Cycle(4)"
    code, _, _ = run(capsys, "verify", "--theorem", "t3", "--presentation", "heisenberg")
    assert code == 3
    code, _, _ = run(capsys, "verify", "--theorem", "na1", "--presentation", "heisenberg", "--module", "heisenberg3")
    assert code == 0
    code, _, _ = run(capsys, "verify", "--theorem", "genlie", "--presentation", "borel-bracket")
    assert code == 0


def test_undecidable_characters_exit_code(capsys, tmp_path):
    path = tmp_path / "lin.ore"
    path.write_text("field Q\ngens a b c\nswap c b : sigma = b, theta = a + b\n")
    code, _, err = run(capsys, "characters", "--presentation", str(path))
    assert code == 3 and "undecided" in err


def test_usage_errors(capsys):
    code, _, err = run(capsys, "nf", "y x")
    assert code == 2 and "--presentation" in err
    code, _, err = run(capsys, "nf", "--presentation", "no-such-thing", "y x")
    assert code == 2
    code, _, err = run(capsys, "nf", "--presentation", "qplane-q2", "y w")
    assert code == 2 and "w" in err
    code, _, _ = run(capsys, "examples", "emit", "nothing")
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "--theorem", "nope", "--presentation", "qplane-q2"])
    assert info.value.code == 2


def test_parse_error_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.ore"
    path.write_text("field Q\ngens x y\nswap y x : sigma = y\n")
    code, _, err = run(capsys, "validate", "--presentation", str(path))
    assert code == 2 and "IndexViolation" in err


def test_validate_reports_overlap_failure(capsys, tmp_path):
    path = tmp_path / "bad.ore"
    path.write_text("field Q\ngens z x y\nswap x z : sigma = 2*z\nswap y x : sigma = x, theta = -z\n")
    code, out, _ = run(capsys, "validate", "--presentation", str(path), "--json")
    data = json.loads(out)
    assert code == 1 and not data["consistent"]
    assert data["failures"][0]["generators"] == ["y", "x", "z"]


@pytest.mark.parametrize("name", sorted(PRESENTATIONS))
def test_emitted_presentations_validate(capsys, tmp_path, name):
    code, out, _ = run(capsys, "examples", "emit", name)
    assert code == 0
    path = tmp_path / f"{name}.ore"
    path.write_text(out)
    code, out, _ = run(capsys, "validate", "--presentation", str(path), "--json")
    data = json.loads(out)
    assert code == 0 and data["consistent"] and data["failures"] == []


@pytest.mark.parametrize("name", sorted(MODULES))
def test_emitted_modules_check(capsys, tmp_path, name):
    code, out, _ = run(capsys, "examples", "emit", name)
    path = tmp_path / f"{name}.json"
    path.write_text(out)
    code, out, _ = run(capsys, "check-module", "--module", str(path), "--json")
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize("name", sorted(MATRIX_SETS))
def test_extract_output_reparses(capsys, tmp_path, name):
    code, out, _ = run(capsys, "examples", "emit", name)
    path = tmp_path / f"{name}.json"
    path.write_text(out)
    code, out, _ = run(capsys, "extract", "--matrices", str(path), "--json")
    data = json.loads(out)
    assert code == 0 and data["relations_hold"]
    p = parse_presentation(data["presentation"])
    assert p.to_dsl() == data["presentation"]


def test_examples_list(capsys):
    code, out, _ = run(capsys, "examples", "list", "--json")
    names = {e["name"] for e in json.loads(out)["examples"]}
    for required in ["qplane-q2", "qplane-gf5", "qaffine3", "qmatrix22", "borel", "heisenberg", "s3", "t2-upper", "jordan3"]:
        assert required in names


def test_other_subcommands(capsys):
    code, out, _ = run(capsys, "loewy", "--matrices", "jordan3")
    assert code == 0 and "[1, 1, 1]" in out
    code, out, _ = run(capsys, "ladder", "--module", "heisenberg3")
    assert code == 0 and out.strip() == "Nilpotent(3)"
    code, out, _ = run(capsys, "characters", "--presentation", "heisenberg", "--json")
    assert json.loads(out)["components"] == [["0", "Free", "Free"]]
    code, out, _ = run(capsys, "orbit", "--presentation", "qplane-gf5", "--character", "x=1")
    assert code == 0 and out.strip() == "Cycle(4)"
    code, out, _ = run(capsys, "ext1", "--presentation", "commutative2", "--lam", "x=1 y=1", "--mu", "x=1 y=1")
    assert out.strip() == "2"
    code, out, _ = run(capsys, "regular", "--presentation", "s3", "--json")
    assert json.loads(out)["dim"] == 6
    code, out, _ = run(capsys, "triangularize", "--matrices", "t2-upper", "--seed", "3")
    assert code == 0


def test_json_outputs_reparse(capsys):
    commands = [
        ["triangularize", "--module", "borel-nat"],
        ["strict", "--module", "borel-nat"],
        ["loewy", "--module", "qplane-nat"],
        ["verify", "--theorem", "genlie2", "--presentation", "qaffine3-half"],
        ["extract", "--matrices", "heisenberg-image"],
    ]
    for argv in commands:
        code, out, _ = run(capsys, *argv, "--json")
        assert isinstance(json.loads(out), dict)


@pytest.mark.skipif(shutil.which("oreflag") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["oreflag", "nf", "--presentation", "qplane-q2", "y x"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "2*x*y"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "oreflag.cli", "nf", "--presentation", "heisenberg", "y x"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "x*y - z"
