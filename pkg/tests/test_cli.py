import json
import random

import pytest

from reldyn.axioms import generate_cons_mass_counterexample, random_standard_model
from reldyn.cli import main
from reldyn.scenario import dumps, save_scenario


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def standard_file(tmp_path):
    path = tmp_path / "std.json"
    save_scenario(random_standard_model(random.Random(1), 3), path)
    return str(path)


@pytest.fixture
def cm_file(tmp_path):
    path = tmp_path / "cm.json"
    save_scenario(generate_cons_mass_counterexample(), path)
    return str(path)


def test_resolve_text(capsys):
    code, out, _ = run(capsys, "resolve", "1", "3/5", "1", "0")
    assert code == 0
    assert "9/4" in out and "(1/3)" in out
    assert "3*sqrt(2)/2" in out and "2.12132" in out


def test_resolve_symmetric_and_negative_args(capsys):
    code, out, _ = run(capsys, "resolve", "1", "1/2", "1", "-1/2", "--format", "summary")
    assert code == 0
    assert json.loads(out)["velocity"] == ["0"]


def test_resolve_float_backend(capsys):
    code, out, _ = run(capsys, "resolve", "1", "0.6", "1", "0", "--backend", "float", "--format", "summary")
    assert code == 0
    assert json.loads(out)["rest_mass"] == pytest.approx(2.1213203, abs=1e-6)


def test_float_backend_rejected_elsewhere(capsys, standard_file):
    code, _, err = run(capsys, "check", standard_file, "--backend", "float")
    assert code == 2 and "exact" in err


def test_resolve_at_light_speed_fails(capsys):
    code, _, err = run(capsys, "resolve", "1", "1", "1", "0")
    assert code == 1 and err


def test_validate(capsys, standard_file, tmp_path):
    assert run(capsys, "validate", standard_file)[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text("{ this is not json")
    assert run(capsys, "validate", str(bad))[0] == 2
    data = json.loads(open(standard_file).read())
    data["masses"][0]["value"] = "0"
    zero = tmp_path / "zero.json"
    zero.write_text(json.dumps(data))
    code, out, err = run(capsys, "validate", str(zero))
    assert code == 1 and "MassNotPositive" in out + err


def test_check_all_and_named(capsys, standard_file, cm_file):
    code, out, _ = run(capsys, "check", standard_file)
    assert code == 0 and "AxSelf" in out
    code, out, _ = run(capsys, "check", cm_file, "ConsMass")
    assert code == 1 and "Fails" in out
    code, _, err = run(capsys, "check", standard_file, "AxFoo")
    assert code == 2 and "AxFoo" in err


def test_summary_is_deterministic(capsys, standard_file):
    first = run(capsys, "check", standard_file, "--format", "summary")[1]
    second = run(capsys, "check", standard_file, "--format", "summary")[1]
    assert first == second
    assert json.loads(first)["ok"] is True


def test_generate_same_seed_same_bytes(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "generate", "standard", str(a), "--seed", "7", "--dimension", "3")[0] == 0
    assert run(capsys, "generate", "standard", str(b), "--seed", "7", "--dimension", "3")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text() == dumps(random_standard_model(random.Random(7), 3))


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["demo", "emc2"], "5/2"),
        (["demo", "massdepend"], "5/4"),
        (["demo", "thm1", "--batch", "3"], "confirmed"),
        (["demo", "thm1-construction"], "5/4"),
        (["demo", "thm2-batch", "--batch", "6"], "confirmed"),
        (["demo", "counterexample"], "ConsMass"),
    ],
)
def test_demos_confirm(capsys, argv, needle):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    assert needle in out and "NOT confirmed" not in out


def test_demo_summaries_are_byte_identical(capsys):
    a = run(capsys, "demo", "thm2-batch", "--batch", "4", "--seed", "3", "--format", "summary")[1]
    b = run(capsys, "demo", "thm2-batch", "--batch", "4", "--seed", "3", "--format", "summary")[1]
    assert a == b and json.loads(a)


def test_plot_cli(capsys, standard_file, tmp_path):
    code, out, _ = run(capsys, "plot", standard_file)
    assert code == 0 and "<svg" in out
    target = tmp_path / "p.svg"
    assert run(capsys, "plot", standard_file, "-o", str(target), "--axes", "t,y")[0] == 0
    assert "<svg" in target.read_text()
    assert run(capsys, "plot", standard_file, "--observer", "ghost")[0] == 2
    assert run(capsys, "plot", standard_file, "--axes", "t,w")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "demo", "nope")[0] == 2
    assert run(capsys, "resolve", "1", "3/5", "--format", "svg")[0] == 2
