import json

import pytest

from streamlogic import deduction as dd
from streamlogic.acceptance import PROOF_THEORY, derivation_corpus, mutated_corpus
from streamlogic.cli import main
from streamlogic.geometry import format_sequent


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.mark.parametrize(
    "argv, code, out",
    [
        (["eval", "G F a", "|_a"], 0, "true"),
        (["eval", "X a", "a|_"], 1, "false"),
        (["classify", "F G a"], 0, "NegationFree"),
        (["classify", "a W b"], 0, "Gdelta"),
        (["geom-check", "X a", "a|_"], 1, "ltl=false geom=false agree"),
        (["geom-check", "G F a", "|_a"], 0, "ltl=true geom=true agree"),
        (["geom-check", "F a", "___|a", "--budget", "2"], 3, "ltl=true geom=unknown undecided"),
    ],
)
def test_commands(capsys, argv, code, out):
    assert run(capsys, *argv)[:2] == (code, out)


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "a U", "|a"],
        ["eval", "a", "ab"],
        ["eval", "c", "|a", "--alphabet", "ab"],
        ["geom-check", "~a", "|a"],
        ["translate", "a U b", "--simplified"],
        ["filter-demo", "--pred", "a=tt,b=bot", "--stream", "|ab"],
        ["filter-demo", "--pred", "a=tt,b=ff", "--stream", "a_|b"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["eval"])
    assert info.value.code == 2


def test_json_output(capsys):
    code, out, _ = run(capsys, "eval", "F a", "b|a", "--json")
    assert code == 0
    assert json.loads(out) == {"formula": "F a", "stream": "b|a", "holds": True}
    code, out, _ = run(capsys, "translate", "F a", "--json", "--width", "2")
    payload = json.loads(out)
    assert payload["stratum"] == "G"
    assert payload["geometric"] == "OR_n[false; a_^ω; ...]"


def test_translate_text(capsys):
    code, out, _ = run(capsys, "translate", "G a", "--simplified", "--width", "2", "--depth", "1")
    assert code == 0
    assert out.splitlines()[0] == "# G a : Gdelta"
    assert "MEET_n" in out


def test_filter_demo(capsys):
    code, out, _ = run(capsys, "filter-demo", "--pred", "a=tt,b=ff", "--stream", "b|ab", "--kmax", "2")
    assert code == 0
    assert "output a^ω" in out
    assert out.splitlines()[-1] == "verdict: ok"


def test_prove(tmp_path, capsys):
    theory = tmp_path / "theory.txt"
    theory.write_text("\n".join(format_sequent(s) for s in PROOF_THEORY.sequents), encoding="utf-8")
    good = tmp_path / "good.json"
    good.write_text(dd.dumps(derivation_corpus()[10]), encoding="utf-8")
    code, out, _ = run(capsys, "prove", "--check", str(good), "--theory", str(theory), "--sound")
    assert code == 0 and out.endswith("sound on all table valuations")
    bad = tmp_path / "bad.json"
    bad.write_text(dd.dumps(mutated_corpus()[0][0]), encoding="utf-8")
    code, out, _ = run(capsys, "prove", "--check", str(bad), "--theory", str(theory), "--json")
    assert code == 1
    assert json.loads(out)["path"] == [1]
    code, _, err = run(capsys, "prove", "--check", str(tmp_path / "missing.json"), "--theory", str(theory))
    assert code == 2
