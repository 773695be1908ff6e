import subprocess
import sys

import pytest

from lastsym.cli import main
from lastsym.textio import parse_dfa, parse_nfa


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "a(b|())*", "--ascii")
    assert code == 0
    assert out.splitlines() == ["(a((b|()))*)", "width 2", "nullable 0"]


def test_parse_error_exit_code(capsys, caplog):
    code, _, _ = run(capsys, "parse", "a|")
    assert code == 2
    assert "position 2" in caplog.text


def test_bad_alphabet(capsys):
    assert run(capsys, "nfa", "a", "--alphabet", "a,a")[0] == 2


def test_nfa_and_files(capsys, tmp_path):
    code, out, _ = run(capsys, "nfa", "ab|c*", "--alphabet", "abc",
                       "--dot", str(tmp_path / "n.dot"))
    assert code == 0
    nfa = parse_nfa(out)
    assert nfa.state_count == 4
    assert (tmp_path / "n.dot").read_text().startswith("digraph")


def test_dfa_from_nfa_file(capsys, tmp_path):
    run(capsys, "nfa", "(ab)*", "--out", str(tmp_path / "x.nfa"))
    code, out, err = run(capsys, "dfa", "--nfa-file", str(tmp_path / "x.nfa"))
    assert code == 0
    dfa = parse_dfa(out)
    assert dfa.subsets is not None
    assert err.startswith("label,")


def test_minimize_writes_report(capsys, tmp_path):
    csv_path = tmp_path / "r.csv"
    code, out, _ = run(capsys, "minimize", "a*", "--alphabet", "a", "--csv", str(csv_path))
    assert code == 0
    assert parse_dfa(out).state_count == 1
    header, row = csv_path.read_text().splitlines()
    fields = dict(zip(header.split(","), row.split(",")))
    assert fields["width"] == "1"
    assert fields["nfa_states"] == "2"
    assert fields["minimal_states"] == "1"


def test_empty_language_pipeline(capsys):
    code, out, _ = run(capsys, "minimize", "∅")
    assert code == 0
    assert parse_dfa(out).state_count == 1


def test_budget_exit_code(capsys):
    code, _, _ = run(capsys, "dfa", "(a|b)*a(a|b)(a|b)(a|b)", "--max-subsets", "4")
    assert code == 3


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "dfa", "--nfa-file", str(tmp_path / "nope"))[0] == 2


def test_witness_certify(capsys, tmp_path):
    code, out, _ = run(capsys, "witness", "--cycles", "3,5", "--certify",
                       "--out-dir", str(tmp_path), "--dot")
    assert code == 0
    lines = out.splitlines()
    assert "width 14" in lines and "nfa_states 13" in lines and "lower_bound 180" in lines
    header, row = lines[-2:]
    fields = dict(zip(header.split(","), row.split(",")))
    assert fields["minimal_states"] == "235"
    assert fields["certified"] == "1"
    assert parse_nfa((tmp_path / "witness_3_5.nfa").read_text()).state_count == 13
    assert (tmp_path / "witness_3_5.dot").exists()


def test_witness_budget(capsys):
    code, out, _ = run(capsys, "witness", "--budget", "30")
    assert code == 0
    assert "cycles 3,5,7" in out and "width 26" in out


def test_witness_budget_skip(capsys):
    assert run(capsys, "witness", "--cycles", "3,5", "--certify", "--max-subsets", "20")[0] == 3


def test_witness_bad_args(capsys):
    assert run(capsys, "witness", "--cycles", "3,6")[0] == 2
    assert run(capsys, "witness")[0] == 2
    assert run(capsys, "witness", "--budget", "4")[0] == 2


def test_landau(capsys):
    code, out, _ = run(capsys, "landau", "5", "7")
    assert code == 0
    assert out == "n,g,parts\n5,6,2 3\n6,6,2 3\n7,12,3 4\n"
    assert run(capsys, "landau", "500")[0] == 2


def test_sweep_cli(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "--seed", "7", "6", "8")
    assert code == 0
    assert out.splitlines()[1].startswith("witness n=6,witness,6,5,3,1,6,6,")
    assert run(capsys, "sweep", "9", "8")[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lastsym", "parse", "ab*"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "width 2" in res.stdout


@pytest.mark.parametrize("argv", [[], ["frobnicate"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_json_reports(capsys, tmp_path):
    import json
    path = tmp_path / "r.json"
    assert run(capsys, "sweep", "--seed", "1", "6", "6", "--json", str(path))[0] == 0
    rows = json.loads(path.read_text())
    assert rows[0]["lower_bound"] == 6 and rows[0]["kind"] == "witness"
    path2 = tmp_path / "p.json"
    assert run(capsys, "minimize", "a", "--alphabet", "a", "--json", str(path2))[0] == 0
    [row] = json.loads(path2.read_text())
    assert row["landau_asymptotic"] is None   # undefined below n = 2
    assert row["minimal_states"] == 3
