import json
import subprocess
import sys

import pytest

from partialconj.cli import COMMANDS, main

INVOCATIONS = [
    ["pi", "--type", "A3", "--J", "1,2", "--word", "2,3,2,1,2"],
    ["iset", "--type", "A3", "--J", "1,3", "--word", "2,1,3,2"],
    ["orbit", "--J", "1,2", "--word", "2,3,2,1,2"],
    ["reduce", "--J", "1,3", "--word", "2,1,3,2,1"],
    ["leq", "--J", "1,2", "--word", "3", "--word2", "1,2,3"],
    ["pieces", "--type", "A3", "--J", "1,2"],
    ["pieces", "--type", "A3", "--J", "1,2", "--closure", "--format", "json"],
    ["xpieces", "--type", "A2"],
    ["xpieces", "--type", "A2", "--J", "1", "--word", "2"],
    ["kpieces", "--n", "2", "--bound", "3"],
    ["specialize", "--perm", "2,1", "--trans", "1,0"],
    ["good", "--n", "2", "--perm", "2,1", "--trans", "1,0"],
    ["distinguished", "--perm", "1,2", "--trans", "2,0"],
    ["newton", "--b", '{"blocks":[[1,1,0],[1,0,0]]}'],
    ["adlv", "--n", "2", "--w", '{"perm":[2,1],"trans":[1,-1]}', "--b", '{"blocks":[[1,0,0],[1,0,0]]}'],
    ["bn-verify", "--n", "2", "--q", "2", "--J", "1"],
    ["count-pieces", "--n", "3"],
    ["pi", "--type", "A3", "--J", "1,3", "--delta", "1:3,3:1", "--word", "2,1,3,2,1"],
]


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_every_subcommand_is_exercised():
    assert {a[0] for a in INVOCATIONS} == set(COMMANDS)


def test_pi_example(capsys):
    code, out, _ = run(INVOCATIONS[0], capsys)
    assert code == 0
    assert json.loads(out)["pi"] == [1, 2, 3]
    code, out, _ = run(INVOCATIONS[0] + ["--format", "table"], capsys)
    assert "pi\t1,2,3" in out.splitlines()


def test_iset_example(capsys):
    _, out, _ = run(INVOCATIONS[1], capsys)
    assert json.loads(out)["iset"] == [1, 3]


def test_pieces_closure_dot(capsys):
    code, out, _ = run(["pieces", "--type", "A3", "--J", "1,2", "--closure"], capsys)
    assert code == 0 and out.startswith("digraph")
    assert out.count("->") == 3


def test_good_example(capsys):
    _, out, _ = run(INVOCATIONS[11], capsys)
    data = json.loads(out)
    assert data["good"] is True


def test_adlv_example(capsys):
    _, out, _ = run(INVOCATIONS[14], capsys)
    data = json.loads(out)
    assert data["nonempty"] is True and data["dim"] == 1
    assert {"nonempty", "dim", "eta", "defect", "kappa"} <= set(data)


def test_bn_verify_example(capsys):
    _, out, _ = run(["bn-verify", "--n", "3", "--q", "2", "--J", "1"], capsys)
    data = json.loads(out)
    assert data["axioms"]["pass"] and data["cover"]["pass"] and data["lemma1"]["pass"]
    assert "timings" in data


@pytest.mark.parametrize("argv", INVOCATIONS, ids=lambda a: " ".join(a[:3]))
def test_json_round_trip(argv, capsys, tmp_path):
    code, out, _ = run(argv, capsys)
    assert code == 0
    path = tmp_path / "doc.json"
    path.write_text(out)
    code, again, _ = run([argv[0], "--from-json", str(path)], capsys)
    assert code == 0

    def strip(text):
        # timings are the only non-deterministic field
        data = json.loads(text)
        data.pop("timings", None)
        return data
    assert strip(again) == strip(out)


@pytest.mark.parametrize("argv", INVOCATIONS[:13], ids=lambda a: " ".join(a[:3]))
def test_output_is_deterministic(argv, capsys):
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b


def test_table_format_everywhere(capsys):
    for argv in INVOCATIONS:
        code, out, _ = run(argv + ["--format", "table"], capsys)
        assert code == 0 and out.strip()


def test_domain_error_exit_code(capsys):
    code, _, err = run(["iset", "--J", "1,3", "--word", "2,1,3,2,1"], capsys)
    assert code == 1 and "error" in err
    code, _, _ = run(["pi", "--J", "1,9", "--word", "1"], capsys)
    assert code == 1


def test_usage_error_exit_code(capsys):
    code, _, err = run(["pi", "--J", "1,2"], capsys)
    assert code == 2 and "usage" in err
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    code, _, _ = run(["good", "--format", "dot", "--perm", "1,2", "--trans", "0,0"], capsys)
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "partialconj", "count-pieces", "--n", "2"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["pieces"] == 5
