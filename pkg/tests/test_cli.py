import csv
import json
from fractions import Fraction

import pytest

from subfree.main import main
from subfree.services import method_fusion


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# run: ")
    return json.loads(lines[0][len("# run: "):]), list(csv.DictReader(lines[1:]))


def test_pf_kac_star(capsys):
    code, out, _ = _run(capsys, "pf", "--family", "kac:4")
    assert code == 0
    run, rows = _csv(out)
    assert run["command"] == "pf"
    assert run["config"]["family"] == "kac:4"
    assert run["outputs"]["delta"] == 2
    assert run["wall_time_s"] is None
    assert [r["vertex"] for r in rows] == ["*", "h", "l2", "l3", "l4"]
    assert [r["mu"] for r in rows] == ["1", "2", "1", "1", "1"]
    assert rows[1]["parity"] == "odd" and rows[1]["distance"] == "1"


def test_pf_from_a_file_in_json(capsys, graph_dir):
    code, out, _ = _run(capsys, "pf", "--graph", str(graph_dir / "a4.json"), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["run"]["outputs"]["converged"] is True
    assert doc["graph"]["star"] == "*"
    assert doc["rows"][0]["delta"] == pytest.approx(1.61803398875)


def test_pf_is_reproducible(capsys):
    _, first, _ = _run(capsys, "pf", "--family", "aK:5")
    _, second, _ = _run(capsys, "pf", "--family", "aK:5")
    assert first == second


def test_pf_writes_to_a_file(capsys, tmp_path):
    target = tmp_path / "pf.csv"
    code, out, _ = _run(capsys, "pf", "--family", "medge:3", "--out", str(target))
    assert code == 0 and out == ""
    _, rows = _csv(target.read_text(encoding="utf-8"))
    assert rows[0]["delta"] == "3"


def test_missing_graph_file(capsys, tmp_path):
    code, _, err = _run(capsys, "pf", "--graph", str(tmp_path / "none.json"))
    assert code == 2
    assert "error:" in err


def test_bad_family_name(capsys):
    code, _, _ = _run(capsys, "pf", "--family", "e8:1")
    assert code == 2


def test_invariants_kac_four(capsys):
    code, out, _ = _run(capsys, "invariants", "--family", "kac:4", "--levels", "2")
    assert code == 0
    run, rows = _csv(out)
    assert run["outputs"]["exact"] is True
    row = rows[0]
    assert (row["r_0"], row["r_1"], row["r_2"]) == ("9", "3", "3/2")
    assert row["s"] == "11/9" and row["s_amalgamation"] == "11/9"
    assert row["fdim_base"] == "7/9"
    assert row["fdim_edge_local[1]"] == "8/9"


def test_invariants_multi_edge(capsys):
    code, out, _ = _run(capsys, "invariants", "--family", "medge:3", "--levels", "0")
    assert code == 0
    _, rows = _csv(out)
    assert rows[0]["r_0"] == "5"
    assert "r_1" not in rows[0]


@pytest.mark.parametrize("family", ["aK:2", "aInf:4:2"])
def test_invariants_refuse_degenerate_data(capsys, family):
    code, _, err = _run(capsys, "invariants", "--family", family)
    assert code == 3
    assert "error:" in err


def test_jw_from_weights(capsys):
    code, out, _ = _run(capsys, "jw", "--weights", "1,2,3", "--n", "2", "--order", "4")
    assert code == 0
    run, rows = _csv(out)
    assert run["outputs"]["weights"] == [1, 2, 3]
    assert run["outputs"]["disagreeing_k"] == []
    assert rows[2]["corner_stransform"] == "33/4"
    assert rows[2]["trace_convolution"] == "33/2"
    assert rows[2]["oracle"] == "33/2"
    assert all(r["agree"] == "true" for r in rows)


def test_jw_on_a_long_chain(capsys):
    code, out, _ = _run(capsys, "jw", "--family", "aK:99", "--n", "2", "--order", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["rows"]) == 5
    assert all(r["agree"] for r in doc["rows"])


def test_jw_method_subset(capsys):
    code, out, _ = _run(capsys, "jw", "--weights", "1,2,3", "--n", "1", "--order", "3", "--method", "oracle")
    assert code == 0
    _, rows = _csv(out)
    assert list(rows[0]) == ["k", "oracle", "agree"]


@pytest.mark.parametrize(
    "argv,code",
    [
        (["--weights", "1,2,3", "--n", "2", "--order", "40"], 3),
        (["--weights", "1,2", "--n", "2"], 3),
        (["--weights", "1,two", "--n", "1"], 2),
        (["--weights", "1,2,3", "--n", "1", "--method", "guess"], 3),
        (["--family", "kac:4", "--n", "1"], 3),
    ],
)
def test_jw_errors(capsys, argv, code):
    assert _run(capsys, "jw", *argv)[0] == code


def test_jw_strict_disagreement(capsys, monkeypatch):
    monkeypatch.setattr(method_fusion, "jw_moment_oracle", lambda w, n, k, cap: Fraction(1000))
    code, out, err = _run(capsys, "jw", "--weights", "1,2,3", "--n", "1", "--order", "2")
    assert code == 0
    assert _csv(out)[0]["outputs"]["disagreeing_k"] == [0, 1, 2]
    code, _, err = _run(capsys, "jw", "--weights", "1,2,3", "--n", "1", "--order", "2", "--strict")
    assert code == 4
    assert "disagree" in err


def test_missing_required_argument():
    with pytest.raises(SystemExit) as info:
        main(["jw", "--weights", "1,2,3"])
    assert info.value.code == 2


MC_ARGS = ["mc", "--family", "medge:2", "--word", "c1 c1*", "--dim", "8", "--samples", "4", "--kmax", "2"]


def test_mc_rows(capsys):
    code, out, _ = _run(capsys, *MC_ARGS)
    assert code == 0
    run, rows = _csv(out)
    assert run["config"]["dim"] == 8
    assert "threads" not in run["config"]
    assert run["outputs"]["block_sizes"] == {"*": 8, "v": 8}
    assert [r["power"] for r in rows] == ["1", "2"]
    assert [r["target"] for r in rows] == ["1", "2"]
    assert rows[0]["word"] == "c1 c1*"


def test_mc_does_not_depend_on_threads(capsys):
    _, one, _ = _run(capsys, *MC_ARGS, "--threads", "1")
    _, three, _ = _run(capsys, *MC_ARGS, "--threads", "3")
    assert one == three


def test_mc_timing_is_opt_in(capsys):
    _, out, _ = _run(capsys, *MC_ARGS, "--timing")
    run, _ = _csv(out)
    assert run["wall_time_s"] is not None


def test_mc_histogram(capsys, tmp_path):
    target = tmp_path / "hist.csv"
    code, out, _ = _run(capsys, *MC_ARGS, "--hist", str(target), "--bins", "10")
    assert code == 0
    assert _csv(out)[0]["outputs"]["histogram"] == str(target)
    run, rows = _csv(target.read_text(encoding="utf-8"))
    assert run["command"] == "mc-hist"
    assert run["outputs"]["n_base"] == 8
    assert len(rows) == 10
    assert sum(int(r["count"]) for r in rows) == 8 * 4


@pytest.mark.parametrize("word", ["c1 x", "c1 c1", "c7 c7*"])
def test_mc_rejects_bad_words(capsys, word):
    argv = list(MC_ARGS)
    argv[argv.index("--word") + 1] = word
    assert _run(capsys, *argv)[0] == 2


def test_bad_thread_setting(capsys, monkeypatch):
    monkeypatch.setenv("SUBFREE_THREADS", "many")
    code, _, err = _run(capsys, *MC_ARGS)
    assert code == 2
    assert "SUBFREE_THREADS" in err
