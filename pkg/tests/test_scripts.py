import sys

from scripts import quickstart_mc


def test_quickstart_with_one_sample_has_no_z_score(capsys, monkeypatch):
    monkeypatch.setattr(sys, "argv", ["quickstart_mc", "--dim", "6", "--samples", "1", "--threads", "1"])
    quickstart_mc.main()
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 5
    assert all(line.endswith("z=n/a") for line in lines)
