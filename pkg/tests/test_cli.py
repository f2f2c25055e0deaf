import json
import subprocess
import sys

import pytest

from packcolor.cli import main
from packcolor.pattern import DATA_DIR, load_pattern, verify_periodic

P320 = str(DATA_DIR / "d1_4_period320.pat")


@pytest.fixture(autouse=True)
def ledger(tmp_path, monkeypatch):
    path = tmp_path / "ledger.jsonl"
    monkeypatch.setattr("packcolor.store.DEFAULT_LEDGER", path)
    return path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dist(capsys):
    assert run(capsys, "dist", "--t", "5", "7") == (0, "3\n", "")
    assert run(capsys, "dist", "--t", "5", "2", "9")[1] == "3\n"


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--t", "4", "--pattern", P320)
    assert code == 0 and "verdict: valid" in out
    bad = tmp_path / "bad.pat"
    bad.write_text("t=2 period=4 colors=3\n1,2,1,3\n")
    code, out, _ = run(capsys, "verify", "--pattern", str(bad))
    assert code == 1 and "positions: 0 2" in out
    assert run(capsys, "verify", "--t", "5", "--pattern", P320)[0] == 2
    bad.write_text("t=2 period=4\n")
    code, _, err = run(capsys, "verify", "--pattern", str(bad))
    assert code == 2 and "line 1" in err
    assert run(capsys, "verify", "--pattern", str(tmp_path / "missing.pat"))[0] == 2


def test_lb_and_cache(capsys, ledger):
    code, out, _ = run(capsys, "lb", "--t", "4", "--colors", "9", "--length", "21", "--cached")
    assert code == 1 and "infeasible" in out and ">= 10" in out
    code, out, _ = run(capsys, "lb", "--t", "4", "--colors", "9", "--length", "21", "--cached")
    assert code == 1 and out.startswith("cached verdict")
    assert len(ledger.read_text().splitlines()) == 1


def test_tampered_ledger_reported(capsys, ledger):
    run(capsys, "lb", "--t", "4", "--colors", "9", "--length", "21")
    entry = json.loads(ledger.read_text())
    entry["verdict"] = "feasible"
    ledger.write_text(json.dumps(entry) + "\n")
    code, _, err = run(capsys, "lb", "--t", "4", "--colors", "9", "--length", "21", "--cached")
    assert code == 2 and "checksum" in err


def test_find_and_budget(capsys):
    code, out, _ = run(capsys, "find", "--t", "3", "--colors", "9", "--length", "50")
    assert code == 0 and "witness (verified)" in out
    code, out, _ = run(capsys, "lb", "--t", "5", "--colors", "11", "--length", "300",
                       "--budget-nodes", "1000")
    assert code == 3 and "indeterminate" in out


def test_checkpoint_flag(capsys, tmp_path):
    ck = str(tmp_path / "ck.bin")
    assert run(capsys, "lb", "--t", "5", "--colors", "9", "--length", "33", "--budget-nodes",
               "1000000", "--checkpoint", ck)[0] == 3
    code, out, _ = run(capsys, "lb", "--t", "5", "--colors", "9", "--length", "33", "--checkpoint", ck)
    assert code == 1 and "nodes: 6487300" in out


def test_maxcolor_and_density(capsys):
    code, out, _ = run(capsys, "maxcolor", "--t", "6", "--colors", "4", "--window", "41")
    assert code == 0 and out.splitlines()[0] == "31"
    code, out, _ = run(capsys, "density", "--t", "6", "--colors", "14", "--split", "4", "--window", "41")
    assert code == 1 and "0.999771" in out and ">= 15" in out
    code, out, _ = run(capsys, "density", "--t", "8", "--colors", "14", "--split", "6", "--window",
                       "58", "--max-colored", "50")
    assert code == 1 and "0.999110" in out and "unverified-paper-value" in out
    code, out, _ = run(capsys, "density", "--t", "6", "--colors", "14", "--split", "1", "--window", "2")
    assert code == 0 and "no bound" in out
    assert run(capsys, "maxcolor", "--t", "8", "--colors", "6", "--window", "58",
               "--budget-nodes", "100")[0] == 3


def test_construct(capsys, tmp_path):
    out_file = tmp_path / "c25.pat"
    code, out, _ = run(capsys, "construct", "--t", "25", "--out", str(out_file))
    assert code == 0 and "verdict: valid" in out
    col = load_pattern(out_file)
    assert col.colors == 35 and col.period == 72 * 25 and verify_periodic(col).valid
    assert run(capsys, "construct", "--t", "24")[0] == 2


def test_anneal(capsys, tmp_path):
    out_file, trace = tmp_path / "a.pat", tmp_path / "trace.txt"
    code, out, _ = run(capsys, "anneal", "--t", "2", "--colors", "8", "--length", "54", "--seed", "0",
                       "--out", str(out_file), "--trace", str(trace))
    assert code == 0 and verify_periodic(load_pattern(out_file)).valid
    assert len(trace.read_text().split("\n")[0].split()) == 3
    code, _, _ = run(capsys, "anneal", "--t", "2", "--colors", "8", "--length", "8", "--seed", "0",
                     "--levels", "50", "--restarts", "1")
    assert code == 3


def test_anneal_seed_recorded(capsys, ledger):
    run(capsys, "anneal", "--t", "2", "--colors", "3", "--length", "4", "--levels", "5", "--restarts", "1")
    entry = json.loads(ledger.read_text().splitlines()[-1])
    assert isinstance(entry["counters"]["seed"], int)


def test_grid_lb(capsys):
    code, out, _ = run(capsys, "grid-lb", "--t", "9")
    assert code == 1 and out.splitlines()[0] == "12"
    code, out, _ = run(capsys, "grid-lb", "--t", "8")
    assert code == 0 and "no bound" in out


def test_usage_errors(capsys):
    assert run(capsys, "lb", "--colors", "3")[0] == 2
    assert run(capsys, "lb", "--t", "1", "--colors", "3", "--length", "4")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "dist", "--t", "4", "1", "2", "3")[0] == 2


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "packcolor.cli", "dist", "--t", "6", "3",
                           "--ledger", str(tmp_path / "l.jsonl")], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "3\n"
