import json

import pytest

from packcolor.store import Ledger, LedgerCorruption, run_key


def test_append_and_lookup(tmp_path):
    led = Ledger(tmp_path / "l.jsonl")
    assert led.lookup("lb", {"t": 4}) is None
    led.append("lb", {"t": 4, "c": 9}, "infeasible", {"nodes": 5}, exit_code=1)
    led.append("lb", {"t": 5, "c": 9}, "feasible")
    hit = led.lookup("lb", {"c": 9, "t": 4})
    assert hit["verdict"] == "infeasible" and hit["exit_code"] == 1 and hit["counters"] == {"nodes": 5}
    assert len(led.entries()) == 2


def test_latest_entry_wins(tmp_path):
    led = Ledger(tmp_path / "l.jsonl")
    led.append("x", {}, "a")
    led.append("x", {}, "b")
    assert led.lookup("x", {})["verdict"] == "b"


def test_tamper_detected(tmp_path):
    path = tmp_path / "l.jsonl"
    led = Ledger(path)
    led.append("lb", {"t": 4}, "infeasible")
    led.append("lb", {"t": 5}, "infeasible")
    lines = path.read_text().splitlines()
    entry = json.loads(lines[1])
    entry["verdict"] = "feasible"
    lines[1] = json.dumps(entry)
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(LedgerCorruption) as err:
        led.entries()
    assert err.value.line == 2


def test_garbage_line_detected(tmp_path):
    path = tmp_path / "l.jsonl"
    path.write_text("{not json\n")
    with pytest.raises(LedgerCorruption):
        Ledger(path).entries()


def test_key_ignores_param_order():
    assert run_key("a", {"x": 1, "y": 2}) == run_key("a", {"y": 2, "x": 1})
    assert run_key("a", {"x": 1}) != run_key("b", {"x": 1})
