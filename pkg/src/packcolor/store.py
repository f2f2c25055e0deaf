"""Append-only ledger of runs, one JSON object per line.

Each line carries a ``sha256`` over the canonical JSON of the rest of the
entry, so edits are detected on read. Identical commands (same command name
and parameters) can be answered from the ledger with ``lookup``.
"""
from __future__ import annotations

import hashlib
import json
import os
import time
from pathlib import Path
from typing import Optional

DEFAULT_LEDGER = Path(os.environ.get("PACKCOLOR_LEDGER", Path.home() / ".packcolor" / "ledger.jsonl"))


class LedgerCorruption(ValueError):
    def __init__(self, path, line: int, reason: str):
        super().__init__(f"{path}:{line}: {reason}")
        self.line = line


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _digest(entry: dict) -> str:
    return hashlib.sha256(_canonical(entry).encode()).hexdigest()


def run_key(command: str, params: dict) -> str:
    """Stable identity of a command invocation."""
    return hashlib.sha256(_canonical({"command": command, "params": params}).encode()).hexdigest()


def artifact_hash(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


class Ledger:
    def __init__(self, path=None):
        self.path = Path(path) if path is not None else DEFAULT_LEDGER

    def append(self, command: str, params: dict, verdict: str, counters: Optional[dict] = None,
               artifacts: Optional[dict] = None, exit_code: int = 0) -> dict:
        entry = {
            "key": run_key(command, params),
            "command": command,
            "params": params,
            "verdict": verdict,
            "exit_code": exit_code,
            "counters": counters or {},
            "artifacts": artifacts or {},
            "time": time.strftime("%Y-%m-%dT%H:%M:%S"),
        }
        entry["sha256"] = _digest(entry)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a") as fh:
            fh.write(_canonical(entry) + "\n")
        return entry

    def entries(self) -> list[dict]:
        """All entries, checksums verified; raises ``LedgerCorruption``."""
        if not self.path.exists():
            return []
        out = []
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            try:
                entry = json.loads(line)
            except json.JSONDecodeError as exc:
                raise LedgerCorruption(self.path, lineno, f"unreadable entry ({exc.msg})") from None
            digest = entry.pop("sha256", None)
            if digest != _digest(entry):
                raise LedgerCorruption(self.path, lineno, "checksum mismatch")
            entry["sha256"] = digest
            out.append(entry)
        return out

    def lookup(self, command: str, params: dict) -> Optional[dict]:
        """Most recent entry for an identical invocation, if any."""
        key = run_key(command, params)
        hits = [e for e in self.entries() if e["key"] == key]
        return hits[-1] if hits else None
