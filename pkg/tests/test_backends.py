import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from packcolor import _backend
from packcolor.graph import forbidden_table, offset_csr

pytestmark = pytest.mark.skipif(_backend.BACKEND != "compiled", reason="compiled backend unavailable")

C, P = (_backend.get("compiled"), _backend.get("python")) if _backend.BACKEND == "compiled" else (None, None)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 8), st.lists(st.integers(1, 9), min_size=1, max_size=50))
def test_first_violation_and_count(t, word):
    w = np.array(word, dtype=np.int32)
    ptr, offs = offset_csr(t, 9)
    assert C.first_violation(w, ptr, offs) == P.first_violation(w, ptr, offs)
    assert C.count_violations(w, ptr, offs) == P.count_violations(w, ptr, offs)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 8), st.lists(st.integers(0, 9), min_size=1, max_size=60))
def test_first_violation_finite(t, entries):
    w = np.array(entries, dtype=np.int32)
    ptr, offs = offset_csr(t, 9)
    assert C.first_violation_finite(w, ptr, offs) == P.first_violation_finite(w, ptr, offs)


def test_dfs_chunks_agree():
    forb = forbidden_table(5, 7)
    for kern in (C, P):
        colors = np.zeros(41, dtype=np.int32)
        depth, trace = 0, []
        while True:
            status, depth, n = kern.dfs_extend(forb, 5, 7, 40, 7, 7, 0, colors, depth, 997)
            trace.append((status, depth, n))
            if status != 2:
                break
        if kern is C:
            ref = trace
    assert trace == ref


def test_maxcol_agree():
    forb = forbidden_table(6, 3)
    out = []
    for kern in (C, P):
        bound = np.array([0, 1, 2, 2, 3, 3, 4], dtype=np.int32)
        choice = np.full(6, -1, dtype=np.int32)
        colors = np.zeros(6, dtype=np.int32)
        out.append(kern.maxcol_search(forb, 6, 3, 5, bound, 4, choice, colors, 0, 0, 10 ** 6)
                   + (colors.tolist(),))
    assert out[0] == out[1]


def test_env_var_forces_python():
    env = dict(os.environ, PACKCOLOR_PURE="1")
    proc = subprocess.run([sys.executable, "-c", "import packcolor; print(packcolor.BACKEND)"],
                          capture_output=True, text=True, env=env)
    assert proc.stdout.strip() == "python"


def test_benchmark_workloads_agree():
    import importlib.util
    from pathlib import Path
    path = Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    for name, make in bench.WORKLOADS:
        if "lb-search" in name:
            continue  # seconds in pure Python
        fn = make()
        assert str(fn(C)) == str(fn(P)), name
