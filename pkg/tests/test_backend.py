import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgglue import _backend, _pykernels
from dgglue.exactlin import GF, rank

entries = st.integers(-9, 9)


def sparse_rows():
    return st.integers(1, 6).flatmap(lambda n: st.tuples(
        st.just(n),
        st.lists(st.dictionaries(st.integers(0, n - 1), entries.filter(bool), max_size=n), max_size=7)))


@pytest.mark.skipif(_backend._ext is None, reason="compiled kernels not built")
@given(sparse_rows())
def test_compiled_and_python_ranks_agree(case):
    n, rows = case
    assert _backend._ext.rank_int64([dict(r) for r in rows], n) == _pykernels.rank_int([dict(r) for r in rows], n)
    for p in (2, 3, 101):
        red = [{k: v % p for k, v in r.items() if v % p} for r in rows]
        assert _backend._ext.rank_mod_p([dict(r) for r in red], n, p) == _pykernels.rank_mod_p(red, n, p)


@pytest.mark.skipif(_backend._ext is None, reason="compiled kernels not built")
def test_int64_overflow_falls_back():
    big = 2**62
    rows = [{0: big, 1: 3}, {0: 3, 1: big}]
    assert _backend._ext.rank_int64([dict(r) for r in rows], 2) == -1
    assert rank(rows, 2) == 2 == _pykernels.rank_int(rows, 2)
    huge = [{0: 10**40, 1: 10**40 + 1}, {0: 1, 1: 1}]
    assert rank(huge, 2) == 2


def test_rank_modular_drop():
    rows = [{0: 1, 1: 1}, {0: 1, 1: 3}]
    assert rank(rows, 2) == 2
    assert rank(rows, 2, field=GF(2)) == 1


def test_pure_python_switch():
    env = dict(os.environ, DGGLUE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import dgglue; print(dgglue.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@given(st.lists(st.lists(st.integers(-(2**70), 2**70), min_size=3, max_size=3), min_size=1, max_size=4))
def test_big_entries_match_sympy(M):
    import sympy

    rows = [{j: x for j, x in enumerate(r) if x} for r in M]
    assert rank(rows, 3) == sympy.Matrix(M).rank()


def test_rank_deficient_overflow_uses_exact_path():
    big = 2**63 + 5
    rows = [{0: big, 1: 2 * big}, {0: 3 * big, 1: 6 * big}, {2: big}]
    assert rank(rows, 3) == 2
