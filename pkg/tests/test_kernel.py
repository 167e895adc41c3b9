import random

import pytest
from hypothesis import given, settings, strategies as st

from suspan import _kernel_py
from suspan.kernel import BACKEND

try:
    from suspan import _kernel as _kernel_c
except ImportError:  # extension not built
    _kernel_c = None

needs_ext = pytest.mark.skipif(_kernel_c is None, reason="compiled kernel not built")


def brute(sat: bytes, n: int, ops: bytes) -> list[int]:
    """Enumerate every way of spending tokens on each slot."""
    k = len(ops)

    def ends(i, j):
        if i == k:
            return {j}
        lo, hi = {0: (1, 1), 1: (0, 1), 2: (0, n)}[ops[i]]
        out = set()
        for reps in range(lo, hi + 1):
            if j + reps > n or (reps and not sat[i * n + j + reps - 1]):
                break
            out |= ends(i + 1, j + reps)
        return out

    res = []
    for start in range(n):
        e = [x for x in ends(0, start) if x > start]
        res.append(max(e) if e else -1)
    return res


@st.composite
def problems(draw, max_k=6, max_n=10):
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(1, max_n))
    ops = bytes(draw(st.lists(st.sampled_from([0, 1, 2]), min_size=k, max_size=k)))
    sat = bytes(draw(st.lists(st.sampled_from([0, 1]), min_size=k * n, max_size=k * n)))
    return sat, n, ops


@settings(max_examples=400)
@given(problems())
def test_python_kernel_matches_brute_force(p):
    sat, n, ops = p
    assert list(_kernel_py.longest_ends(sat, n, ops)) == brute(sat, n, ops)


@needs_ext
@settings(max_examples=400)
@given(problems())
def test_compiled_kernel_matches_python(p):
    sat, n, ops = p
    assert list(_kernel_c.longest_ends(sat, n, ops)) == list(_kernel_py.longest_ends(sat, n, ops))


@needs_ext
def test_compiled_kernel_long_patterns():
    # more slots than fit in a machine word take the fallback path
    rng = random.Random(3)
    for k in (62, 63, 64, 70):
        n = 20
        ops = bytes(rng.choice([1, 2]) for _ in range(k - 1)) + b"\x00"
        sat = bytes(rng.random() < 0.8 for _ in range(k * n))
        assert list(_kernel_c.longest_ends(sat, n, ops)) == list(_kernel_py.longest_ends(sat, n, ops))


def test_all_optional_never_matches_empty():
    assert list(_kernel_py.longest_ends(b"\x00\x00\x00", 3, b"\x01")) == [-1, -1, -1]


def test_backend_reported():
    assert BACKEND in ("cython", "python")
