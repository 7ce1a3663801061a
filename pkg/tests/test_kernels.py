"""Both backends of every hot kernel must agree bit for bit."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from scrollhn import _kernels
from scrollhn.linalg import bareiss_rank
from scrollhn.nodal import degeneration

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not importable")


@needs_numba
@pytest.mark.parametrize("g", [5, 6, 7, 9, 10, 17, 30, 51])
def test_enumeration_backends_agree(g):
    caps = degeneration(g).caps
    a = _kernels.enumerate_destabilizers(g, caps, "numba")
    b = _kernels.enumerate_destabilizers(g, caps, "numpy")
    np.testing.assert_array_equal(a, b)


def test_enumeration_guard():
    with pytest.raises(OverflowError):
        _kernels.enumerate_destabilizers(_kernels.MAX_KERNEL_GENUS + 1, (1, 1, 1))


@st.composite
def small_int_matrices(draw):
    n = draw(st.integers(1, 7))
    m = draw(st.integers(1, 7))
    return [draw(st.lists(st.integers(-3, 3), min_size=m, max_size=m)) for _ in range(n)]


@needs_numba
@given(small_int_matrices())
def test_subset_rank_backends_agree_and_match_exact(rows):
    n = len(rows)
    res = np.array([[x % _kernels.MODULUS for x in r] for r in rows], dtype=np.int64)
    masks = np.arange(1, 1 << n, dtype=np.uint64)
    a = _kernels.subset_ranks_mod_p(res, masks, "numba")
    b = _kernels.subset_ranks_mod_p(res, masks, "numpy")
    np.testing.assert_array_equal(a, b)
    for mask, rk in zip(masks.tolist(), a.tolist()):
        sub = [rows[i] for i in range(n) if mask >> i & 1]
        # entries this small never vanish mod p spuriously
        assert rk == bareiss_rank(sub)


def test_backend_env(monkeypatch):
    monkeypatch.setenv("SCROLLHN_BACKEND", "numpy")
    assert _kernels.default_backend() == "numpy"
    monkeypatch.delenv("SCROLLHN_BACKEND")
    monkeypatch.setenv("SCROLLHN_DISABLE_NUMBA", "1")
    assert _kernels.default_backend() == "numpy"


def test_bad_backend():
    with pytest.raises(ValueError):
        _kernels.enumerate_destabilizers(6, (2, 3, 3), "fortran")
