from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from scrollhn.pbundle import (
    X,
    Y,
    BinaryForm,
    GradedMap,
    SplitBundle,
    SplittingError,
    bidiagonal_oracle,
    cokernel_splitting,
    hn_filtration,
    kernel_splitting,
    lemma6_k,
    lemma6_quotient,
    lemma6_restriction,
    monomial_map,
    phi_map,
    quotient_degree_identity,
    rnc_normal_bundle,
    slope,
    valid_lemma6_pairs,
)


def test_split_bundle_basics():
    b = SplitBundle.of((6, 3), (5, 1))
    assert b.twists == (6, 6, 6, 5)
    assert (b.rank, b.degree) == (4, 23)
    assert str(b) == "O(6)^3 + O(5)"
    assert SplitBundle.from_json(b.to_json()) == b
    assert b.dual().twist(1).twists == (-4, -5, -5, -5)
    assert SplitBundle((2,)).h0(-3) == 0 and SplitBundle((2,)).h0(0) == 3


@pytest.mark.parametrize("d, twist", [(2, 4), (3, 5), (5, 7)])
def test_rnc_normal_bundle(d, twist):
    b = rnc_normal_bundle(d)
    assert b == SplitBundle.of((twist, d - 1))
    assert slope(b) == d + 2 and b.is_semistable()


def test_rnc_needs_degree_two():
    with pytest.raises(ValueError):
        rnc_normal_bundle(1)


def test_slopes():
    assert slope(SplitBundle.of((5, 2))) == 5
    assert slope(SplitBundle((2, 3))) == Fraction(5, 2)
    assert slope(SplitBundle.of((7, 3), (6, 1))) == Fraction(27, 4)
    with pytest.raises(ValueError):
        slope(SplitBundle())


def test_hn_filtration_examples():
    assert hn_filtration(SplitBundle((3, 2))) == [(3, 1), (2, 1)]
    assert hn_filtration(SplitBundle.of((4, 3))) == [(4, 3)]
    assert hn_filtration(SplitBundle((5, 5, 1))) == [(5, 2), (1, 1)]


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=12))
def test_hn_filtration_properties(tw):
    hn = hn_filtration(SplitBundle(tuple(tw)))
    slopes = [s for s, _ in hn]
    assert all(a > b for a, b in zip(slopes, slopes[1:]))
    assert sum(m for _, m in hn) == len(tw)


def test_kernel_examples():
    assert kernel_splitting(GradedMap([-4, -4], [-3], [[X, Y]])) == SplitBundle((-5,))
    assert kernel_splitting(GradedMap([0, 0], [0], [[1, 0]])) == SplitBundle((0,))
    assert kernel_splitting(phi_map(9, 2)) == SplitBundle.of((-6, 2))


def test_kernel_refuses_non_surjective():
    with pytest.raises(SplittingError, match="kernel splitting refused"):
        kernel_splitting(GradedMap([-4, -4], [-3], [[X, X]]))


def test_cokernel_examples():
    assert cokernel_splitting(monomial_map(7, 2)) == SplitBundle((5,))
    assert cokernel_splitting(GradedMap([0], [0, 1], [[1], [None]])) == SplitBundle((1,))
    # k = (11 + 6 - 3) / 2 = 7
    assert lemma6_k(11, 3, "odd") == 7
    assert cokernel_splitting(monomial_map(11, 3)) == SplitBundle.of((8, 2))


def test_cokernel_refuses_torsion_and_non_injective():
    with pytest.raises(SplittingError):
        cokernel_splitting(GradedMap([0], [1], [[X]]))  # cokernel is a skyscraper
    with pytest.raises(SplittingError):
        cokernel_splitting(GradedMap([0, 0], [0], [[1, 1]]))


def test_restriction_examples():
    assert lemma6_restriction(7, 2, "odd") == SplitBundle.of((6, 3), (5, 1))
    assert lemma6_restriction(6, 1, "even") == SplitBundle.of((5, 2), (4, 1))
    r = lemma6_restriction(6, 1, "even")
    assert (r.rank, r.degree) == (3, 14)


def test_model_checks():
    with pytest.raises(ValueError):
        lemma6_restriction(8, 1, "odd")
    with pytest.raises(ValueError):
        lemma6_restriction(7, 1, "even")
    with pytest.raises(ValueError):
        lemma6_restriction(7, 4, "odd")


@pytest.mark.parametrize("d", range(1, 12))
def test_quotient_degree_identity(d):
    assert quotient_degree_identity(d)


@pytest.mark.parametrize("g, d", list(valid_lemma6_pairs(range(5, 20, 2))))
def test_lemma6_kernel_and_oracle(g, d):
    k = lemma6_k(g, d, "odd")
    kernel = kernel_splitting(phi_map(g, d))
    assert kernel == SplitBundle.of((-k - 1, g - k - 2))
    assert bidiagonal_oracle(g, d) == kernel
    assert lemma6_quotient(g, d) == kernel.dual()


@pytest.mark.parametrize("g, d", list(valid_lemma6_pairs(range(6, 17, 2), "even")))
def test_lemma6_even_model(g, d):
    k = lemma6_k(g, d, "even")
    assert kernel_splitting(phi_map(g, d, "even")) == SplitBundle.of((-k - 1, g - k - 2))
    r = lemma6_restriction(g, d, "even")
    assert r.rank == g - 3


def test_graded_map_json_round_trip():
    m = monomial_map(9, 2)
    back = GradedMap.from_json(m.to_json())
    assert back.to_json() == m.to_json()
    # first entry is x^2 (three coefficients, dense)
    assert m.to_json()["entries"][0] == [["1", "0", "0"]]


def test_entry_degree_enforced():
    with pytest.raises(ValueError):
        GradedMap([0], [2], [[X]])


forms = st.integers(0, 3).flatmap(
    lambda deg: st.lists(st.integers(-5, 5), min_size=deg + 1, max_size=deg + 1).map(lambda c: BinaryForm(deg, tuple(c)))
)


@st.composite
def row_maps(draw):
    """Random ``O(s_1) + ... + O(s_n) -> O(u)`` with ``n`` in 2..4."""
    u = draw(st.integers(-3, 3))
    n = draw(st.integers(2, 4))
    entries, source = [], []
    for _ in range(n):
        f = draw(forms)
        entries.append(f)
        source.append(u - f.degree)
    return GradedMap(source, [u], [entries])


@given(row_maps())
def test_kernel_hilbert_function_matches(m):
    try:
        k = kernel_splitting(m)
    except SplittingError:
        assume(False)
    assert k.rank == len(m.source) - 1
    assert k.degree == sum(m.source) - sum(m.target)
    for t in range(-8, 12):
        assert k.h0(t) == m.kernel_h0(t)


@given(row_maps())
def test_cokernel_is_dual_of_dual_kernel(m):
    dual = m.dual()
    try:
        k = kernel_splitting(m)
    except SplittingError:
        assume(False)
    assert cokernel_splitting(dual) == k.dual()
