from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scrollhn import genus6
from scrollhn.genpos import rng_for
from scrollhn.linalg import bareiss_rank
from scrollhn.genus6 import SEGRE_GENERATORS, QuadricForm, segre_point, singular_locus_dim

small = st.integers(-30, 30)


def test_substitution_matrix_shape():
    m = genus6.substitution_matrix()
    assert len(m) == 21 and all(len(r) == 18 for r in m)


def test_quadrics_through_segre():
    basis = genus6.quadrics_through_segre()
    assert len(basis) == 3
    assert all(genus6.in_segre_span(q) for q in basis)
    assert all(singular_locus_dim(q) == (4, 1) for q in basis)


@given(small, small, small, small, small)
def test_generators_vanish_on_parametrization(s, t, x, y, z):
    p = segre_point(s, t, x, y, z)
    assert all(q(p) == 0 for q in SEGRE_GENERATORS)


def test_quadric_outside_span_pulls_back_nonzero():
    q = QuadricForm.from_terms((1, 0, 0), (3, 1, 4), (-2, 2, 5))
    assert not genus6.in_segre_span(q)
    rng = rng_for(3)
    point = segre_point(*(int(v) for v in rng.integers(-100, 100, size=5)))
    assert q(point) != 0


def test_singular_locus_examples():
    assert singular_locus_dim(SEGRE_GENERATORS[0]) == (4, 1)
    smooth = QuadricForm.from_terms(*((1, i, i) for i in range(6)))
    assert singular_locus_dim(smooth) == (6, -1)
    assert singular_locus_dim(QuadricForm.from_terms((1, 0, 0))) == (1, 4)
    with pytest.raises(ValueError):
        singular_locus_dim(QuadricForm.from_coefficients([0] * 21))


def test_generators_distinct_and_independent():
    assert len({q.matrix for q in SEGRE_GENERATORS}) == 3
    assert bareiss_rank([q.coefficients() for q in SEGRE_GENERATORS]) == 3


def test_span_members_have_rank_four():
    ranks = genus6.random_span_ranks(120, seed=0xC0FFEE)
    assert len(ranks) == 120 and set(ranks) == {4}


def test_quadric_symmetry_enforced():
    with pytest.raises(ValueError):
        QuadricForm(tuple(tuple(Fraction(int(j > i)) for j in range(6)) for i in range(6)))


def test_coefficients_round_trip():
    q = QuadricForm.from_terms((2, 0, 3), (-5, 4, 4))
    assert QuadricForm.from_coefficients(q.coefficients()) == q


def test_slope_table():
    t = genus6.genus6_slopes()
    r = t.rows
    assert r["N_C/S"].slope == 20
    assert r["N_C/P5"].slope == Fraction(35, 2)
    assert r["N_C/Q"].slope == 18
    assert r["N_S/Q|C"].slope == 16
    assert r["N_Q/P5|C"].slope == 17
    assert r["N_Q/P5|C"].degree == r["N_Q/Y|C(s1+s2)"].degree + r["O_C(2-s1-s2)"].degree == 34
    assert (r["O_C(2-s1-s2)"].degree, r["N_Q/Y|C(s1+s2)"].degree) == (18, 16)
    assert t.three_step_slopes == [20, 16, 17] and not t.three_step_decreasing
    assert t.hn_slopes == (20, Fraction(50, 3))
    assert t.brill_noether == 0
    assert t.elliptic_quintic_slope == Fraction(25, 3)
    assert (t.genus, t.degree) == (6, 10)


def test_hn_genus6():
    rep = genus6.hn_genus6()
    assert rep.slopes == [20, Fraction(50, 3)]
    assert rep.mu_N == Fraction(35, 2) and rep.is_decreasing
    assert rep.slopes[0] > rep.mu_N > rep.slopes[1]
