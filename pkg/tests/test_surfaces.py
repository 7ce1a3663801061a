import pytest
from hypothesis import given
from hypothesis import strategies as st

from scrollhn.surfaces import (
    SEGRE,
    IntersectionLattice,
    LatticeMismatch,
    adjunction_genus,
    del_pezzo4,
    divisor_from_json,
    dp4_class,
    embedding_degree,
    hirzebruch,
    intersect,
)
from scrollhn.trigonal import trigonal_class


def test_hirzebruch_pairings():
    f1 = hirzebruch(1)
    assert f1.basis_class("E") * f1.basis_class("E") == -1
    f0 = hirzebruch(0)
    assert f0.basis_class("F") * f0.basis_class("F") == 0
    assert f1.K.coords == (-2, -3)


def test_del_pezzo_curve():
    c = dp4_class(6, 2)
    anti = -del_pezzo4().K
    assert c * c == 20
    assert adjunction_genus(c) == 6
    assert embedding_degree(c, anti) == 10
    assert adjunction_genus(dp4_class(3, 1)) == 1


@pytest.mark.parametrize("d", range(1, 8))
def test_sections_are_rational(d):
    assert adjunction_genus(hirzebruch(1).cls(1, d)) == 0


def test_embedding_degrees():
    f0 = hirzebruch(0)
    assert embedding_degree(f0.cls(3, 4), f0.cls(1, 2)) == 10
    f1 = hirzebruch(1)
    assert embedding_degree(f1.cls(0, 1), f1.cls(1, 3)) == 1


def test_non_integral_genus():
    # a deliberately inconsistent canonical class makes C.(C+K) odd
    odd = IntersectionLattice("Odd", ("A",), ((1,),), (0,))
    with pytest.raises(ValueError, match="non-integral genus"):
        adjunction_genus(odd.cls(1))


def test_lattice_mismatch():
    with pytest.raises(LatticeMismatch):
        intersect(hirzebruch(0).cls(1, 0), hirzebruch(1).cls(1, 0))


def test_json_round_trip():
    c = hirzebruch(1).cls(3, 7)
    assert c.to_json() == {"lattice": "Hirzebruch(1)", "coords": [3, 7]}
    assert divisor_from_json(c.to_json()) == c


def test_segre_pairing():
    curve = (6, 4)
    assert SEGRE.degree(SEGRE.hyperplane, curve) == 10
    assert SEGRE.normal_bundle_c1() == (4, 3)
    assert SEGRE.degree(SEGRE.normal_bundle_c1(), curve) == 34


coords = st.tuples(st.integers(-20, 20), st.integers(-20, 20))


@given(st.integers(0, 3), coords, coords, coords, st.integers(-5, 5))
def test_bilinear_symmetric(n, a, b, c, k):
    lat = hirzebruch(n)
    x, y, z = lat.cls(*a), lat.cls(*b), lat.cls(*c)
    assert intersect(x, y) == intersect(y, x)
    assert intersect(x + y, z) == intersect(x, z) + intersect(y, z)
    assert intersect(k * x, y) == k * intersect(x, y)


@given(st.integers(3, 400), st.sampled_from([0, 1]))
def test_trigonal_class_genus_and_square(g, n):
    if (g + 3 * n) % 2:
        with pytest.raises(ValueError):
            trigonal_class(g, n)
        return
    c = trigonal_class(g, n)
    assert adjunction_genus(c) == g
    assert intersect(c, c) == 3 * g + 6
