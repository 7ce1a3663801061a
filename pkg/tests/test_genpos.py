from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scrollhn import genpos
from scrollhn.genpos import Subspace, codim_in, full_space, li_basis_check, meet, meet_all, span, zero_diagonal_det

seeds = st.integers(0, 2**64 - 1)


def test_span_basics():
    assert span([], 3).dim == 0
    assert span([[1, 2, 3], [2, 4, 6]]).dim == 1
    cfg = genpos.generic_config(4, 4, seed=7)
    assert span(cfg.vectors, 4) == full_space(4)


def test_span_is_canonical():
    a = span([[1, 1, 0], [0, 1, 1]])
    b = span([[1, 2, 1], [1, 0, -1]])
    assert a == b


def test_meet_examples():
    b = span([[1, 0, 2, 0], [0, 1, 0, 3]])
    assert meet(full_space(4), b) == b
    cfg = genpos.generic_config(5, 3, seed=1)
    p12, p13, p23 = cfg.subspace((0, 1)), cfg.subspace((0, 2)), cfg.subspace((1, 2))
    assert meet(p12, p13) == cfg.subspace((0,))
    assert meet_all([p12, p13, p23]).dim == 0


def test_meet_ambient_mismatch():
    with pytest.raises(ValueError):
        meet(full_space(2), full_space(3))


def test_hyperplane_meets_in_v_c2():
    # g = 10: V_(C_2) has dimension 5, spanned by 5 pointing directions
    cfg = genpos.containment_config(10, seed=3)
    u = [cfg.hyperplane(i) for i in range(cfg.ambient_dim)]
    assert meet(u[0], u[1]).dim == 3
    assert meet_all(u[:3]).dim == 2


def test_codim_in():
    a = span([[1, 0, 0, 0], [0, 1, 0, 0]])
    assert codim_in(a, a) == 0
    b = span([[0, 0, 1, 0], [0, 0, 0, 1]])
    assert codim_in(a, b) == 2
    with pytest.raises(ValueError):
        codim_in(a, span([[1, 0, 0, 0]]))


def test_generic_planes_in_dim_four():
    rng = genpos.rng_for(11)
    a = genpos.random_subspace(2, 4, rng)
    b = genpos.random_subspace(2, 4, rng)
    assert codim_in(a, b) == 2


def test_li_basis():
    assert li_basis_check(2) and li_basis_check(5)
    assert zero_diagonal_det(4) == -3
    with pytest.raises(ValueError):
        li_basis_check(1)


@pytest.mark.parametrize("kappa", range(2, 12))
def test_zero_diagonal_det_formula(kappa):
    assert zero_diagonal_det(kappa) == (-1) ** (kappa - 1) * (kappa - 1)


def test_contains():
    a = span([[1, 0, 0], [0, 1, 0]])
    assert [1, 1, 0] in a
    assert [0, 0, 1] not in a
    assert a.contains(Subspace(3, ()))


@pytest.mark.parametrize("d", range(4, 10))
def test_lemma5_modular_matches_exact(d):
    fast = genpos.lemma5_oracle(d, 0xC0FFEE)
    slow = genpos.lemma5_oracle_exact(d, 0xC0FFEE)
    assert fast.ok and slow.ok
    assert fast.meets_checked == slow.meets_checked == 2 ** (d - 1) - 1


def test_lemma5_sampled_large():
    res = genpos.lemma5_oracle(40, 5, max_subsets=300)
    assert res.ok and res.meets_checked == 300


@settings(max_examples=20)
@given(seeds)
def test_seed_determinism(seed):
    a = genpos.generic_config(4, 6, seed)
    b = genpos.generic_config(4, 6, seed)
    assert a == b
    assert genpos.lemma5_oracle(5, seed).to_json() == genpos.lemma5_oracle(5, seed).to_json()
    assert genpos.containment_count(10, 2, seed) == genpos.containment_count(10, 2, seed)


@settings(max_examples=20)
@given(seeds)
def test_generic_configs_are_generic(seed):
    cfg = genpos.generic_config(3, 5, seed)
    assert genpos.is_generic(cfg.vectors, 3)
    assert all(len(v) == 3 and all(abs(x) <= genpos.COORD_BOUND for x in v) for v in cfg.vectors)


@settings(max_examples=20)
@given(seeds, st.sampled_from([8, 10, 12, 15, 20]))
def test_containment_bound(seed, g):
    for a2 in range(1, (g - 2) // 2 + 1):
        res = genpos.containment_count(g, a2, seed)
        assert res.generic_count <= res.bound
        # the extreme placement W = <v_1..v_a2> is caught exactly
        assert res.adversarial_count == res.adversarial_bound


def test_containment_range():
    with pytest.raises(ValueError):
        genpos.containment_count(10, 0, 1)


@settings(max_examples=10)
@given(seeds, st.integers(5, 40))
def test_rank2_configuration(seed, g):
    assert genpos.rank2_check(g, seed).ok


def test_report_json_carries_seed():
    cfg = genpos.generic_config(3, 3, seed=42, stream=(1,))
    assert cfg.to_json()["seed"] == 42
    assert genpos.lemma5_oracle(4, 42).to_json()["seed"] == 42


def test_subspace_rows_are_rref():
    s = span([[2, 4, 6], [1, 1, 1]])
    assert s.basis == ((Fraction(1), Fraction(0), Fraction(-1)), (Fraction(0), Fraction(1), Fraction(2)))
