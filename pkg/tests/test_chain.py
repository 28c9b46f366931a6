from functools import reduce
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from koenig.chain import (
    RingError,
    branch_blocks,
    duality_check,
    full_lattice,
    is_regular,
    local_ring,
    normalization_chain,
    sharp,
    singular_ideal,
)
from koenig.field import QQ, PrimeField
from koenig.fixtures import all_fixtures, get_fixture
from koenig.lattice import FractionalIdeal, LatticeError, lat_quotient

from oracles import semigroup, semigroup_chain


def mono(*ds, b=0):
    return [{(d, b): QQ.one} for d in ds]


def semigroup_ring(gens, field=QQ):
    return local_ring([{(g, 0): field.one} for g in gens], 1, field)


def vals(L):
    return L.valuation_set(0), L.hi


def test_branch_blocks_node_and_full():
    node = get_fixture("A1").ring()
    assert [tuple(b) for b in branch_blocks(node.lattice)] == [(0, 1)]
    full = FractionalIdeal.full(2, 12)
    assert sorted(tuple(b) for b in branch_blocks(full)) == [(0,), (1,)]
    cusp = semigroup_ring([2, 3])
    assert [tuple(b) for b in branch_blocks(cusp.lattice)] == [(0,)]


def test_singular_ideal_cusp():
    O = semigroup_ring([2, 3]).lattice
    si = singular_ideal(O)
    assert not si.regular
    assert vals(si.ideal) == ([], 2)  # {2, 3, 4, ...}
    assert si.ideal.lo == 2


def test_singular_ideal_regular():
    full = FractionalIdeal.full(1, 10)
    si = singular_ideal(full)
    assert si.regular and si.ideal == full
    assert is_regular(full)
    with pytest.raises(LatticeError):
        sharp(full)


def test_sharp_examples():
    assert sharp(semigroup_ring([2, 3]).lattice) == full_lattice(semigroup_ring([2, 3]).lattice)
    node = get_fixture("A1").ring().lattice
    assert sharp(node) == FractionalIdeal.full(2, node.N)
    e6 = semigroup_ring([3, 4]).lattice
    assert vals(sharp(e6)) == ([0], 3)  # k + t^3 k[[t]]


@pytest.mark.parametrize("name", ["A1", "A2", "A4"])
def test_duality_examples(name):
    O = get_fixture(name).ring().lattice
    rep = duality_check(O)
    assert rep["conductor_is_IZ"] and rep["dual_of_IZ_is_sharp"] and rep["ok"]


def test_a4_chain():
    ch = normalization_chain(semigroup_ring([2, 5]))
    assert ch.level == 2
    assert [vals(R) for R in ch.rings] == [([0, 2], 4), ([0], 2), ([], 0)]


def test_regular_input_level_zero():
    ch = normalization_chain(local_ring(mono(1), 1, QQ))
    assert ch.level == 0 and len(ch.rings) == 1


def test_e7_level_three():
    ch = normalization_chain(get_fixture("E7").ring())
    assert ch.level == 3
    # O_3 is a node (still local); only the normalization splits the branches
    assert [len(b) for b in ch.blocks] == [1, 1, 1, 2]
    assert lat_quotient(ch.rings[3], ch.rings[2])[0] >= 1


def test_non_local_input_rejected():
    # (1, 0) is an idempotent: the ring is not local
    gens = [{(0, 0): QQ.one}, {(1, 0): QQ.one}, {(1, 1): QQ.one}]
    with pytest.raises(RingError):
        local_ring(gens, 2, QQ)


def test_generator_outside_normalization_rejected():
    with pytest.raises(RingError):
        local_ring([{(-1, 0): QQ.one}], 1, QQ)


def test_chain_over_prime_field():
    F = PrimeField(5)
    ch = normalization_chain(semigroup_ring([3, 4], F))
    assert ch.level == 2


@pytest.mark.parametrize("fx", all_fixtures(), ids=lambda f: f.name)
def test_fixture_chains(fx):
    ch = normalization_chain(fx.ring())
    assert ch.level == fx.level
    for a, b in zip(ch.rings, ch.rings[1:]):
        assert b.contains_lattice(a) and a != b
    assert ch.rings[-1] == FractionalIdeal.full(fx.branches, ch.rings[0].N)
    for R in ch.rings[:-1]:
        assert duality_check(R)["ok"]
    # block count is non-decreasing and ends at r
    counts = [len(b) for b in ch.blocks]
    assert counts == sorted(counts) and counts[-1] == fx.branches


def test_truncation_stability_of_chain():
    R = get_fixture("E8").ring()
    R2 = get_fixture("E8").ring(truncation=R.truncation + 4)
    a = normalization_chain(R)
    b = normalization_chain(R2)
    assert [x.key()[1:] for x in a.rings] == [x.key()[1:] for x in b.rings]


@st.composite
def semigroup_gens(draw):
    gens = draw(st.lists(st.integers(2, 10), min_size=2, max_size=4, unique=True))
    if reduce(gcd, gens) != 1:
        gens.append(draw(st.sampled_from([3, 5, 7, 11])))
    gens = sorted(set(gens))
    if reduce(gcd, gens) != 1:
        gens.append(1)
    return gens


@settings(max_examples=60, deadline=None)
@given(semigroup_gens())
def test_semigroup_chain_matches_oracle(gens):
    R = semigroup_ring(gens)
    ch = normalization_chain(R)
    oracle = semigroup_chain(semigroup(gens))
    assert ch.level == len(oracle) - 1
    for L, S in zip(ch.rings, oracle):
        assert set(L.valuation_set(0)) == set(x for x in S.finite) and L.hi == S.T
    for R_ in ch.rings[:-1]:
        assert duality_check(R_)["ok"]
