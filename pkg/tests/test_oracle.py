import json

import pytest
from hypothesis import given, settings, strategies as st
from sympy import divisor_sigma

from chabauty.errors import SizeBound
from chabauty.groupdsl import parse
from chabauty.invariants import count_subgroups_pgroup, nA
from chabauty.oracle import (Membership, chabauty_profile, count_cyclic_of_order, count_subgroups_exhaustive,
                             enumerate_bounded_index, enumerate_subgroups_finite, fingerprint, property_harness,
                             stratify, window)
from chabauty.subgroup_calc import are_commensurable, subgroup


@pytest.mark.parametrize("F,n", [("Z/2^2", 5), ("Z/4 + Z/2", 8), ("Z/2", 2), ("0", 1)])
def test_enumeration_examples(F, n):
    assert enumerate_subgroups_finite(parse(F)).count() == n


@pytest.mark.parametrize("p,k", [(2, 5), (3, 4), (5, 3), (7, 2)])
def test_cyclic_chain(p, k):
    assert enumerate_subgroups_finite(parse("Z/%d" % p ** k)).count() == k + 1


def test_enumeration_size_bound():
    with pytest.raises(SizeBound):
        enumerate_subgroups_finite(parse("Z/2^13"))
    with pytest.raises(ValueError):
        enumerate_subgroups_finite(parse("Z"))


def test_cyclic_subgroups_of_top_order():
    for p, m in [(2, 1), (2, 2), (3, 1), (3, 2), (2, 3)]:
        T = enumerate_subgroups_finite(parse("(Z/%d)^2" % p ** m))
        assert count_cyclic_of_order(T, p ** m) == (p + 1) * p ** (m - 1)


def test_bounded_index_examples():
    subs = enumerate_bounded_index(parse("Z^2"), 4, with_keys=True)
    from chabauty.oracle import lattice_index
    assert sum(1 for _, k in subs if lattice_index(2, (), k) == 4) == 7
    Z = enumerate_bounded_index(parse("Z"), 3)
    assert [S.gens[0][0].coords for S in Z] == [(1,), (2,), (3,)]
    assert len(enumerate_bounded_index(parse("Z^2 + Z/2"), 2)) > 0
    with pytest.raises(SizeBound):
        enumerate_bounded_index(parse("Z"), 100)


@pytest.mark.parametrize("N", range(1, 9))
def test_divisor_sum_identity(N):
    # sublattices of Z^2 of index n number sigma_1(n)
    got = enumerate_bounded_index(parse("Z^2"), N, max_index=8, with_keys=True)
    from chabauty.oracle import lattice_index
    counts = {}
    for _, k in got:
        i = lattice_index(2, (), k)
        counts[i] = counts.get(i, 0) + 1
    assert counts == {n: int(divisor_sigma(n)) for n in range(1, N + 1)}


@pytest.mark.parametrize("G,N", [("Z^2 + Z/2", 4), ("Z + Z/4", 6), ("Z + Z/3 + Z/2", 6)])
def test_routes_agree(G, N):
    # enumerate_bounded_index asserts that both routes produce the same set
    assert enumerate_bounded_index(parse(G), N)


def test_hermite_counter_matches_formula():
    for lam, p in [((1, 1), 2), ((2, 1), 2), ((3, 2, 1), 2), ((2, 2), 3), ((1, 1, 1), 5)]:
        assert count_subgroups_exhaustive(lam, p) == count_subgroups_pgroup(lam, p)


def test_fingerprint_restriction():
    S = subgroup("Z^2", [((2, 0), ()), ((0, 3), ())])
    big, small = window("Z^2", 4), window("Z^2", 2)
    assert fingerprint(S, big).restrict(small) == fingerprint(S, small)
    # a plain predicate gives the same bits
    pred = Membership(S).__contains__
    assert fingerprint(pred, small).bits == fingerprint(S, small).bits


def test_stratify():
    assert stratify([b"a", b"b", b"b"]) == [0, None, None]
    assert stratify([b"a", b"b"]) == [0, 0]
    assert stratify([]) == []


def test_profile_of_Z():
    fam = [subgroup("Z", [((n,), ())]) for n in range(1, 51)] + [subgroup("Z")]
    prof = chabauty_profile(fam, [4, 8])
    last = prof.final
    assert all(last[n - 1] == 0 for n in range(1, 9))
    assert last[-1] is None or last[-1] >= 1
    assert json.dumps(prof.to_json())


def test_profile_of_finite_group_is_discrete():
    G = parse("Z/4 + Z/2")
    T = enumerate_subgroups_finite(G)
    fam = [subgroup(G, [(T.elements[i], ()) for i in gens]) for gens in T.generators]
    assert chabauty_profile(fam, [4]).final == [0] * len(fam)


def test_profile_ranks_are_lower_bounds():
    fam = [subgroup("Z^2", [((1, 0), ()), ((0, n), ())]) for n in (1, 2, 3)] + \
          [subgroup("Z^2", [((1, 1), ())]), subgroup("Z^2")]
    from chabauty.subgroup_calc import weight
    prof = chabauty_profile(fam, [1, 2, 4])
    for row in prof.ranks:
        for S, r in zip(fam, row):
            assert r is None or r <= weight(S)


@pytest.mark.parametrize("corpus", ["Z", "Z^2", "Z + Z/2", "cyclic-count:2,1", "cyclic-count:3,2",
                                    "quasi:2,5", "quasi:3,3"])
def test_harness_passes(corpus):
    rep = property_harness(corpus, max_index=4, windows=(1, 2, 4))
    assert rep["pass"], [p for p in rep["properties"] if not p["pass"]]
    assert rep["schema"] == "1"


def test_harness_is_deterministic():
    a = property_harness("Z^2", seed=3, max_index=3, windows=(1, 2))
    b = property_harness("Z^2", seed=3, max_index=3, windows=(1, 2))
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_commensurability_ground_truth_small():
    G = parse("Z + Z/2")
    subs = enumerate_bounded_index(G, 4)
    for S in subs:
        for T in subs:
            assert are_commensurable(S, T)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3).map(lambda l: tuple(sorted(l, reverse=True))),
       st.sampled_from([2, 3]))
@settings(max_examples=25, deadline=None)
def test_formula_vs_enumeration_fuzz(lam, p):
    order = p ** sum(lam)
    if order > 729:
        return
    F = parse(" + ".join("Z/%d" % p ** k for k in lam))
    assert nA(F) == enumerate_subgroups_finite(F).count()
