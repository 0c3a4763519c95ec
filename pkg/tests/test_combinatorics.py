import itertools
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from cyclic_cellular.combinatorics import (
    GammaPoset, Order, Permutation, Tableau, act, all_permutations, comp_function, coset_reps, d_of,
    dominance,
    f_count, gamma_dominance, is_row_standard, multipartitions, partition_dominance,
    partitions, place_permute, row_standard_tableaux, shuffles, sizes, standard_tableaux, superstandard,
    tableau_dominates, tableau_from_perm)

import oracles

perms = st.integers(1, 6).flatmap(lambda n: st.permutations(range(n))).map(Permutation)


def same_size_pair(n_max=5):
    return st.integers(1, n_max).flatmap(
        lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n))))


# -- permutations ------------------------------------------------------------------

@given(same_size_pair())
def test_composition_matches_oracle(pq):
    p, q = map(Permutation, pq)
    assert tuple(p * q) == oracles.compose(tuple(p), tuple(q))
    assert tuple(p.inverse()) == oracles.inverse(tuple(p))


@given(perms)
def test_inverse_and_identity(p):
    e = Permutation.identity(len(p))
    assert p * p.inverse() == e
    assert p * e == p


@given(same_size_pair(4), st.data())
def test_place_permute_is_an_action(pq, data):
    p, q = map(Permutation, pq)
    seq = tuple(data.draw(st.lists(st.integers(0, 9), min_size=len(p), max_size=len(p))))
    assert place_permute(p * q, seq) == place_permute(p, place_permute(q, seq))
    # slot p(i) of the result holds seq[i]
    out = place_permute(p, seq)
    assert all(out[p[i]] == seq[i] for i in range(len(p)))


def test_one_line_text():
    p = Permutation.from_one_line([2, 1, 3])
    assert str(p) == "[2,1,3]"
    assert p == Permutation.simple(3, 1)
    assert p.length() == 1


# -- partitions and multipartitions --------------------------------------------------

@pytest.mark.parametrize("n", range(0, 11))
def test_partition_numbers(n):
    got = partitions(n)
    assert len(got) == len(set(got))
    if n <= 7:
        assert set(got) == oracles.partitions_brute(n)
    assert len(got) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42][n]


def test_partitions_reverse_lex():
    assert partitions(3) == [(3,), (2, 1), (1, 1, 1)]
    assert partitions(4) == sorted(partitions(4), reverse=True)


def test_multipartition_examples():
    assert multipartitions(3, 1) == [((3,),), ((2, 1),), ((1, 1, 1),)]
    assert set(multipartitions(1, 2)) == {((1,), ()), ((), (1,))}
    assert len(multipartitions(2, 2)) == 5


@pytest.mark.parametrize("n,r", [(2, 2), (3, 2), (3, 3), (4, 2)])
def test_multipartitions_against_brute_force(n, r):
    brute = set()
    for comp in itertools.product(range(n + 1), repeat=r):
        if sum(comp) == n:
            for parts in itertools.product(*(sorted(oracles.partitions_brute(a)) for a in comp)):
                brute.add(parts)
    got = multipartitions(n, r)
    assert len(got) == len(brute) and set(got) == brute


# -- dominance --------------------------------------------------------------------------

def test_dominance_examples():
    # two incomparable points: ((2), -) dominates ((1), (1)) but not under Gamma-dominance
    two = GammaPoset.antichain(["a", "b"])
    lam, mu = ((2,), ()), ((1,), (1,))
    assert dominance(lam, mu) is Order.ABOVE
    assert gamma_dominance(lam, mu, two) is Order.INCOMPARABLE
    assert dominance(lam, lam) is Order.EQUAL
    assert dominance(((1, 1), ()), ((2,), ())) is Order.BELOW


def test_gamma_dominance_example_with_a_top_element():
    # a above b, c, d which are mutually incomparable
    elems = ["a", "b", "c", "d"]
    mat = [[i == j or i == 0 for j in range(4)] for i in range(4)]
    poset = GammaPoset(elems, mat)
    lam, mu = ((4,), (2,), (1,), (1,)), ((3,), (3,), (2,), ())
    assert gamma_dominance(lam, mu, poset) is Order.ABOVE
    assert dominance(lam, mu) is Order.INCOMPARABLE


def test_dominance_rejects_mismatch():
    with pytest.raises(ValueError):
        dominance(((2,),), ((1,),))
    with pytest.raises(ValueError):
        dominance(((1,),), ((1,), ()))


@pytest.mark.parametrize("n", range(1, 7))
def test_partition_dominance_matches_partial_sums(n):
    for lam, mu in itertools.product(partitions(n), repeat=2):
        ge, le = oracles.dominates(lam, mu), oracles.dominates(mu, lam)
        expected = {(True, True): Order.EQUAL, (True, False): Order.ABOVE,
                    (False, True): Order.BELOW, (False, False): Order.INCOMPARABLE}[(ge, le)]
        assert partition_dominance(lam, mu) is expected


POSETS = [GammaPoset.chain([0, 1]), GammaPoset.antichain([0, 1]), GammaPoset.chain([0, 1, 2]),
          GammaPoset([0, 1, 2], [[True, True, True], [False, True, False], [False, False, True]])]


@pytest.mark.parametrize("poset", POSETS)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_orders_are_partial_orders(poset, n):
    mps = multipartitions(n, len(poset))
    for rel in (dominance, lambda a, b: gamma_dominance(a, b, poset)):
        ge = {(a, b): rel(a, b) in (Order.EQUAL, Order.ABOVE) for a in mps for b in mps}
        for a, b in itertools.product(mps, repeat=2):
            if a != b:
                assert not (ge[a, b] and ge[b, a])
        for a, b, c in itertools.product(mps, repeat=3):
            if ge[a, b] and ge[b, c]:
                assert ge[a, c]


@pytest.mark.parametrize("poset", POSETS)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_same_content_orders_agree(poset, n):
    mps = multipartitions(n, len(poset))
    for a, b in itertools.product(mps, repeat=2):
        if sizes(a) != sizes(b):
            continue
        comp = all(oracles.dominates(x, y) for x, y in zip(a, b))
        plain = dominance(a, b) in (Order.EQUAL, Order.ABOVE)
        gamma = gamma_dominance(a, b, poset) in (Order.EQUAL, Order.ABOVE)
        assert plain == gamma == comp


def test_poset_listing_is_validated():
    with pytest.raises(ValueError):
        GammaPoset(["low", "high"], [[True, False], [True, True]])
    p = GammaPoset.from_relation(["low", "high"], lambda a, b: a == b or a == "high")
    assert p.elements == ["high", "low"]


# -- tableaux -------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 7))
def test_standard_tableaux_count_and_sum_of_squares(n):
    total = 0
    for lam in partitions(n):
        tabs = standard_tableaux((lam,))
        brute = oracles.standard_fillings(lam)
        assert len(tabs) == len(brute) == f_count((lam,))
        assert sorted(tuple(map(tuple, t.rows[0])) for t in tabs) == sorted(tuple(map(tuple, b)) for b in brute)
        total += len(tabs) ** 2
    assert total == factorial(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_multipartition_hook_count_is_multinomial(n):
    for lam in multipartitions(n, 2):
        alpha = sizes(lam)
        expected = comb(n, alpha[0])
        for part in lam:
            expected *= len(oracles.standard_fillings(part)) if part else 1
        assert len(standard_tableaux(lam)) == expected == f_count(lam)


def test_tableaux_are_ordered_by_d():
    tabs = standard_tableaux(((2, 1),))
    ds = [tuple(d_of(t)) for t in tabs]
    assert ds == sorted(ds)


def test_d_of_examples():
    lam = ((2, 1),)
    assert d_of(superstandard(lam)).is_identity()
    t = Tableau([[[1, 3], [2]]])
    assert d_of(t) == Permutation.from_one_line([1, 3, 2])
    brute = oracles.perm_taking(superstandard(lam).rows, t.rows)
    assert tuple(d_of(t)) == brute


@given(st.sampled_from([((2, 1),), ((3, 1),), ((2, 2),), ((1,), (2,)), ((2,), (1, 1))]), st.data())
def test_d_of_round_trip(shape, data):
    n = sum(map(sum, shape))
    p = Permutation(data.draw(st.permutations(range(n))))
    t = act(p, superstandard(shape))
    assert act(d_of(t), superstandard(shape)) == t
    assert tableau_from_perm(shape, p) == t


def test_tableau_dominance():
    s, t = superstandard(((2,),)), superstandard(((1, 1),))
    assert tableau_dominates(s, s)
    assert tableau_dominates(s, t) and not tableau_dominates(t, s)
    with pytest.raises(ValueError):
        tableau_dominates(Tableau([[[2, 1]]]), s)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tableau_dominance_modes_agree_when_components_match(n):
    poset = GammaPoset.chain([0, 1])
    for lam in multipartitions(n, 2):
        tabs = standard_tableaux(lam)
        for s, t in itertools.product(tabs, repeat=2):
            if comp_function(s) == comp_function(t):
                assert tableau_dominates(s, t) == tableau_dominates(s, t, poset)


# -- cosets and shuffles -------------------------------------------------------------

def _min_length_reps(alpha):
    n = sum(alpha)
    group = [p for p in all_permutations(n)
             if all(p[i] in b for b in _blocks(alpha) for i in b)]
    reps = set()
    for w in all_permutations(n):
        coset = [w * h for h in group]
        reps.add(min(coset, key=lambda x: (x.length(), tuple(x))))
    return reps


def _blocks(alpha):
    out, start = [], 0
    for a in alpha:
        out.append(range(start, start + a))
        start += a
    return out


@pytest.mark.parametrize("alpha", [(3,), (1, 1, 1), (2, 1), (1, 2), (2, 2), (2, 1, 1)])
def test_coset_reps_are_minimal(alpha):
    n = sum(alpha)
    reps = coset_reps(alpha, n)
    expected = factorial(n)
    for a in alpha:
        expected //= factorial(a)
    assert len(reps) == expected
    assert set(reps) == _min_length_reps(alpha)
    shape = tuple((a,) for a in alpha)
    assert {d_of(t) for t in row_standard_tableaux(shape)} == set(reps)
    assert all(is_row_standard(t) for t in row_standard_tableaux(shape))


def _is_shuffle(p, k):
    return all(p[i] < p[i + 1] for i in range(k - 1)) and all(p[i] < p[i + 1] for i in range(k, len(p) - 1))


@pytest.mark.parametrize("k,s", [(0, 3), (2, 1), (1, 1), (2, 2), (4, 1), (2, 3)])
def test_shuffles_against_filter(k, s):
    got = shuffles(k, s)
    brute = {p for p in all_permutations(k + s) if _is_shuffle(p, k)}
    assert set(got) == brute and len(got) == comb(k + s, k)
    if k and s:
        assert set(got) == set(coset_reps((k, s)))


def test_trivial_shuffles():
    assert shuffles(0, 4) == [Permutation.identity(4)]
    assert set(shuffles(1, 1)) == {Permutation.identity(2), Permutation.simple(2, 1)}
