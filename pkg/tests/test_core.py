import itertools
import random

import pytest

from cyclic_cellular.arith import DELTA, ONE, ZERO, Poly
from cyclic_cellular.combinatorics import Permutation
from cyclic_cellular.core import (AlgElem, CellDatum, Report, abelian_diagnostic, cell_module_action,
                                  cyclic_action_matrix, export_datum, gram_matrix, in_ideal, is_symmetric,
                                  reduce_mod, tensor_cell_datum, verify_cell_datum, verify_cyclic_data)
from cyclic_cellular.fixtures import GroupAmbient, c2_datum, murphy_datum, patho_datum


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), ZERO) for j in range(len(b[0]))]
            for i in range(len(a))]


def kron(a, b):
    return [[a[i][j] * b[k][l] for j in range(len(a[0])) for l in range(len(b[0]))]
            for i in range(len(a)) for k in range(len(b))]


def s2():
    return murphy_datum(2)


def test_s2_layout():
    d = s2()
    assert d.poset.elements == [(2,), (1, 1)]
    assert d.dim == 2
    amb = d.ambient
    e, s = Permutation.identity(2), Permutation.simple(2, 1)
    assert amb.to_group({0: ONE}) == {e: ONE, s: ONE}
    assert amb.to_group({1: ONE}) == {e: ONE}


def test_reduce_mod_examples():
    d = s2()
    s = d.ambient.to_cell({Permutation.simple(2, 1): 1})
    assert s == {0: ONE, 1: -ONE}
    assert reduce_mod(s, d, (1, 1)) == {1: -ONE}
    assert reduce_mod(s, d, (2,)) == s
    assert reduce_mod({0: ONE}, d, (1, 1)) == {}
    assert in_ideal({0: DELTA}, d, (1, 1))
    assert not in_ideal({1: ONE}, d, (1, 1))
    assert in_ideal({1: ONE}, d, (1, 1), strict=False)
    with pytest.raises(KeyError):
        reduce_mod(s, d, (3,))


def test_verify_murphy_three():
    rep = Report()
    assert verify_cell_datum(murphy_datum(3), rep)
    assert rep.violations == []
    assert rep.counts["strict_involution"]


def _corrupted_murphy(n, i, j):
    good = murphy_datum(n)
    amb = good.ambient
    exps = list(amb.expansions)
    exps[i], exps[j] = exps[j], exps[i]
    bad = GroupAmbient(amb.elements, amb.op, amb.inverse, amb.identity, exps)
    gens = [(nm, bad.to_cell(amb.to_group(g))) for nm, g in good.generators]
    return CellDatum("broken", good.poset, good.T, unit=bad.to_cell({amb.identity: 1}), generators=gens,
                     mul_basis=lambda a, b: bad.to_cell(bad.group_mul(bad.expansions[a], bad.expansions[b])),
                     star_basis=lambda a: bad.to_cell({amb.inverse(g): q for g, q in bad.expansions[a].items()}))


def test_swapping_levels_breaks_triangularity():
    d = murphy_datum(3)
    top, bottom = 0, d.dim - 1
    assert d.level_of(top) != d.level_of(bottom)
    rep = Report()
    assert not verify_cell_datum(_corrupted_murphy(3, top, bottom), rep)
    kinds = {v["kind"] for v in rep.violations}
    assert kinds & {"left_triangular", "right_triangular"}


def test_forgetting_the_order_fails():
    d = murphy_datum(2)
    flat = CellDatum("unordered", type(d.poset).antichain(d.poset.elements), d.T, unit=d.unit,
                     generators=d.generators, mul_basis=d.mul_basis, star_basis=d.star_basis)
    assert flat.labels == d.labels
    rep = Report()
    # s * 1 = (1 + s) - 1 reaches the level (2), which is no longer above (1,1)
    assert not verify_cell_datum(flat, rep)
    assert {v["kind"] for v in rep.violations} >= {"left_triangular"}


def test_cell_module_actions_s2():
    d = s2()
    s = d.ambient.to_cell({Permutation.simple(2, 1): 1})
    assert cell_module_action(d, (2,), d.unit) == [[ONE]]
    assert cell_module_action(d, (2,), s) == [[ONE]]
    assert cell_module_action(d, (1, 1), s) == [[-ONE]]


def test_gram_s2_and_patho():
    d = s2()
    assert gram_matrix(d, (2,)) == [[Poly(2)]]
    assert gram_matrix(d, (1, 1)) == [[ONE]]
    assert gram_matrix(patho_datum(), 2, check=True) == [[ZERO, ZERO], [ZERO, ZERO]]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_gram_matrices_symmetric_and_consistent(n):
    d = murphy_datum(n)
    for lam in d.poset.elements:
        g = gram_matrix(d, lam, check=True)
        assert is_symmetric(g)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_murphy_cyclic(n):
    assert verify_cell_datum(murphy_datum(n))
    assert verify_cyclic_data(murphy_datum(n))


def test_patho_has_no_cyclic_data():
    rep = Report()
    assert not verify_cyclic_data(patho_datum(), rep)
    assert rep.violations[0]["kind"] == "no_cyclic_data"


def test_abelian_diagnostics():
    c2 = abelian_diagnostic(c2_datum())
    assert (c2["abelian"], c2["singleton_index_sets"], c2["trivial_involution"], c2["cyclic"]) == (True,) * 4
    p = abelian_diagnostic(patho_datum())
    assert p["abelian"] and not p["singleton_index_sets"] and not p["trivial_involution"] and not p["cyclic"]
    assert p["consistent"]
    assert not abelian_diagnostic(murphy_datum(3))["abelian"]


def test_tensor_square_of_s2():
    t = tensor_cell_datum([s2(), s2()])
    assert t.dim == 4
    assert len(t.poset) == 4
    assert all(len(ts) == 1 for ts in t.T.values())
    top, bottom = t.poset.index(((2,), (2,))), t.poset.index(((1, 1), (1, 1)))
    mid = [t.poset.index(((2,), (1, 1))), t.poset.index(((1, 1), (2,)))]
    assert t.poset.ge(top, bottom) and t.poset.ge(top, mid[0]) and t.poset.ge(mid[1], bottom)
    assert not t.poset.ge(mid[0], mid[1]) and not t.poset.ge(mid[1], mid[0])
    assert verify_cell_datum(t)
    assert verify_cyclic_data(t)


def test_tensor_of_one_factor_is_a_copy():
    d = murphy_datum(3)
    t = tensor_cell_datum([d])
    assert t.dim == d.dim
    for i, j in itertools.product(range(d.dim), repeat=2):
        assert t.mul_basis(i, j) == d.mul_basis(i, j)


def test_tensor_gram_is_kronecker():
    a, b = s2(), murphy_datum(3)
    t = tensor_cell_datum([a, b])
    for ga, gb in itertools.product(a.poset.elements, b.poset.elements):
        assert gram_matrix(t, (ga, gb)) == kron(gram_matrix(a, ga), gram_matrix(b, gb))


@pytest.mark.parametrize("n", [3, 4])
def test_cell_module_action_is_multiplicative(n):
    d = murphy_datum(n)
    rng = random.Random(n)
    for lam in d.poset.elements:
        for _ in range(5):
            x = {rng.randrange(d.dim): Poly(rng.randint(-2, 2)) for _ in range(2)}
            y = {rng.randrange(d.dim): Poly(rng.randint(-2, 2)) for _ in range(2)}
            x, y = {k: v for k, v in x.items() if v}, {k: v for k, v in y.items() if v}
            lhs = cell_module_action(d, lam, d.mul(x, y))
            rhs = matmul(cell_module_action(d, lam, x), cell_module_action(d, lam, y))
            assert lhs == rhs


@pytest.mark.parametrize("name", ["S3", "C2", "S2xS2"])
def test_cyclic_action_reproduces_cell_module(name):
    from cyclic_cellular.fixtures import fixture
    d = fixture(name)
    for lam in d.poset.elements:
        for _, g in d.generators:
            assert cyclic_action_matrix(d, lam, g) == cell_module_action(d, lam, g)


@pytest.mark.parametrize("name", ["S2", "S3", "S4", "C2", "patho", "R1", "S2xS2"])
def test_star_is_an_involution(name):
    from cyclic_cellular.fixtures import fixture
    d = fixture(name)
    for i in range(d.dim):
        assert d.star(d.star({i: ONE})) == {i: ONE}


def test_alg_elem_operators():
    d = s2()
    x, y = AlgElem.basis(d, 0), AlgElem.basis(d, 1)
    assert x * x == AlgElem(d, {0: Poly(2)})
    assert (x + y) - y == x
    assert x.star() == x
    assert 2 * x == x + x


def test_format_and_parse_round_trip():
    d = murphy_datum(3)
    x = {0: Poly({1: 2}), 3: Poly(-1), 5: Poly({0: 1, 2: 1})}
    assert d.parse(d.format(x)) == x


def test_export():
    doc = export_datum(s2(), structure_constants=True)
    assert doc["dim"] == 2
    assert len(doc["levels"]) == 2
    assert doc["products"]
