from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cyclic_cellular.arith import DELTA, ONE, ZERO, ParseError, Poly, poly_sum, vec_add
from cyclic_cellular.linalg import SingularMatrixError, SpanSolver, determinant, invert_columns

from oracles import dense_add, dense_mul, trim

fractions = st.fractions(max_denominator=12).filter(lambda q: abs(q) < 50)
dense = st.lists(fractions, max_size=5)


def to_poly(coeffs):
    return Poly({i: c for i, c in enumerate(coeffs)})


def to_dense(p):
    if not p:
        return []
    return trim([p.coefficient(i) for i in range(p.degree() + 1)])


polys = dense.map(to_poly)


def test_additive_inverse_and_normalisation():
    assert DELTA + (-DELTA) == ZERO
    assert not (DELTA - DELTA)
    assert Poly(Fraction(1, 2)) + Poly(Fraction(1, 2)) == ONE
    assert Poly({3: 0, 1: 2}).terms == {1: Fraction(2)}


def test_small_products():
    assert DELTA * DELTA == Poly({2: 1})
    assert (DELTA + 1) * ZERO == ZERO
    got = (DELTA + 1) * (DELTA - 1)
    assert to_dense(got) == dense_mul([1, 1], [-1, 1])
    assert got == DELTA ** 2 - 1


def test_sum_against_dense_oracle():
    got = (DELTA ** 2 + 1) + DELTA
    assert to_dense(got) == dense_add([1, 0, 1], [0, 1])


@given(dense, dense)
def test_add_mul_match_dense_oracle(a, b):
    assert to_dense(to_poly(a) + to_poly(b)) == dense_add(a, b)
    assert to_dense(to_poly(a) * to_poly(b)) == dense_mul(a, b)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * ONE == a
    assert a * ZERO == ZERO


@given(polys, polys, fractions)
def test_evaluation_is_a_homomorphism(a, b, q):
    assert (a + b).evaluate(q) == a.evaluate(q) + b.evaluate(q)
    assert (a * b).evaluate(q) == a.evaluate(q) * b.evaluate(q)


@given(polys)
def test_normalisation_is_idempotent(a):
    again = Poly(a.terms)
    assert again == a
    assert Poly(again.terms).terms == a.terms
    assert all(c != 0 for c in a.terms.values())
    assert list(a.terms) == sorted(a.terms)


@given(polys)
def test_text_round_trip(a):
    assert Poly.parse(str(a)) == a


@pytest.mark.parametrize("text,expected", [
    ("3/2*d^2 - 1", Poly({2: Fraction(3, 2), 0: -1})),
    ("d", DELTA),
    ("-d^3 + 2*d", Poly({3: -1, 1: 2})),
    ("0", ZERO),
    ("7/3", Poly(Fraction(7, 3))),
])
def test_parse_examples(text, expected):
    assert Poly.parse(text) == expected
    assert str(expected) == text


@pytest.mark.parametrize("bad", ["", "d^", "2**d", "x + 1", "1/0"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ParseError):
        Poly.parse(bad)


def test_poly_sum_and_vectors():
    assert poly_sum([DELTA, DELTA, ONE]) == 2 * DELTA + 1
    acc = {"a": ONE}
    vec_add(acc, {"a": -ONE, "b": DELTA}, 2)
    assert acc == {"a": -ONE, "b": 2 * DELTA}


def test_invert_columns_inverts():
    cols = [{"x": 1, "y": 1}, {"x": 1, "y": -1}]
    inv = invert_columns(cols, ["x", "y"])
    assert inv["x"] == {0: Fraction(1, 2), 1: Fraction(1, 2)}
    assert inv["y"] == {0: Fraction(1, 2), 1: Fraction(-1, 2)}


def test_invert_columns_singular():
    with pytest.raises(SingularMatrixError):
        invert_columns([{"x": 1, "y": 2}, {"x": 2, "y": 4}], ["x", "y"])


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_against_determinant(rows):
    keys = ["a", "b", "c"]
    cols = [{keys[i]: rows[i][j] for i in range(3)} for j in range(3)]
    det = determinant(rows)
    if det == 0:
        with pytest.raises(SingularMatrixError):
            invert_columns(cols, keys)
        return
    inv = invert_columns(cols, keys)
    # expanding each column through the inverse recovers the unit vector
    for j, col in enumerate(cols):
        acc = {}
        for key, c in col.items():
            for i, q in inv[key].items():
                acc[i] = acc.get(i, 0) + c * q
        assert {i: q for i, q in acc.items() if q} == {j: 1}


def test_span_solver():
    vecs = [{"a": ONE, "b": ONE}, {"b": ONE}]
    solver = SpanSolver(vecs)
    assert solver.rank == 2
    assert solver.solve({"a": DELTA, "b": 2 * DELTA}) == [DELTA, DELTA]
    assert solver.solve({"c": ONE}) is None
