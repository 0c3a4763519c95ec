"""Concrete cell data: symmetric groups, Young subgroups and small fixtures."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .arith import DELTA, ONE, Poly, vec_add
from .combinatorics import (GammaPoset, Order, Permutation, d_of, dominance,
                            is_initial_kind, multipartitions, partition_dominance, partitions,
                            row_stabilizer, sizes, standard_tableaux, young_subgroup)
from .core import CellDatum, CyclicData, TraceFunctional, tensor_cell_datum
from .linalg import determinant, invert_columns


class GroupAmbient:
    """A group algebra QG in which a cell datum is realised.

    ``expansions[i]`` is the i-th cellular basis element as ``{group element: Fraction}``.
    """

    def __init__(self, elements: Sequence, op: Callable, inverse: Callable, identity,
                 expansions: Sequence[Mapping]):
        self.elements = list(elements)
        self.op = op
        self.inverse = inverse
        self.identity = identity
        self.expansions = [dict(e) for e in expansions]
        self.inv = invert_columns(self.expansions, self.elements)

    def to_cell(self, x: Mapping) -> dict:
        acc: dict = {}
        for g, c in x.items():
            if c:
                col = self.inv[g]
                c = c if isinstance(c, Poly) else Poly(c)
                for i, q in col.items():
                    nv = acc.get(i, Poly()) + c * q
                    if nv:
                        acc[i] = nv
                    else:
                        acc.pop(i, None)
        return acc

    def to_group(self, x: Mapping) -> dict:
        acc: dict = {}
        for i, c in x.items():
            vec_add(acc, {g: Poly(q) for g, q in self.expansions[i].items()}, c)
        return acc

    def group_mul(self, x: Mapping, y: Mapping) -> dict:
        acc: dict = {}
        for g, a in x.items():
            for h, b in y.items():
                k = self.op(g, h)
                acc[k] = acc.get(k, 0) + a * b
        return {k: v for k, v in acc.items() if v}

    def identity_coefficient(self, i: int) -> Fraction:
        return Fraction(self.expansions[i].get(self.identity, 0))

    def change_of_basis_determinant(self) -> Fraction:
        pos = {g: k for k, g in enumerate(self.elements)}
        mat = [[Fraction(0)] * len(self.elements) for _ in self.elements]
        for j, col in enumerate(self.expansions):
            for g, q in col.items():
                mat[pos[g]][j] = Fraction(q)
        return determinant(mat)


def _group_datum(name: str, ambient: GroupAmbient, poset: GammaPoset, index_sets: Mapping,
                 labels_order: Sequence, generators: Sequence[tuple[str, Mapping]],
                 cyclic: tuple[Mapping, Mapping] | None, names: Sequence[str] | None = None) -> CellDatum:
    def mul_basis(i, j):
        return ambient.to_cell(ambient.group_mul(ambient.expansions[i], ambient.expansions[j]))

    def star_basis(i):
        return ambient.to_cell({ambient.inverse(g): q for g, q in ambient.expansions[i].items()})

    cyc = None
    if cyclic is not None:
        ys, vs = cyclic
        cyc = CyclicData({g: ambient.to_cell(y) for g, y in ys.items()},
                         {g: [ambient.to_cell(v) for v in vl] for g, vl in vs.items()})
    datum = CellDatum(name, poset, index_sets, unit=ambient.to_cell({ambient.identity: 1}),
                      generators=[(nm, ambient.to_cell(g)) for nm, g in generators],
                      mul_basis=mul_basis, star_basis=star_basis, basis_names=names, cyclic=cyc)
    if list(datum.labels) != list(labels_order):
        raise AssertionError("basis expansion order does not match the datum layout")
    datum.ambient = ambient
    return datum


def _perm_op(p, q):
    return p * q


def _perm_inv(p):
    return p.inverse()


def _multi_shape_datum(name: str, alpha: Sequence[int], poset: GammaPoset, shape_of: Callable) -> CellDatum:
    """Murphy-type datum of Q S_alpha with basis d(s) x_lam d(t)^-1."""
    n = sum(alpha)
    group = young_subgroup(alpha)
    index_sets, labels, expansions = {}, [], []
    ys, vs = {}, {}
    for lam in poset.elements:
        shape = shape_of(lam)
        ts = [t for t in standard_tableaux(shape) if is_initial_kind(t)]
        index_sets[lam] = ts
        stab = row_stabilizer(shape)
        ds = {t: d_of(t) for t in ts}
        for s in ts:
            for t in ts:
                labels.append((lam, s, t))
                dt_inv = ds[t].inverse()
                expansions.append({ds[s] * w * dt_inv: Fraction(1) for w in stab})
        ys[lam] = {w: 1 for w in stab}
        vs[lam] = [{ds[t]: 1} for t in ts]
    ident = Permutation.identity(n)
    ambient = GroupAmbient(group, _perm_op, _perm_inv, ident, expansions)
    gens = []
    for b in _blocks(alpha):
        for i in list(b)[:-1]:
            gens.append((f"s{i + 1}", {Permutation.simple(n, i + 1): 1}))
    names = [f"m{i}" for i in range(len(labels))]
    return _group_datum(name, ambient, poset, index_sets, labels, gens, (ys, vs), names)


def _blocks(alpha):
    out, start = [], 0
    for a in alpha:
        out.append(range(start, start + a))
        start += a
    return out


@lru_cache(maxsize=None)
def murphy_datum(n: int) -> CellDatum:
    """Q S_n with the Murphy basis over partitions ordered by dominance."""
    poset = GammaPoset.from_relation(partitions(n), lambda a, b: partition_dominance(a, b) in (Order.EQUAL, Order.ABOVE))
    return _multi_shape_datum(f"S{n}", (n,), poset, lambda lam: (lam,))


@lru_cache(maxsize=None)
def young_subgroup_datum(alpha: tuple[int, ...]) -> CellDatum:
    """Q S_alpha with the Murphy basis indexed by multipartitions of content alpha."""
    alpha = tuple(alpha)
    elems = [mp for mp in multipartitions(sum(alpha), len(alpha)) if sizes(mp) == alpha]
    poset = GammaPoset.from_relation(elems, lambda a, b: dominance(a, b) in (Order.EQUAL, Order.ABOVE))
    return _multi_shape_datum("S" + "x".join(map(str, alpha)), alpha, poset, lambda lam: lam)


@lru_cache(maxsize=None)
def c2_datum() -> CellDatum:
    """Q C_2 with the idempotent basis e_plus above e_minus and trivial involution."""
    op = lambda a, b: "1" if a == b else "g"
    half = Fraction(1, 2)
    exp_plus, exp_minus = {"1": half, "g": half}, {"1": half, "g": -half}
    ambient = GroupAmbient(["1", "g"], op, lambda a: a, "1", [exp_plus, exp_minus])
    poset = GammaPoset.chain(["+", "-"])
    index_sets = {"+": [1], "-": [1]}
    labels = [("+", 1, 1), ("-", 1, 1)]
    unit = {"1": 1}
    cyclic = ({"+": exp_plus, "-": exp_minus}, {"+": [unit], "-": [unit]})
    return _group_datum("C2", ambient, poset, index_sets, labels, [("g", {"g": 1})], cyclic,
                        ["e_plus", "e_minus"])


@lru_cache(maxsize=None)
def r1_datum() -> CellDatum:
    """The ground ring itself: one level, one basis element."""
    ambient = GroupAmbient(["1"], lambda a, b: "1", lambda a: a, "1", [{"1": Fraction(1)}])
    poset = GammaPoset.chain(["pt"])
    return _group_datum("R1", ambient, poset, {"pt": [1]}, [("pt", 1, 1)], [("1", {"1": 1})],
                        ({"pt": {"1": 1}}, {"pt": [{"1": 1}]}), ["1"])


@lru_cache(maxsize=None)
def patho_datum() -> CellDatum:
    """Five-dimensional abelian algebra, cellular but without cyclic data.

    Levels 1 < 2 with T(1) = {1} and T(2) = {1, 2}; c^1_11 is the unit and every
    other product vanishes.
    """
    poset = GammaPoset.chain([2, 1])
    index_sets = {2: [1, 2], 1: [1]}
    names = ["c2_11", "c2_12", "c2_21", "c2_22", "c1_11"]
    unit_idx = 4

    def mul_basis(i, j):
        if i == unit_idx:
            return {j: ONE}
        if j == unit_idx:
            return {i: ONE}
        return {}

    swap = {0: 0, 1: 2, 2: 1, 3: 3, 4: 4}
    gens = [(nm, {i: ONE}) for i, nm in enumerate(names)]
    return CellDatum("patho", poset, index_sets, unit={unit_idx: ONE}, generators=gens,
                     mul_basis=mul_basis, star_basis=lambda i: {swap[i]: ONE}, basis_names=names)


def group_trace(datum: CellDatum) -> TraceFunctional:
    """tr(1) = d and tr(g) = 0 for every other group element."""
    if hasattr(datum, "factors"):
        values = {}
        for i, comp in enumerate(datum.components):
            q = Fraction(1)
            for d, a in zip(datum.factors, comp):
                q *= d.ambient.identity_coefficient(a)
            if q:
                values[i] = DELTA * q
        return TraceFunctional(datum, values)
    amb = datum.ambient
    if not isinstance(amb, GroupAmbient):
        raise ValueError(f"{datum.name} is not realised as a group algebra")
    values = {i: DELTA * amb.identity_coefficient(i) for i in range(datum.dim)}
    return TraceFunctional(datum, values)


FIXTURES = ("S2", "S3", "S4", "C2", "patho", "R1", "S2xS2")


def fixture(name: str) -> CellDatum:
    if name in ("S1", "S2", "S3", "S4", "S5"):
        return murphy_datum(int(name[1:]))
    if name == "C2":
        return c2_datum()
    if name == "patho":
        return patho_datum()
    if name == "R1":
        return r1_datum()
    if name == "S2xS2":
        return _s2xs2()
    raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")


@lru_cache(maxsize=None)
def _s2xs2() -> CellDatum:
    return tensor_cell_datum([murphy_datum(2), murphy_datum(2)], name="S2xS2")


def fixture_trace(name: str) -> TraceFunctional | None:
    if name == "patho":
        return None
    return group_trace(fixture(name))
