"""The cellular basis of the A-Brauer algebra D_n(A).

Levels are pairs (s, lam) with n - s even and lam a multipartition of s over
the levels of A; smaller s is higher. A basis element is
``alpha (X Y* (x) m) beta*`` where alpha, beta are (2f, s)-shuffles, X, Y are
labelled (0, 2f) diagrams and m runs over the cellular basis of A wr S_s.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from .arith import ONE, ZERO, vec_add
from .combinatorics import GammaPoset, Permutation, shuffles
from .core import CellDatum, CyclicData, Report, TraceFunctional, reduce_mod
from .diagrams import (BrauerCategory, DiagElem, LabeledDiagram, compose, e_product, factor_diagram,
                       half_diagrams, make_diagram, relabel, star_flip, tensor, x0_and_split)
from .linalg import SpanSolver
from .wreath import wreath_cell_basis


class BrauerCellBasis:
    def __init__(self, A: CellDatum, tr: TraceFunctional | None, n: int):
        self.A = A
        self.n = n
        self.cat = BrauerCategory(A, tr)
        self.wreath = {}
        levels = []
        for s in range(n % 2, n + 1, 2):
            wb = wreath_cell_basis(A, s)
            self.wreath[s] = wb
            levels += [(s, lam) for lam in wb.poset.elements]
        mat = [[_level_ge(self.wreath, a, b) for b in levels] for a in levels]
        self.poset = GammaPoset(levels, mat)
        self.halves = {}
        self.T = {}
        for s, lam in levels:
            f = (n - s) // 2
            if f not in self.halves:
                self.halves[f] = half_diagrams(self.cat, f)
            wb = self.wreath[s]
            self.T[(s, lam)] = [(al, X, tu) for al in shuffles(2 * f, s) for X in self.halves[f] for tu in wb.T[lam]]
        self.labels = []
        for g in levels:
            for a in self.T[g]:
                for b in self.T[g]:
                    self.labels.append((g, a, b))
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self._wreath_index = {s: {lab: i for i, lab in enumerate(wb.labels)} for s, wb in self.wreath.items()}
        self._elements: dict = {}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def element(self, i: int) -> dict:
        """alpha (X Y* (x) m) beta* in labelled diagram coordinates."""
        out = self._elements.get(i)
        if out is not None:
            return out
        (s, lam), (al, X, tu), (be, Y, tw) = self.labels[i]
        cat = self.cat
        f = (self.n - s) // 2
        wb = self.wreath[s]
        m = wb.elements[self._wreath_index[s][(lam, tu, tw)]]
        xy = compose(DiagElem(cat, 0, 2 * f, {X: ONE}), star_flip(DiagElem(cat, 0, 2 * f, {Y: ONE})))
        z = tensor(xy, cat.wreath_embedding(m, s))
        out = relabel(z, be, al).coords
        self._elements[i] = out
        return out

    def to_ambient(self, x: Mapping) -> DiagElem:
        acc: dict = {}
        for i, c in x.items():
            vec_add(acc, self.element(i), c)
        return DiagElem(self.cat, self.n, self.n, acc)

    def cell_coords_of_diagram(self, D: LabeledDiagram) -> dict:
        """Coordinates of one labelled diagram, read off its factorisation."""
        n = self.n
        alpha, beta, X0, X1 = factor_diagram(self.cat, D)
        f2 = X0.k
        s = n - f2
        bottom, top = [], []
        bl, tl = [], []
        for (u, v), a in zip(X0.edges, X0.labels):
            if u >= f2:
                bottom.append((u - f2, v - f2))
                bl.append(a)
            elif v < f2:
                top.append((u, v))
                tl.append(a)
            else:
                raise AssertionError("X0 has a through strand")
        X = make_diagram(0, f2, bottom, bl)
        Y = make_diagram(0, f2, top, tl)
        wb = self.wreath[s]
        mono = self.cat.monomial_of(X1) if s else ((), Permutation(()))
        out = {}
        for wi, q in wb.inverse[mono].items():
            lam, tu, tw = wb.labels[wi]
            out[self.index[((s, lam), (alpha, X, tu), (beta, Y, tw))]] = q
        return out

    def to_cell(self, x: DiagElem | Mapping) -> dict:
        coords = x.coords if isinstance(x, DiagElem) else x
        acc: dict = {}
        for D, c in coords.items():
            for i, q in self.cell_coords_of_diagram(D).items():
                nv = acc.get(i, ZERO) + c * q
                if nv:
                    acc[i] = nv
                else:
                    acc.pop(i, None)
        return acc

    # -- cyclic data -------------------------------------------------------------------
    def y(self, level) -> DiagElem:
        s, lam = level
        f = (self.n - s) // 2
        wb = self.wreath[s]
        return tensor(e_product(self.cat, f), self.cat.wreath_embedding(wb.y[lam], s))

    def v(self, level, t) -> DiagElem:
        s, lam = level
        al, X, tu = t
        f = (self.n - s) // 2
        cat = self.cat
        wb = self.wreath[s]
        pi, a_elem, _ = x0_and_split(cat, f, X)
        left = cat.perm_diagram(pi) * cat.wreath_embedding(a_elem, 2 * f)
        k = wb.T[lam].index(tu)
        right = cat.wreath_embedding(wb.v[lam][k], s)
        z = tensor(left, right)
        return relabel(z, Permutation.identity(self.n), al)


def _level_ge(wreath, a, b) -> bool:
    (s, lam), (s2, mu) = a, b
    if s != s2:
        return s < s2
    p = wreath[s].poset
    return p.ge(p.index(lam), p.index(mu))


@lru_cache(maxsize=None)
def brauer_cell_basis(A: CellDatum, tr: TraceFunctional | None, n: int) -> BrauerCellBasis:
    return BrauerCellBasis(A, tr, n)


@lru_cache(maxsize=None)
def brauer_as_cell_datum(A: CellDatum, tr: TraceFunctional | None, n: int) -> CellDatum:
    bb = brauer_cell_basis(A, tr, n)
    cat = bb.cat

    def mul(x, y):
        return bb.to_cell(compose(bb.to_ambient(x), bb.to_ambient(y)))

    def star(x):
        return bb.to_cell(star_flip(bb.to_ambient(x)))

    cyclic = _LazyCyclic(bb)
    datum = CellDatum(f"D{n}({A.name})", bb.poset, bb.T, unit=bb.to_cell(cat.identity(n)),
                      generators=[(nm, bb.to_cell(g)) for nm, g in cat.generators(n)],
                      mul=mul, star=star, cyclic=cyclic, basis_names=[f"b{i}" for i in range(bb.dim)])
    if datum.labels != bb.labels:
        raise AssertionError("Brauer basis layout mismatch")
    datum.ambient = bb
    return datum


class _LazyCyclic(CyclicData):
    """Cyclic data computed on first use per level."""

    def __init__(self, bb: BrauerCellBasis):
        self._bb = bb
        super().__init__(_LazyMap(lambda g: bb.to_cell(bb.y(g))),
                         _LazyMap(lambda g: [bb.to_cell(bb.v(g, t)) for t in bb.T[g]]))


class _LazyMap(dict):
    def __init__(self, fn):
        super().__init__()
        self._fn = fn

    def __missing__(self, key):
        val = self._fn(key)
        self[key] = val
        return val


def certify_change_of_basis(bb: BrauerCellBasis, report: Report | None = None, sample=None) -> bool:
    """Both compositions of the change of basis are the identity."""
    report = report if report is not None else Report()
    expected = bb.A.dim ** bb.n * _dfact(bb.n)
    report.check("dimension")
    if bb.dim != expected:
        report.fail("dimension", got=bb.dim, expected=expected)
    indices = range(bb.dim) if sample is None else sample
    for i in indices:
        report.check("cell_roundtrip")
        if bb.to_cell(bb.element(i)) != {i: ONE}:
            report.fail("cell_roundtrip", index=i)
    diagrams = bb.cat.all_diagrams(bb.n, bb.n)
    if sample is not None:
        diagrams = [diagrams[i % len(diagrams)] for i in sample]
    for D in diagrams:
        report.check("diagram_roundtrip")
        if bb.to_ambient(bb.cell_coords_of_diagram(D)).coords != {D: ONE}:
            report.fail("diagram_roundtrip", diagram=bb.cat.format_diagram(D))
    return report.ok


def _dfact(n):
    from .combinatorics import double_factorial_odd
    return double_factorial_odd(n)


def cell_chain_check(datum: CellDatum, report: Report | None = None, sample=None) -> bool:
    """Rank filtration and closure of v y under the generators modulo higher levels."""
    report = report if report is not None else Report()
    bb: BrauerCellBasis = datum.ambient
    cat = bb.cat
    gens = cat.generators(bb.n)
    indices = range(datum.dim) if sample is None else sample
    for i in indices:
        s = datum.level_of(i)[0]
        for name, g in gens:
            prod = g * bb.to_ambient({i: ONE})
            for r in range(s):
                low = DiagElem(cat, bb.n, bb.n, {D: c for D, c in prod.coords.items() if D.n_through == r})
                report.check("rank_filtration")
                if any(datum.level_of(j)[0] >= s for j in bb.to_cell(low)):
                    report.fail("rank_filtration", index=i, generator=name)
    for level in datum.poset.elements:
        vy = [bb.v(level, t) * bb.y(level) for t in bb.T[level]]
        if sample is not None and len(vy) > 4:
            vy = vy[:4]
        red = [reduce_mod(bb.to_cell(x), datum, level) for x in vy]
        solver = SpanSolver(red)
        for name, g in gens:
            for k, x in enumerate(vy):
                report.check("vy_closure")
                img = reduce_mod(bb.to_cell(g * x), datum, level)
                if solver.solve(img) is None:
                    full = [reduce_mod(bb.to_cell(bb.v(level, t) * bb.y(level)), datum, level) for t in bb.T[level]]
                    if SpanSolver(full).solve(img) is None:
                        report.fail("vy_closure", level=repr(level), generator=name, row=k)
    return report.ok


def level_sizes(A: CellDatum, n: int) -> list[tuple[tuple, int]]:
    """(level, |T(level)|) for every level, counted without building elements."""
    from math import comb
    from .combinatorics import double_factorial_odd, f_count, multipartitions, sizes
    out = []
    r = len(A.poset)
    for s in range(n % 2, n + 1, 2):
        f = (n - s) // 2
        halves = A.dim ** f * double_factorial_odd(f)
        for lam in multipartitions(s, r):
            nv = 1
            for k, a in enumerate(sizes(lam)):
                nv *= len(A.T[A.poset.elements[k]]) ** a
            out.append(((s, lam), comb(n, 2 * f) * halves * nv * f_count(lam)))
    return out


def abrauer_dimension(A: CellDatum, n: int) -> int:
    return sum(t * t for _, t in level_sizes(A, n))
