"""Wreath products A wr S_n, their cellular bases, traces and induced cell modules.

An element of A wr S_n is a sparse dict keyed by monomials ``(labels, perm)``
meaning ``(a_1 (x) ... (x) a_n) perm`` with each ``a_i`` a basis index of A.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Mapping, Sequence

from .arith import ONE, ZERO, Poly, vec_add
from .combinatorics import (GammaPoset, Order, Permutation, act, all_permutations, coset_decompose,
                            coset_reps, d_of, gamma_dominance, multipartitions, place_permute,
                            row_stabilizer, sizes, standard_tableaux)
from .core import CellDatum, CellularityError, CyclicData, TraceFunctional, cell_module_action, tensor_vectors
from .fixtures import young_subgroup_datum
from .linalg import invert_columns


class WreathAlgebra:
    """Arithmetic in A wr S_n for a cell datum A (coordinates in A's basis)."""

    def __init__(self, A: CellDatum, n: int):
        self.A = A
        self.n = n
        self._mono_cache: dict = {}

    def __repr__(self):
        return f"<WreathAlgebra {self.A.name} wr S{self.n}>"

    # -- constructors -----------------------------------------------------------
    def monomials(self) -> list[tuple]:
        perms = all_permutations(self.n)
        return [(labels, p) for labels in itertools.product(range(self.A.dim), repeat=self.n) for p in perms]

    def tensor(self, factors: Sequence[Mapping], perm: Sequence[int] | None = None) -> dict:
        perm = Permutation.identity(self.n) if perm is None else Permutation(perm)
        return {(labels, perm): c for labels, c in tensor_vectors(factors).items()}

    def unit(self) -> dict:
        return self.tensor([self.A.unit] * self.n)

    def perm(self, p: Sequence[int]) -> dict:
        return self.tensor([self.A.unit] * self.n, p)

    def slot(self, a: Mapping, i: int) -> dict:
        """a placed in the 1-based slot i, units elsewhere."""
        return self.tensor([a if k == i - 1 else self.A.unit for k in range(self.n)])

    def generators(self) -> list[tuple[str, dict]]:
        gens = [(f"s{i}", self.perm(Permutation.simple(self.n, i))) for i in range(1, self.n)]
        if self.n >= 1:
            gens += [(f"{self.A.basis_names[k]}@1", self.slot({k: ONE}, 1)) for k in range(self.A.dim)]
        return gens

    # -- arithmetic ---------------------------------------------------------------
    def mul_monomial(self, m1: tuple, m2: tuple) -> dict:
        key = (m1, m2)
        out = self._mono_cache.get(key)
        if out is not None:
            return out
        (a, p), (b, q) = m1, m2
        moved = place_permute(p, b)
        prods = [self.A.mul_basis(x, y) for x, y in zip(a, moved)]
        pq = p * q
        out = {(labels, pq): c for labels, c in tensor_vectors(prods).items()}
        self._mono_cache[key] = out
        return out

    def mul(self, x: Mapping, y: Mapping) -> dict:
        acc: dict = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                vec_add(acc, self.mul_monomial(m1, m2), c1 * c2)
        return acc

    def product(self, *xs: Mapping) -> dict:
        out = self.unit()
        for x in xs:
            out = self.mul(out, x)
        return out

    def star(self, x: Mapping) -> dict:
        """(a p)* = p^-1 a*, rewritten as (place(p^-1, a*)) p^-1."""
        acc: dict = {}
        for (a, p), c in x.items():
            pinv = p.inverse()
            starred = [self.A.star_basis(k) for k in place_permute(pinv, a)]
            for labels, d in tensor_vectors(starred).items():
                vec_add(acc, {(labels, pinv): d}, c)
        return acc

    def trace(self, x: Mapping, tr: TraceFunctional) -> Poly:
        """Product over the cycles of p of tr(b_{p^k i} ... b_{p i} b_i)."""
        total = ZERO
        for (a, p), c in x.items():
            val = ONE
            for orbit in p.cycles():
                cur = {a[orbit[0]]: ONE}
                for j in orbit[1:]:
                    cur = self.A.mul({a[j]: ONE}, cur)
                val = val * tr(cur)
                if not val:
                    break
            total = total + c * val
        return total

    def format(self, x: Mapping) -> str:
        from .core import format_vector
        names = self.A.basis_names
        return format_vector(x, lambda m: "(" + ",".join(names[k] for k in m[0]) + ")" + str(m[1]))


class WreathElem:
    """Operator wrapper around a dict of monomial coordinates."""

    __slots__ = ("alg", "coords")

    def __init__(self, alg: WreathAlgebra, coords: Mapping | None = None):
        self.alg = alg
        self.coords = {k: v for k, v in (coords or {}).items() if v}

    def __add__(self, other):
        return WreathElem(self.alg, vec_add(dict(self.coords), other.coords))

    def __sub__(self, other):
        return WreathElem(self.alg, vec_add(dict(self.coords), other.coords, -1))

    def __mul__(self, other):
        if isinstance(other, WreathElem):
            return WreathElem(self.alg, self.alg.mul(self.coords, other.coords))
        return WreathElem(self.alg, {k: v * other for k, v in self.coords.items()})

    def star(self):
        return WreathElem(self.alg, self.alg.star(self.coords))

    def __eq__(self, other):
        return isinstance(other, WreathElem) and self.coords == other.coords

    def __repr__(self):
        return f"WreathElem({self.alg.format(self.coords)})"


def wreath_mul(x: WreathElem, y: WreathElem) -> WreathElem:
    return x * y


def wreath_star(x: WreathElem) -> WreathElem:
    return x.star()


def wreath_trace(x: WreathElem, tr: TraceFunctional) -> Poly:
    return x.alg.trace(x.coords, tr)


# -- the cellular basis ----------------------------------------------------------

class WreathCellBasis:
    """The basis d(s) v y^alpha x_lam w* d(t)* of A wr S_n and its change of basis."""

    def __init__(self, A: CellDatum, n: int):
        if A.cyclic is None:
            raise CellularityError(f"{A.name} has no cyclic cellular data")
        self.A = A
        self.n = n
        self.alg = WreathAlgebra(A, n)
        gamma = A.poset
        self.gamma = gamma
        r = len(gamma)
        lams = multipartitions(n, r)
        ge = lambda a, b: gamma_dominance(a, b, gamma) in (Order.EQUAL, Order.ABOVE)
        self.poset = GammaPoset.from_relation(lams, ge)
        self.T: dict = {}
        self.y: dict = {}
        self.v: dict = {}
        self.slot_level: dict = {}
        for lam in self.poset.elements:
            alpha = sizes(lam)
            levels = [gamma.elements[k] for k, a in enumerate(alpha) for _ in range(a)]
            self.slot_level[lam] = levels
            vees = list(itertools.product(*(range(len(A.T[g])) for g in levels)))
            tabs = standard_tableaux(lam)
            self.T[lam] = [(t, u) for t in tabs for u in vees]
            y_alpha = self.alg.tensor([A.cyclic.y[g] for g in levels])
            x_lam = {}
            for w in row_stabilizer(lam):
                vec_add(x_lam, self.alg.perm(w), ONE)
            self.y[lam] = self.alg.mul(y_alpha, x_lam)
            self.v[lam] = []
            for t, u in self.T[lam]:
                vpart = self.alg.tensor([A.cyclic.v[g][k] for g, k in zip(levels, u)])
                self.v[lam].append(self.alg.mul(self.alg.perm(d_of(t)), vpart))
        self.labels: list[tuple] = []
        self.elements: list[dict] = []
        for lam in self.poset.elements:
            vs = self.v[lam]
            vy = [self.alg.mul(v, self.y[lam]) for v in vs]
            vstar = [self.alg.star(v) for v in vs]
            for a, s in enumerate(self.T[lam]):
                for b, t in enumerate(self.T[lam]):
                    self.labels.append((lam, s, t))
                    self.elements.append(self.alg.mul(vy[a], vstar[b]))
        self.monomials = self.alg.monomials()
        self.inverse = invert_columns(self.elements, self.monomials)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def to_cell(self, x: Mapping) -> dict:
        acc: dict = {}
        for m, c in x.items():
            for i, q in self.inverse[m].items():
                nv = acc.get(i, ZERO) + c * q
                if nv:
                    acc[i] = nv
                else:
                    acc.pop(i, None)
        return acc

    def to_ambient(self, x: Mapping) -> dict:
        acc: dict = {}
        for i, c in x.items():
            vec_add(acc, self.elements[i], c)
        return acc

    def alpha(self, lam) -> tuple:
        return sizes(lam)


@lru_cache(maxsize=None)
def wreath_cell_basis(A: CellDatum, n: int) -> WreathCellBasis:
    return WreathCellBasis(A, n)


@lru_cache(maxsize=None)
def wreath_as_cell_datum(A: CellDatum, n: int) -> CellDatum:
    wb = wreath_cell_basis(A, n)
    alg = wb.alg

    def mul(x, y):
        return wb.to_cell(alg.mul(wb.to_ambient(x), wb.to_ambient(y)))

    def star(x):
        return wb.to_cell(alg.star(wb.to_ambient(x)))

    cyclic = CyclicData({lam: wb.to_cell(wb.y[lam]) for lam in wb.poset.elements},
                        {lam: [wb.to_cell(v) for v in wb.v[lam]] for lam in wb.poset.elements})
    datum = CellDatum(f"{A.name}wrS{n}", wb.poset, wb.T, unit=wb.to_cell(alg.unit()),
                      generators=[(nm, wb.to_cell(g)) for nm, g in alg.generators()],
                      mul=mul, star=star, cyclic=cyclic, basis_names=[f"w{i}" for i in range(wb.dim)])
    if datum.labels != wb.labels:
        raise AssertionError("wreath basis layout mismatch")
    datum.ambient = wb
    return datum


def wreath_dimension(A: CellDatum, n: int) -> int:
    """sum over lam of |T(lam)|^2, counted without building the basis."""
    from .combinatorics import f_count
    r = len(A.poset)
    total = 0
    for lam in multipartitions(n, r):
        alpha = sizes(lam)
        nv = 1
        for k, a in enumerate(alpha):
            nv *= len(A.T[A.poset.elements[k]]) ** a
        total += (nv * f_count(lam)) ** 2
    return total


# -- induced cell modules ---------------------------------------------------------

class InducedModule:
    """Ind from A wr S_alpha of E^alpha (x) Delta^lam, with the action computed directly.

    Basis vectors are triples (omega, v, s): omega a minimal coset representative
    of S_alpha, v an index tuple for V^alpha, s a standard initial-kind tableau.
    """

    def __init__(self, A: CellDatum, n: int, lam):
        self.A = A
        self.n = n
        self.lam = tuple(tuple(p) for p in lam)
        self.alpha = sizes(self.lam)
        self.levels = [A.poset.elements[k] for k, a in enumerate(self.alpha) for _ in range(a)]
        self.omegas = coset_reps(self.alpha, n)
        self.vees = list(itertools.product(*(range(len(A.T[g])) for g in self.levels)))
        self.young = young_subgroup_datum(self.alpha)
        self.tabs = list(self.young.T[self.lam])
        self.basis = [(w, u, s) for w in self.omegas for u in self.vees for s in self.tabs]
        self.pos = {b: k for k, b in enumerate(self.basis)}
        self._perm_cache: dict = {}
        self._slot_cache: dict = {}

    def __len__(self):
        return len(self.basis)

    def _young_matrix(self, h: Permutation):
        mat = self._perm_cache.get(h)
        if mat is None:
            amb = self.young.ambient
            mat = cell_module_action(self.young, self.lam, amb.to_cell({h: 1}))
            self._perm_cache[h] = mat
        return mat

    def _slot_matrix(self, g, k: int):
        key = (g, k)
        mat = self._slot_cache.get(key)
        if mat is None:
            mat = cell_module_action(self.A, g, {k: ONE})
            self._slot_cache[key] = mat
        return mat

    def apply_perm(self, p: Permutation, vec: Mapping) -> dict:
        out: dict = {}
        tab_pos = {t: k for k, t in enumerate(self.tabs)}
        for (w, u, s), c in vec.items():
            rep, h = coset_decompose(p * w, self.alpha)
            u2 = place_permute(h, u)
            col = tab_pos[s]
            mat = self._young_matrix(h)
            for r, t in enumerate(self.tabs):
                coef = mat[r][col]
                if coef:
                    vec_add(out, {(rep, u2, t): coef}, c)
        return out

    def apply_tensor(self, labels: Sequence[int], vec: Mapping) -> dict:
        out: dict = {}
        for (w, u, s), c in vec.items():
            moved = place_permute(w.inverse(), labels)
            cols = []
            for j, (g, k) in enumerate(zip(self.levels, moved)):
                mat = self._slot_matrix(g, k)
                cols.append({r: mat[r][u[j]] for r in range(len(mat)) if mat[r][u[j]]})
            for u2, coef in tensor_vectors(cols).items():
                vec_add(out, {(w, u2, s): coef}, c)
        return out

    def apply(self, x: Mapping, vec: Mapping) -> dict:
        out: dict = {}
        for (labels, p), c in x.items():
            vec_add(out, self.apply_tensor(labels, self.apply_perm(p, vec)), c)
        return out

    def action_matrix(self, x: Mapping) -> list[list[Poly]]:
        size = len(self.basis)
        mat = [[ZERO] * size for _ in range(size)]
        for j, b in enumerate(self.basis):
            for b2, c in self.apply(x, {b: ONE}).items():
                mat[self.pos[b2]][j] = c
        return mat

    def phi_index(self, b) -> tuple:
        """The T(lam) label (t, u) with t = omega s and u = place(d(s)^-1, v)."""
        w, u, s = b
        return act(w, s), place_permute(d_of(s).inverse(), u)

    def phi_element(self, wb: WreathCellBasis, b) -> dict:
        """omega v y^alpha d(s) x_lam as an element of A wr S_n."""
        w, u, s = b
        alg = wb.alg
        vpart = alg.tensor([self.A.cyclic.v[g][k] for g, k in zip(self.levels, u)])
        y_alpha = alg.tensor([self.A.cyclic.y[g] for g in self.levels])
        x_lam: dict = {}
        for h in row_stabilizer(self.lam):
            vec_add(x_lam, alg.perm(h), ONE)
        return alg.product(alg.perm(w), vpart, y_alpha, alg.perm(d_of(s)), x_lam)


def induced_cell_module(A: CellDatum, n: int, lam) -> InducedModule:
    return InducedModule(A, n, lam)


def check_induced_module(A: CellDatum, n: int, lam, report=None) -> bool:
    """phi is a bijection onto T(lam), matches elements exactly, and intertwines generators."""
    from .core import Report
    report = report if report is not None else Report()
    ind = InducedModule(A, n, lam)
    datum = wreath_as_cell_datum(A, n)
    wb = datum.ambient
    lam = ind.lam
    targets = [ind.phi_index(b) for b in ind.basis]
    tl = datum.T[lam]
    tpos = {t: k for k, t in enumerate(tl)}
    report.check("phi_bijective")
    if sorted(tpos.get(t, -1) for t in targets) != list(range(len(tl))):
        report.fail("phi_bijective", lam=str(lam))
        return False
    perm = [tpos[t] for t in targets]
    for b, k in zip(ind.basis, perm):
        report.check("phi_element")
        expected = wb.alg.mul(wb.v[lam][k], wb.y[lam])
        if ind.phi_element(wb, b) != expected:
            report.fail("phi_element", lam=str(lam), basis=str(b))
    for name, g in wb.alg.generators():
        report.check("intertwines")
        m_ind = ind.action_matrix(g)
        m_cell = cell_module_action(datum, lam, wb.to_cell(g))
        size = len(perm)
        if any(m_ind[i][j] != m_cell[perm[i]][perm[j]] for i in range(size) for j in range(size)):
            report.fail("intertwines", lam=str(lam), generator=name)
    return report.ok
