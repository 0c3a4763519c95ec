"""Weakly cellular data, their verification, cell modules and Gram forms.

Elements of a datum are sparse dicts ``{flat basis index: Poly}``. The basis is
laid out level by level in the poset listing, then by ``(s, t)`` in the order of
the index set ``T(gamma)``.
"""

from __future__ import annotations

import itertools
import re
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Sequence

from .arith import ONE, DELTA, ZERO, Poly, ParseError, vec_add, vec_scale
from .combinatorics import GammaPoset
from .linalg import SpanSolver

Vec = dict  # {int: Poly}


class CellularityError(ValueError):
    """A product or reduction is not of the shape the cellular axioms demand."""


@dataclass
class Report:
    """Collects checks and violations from the verifiers."""

    violations: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    limit: int = 50

    def check(self, kind: str, n: int = 1) -> None:
        self.counts[kind] = self.counts.get(kind, 0) + n

    def fail(self, kind: str, **info) -> None:
        key = f"{kind}_failures"
        self.counts[key] = self.counts.get(key, 0) + 1
        if len(self.violations) < self.limit:
            self.violations.append({"kind": kind, **info})

    @property
    def ok(self) -> bool:
        return not any(k.endswith("_failures") for k in self.counts)


@dataclass
class CyclicData:
    """Generators y_gamma and lifts v_s, all as elements of the datum."""

    y: dict  # gamma -> Vec
    v: dict  # gamma -> list[Vec], aligned with T(gamma)


class CellDatum:
    """A finite-dimensional algebra with a weakly cellular basis.

    Either ``mul_basis`` (product of two basis indices) or ``mul`` (product of
    two elements, e.g. computed in an ambient realization) must be supplied;
    likewise ``star_basis`` or ``star``.
    """

    def __init__(self, name: str, poset: GammaPoset, index_sets: Mapping[Hashable, Sequence],
                 *, unit: Vec, generators: Sequence[tuple[str, Vec]],
                 mul_basis: Callable[[int, int], Vec] | None = None,
                 star_basis: Callable[[int], Vec] | None = None,
                 mul: Callable[[Vec, Vec], Vec] | None = None,
                 star: Callable[[Vec], Vec] | None = None,
                 basis_names: Sequence[str] | None = None,
                 cyclic: CyclicData | None = None):
        self.name = name
        self.poset = poset
        self.T = {g: list(index_sets[g]) for g in poset.elements}
        self.labels: list[tuple] = []
        self.level: list[int] = []
        self.row: list[int] = []
        self.col: list[int] = []
        self.offset: dict = {}
        for li, g in enumerate(poset.elements):
            ts = self.T[g]
            self.offset[g] = len(self.labels)
            for a, s in enumerate(ts):
                for b, t in enumerate(ts):
                    self.labels.append((g, s, t))
                    self.level.append(li)
                    self.row.append(a)
                    self.col.append(b)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("basis labels are not distinct")
        self.dim = len(self.labels)
        self.basis_names = list(basis_names) if basis_names else [f"c{i}" for i in range(self.dim)]
        self._name_index = {nm: i for i, nm in enumerate(self.basis_names)}
        if mul_basis is None and mul is None:
            raise ValueError("need mul_basis or mul")
        if star_basis is None and star is None:
            raise ValueError("need star_basis or star")
        self._mul_basis_fn = mul_basis
        self._mul_fn = mul
        self._star_basis_fn = star_basis
        self._star_fn = star
        self._mul_cache: dict = {}
        self._star_cache: dict = {}
        self._lock = threading.Lock()
        self.unit = dict(unit)
        self.generators = [(nm, dict(g)) for nm, g in generators]
        self.cyclic = cyclic
        self.ambient = None  # optional realization object set by constructors

    # -- basic access ---------------------------------------------------------
    def __repr__(self):
        return f"<CellDatum {self.name} dim={self.dim} levels={len(self.poset)}>"

    def flat(self, gamma, s, t) -> int:
        return self.index[(gamma, s, t)]

    def flat_pos(self, gamma, a: int, b: int) -> int:
        """Flat index from positions a, b in T(gamma)."""
        return self.offset[gamma] + a * len(self.T[gamma]) + b

    def level_of(self, i: int):
        return self.poset.elements[self.level[i]]

    def e(self, i: int) -> Vec:
        return {i: ONE}

    def name_of(self, i: int) -> str:
        return self.basis_names[i]

    def index_of_name(self, name: str) -> int:
        return self._name_index[name]

    # -- arithmetic ------------------------------------------------------------
    def mul_basis(self, i: int, j: int) -> Vec:
        key = (i, j)
        out = self._mul_cache.get(key)
        if out is None:
            if self._mul_basis_fn is not None:
                out = self._mul_basis_fn(i, j)
            else:
                out = self._mul_fn({i: ONE}, {j: ONE})
            with self._lock:
                out = self._mul_cache.setdefault(key, out)
        return out

    def mul(self, x: Mapping, y: Mapping) -> Vec:
        if self._mul_fn is not None:
            return self._mul_fn(x, y)
        acc: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                vec_add(acc, self.mul_basis(i, j), a * b)
        return acc

    def star_basis(self, i: int) -> Vec:
        out = self._star_cache.get(i)
        if out is None:
            out = self._star_basis_fn(i) if self._star_basis_fn is not None else self._star_fn({i: ONE})
            with self._lock:
                out = self._star_cache.setdefault(i, out)
        return out

    def star(self, x: Mapping) -> Vec:
        if self._star_fn is not None:
            return self._star_fn(x)
        acc: Vec = {}
        for i, a in x.items():
            vec_add(acc, self.star_basis(i), a)
        return acc

    def product(self, *xs: Mapping) -> Vec:
        out = dict(self.unit)
        for x in xs:
            out = self.mul(out, x)
        return out

    # -- text forms -------------------------------------------------------------
    def format(self, x: Mapping) -> str:
        return format_vector(x, self.basis_names)

    def parse(self, text: str) -> Vec:
        return parse_vector(text, self._name_index, extra={"1": self.unit})


class AlgElem:
    """Thin operator wrapper around a coordinate dict of a CellDatum."""

    __slots__ = ("datum", "coords")

    def __init__(self, datum: CellDatum, coords: Mapping | None = None):
        self.datum = datum
        self.coords = {k: v for k, v in (coords or {}).items() if v}

    @classmethod
    def basis(cls, datum: CellDatum, i: int) -> "AlgElem":
        return cls(datum, {i: ONE})

    def __add__(self, other: "AlgElem"):
        return AlgElem(self.datum, vec_add(dict(self.coords), other.coords))

    def __sub__(self, other: "AlgElem"):
        return AlgElem(self.datum, vec_add(dict(self.coords), other.coords, -1))

    def __neg__(self):
        return AlgElem(self.datum, vec_scale(self.coords, -1))

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            return AlgElem(self.datum, self.datum.mul(self.coords, other.coords))
        return AlgElem(self.datum, vec_scale(self.coords, other))

    def __rmul__(self, other):
        return AlgElem(self.datum, vec_scale(self.coords, other))

    def star(self) -> "AlgElem":
        return AlgElem(self.datum, self.datum.star(self.coords))

    def __eq__(self, other):
        return isinstance(other, AlgElem) and self.datum is other.datum and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __repr__(self):
        return f"AlgElem({self.datum.format(self.coords)})"


# -- reduction ---------------------------------------------------------------

def reduce_mod(x: Mapping, datum: CellDatum, gamma, strict: bool = True) -> Vec:
    """Reduce x modulo the ideal spanned by levels above gamma.

    With ``strict`` the ideal is spanned by levels strictly above gamma; otherwise
    gamma's own level is dropped as well.
    """
    g = datum.poset.index(gamma)
    ge = datum.poset.ge
    out = {}
    for i, c in x.items():
        li = datum.level[i]
        if ge(li, g) and (li != g or not strict):
            continue
        out[i] = c
    return out


def in_ideal(x: Mapping, datum: CellDatum, gamma, strict: bool = True) -> bool:
    return not reduce_mod(x, datum, gamma, strict)


def _sub(x: Mapping, y: Mapping) -> Vec:
    return vec_add(dict(x), y, -1)


# -- verification --------------------------------------------------------------

def _split_level(datum: CellDatum, vec: Mapping, g: int, along_col: bool, fixed: int):
    """Sort a product's terms at reference level g.

    Returns (coefficients by row/col position, offending indices). Terms at
    higher levels are ignored; terms at g must share ``fixed`` in the other
    coordinate.
    """
    coeffs, bad = {}, []
    ge = datum.poset.ge
    for j, c in vec.items():
        lj = datum.level[j]
        if lj == g:
            if along_col:
                if datum.col[j] != fixed:
                    bad.append(j)
                else:
                    coeffs[datum.row[j]] = c
            else:
                if datum.row[j] != fixed:
                    bad.append(j)
                else:
                    coeffs[datum.col[j]] = c
        elif not ge(lj, g):
            bad.append(j)
    return coeffs, bad


def _check_index(datum: CellDatum, i: int, gens, reference: bool):
    g = datum.level[i]
    gamma = datum.poset.elements[g]
    a, b = datum.row[i], datum.col[i]
    events = []  # (kind, ok, info)
    rows_left, rows_right = {}, {}
    ei = {i: ONE}
    for gi, (gname, gen) in enumerate(gens):
        left = datum.mul(gen, ei)
        coeffs, bad = _split_level(datum, left, g, True, b)
        events.append(("left_triangular", not bad, {"generator": gname, "index": i}))
        rows_left[gi] = coeffs
        right = datum.mul(ei, gen)
        coeffs, bad = _split_level(datum, right, g, False, a)
        events.append(("right_triangular", not bad, {"generator": gname, "index": i}))
        rows_right[gi] = coeffs
        if reference:
            ref = datum.flat_pos(gamma, a, 0)
            if ref != i:
                lref, _ = _split_level(datum, datum.mul(gen, {ref: ONE}), g, True, 0)
                events.append(("left_column_independent", lref == rows_left[gi],
                               {"generator": gname, "index": i, "reference": ref}))
            ref = datum.flat_pos(gamma, 0, b)
            if ref != i:
                rref, _ = _split_level(datum, datum.mul({ref: ONE}, gen), g, False, 0)
                events.append(("right_row_independent", rref == rows_right[gi],
                               {"generator": gname, "index": i, "reference": ref}))
    st = datum.star(ei)
    swapped = datum.flat_pos(gamma, b, a)
    diff = _sub(st, {swapped: ONE})
    events.append(("involution_mod_ideal", in_ideal(diff, datum, gamma), {"index": i}))
    events.append(("involution_exact", not diff, {"index": i}))
    events.append(("star_squared", datum.star(st) == ei, {"index": i}))
    events.append(("unit", datum.mul(datum.unit, ei) == ei and datum.mul(ei, datum.unit) == ei, {"index": i}))
    return i, events, rows_left, rows_right


def verify_cell_datum(datum: CellDatum, report: Report | None = None, *, jobs: int = 1,
                      sample: Sequence[int] | None = None) -> bool:
    """Check the weak cellularity axioms on the generators.

    With ``sample`` only those basis indices are checked and column
    independence is tested against the first column of each level. Strict
    cellularity (exact involution) is recorded but does not affect the result.
    """
    report = report if report is not None else Report()
    gens = datum.generators
    indices = list(range(datum.dim)) if sample is None else sorted(set(sample))
    reference = sample is not None
    work = lambda i: _check_index(datum, i, gens, reference)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(work, indices))
    else:
        results = [work(i) for i in indices]
    strict = True
    left_rows: dict = {}
    right_rows: dict = {}
    for i, events, rl, rr in results:
        for kind, ok, info in events:
            if kind == "involution_exact":
                strict = strict and ok
                continue
            report.check(kind)
            if not ok:
                report.fail(kind, **info)
        if not reference:
            g, a, b = datum.level[i], datum.row[i], datum.col[i]
            for gi, coeffs in rl.items():
                prev = left_rows.setdefault((gi, g, a), coeffs)
                report.check("left_column_independent")
                if prev != coeffs:
                    report.fail("left_column_independent", generator=gens[gi][0], index=i)
            for gi, coeffs in rr.items():
                prev = right_rows.setdefault((gi, g, b), coeffs)
                report.check("right_row_independent")
                if prev != coeffs:
                    report.fail("right_row_independent", generator=gens[gi][0], index=i)
    report.counts["strict_involution"] = strict
    return report.ok


def is_strictly_cellular(datum: CellDatum) -> bool:
    for i in range(datum.dim):
        g, s, t = datum.labels[i]
        if datum.star({i: ONE}) != {datum.index[(g, t, s)]: ONE}:
            return False
    return True


# -- cell modules and bilinear forms ---------------------------------------------

def cell_module_action(datum: CellDatum, gamma, a: Mapping, column: int = 0) -> list[list[Poly]]:
    """Matrix of a on the cell module at gamma; column s holds the image of c_s."""
    g = datum.poset.index(gamma)
    size = len(datum.T[gamma])
    mat = [[ZERO] * size for _ in range(size)]
    for s in range(size):
        prod = datum.mul(a, {datum.flat_pos(gamma, s, column): ONE})
        coeffs, bad = _split_level(datum, prod, g, True, column)
        if bad:
            raise CellularityError(f"{datum.name}: product leaves A^gamma or mixes columns at {gamma!r}")
        for v, c in coeffs.items():
            mat[v][s] = c
    return mat


def gram_matrix(datum: CellDatum, gamma, check: bool = False) -> list[list[Poly]]:
    """The bilinear form <c_t, c_u> read from c_{s,t} c_{u,v} mod the ideal above gamma."""
    size = len(datum.T[gamma])
    result = None
    for s0, v0 in (itertools.product(range(size), repeat=2) if check else [(0, 0)]):
        mat = [[ZERO] * size for _ in range(size)]
        target = datum.flat_pos(gamma, s0, v0)
        for t in range(size):
            for u in range(size):
                prod = datum.mul({datum.flat_pos(gamma, s0, t): ONE}, {datum.flat_pos(gamma, u, v0): ONE})
                red = reduce_mod(prod, datum, gamma, strict=True)
                coef = red.pop(target, ZERO)
                if red:
                    raise CellularityError(f"{datum.name}: product not proportional to c_(s,v) at {gamma!r}")
                mat[t][u] = coef
        if result is None:
            result = mat
        elif mat != result:
            raise CellularityError(f"{datum.name}: Gram form depends on (s, v) at {gamma!r}")
    return result


def is_symmetric(mat: Sequence[Sequence[Poly]]) -> bool:
    return all(mat[i][j] == mat[j][i] for i in range(len(mat)) for j in range(len(mat)))


def matrix_rank_at(mat: Sequence[Sequence[Poly]], q) -> int:
    """Rank after specialising d to q."""
    rows = [[c.evaluate(q) for c in r] for r in mat]
    return SpanSolver([{j: x for j, x in enumerate(r) if x} for r in rows]).rank


# -- cyclic data -----------------------------------------------------------------

def verify_cyclic_data(datum: CellDatum, report: Report | None = None, *,
                       sample: Sequence[int] | None = None) -> bool:
    """Check y* = y and v_s y v_t* = c_(s,t) modulo the ideal above each level.

    With ``sample`` only the listed flat indices are checked for the second
    identity.
    """
    report = report if report is not None else Report()
    cyc = datum.cyclic
    if cyc is None:
        report.fail("no_cyclic_data", datum=datum.name)
        return False
    wanted = None if sample is None else set(sample)
    for gamma in datum.poset.elements:
        y = cyc.y[gamma]
        report.check("y_in_ideal")
        if not in_ideal(y, datum, gamma, strict=False):
            report.fail("y_in_ideal", level=repr(gamma))
        report.check("y_star")
        if not in_ideal(_sub(datum.star(y), y), datum, gamma):
            report.fail("y_star", level=repr(gamma))
        vs = cyc.v[gamma]
        if len(vs) != len(datum.T[gamma]):
            report.fail("v_count", level=repr(gamma))
            continue
        vy = [datum.mul(v, y) for v in vs]
        vstar = [datum.star(v) for v in vs]
        for a in range(len(vs)):
            for b in range(len(vs)):
                i = datum.flat_pos(gamma, a, b)
                if wanted is not None and i not in wanted:
                    continue
                report.check("vyv_star")
                diff = _sub(datum.mul(vy[a], vstar[b]), {i: ONE})
                if not in_ideal(diff, datum, gamma):
                    report.fail("vyv_star", index=i)
    return report.ok


def cyclic_action_matrix(datum: CellDatum, gamma, a: Mapping) -> list[list[Poly]]:
    """Action of a on (A y + ideal)/ideal in the basis v_s y, by an exact solve."""
    cyc = datum.cyclic
    if cyc is None:
        raise CellularityError(f"{datum.name} has no cyclic data")
    y = cyc.y[gamma]
    vecs = [reduce_mod(datum.mul(v, y), datum, gamma) for v in cyc.v[gamma]]
    solver = SpanSolver(vecs)
    if solver.rank != len(vecs):
        raise CellularityError(f"v_s y are dependent modulo the ideal at {gamma!r}")
    size = len(vecs)
    mat = [[ZERO] * size for _ in range(size)]
    for s, v in enumerate(cyc.v[gamma]):
        img = reduce_mod(datum.mul(a, datum.mul(v, y)), datum, gamma)
        coeffs = solver.solve(img)
        if coeffs is None:
            raise CellularityError(f"a v_s y leaves the span of the v_u y at {gamma!r}")
        for u, c in enumerate(coeffs):
            mat[u][s] = c
    return mat


def abelian_diagnostic(datum: CellDatum) -> dict:
    """For an abelian datum, singleton index sets, trivial star and cyclicity coincide."""
    abelian = all(datum.mul_basis(i, j) == datum.mul_basis(j, i)
                  for i in range(datum.dim) for j in range(i + 1, datum.dim))
    singleton = all(len(ts) == 1 for ts in datum.T.values())
    trivial = all(datum.star({i: ONE}) == {i: ONE} for i in range(datum.dim))
    cyclic = datum.cyclic is not None and verify_cyclic_data(datum, Report())
    out = {"abelian": abelian, "singleton_index_sets": singleton, "trivial_involution": trivial,
           "cyclic": cyclic}
    out["consistent"] = (not abelian) or (singleton == trivial == cyclic)
    return out


# -- tensor products ----------------------------------------------------------------

def product_poset(posets: Sequence[GammaPoset]) -> GammaPoset:
    elems = list(itertools.product(*(p.elements for p in posets)))
    idx = list(itertools.product(*(range(len(p)) for p in posets)))
    mat = [[all(p.ge(x, y) for p, x, y in zip(posets, a, b)) for b in idx] for a in idx]
    return GammaPoset(elems, mat)


def tensor_vectors(vecs: Sequence[Mapping]) -> dict:
    """Multilinear expansion of a simple tensor; keys become tuples."""
    acc = {(): ONE}
    for v in vecs:
        nxt = {}
        for key, c in acc.items():
            for k, d in v.items():
                prod = c * d
                if prod:
                    nxt[key + (k,)] = prod
        acc = nxt
    return acc


def tensor_cell_datum(data: Sequence[CellDatum], name: str | None = None) -> CellDatum:
    """Tensor product of cell data with the product order on levels."""
    data = list(data)
    poset = product_poset([d.poset for d in data])
    index_sets = {g: list(itertools.product(*(d.T[c] for d, c in zip(data, g)))) for g in poset.elements}
    labels = []
    for g in poset.elements:
        for s in index_sets[g]:
            for t in index_sets[g]:
                labels.append((g, s, t))
    comps = [tuple(d.index[(c, a, b)] for d, c, a, b in zip(data, g, s, t)) for g, s, t in labels]
    flat_of = {c: i for i, c in enumerate(comps)}

    def lift(tensor: Mapping) -> Vec:
        return {flat_of[k]: c for k, c in tensor.items()}

    def mul_basis(i, j):
        return lift(tensor_vectors([d.mul_basis(a, b) for d, a, b in zip(data, comps[i], comps[j])]))

    def star_basis(i):
        return lift(tensor_vectors([d.star_basis(a) for d, a in zip(data, comps[i])]))

    def embed(slot: int, x: Mapping) -> Vec:
        return lift(tensor_vectors([x if k == slot else d.unit for k, d in enumerate(data)]))

    unit = lift(tensor_vectors([d.unit for d in data]))
    gens = []
    for k, d in enumerate(data):
        for gname, gvec in d.generators:
            gens.append((f"{gname}@{k + 1}", embed(k, gvec)))
    names = ["|".join(d.basis_names[a] for d, a in zip(data, c)) for c in comps]
    cyclic = None
    if all(d.cyclic is not None for d in data):
        y = {g: lift(tensor_vectors([d.cyclic.y[c] for d, c in zip(data, g)])) for g in poset.elements}
        v = {}
        for g in poset.elements:
            lists = [d.cyclic.v[c] for d, c in zip(data, g)]
            v[g] = [lift(tensor_vectors(combo)) for combo in itertools.product(*lists)]
        cyclic = CyclicData(y, v)
    datum = CellDatum(name or " (x) ".join(d.name for d in data), poset, index_sets, unit=unit,
                      generators=gens, mul_basis=mul_basis, star_basis=star_basis,
                      basis_names=names, cyclic=cyclic)
    datum.components = comps
    datum.factors = data
    return datum


# -- traces ----------------------------------------------------------------------

class TraceFunctional:
    """A linear functional given by its values on the basis."""

    def __init__(self, datum: CellDatum, values: Mapping[int, Poly]):
        self.datum = datum
        self.values = {i: v for i, v in values.items() if v}

    def __call__(self, x: Mapping) -> Poly:
        out = ZERO
        for i, c in x.items():
            v = self.values.get(i)
            if v:
                out = out + c * v
        return out

    def verify(self, report: Report | None = None) -> bool:
        report = report if report is not None else Report()
        d = self.datum
        for i in range(d.dim):
            report.check("trace_star")
            if self(d.star({i: ONE})) != self({i: ONE}):
                report.fail("trace_star", index=i)
            for j in range(i + 1, d.dim):
                report.check("trace_symmetric")
                if self(d.mul_basis(i, j)) != self(d.mul_basis(j, i)):
                    report.fail("trace_symmetric", pair=[i, j])
        return report.ok

    def of_unit(self) -> Poly:
        return self(self.datum.unit)


# -- export -------------------------------------------------------------------------

def export_datum(datum: CellDatum, structure_constants: bool = False) -> dict:
    """Structured, JSON-ready description of the datum."""
    doc = {
        "name": datum.name,
        "dim": datum.dim,
        "levels": [
            {"gamma": _jsonable(g), "index_set": [_jsonable(t) for t in datum.T[g]],
             "above": [_jsonable(h) for j, h in enumerate(datum.poset.elements)
                       if datum.poset.gt(j, datum.poset.index(g))]}
            for g in datum.poset.elements
        ],
        "basis": [{"index": i, "name": datum.basis_names[i], "level": _jsonable(g),
                   "s": _jsonable(s), "t": _jsonable(t)}
                  for i, (g, s, t) in enumerate(datum.labels)],
        "generators": [{"name": nm, "value": datum.format(v)} for nm, v in datum.generators],
        "cyclic": datum.cyclic is not None,
    }
    if structure_constants:
        doc["products"] = [{"i": i, "j": j, "value": datum.format(datum.mul_basis(i, j))}
                           for i in range(datum.dim) for j in range(datum.dim)]
        doc["star"] = [{"i": i, "value": datum.format(datum.star_basis(i))} for i in range(datum.dim)]
    return doc


def _jsonable(x):
    if hasattr(x, "to_list"):
        return x.to_list()
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    if isinstance(x, Poly):
        return str(x)
    return x


# -- element text ---------------------------------------------------------------------

def format_coefficient(c: Poly) -> tuple[str, str]:
    """Sign and magnitude text of a coefficient for use in a sum."""
    if c.is_constant() or len(c.terms) == 1:
        s = str(c)
        if s.startswith("-"):
            return "-", s[1:]
        return "+", s
    return "+", f"({c})"


def format_vector(x: Mapping, names: Sequence[str] | Callable[[object], str]) -> str:
    name = names if callable(names) else names.__getitem__
    if not x:
        return "0"
    out = ""
    for k in sorted(x, key=_sort_key):
        sign, mag = format_coefficient(x[k])
        body = name(k) if mag == "1" else f"{mag}*{name(k)}"
        if not out:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out


def _sort_key(k):
    return (0, k) if isinstance(k, int) else (1, repr(k))


def split_terms(text: str) -> list[tuple[int, str]]:
    """Split a sum on top-level '+'/'-' surrounded by spaces (or leading '-')."""
    terms, depth, cur, sign = [], 0, "", 1
    text = text.strip()
    if text.startswith("-"):
        sign, text = -1, text[1:].lstrip()
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if depth == 0 and ch in "+-" and i > 0 and text[i - 1] == " " and i + 1 < len(text) and text[i + 1] == " ":
            terms.append((sign, cur.strip()))
            sign = -1 if ch == "-" else 1
            cur = ""
            i += 1
            continue
        cur += ch
        i += 1
    if cur.strip():
        terms.append((sign, cur.strip()))
    return terms


_COEF_RE = re.compile(r"^(\((?P<poly>[^()]*)\)|(?P<simple>[0-9/]*\*?d(?:\^\d+)?|\d+(?:/\d+)?))\s*\*\s*(?P<rest>.+)$")


def split_coefficient(term: str) -> tuple[Poly, str]:
    m = _COEF_RE.match(term)
    if not m:
        return ONE, term.strip()
    text = m.group("poly") if m.group("poly") is not None else m.group("simple")
    return Poly.parse(text), m.group("rest").strip()


def parse_vector(text: str, names: Mapping[str, int], extra: Mapping[str, Mapping] | None = None) -> Vec:
    out: Vec = {}
    if text.strip() == "0":
        return out
    for sign, term in split_terms(text):
        coef, name = split_coefficient(term)
        coef = coef * sign
        if name in names:
            vec_add(out, {names[name]: ONE}, coef)
        elif extra and name in extra:
            vec_add(out, extra[name], coef)
        else:
            raise ParseError(f"unknown basis element {name!r}")
    return out


__all__ = [
    "AlgElem", "CellDatum", "CellularityError", "CyclicData", "Report", "TraceFunctional",
    "abelian_diagnostic", "cell_module_action", "cyclic_action_matrix", "export_datum",
    "gram_matrix", "in_ideal", "is_strictly_cellular", "reduce_mod", "tensor_cell_datum",
    "tensor_vectors", "verify_cell_datum", "verify_cyclic_data", "DELTA",
]
