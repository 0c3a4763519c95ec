"""A-labelled Brauer diagrams: composition, involution, tensor, closure and trace.

Vertices of a (k, l) diagram are numbered ``0..k-1`` along the top and
``k..k+l-1`` along the bottom, which is also the order used for orientation:
each edge is stored as ``(u, v)`` with ``u < v`` and read from u to v. A label
read against the stored orientation is replaced by its image under the
involution of A.

Composition ``compose(x, y)`` stacks y on top of x, so ``compose`` of
permutation diagrams agrees with composition of permutations. Labels met along
a strand multiply right to left; closed loops evaluate through the trace.
"""

from __future__ import annotations

import itertools
import re
from typing import Mapping, NamedTuple, Sequence

from .arith import ONE, ZERO, Poly, ParseError, vec_add
from .combinatorics import Permutation, iter_matchings, place_permute
from .core import CellDatum, TraceFunctional, split_coefficient, split_terms, tensor_vectors


class LabeledDiagram(NamedTuple):
    k: int
    l: int
    edges: tuple  # ((u, v), ...) with u < v, sorted by u
    labels: tuple  # basis indices of A, aligned with edges

    @property
    def n_through(self) -> int:
        return sum(1 for u, v in self.edges if u < self.k <= v)


def make_diagram(k: int, l: int, pairs: Sequence[tuple[int, int]], labels: Sequence[int]) -> LabeledDiagram:
    """Canonical diagram from pairs in any order; labels follow their pairs."""
    items = sorted(((min(u, v), max(u, v)), a) for (u, v), a in zip(pairs, labels))
    verts = sorted(x for e, _ in items for x in e)
    if verts != list(range(k + l)):
        raise ValueError("pairs do not form a perfect matching of the vertices")
    return LabeledDiagram(k, l, tuple(e for e, _ in items), tuple(a for _, a in items))


class BrauerCategory:
    """Diagram calculus over a cell datum A with a trace."""

    def __init__(self, A: CellDatum, tr: TraceFunctional | None):
        self.A = A
        self.tr = tr
        self._compose_cache: dict = {}
        self._close_cache: dict = {}

    # -- label arithmetic -----------------------------------------------------------
    def _label_product(self, seq: Sequence[tuple[int | None, bool]]) -> dict:
        cur = None
        for a, starred in seq:
            if a is None:
                continue
            x = self.A.star_basis(a) if starred else {a: ONE}
            cur = x if cur is None else self.A.mul(x, cur)
        return dict(self.A.unit) if cur is None else cur

    def _trace_value(self, vec: Mapping) -> Poly:
        if self.tr is None:
            raise ValueError(f"{self.A.name} has no trace; closed loops cannot be evaluated")
        return self.tr(vec)

    def _walk(self, pieces, outer: Mapping, k: int, l: int) -> dict:
        """Trace strands through pieces ``(u, v, label)``; outer maps vertices to result ids."""
        adj: dict = {}
        for idx, (u, v, _) in enumerate(pieces):
            adj.setdefault(u, []).append(idx)
            adj.setdefault(v, []).append(idx)
        used = [False] * len(pieces)
        strands = []
        done = set()

        def follow(start, idx):
            cur, seq = start, []
            while True:
                used[idx] = True
                u, v, a = pieces[idx]
                if cur == u:
                    seq.append((a, False))
                    cur = v
                else:
                    seq.append((a, True))
                    cur = u
                if cur in outer or cur == start:
                    return cur, seq
                idx = next(j for j in adj[cur] if not used[j])

        for ov in sorted(outer, key=outer.get):
            if ov in done:
                continue
            end, seq = follow(ov, adj[ov][0])
            done.add(ov)
            done.add(end)
            strands.append(((outer[ov], outer[end]), self._label_product(seq)))
        scalar = ONE
        for idx in range(len(pieces)):
            if not used[idx]:
                start = pieces[idx][0]
                _, seq = follow(start, idx)
                scalar = scalar * self._trace_value(self._label_product(seq))
                if not scalar:
                    return {}
        strands.sort(key=lambda s: s[0])
        edges = tuple(e for e, _ in strands)
        out = {}
        for labels, c in tensor_vectors([vec for _, vec in strands]).items():
            out[LabeledDiagram(k, l, edges, labels)] = c * scalar
        return out

    # -- basis operations ------------------------------------------------------------
    def compose_basis(self, X: LabeledDiagram, Y: LabeledDiagram) -> dict:
        """X after Y: Y in Hom(k, l) stacked above X in Hom(l, m)."""
        key = (X, Y)
        out = self._compose_cache.get(key)
        if out is not None:
            return out
        if Y.l != X.k:
            raise ValueError(f"cannot compose ({X.k},{X.l}) after ({Y.k},{Y.l})")
        k, mid, m = Y.k, Y.l, X.l
        yv = lambda v: ("t", v) if v < k else ("m", v - k)
        xv = lambda v: ("m", v) if v < mid else ("b", v - mid)
        pieces = [(yv(u), yv(v), a) for (u, v), a in zip(Y.edges, Y.labels)]
        pieces += [(xv(u), xv(v), a) for (u, v), a in zip(X.edges, X.labels)]
        outer = {("t", i): i for i in range(k)}
        outer.update({("b", j): k + j for j in range(m)})
        out = self._walk(pieces, outer, k, m)
        self._compose_cache[key] = out
        return out

    def star_basis(self, X: LabeledDiagram) -> dict:
        """Reflect top and bottom; labels of edges whose orientation flips are starred."""
        k, l = X.k, X.l
        f = lambda v: l + v if v < k else v - k
        return self._remap(l, k, X, f)

    def _remap(self, k: int, l: int, X: LabeledDiagram, f) -> dict:
        edges, vecs = [], []
        for (u, v), a in zip(X.edges, X.labels):
            u2, v2 = f(u), f(v)
            if u2 < v2:
                edges.append((u2, v2))
                vecs.append({a: ONE})
            else:
                edges.append((v2, u2))
                vecs.append(self.A.star_basis(a))
        order = sorted(range(len(edges)), key=lambda i: edges[i])
        edges = tuple(edges[i] for i in order)
        vecs = [vecs[i] for i in order]
        return {LabeledDiagram(k, l, edges, labels): c for labels, c in tensor_vectors(vecs).items()}

    def relabel_basis(self, X: LabeledDiagram, top: Sequence[int], bottom: Sequence[int]) -> dict:
        """Move top vertex i to top[i] and bottom vertex j to bottom[j]."""
        k = X.k
        f = lambda v: top[v] if v < k else k + bottom[v - k]
        return self._remap(X.k, X.l, X, f)

    def tensor_basis(self, X: LabeledDiagram, Y: LabeledDiagram) -> LabeledDiagram:
        """Side by side, X on the left."""
        k, l = X.k + Y.k, X.l + Y.l
        fx = lambda v: v if v < X.k else k + (v - X.k)
        fy = lambda v: X.k + v if v < Y.k else k + X.l + (v - Y.k)
        pairs = [(fx(u), fx(v)) for u, v in X.edges] + [(fy(u), fy(v)) for u, v in Y.edges]
        return make_diagram(k, l, pairs, list(X.labels) + list(Y.labels))

    def close_basis(self, X: LabeledDiagram) -> dict:
        """Join top n to bottom n, giving an (n-1, n-1) diagram."""
        out = self._close_cache.get(X)
        if out is not None:
            return out
        n = X.k
        if X.l != n or n == 0:
            raise ValueError("closure needs an (n, n) diagram with n >= 1")

        def vname(v):
            if v < n:
                return ("c", 0) if v == n - 1 else ("t", v)
            j = v - n
            return ("c", 1) if j == n - 1 else ("b", j)

        pieces = [(vname(u), vname(v), a) for (u, v), a in zip(X.edges, X.labels)]
        pieces.append((("c", 0), ("c", 1), None))
        outer = {("t", i): i for i in range(n - 1)}
        outer.update({("b", j): (n - 1) + j for j in range(n - 1)})
        out = self._walk(pieces, outer, n - 1, n - 1)
        self._close_cache[X] = out
        return out

    # -- elements -------------------------------------------------------------------------
    def elem(self, k: int, l: int, coords: Mapping | None = None) -> "DiagElem":
        return DiagElem(self, k, l, coords or {})

    def from_edges(self, k: int, l: int, pairs: Sequence[tuple[int, int]], label_vecs: Sequence[Mapping]) -> "DiagElem":
        """Diagram with arbitrary A-elements as labels, expanded multilinearly."""
        items = sorted(zip(((min(u, v), max(u, v)) for u, v in pairs), label_vecs), key=lambda x: x[0])
        edges = tuple(e for e, _ in items)
        if sorted(x for e in edges for x in e) != list(range(k + l)):
            raise ValueError("pairs do not form a perfect matching of the vertices")
        coords = {LabeledDiagram(k, l, edges, labels): c
                  for labels, c in tensor_vectors([v for _, v in items]).items()}
        return DiagElem(self, k, l, coords)

    def identity(self, n: int) -> "DiagElem":
        return self.from_edges(n, n, [(i, n + i) for i in range(n)], [self.A.unit] * n)

    def labeled_identity(self, labels: Sequence[Mapping]) -> "DiagElem":
        n = len(labels)
        return self.from_edges(n, n, [(i, n + i) for i in range(n)], labels)

    def a_at(self, n: int, i: int, a: Mapping) -> "DiagElem":
        """a^(i): the identity with strand i (1-based) labelled a."""
        return self.labeled_identity([a if j == i - 1 else self.A.unit for j in range(n)])

    def e(self, n: int, i: int) -> "DiagElem":
        i0 = i - 1
        pairs = [(i0, i0 + 1), (n + i0, n + i0 + 1)]
        pairs += [(j, n + j) for j in range(n) if j not in (i0, i0 + 1)]
        return self.from_edges(n, n, pairs, [self.A.unit] * len(pairs))

    def perm_diagram(self, p: Sequence[int]) -> "DiagElem":
        """Top i joined to bottom p(i), unlabelled."""
        n = len(p)
        return self.from_edges(n, n, [(i, n + p[i]) for i in range(n)], [self.A.unit] * n)

    def s(self, n: int, i: int) -> "DiagElem":
        return self.perm_diagram(Permutation.simple(n, i))

    def generators(self, n: int) -> list[tuple[str, "DiagElem"]]:
        gens = [(f"e{i}", self.e(n, i)) for i in range(1, n)]
        gens += [(f"s{i}", self.s(n, i)) for i in range(1, n)]
        if n >= 1:
            gens += [(f"{self.A.basis_names[k]}@1", self.a_at(n, 1, {k: ONE})) for k in range(self.A.dim)]
        return gens

    def all_diagrams(self, k: int, l: int) -> list[LabeledDiagram]:
        out = []
        for m in iter_matchings(list(range(k + l))):
            edges = tuple(m)
            for labels in itertools.product(range(self.A.dim), repeat=len(edges)):
                out.append(LabeledDiagram(k, l, edges, labels))
        return out

    def count_diagrams(self, n: int) -> int:
        from .combinatorics import double_factorial_odd
        return self.A.dim ** n * double_factorial_odd(n)

    # -- wreath embedding -------------------------------------------------------------------
    def embed_monomial(self, labels: Sequence[int], p: Sequence[int]) -> LabeledDiagram:
        """(a_1 ... a_n) p: top i joined to bottom p(i), labelled a_p(i)."""
        n = len(p)
        return LabeledDiagram(n, n, tuple((i, n + p[i]) for i in range(n)), tuple(labels[p[i]] for i in range(n)))

    def wreath_embedding(self, x: Mapping, n: int) -> "DiagElem":
        coords: dict = {}
        for (labels, p), c in x.items():
            vec_add(coords, {self.embed_monomial(labels, p): c})
        return DiagElem(self, n, n, coords)

    def monomial_of(self, D: LabeledDiagram) -> tuple:
        """Inverse of embed_monomial on diagrams with n through strands."""
        n = D.k
        if D.l != n or D.n_through != n:
            raise ValueError("not a permutation diagram")
        p = Permutation(v - n for _, v in D.edges)
        return place_permute(p, D.labels), p

    def to_wreath(self, x: "DiagElem") -> dict:
        out: dict = {}
        for D, c in x.coords.items():
            vec_add(out, {self.monomial_of(D): c})
        return out

    # -- text ----------------------------------------------------------------------------------
    def format_diagram(self, D: LabeledDiagram) -> str:
        def vname(v):
            return str(v + 1) if v < D.k else f"{v - D.k + 1}b"
        edges = ",".join(f"({vname(u)},{vname(v)})" for u, v in D.edges)
        labels = ", ".join(self.A.basis_names[a] for a in D.labels)
        return f"[{edges}] labels=[{labels}]"

    def format(self, x: "DiagElem") -> str:
        from .core import format_vector
        return format_vector(x.coords, self.format_diagram) if x.coords else "0"

    def parse_diagram(self, text: str, k: int | None = None, l: int | None = None) -> "DiagElem":
        """Parse ``[(1,3b),(2,3),...] labels=[...]``; '1' as a label means the unit of A."""
        m = re.fullmatch(r"\s*\[(?P<edges>[^\]]*)\]\s*(?:labels\s*=\s*\[(?P<labels>[^\]]*)\])?\s*", text)
        if not m:
            raise ParseError(f"bad diagram {text!r}")
        pairs_txt = re.findall(r"\(\s*(\d+b?)\s*,\s*(\d+b?)\s*\)", m.group("edges"))
        if not pairs_txt and m.group("edges").strip():
            raise ParseError(f"bad edge list in {text!r}")
        tops = [int(x) for p in pairs_txt for x in p if not x.endswith("b")]
        bots = [int(x[:-1]) for p in pairs_txt for x in p if x.endswith("b")]
        k = max(tops, default=0) if k is None else k
        l = max(bots, default=0) if l is None else l

        def vid(tok):
            return k + int(tok[:-1]) - 1 if tok.endswith("b") else int(tok) - 1

        pairs = [(vid(a), vid(b)) for a, b in pairs_txt]
        if m.group("labels") is None:
            vecs = [self.A.unit] * len(pairs)
        else:
            names = [t.strip() for t in m.group("labels").split(",") if t.strip()]
            if len(names) != len(pairs):
                raise ParseError("label count does not match edge count")
            vecs = [self.A.parse(nm) for nm in names]
        return self.from_edges(k, l, pairs, vecs)

    def parse(self, text: str) -> "DiagElem":
        """A sum of optionally scaled diagrams, e.g. ``d*[(1,2)] - [(1,1b),(2,2b)]``."""
        total = None
        for sign, term in split_terms(text):
            coef, body = split_coefficient(term) if not term.startswith("[") else (ONE, term)
            x = self.parse_diagram(body) * (coef * sign)
            total = x if total is None else total + x
        if total is None:
            raise ParseError("empty diagram sum")
        return total


class DiagElem:
    """A linear combination of (k, l) labelled diagrams."""

    __slots__ = ("cat", "k", "l", "coords")

    def __init__(self, cat: BrauerCategory, k: int, l: int, coords: Mapping):
        self.cat = cat
        self.k = k
        self.l = l
        self.coords = {D: c for D, c in coords.items() if c}

    def __add__(self, other: "DiagElem") -> "DiagElem":
        self._same_shape(other)
        return DiagElem(self.cat, self.k, self.l, vec_add(dict(self.coords), other.coords))

    def __sub__(self, other: "DiagElem") -> "DiagElem":
        self._same_shape(other)
        return DiagElem(self.cat, self.k, self.l, vec_add(dict(self.coords), other.coords, -1))

    def __neg__(self):
        return self * -1

    def __mul__(self, other):
        if isinstance(other, DiagElem):
            return compose(self, other)
        return DiagElem(self.cat, self.k, self.l, {D: c * other for D, c in self.coords.items()})

    __rmul__ = lambda self, other: self * other

    def __eq__(self, other):
        return (isinstance(other, DiagElem) and (self.k, self.l) == (other.k, other.l)
                and self.coords == other.coords)

    def __repr__(self):
        return f"DiagElem({self.k},{self.l}: {self.cat.format(self)})"

    def _same_shape(self, other):
        if (self.k, self.l) != (other.k, other.l):
            raise ValueError("diagram shapes differ")

    def star(self) -> "DiagElem":
        return star_flip(self)

    def scalar(self) -> Poly:
        """The value of a (0, 0) element."""
        if (self.k, self.l) != (0, 0):
            raise ValueError("not a scalar")
        return self.coords.get(LabeledDiagram(0, 0, (), ()), ZERO)


def compose(x: DiagElem, y: DiagElem) -> DiagElem:
    cat = x.cat
    if y.l != x.k:
        raise ValueError(f"cannot compose ({x.k},{x.l}) after ({y.k},{y.l})")
    acc: dict = {}
    for X, a in x.coords.items():
        for Y, b in y.coords.items():
            vec_add(acc, cat.compose_basis(X, Y), a * b)
    return DiagElem(cat, y.k, x.l, acc)


def star_flip(x: DiagElem) -> DiagElem:
    acc: dict = {}
    for X, a in x.coords.items():
        vec_add(acc, x.cat.star_basis(X), a)
    return DiagElem(x.cat, x.l, x.k, acc)


def tensor(x: DiagElem, y: DiagElem) -> DiagElem:
    acc: dict = {}
    for X, a in x.coords.items():
        for Y, b in y.coords.items():
            vec_add(acc, {x.cat.tensor_basis(X, Y): a * b})
    return DiagElem(x.cat, x.k + y.k, x.l + y.l, acc)


def relabel(x: DiagElem, top: Sequence[int], bottom: Sequence[int]) -> DiagElem:
    """alpha x beta* for permutations alpha = bottom and beta = top."""
    acc: dict = {}
    for X, a in x.coords.items():
        vec_add(acc, x.cat.relabel_basis(X, top, bottom), a)
    return DiagElem(x.cat, x.k, x.l, acc)


def iota(x: DiagElem) -> DiagElem:
    """Add an unlabelled strand on the right."""
    return tensor(x, x.cat.identity(1))


def closure(x: DiagElem) -> DiagElem:
    acc: dict = {}
    for X, a in x.coords.items():
        vec_add(acc, x.cat.close_basis(X), a)
    return DiagElem(x.cat, x.k - 1, x.l - 1, acc)


def global_trace(x: DiagElem) -> Poly:
    while x.k > 0:
        x = closure(x)
    return x.scalar()


def rank_project(x: DiagElem, s: int) -> DiagElem:
    return DiagElem(x.cat, x.k, x.l, {D: c for D, c in x.coords.items() if D.n_through == s})


def diagram_rank(D: LabeledDiagram) -> int:
    return D.n_through


# -- factorisation ----------------------------------------------------------------------

def factor_diagram(cat: BrauerCategory, D: LabeledDiagram):
    """Split D = alpha (X0 (x) X1) beta* with alpha, beta shuffles.

    Returns (alpha, beta, X0, X1): X0 a rank-0 labelled diagram on 2f strands and
    X1 a labelled permutation diagram on s strands.
    """
    n = D.k
    if D.l != n:
        raise ValueError("factorisation needs an (n, n) diagram")
    top_h, top_v, bot_h, bot_v = [], [], [], []
    for u, v in D.edges:
        if v < n:
            top_h += [u, v]
        elif u >= n:
            bot_h += [u - n, v - n]
        else:
            top_v.append(u)
            bot_v.append(v - n)
    beta = Permutation(sorted(top_h) + sorted(top_v))
    alpha = Permutation(sorted(bot_h) + sorted(bot_v))
    moved = cat.relabel_basis(D, beta.inverse(), alpha.inverse())
    if len(moved) != 1 or next(iter(moved.values())) != ONE:
        raise AssertionError("shuffle relabelling changed orientations")
    Xp = next(iter(moved))
    f2 = len(top_h)
    e0, l0, e1, l1 = [], [], [], []
    for (u, v), a in zip(Xp.edges, Xp.labels):
        top_u, top_v_ = u < n, v < n
        pos_u = u if top_u else u - n
        pos_v = v if top_v_ else v - n
        if pos_u < f2 and pos_v < f2:
            e0.append((pos_u if top_u else f2 + pos_u, pos_v if top_v_ else f2 + pos_v))
            l0.append(a)
        else:
            s = n - f2
            e1.append((pos_u - f2 if top_u else s + pos_u - f2, pos_v - f2 if top_v_ else s + pos_v - f2))
            l1.append(a)
    X0 = make_diagram(f2, f2, e0, l0)
    X1 = make_diagram(n - f2, n - f2, e1, l1)
    return alpha, beta, X0, X1


def half_diagrams(cat: BrauerCategory, f: int) -> list[LabeledDiagram]:
    """The set of (0, 2f) diagrams with A-basis labels."""
    return cat.all_diagrams(0, 2 * f)


def x0(cat: BrauerCategory, f: int) -> DiagElem:
    """The (0, 2f) diagram joining 2j-1 to 2j at the bottom, unlabelled."""
    return cat.from_edges(0, 2 * f, [(2 * j, 2 * j + 1) for j in range(f)], [cat.A.unit] * f)


def x0_and_split(cat: BrauerCategory, f: int, X: LabeledDiagram):
    """Return (pi, a, X0) with X = pi(X) a(X) X0.

    ``pi`` sends 1, 2, ..., 2f to i_1, j_1, i_2, j_2, ...; ``a`` is the element of
    A wr S_2f with a_j in slot 2j and units elsewhere.
    """
    if (X.k, X.l) != (0, 2 * f):
        raise ValueError("expected a (0, 2f) diagram")
    images = []
    for u, v in X.edges:
        images += [u, v]
    pi = Permutation(images)
    factors = [dict(cat.A.unit) for _ in range(2 * f)]
    for j, a in enumerate(X.labels):
        factors[2 * j + 1] = {a: ONE}
    a_elem = {(labels, Permutation.identity(2 * f)): c for labels, c in tensor_vectors(factors).items()}
    return pi, a_elem, x0(cat, f)


def e_product(cat: BrauerCategory, f: int) -> DiagElem:
    """e_1 e_3 ... e_{2f-1} on 2f strands."""
    out = cat.identity(2 * f)
    for j in range(f):
        out = out * cat.e(2 * f, 2 * j + 1)
    return out
