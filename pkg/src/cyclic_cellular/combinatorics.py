"""Permutations, (multi)partitions, tableaux and dominance orders.

Permutations are tuples of 0-based images; ``p[i]`` is the image of ``i``.
Composition follows functions: ``(p * q)(i) = p(q(i))``. Tableau entries,
partition parts and the text forms are 1-based.
"""

from __future__ import annotations

import enum
import itertools
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Sequence


class Permutation(tuple):
    """A permutation of ``{0, ..., n-1}`` in one-line form."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_one_line(cls, seq: Sequence[int]) -> "Permutation":
        """Build from 1-based one-line notation, checking it is a bijection."""
        p = cls(x - 1 for x in seq)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"{list(seq)} is not a permutation")
        return p

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        """Swap of the 1-based points i and j."""
        img = list(range(n))
        img[i - 1], img[j - 1] = img[j - 1], img[i - 1]
        return cls(img)

    @classmethod
    def simple(cls, n: int, i: int) -> "Permutation":
        return cls.transposition(n, i, i + 1)

    @property
    def n(self) -> int:
        return len(self)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self) != len(other):
            raise ValueError("degree mismatch")
        return Permutation(self[j] for j in other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Permutation(inv)

    def one_line(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def length(self) -> int:
        return sum(1 for i in range(len(self)) for j in range(i + 1, len(self)) if self[i] > self[j])

    def cycles(self) -> list[tuple[int, ...]]:
        """Orbits as 0-based tuples starting at their least element."""
        seen, out = set(), []
        for i in range(len(self)):
            if i in seen:
                continue
            orbit = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                orbit.append(j)
                seen.add(j)
                j = self[j]
            out.append(tuple(orbit))
        return out

    def __repr__(self):
        return f"Permutation({list(self.one_line())})"

    def __str__(self):
        return "[" + ",".join(map(str, self.one_line())) + "]"


def all_permutations(n: int) -> list[Permutation]:
    """S_n in lexicographic one-line order."""
    return [Permutation(p) for p in itertools.permutations(range(n))]


def place_permute(perm: Sequence[int], seq: Sequence) -> tuple:
    """Place permutation: slot ``perm(i)`` of the result holds ``seq[i]``."""
    out = [None] * len(seq)
    for i, x in enumerate(seq):
        out[perm[i]] = x
    return tuple(out)


# -- partitions ----------------------------------------------------------------

Partition = tuple  # weakly decreasing positive ints
Multipartition = tuple  # tuple of Partition, one per slot of a listing


def partitions(n: int) -> list[Partition]:
    """Partitions of n in reverse-lexicographic order, ``(n)`` first."""
    out: list[Partition] = []

    def rec(rem: int, cap: int, prefix: tuple):
        if rem == 0:
            out.append(prefix)
            return
        for part in range(min(rem, cap), 0, -1):
            rec(rem - part, part, prefix + (part,))

    rec(n, n, ())
    return out


def compositions(n: int, r: int) -> list[tuple[int, ...]]:
    """Weak compositions of n into r parts in reverse-lexicographic order."""
    if r == 0:
        return [()] if n == 0 else []
    out = []
    for first in range(n, -1, -1):
        for rest in compositions(n - first, r - 1):
            out.append((first,) + rest)
    return out


def multipartitions(n: int, r: int) -> list[Multipartition]:
    """r-multipartitions of n; compositions in reverse-lex, then parts in reverse-lex."""
    out = []
    for alpha in compositions(n, r):
        for combo in itertools.product(*(partitions(a) for a in alpha)):
            out.append(tuple(combo))
    return out


def is_partition(lam: Sequence[int]) -> bool:
    return all(x > 0 for x in lam) and all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0] if lam else 0))


def size(mp: Multipartition) -> int:
    return sum(sum(p) for p in mp)


def sizes(mp: Multipartition) -> tuple[int, ...]:
    """The composition alpha(lambda) of component sizes."""
    return tuple(sum(p) for p in mp)


# -- dominance ---------------------------------------------------------------

class Order(enum.Enum):
    EQUAL = "equal"
    ABOVE = "above"  # first argument strictly dominates the second
    BELOW = "below"
    INCOMPARABLE = "incomparable"


def _partial_sums(comp: Sequence[int], length: int) -> list[int]:
    out, acc = [], 0
    for j in range(length):
        acc += comp[j] if j < len(comp) else 0
        out.append(acc)
    return out


def _resolve(ge: bool, le: bool) -> Order:
    if ge and le:
        return Order.EQUAL
    if ge:
        return Order.ABOVE
    if le:
        return Order.BELOW
    return Order.INCOMPARABLE


def _dominance_sums(mp: Sequence[Sequence[int]], lengths: Sequence[int]) -> list[int]:
    sums, base = [], 0
    for comp, length in zip(mp, lengths):
        for s in _partial_sums(comp, length):
            sums.append(base + s)
        base += sum(comp)
    return sums


def dominance(lam: Sequence[Sequence[int]], mu: Sequence[Sequence[int]]) -> Order:
    """Dominance on multicompositions with the same number of components."""
    if len(lam) != len(mu):
        raise ValueError("component count mismatch")
    if sum(map(sum, lam)) != sum(map(sum, mu)):
        raise ValueError("size mismatch")
    lengths = [max(len(a), len(b)) + 1 for a, b in zip(lam, mu)]
    sl, sm = _dominance_sums(lam, lengths), _dominance_sums(mu, lengths)
    return _resolve(all(a >= b for a, b in zip(sl, sm)), all(a <= b for a, b in zip(sl, sm)))


def partition_dominance(lam: Sequence[int], mu: Sequence[int]) -> Order:
    return dominance((tuple(lam),), (tuple(mu),))


def gamma_dominance(lam: Sequence[Sequence[int]], mu: Sequence[Sequence[int]], poset: "GammaPoset") -> Order:
    """Dominance relative to a poset Gamma whose listing indexes the components."""
    r = len(poset)
    if len(lam) != r or len(mu) != r:
        raise ValueError("multipartition length must match the poset")
    if sum(map(sum, lam)) != sum(map(sum, mu)):
        raise ValueError("size mismatch")
    ge = le = True
    for g in range(r):
        above_l = sum(sum(lam[h]) for h in range(r) if poset.gt(h, g))
        above_m = sum(sum(mu[h]) for h in range(r) if poset.gt(h, g))
        length = max(len(lam[g]), len(mu[g])) + 1
        for a, b in zip(_partial_sums(lam[g], length), _partial_sums(mu[g], length)):
            a += above_l
            b += above_m
            ge = ge and a >= b
            le = le and a <= b
        if not (ge or le):
            break
    return _resolve(ge, le)


class GammaPoset:
    """A finite poset with a fixed listing compatible with the order.

    The listing must satisfy: ``elements[i] >= elements[j]`` implies ``i <= j``,
    so higher elements come first.
    """

    def __init__(self, elements: Sequence, ge_matrix: Sequence[Sequence[bool]]):
        self.elements = list(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate poset elements")
        n = len(self.elements)
        self._ge = [[bool(ge_matrix[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            if not self._ge[i][i]:
                raise ValueError("relation is not reflexive")
            for j in range(n):
                if i != j and self._ge[i][j] and self._ge[j][i]:
                    raise ValueError("relation is not antisymmetric")
                if i != j and self._ge[i][j] and i > j:
                    raise ValueError(f"listing is not compatible with the order at {self.elements[i]!r}")
                for k in range(n):
                    if self._ge[i][j] and self._ge[j][k] and not self._ge[i][k]:
                        raise ValueError("relation is not transitive")

    @classmethod
    def from_relation(cls, elements: Sequence, ge, sort: bool = True) -> "GammaPoset":
        """Build from a predicate ``ge(a, b)``; reorders to a compatible listing if asked."""
        elements = list(elements)
        if sort:
            elements = linear_extension(elements, ge)
        mat = [[ge(a, b) for b in elements] for a in elements]
        return cls(elements, mat)

    @classmethod
    def chain(cls, elements: Sequence) -> "GammaPoset":
        """Total order, first element highest."""
        n = len(elements)
        return cls(elements, [[i <= j for j in range(n)] for i in range(n)])

    @classmethod
    def antichain(cls, elements: Sequence) -> "GammaPoset":
        n = len(elements)
        return cls(elements, [[i == j for j in range(n)] for i in range(n)])

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, e) -> int:
        return self._index[e]

    def ge(self, i: int, j: int) -> bool:
        return self._ge[i][j]

    def gt(self, i: int, j: int) -> bool:
        return i != j and self._ge[i][j]

    def compare(self, i: int, j: int) -> Order:
        return _resolve(self._ge[i][j], self._ge[j][i])

    def product(self, other: "GammaPoset") -> "GammaPoset":
        """Product order; the listing is lexicographic in the two listings."""
        elems = [(a, b) for a in self.elements for b in other.elements]
        n2 = len(other)
        idx = [(i, j) for i in range(len(self)) for j in range(n2)]
        mat = [[self._ge[a][c] and other._ge[b][d] for (c, d) in idx] for (a, b) in idx]
        return GammaPoset(elems, mat)


def linear_extension(elements: Sequence, ge) -> list:
    """Higher elements first, ties broken by the input order."""
    remaining = list(elements)
    out = []
    while remaining:
        for x in remaining:
            if not any(y is not x and y != x and ge(y, x) and not ge(x, y) for y in remaining):
                out.append(x)
                remaining.remove(x)
                break
        else:  # pragma: no cover - impossible for a partial order
            raise ValueError("relation has a cycle")
    return out


# -- tableaux ------------------------------------------------------------------

class Tableau:
    """A row-filled multitableau: components, then rows, then 1-based entries.

    A tableau of a single partition is a one-component multitableau.
    """

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Sequence[Sequence[Sequence[int]]]):
        self.rows = tuple(tuple(tuple(r) for r in comp) for comp in rows)
        self._hash = hash(self.rows)

    @property
    def shape(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(len(r) for r in comp) for comp in self.rows)

    @property
    def n(self) -> int:
        return sum(len(r) for comp in self.rows for r in comp)

    def entries(self) -> list[int]:
        """Entries in reading order: component by component, row by row."""
        return [x for comp in self.rows for r in comp for x in r]

    def __eq__(self, other):
        return isinstance(other, Tableau) and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.entries() < other.entries()

    def __repr__(self):
        return f"Tableau({self.to_list()})"

    def to_list(self) -> list:
        return [[list(r) for r in comp] for comp in self.rows]

    def __str__(self):
        return str(self.to_list()).replace(" ", "")


def superstandard(shape: Sequence[Sequence[int]]) -> Tableau:
    """t^lambda: entries 1..n filled along rows, component by component."""
    k, rows = 1, []
    for comp in shape:
        crow = []
        for length in comp:
            crow.append(tuple(range(k, k + length)))
            k += length
        rows.append(crow)
    return Tableau(rows)


def d_of(t: Tableau) -> Permutation:
    """The permutation d(t) with t = d(t) t^lambda."""
    return Permutation.from_one_line(t.entries())


def tableau_from_perm(shape: Sequence[Sequence[int]], perm: Sequence[int]) -> Tableau:
    """perm . t^lambda for a 0-based permutation."""
    base = superstandard(shape)
    return act(perm, base)


def act(perm: Sequence[int], t: Tableau) -> Tableau:
    """Left action replacing each entry i by perm(i)."""
    return Tableau([[[perm[x - 1] + 1 for x in r] for r in comp] for comp in t.rows])


def is_row_standard(t: Tableau) -> bool:
    return all(all(r[i] < r[i + 1] for i in range(len(r) - 1)) for comp in t.rows for r in comp)


def is_standard(t: Tableau) -> bool:
    if not is_row_standard(t):
        return False
    for comp in t.rows:
        for a, b in zip(comp, comp[1:]):
            if any(b[j] <= a[j] for j in range(len(b))):
                return False
    return True


def restrict_shape(t: Tableau, m: int) -> tuple[tuple[int, ...], ...]:
    """Shape of t restricted to entries at most m, keeping empty rows."""
    return tuple(tuple(sum(1 for x in r if x <= m) for r in comp) for comp in t.rows)


def tableau_dominates(s: Tableau, t: Tableau, poset: "GammaPoset | None" = None) -> bool:
    """True iff shape(s|m) dominates shape(t|m) for every m.

    With ``poset`` the comparison uses Gamma-dominance instead.
    """
    if s.n != t.n:
        raise ValueError("tableaux of different sizes")
    if not (is_row_standard(s) and is_row_standard(t)):
        raise ValueError("tableaux must be row standard")
    for m in range(1, s.n + 1):
        a, b = restrict_shape(s, m), restrict_shape(t, m)
        rel = dominance(a, b) if poset is None else gamma_dominance(a, b, poset)
        if rel not in (Order.EQUAL, Order.ABOVE):
            return False
    return True


def comp_function(t: Tableau) -> tuple[int, ...]:
    """comp_t(j) for j = 1..n, as 0-based component indices."""
    out = [0] * t.n
    for k, comp in enumerate(t.rows):
        for r in comp:
            for x in r:
                out[x - 1] = k
    return tuple(out)


def is_initial_kind(t: Tableau) -> bool:
    return comp_function(t) == comp_function(superstandard(t.shape))


@lru_cache(maxsize=None)
def _standard_cached(shape: tuple) -> tuple:
    n = sum(map(sum, shape))
    results = []
    # fill entries n, n-1, ... into removable corners
    grid = [list(comp) for comp in shape]
    filling = [[[0] * length for length in comp] for comp in shape]

    def rec(k: int):
        if k == 0:
            results.append(Tableau(filling))
            return
        for c, comp in enumerate(grid):
            for r, length in enumerate(comp):
                if length == 0:
                    continue
                below = comp[r + 1] if r + 1 < len(comp) else 0
                if below < length:
                    filling[c][r][length - 1] = k
                    comp[r] -= 1
                    rec(k - 1)
                    comp[r] += 1
                    filling[c][r][length - 1] = 0

    rec(n)
    results.sort(key=lambda t: d_of(t))
    return tuple(results)


def standard_tableaux(shape: Sequence[Sequence[int]]) -> list[Tableau]:
    """Standard tableaux of a multipartition, ordered by d(t) lexicographically."""
    return list(_standard_cached(tuple(tuple(c) for c in shape)))


def row_standard_tableaux(shape: Sequence[Sequence[int]]) -> list[Tableau]:
    n = sum(map(sum, shape))
    flat = [length for comp in shape for length in comp]
    out = []
    for perm in coset_reps(tuple(flat), n):
        out.append(tableau_from_perm(shape, perm))
    return out


def f_count(shape: Sequence[Sequence[int]]) -> int:
    """Number of standard tableaux via the hook length formula."""
    alpha = [sum(c) for c in shape]
    n = sum(alpha)
    total = factorial(n)
    for a in alpha:
        total //= factorial(a)
    for comp in shape:
        total *= _hook_count(tuple(comp))
    return total


def _hook_count(lam: Partition) -> int:
    n = sum(lam)
    conj = conjugate(lam)
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // prod


# -- Young subgroups, coset representatives, shuffles ---------------------------

def blocks(alpha: Sequence[int]) -> list[range]:
    out, start = [], 0
    for a in alpha:
        out.append(range(start, start + a))
        start += a
    return out


def young_subgroup(alpha: Sequence[int]) -> list[Permutation]:
    """S_alpha acting on consecutive 0-based blocks, in lexicographic order."""
    n = sum(alpha)
    pieces = [list(itertools.permutations(b)) for b in blocks(alpha)]
    out = []
    for choice in itertools.product(*pieces):
        img = [0] * n
        for b, imgs in zip(blocks(alpha), choice):
            for i, j in zip(b, imgs):
                img[i] = j
        out.append(Permutation(img))
    out.sort()
    return out


def row_stabilizer(shape: Sequence[Sequence[int]]) -> list[Permutation]:
    return young_subgroup([length for comp in shape for length in comp])


def coset_reps(alpha: Sequence[int], n: int | None = None) -> list[Permutation]:
    """Minimal length representatives of the left cosets w S_alpha, lex order."""
    n = sum(alpha) if n is None else n
    if sum(alpha) != n:
        raise ValueError("composition does not sum to n")
    out = []

    def rec(k: int, avail: tuple, acc: list):
        if k == len(alpha):
            out.append(Permutation(acc))
            return
        for chosen in itertools.combinations(avail, alpha[k]):
            rest = tuple(x for x in avail if x not in chosen)
            rec(k + 1, rest, acc + list(chosen))

    rec(0, tuple(range(n)), [])
    out.sort()
    return out


def coset_decompose(w: Permutation, alpha: Sequence[int]) -> tuple[Permutation, Permutation]:
    """Write w = rep * h with rep a minimal coset representative and h in S_alpha."""
    img = list(w)
    rep = [0] * len(w)
    for b in blocks(alpha):
        vals = sorted(img[i] for i in b)
        for i, v in zip(b, vals):
            rep[i] = v
    rep = Permutation(rep)
    return rep, rep.inverse() * w


def shuffles(k: int, s: int) -> list[Permutation]:
    """(k, s)-shuffles: increasing on the first k points and on the last s."""
    return coset_reps((k, s), k + s)


def num_shuffles(k: int, s: int) -> int:
    return comb(k + s, k)


def double_factorial_odd(n: int) -> int:
    """(2n - 1)!!, with the empty product for n = 0."""
    out = 1
    for j in range(1, 2 * n, 2):
        out *= j
    return out


def iter_matchings(points: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    """Perfect matchings of an even set of points, pairs sorted by first point."""
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for m in iter_matchings(remaining):
            yield [(first, partner)] + m
