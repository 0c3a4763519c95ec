"""Exact sparse linear algebra over the rationals.

Matrices here are rational; right-hand sides may carry Poly entries, which is
all that is needed since every change of basis in this package is rational.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from .arith import Poly


class SingularMatrixError(ArithmeticError):
    pass


def _as_fraction(x) -> Fraction:
    if isinstance(x, Poly):
        return x.constant()
    return Fraction(x)


def invert_columns(columns: Sequence[Mapping[Hashable, object]],
                   keys: Sequence[Hashable]) -> dict[Hashable, dict[int, Fraction]]:
    """Invert the square matrix whose j-th column is ``columns[j]`` over ``keys``.

    Returns, for every key ``k``, the sparse coordinates of the unit vector
    ``e_k`` in terms of the columns. Raises SingularMatrixError otherwise.
    """
    n = len(columns)
    if len(keys) != n:
        raise SingularMatrixError(f"{n} columns over {len(keys)} coordinates")
    key_set = set(keys)
    # rows[k] = {col j: entry}; aug[k] = {key: entry} starting at identity
    rows: dict[Hashable, dict[int, Fraction]] = {k: {} for k in keys}
    for j, col in enumerate(columns):
        for k, v in col.items():
            if k not in key_set:
                raise SingularMatrixError(f"coordinate {k!r} outside the key set")
            q = _as_fraction(v)
            if q:
                rows[k][j] = q
    aug = {k: {k: Fraction(1)} for k in keys}
    col_rows: dict[int, set] = {}
    for k, r in rows.items():
        for j in r:
            col_rows.setdefault(j, set()).add(k)

    pivot_of: dict[int, Hashable] = {}
    used: set = set()
    order = {k: i for i, k in enumerate(keys)}
    for j in range(n):
        cands = [k for k in col_rows.get(j, ()) if k not in used and rows[k].get(j)]
        if not cands:
            raise SingularMatrixError(f"matrix is singular (column {j})")
        p = min(cands, key=lambda k: (len(rows[k]), order[k]))
        pivot_of[j] = p
        used.add(p)
        prow, paug = rows[p], aug[p]
        inv = 1 / prow[j]
        if inv != 1:
            for c in prow:
                prow[c] *= inv
            for c in paug:
                paug[c] *= inv
        for k in list(col_rows.get(j, ())):
            if k == p:
                continue
            r = rows[k]
            f = r.get(j)
            if not f:
                continue
            for c, v in prow.items():
                nv = r.get(c, 0) - f * v
                if nv:
                    if c not in r:
                        col_rows.setdefault(c, set()).add(k)
                    r[c] = nv
                else:
                    r.pop(c, None)
                    col_rows[c].discard(k)
            a = aug[k]
            for c, v in paug.items():
                nv = a.get(c, 0) - f * v
                if nv:
                    a[c] = nv
                else:
                    a.pop(c, None)
    # row pivot_of[j] now reads x_j = sum_k aug[k] * b_k
    out: dict[Hashable, dict[int, Fraction]] = {k: {} for k in keys}
    for j, p in pivot_of.items():
        for k, v in aug[p].items():
            out[k][j] = v
    return out


def determinant(matrix: Sequence[Sequence[object]]) -> Fraction:
    """Determinant of a dense square rational matrix by elimination."""
    m = [[_as_fraction(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


class SpanSolver:
    """Express targets as combinations of fixed rational vectors."""

    def __init__(self, vectors: Sequence[Mapping[Hashable, object]]):
        self.size = len(vectors)
        self._pivots: list[tuple[Hashable, dict, dict]] = []
        self.dependent: list[int] = []
        for i, vec in enumerate(vectors):
            v = {k: _as_fraction(x) for k, x in vec.items() if x}
            combo = {i: Fraction(1)}
            for pk, pv, pc in self._pivots:
                f = v.get(pk)
                if f:
                    _axpy(v, pv, -f)
                    _axpy(combo, pc, -f)
            if not v:
                self.dependent.append(i)
                continue
            pk = next(iter(v))
            inv = 1 / v[pk]
            v = {k: x * inv for k, x in v.items()}
            combo = {k: x * inv for k, x in combo.items()}
            self._pivots.append((pk, v, combo))

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def solve(self, target: Mapping[Hashable, Poly]) -> list[Poly] | None:
        """Coefficients c with sum c_i v_i == target, or None if outside the span."""
        t = {k: (x if isinstance(x, Poly) else Poly(x)) for k, x in target.items() if x}
        coeffs: dict[int, Poly] = {}
        for pk, pv, pc in self._pivots:
            f = t.get(pk)
            if not f:
                continue
            for k, x in pv.items():
                nv = t.get(k, Poly()) - f * x
                if nv:
                    t[k] = nv
                else:
                    t.pop(k, None)
            for i, x in pc.items():
                nv = coeffs.get(i, Poly()) + f * x
                if nv:
                    coeffs[i] = nv
                else:
                    coeffs.pop(i, None)
        if t:
            return None
        return [coeffs.get(i, Poly()) for i in range(self.size)]


def _axpy(acc: dict, other: Mapping, f) -> None:
    for k, x in other.items():
        nv = acc.get(k, 0) + f * x
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
