"""Sparse exact linear algebra over a FieldSpec.

Vectors are dicts ``column -> nonzero raw value``.  Columns are any hashable
objects; a sort key decides which column of a vector leads.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable

from .scalars import FieldSpec

Vector = dict


def add_scaled(f: FieldSpec, target: Vector, source: Vector, c) -> None:
    """target += c * source, in place, dropping zeros."""
    for k, v in source.items():
        w = f.add(target.get(k, f.zero), f.mul(c, v))
        if w == 0:
            target.pop(k, None)
        else:
            target[k] = w


def scale(f: FieldSpec, v: Vector, c) -> Vector:
    if c == 0:
        return {}
    return {k: f.mul(c, x) for k, x in v.items()}


class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    Each stored row has a leading column (largest under ``key``) with
    coefficient one, and no two rows share a leading column.
    """

    def __init__(self, field: FieldSpec, key: Callable[[Hashable], object] | None = None):
        self.field = field
        self.key = key if key is not None else (lambda c: c)
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def lead(self, v: Vector):
        return max(v, key=self.key)

    def reduce(self, v: Vector, full: bool = False) -> Vector:
        """Reduce v against the stored rows (leading terms only unless ``full``)."""
        f = self.field
        v = dict(v)
        if not full:
            while v:
                c = self.lead(v)
                r = self.rows.get(c)
                if r is None:
                    break
                add_scaled(f, v, r, f.neg(v[c]))
            return v
        done = {}
        while v:
            c = self.lead(v)
            r = self.rows.get(c)
            if r is None:
                done[c] = v.pop(c)
            else:
                add_scaled(f, v, r, f.neg(v[c]))
        return done

    def add(self, v: Vector) -> bool:
        """Insert v; return True if it enlarged the span."""
        v = self.reduce(v)
        if not v:
            return False
        c = self.lead(v)
        self.rows[c] = scale(self.field, v, self.field.inv(v[c]))
        return True

    def extend(self, vs: Iterable[Vector]) -> int:
        return sum(1 for v in vs if self.add(v))

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def interreduced(self) -> list[Vector]:
        """Reduced row echelon form, rows sorted by descending leading column."""
        f = self.field
        leads = sorted(self.rows, key=self.key)
        out: dict = {}
        for c in leads:
            r = dict(self.rows[c])
            changed = True
            while changed:
                changed = False
                for k in list(r):
                    if k != c and k in out:
                        add_scaled(f, r, out[k], f.neg(r[k]))
                        changed = True
                        break
            out[c] = r
        return [out[c] for c in reversed(leads)]


def rank(field: FieldSpec, vectors: Iterable[Vector], key=None) -> int:
    e = Echelon(field, key)
    return e.extend(vectors)


def same_span(field: FieldSpec, a: Iterable[Vector], b: Iterable[Vector], key=None) -> bool:
    ea, eb = Echelon(field, key), Echelon(field, key)
    a, b = list(a), list(b)
    ea.extend(a)
    eb.extend(b)
    return len(ea) == len(eb) and all(ea.contains(v) for v in b)


def nullspace(field: FieldSpec, rows: list[list], ncols: int) -> list[list]:
    """Basis of {x : rows . x = 0} for a dense matrix, smallest-index pivots."""
    f = field
    m = [[f.coerce(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = f.inv(m[r][c])
        m[r] = [f.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                t = m[i][c]
                m[i] = [f.sub(x, f.mul(t, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [f.zero] * ncols
        x[fc] = f.one
        for i, pc in enumerate(pivots):
            x[pc] = f.neg(m[i][fc])
        basis.append(x)
    return basis


def solve(field: FieldSpec, rows: list[list], rhs: list) -> list | None:
    """One solution of rows . x = rhs, or None."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    f = field
    m = [[f.coerce(x) for x in r] for r in aug]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = f.inv(m[r][c])
        m[r] = [f.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                t = m[i][c]
                m[i] = [f.sub(x, f.mul(t, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in m):
        return None
    x = [f.zero] * n
    for i, pc in enumerate(pivots):
        x[pc] = m[i][n]
    return x
