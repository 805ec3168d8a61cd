"""Decorated rooted trees: the combinatorial model of NAP_D and of based cacti.

A tree on {1..n} is stored by its parent map; the edge <ij> means i is the
parent of j.  Edge labels are listed by target vertex in ascending order, and
that list is the reference ordering of the tensor factors.  Every sign below
is the Koszul sign of moving labels between two such orderings.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .coalg import CoalgebraSpec
from .scalars import FieldSpec, Q
from .signs import koszul_sign

DEFAULT_BOUND = 7


class TreeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class RootedTree:
    n: int
    root: int
    parents: tuple  # parents[v-1] is the parent of v, 0 for the root

    def __post_init__(self):
        if len(self.parents) != self.n or not 1 <= self.root <= self.n:
            raise TreeError("malformed tree")
        if self.parents[self.root - 1] != 0:
            raise TreeError("root has a parent")
        for v in range(1, self.n + 1):
            seen = set()
            w = v
            while w != self.root:
                if w in seen or not 1 <= self.parents[w - 1] <= self.n:
                    raise TreeError("parent map is not a tree")
                seen.add(w)
                w = self.parents[w - 1]

    @classmethod
    def from_edges(cls, n: int, root: int, edges: dict) -> "RootedTree":
        return cls(n, root, tuple(edges.get(v, 0) for v in range(1, n + 1)))

    def parent(self, v: int) -> int:
        return self.parents[v - 1]

    @property
    def targets(self) -> tuple:
        """Non-root vertices in ascending order: the canonical edge order."""
        return tuple(v for v in range(1, self.n + 1) if v != self.root)

    def children(self, v: int) -> list:
        return [w for w in range(1, self.n + 1) if self.parents[w - 1] == v]

    def depth(self, v: int) -> int:
        d = 0
        while v != self.root:
            v = self.parents[v - 1]
            d += 1
        return d

    def descendants(self, v: int) -> list:
        out, stack = [], [v]
        while stack:
            w = stack.pop()
            for c in self.children(w):
                out.append(c)
                stack.append(c)
        return sorted(out)


def level(t: RootedTree) -> int:
    """Number of non-trivial directed paths, i.e. the sum of vertex depths."""
    return sum(t.depth(v) for v in range(1, t.n + 1))


@dataclass(frozen=True, order=True)
class DecoratedTree:
    tree: RootedTree
    labels: tuple  # label index of edge <parent(v), v> for v in tree.targets

    def __post_init__(self):
        if len(self.labels) != self.tree.n - 1:
            raise TreeError("need one label per edge")

    def label_of(self, v: int) -> int:
        return self.labels[self.tree.targets.index(v)]

    def label_map(self) -> dict:
        return dict(zip(self.tree.targets, self.labels))

    def degree(self, degrees: Sequence[int]) -> int:
        return sum(degrees[a] for a in self.labels)


def _make(n: int, root: int, edges: dict, labels: dict) -> DecoratedTree:
    t = RootedTree.from_edges(n, root, edges)
    return DecoratedTree(t, tuple(labels[v] for v in t.targets))


class TreeVector:
    """A linear combination of decorated trees with raw field coefficients."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: dict | None = None, field: FieldSpec = Q):
        self.field = field
        self.terms = {}
        for t, c in (terms or {}).items():
            c = field.coerce(c)
            if c != 0:
                self.terms[t] = c

    @classmethod
    def single(cls, t: DecoratedTree, field: FieldSpec = Q, coeff=1) -> "TreeVector":
        return cls({t: field.coerce(coeff)}, field)

    def add_term(self, t: DecoratedTree, c) -> None:
        f = self.field
        v = f.add(self.terms.get(t, f.zero), c)
        if v == 0:
            self.terms.pop(t, None)
        else:
            self.terms[t] = v

    def __add__(self, other: "TreeVector") -> "TreeVector":
        out = TreeVector(dict(self.terms), self.field)
        for t, c in other.terms.items():
            out.add_term(t, c)
        return out

    def __sub__(self, other: "TreeVector") -> "TreeVector":
        out = TreeVector(dict(self.terms), self.field)
        for t, c in other.terms.items():
            out.add_term(t, self.field.neg(c))
        return out

    def scaled(self, c) -> "TreeVector":
        f = self.field
        return TreeVector({t: f.mul(f.coerce(c), v) for t, v in self.terms.items()}, f)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def __eq__(self, other):
        return isinstance(other, TreeVector) and self.field == other.field and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return "TreeVector(" + " + ".join(f"{c}*{dumps_tree(t)}" for t, c in self.sorted_terms()) + ")"


# composition

def nap_compose_trees(t1: DecoratedTree, i: int, t2: DecoratedTree, degrees: Sequence[int]):
    """T1 o_i T2 on single trees: (sign, tree)."""
    a, b = t1.tree, t2.tree
    n, m = a.n, b.n
    if not 1 <= i <= n:
        raise TreeError(f"slot {i} out of range 1..{n}")
    r2 = b.root

    def img1(v):
        if v < i:
            return v
        if v == i:
            return i + r2 - 1
        return v + m - 1

    def img2(w):
        return w + i - 1

    edges, labels = {}, {}
    seq = []  # (new target, degree) in concatenated order T1 then T2
    for v, lab in zip(a.targets, t1.labels):
        tv = img1(v)
        edges[tv] = img1(a.parent(v))
        labels[tv] = lab
        seq.append(tv)
    for w, lab in zip(b.targets, t2.labels):
        tw = img2(w)
        edges[tw] = img2(b.parent(w))
        labels[tw] = lab
        seq.append(tw)
    root = img1(a.root)
    out = _make(n + m - 1, root, edges, labels)
    degs = [degrees[labels[tv]] for tv in seq]
    order = sorted(range(len(seq)), key=lambda p: seq[p])
    return koszul_sign(degs, order), out


def closed_form_sign(t1: DecoratedTree, i: int, t2: DecoratedTree, degrees: Sequence[int]) -> int:
    """The composition sign read off from the edges of T1 with target above i."""
    moved = sum(degrees[lab] for v, lab in zip(t1.tree.targets, t1.labels) if v > i)
    return -1 if (t2.degree(degrees) * moved) % 2 else 1


def corrected_closed_form_sign(t1: DecoratedTree, i: int, t2: DecoratedTree, degrees: Sequence[int]) -> int:
    """Closed form including the edge into i, which lands among the edges of T2
    whenever the root of T2 is not its vertex 1."""
    s = closed_form_sign(t1, i, t2, degrees)
    if i != t1.tree.root:
        below = sum(degrees[lab] for w, lab in zip(t2.tree.targets, t2.labels) if w < t2.tree.root)
        if degrees[t1.label_of(i)] * below % 2:
            s = -s
    return s


def nap_compose(v1: TreeVector, i: int, v2: TreeVector, degrees: Sequence[int]) -> TreeVector:
    f = v1.field
    out = TreeVector(field=f)
    for t1, c1 in v1.terms.items():
        for t2, c2 in v2.terms.items():
            s, t = nap_compose_trees(t1, i, t2, degrees)
            c = f.mul(c1, c2)
            out.add_term(t, c if s > 0 else f.neg(c))
    return out


def nap_sym_action_tree(sigma: Sequence[int], t: DecoratedTree, degrees: Sequence[int]):
    """Relabel vertex v as sigma[v-1]: (sign, tree)."""
    n = t.tree.n
    if sorted(sigma) != list(range(1, n + 1)):
        raise TreeError("not a permutation of the vertex set")
    edges, labels, seq = {}, {}, []
    for v, lab in zip(t.tree.targets, t.labels):
        nv = sigma[v - 1]
        edges[nv] = sigma[t.tree.parent(v) - 1]
        labels[nv] = lab
        seq.append(nv)
    out = _make(n, sigma[t.tree.root - 1], edges, labels)
    degs = [degrees[labels[x]] for x in seq]
    order = sorted(range(len(seq)), key=lambda p: seq[p])
    return koszul_sign(degs, order), out


def nap_sym_action(sigma: Sequence[int], v: TreeVector, degrees: Sequence[int]) -> TreeVector:
    f = v.field
    out = TreeVector(field=f)
    for t, c in v.terms.items():
        s, u = nap_sym_action_tree(sigma, t, degrees)
        out.add_term(u, c if s > 0 else f.neg(c))
    return out


# cactus reduction

def reducible_edges(t: DecoratedTree, unit: int) -> list:
    tr = t.tree
    return [(tr.parent(j), j) for j, lab in zip(tr.targets, t.labels)
            if lab == unit and tr.parent(j) != tr.root]


def cactus_reduce_once(t: DecoratedTree, edge: tuple, coalg: CoalgebraSpec,
                       sign_rule: str = "koszul") -> TreeVector:
    """Reduce the reducible edge <ij>: replace it by <kj> and split the label of <ki>.

    ``sign_rule="koszul"`` moves c_(2) from beside c_(1) to the slot of j;
    ``sign_rule="verbatim"`` uses only the degrees of edges with target strictly
    between i and j.
    """
    i, j = edge
    tr = t.tree
    f = coalg.field
    degrees = coalg.degrees
    if tr.parent(j) != i or t.label_of(j) != coalg.unit or i == tr.root:
        raise TreeError(f"edge <{i}{j}> is not reducible")
    k = tr.parent(i)
    c = t.label_of(i)
    lm = t.label_map()
    edges = {v: tr.parent(v) for v in tr.targets}
    edges[j] = k
    out = TreeVector(field=f)
    g = sum(degrees[lm[y]] for y in tr.targets if i < y < j)
    for (a, b), mu in coalg.delta(c).items():
        labels = dict(lm)
        labels[i] = a
        labels[j] = b
        new = _make(tr.n, tr.root, edges, labels)
        if sign_rule == "verbatim":
            s = -1 if (degrees[b] * g) % 2 else 1
        else:
            # old order with c replaced by (c1, c2) at the slot of i and the unit dropped
            seq = []
            for v in tr.targets:
                if v == i:
                    seq.extend([(i, a), (j, b)])
                elif v != j:
                    seq.append((v, lm[v]))
            degs = [degrees[x[1]] for x in seq]
            order = sorted(range(len(seq)), key=lambda p: seq[p][0])
            s = koszul_sign(degs, order)
        out.add_term(new, mu if s > 0 else f.neg(mu))
    return out


def cactus_normal_form(v: TreeVector, coalg: CoalgebraSpec,
                       choose: Callable[[list], tuple] | None = None,
                       sign_rule: str = "koszul") -> TreeVector:
    """Reduce until no term has a reducible edge.  ``choose`` picks the edge."""
    f = v.field
    pending = dict(v.terms)
    done = TreeVector(field=f)
    while pending:
        t = min(pending)
        c = pending.pop(t)
        red = reducible_edges(t, coalg.unit)
        if not red:
            done.add_term(t, c)
            continue
        e = choose(red) if choose else red[0]
        for u, d in cactus_reduce_once(t, e, coalg, sign_rule).terms.items():
            w = f.add(pending.get(u, f.zero), f.mul(c, d))
            if w == 0:
                pending.pop(u, None)
            else:
                pending[u] = w
    return done


def random_chooser(rng: random.Random) -> Callable[[list], tuple]:
    return lambda edges: rng.choice(edges)


# enumeration and dimension oracles

def enumerate_rooted_trees(n: int, bound: int = DEFAULT_BOUND) -> list:
    """All rooted trees on {1..n}, ordered by (root, parent tuple)."""
    if n < 1:
        raise TreeError("n must be positive")
    if n > bound:
        raise TreeError(f"n = {n} exceeds the enumeration bound {bound}")
    out = []
    for root in range(1, n + 1):
        others = [v for v in range(1, n + 1) if v != root]
        choices = [[p for p in range(1, n + 1) if p != v] for v in others]
        for ps in itertools.product(*choices):
            parents = [0] * n
            for v, p in zip(others, ps):
                parents[v - 1] = p
            if _acyclic(parents, root):
                out.append(RootedTree(n, root, tuple(parents)))
    return out


def _acyclic(parents: list, root: int) -> bool:
    n = len(parents)
    state = [0] * (n + 1)
    state[root] = 2
    for v in range(1, n + 1):
        path = []
        w = v
        while state[w] == 0:
            state[w] = 1
            path.append(w)
            w = parents[w - 1]
        if state[w] == 1:
            return False
        for x in path:
            state[x] = 2
    return True


def enumerate_decorated_trees(n: int, nlabels: int, bound: int = DEFAULT_BOUND) -> Iterator[DecoratedTree]:
    for t in enumerate_rooted_trees(n, bound):
        for labs in itertools.product(range(nlabels), repeat=n - 1):
            yield DecoratedTree(t, labs)


@dataclass(frozen=True, order=True)
class PlantedForestStar:
    n: int
    parents: tuple  # 0 marks a component root
    chosen: int  # root of the chosen component

    @property
    def roots(self) -> tuple:
        return tuple(v for v in range(1, self.n + 1) if self.parents[v - 1] == 0)

    @property
    def edges(self) -> int:
        return self.n - len(self.roots)


def enumerate_planted_forests_star(n: int, bound: int = DEFAULT_BOUND) -> list:
    if n < 1:
        raise TreeError("n must be positive")
    if n > bound:
        raise TreeError(f"n = {n} exceeds the enumeration bound {bound}")
    out = []
    choices = [[p for p in range(0, n + 1) if p != v] for v in range(1, n + 1)]
    for ps in itertools.product(*choices):
        parents = list(ps)
        if not _forest(parents):
            continue
        for r in range(1, n + 1):
            if parents[r - 1] == 0:
                out.append(PlantedForestStar(n, tuple(parents), r))
    return out


def _forest(parents: list) -> bool:
    n = len(parents)
    state = [0] * (n + 1)
    state[0] = 2
    for v in range(1, n + 1):
        path = []
        w = v
        while state[w] == 0:
            state[w] = 1
            path.append(w)
            w = parents[w - 1]
        if state[w] == 1:
            return False
        for x in path:
            state[x] = 2
    return True


def bcact_dim_oracle(n: int, reduced_degrees: Sequence[int], bound: int = DEFAULT_BOUND) -> dict:
    """Graded dimension of the span of planted forests with a chosen tree,
    edges labelled by a basis of the reduced coalgebra.  Returns degree -> dim."""
    poly = {}
    for d in reduced_degrees:
        poly[d] = poly.get(d, 0) + 1
    powers = [{0: 1}]
    for _ in range(n):
        prev = powers[-1]
        nxt: dict = {}
        for a, x in prev.items():
            for b, y in poly.items():
                nxt[a + b] = nxt.get(a + b, 0) + x * y
        powers.append(nxt)
    out: dict = {}
    for fs in enumerate_planted_forests_star(n, bound):
        for d, x in powers[fs.edges].items():
            out[d] = out.get(d, 0) + x
    return out


def nap_dim_oracle(n: int, dim_d: int, bound: int = DEFAULT_BOUND) -> int:
    return len(enumerate_rooted_trees(n, bound)) * dim_d ** (n - 1)


def irreducible_count(n: int, coalg: CoalgebraSpec, bound: int = DEFAULT_BOUND) -> int:
    """Number of irreducible C-trees on {1..n}."""
    count = 0
    for t in enumerate_decorated_trees(n, coalg.dim, bound):
        if not reducible_edges(t, coalg.unit):
            count += 1
    return count


# algebras over based cacti

@dataclass
class AlgebraReport:
    passed: bool
    violation: str | None = None


def _mult(tables, c, x, y, f):
    """mu_c(x, y) for coefficient vectors x, y."""
    r = len(x)
    out = [f.zero] * r
    tab = tables[c]
    for a in range(r):
        if x[a] == 0:
            continue
        for b in range(r):
            if y[b] == 0:
                continue
            w = f.mul(x[a], y[b])
            for t, z in enumerate(tab[a][b]):
                if z != 0:
                    out[t] = f.add(out[t], f.mul(w, z))
    return out


def check_bcact_algebra(tables: dict, coalg: CoalgebraSpec) -> AlgebraReport:
    """Check the two relation families of based cacti on all basis triples.

    ``tables[c][a][b]`` is the coefficient vector of mu_c(e_a, e_b).
    """
    f = coalg.field
    labels = range(coalg.dim)
    if set(tables) != set(labels):
        raise TreeError("need one product table per coalgebra basis element")
    r = len(tables[coalg.unit])
    for c in labels:
        tab = tables[c]
        if len(tab) != r or any(len(row) != r or any(len(v) != r for v in row) for row in tab):
            raise TreeError("product tables have inconsistent dimensions")
    tables = {c: [[[f.coerce(z) for z in v] for v in row] for row in tables[c]] for c in labels}
    basis = [[f.one if t == a else f.zero for t in range(r)] for a in range(r)]
    deg = coalg.degrees
    names = coalg.names
    for c1 in labels:
        for c2 in labels:
            sgn = -1 if deg[c1] * deg[c2] % 2 else 1
            for a, b, d in itertools.product(range(r), repeat=3):
                lhs = _mult(tables, c1, _mult(tables, c2, basis[a], basis[d], f), basis[b], f)
                rhs = _mult(tables, c2, _mult(tables, c1, basis[a], basis[b], f), basis[d], f)
                if sgn < 0:
                    rhs = [f.neg(x) for x in rhs]
                if lhs != rhs:
                    return AlgebraReport(False, f"nap relation fails for labels ({names[c1]}, {names[c2]}) "
                                                f"on basis ({a + 1}, {b + 1}, {d + 1})")
    u = coalg.unit
    for c in labels:
        for a, b, d in itertools.product(range(r), repeat=3):
            lhs = _mult(tables, c, basis[a], _mult(tables, u, basis[b], basis[d], f), f)
            rhs = [f.zero] * r
            for (c1, c2), mu in coalg.delta(c).items():
                term = _mult(tables, c1, _mult(tables, c2, basis[a], basis[b], f), basis[d], f)
                rhs = [f.add(x, f.mul(mu, y)) for x, y in zip(rhs, term)]
            if lhs != rhs:
                return AlgebraReport(False, f"point relation fails for label {names[c]} "
                                            f"on basis ({a + 1}, {b + 1}, {d + 1})")
    return AlgebraReport(True)


def check_nap_algebra(tables: dict, degrees: Sequence[int], field: FieldSpec = Q) -> AlgebraReport:
    """Only the right-commutation family, for NAP_Y-algebras."""
    f = field
    labels = list(tables)
    r = len(tables[labels[0]])
    basis = [[f.one if t == a else f.zero for t in range(r)] for a in range(r)]
    tables = {c: [[[f.coerce(z) for z in v] for v in row] for row in tables[c]] for c in labels}
    for c1 in labels:
        for c2 in labels:
            sgn = -1 if degrees[c1] * degrees[c2] % 2 else 1
            for a, b, d in itertools.product(range(r), repeat=3):
                lhs = _mult(tables, c1, _mult(tables, c2, basis[a], basis[d], f), basis[b], f)
                rhs = _mult(tables, c2, _mult(tables, c1, basis[a], basis[b], f), basis[d], f)
                if sgn < 0:
                    rhs = [f.neg(x) for x in rhs]
                if lhs != rhs:
                    return AlgebraReport(False, f"nap relation fails for labels ({c1}, {c2})")
    return AlgebraReport(True)


def nap_algebra_from_perm(perm_table: list, maps: dict, field: FieldSpec = Q) -> dict:
    """mu_y(a, b) = a . g_y(b) for a Perm product and endomorphisms g_y (matrices acting on columns)."""
    f = field
    r = len(perm_table)
    ptab = {0: [[[f.coerce(z) for z in v] for v in row] for row in perm_table]}
    out = {}
    for y, g in maps.items():
        tab = []
        for a in range(r):
            row = []
            for b in range(r):
                gb = [f.coerce(g[t][b]) for t in range(r)]
                ea = [f.one if t == a else f.zero for t in range(r)]
                row.append(_mult(ptab, 0, ea, gb, f))
            tab.append(row)
        out[y] = tab
    return out


def example_algebra(p: Sequence[Sequence[int]], field: FieldSpec = Q) -> dict:
    """The two-dimensional algebra {a, b} over the two-point coalgebra.

    Label 0 (the base point) carries the Perm product, label 1 the product
    built from the matrix p.
    """
    z = [0, 0]
    dot0 = [[[1, 0], z], [[0, 1], z]]  # a.a = a, a.b = 0, b.a = b, b.b = 0
    dot1 = [[[p[0][0], p[0][1]], z], [[p[1][0], p[1][1]], z]]
    return {0: dot0, 1: dot1}


# serialization

def dumps_tree(t: DecoratedTree, names: Sequence[str] | None = None) -> str:
    tr = t.tree
    nm = (lambda a: names[a]) if names else str
    parents = ", ".join(f"{v}->{tr.parent(v)}" for v in tr.targets)
    labels = ", ".join(f"{v}:{nm(a)}" for v, a in zip(tr.targets, t.labels))
    return f"root:{tr.root}; parents: {parents}; labels: {labels}"


def loads_tree(text: str, names: Sequence[str] | None = None) -> DecoratedTree:
    parts = [p.strip() for p in text.split(";")]
    if len(parts) != 3 or not parts[0].startswith("root:") or not parts[1].startswith("parents:") \
            or not parts[2].startswith("labels:"):
        raise TreeError(f"malformed tree {text!r}")
    root = int(parts[0][5:])
    edges = {}
    body = parts[1][8:].strip()
    for item in filter(None, (x.strip() for x in body.split(","))):
        v, p = item.split("->")
        edges[int(v)] = int(p)
    labels = {}
    body = parts[2][7:].strip()
    for item in filter(None, (x.strip() for x in body.split(","))):
        v, a = item.split(":")
        a = a.strip()
        labels[int(v)] = names.index(a) if names else int(a)
    n = len(edges) + 1
    if set(edges) != set(labels):
        raise TreeError("labels must match the non-root vertices")
    return _make(n, root, edges, labels)


def random_decorated_tree(rng: random.Random, n: int, nlabels: int) -> DecoratedTree:
    root = rng.randint(1, n)
    order = [root] + rng.sample([v for v in range(1, n + 1) if v != root], n - 1)
    edges = {}
    for idx in range(1, n):
        edges[order[idx]] = order[rng.randrange(idx)]
    t = RootedTree.from_edges(n, root, edges)
    return DecoratedTree(t, tuple(rng.randrange(nlabels) for _ in range(n - 1)))
