"""Partial conjugations of free products.

The generator alpha^g_ij acts on G_1 * ... * G_n by conjugating every letter of
the factor G_j by g placed in G_i, h -> g_i^-1 h g_i, and fixes the other
factors.  Products are composition of maps: (ab)(w) = a(b(w)).  With this
convention alpha^g_ij alpha^h_ij = alpha^gh_ij for any group G.
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .treemodel import DecoratedTree, RootedTree, nap_compose_trees


class GroupError(ValueError):
    pass


class GroupParseError(GroupError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col = line, col


class GroupSpec:
    """Either the integers (elements are ints) or a finite group given by its
    multiplication table (elements are indices 0..order-1)."""

    def __init__(self, kind: str, table: Sequence[Sequence[int]] | None = None,
                 names: Sequence[str] | None = None, name: str = ""):
        if kind not in ("integers", "finite"):
            raise GroupError(f"unknown group kind {kind!r}")
        self.kind = kind
        self.name = name or ("Z" if kind == "integers" else "finite")
        if kind == "integers":
            self.table = None
            self.names = None
            self.identity = 0
            return
        if not table:
            raise GroupError("a finite group needs a multiplication table")
        k = len(table)
        self.table = [list(row) for row in table]
        if any(len(row) != k or any(not 0 <= x < k for x in row) for row in self.table):
            raise GroupError("multiplication table must be square with entries in range")
        self.names = list(names) if names else [str(i) for i in range(k)]
        ids = [e for e in range(k) if all(self.table[e][x] == x == self.table[x][e] for x in range(k))]
        if not ids:
            raise GroupError("table has no identity element")
        self.identity = ids[0]
        for a, b, c in itertools.product(range(k), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise GroupError(f"table is not associative at ({self.names[a]}, {self.names[b]}, {self.names[c]})")
        self._inv = []
        for a in range(k):
            inv = [b for b in range(k) if self.table[a][b] == self.identity]
            if not inv:
                raise GroupError(f"{self.names[a]} has no inverse")
            self._inv.append(inv[0])

    @property
    def order(self) -> int | None:
        return None if self.table is None else len(self.table)

    def mul(self, a, b):
        return a + b if self.table is None else self.table[a][b]

    def inv(self, a):
        return -a if self.table is None else self._inv[a]

    def is_identity(self, a) -> bool:
        return a == self.identity

    def elements(self) -> list:
        if self.table is None:
            raise GroupError("the integers have no finite element list; use a window")
        return list(range(len(self.table)))

    def sample(self, window: int = 3) -> list:
        """All elements of a finite group, or -window..window for the integers."""
        if self.table is None:
            return list(range(-window, window + 1))
        return self.elements()

    def label(self, a) -> str:
        return str(a) if self.names is None else self.names[a]

    def __repr__(self):
        return f"GroupSpec({self.name})"


def integers() -> GroupSpec:
    return GroupSpec("integers", name="Z")


def symmetric_group(k: int = 3) -> GroupSpec:
    perms = sorted(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    names = ["".join(str(x + 1) for x in p) for p in perms]
    return GroupSpec("finite", table, names, f"S{k}")


def cyclic_group(k: int) -> GroupSpec:
    if k < 1:
        raise GroupError("cyclic group order must be positive")
    return GroupSpec("finite", [[(a + b) % k for b in range(k)] for a in range(k)],
                     [str(a) for a in range(k)], f"C{k}")


def group_preset(name: str) -> GroupSpec:
    key = name.strip()
    if key.upper() == "Z":
        return integers()
    m = re.fullmatch(r"([SC])(\d+)", key.upper())
    if m:
        k = int(m.group(2))
        return symmetric_group(k) if m.group(1) == "S" else cyclic_group(k)
    raise GroupError(f"unknown group {name!r}; use Z, S<k> or C<k>")


def loads_group(text: str) -> GroupSpec:
    """Finite group from text:

        elements e a b
        e : e a b
        a : a b e
        b : b e a

    Row x lists x*y for y in the order of the ``elements`` line.
    """
    names: list | None = None
    rows: dict = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if body.startswith("elements"):
            if names is not None:
                raise GroupParseError(ln, col, "elements declared twice")
            names = body.split()[1:]
            if not names or len(set(names)) != len(names):
                raise GroupParseError(ln, col, "elements must be distinct and nonempty")
            continue
        if names is None:
            raise GroupParseError(ln, col, "expected an 'elements' line first")
        if ":" not in body:
            raise GroupParseError(ln, col, "expected '<element> : <products>'")
        head, tail = body.split(":", 1)
        head = head.strip()
        if head not in names:
            raise GroupParseError(ln, col, f"unknown element {head!r}")
        entries = tail.split()
        if len(entries) != len(names):
            after = line.index(":") + 1
            after += len(line[after:]) - len(line[after:].lstrip())
            raise GroupParseError(ln, after + 1, f"row needs {len(names)} entries")
        row = []
        for e in entries:
            if e not in names:
                raise GroupParseError(ln, line.index(e, line.index(":")) + 1, f"unknown element {e!r}")
            row.append(names.index(e))
        rows[head] = row
    if names is None:
        raise GroupParseError(1, 1, "empty group file")
    missing = [x for x in names if x not in rows]
    if missing:
        raise GroupParseError(len(text.splitlines()) or 1, 1, f"missing rows for {missing}")
    return GroupSpec("finite", [rows[x] for x in names], names, "file")


def dumps_group(G: GroupSpec) -> str:
    if G.table is None:
        raise GroupError("the integers have no table")
    lines = ["elements " + " ".join(G.names)]
    for a, row in enumerate(G.table):
        lines.append(f"{G.names[a]} : " + " ".join(G.names[b] for b in row))
    return "\n".join(lines) + "\n"


# free products

def reduce_word(letters: Iterable[tuple], G: GroupSpec) -> tuple:
    """Merge adjacent letters from the same factor and drop identities."""
    out: list = []
    for k, g in letters:
        if G.is_identity(g):
            continue
        if out and out[-1][0] == k:
            h = G.mul(out[-1][1], g)
            out.pop()
            if not G.is_identity(h):
                out.append((k, h))
        else:
            out.append((k, g))
    return tuple(out)


@dataclass(frozen=True)
class FreeProductWord:
    letters: tuple = ()

    @classmethod
    def of(cls, letters, G: GroupSpec) -> "FreeProductWord":
        return cls(reduce_word(letters, G))

    def format(self, G: GroupSpec) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"x{k}^{G.label(g)}" for k, g in self.letters)


def multiply(u: FreeProductWord, v: FreeProductWord, G: GroupSpec) -> FreeProductWord:
    return FreeProductWord(reduce_word(u.letters + v.letters, G))


@dataclass(frozen=True)
class PartialConj:
    i: int
    j: int
    g: object

    def check(self, n: int, root: int = 1):
        if not (1 <= self.i <= n and 1 <= self.j <= n) or self.i == self.j or self.j == root:
            raise GroupError(f"alpha_{self.i}{self.j} is not a generator at arity {n} with root {root}")

    def inverse(self, G: GroupSpec) -> "PartialConj":
        return PartialConj(self.i, self.j, G.inv(self.g))

    def format(self, G: GroupSpec) -> str:
        return f"a^{G.label(self.g)}_{self.i},{self.j}"


def apply_generator(a: PartialConj, w: FreeProductWord, G: GroupSpec) -> FreeProductWord:
    gi, ginv = (a.i, a.g), (a.i, G.inv(a.g))
    out = []
    for k, h in w.letters:
        if k == a.j:
            out.extend([ginv, (k, h), gi])
        else:
            out.append((k, h))
    return FreeProductWord(reduce_word(out, G))


def apply_product(word: Sequence[PartialConj], w: FreeProductWord, G: GroupSpec) -> FreeProductWord:
    """Apply a product a_1 a_2 ... a_r, rightmost factor first."""
    for a in reversed(word):
        w = apply_generator(a, w, G)
    return w


def generator_words(n: int, G: GroupSpec) -> list:
    """Generators of the free product: one letter per factor and per nonidentity
    element of a finite G, or x_k itself for G = Z."""
    if G.table is None:
        return [FreeProductWord(((k, 1),)) for k in range(1, n + 1)]
    return [FreeProductWord(((k, g),)) for k in range(1, n + 1) for g in G.elements()
            if not G.is_identity(g)]


def same_automorphism(u: Sequence[PartialConj], v: Sequence[PartialConj], n: int, G: GroupSpec) -> bool:
    return all(apply_product(u, x, G) == apply_product(v, x, G) for x in generator_words(n, G))


def commutator(a: Sequence[PartialConj], b: Sequence[PartialConj], G: GroupSpec) -> list:
    ainv = [x.inverse(G) for x in reversed(a)]
    binv = [x.inverse(G) for x in reversed(b)]
    return list(a) + list(b) + ainv + binv


# the presentation

FAMILIES = ("power", "commute_ik", "commute_kl", "twisted", "weakened")


@dataclass
class RelationReport:
    n: int
    group: str
    checked: dict = dc_field(default_factory=dict)
    failures: dict = dc_field(default_factory=dict)  # family -> list of descriptions

    def passes(self, family: str) -> bool:
        return not self.failures.get(family)

    @property
    def ok(self) -> bool:
        return all(self.passes(f) for f in self.checked if f != "weakened")


def _instances(n: int, family: str):
    """Index tuples of a relation family, generators alpha_ij with j >= 2."""
    V = range(1, n + 1)
    if family == "power":
        for i, j in itertools.product(V, V):
            if i != j and j >= 2:
                yield (i, j)
    elif family == "commute_ik":
        for i, j, k in itertools.permutations(V, 3):
            if j >= 2 and k >= 2:
                yield (i, j, k)
    elif family == "commute_kl":
        for i, j, k, l in itertools.permutations(V, 4):
            if j >= 2 and l >= 2:
                yield (i, j, k, l)
    elif family in ("twisted", "weakened"):
        for i, j, k in itertools.permutations(V, 3):
            if j >= 2 and k >= 2:
                yield (i, j, k)
    else:
        raise GroupError(f"unknown relation family {family!r}")


def _sides(family: str, idx: tuple, g, h, G: GroupSpec):
    A = PartialConj
    if family == "power":
        i, j = idx
        return [A(i, j, g), A(i, j, h)], [A(i, j, G.mul(g, h))]
    if family == "commute_ik":
        i, j, k = idx
        return commutator([A(i, j, g)], [A(i, k, h)], G), []
    if family == "commute_kl":
        i, j, k, l = idx
        return commutator([A(i, j, g)], [A(k, l, h)], G), []
    if family == "twisted":
        i, j, k = idx
        return commutator([A(i, j, g), A(i, k, g)], [A(j, k, h)], G), []
    if family == "weakened":
        i, j, k = idx
        return commutator([A(i, j, g)], [A(j, k, h)], G), []
    raise GroupError(f"unknown relation family {family!r}")


def verify_relations(n: int, G: GroupSpec, sample: Sequence | None = None,
                     families: Sequence[str] = FAMILIES, max_failures: int = 5,
                     jobs: int = 1) -> RelationReport:
    """Check each relation family on every admissible index tuple and every
    pair (g, h) from the sample, comparing both sides on the free generators."""
    sample = list(G.sample() if sample is None else sample)
    rep = RelationReport(n, G.name)
    tasks = [(fam, idx) for fam in families for idx in _instances(n, fam)]

    def run(task):
        fam, idx = task
        bad = []
        for g, h in itertools.product(sample, repeat=2):
            lhs, rhs = _sides(fam, idx, g, h, G)
            if not same_automorphism(lhs, rhs, n, G):
                bad.append(f"{fam} {idx} g={G.label(g)} h={G.label(h)}")
                break
        return fam, len(sample) ** 2, bad

    results = _map(run, tasks, jobs)
    for fam in families:
        rep.checked.setdefault(fam, 0)
    for fam, count, bad in results:
        rep.checked[fam] += count
        if bad:
            lst = rep.failures.setdefault(fam, [])
            if len(lst) < max_failures:
                lst.extend(bad)
    return rep


def _map(fn, items, jobs: int):
    if jobs and jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# trees labelled by group elements

def above(tree: RootedTree, i: int, j: int) -> list:
    """A_ij: the vertices reached from i through the edge <ij>, ascending."""
    if tree.parent(j) != i:
        raise GroupError(f"<{i}{j}> is not an edge")
    return sorted([j] + tree.descendants(j))


def expand_tree_element(tree: RootedTree, edge: tuple, g) -> list:
    """The product of alpha^g_iv over v in A_ij for the tree with <ij> labelled g."""
    i, j = edge
    return [PartialConj(i, v, g) for v in above(tree, i, j)]


def expand_labelled(tree: RootedTree, labels: dict, G: GroupSpec) -> list:
    """Product over the nonidentity edges in ascending target order."""
    out = []
    for v in tree.targets:
        g = labels.get(v, G.identity)
        if not G.is_identity(g):
            out.extend(expand_tree_element(tree, (tree.parent(v), v), g))
    return out


def reduce_group_tree(tree: RootedTree, labels: dict, edge: tuple, G: GroupSpec):
    """One reduction of an identity edge <ij> with i not the root: <ij> becomes
    <kj> and takes the label of <ki> (the diagonal of a group-like element)."""
    i, j = edge
    if tree.parent(j) != i or i == tree.root or not G.is_identity(labels.get(j, G.identity)):
        raise GroupError(f"<{i}{j}> is not reducible")
    k = tree.parent(i)
    edges = {v: tree.parent(v) for v in tree.targets}
    edges[j] = k
    new = dict(labels)
    new[j] = labels.get(i, G.identity)
    return RootedTree.from_edges(tree.n, tree.root, edges), new


def generator_tree(n: int, root: int, i: int, j: int) -> RootedTree:
    """T(ij)_r: the edge <ij> and edges from the root to every other vertex."""
    edges = {v: root for v in range(1, n + 1) if v not in (root, j)}
    edges[j] = i
    return RootedTree.from_edges(n, root, edges)


def corolla(m: int, root: int) -> RootedTree:
    return RootedTree.from_edges(m, root, {v: root for v in range(1, m + 1) if v != root})


def _decorate(tree: RootedTree, labels: dict, G: GroupSpec) -> DecoratedTree:
    return DecoratedTree(tree, tuple(labels.get(v, G.identity) for v in tree.targets))


def compose_labelled(t1: RootedTree, l1: dict, slot: int, t2: RootedTree, l2: dict, G: GroupSpec):
    """Grafting of group-labelled trees through the NAP composition."""
    _, t = nap_compose_trees(_decorate(t1, l1, G), slot, _decorate(t2, l2, G), defaultdict(int))
    return t.tree, t.label_map()


def formula_left(i: int, j: int, a: int, g) -> list:
    """e o_a alpha^g_ij."""
    return [PartialConj(i + a - 1, j + a - 1, g)]


def formula_right(i: int, j: int, b: int, m: int, s: int, g) -> list:
    """alpha^g_ij o_b e with e in arity m and root s."""
    def shift(x):
        if x < b:
            return x
        if x > b:
            return x + m - 1
        return x + s - 1

    if b == j:
        return [PartialConj(shift(i), l + b - 1, g) for l in range(1, m + 1)]
    return [PartialConj(shift(i), shift(j), g)]


@dataclass
class CompositionReport:
    n: int
    m: int
    group: str
    checked: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.failures


def verify_composition_formulas(n: int, m: int, G: GroupSpec, sample: Sequence | None = None,
                                max_failures: int = 5) -> CompositionReport:
    """Compose generator trees with identity corollas, expand the result, and
    compare with the index formulas, for every root, generator and slot."""
    if n < 2 or m < 2:
        raise GroupError("need n, m >= 2")
    sample = [g for g in (G.sample() if sample is None else sample) if not G.is_identity(g)]
    rep = CompositionReport(n, m, G.name)
    N = n + m - 1
    for r, s in itertools.product(range(1, n + 1), range(1, m + 1)):
        cs = corolla(m, s)
        for i, j in itertools.permutations(range(1, n + 1), 2):
            if j == r:
                continue
            t = generator_tree(n, r, i, j)
            for g in sample:
                lab = {j: g}
                for a in range(1, m + 1):
                    tree, labels = compose_labelled(cs, {}, a, t, lab, G)
                    lhs = expand_labelled(tree, labels, G)
                    rhs = formula_left(i, j, a, g)
                    rep.checked += 1
                    if not same_automorphism(lhs, rhs, N, G) and len(rep.failures) < max_failures:
                        rep.failures.append(f"e(m={m},s={s}) o_{a} a^{G.label(g)}_{i},{j} (n={n},r={r})")
                for b in range(1, n + 1):
                    tree, labels = compose_labelled(t, lab, b, cs, {}, G)
                    lhs = expand_labelled(tree, labels, G)
                    rhs = formula_right(i, j, b, m, s, g)
                    rep.checked += 1
                    if not same_automorphism(lhs, rhs, N, G) and len(rep.failures) < max_failures:
                        rep.failures.append(f"a^{G.label(g)}_{i},{j} (n={n},r={r}) o_{b} e(m={m},s={s})")
    return rep


__all__ = [
    "CompositionReport", "FreeProductWord", "GroupError", "GroupParseError", "GroupSpec",
    "PartialConj", "RelationReport", "above", "apply_generator", "apply_product", "commutator",
    "compose_labelled", "corolla", "cyclic_group", "dumps_group", "expand_labelled",
    "expand_tree_element", "formula_left", "formula_right", "generator_tree", "group_preset",
    "integers", "loads_group", "multiply", "reduce_group_tree", "reduce_word",
    "same_automorphism", "symmetric_group", "verify_composition_formulas", "verify_relations",
]
