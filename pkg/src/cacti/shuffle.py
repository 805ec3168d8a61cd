"""The free shuffle operad on binary generators.

A tree monomial is a leaf label ``int`` or a tuple ``(g, left, right)`` where
``g`` indexes a shuffle generator of a :class:`Signature`.  Shuffle form means
that at every vertex the left child has the smaller minimal leaf.  The tensor
of generator decorations is read in depth-first planar (pre-)order, and every
sign comes from reordering that tensor.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .linalg import add_scaled
from .scalars import FieldSpec, Q, parse_scalar
from .signs import reorder_sign

SYMMETRIES = ("none", "symmetric", "antisymmetric")


class ShuffleError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int = 0
    symmetry: str = "none"
    arity: int = 2

    def __post_init__(self):
        if self.arity != 2:
            raise ShuffleError("only binary generators are supported")
        if self.symmetry not in SYMMETRIES:
            raise ShuffleError(f"unknown symmetry {self.symmetry!r}")


@dataclass(frozen=True)
class ShuffleGen:
    base: str
    flipped: bool
    degree: int
    symmetry: str

    @property
    def name(self) -> str:
        return self.base + ("~" if self.flipped else "")


class Signature:
    """Shuffle generators: every generator without symmetry gives g and g.(12).

    Index order is the precedence d1 < ... < dn < d1.(12) < ... < dn.(12).
    """

    def __init__(self, generators: Sequence[GeneratorSpec]):
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ShuffleError("duplicate generator names")
        self.generators = tuple(generators)
        gens = [ShuffleGen(g.name, False, g.degree, g.symmetry) for g in generators]
        gens += [ShuffleGen(g.name, True, g.degree, g.symmetry) for g in generators if g.symmetry == "none"]
        self.gens = tuple(gens)
        self.index = {(s.base, s.flipped): i for i, s in enumerate(gens)}
        self.graded = any(g.degree % 2 for g in generators)
        self.spec = {g.name: g for g in generators}

    def __eq__(self, other):
        return isinstance(other, Signature) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __len__(self):
        return len(self.gens)

    def degree(self, g: int) -> int:
        return self.gens[g].degree

    def swap(self, g: int) -> tuple:
        """(generator, sign) with x.(12) for the shuffle generator x."""
        s = self.gens[g]
        if s.symmetry == "none":
            return self.index[(s.base, not s.flipped)], 1
        return g, (1 if s.symmetry == "symmetric" else -1)

    def lookup(self, name: str) -> int:
        if name.endswith("~"):
            key = (name[:-1], True)
        else:
            key = (name, False)
        if key not in self.index:
            raise ShuffleError(f"unknown generator {name!r}")
        return self.index[key]

    def names(self) -> list:
        return [g.name for g in self.generators]


# basic monomial combinatorics

@lru_cache(maxsize=None)
def minleaf(m) -> int:
    return m if isinstance(m, int) else minleaf(m[1])


@lru_cache(maxsize=None)
def leaves(m) -> tuple:
    return (m,) if isinstance(m, int) else leaves(m[1]) + leaves(m[2])


def arity(m) -> int:
    return len(leaves(m))


@lru_cache(maxsize=None)
def weight(m) -> int:
    return 0 if isinstance(m, int) else 1 + weight(m[1]) + weight(m[2])


@lru_cache(maxsize=None)
def preorder(m) -> tuple:
    """Generators in depth-first planar order."""
    return () if isinstance(m, int) else (m[0],) + preorder(m[1]) + preorder(m[2])


def total_degree(m, sig: Signature) -> int:
    return sum(sig.degree(g) for g in preorder(m))


def is_shuffle(m) -> bool:
    if isinstance(m, int):
        return True
    return minleaf(m[1]) < minleaf(m[2]) and is_shuffle(m[1]) and is_shuffle(m[2])


def normalize(expr, sig: Signature) -> tuple:
    """Bring an expression with arbitrary child order to shuffle form.

    Returns (sign, monomial).  Children are swapped where needed, replacing the
    generator by its transpose and picking up the Koszul sign of exchanging
    the two decoration blocks.
    """
    s, m, _ = _normalize(expr, sig)
    return s, m


def _normalize(expr, sig):
    if isinstance(expr, int):
        return 1, expr, 0
    g, a, b = expr
    sa, a, da = _normalize(a, sig)
    sb, b, db = _normalize(b, sig)
    s = sa * sb
    if minleaf(a) > minleaf(b):
        g, t = sig.swap(g)
        s *= t
        if (da * db) % 2:
            s = -s
        a, b = b, a
    return s, (g, a, b), da + db + sig.degree(g)


def relabel(m, mapping):
    """Replace leaf i by mapping[i] (result generally not in shuffle form)."""
    if isinstance(m, int):
        return mapping[m]
    return (m[0], relabel(m[1], mapping), relabel(m[2], mapping))


def standardize(m):
    """Relabel leaves order-preservingly to 1..k."""
    ls = sorted(leaves(m))
    return relabel(m, {x: i + 1 for i, x in enumerate(ls)})


def all_monomials(sig: Signature, n: int) -> list:
    return list(_all_monomials(sig, n))


@lru_cache(maxsize=None)
def _all_monomials(sig: Signature, n: int) -> tuple:
    return tuple(_gen_on(sig, tuple(range(1, n + 1))))


def _gen_on(sig: Signature, labels: tuple) -> Iterator:
    """All shuffle monomials with the given (sorted) leaf labels."""
    if len(labels) == 1:
        yield labels[0]
        return
    first, rest = labels[0], labels[1:]
    for k in range(0, len(rest)):
        for extra in itertools.combinations(rest, k):
            left = (first,) + extra
            right = tuple(x for x in rest if x not in extra)
            for a in _gen_on(sig, left):
                for b in _gen_on(sig, right):
                    for g in range(len(sig)):
                        yield (g, a, b)


def free_dims(sig: Signature, n: int) -> int:
    """Number of shuffle monomials of arity n: (2n-3)!! * k^(n-1)."""
    dfact = 1
    for x in range(1, 2 * n - 2, 2):
        dfact *= x
    return dfact * len(sig) ** (n - 1)


# monomial orders

class MonomialOrder:
    """``path_lex``: leaf sequence, then path sequence (words compared by length
    then lexicographically in generator precedence).  ``count_first`` first
    compares how many generators from a distinguished set are used, then the
    number of other generators on the path to each leaf, then ``path_lex``.

    ``paths_first`` swaps the leaf and path comparisons; ``reverse_words``
    reads each path from the leaf up.  ``count_sign`` and ``depth_sign`` of -1
    prefer fewer distinguished generators and shallower leaves.  Larger keys lead.
    """

    def __init__(self, kind: str = "path_lex", distinguished: Iterable[str] = (),
                 paths_first: bool = False, reverse_words: bool = False,
                 count_sign: int = 1, depth_sign: int = 1):
        if kind not in ("path_lex", "count_first"):
            raise ShuffleError(f"unknown order {kind!r}")
        self.kind = kind
        self.distinguished = frozenset(distinguished)
        self.paths_first = paths_first
        self.reverse_words = reverse_words
        if count_sign not in (1, -1) or depth_sign not in (1, -1):
            raise ShuffleError("count_sign and depth_sign must be 1 or -1")
        self.count_sign = count_sign
        self.depth_sign = depth_sign
        self._cache: dict = {}

    def _id(self):
        return (self.kind, self.distinguished, self.paths_first, self.reverse_words,
                self.count_sign, self.depth_sign)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._id() == other._id()

    def __hash__(self):
        return hash(self._id())

    def __repr__(self):
        extra = "".join(f", {k}=True" for k in ("paths_first", "reverse_words") if getattr(self, k))
        extra += "".join(f", {k}=-1" for k in ("count_sign", "depth_sign") if getattr(self, k) < 0)
        if self.kind == "count_first":
            return f"MonomialOrder(count_first, {sorted(self.distinguished)}{extra})"
        return f"MonomialOrder(path_lex{extra})"

    def key(self, m, sig: Signature):
        k = self._cache.get((m, sig))
        if k is None:
            words = {}
            _paths(m, (), words)
            step = -1 if self.reverse_words else 1
            pk = tuple((len(words[i]), words[i][::step]) for i in sorted(words))
            k = (pk, leaves(m)) if self.paths_first else (leaves(m), pk)
            if self.kind == "count_first":
                dist = self.distinguished
                cnt = self.count_sign * sum(1 for g in preorder(m) if sig.gens[g].base in dist)
                depth = tuple(self.depth_sign * sum(1 for g in words[i] if sig.gens[g].base not in dist)
                              for i in sorted(words))
                k = (cnt, depth) + k
            self._cache[(m, sig)] = k
        return k


def _paths(m, prefix, out):
    if isinstance(m, int):
        out[m] = prefix
        return
    p = prefix + (m[0],)
    _paths(m[1], p, out)
    _paths(m[2], p, out)


def compare(order: MonomialOrder, m1, m2, sig: Signature) -> int:
    if arity(m1) != arity(m2):
        raise ShuffleError("monomials of different arity are not comparable")
    k1, k2 = order.key(m1, sig), order.key(m2, sig)
    return (k1 > k2) - (k1 < k2)


# elements

class OperadElement:
    """Linear combination of shuffle monomials with raw field coefficients."""

    __slots__ = ("terms", "sig", "field")

    def __init__(self, terms: dict, sig: Signature, field: FieldSpec = Q):
        self.sig = sig
        self.field = field
        self.terms = {m: c for m, c in terms.items() if c != 0}

    def copy(self) -> "OperadElement":
        return OperadElement(dict(self.terms), self.sig, self.field)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, OperadElement) and self.terms == other.terms and self.field == other.field

    def __add__(self, other):
        t = dict(self.terms)
        add_scaled(self.field, t, other.terms, self.field.one)
        return OperadElement(t, self.sig, self.field)

    def __sub__(self, other):
        t = dict(self.terms)
        add_scaled(self.field, t, other.terms, self.field.neg(self.field.one))
        return OperadElement(t, self.sig, self.field)

    def scaled(self, c) -> "OperadElement":
        f = self.field
        return OperadElement({m: f.mul(c, v) for m, v in self.terms.items()}, self.sig, f)

    def sorted_terms(self, order: MonomialOrder) -> list:
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0], self.sig), reverse=True)

    def leading(self, order: MonomialOrder):
        return max(self.terms, key=lambda m: order.key(m, self.sig))

    def monic(self, order: MonomialOrder) -> "OperadElement":
        lt = self.leading(order)
        return self.scaled(self.field.inv(self.terms[lt]))

    @property
    def weight(self) -> int:
        ws = {weight(m) for m in self.terms}
        if len(ws) != 1:
            raise ShuffleError("element is not weight-homogeneous")
        return ws.pop()

    @property
    def arity(self) -> int:
        return arity(next(iter(self.terms)))

    def format(self, order: MonomialOrder | None = None) -> str:
        items = self.sorted_terms(order) if order else sorted(self.terms.items(), key=lambda x: repr(x[0]))
        return format_terms(items, self.sig, self.field)

    def __repr__(self):
        return f"OperadElement({self.format(MonomialOrder())})"


def format_monomial(m, sig: Signature) -> str:
    """Symmetric-operad notation: a transposed generator is printed with its
    arguments swapped, e.g. g~(1,2) is written g(2,1)."""
    if isinstance(m, int):
        return str(m)
    s = sig.gens[m[0]]
    a, b = format_monomial(m[1], sig), format_monomial(m[2], sig)
    if s.flipped:
        a, b = b, a
    return f"{s.base}({a},{b})"


def format_terms(items, sig, field: FieldSpec) -> str:
    if not items:
        return "0"
    out = []
    for i, (m, c) in enumerate(items):
        if field.characteristic == 0:
            neg = c < 0
            a = -c if neg else c
        else:
            neg, a = False, c
        txt = f"{a}*{format_monomial(m, sig)}"
        if i == 0:
            out.append(("-" if neg else "") + txt)
        else:
            out.append((" - " if neg else " + ") + txt)
    return "".join(out)


# parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_!]*~?)|(?P<op>[-+*(),]))")


class ExprParseError(ValueError):
    def __init__(self, col: int, msg: str):
        super().__init__(f"column {col}: {msg}")
        self.col, self.msg = col, msg


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ExprParseError(bad + 1, f"unexpected character {text[bad]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


def parse_expression(text: str, sig: Signature) -> tuple:
    """Parse one monomial expression such as ``g(1, h(3, 2))``; returns the raw
    (possibly non-shuffle) tree."""
    toks = _tokens(text)
    tree, pos = _parse_tree(toks, 0, sig)
    if toks[pos][0] != "end":
        raise ExprParseError(toks[pos][2], "trailing input")
    return tree


def _parse_tree(toks, pos, sig):
    kind, val, col = toks[pos]
    if kind == "num":
        if "/" in val or int(val) < 1:
            raise ExprParseError(col, f"bad leaf {val!r}")
        return int(val), pos + 1
    if kind != "name":
        raise ExprParseError(col, "expected a generator or a leaf")
    try:
        g = sig.lookup(val)
    except ShuffleError as e:
        raise ExprParseError(col, str(e)) from None
    args = []
    if toks[pos + 1][1] != "(":
        raise ExprParseError(toks[pos + 1][2], "expected '('")
    pos += 2
    while True:
        t, pos = _parse_tree(toks, pos, sig)
        args.append(t)
        k, v, c = toks[pos]
        if v == ",":
            pos += 1
            continue
        if v == ")":
            pos += 1
            break
        raise ExprParseError(c, "expected ',' or ')'")
    if len(args) != 2:
        raise ExprParseError(col, f"generator {val!r} is binary")
    return (g, args[0], args[1]), pos


def parse_element(text: str, sig: Signature, field: FieldSpec = Q) -> OperadElement:
    """Parse ``3/2*g(1,h(2,3)) - 1*h(g(1,3),2)``; terms are normalized to shuffle form."""
    toks = _tokens(text)
    pos = 0
    terms: dict = {}
    first = True
    arities = set()
    while toks[pos][0] != "end":
        sign = 1
        k, v, c = toks[pos]
        if v in "+-" and k == "op":
            sign = -1 if v == "-" else 1
            pos += 1
        elif not first:
            raise ExprParseError(c, "expected '+' or '-'")
        coeff = field.one
        k, v, c = toks[pos]
        if k == "num" and toks[pos + 1][1] == "*":
            try:
                coeff = parse_scalar(v, field)
            except (ArithmeticError, ValueError):
                raise ExprParseError(c, f"bad scalar {v!r}") from None
            pos += 2
        tree, pos = _parse_tree(toks, pos, sig)
        ls = leaves(tree) if not isinstance(tree, int) else (tree,)
        if sorted(ls) != list(range(1, len(ls) + 1)):
            raise ExprParseError(c, "leaves must be 1..n, each once")
        arities.add(len(ls))
        s, m = normalize(tree, sig)
        val = coeff if s * sign > 0 else field.neg(coeff)
        w = field.add(terms.get(m, field.zero), val)
        if w == 0:
            terms.pop(m, None)
        else:
            terms[m] = w
        first = False
    if len(arities) > 1:
        raise ExprParseError(1, "terms of different arity")
    return OperadElement(terms, sig, field)


# occurrences, divisors and substitution

def subtree(m, path: tuple):
    for step in path:
        m = m[1 + step]
    return m


def replace_at(m, path: tuple, new):
    if not path:
        return new
    step = path[0]
    if step == 0:
        return (m[0], replace_at(m[1], path[1:], new), m[2])
    return (m[0], m[1], replace_at(m[2], path[1:], new))


def internal_paths(m, prefix=()) -> list:
    if isinstance(m, int):
        return []
    return [prefix] + internal_paths(m[1], prefix + (0,)) + internal_paths(m[2], prefix + (1,))


def _skeletons(node, path, budget):
    """Connected vertex sets containing ``node`` with at most ``budget`` vertices.

    Yields (paths, shape, inputs) where shape has input placeholders
    ('in', j) numbered in planar order and inputs lists the cut subtrees.
    """
    if budget < 1 or isinstance(node, int):
        return
    g, a, b = node
    left_opts = [((), ("in",), [a], 0)]
    for ps, sh, ins in _skeletons(a, path + (0,), budget - 1):
        left_opts.append((ps, sh, ins, len(ps)))
    right_opts = [((), ("in",), [b], 0)]
    for ps, sh, ins in _skeletons(b, path + (1,), budget - 1):
        right_opts.append((ps, sh, ins, len(ps)))
    for lp, lsh, lin, lw in left_opts:
        for rp, rsh, rin, rw in right_opts:
            if 1 + lw + rw > budget:
                continue
            yield (path,) + tuple(lp) + tuple(rp), (g, lsh, rsh), lin + rin


def _fill(shape, counter):
    if shape == ("in",):
        j = counter[0]
        counter[0] += 1
        return ("in", j)
    return (shape[0], _fill(shape[1], counter), _fill(shape[2], counter))


def _pattern(shape, ranks):
    if shape[0] == "in":
        return ranks[shape[1]]
    return (shape[0], _pattern(shape[1], ranks), _pattern(shape[2], ranks))


@dataclass(frozen=True)
class Occurrence:
    """A divisor of a monomial: a connected set of vertices given by paths."""

    top: tuple
    paths: frozenset
    pattern: object


def occurrences(m, max_weight: int, min_weight: int = 1) -> list:
    out = []
    for top in internal_paths(m):
        node = subtree(m, top)
        for ps, shape, inputs in _skeletons(node, top, max_weight):
            if len(ps) < min_weight:
                continue
            filled = _fill(shape, [0])
            order = sorted(range(len(inputs)), key=lambda j: minleaf(inputs[j]))
            ranks = {j: r + 1 for r, j in enumerate(order)}
            out.append(Occurrence(top, frozenset(ps), _pattern(filled, ranks)))
    return out


def find_divisors(m, leading: Iterable) -> list:
    """All occurrences of the given monomials inside m."""
    leading = set(leading)
    if not leading:
        return []
    maxw = max(weight(x) for x in leading)
    minw = min(weight(x) for x in leading)
    return [o for o in occurrences(m, maxw, minw) if o.pattern in leading]


def _walk(node, rel, in_set, items, inputs, degree, sig):
    """Preorder items of ``node`` with the occurrence vertices as single items
    and the cut subtrees as blocks."""
    if rel in in_set:
        key = ("s", rel)
        degree[key] = sig.degree(node[0])
        items.append(key)
        _walk(node[1], rel + (0,), in_set, items, inputs, degree, sig)
        _walk(node[2], rel + (1,), in_set, items, inputs, degree, sig)
    else:
        j = len(inputs)
        inputs.append(node)
        key = ("I", j)
        degree[key] = 0 if isinstance(node, int) else total_degree(node, sig)
        items.append(key)


def _build(t, by_rank, items, degree, sig, counter):
    if isinstance(t, int):
        j = by_rank[t]
        items.append(("I", j))
        return ("in", j)
    key = ("t", counter[0])
    counter[0] += 1
    degree[key] = sig.degree(t[0])
    items.append(key)
    a = _build(t[1], by_rank, items, degree, sig, counter)
    b = _build(t[2], by_rank, items, degree, sig, counter)
    return (t[0], a, b)


def _plug(shape, inputs):
    if shape[0] == "in":
        return inputs[shape[1]]
    return (shape[0], _plug(shape[1], inputs), _plug(shape[2], inputs))


def substitute(m, occ: Occurrence, element: dict, sig: Signature, field: FieldSpec) -> dict:
    """Replace the divisor ``occ`` of m by a linear combination of monomials of
    the same arity; returns the resulting linear combination."""
    node = subtree(m, occ.top)
    rel = {p[len(occ.top):] for p in occ.paths}
    items, inputs, degree = [], [], {}
    _walk(node, (), rel, items, inputs, degree, sig)
    order = sorted(range(len(inputs)), key=lambda j: minleaf(inputs[j]))
    by_rank = {r + 1: j for r, j in enumerate(order)}
    s_items = [x for x in items if x[0] == "s"]
    i_items = [x for x in items if x[0] == "I"]
    sign1 = reorder_sign(items, s_items + i_items, degree) if sig.graded else 1
    out: dict = {}
    for t, c in element.items():
        titems, tdeg = [], dict(degree)
        shape = _build(t, by_rank, titems, tdeg, sig, [0])
        new = _plug(shape, inputs)
        if sig.graded:
            t_only = [x for x in titems if x[0] == "t"]
            s = sign1 * reorder_sign(t_only + i_items, titems, tdeg)
        else:
            s = 1
        full = replace_at(m, occ.top, new)
        v = c if s > 0 else field.neg(c)
        w = field.add(out.get(full, field.zero), v)
        if w == 0:
            out.pop(full, None)
        else:
            out[full] = w
    return out


def shuffle_compose(m1, slot: int, m2, shuffle: Sequence[int] | None, sig: Signature) -> tuple:
    """Graft m2 at leaf ``slot`` of m1.

    ``shuffle`` lists the final labels taken by the leaves of m2 (sorted, its
    minimum must be the final label of ``slot``); ``None`` means the plain
    grafting with the leaves of m2 consecutive.  Returns (sign, monomial).
    """
    n, k = arity(m1), arity(m2)
    if not 1 <= slot <= n:
        raise ShuffleError(f"slot {slot} out of range")
    if shuffle is None:
        shuffle = list(range(slot, slot + k))
    shuffle = list(shuffle)
    if len(shuffle) != k or sorted(set(shuffle)) != shuffle or not all(1 <= x <= n + k - 1 for x in shuffle):
        raise ShuffleError("illegal shuffle")
    rest = [x for x in range(1, n + k) if x not in shuffle]
    old = [x for x in range(1, n + 1) if x != slot]
    mapping1 = dict(zip(old, rest))
    mapping1[slot] = shuffle[0]
    if [mapping1[x] for x in range(1, n + 1)] != sorted(mapping1.values()):
        raise ShuffleError("illegal shuffle: relabelling of the outer leaves is not monotone")
    mapping2 = {i + 1: x for i, x in enumerate(shuffle)}
    inner = relabel(m2, mapping2)
    outer = relabel(m1, {**mapping1, slot: -1})
    combined = _graft(outer, inner)
    s, mono = normalize(combined, sig)
    if s != 1 or mono != combined:
        raise ShuffleError("illegal shuffle: result is not a shuffle tree")
    # decorations m1 then m2 -> preorder of the result
    if sig.graded:
        d1 = [("a", i) for i in range(weight(m1))]
        d2 = [("b", i) for i in range(weight(m2))]
        deg = {("a", i): sig.degree(g) for i, g in enumerate(preorder(m1))}
        deg.update({("b", i): sig.degree(g) for i, g in enumerate(preorder(m2))})
        after = _graft_order(m1, slot, len(d2))
        s = reorder_sign(d1 + d2, after, deg)
    return s, mono


def _graft(outer, inner):
    if isinstance(outer, int):
        return inner if outer == -1 else outer
    return (outer[0], _graft(outer[1], inner), _graft(outer[2], inner))


def _graft_order(m1, slot, k2):
    out, counter = [], [0]

    def walk(t):
        if isinstance(t, int):
            if t == slot:
                out.extend(("b", i) for i in range(k2))
            return
        out.append(("a", counter[0]))
        counter[0] += 1
        walk(t[1])
        walk(t[2])

    walk(m1)
    return out


# reduction

class Rewriter:
    """Leading monomials of monic elements, with divisor lookup."""

    def __init__(self, sig: Signature, field: FieldSpec, order: MonomialOrder):
        self.sig, self.field, self.order = sig, field, order
        self.rules: dict = {}  # leading monomial -> terms dict (monic)
        self.weights: set = set()
        self._seen: dict = {}

    def add(self, lead, terms: dict):
        self.rules[lead] = terms
        self.weights.add(weight(lead))
        self._seen.clear()

    def divisor(self, m):
        if not self.rules:
            return None
        if m in self._seen:
            return self._seen[m]
        lo, hi = min(self.weights), max(self.weights)
        found = None
        for occ in occurrences(m, hi, lo):
            if occ.pattern in self.rules:
                found = occ
                break
        self._seen[m] = found
        return found

    def reduce(self, terms: dict) -> dict:
        f, sig, order = self.field, self.sig, self.order
        work = dict(terms)
        done: dict = {}
        while work:
            m = max(work, key=lambda x: order.key(x, sig))
            c = work.pop(m)
            occ = self.divisor(m)
            if occ is None:
                done[m] = c
                continue
            rep = substitute(m, occ, self.rules[occ.pattern], sig, f)
            lead_coeff = rep.pop(m)
            factor = f.neg(f.div(c, lead_coeff))
            add_scaled(f, work, rep, factor)
        return done


def reduce(e: OperadElement, rels: Sequence[OperadElement], order: MonomialOrder) -> OperadElement:
    """Long division of e by the relations, each made monic first."""
    rw = Rewriter(e.sig, e.field, order)
    for r in rels:
        if not r:
            continue
        lt = r.leading(order)
        lc = r.terms[lt]
        if lc == 0:
            raise ShuffleError(f"relation {r.format(order)} has a non-invertible leading coefficient")
        rw.add(lt, r.monic(order).terms)
    return OperadElement(rw.reduce(e.terms), e.sig, e.field)
