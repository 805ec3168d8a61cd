"""Presentations of binary operads, a bounded Buchberger algorithm for shuffle
operads, normal forms, Koszul duals and suboperad probes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .linalg import Echelon, add_scaled
from .scalars import FieldSpec, Q
from .shuffle import (
    ExprParseError,
    GeneratorSpec,
    MonomialOrder,
    Occurrence,
    OperadElement,
    Rewriter,
    ShuffleError,
    Signature,
    _gen_on,
    _skeletons,
    _fill,
    _pattern,
    all_monomials,
    arity,
    format_terms,
    free_dims,
    internal_paths,
    minleaf,
    normalize,
    occurrences,
    parse_element,
    preorder,
    relabel,
    substitute,
    weight,
)


class GroebnerError(ValueError):
    pass


class PresentationParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col, self.msg = line, col, msg


def permute_element(terms: dict, perm: dict, sig: Signature, f: FieldSpec) -> dict:
    """Relabel leaves by ``perm`` and bring the result back to shuffle form."""
    out: dict = {}
    for m, c in terms.items():
        s, mm = normalize(relabel(m, perm), sig)
        add_scaled(f, out, {mm: c}, f.one if s > 0 else f.neg(f.one))
    return out


def orbit_span(elements, sig: Signature, f: FieldSpec, order: MonomialOrder) -> list:
    """Echelon basis of the span of all leaf relabelings of the elements."""
    ech = Echelon(f, lambda m: order.key(m, sig))
    for e in elements:
        if not e:
            continue
        n = arity(next(iter(e)))
        for p in itertools.permutations(range(1, n + 1)):
            ech.add(permute_element(e, dict(zip(range(1, n + 1), p)), sig, f))
    return ech.interreduced()


class Presentation:
    """Generators and weight-homogeneous relations of a symmetric operad.

    ``relations`` holds the relations as entered (normalized to shuffle form);
    the relation space of the shuffle operad is the span of their orbits under
    leaf relabeling.
    """

    def __init__(self, generators, relations=(), field: FieldSpec = Q, name: str = "custom"):
        self.generators = tuple(generators)
        self.sig = Signature(self.generators)
        self.field = field
        self.name = name
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = parse_element(r, self.sig, field)
            elif isinstance(r, dict):
                r = OperadElement(r, self.sig, field)
            if r.field != field:
                raise GroebnerError("relation over a different field")
            if r:
                r.weight  # raises on inhomogeneous input
                rels.append(r)
        self.relations = tuple(rels)

    @property
    def quadratic(self) -> bool:
        return all(r.weight == 2 for r in self.relations)

    @cached_property
    def shuffle_relations(self) -> list:
        return orbit_span([r.terms for r in self.relations], self.sig, self.field, MonomialOrder())

    def relation_space(self, n: int) -> list:
        return [r for r in self.shuffle_relations if arity(next(iter(r))) == n]

    def with_field(self, field: FieldSpec) -> "Presentation":
        """Same presentation with coefficients reinterpreted (integers or fractions)."""
        rels = []
        for r in self.relations:
            rels.append({m: field.coerce(c) for m, c in r.terms.items()})
        rels = [{m: c for m, c in r.items() if c != 0} for r in rels]
        return Presentation(self.generators, rels, field, self.name)

    def dumps(self) -> str:
        lines = [f"name {self.name}"]
        for g in self.generators:
            lines.append(f"generator {g.name} arity 2 degree {g.degree} symmetry {g.symmetry}")
        for r in self.relations:
            lines.append("relation " + format_terms(r.sorted_terms(MonomialOrder()), self.sig, self.field))
        return "\n".join(lines) + "\n"


def loads_presentation(text: str, field: FieldSpec = Q, resolver=None) -> Presentation:
    """Parse the presentation text format.

    ``resolver(name, field)`` returns a preset Presentation for ``preset`` lines.
    """
    gens: list = []
    rel_lines: list = []
    name = "custom"
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        words = line.split()
        kw = words[0]
        if kw == "preset":
            if len(words) != 2:
                raise PresentationParseError(ln, indent + 1, "usage: preset <name>")
            if resolver is None:
                raise PresentationParseError(ln, indent + 1, "presets are not available here")
            try:
                return resolver(words[1], field)
            except (KeyError, ValueError) as e:
                raise PresentationParseError(ln, indent + 8, str(e)) from None
        if kw == "name":
            name = " ".join(words[1:]) or name
        elif kw == "generator":
            if len(words) != 8 or words[2] != "arity" or words[4] != "degree" or words[6] != "symmetry":
                raise PresentationParseError(
                    ln, indent + 1, "usage: generator <name> arity 2 degree <d> symmetry <none|symmetric|antisymmetric>")
            try:
                ar, deg = int(words[3]), int(words[5])
                gens.append(GeneratorSpec(words[1], deg, words[7], ar))
            except ValueError as e:
                raise PresentationParseError(ln, indent + 1, str(e)) from None
        elif kw == "relation":
            rel_lines.append((ln, line, line.index("relation") + len("relation")))
        else:
            raise PresentationParseError(ln, indent + 1, f"unknown keyword {kw!r}")
    try:
        sig = Signature(gens)
    except ShuffleError as e:
        raise PresentationParseError(1, 1, str(e)) from None
    rels = []
    for ln, line, start in rel_lines:
        try:
            rels.append(parse_element(line[start:], sig, field))
        except ExprParseError as e:
            raise PresentationParseError(ln, start + e.col, e.msg) from None
    try:
        return Presentation(gens, rels, field, name)
    except (ShuffleError, GroebnerError) as e:
        raise PresentationParseError(1, 1, str(e)) from None


# Buchberger

@dataclass
class GroebnerBasis:
    presentation: Presentation
    order: MonomialOrder
    elements: list  # monic term dicts, by weight then descending lead
    max_weight: int
    complete_below: int
    rewriter: Rewriter = dc_field(repr=False)

    @property
    def leads(self) -> list:
        return [max(e, key=lambda m: self.order.key(m, self.sig)) for e in self.elements]

    @property
    def sig(self) -> Signature:
        return self.presentation.sig

    @property
    def field(self) -> FieldSpec:
        return self.presentation.field

    def weights(self) -> list:
        return [weight(next(iter(e))) for e in self.elements]

    def reduce(self, terms: dict) -> dict:
        return self.rewriter.reduce(terms)

    def as_elements(self) -> list:
        return [OperadElement(e, self.sig, self.field) for e in self.elements]


def _block_partitions(labels: tuple, sizes: tuple):
    """Ordered partitions of ``labels`` into blocks of the given sizes with
    increasing minima."""
    if not sizes:
        if not labels:
            yield ()
        return
    first, rest = labels[0], labels[1:]
    s = sizes[0]
    for extra in itertools.combinations(rest, s - 1):
        block = (first,) + extra
        remain = tuple(x for x in rest if x not in extra)
        for tail in _block_partitions(remain, sizes[1:]):
            yield (block,) + tail


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for x in range(1, total - parts + 2):
        for tail in _compositions(total - x, parts - 1):
            yield (x,) + tail


def graft_extensions(a, k: int, sig: Signature):
    """Monomials with ``a`` at the root and k extra vertices above its leaves."""
    n = arity(a)
    labels = tuple(range(1, n + k + 1))
    for sizes in _compositions(n + k, n):
        for blocks in _block_partitions(labels, sizes):
            choices = [list(_gen_on(sig, b)) for b in blocks]
            for trees in itertools.product(*choices):
                yield relabel(a, {i + 1: t for i, t in enumerate(trees)})


def _spolys(a, W, rules: dict, sig: Signature, f: FieldSpec, order: MonomialOrder, seen: set):
    wa = weight(a)
    k = W - wa
    a_paths = frozenset(internal_paths(a))
    max_wb = max(weight(b) for b in rules)
    for m in graft_extensions(a, k, sig):
        all_paths = set(internal_paths(m))
        extra = all_paths - a_paths
        occ_a = Occurrence((), a_paths, a)
        for occ in occurrences(m, max_wb, k + 1):
            if occ.pattern not in rules or not extra <= occ.paths or not (occ.paths & a_paths):
                continue
            if occ.paths == a_paths:
                continue
            key = (m, frozenset([(occ_a.top, occ_a.paths), (occ.top, occ.paths)]))
            if key in seen:
                continue
            seen.add(key)
            s = substitute(m, occ_a, rules[a], sig, f)
            add_scaled(f, s, substitute(m, occ, rules[occ.pattern], sig, f), f.neg(f.one))
            if s:
                yield s


def buchberger(p: Presentation, order: MonomialOrder | None = None, max_weight: int = 3) -> GroebnerBasis:
    """Reduced Groebner basis truncated at ``max_weight``.

    Works one weight at a time: S-polynomials of each weight W are formed from
    the basis elements of lower weight, reduced, row-reduced together with the
    input relations of weight W, and inter-reduced before moving on.
    """
    order = order or MonomialOrder()
    sig, f = p.sig, p.field
    key = lambda m: order.key(m, sig)
    by_weight: dict = {}
    for r in p.shuffle_relations:
        by_weight.setdefault(weight(next(iter(r))), []).append(r)
    rw = Rewriter(sig, f, order)
    rules: dict = {}
    elements: list = []
    for W in range(1, max_weight + 1):
        pool = list(by_weight.get(W, []))
        seen: set = set()
        if rules:
            for a in list(rules):
                if 1 <= W - weight(a) < max(weight(b) for b in rules):
                    pool.extend(_spolys(a, W, rules, sig, f, order, seen))
        ech = Echelon(f, key)
        for v in pool:
            v = rw.reduce(v)
            if v:
                ech.add(v)
        level = ech.interreduced()
        for row in level:
            lead = max(row, key=key)
            if f.characteristic and row[lead] == 0:
                raise GroebnerError("non-invertible leading coefficient")
            rules[lead] = row
            rw.add(lead, row)
            elements.append(row)
    return GroebnerBasis(p, order, elements, max_weight, max_weight, rw)


def _root_divisible(m, rules: dict, maxw: int) -> bool:
    for ps, shape, inputs in _skeletons(m, (), maxw):
        filled = _fill(shape, [0])
        order = sorted(range(len(inputs)), key=lambda j: minleaf(inputs[j]))
        ranks = {j: r + 1 for r, j in enumerate(order)}
        if _pattern(filled, ranks) in rules:
            return True
    return False


def _require(gb: GroebnerBasis, n: int):
    # overlaps of two leading terms have weight at most 2w-1, so a basis closed
    # that far is complete in every weight
    top = max(gb.weights(), default=0)
    given = max((r.weight for r in gb.presentation.relations), default=0)
    if gb.complete_below >= max(2 * top - 1, given):
        return
    if n - 1 > gb.complete_below:
        raise GroebnerError(
            f"arity {n} needs a basis complete through weight {n - 1}; this one stops at {gb.complete_below}")


def normal_monomials(gb: GroebnerBasis, n: int) -> list:
    """Shuffle monomials of arity n not divisible by any leading monomial."""
    _require(gb, n)
    rules = gb.rewriter.rules
    maxw = max(gb.rewriter.weights) if rules else 0
    sig = gb.sig
    memo: dict = {}

    def build(labels):
        if labels in memo:
            return memo[labels]
        if len(labels) == 1:
            memo[labels] = [labels[0]]
            return memo[labels]
        out = []
        first, rest = labels[0], labels[1:]
        for k in range(len(rest)):
            for extra in itertools.combinations(rest, k):
                left = (first,) + extra
                right = tuple(x for x in rest if x not in extra)
                for a in build(left):
                    for b in build(right):
                        for g in range(len(sig)):
                            m = (g, a, b)
                            if not rules or not _root_divisible(m, rules, maxw):
                                out.append(m)
        memo[labels] = out
        return out

    return build(tuple(range(1, n + 1)))


def dims(gb: GroebnerBasis, N: int) -> list:
    """Dimensions of the arity 1..N components."""
    _require(gb, N)
    return [len(normal_monomials(gb, n)) for n in range(1, N + 1)]


def operad_dims(p: Presentation, N: int, order: MonomialOrder | None = None) -> list:
    return dims(buchberger(p, order, max(N - 1, 1)), N)


def is_quadratic_gb(p: Presentation, order: MonomialOrder | None = None, probe_weight: int = 4) -> bool:
    if not p.quadratic:
        raise GroebnerError("presentation is not quadratic")
    gb = buchberger(p, order, probe_weight)
    return all(w <= 2 for w in gb.weights())


def ideal_dims(p: Presentation, N: int) -> list:
    """Dimensions from the rank of the ideal itself (every relation placed in
    every context), without any rewriting.  Slow; an independent check."""
    sig, f = p.sig, p.field
    out = [1]
    rels = p.shuffle_relations
    for n in range(2, N + 1):
        ech = Echelon(f, lambda m: MonomialOrder().key(m, sig))
        mons = all_monomials(sig, n)
        patterns: dict = {}
        for r in rels:
            lead = next(iter(r))
            patterns.setdefault((weight(lead), arity(lead)), []).append(r)
        wr = {w for w, _ in patterns}
        for m in mons:
            for w in wr:
                for occ in occurrences(m, w, w):
                    for r in patterns.get((w, arity(occ.pattern)), []):
                        ech.add(substitute(m, occ, r, sig, f))
        out.append(len(mons) - len(ech))
    return out


# Koszul duality

_SHAPE_SIGN = {"left12": 1, "left13": -1, "right": -1}


def _shape(m) -> str:
    if isinstance(m[1], tuple):
        return "left12" if m[1][2] == 2 else "left13"
    return "right"


def dual_name(name: str) -> str:
    return name[:-1] if name.endswith("!") else name + "!"


def _dual_symmetry(s: str) -> str:
    return {"none": "none", "symmetric": "antisymmetric", "antisymmetric": "symmetric"}[s]


def pairing(m, sig: Signature) -> int:
    """Sign of <m, m^vee> for a weight-2 shuffle monomial and its dual."""
    s = _SHAPE_SIGN[_shape(m)]
    for g in preorder(m):
        if sig.gens[g].flipped:
            s = -s
    outer, inner = preorder(m)
    if sig.degree(outer) % 2 and sig.degree(inner) % 2:
        s = -s
    return s


def koszul_dual(p: Presentation, name: str | None = None) -> Presentation:
    """Koszul dual of a binary quadratic presentation: the annihilator of the
    relation space under the fixed weight-2 pairing."""
    if not p.quadratic:
        raise GroebnerError("Koszul dual needs a quadratic presentation")
    sig, f = p.sig, p.field
    dgens = [GeneratorSpec(dual_name(g.name), -g.degree, _dual_symmetry(g.symmetry)) for g in p.generators]
    dp = Presentation(dgens, (), f, name or dual_name(p.name))
    dsig = dp.sig
    mons = all_monomials(sig, 3)
    dual_of = {}
    for m in mons:
        dm = _dual_monomial(m, sig, dsig)
        dual_of[m] = dm
    rels = p.relation_space(3)
    col = {m: i for i, m in enumerate(mons)}
    # x = sum_m x_m m^vee is in R^perp iff sum_m r_m eps(m) x_m = 0 for each r
    rows = []
    for r in rels:
        row = [f.zero] * len(mons)
        for m, c in r.items():
            row[col[m]] = c if pairing(m, sig) > 0 else f.neg(c)
        rows.append(row)
    from .linalg import nullspace
    basis = nullspace(f, rows, len(mons)) if rows else [
        [f.one if i == j else f.zero for i in range(len(mons))] for j in range(len(mons))]
    drels = []
    for vec in basis:
        drels.append({dual_of[m]: c for m, c in zip(mons, vec) if c != 0})
    dp.relations = tuple(OperadElement(r, dsig, f) for r in drels if r)
    dp.__dict__.pop("shuffle_relations", None)
    return dp


def _dual_monomial(m, sig, dsig):
    if isinstance(m, int):
        return m
    g = sig.gens[m[0]]
    dg = dsig.index[(dual_name(g.base), g.flipped)]
    return (dg, _dual_monomial(m[1], sig, dsig), _dual_monomial(m[2], sig, dsig))


def _transport(terms: dict, src: Signature, dst: Signature) -> dict:
    idx = {i: dst.index[(g.base, g.flipped)] for i, g in enumerate(src.gens)}

    def conv(m):
        if isinstance(m, int):
            return m
        return (idx[m[0]], conv(m[1]), conv(m[2]))

    return {conv(m): c for m, c in terms.items()}


def same_relations(p1: Presentation, p2: Presentation) -> bool:
    """Equal relation spaces; generators are matched by name."""
    if sorted(p1.generators, key=lambda g: g.name) != sorted(p2.generators, key=lambda g: g.name):
        return False
    key = lambda m: MonomialOrder().key(m, p1.sig)
    a, b = Echelon(p1.field, key), Echelon(p1.field, key)
    other = [_transport(r, p2.sig, p1.sig) for r in p2.shuffle_relations]
    a.extend(p1.shuffle_relations)
    b.extend(other)
    return len(a) == len(b) and all(a.contains(v) for v in other)


def contains_relations(p: Presentation, elements) -> bool:
    """Whether every given element lies in the relation space of p."""
    ech = Echelon(p.field, lambda m: MonomialOrder().key(m, p.sig))
    ech.extend(p.shuffle_relations)
    orbit = orbit_span([e.terms if isinstance(e, OperadElement) else e for e in elements],
                       p.sig, p.field, MonomialOrder())
    return all(ech.contains(v) for v in orbit)


def suboperad_dims(gb: GroebnerBasis, subset, n: int) -> int:
    """Dimension of the arity-n component of the suboperad generated by the
    named generators."""
    _require(gb, n)
    subset = set(subset)
    sig = gb.sig
    unknown = subset - set(sig.names())
    if unknown:
        raise GroebnerError(f"unknown generators {sorted(unknown)}")
    allowed = [i for i, g in enumerate(sig.gens) if g.base in subset]
    if n == 1:
        return 1
    ech = Echelon(gb.field, lambda m: gb.order.key(m, sig))
    for m in all_monomials(sig, n):
        if all(g in allowed for g in preorder(m)):
            v = gb.reduce({m: gb.field.one})
            if v:
                ech.add(v)
    return len(ech)


__all__ = [
    "GroebnerBasis", "GroebnerError", "Presentation", "PresentationParseError", "buchberger",
    "contains_relations", "dims", "free_dims", "ideal_dims", "is_quadratic_gb", "koszul_dual",
    "loads_presentation", "normal_monomials", "operad_dims", "orbit_span", "pairing",
    "permute_element", "same_relations", "suboperad_dims",
]
