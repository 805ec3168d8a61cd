"""Filtered distributive laws.

An FDL combines presentations A (generators V, relations R) and B (generators W,
relations S) into one operad E with relations
    Q = {x - s(x)} for x in R,   D = {x - d(x)} for x in W.V,   S.
Here W.V denotes weight-2 monomials with a W generator at the root and a V
generator below it; s and d take values in V.W + W.W.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import coalg as _coalg
from . import presets as P
from .coalg import CoalgebraSpec, reduced_split
from .groebner import (
    GroebnerError, Presentation, buchberger, dims, orbit_span,
)
from .linalg import Echelon, add_scaled
from .scalars import FieldSpec, Q, TruncatedSeries, series_compose
from .shuffle import MonomialOrder, OperadElement, all_monomials, parse_element, preorder


class FDLError(ValueError):
    pass


@dataclass
class FDLSpec:
    name: str
    A: Presentation
    B: Presentation
    s: list = dc_field(default_factory=list)  # (x, s(x)) pairs of expressions
    d: list = dc_field(default_factory=list)  # (x, d(x)) pairs of expressions
    splitting: str = ""
    order: MonomialOrder | None = None

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    def combined_generators(self) -> list:
        names = [g.name for g in self.A.generators] + [g.name for g in self.B.generators]
        if len(set(names)) != len(names):
            raise FDLError("A and B share generator names")
        return list(self.A.generators) + list(self.B.generators)


def _kind(m, sig, vnames) -> str:
    """'WV', 'VW', 'VV' or 'WW' for a weight-2 monomial (root first)."""
    root, child = preorder(m)
    r = "V" if sig.gens[root].base in vnames else "W"
    c = "V" if sig.gens[child].base in vnames else "W"
    return r + c


def _as_terms(x, sig, f) -> dict:
    if isinstance(x, OperadElement):
        return dict(x.terms)
    if isinstance(x, dict):
        return dict(x)
    if isinstance(x, str):
        if x.strip() in ("", "0"):
            return {}
        return parse_element(x, sig, f).terms
    raise FDLError(f"cannot read {x!r}")


def assemble(spec: FDLSpec) -> Presentation:
    gens = spec.combined_generators()
    f = spec.field
    shell = Presentation(gens, [], f, spec.name)
    sig = shell.sig
    vnames = {g.name for g in spec.A.generators}
    lift = _lift_map(spec, sig)
    order = MonomialOrder()

    # D family, and its span used to rewrite W.V terms elsewhere
    dfam = []
    for x, y in spec.d:
        xt, yt = _as_terms(x, sig, f), _as_terms(y, sig, f)
        if not xt or any(_kind(m, sig, vnames) != "WV" for m in xt):
            raise FDLError("d must be given on elements of W.V")
        rel = dict(xt)
        add_scaled(f, rel, yt, f.neg(f.one))
        dfam.append(rel)
    wv_key = lambda m: (_kind(m, sig, vnames) == "WV", order.key(m, sig))
    dspan = Echelon(f, wv_key)
    dspan.extend(orbit_span(dfam, sig, f, order))
    wv_count = sum(1 for m in all_monomials(sig, 3) if _kind(m, sig, vnames) == "WV")
    if sum(1 for lead in dspan.rows if _kind(lead, sig, vnames) == "WV") != wv_count:
        raise FDLError("d is not defined on a basis of W.V")
    for row in dspan.rows.values():
        for m in row:
            if _kind(m, sig, vnames) == "VV":
                raise FDLError("d has values outside V.W + W.W")

    # Q family; W.V terms in s(x) are rewritten by d first
    qfam, keys = [], []
    for x, y in spec.s:
        xt, yt = _as_terms(x, sig, f), _as_terms(y, sig, f)
        if not xt or any(_kind(m, sig, vnames) != "VV" for m in xt):
            raise FDLError("s must be given on relations of A")
        yt = dspan.reduce(yt, full=True)
        if any(_kind(m, sig, vnames) not in ("VW", "WW") for m in yt):
            raise FDLError("s has values outside V.W + W.W")
        rel = dict(xt)
        add_scaled(f, rel, yt, f.neg(f.one))
        qfam.append(rel)
        keys.append(xt)
    a_rels = [lift(r.terms, spec.A) for r in spec.A.relations]
    a_span = orbit_span(a_rels, sig, f, order)
    key_span = orbit_span(keys, sig, f, order)
    ea = Echelon(f, lambda m: order.key(m, sig))
    ea.extend(a_span)
    if not all(ea.contains(k) for k in key_span):
        raise FDLError("s is given on elements that are not relations of A")
    ek = Echelon(f, lambda m: order.key(m, sig))
    ek.extend(key_span)
    kept = []
    for r in a_rels:
        orb = orbit_span([r], sig, f, order)
        inside = [ek.contains(v) for v in orb]
        if all(inside):
            continue
        if any(inside):
            raise FDLError("s is given on part of an orbit of a relation of A; give it on the whole orbit")
        kept.append(r)
    b_rels = [lift(r.terms, spec.B) for r in spec.B.relations]
    rels = qfam + kept + dfam + b_rels
    return Presentation(gens, [r for r in rels if r], f, spec.name)


def _lift_map(spec: FDLSpec, sig):
    def lift(terms, part: Presentation):
        idx = {i: sig.index[(s.base, s.flipped)] for i, s in enumerate(part.sig.gens)}

        def conv(m):
            if isinstance(m, int):
                return m
            return (idx[m[0]], conv(m[1]), conv(m[2]))

        return {conv(m): c for m, c in terms.items()}

    return lift


def composite_dims(dims_a, dims_b, N: int) -> list:
    """Per-arity dims of the composition product A o B, via f_A(f_B(t))."""
    fa = TruncatedSeries.from_dims(list(dims_a)[:N] + [0] * (N - len(dims_a)))
    fb = TruncatedSeries.from_dims(list(dims_b)[:N] + [0] * (N - len(dims_b)))
    return series_compose(fa, fb, N).to_dims()


def check_inversion(dims_p, dims_dual, N: int) -> bool:
    """f_{P!}(-f_P(-t)) == t modulo t^(N+1)."""
    if len(dims_p) < N or len(dims_dual) < N:
        raise FDLError(f"need dims through arity {N}")
    fp = TruncatedSeries.from_dims(list(dims_p)[:N])
    fd = TruncatedSeries.from_dims(list(dims_dual)[:N])
    comp = series_compose(fd, fp.twist(), N)
    return comp == TruncatedSeries([0, 1], Q, N)


@dataclass
class Weight3Report:
    name: str
    passes: bool
    dimE3: int
    dimAB3: int


def _dims(p: Presentation, N: int, order) -> list:
    return dims(buchberger(p, order, N - 1), N)


def check_weight3(spec: FDLSpec) -> Weight3Report:
    """Compare dim E(4) with the arity-4 coefficient of A o B."""
    E = assemble(spec)
    o = spec.order
    dE = _dims(E, 4, o)[3]
    dAB = composite_dims(_dims(spec.A, 4, None), _dims(spec.B, 4, None), 4)[3]
    if dE > dAB:
        raise GroebnerError(f"dim E(4) = {dE} exceeds the upper bound {dAB}")
    return Weight3Report(spec.name, dE == dAB, dE, dAB)


# catalog

def as_fdl(field: FieldSpec = Q) -> FDLSpec:
    A = P.com(field)
    A = P.rename(A, {"m": "star"})
    B = P.rename(P.lie(field), {"l": "br"})
    return FDLSpec(
        "as", A, B,
        s=[("star(star(1,2),3) - star(1,star(2,3))", "br(2,br(1,3))")],
        d=[("br(star(1,2),3)", "star(1,br(2,3)) + star(br(1,3),2)")],
        splitting="Com(n) is the trivial module, so the projection splits")


def postlie_fdl(field: FieldSpec = Q, mutated: bool = False) -> FDLSpec:
    A = P.rename(P.lie(field), {"l": "br"})
    B = P.rename(P.mag(field), {"g": "circ"})
    rhs = "br(circ(1,3),2)" if mutated else "br(circ(1,3),2) + br(1,circ(2,3))"
    return FDLSpec("postlie-mutated" if mutated else "postlie", A, B, s=[],
                   d=[("circ(br(1,2),3)", rhs),
                      ("circ(1,br(2,3))",
                       "circ(circ(1,2),3) - circ(1,circ(2,3)) - circ(circ(1,3),2) + circ(1,circ(3,2))")],
                   splitting="s = 0")


def ctd_fdl(field: FieldSpec = Q) -> FDLSpec:
    A = P.zinb(field, gen="prec")
    B = P.rename(P.com(field), {"m": "star"})
    return FDLSpec(
        "ctd", A, B,
        s=[("prec(prec(1,2),3) - prec(1,prec(2,3)) - prec(1,prec(3,2))", "prec(1,star(2,3))")],
        d=[("star(prec(1,2),3)", "prec(star(1,3),2)")],
        splitting="Zinb(n) is a free module")


def bcact_fdl(c: CoalgebraSpec, field: FieldSpec | None = None) -> FDLSpec:
    """BCact_C from Perm (on the unit) and NAP on the reduced part of C."""
    if field is not None:
        c = c.with_field(field)
    f = c.field
    split = reduced_split(c)
    ad = split.adapted
    unit = ad.names[0]
    bars = list(ad.names[1:])
    A = P.perm(f, gen=unit)
    B = P.nap(ad, f, names=bars, degrees=list(ad.degrees[1:]))
    gens = list(A.generators) + list(B.generators)
    sig = Presentation(gens, [], f).sig
    d = []
    for a, cb in enumerate(bars, 1):
        # c o_1 one = one o_1 c . (23)
        d.append((f"{cb}({unit}(1,2),3)", f"{unit}({cb}(1,3),2)"))
        # c o_2 one = sum c_(1) o_1 c_(2), split along C = k1 + Cbar
        rhs: dict = {}
        for (j, k), v in ad.delta(a).items():
            tj, tk = ad.names[j], ad.names[k]
            if j != 0 and k == 0:
                term = f"{unit}({tj}(1,3),2)"   # rewritten by the first rule
            else:
                term = f"{tj}({tk}(1,2),3)"
            add_scaled(f, rhs, parse_element(term, sig, f).terms, v)
        d.append((f"{cb}(1,{unit}(2,3))", rhs))
    return FDLSpec(f"bcact[{','.join(ad.names)}]", A, B, s=[], d=d, splitting="s = 0",
                   order=MonomialOrder("count_first", [unit]))


def trivial_fdl(A: Presentation) -> FDLSpec:
    B = Presentation([], [], A.field, "trivial")
    return FDLSpec(f"{A.name}+trivial", A, B)


FDL_PRESETS = ("as", "postlie", "postlie-mutated", "ctd", "bcact")


def fdl_preset(name: str, field: FieldSpec = Q, coalgebra: str | CoalgebraSpec = "discrete(2)") -> FDLSpec:
    key = name.lower()
    if key == "as":
        return as_fdl(field)
    if key == "postlie":
        return postlie_fdl(field)
    if key == "postlie-mutated":
        return postlie_fdl(field, mutated=True)
    if key == "ctd":
        return ctd_fdl(field)
    if key == "bcact":
        c = coalgebra if isinstance(coalgebra, CoalgebraSpec) else _coalg.preset(coalgebra, field)
        return bcact_fdl(c, field)
    raise KeyError(f"unknown FDL preset {name!r}; choose from {', '.join(FDL_PRESETS)}")
