"""Built-in operad presentations."""

from __future__ import annotations

from . import coalg as _coalg
from .coalg import CoalgebraSpec
from .groebner import Presentation, koszul_dual
from .scalars import FieldSpec, Q
from .shuffle import GeneratorSpec, MonomialOrder, OperadElement, normalize

G = GeneratorSpec


def com(field: FieldSpec = Q) -> Presentation:
    return Presentation([G("m", 0, "symmetric")], ["m(m(1,2),3) - m(1,m(2,3))"], field, "com")


def lie(field: FieldSpec = Q) -> Presentation:
    return Presentation([G("l", 0, "antisymmetric")],
                        ["l(l(1,2),3) + l(l(2,3),1) + l(l(3,1),2)"], field, "lie")


def perm(field: FieldSpec = Q, gen: str = "p") -> Presentation:
    # (x1 x3) x2 = (x1 x2) x3 = x1 (x2 x3)
    return Presentation([G(gen)], [f"{gen}({gen}(1,3),2) - {gen}({gen}(1,2),3)",
                                   f"{gen}(1,{gen}(2,3)) - {gen}({gen}(1,2),3)"], field, "perm")


def prelie(field: FieldSpec = Q) -> Presentation:
    # (x1 x2) x3 - x1 (x2 x3) is symmetric in x2, x3
    return Presentation([G("q")], ["q(q(1,2),3) - q(1,q(2,3)) - q(q(1,3),2) + q(1,q(3,2))"], field, "prelie")


def mag(field: FieldSpec = Q) -> Presentation:
    return Presentation([G("g")], [], field, "mag")


def zinb(field: FieldSpec = Q, gen: str = "z") -> Presentation:
    return Presentation([G(gen)], [f"{gen}({gen}(1,2),3) - {gen}(1,{gen}(2,3)) - {gen}(1,{gen}(3,2))"],
                        field, "zinb")


def leib(field: FieldSpec = Q, gen: str = "b") -> Presentation:
    return Presentation([G(gen)], [f"{gen}({gen}(1,2),3) - {gen}(1,{gen}(2,3)) - {gen}({gen}(1,3),2)"],
                        field, "leib")


def assoc(field: FieldSpec = Q) -> Presentation:
    """Associative operad in its (commutative, Lie) presentation."""
    return Presentation(
        [G("star", 0, "symmetric"), G("br", 0, "antisymmetric")],
        ["br(br(1,2),3) + br(br(2,3),1) + br(br(3,1),2)",
         "br(star(1,2),3) - star(1,br(2,3)) - star(br(1,3),2)",
         "star(star(1,2),3) - star(1,star(2,3)) - br(2,br(1,3))"],
        field, "as")


def postlie(field: FieldSpec = Q) -> Presentation:
    return Presentation(
        [G("br", 0, "antisymmetric"), G("circ")],
        ["br(br(1,2),3) + br(br(2,3),1) + br(br(3,1),2)",
         "circ(circ(1,2),3) - circ(1,circ(2,3)) - circ(circ(1,3),2) + circ(1,circ(3,2)) - circ(1,br(2,3))",
         "circ(br(1,2),3) - br(circ(1,3),2) - br(1,circ(2,3))"],
        field, "postlie")


def comtrias(field: FieldSpec = Q) -> Presentation:
    return Presentation(
        [G("bul", 0, "symmetric"), G("star")],
        ["star(star(1,2),3) - star(1,star(2,3))",
         "star(1,star(2,3)) - star(1,star(3,2))",
         "bul(bul(1,2),3) - bul(1,bul(2,3))",
         "star(1,star(2,3)) - star(1,bul(2,3))",
         "bul(1,star(2,3)) - star(bul(1,2),3)"],
        field, "comtrias")


def ctd(field: FieldSpec = Q) -> Presentation:
    return Presentation(
        [G("star", 0, "symmetric"), G("prec")],
        ["prec(prec(1,2),3) - prec(1,prec(2,3)) - prec(1,prec(3,2)) - prec(1,star(2,3))",
         "prec(star(1,2),3) - star(1,prec(2,3))",
         "star(1,prec(2,3)) - star(prec(1,3),2)",
         "star(star(1,2),3) - star(1,star(2,3))"],
        field, "ctd")


def ctd_dual(field: FieldSpec = Q) -> Presentation:
    return Presentation(
        [G("star!", 0, "antisymmetric"), G("prec!")],
        ["star!(star!(1,2),3) + star!(star!(2,3),1) + star!(star!(3,1),2)",
         "prec!(1,star!(2,3)) - prec!(1,prec!(2,3))",
         "prec!(star!(1,2),3) - star!(prec!(1,3),2) - star!(1,prec!(2,3))",
         "prec!(prec!(1,2),3) - prec!(1,prec!(2,3)) - prec!(prec!(1,3),2)"],
        field, "ctd!")


def _sgn(x: int, y: int) -> int:
    return -1 if (x % 2 and y % 2) else 1


def nap_relations(names, degrees) -> list:
    """d'(d''(1,3),2) = (-1)^{|d'||d''|} d''(d'(1,2),3) for all ordered pairs."""
    rels = []
    for a, da in zip(names, degrees):
        for b, db in zip(names, degrees):
            sign = "-" if _sgn(da, db) > 0 else "+"
            rels.append(f"{a}({b}(1,3),2) {sign} 1*{b}({a}(1,2),3)")
    return rels


def nap(c: CoalgebraSpec, field: FieldSpec | None = None, names=None, degrees=None) -> Presentation:
    """NAP decorated by the graded vector space underlying c (or by explicit names)."""
    field = field or c.field
    names = tuple(names if names is not None else c.names)
    degrees = tuple(degrees if degrees is not None else c.degrees)
    gens = [G(n, d) for n, d in zip(names, degrees)]
    return Presentation(gens, nap_relations(names, degrees), field, "nap")


def point_relations(c: CoalgebraSpec) -> list:
    """c(1, one(2,3)) = sum c_(1)(c_(2)(1,2),3), as term dicts over names."""
    f = c.field
    unit = c.names[c.unit]
    out = []
    for i, nm in enumerate(c.names):
        terms = [(f.one, f"{nm}(1,{unit}(2,3))")]
        for (j, k), v in sorted(c.delta(i).items()):
            terms.append((f.neg(v), f"{c.names[j]}({c.names[k]}(1,2),3)"))
        out.append(terms)
    return out


def _element(terms, sig, f):
    from .shuffle import parse_expression
    out: dict = {}
    for coeff, text in terms:
        s, m = normalize(parse_expression(text, sig), sig)
        v = f.add(out.get(m, f.zero), coeff if s > 0 else f.neg(coeff))
        if v == 0:
            out.pop(m, None)
        else:
            out[m] = v
    return out


def bcact(c: CoalgebraSpec, field: FieldSpec | None = None) -> Presentation:
    if field is not None:
        c = c.with_field(field)
    f = c.field
    base = nap(c)
    gens = base.generators
    p = Presentation(gens, [], f, "bcact")
    rels = [r.terms for r in base.relations]
    rels += [_element(t, p.sig, f) for t in point_relations(c)]
    return Presentation(gens, [r for r in rels if r], f, "bcact")


def rename(p: Presentation, mapping: dict, name: str | None = None) -> Presentation:
    """Same presentation with generators renamed."""
    gens = [GeneratorSpec(mapping.get(g.name, g.name), g.degree, g.symmetry) for g in p.generators]
    q = Presentation(gens, [], p.field, name or p.name)
    idx = {}
    for i, s in enumerate(p.sig.gens):
        idx[i] = q.sig.index[(mapping.get(s.base, s.base), s.flipped)]

    def conv(m):
        if isinstance(m, int):
            return m
        return (idx[m[0]], conv(m[1]), conv(m[2]))

    q.relations = tuple(OperadElement({conv(m): v for m, v in r.terms.items()}, q.sig, p.field)
                        for r in p.relations)
    return q


OPERAD_PRESETS = ("com", "lie", "perm", "prelie", "mag", "zinb", "leib", "as", "postlie",
                  "comtrias", "ctd", "ctd!", "nap", "nap!", "bcact", "bcact!")

_SIMPLE = {"com": com, "lie": lie, "perm": perm, "prelie": prelie, "mag": mag, "zinb": zinb,
           "leib": leib, "as": assoc, "postlie": postlie, "comtrias": comtrias, "ctd": ctd,
           "ctd!": ctd_dual}


def operad_preset(name: str, field: FieldSpec = Q, coalgebra: str | CoalgebraSpec = "point") -> Presentation:
    """Look up a preset; ``nap`` and ``bcact`` are decorated by a coalgebra preset."""
    key = name.lower()
    if key in _SIMPLE:
        return _SIMPLE[key](field)
    if key in ("nap", "nap!", "bcact", "bcact!"):
        c = coalgebra if isinstance(coalgebra, CoalgebraSpec) else _coalg.preset(coalgebra, field)
        c = c.with_field(field)
        p = nap(c) if key.startswith("nap") else bcact(c)
        return koszul_dual(p) if key.endswith("!") else p
    raise KeyError(f"unknown operad preset {name!r}; choose from {', '.join(OPERAD_PRESETS)}")


def certificate_order(name: str, p: Presentation | None = None) -> MonomialOrder:
    """An order under which the preset has a quadratic Groebner basis."""
    key = name.lower()
    if key == "leib":
        return MonomialOrder(paths_first=True, reverse_words=True)
    if key in ("as", "comtrias"):
        return MonomialOrder("count_first", ["star"])
    if key == "ctd!":
        return MonomialOrder("count_first", ["prec!"], paths_first=True, reverse_words=True,
                             count_sign=-1, depth_sign=-1)
    if key == "bcact":
        return MonomialOrder("count_first", [_coalg.UNIT])
    if key == "bcact!":
        if p is None:
            raise KeyError("bcact! needs its presentation to pick the order")
        unit = _coalg.UNIT + "!"
        return MonomialOrder("count_first", [g.name for g in p.generators if g.name != unit])
    return MonomialOrder()
