import math

import pytest

from cacti import coalg as C
from cacti import groebner as GB
from cacti import presets as P
from cacti.scalars import F2, F3, Q
from cacti.shuffle import MonomialOrder, find_divisors, parse_element

FIELDS = [Q, F2, F3]


def gb(name, field=Q, coalgebra="point", max_weight=3):
    p = P.operad_preset(name, field, coalgebra)
    return GB.buchberger(p, P.certificate_order(name, p), max_weight)


@pytest.mark.parametrize("name, want", [
    ("com", [1, 1, 1, 1, 1]),
    ("lie", [1, 1, 2, 6, 24]),
    ("perm", [1, 2, 3, 4, 5]),
    ("mag", [1, 2, 12, 120, 1680]),
    ("zinb", [1, 2, 6, 24, 120]),
    ("leib", [1, 2, 6, 24, 120]),
    ("prelie", [1, 2, 9, 64, 625]),
    ("as", [1, 2, 6, 24, 120]),
    ("comtrias", [1, 3, 7, 15, 31]),
    ("postlie", [1, 3, 20, 210, 3024]),
    ("ctd", [1, 3, 13, 75, 541]),
    ("ctd!", [1, 3, 14, 90, 744]),
])
def test_preset_dims(name, want):
    assert GB.dims(gb(name), 5) == want


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name)
@pytest.mark.parametrize("cname, d", [("point", 1), ("discrete(2)", 2), ("circle", 2), ("sphere(2)", 2)])
def test_nap_and_dual_dims(field, cname, d):
    assert GB.dims(gb("nap", field, cname), 5) == [n ** (n - 1) * d ** (n - 1) for n in range(1, 6)]
    assert GB.dims(gb("nap!", field, cname), 5) == [n * d ** (n - 1) for n in range(1, 6)]


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name)
@pytest.mark.parametrize("cname", ["discrete(2)", "circle", "sphere(2)", "wedge_of_circles(2)", "discrete(3)"])
def test_bcact_dims_match_oracle(field, cname):
    from cacti.treemodel import bcact_dim_oracle
    degs = C.reduced_split(C.preset(cname, field)).reduced_degrees
    want = [sum(bcact_dim_oracle(n, degs).values()) for n in range(1, 5)]
    assert GB.dims(gb("bcact", field, cname), 4) == want



@pytest.mark.parametrize("cname", ["discrete(2)", "circle", "wedge_of_circles(2)"])
def test_bcact_dual_series(cname):
    from cacti.fdl import check_inversion
    d, dd = GB.dims(gb("bcact", Q, cname), 5), GB.dims(gb("bcact!", Q, cname), 5)
    assert check_inversion(d, dd, 5)
    assert GB.is_quadratic_gb(P.operad_preset("bcact!", Q, cname),
                              P.certificate_order("bcact!", P.operad_preset("bcact!", Q, cname)))


def test_operad_dims_matches_ideal_rank():
    # the rank of the raw ideal is an independent route to the same numbers
    for name in ("com", "perm", "lie", "zinb", "ctd"):
        p = P.operad_preset(name)
        assert GB.ideal_dims(p, 4) == GB.operad_dims(p, 4, P.certificate_order(name, p))
    p = P.bcact(C.discrete(2))
    assert GB.ideal_dims(p, 3) == [1, 4, 24]


def test_buchberger_deterministic_and_reduced():
    a, b = gb("bcact", Q, "circle"), gb("bcact", Q, "circle")
    assert a.elements == b.elements
    leads = a.leads
    for i, x in enumerate(leads):
        others = [y for j, y in enumerate(leads) if j != i]
        assert not find_divisors(x, others)


def test_certificates():
    for name in ("com", "lie", "perm", "mag", "zinb", "leib", "prelie", "as", "postlie",
                 "comtrias", "ctd", "ctd!", "nap", "nap!"):
        p = P.operad_preset(name)
        assert GB.is_quadratic_gb(p, P.certificate_order(name, p)), name


def test_certificate_depends_on_order():
    # Leibniz is not quadratic for the default path order
    assert not GB.is_quadratic_gb(P.leib())
    assert GB.is_quadratic_gb(P.leib(), P.certificate_order("leib"))


def test_negative_control():
    bad = GB.Presentation([GB.GeneratorSpec("m", 0, "antisymmetric")], ["m(m(1,2),3) - m(1,m(3,2))"])
    assert not GB.is_quadratic_gb(bad)
    assert not GB.is_quadratic_gb(bad, MonomialOrder(paths_first=True, reverse_words=True))


def test_incomplete_basis_errors():
    p = GB.Presentation([GB.GeneratorSpec("m", 0, "antisymmetric")], ["m(m(1,2),3) - m(1,m(3,2))"])
    g = GB.buchberger(p, None, 2)
    with pytest.raises(GB.GroebnerError, match="weight 3"):
        GB.dims(g, 4)
    with pytest.raises(GB.GroebnerError):
        GB.is_quadratic_gb(GB.Presentation([GB.GeneratorSpec("g")], ["g(g(g(1,2),3),4)"]))


def rename(p, mapping):
    return P.rename(p, mapping)


def test_dual_com_is_lie():
    d = GB.koszul_dual(P.com())
    assert GB.same_relations(d, rename(P.lie(), {"l": "m!"}))


def test_dual_perm_is_prelie():
    d = GB.koszul_dual(P.perm())
    assert GB.same_relations(d, rename(P.prelie(), {"q": "p!"}))


def test_dual_lie_is_com_and_zinb_is_leib():
    assert GB.same_relations(GB.koszul_dual(P.lie()), rename(P.com(), {"m": "l!"}))
    assert GB.same_relations(GB.koszul_dual(P.zinb()), rename(P.leib(), {"b": "z!"}))


def test_dual_of_as_is_as():
    d = GB.koszul_dual(P.assoc())
    assert GB.operad_dims(d, 4, P.certificate_order("as")) == [1, 2, 6, 24]


def test_dual_nap_point():
    d = GB.koszul_dual(P.nap(C.point()))
    want = GB.Presentation([GB.GeneratorSpec("one!")],
                           ["one!(one!(1,2),3) - one!(one!(1,3),2)", "one!(1,one!(2,3))"])
    assert GB.same_relations(d, want)


def test_dual_ctd():
    assert GB.same_relations(GB.koszul_dual(P.ctd()), P.ctd_dual())
    assert GB.same_relations(GB.koszul_dual(P.ctd_dual()), P.ctd())


def test_dual_bcact_prelie_at_unit():
    prelie = "one!(one!(1,2),3) - one!(1,one!(2,3)) - one!(one!(1,3),2) + one!(1,one!(3,2))"
    left = "one!(one!(1,2),3) - one!(1,one!(2,3)) - one!(one!(2,1),3) + one!(2,one!(1,3))"
    for cname in C.PRESET_NAMES:
        d = GB.koszul_dual(P.bcact(C.preset(cname)))
        assert GB.contains_relations(d, [parse_element(prelie, d.sig)])
    d = GB.koszul_dual(P.bcact(C.point()))
    assert not GB.contains_relations(d, [parse_element(left, d.sig)])


@pytest.mark.parametrize("name", ["com", "lie", "perm", "zinb", "postlie", "ctd", "comtrias"])
def test_double_dual(name):
    p = P.operad_preset(name)
    dd = GB.koszul_dual(GB.koszul_dual(p))
    assert GB.same_relations(dd, p)


def test_dual_requires_quadratic():
    p = GB.Presentation([GB.GeneratorSpec("g")], ["g(g(g(1,2),3),4)"])
    with pytest.raises(GB.GroebnerError):
        GB.koszul_dual(p)


@pytest.mark.parametrize("name, subset, want", [
    ("postlie", ["circ"], [1, 2, 12, 120]),
    ("postlie", ["br"], [1, 1, 2, 6]),
    ("comtrias", ["star"], [1, 2, 3, 4]),
    ("comtrias", ["bul"], [1, 1, 1, 1]),
    ("ctd!", ["prec!"], [1, 2, 6, 24]),
    ("as", ["star", "br"], [1, 2, 6, 24]),
])
def test_suboperads(name, subset, want):
    g = gb(name)
    assert [GB.suboperad_dims(g, subset, n) for n in range(1, 5)] == want


def test_ctd_prec_suboperad_is_not_zinb():
    g = gb("ctd")
    got = [GB.suboperad_dims(g, ["prec"], n) for n in range(1, 5)]
    assert got[:2] == [1, 2]
    assert got != [math.factorial(n) for n in range(1, 5)]


def test_suboperad_unknown_generator():
    with pytest.raises(GB.GroebnerError):
        GB.suboperad_dims(gb("com"), ["nope"], 3)


@pytest.mark.parametrize("name", ["com", "postlie", "ctd!", "nap", "bcact"])
def test_presentation_round_trip(name):
    p = P.operad_preset(name, Q, "circle")
    q = GB.loads_presentation(p.dumps())
    assert q.name == p.name
    assert GB.same_relations(p, q)


def test_presentation_preset_line():
    p = GB.loads_presentation("# builtin\npreset lie\n", Q, P.operad_preset)
    assert GB.same_relations(p, P.lie())


@pytest.mark.parametrize("text, line, col", [
    ("generator g arity 2 degree 0\n", 1, 1),
    ("generator g arity 2 degree 0 symmetry none\nrelation g(g(1,2),3) - g(1,x(2,3))\n", 2, 28),
    ("generator g arity 3 degree 0 symmetry none\n", 1, 1),
    ("  wibble\n", 1, 3),
    ("preset nosuch\n", 1, 8),
])
def test_presentation_parse_errors(text, line, col):
    with pytest.raises(GB.PresentationParseError) as e:
        GB.loads_presentation(text, Q, P.operad_preset)
    assert (e.value.line, e.value.col) == (line, col)


def test_with_field():
    p = P.ctd().with_field(F3)
    assert p.field == F3
    assert GB.dims(GB.buchberger(p, P.certificate_order("ctd"), 3), 4) == [1, 3, 13, 75]
