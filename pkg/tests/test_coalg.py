import pytest
from hypothesis import given, strategies as st

from cacti import coalg as C
from cacti.scalars import F2, F3, Q

PRESETS = ["point", "discrete(2)", "discrete(3)", "circle", "sphere(2)", "sphere(3)", "wedge_of_circles(2)"]


@pytest.mark.parametrize("name", PRESETS)
@pytest.mark.parametrize("field", [Q, F2, F3], ids=lambda f: f.name)
def test_presets_validate(name, field):
    rep = C.validate(C.preset(name, field))
    assert rep.passed, rep.failed_axioms()
    assert {a for a, _, _ in rep.checks} >= {"counit", "coassociativity", "cocommutativity", "degree"}


def test_preset_shapes():
    c = C.circle()
    assert c.names == ("one", "v") and c.degrees == (0, 1)
    assert c.delta(1) == {(1, 0): 1, (0, 1): 1}
    s = C.sphere(2)
    assert s.dim == 2 and s.degrees[1] % 2 == 0
    d = C.discrete(2)
    assert all(d.delta(i) == {(i, i): 1} for i in range(2))
    assert C.wedge_of_circles(3).degrees == (0, 1, 1, 1)
    with pytest.raises(C.CoalgebraError):
        C.preset("torus")


def _with_coproduct(c, i, terms):
    cop = list(c.coproduct)
    cop[i] = tuple(terms)
    return C.CoalgebraSpec(c.names, c.degrees, c.unit, c.counit, tuple(cop), c.field)


def test_counit_mutation_fails():
    d = C.discrete(2)
    bad = _with_coproduct(d, 1, [(1, 1, 0)])  # Delta(x) = x (x) one
    rep = C.validate(bad)
    assert "counit" in rep.failed_axioms()
    where = {a: w for a, _, w in rep.checks}
    assert where["counit"] == "x1"
    with pytest.raises(C.CoalgebraError):
        C.reduced_split(bad)


def test_cocommutativity_sign():
    # v (x) one - one (x) v is not graded cocommutative
    bad = _with_coproduct(C.circle(), 1, [(1, 1, 0), (-1, 0, 1)])
    assert "cocommutativity" in C.validate(bad).failed_axioms()


def test_degree_violation():
    c = C.circle()
    bad = C.CoalgebraSpec(c.names, (0, 2), 0, c.counit, ((( 1, 0, 0),), ((1, 1, 1),)), Q)
    assert not C.validate(bad).passed


def test_split_point():
    s = C.reduced_split(C.point())
    assert s.reduced_names == ()


def test_split_two_points():
    s = C.reduced_split(C.discrete(2))
    ad = s.adapted
    assert ad.names == ("one", "x1bar")
    assert s.change[1] == (-1, 1)  # u = x - one
    assert ad.delta(1) == {(1, 0): 1, (0, 1): 1, (1, 1): 1}
    parts = s.components(1)
    assert parts["unit_unit"] == {}
    assert parts["bar_bar"] == {(1, 1): 1}


def test_split_circle():
    s = C.reduced_split(C.circle())
    assert s.reduced_names == ("v",) and s.reduced_degrees == (1,)
    assert s.adapted.delta(1) == {(1, 0): 1, (0, 1): 1}


@pytest.mark.parametrize("name", PRESETS)
@pytest.mark.parametrize("field", [Q, F2, F3], ids=lambda f: f.name)
def test_reassembly(name, field):
    c = C.preset(name, field)
    got = C.reassemble(C.reduced_split(c))
    assert all(got[i] == c.delta(i) for i in range(c.dim))


@given(st.integers(2, 5), st.sampled_from([Q, F2, F3]))
def test_discrete_reassembly(m, field):
    c = C.discrete(m, field)
    split = C.reduced_split(c)
    assert len(split.reduced_names) == m - 1
    assert C.reassemble(split) == {i: c.delta(i) for i in range(m)}


@pytest.mark.parametrize("name", PRESETS)
def test_text_round_trip(name):
    c = C.preset(name)
    again = C.loads(C.dumps(c))
    assert again.names == c.names and again.degrees == c.degrees
    assert all(again.delta(i) == c.delta(i) for i in range(c.dim))


def test_loads_example():
    text = """\
# two points
basis one deg 0
basis x deg 0
unit one
counit x 1
coproduct one = 1*one(x)one
coproduct x = x(x)x
"""
    c = C.loads(text)
    assert C.validate(c).passed
    assert c.delta(1) == {(1, 1): 1}


@pytest.mark.parametrize("text, line, col", [
    ("basis one deg 0\nbasis v deg -1\n", 2, 13),
    ("basis one deg 0\nunit one\ncoproduct one = 1*one(x)\n", 3, 17),
    ("basis one deg 0\nfrobnicate one\n", 2, 1),
    ("basis one deg 0\ncounit one 1/0\n", 2, 12),
])
def test_parse_errors(text, line, col):
    with pytest.raises(C.ParseError) as e:
        C.loads(text)
    assert (e.value.line, e.value.col) == (line, col)
    assert f"line {line}, column {col}" in str(e.value)
