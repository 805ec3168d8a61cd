"""Finite-dimensional graded augmented cocommutative coalgebras."""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .linalg import nullspace, solve
from .scalars import FieldSpec, Q, parse_scalar


class CoalgebraError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col, self.msg = line, col, msg


Term = tuple  # (coefficient, j, k) meaning coefficient * c_j (x) c_k


@dataclass(frozen=True)
class CoalgebraSpec:
    names: tuple
    degrees: tuple
    unit: int
    counit: tuple
    coproduct: tuple  # coproduct[i] = tuple of Terms
    field: FieldSpec = Q

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise CoalgebraError("empty basis")
        if not (len(self.degrees) == len(self.counit) == len(self.coproduct) == n):
            raise CoalgebraError("basis, counit and coproduct lengths differ")
        if not 0 <= self.unit < n:
            raise CoalgebraError("unit index out of range")
        for terms in self.coproduct:
            for _, j, k in terms:
                if not (0 <= j < n and 0 <= k < n):
                    raise CoalgebraError("coproduct index out of range")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise CoalgebraError(f"unknown basis element {name!r}") from None

    def delta(self, i: int) -> dict:
        """Coproduct of basis element i as a dict (j, k) -> coefficient."""
        f = self.field
        out: dict = {}
        for c, j, k in self.coproduct[i]:
            v = f.add(out.get((j, k), f.zero), c)
            if v == 0:
                out.pop((j, k), None)
            else:
                out[(j, k)] = v
        return out

    def with_field(self, field: FieldSpec) -> "CoalgebraSpec":
        conv = lambda x: field.coerce(x)
        return CoalgebraSpec(self.names, self.degrees, self.unit,
                             tuple(conv(x) for x in self.counit),
                             tuple(tuple((conv(c), j, k) for c, j, k in ts) for ts in self.coproduct),
                             field)


@dataclass
class ValidationReport:
    checks: list = dc_field(default_factory=list)  # (axiom, passed, first violating name or None)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failed_axioms(self) -> list:
        return [a for a, ok, _ in self.checks if not ok]


def _add(f, d, key, v):
    w = f.add(d.get(key, f.zero), v)
    if w == 0:
        d.pop(key, None)
    else:
        d[key] = w


def validate(spec: CoalgebraSpec) -> ValidationReport:
    f = spec.field
    n = spec.dim
    rep = ValidationReport()

    def first(bad):
        return next((spec.names[i] for i in range(n) if bad(i)), None)

    def counit_bad(i):
        left, right = {}, {}
        for (j, k), c in spec.delta(i).items():
            _add(f, left, k, f.mul(c, spec.counit[j]))
            _add(f, right, j, f.mul(c, spec.counit[k]))
        return left != {i: f.one} or right != {i: f.one}

    def coassoc_bad(i):
        lhs, rhs = {}, {}
        for (j, k), c in spec.delta(i).items():
            for (a, b), c2 in spec.delta(j).items():
                _add(f, lhs, (a, b, k), f.mul(c, c2))
            for (a, b), c2 in spec.delta(k).items():
                _add(f, rhs, (j, a, b), f.mul(c, c2))
        return lhs != rhs

    def cocomm_bad(i):
        d = spec.delta(i)
        tw = {}
        for (j, k), c in d.items():
            s = c if (spec.degrees[j] * spec.degrees[k]) % 2 == 0 else f.neg(c)
            _add(f, tw, (k, j), s)
        return tw != d

    def degree_bad(i):
        return any(spec.degrees[j] + spec.degrees[k] != spec.degrees[i] for (j, k) in spec.delta(i))

    u = spec.unit
    unit_bad = spec.delta(u) != {(u, u): f.one} or spec.counit[u] != f.one or spec.degrees[u] != 0
    counit_deg_bad = first(lambda i: spec.degrees[i] != 0 and spec.counit[i] != 0)

    rep.checks.append(("counit", first(counit_bad) is None, first(counit_bad)))
    rep.checks.append(("coassociativity", first(coassoc_bad) is None, first(coassoc_bad)))
    rep.checks.append(("cocommutativity", first(cocomm_bad) is None, first(cocomm_bad)))
    rep.checks.append(("unit", not unit_bad, spec.names[u] if unit_bad else None))
    rep.checks.append(("degree", first(degree_bad) is None and counit_deg_bad is None,
                       first(degree_bad) or counit_deg_bad))
    return rep


@dataclass(frozen=True)
class ReducedSplit:
    """C in the adapted basis (unit first, then a basis of ker counit)."""

    original: CoalgebraSpec
    adapted: CoalgebraSpec
    change: tuple  # change[a] = coordinates of adapted basis vector a in the original basis
    reduced_basis: tuple  # original indices the kernel vectors are attached to

    @property
    def reduced_names(self) -> tuple:
        return self.adapted.names[1:]

    @property
    def reduced_degrees(self) -> tuple:
        return self.adapted.degrees[1:]

    def components(self, a: int) -> dict:
        """Split Delta(c_a), a >= 1 in the adapted basis, into its three parts."""
        parts = {"bar_unit": {}, "unit_bar": {}, "bar_bar": {}, "unit_unit": {}}
        for (j, k), c in self.adapted.delta(a).items():
            key = ("unit" if j == 0 else "bar") + "_" + ("unit" if k == 0 else "bar")
            parts[key][(j, k)] = c
        return parts


def reduced_split(spec: CoalgebraSpec) -> ReducedSplit:
    rep = validate(spec)
    if not rep.passed:
        raise CoalgebraError(f"coalgebra fails axioms: {', '.join(rep.failed_axioms())}")
    f = spec.field
    n = spec.dim
    ker = nullspace(f, [list(spec.counit)], n)
    pivot = next(i for i in range(n) if spec.counit[i] != 0)
    attached = [i for i in range(n) if i != pivot]
    vecs = [[f.one if t == spec.unit else f.zero for t in range(n)]] + ker
    names = [spec.names[spec.unit]]
    degrees = [0]
    for i, v in zip(attached, ker):
        nz = [t for t in range(n) if v[t] != 0]
        degs = {spec.degrees[t] for t in nz}
        if len(degs) != 1:
            raise CoalgebraError("kernel vector is not homogeneous")
        names.append(spec.names[i] if nz == [i] else spec.names[i] + "bar")
        degrees.append(degs.pop())
    # columns of the change-of-basis matrix are the adapted vectors
    cols = [[vecs[a][t] for a in range(n)] for t in range(n)]

    def coords(e: int) -> list:
        x = solve(f, cols, [f.one if t == e else f.zero for t in range(n)])
        assert x is not None
        return x

    inv = [coords(e) for e in range(n)]  # e_t = sum_a inv[t][a] * adapted_a
    coproduct = []
    for a in range(n):
        acc: dict = {}
        for t in range(n):
            if vecs[a][t] == 0:
                continue
            for (j, k), c in spec.delta(t).items():
                w = f.mul(vecs[a][t], c)
                for p in range(n):
                    if inv[j][p] == 0:
                        continue
                    for q in range(n):
                        if inv[k][q] != 0:
                            _add(f, acc, (p, q), f.mul(w, f.mul(inv[j][p], inv[k][q])))
        coproduct.append(tuple((c, p, q) for (p, q), c in sorted(acc.items())))
    counit = tuple(f.one if a == 0 else f.zero for a in range(n))
    adapted = CoalgebraSpec(tuple(names), tuple(degrees), 0, counit, tuple(coproduct), f)
    for a in range(1, n):
        if (0, 0) in adapted.delta(a):
            raise CoalgebraError("reduced coproduct has a unit-unit term")
    return ReducedSplit(spec, adapted, tuple(tuple(v) for v in vecs), tuple(attached))


def reassemble(split: ReducedSplit) -> dict:
    """Coproduct of the original basis recomputed from the adapted one."""
    spec, ad = split.original, split.adapted
    f = spec.field
    n = spec.dim
    vecs = split.change
    cols = [[vecs[a][t] for a in range(n)] for t in range(n)]
    inv = [solve(f, cols, [f.one if t == e else f.zero for t in range(n)]) for e in range(n)]
    out = {}
    for e in range(n):
        acc: dict = {}
        for a in range(n):
            if inv[e][a] == 0:
                continue
            for (p, q), c in ad.delta(a).items():
                w = f.mul(inv[e][a], c)
                for j in range(n):
                    if vecs[p][j] == 0:
                        continue
                    for k in range(n):
                        if vecs[q][k] != 0:
                            _add(f, acc, (j, k), f.mul(w, f.mul(vecs[p][j], vecs[q][k])))
        out[e] = acc
    return out


def _build(names, degrees, unit, counit, terms, field) -> CoalgebraSpec:
    f = field
    idx = {nm: i for i, nm in enumerate(names)}
    cop = tuple(tuple((f.coerce(c), idx[a], idx[b]) for c, a, b in terms[nm]) for nm in names)
    return CoalgebraSpec(tuple(names), tuple(degrees), idx[unit],
                         tuple(f.coerce(counit.get(nm, 0)) for nm in names), cop, f)


UNIT = "one"


def point(field: FieldSpec = Q) -> CoalgebraSpec:
    return _build([UNIT], [0], UNIT, {UNIT: 1}, {UNIT: [(1, UNIT, UNIT)]}, field)


def discrete(m: int, field: FieldSpec = Q) -> CoalgebraSpec:
    """Homology of an m-point set: m group-like elements."""
    if m < 1:
        raise CoalgebraError("discrete(m) needs m >= 1")
    names = [UNIT] + [f"x{i}" for i in range(1, m)]
    return _build(names, [0] * m, UNIT, {nm: 1 for nm in names},
                  {nm: [(1, nm, nm)] for nm in names}, field)


def _primitives(prims: list, field: FieldSpec) -> CoalgebraSpec:
    names = [UNIT] + [nm for nm, _ in prims]
    degrees = [0] + [d for _, d in prims]
    terms = {UNIT: [(1, UNIT, UNIT)]}
    for nm, _ in prims:
        terms[nm] = [(1, nm, UNIT), (1, UNIT, nm)]
    return _build(names, degrees, UNIT, {UNIT: 1}, terms, field)


def sphere(d: int, field: FieldSpec = Q) -> CoalgebraSpec:
    if d < 1:
        raise CoalgebraError("sphere(d) needs d >= 1")
    return _primitives([("s", d)], field)


def circle(field: FieldSpec = Q) -> CoalgebraSpec:
    return _primitives([("v", 1)], field)


def wedge_of_circles(m: int, field: FieldSpec = Q) -> CoalgebraSpec:
    if m < 1:
        raise CoalgebraError("wedge_of_circles(m) needs m >= 1")
    return _primitives([(f"v{i}", 1) for i in range(1, m + 1)], field)


_PRESET_RE = re.compile(r"^([a-z_]+)(?:\((\d+)\))?$")


def preset(name: str, field: FieldSpec = Q) -> CoalgebraSpec:
    """point, discrete(m), sphere(d), circle, wedge_of_circles(m)."""
    m = _PRESET_RE.match(name.strip().replace("-", "_"))
    if not m:
        raise CoalgebraError(f"unknown coalgebra preset {name!r}")
    base, arg = m.group(1), m.group(2)
    if base == "point" and arg is None:
        return point(field)
    if base == "circle" and arg is None:
        return circle(field)
    if arg is not None:
        k = int(arg)
        if base == "discrete":
            return discrete(k, field)
        if base == "sphere":
            return sphere(k, field)
        if base in ("wedge_of_circles", "wedge"):
            return wedge_of_circles(k, field)
    raise CoalgebraError(f"unknown coalgebra preset {name!r}")


PRESET_NAMES = ("point", "discrete(2)", "circle", "sphere(2)")


# text format

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"


def dumps(spec: CoalgebraSpec) -> str:
    f = spec.field
    lines = [f"basis {nm} deg {d}" for nm, d in zip(spec.names, spec.degrees)]
    lines.append(f"unit {spec.names[spec.unit]}")
    for nm, c in zip(spec.names, spec.counit):
        lines.append(f"counit {nm} {c}")
    for i, nm in enumerate(spec.names):
        parts = []
        for (j, k), c in sorted(spec.delta(i).items()):
            parts.append(f"{c}*{spec.names[j]}(x){spec.names[k]}")
        lines.append(f"coproduct {nm} = " + (" + ".join(parts) if parts else "0"))
    return "\n".join(lines) + "\n"


_TERM_RE = re.compile(rf"\s*([+-])?\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*\s*)?({_IDENT})\s*\(x\)\s*({_IDENT})\s*")


def loads(text: str, field: FieldSpec = Q) -> CoalgebraSpec:
    names, degrees, unit, counit, terms = [], [], None, {}, {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        words = line.split()
        kw = words[0]
        try:
            if kw == "basis":
                if len(words) != 4 or words[2] != "deg":
                    raise ParseError(ln, col, "expected 'basis <name> deg <d>'")
                if not re.fullmatch(_IDENT, words[1]):
                    raise ParseError(ln, line.index(words[1]) + 1, f"bad name {words[1]!r}")
                if words[1] in names:
                    raise ParseError(ln, line.index(words[1]) + 1, f"duplicate basis element {words[1]!r}")
                try:
                    d = int(words[3])
                except ValueError:
                    raise ParseError(ln, line.rindex(words[3]) + 1, f"bad degree {words[3]!r}") from None
                if d < 0:
                    raise ParseError(ln, line.rindex(words[3]) + 1, "degrees are nonnegative")
                names.append(words[1])
                degrees.append(d)
            elif kw == "unit":
                if len(words) != 2:
                    raise ParseError(ln, col, "expected 'unit <name>'")
                unit = words[1]
            elif kw == "counit":
                if len(words) != 3:
                    raise ParseError(ln, col, "expected 'counit <name> <scalar>'")
                try:
                    counit[words[1]] = parse_scalar(words[2], field)
                except (ValueError, ZeroDivisionError, ArithmeticError):
                    raise ParseError(ln, line.rindex(words[2]) + 1, f"bad scalar {words[2]!r}") from None
            elif kw == "coproduct":
                m = re.match(rf"\s*coproduct\s+({_IDENT})\s*=", line)
                if not m:
                    raise ParseError(ln, col, "expected 'coproduct <name> = ...'")
                nm = m.group(1)
                pos = m.end()
                rhs = line[pos:]
                ts = []
                if rhs.strip() != "0":
                    p = 0
                    first = True
                    while p < len(rhs):
                        tm = _TERM_RE.match(rhs, p)
                        if not tm or tm.end() == p or (not first and tm.group(1) is None):
                            skip = len(rhs[p:]) - len(rhs[p:].lstrip())
                            raise ParseError(ln, pos + p + skip + 1, "malformed coproduct term")
                        c = parse_scalar(tm.group(2) or "1", field)
                        if tm.group(1) == "-":
                            c = field.neg(c)
                        ts.append((c, tm.group(3), tm.group(4)))
                        p = tm.end()
                        first = False
                terms[nm] = ts
            else:
                raise ParseError(ln, col, f"unknown declaration {kw!r}")
        except ParseError:
            raise
    if not names:
        raise ParseError(1, 1, "no basis declared")
    if unit is None:
        raise ParseError(len(text.splitlines()) or 1, 1, "no unit declared")
    for nm in [unit, *counit, *terms]:
        if nm not in names:
            raise ParseError(1, 1, f"undeclared basis element {nm!r}")
    for nm, ts in terms.items():
        for _, a, b in ts:
            if a not in names or b not in names:
                raise ParseError(1, 1, f"undeclared basis element in coproduct of {nm!r}")
    if unit not in counit:
        counit[unit] = field.one
    full_terms = {nm: [(c, a, b) for c, a, b in terms.get(nm, [])] for nm in names}
    return _build(names, degrees, unit, counit, full_terms, field)
