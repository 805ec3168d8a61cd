"""Command-line front end.

Every verb prints flat ``key = value`` lines, ending with ``status``.  Exit
codes: 0 pass, 1 a check failed, 2 bad input or an engine error.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import click

from . import coalg as C
from . import fdl as FD
from . import groebner as GB
from . import pconj as PC
from . import presets as P
from . import treemodel as TM
from .scalars import FieldError, FieldSpec
from .shuffle import MonomialOrder, ShuffleError, format_terms

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


class Report:
    def __init__(self, verb: str):
        self.verb = verb
        self.lines: list = [("verb", verb)]
        self.failed = False
        self.started = time.perf_counter()

    def put(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, (list, tuple)):
            value = ", ".join(str(x) for x in value)
        self.lines.append((key, str(value)))

    def check(self, key: str, ok: bool) -> None:
        self.put(key, "pass" if ok else "fail")
        if not ok:
            self.failed = True

    def emit(self, timing: bool = False) -> int:
        status = "fail" if self.failed else "pass"
        for k, v in self.lines:
            click.echo(f"{k} = {v}")
        if timing:
            click.echo(f"time = {time.perf_counter() - self.started:.3f}")
        click.echo(f"status = {status}")
        return EXIT_FAIL if self.failed else EXIT_PASS


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except FieldError as e:
        raise InputError(str(e)) from None


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from None


def _coalgebra(name: str | None, path: str | None, field: FieldSpec) -> C.CoalgebraSpec:
    if path:
        return C.loads(Path(path).read_text(), field)
    return C.preset(name or "point", field)


def _presentation(preset: str | None, path: str | None, field: FieldSpec, coalgebra) -> GB.Presentation:
    if preset and path:
        raise InputError("give either --preset or --file, not both")
    if path:
        return GB.loads_presentation(Path(path).read_text(), field,
                                     lambda nm, f: P.operad_preset(nm, f, coalgebra))
    if not preset:
        raise InputError("give --preset or --file")
    return P.operad_preset(preset, field, coalgebra)


def _order(kind: str | None, distinguished: str | None, preset: str | None, p: GB.Presentation) -> MonomialOrder:
    if kind is None:
        return P.certificate_order(preset, p) if preset else MonomialOrder()
    if kind == "path-lex":
        return MonomialOrder()
    names = [x for x in (distinguished or "").split(",") if x]
    if not names:
        if preset and preset.lower() in ("bcact", "bcact!"):
            return P.certificate_order(preset, p)
        raise InputError("count-first needs --distinguished")
    unknown = set(names) - {g.name for g in p.generators}
    if unknown:
        raise InputError(f"unknown generators {sorted(unknown)}")
    return MonomialOrder("count_first", names)


def _dump(name: str, field: FieldSpec, coalgebra: str) -> str:
    key = name.lower()
    if key in P.OPERAD_PRESETS:
        return P.operad_preset(key, field, coalgebra).dumps()
    if key in FD.FDL_PRESETS:
        return FD.assemble(FD.fdl_preset(key, field, coalgebra)).dumps()
    try:
        return PC.dumps_group(PC.group_preset(name))
    except PC.GroupError:
        pass
    return C.dumps(C.preset(name, field))


_ENGINE_ERRORS = (InputError, C.CoalgebraError, C.ParseError, GB.GroebnerError, GB.PresentationParseError,
                  ShuffleError, FD.FDLError, PC.GroupError, TM.TreeError, FieldError, KeyError,
                  ZeroDivisionError, OSError)


def _run(ctx: click.Context, body) -> None:
    timing = ctx.find_root().params.get("timing", False)
    try:
        rep = body()
    except _ENGINE_ERRORS as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        click.echo(f"error = {msg}")
        click.echo("status = error")
        ctx.exit(EXIT_ERROR)
    ctx.exit(rep.emit(timing))


field_opt = click.option("--field", "field_name", default="q", show_default=True,
                         help="q, f2, f3 or any f<p>.")
coalg_opt = click.option("--coalgebra", default="point", show_default=True,
                         help="Coalgebra preset: point, discrete(m), circle, sphere(d), wedge_of_circles(m).")
coalg_file_opt = click.option("--coalgebra-file", type=click.Path(exists=True, dir_okay=False), default=None)
order_opt = click.option("--order", "order_kind", type=click.Choice(["path-lex", "count-first"]), default=None,
                         help="Monomial order; presets default to an order giving a quadratic basis.")
dist_opt = click.option("--distinguished", default=None, help="Comma-separated generators counted first.")
jobs_opt = click.option("--jobs", default=1, show_default=True, type=click.IntRange(1, None))


def _coalg_arg(coalgebra, coalgebra_file, field):
    return _coalgebra(coalgebra, coalgebra_file, field) if coalgebra_file else coalgebra


@click.group(invoke_without_command=True, context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--dump-preset", default=None, help="Print the text form of a preset and exit.")
@field_opt
@coalg_opt
@click.option("--timing", is_flag=True, help="Append wall-clock time to reports.")
@click.pass_context
def main(ctx, dump_preset, field_name, coalgebra, timing):
    """Operads of based cacti: dimensions, Groebner bases, duals, laws and groups."""
    if dump_preset:
        try:
            click.echo(_dump(dump_preset, _field(field_name), coalgebra), nl=False)
        except _ENGINE_ERRORS as e:
            click.echo(f"error = {e}")
            ctx.exit(EXIT_ERROR)
        ctx.exit(EXIT_PASS)
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@main.command("coalgebra-validate")
@click.argument("path", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--preset", default=None)
@field_opt
@click.pass_context
def coalgebra_validate(ctx, path, preset, field_name):
    """Check the coalgebra axioms for a file or a preset."""
    def body():
        f = _field(field_name)
        if path and preset:
            raise InputError("give a file or --preset, not both")
        spec = C.loads(Path(path).read_text(), f) if path else C.preset(preset or "point", f)
        rep = Report("coalgebra-validate")
        rep.put("field", f.name)
        rep.put("basis", list(spec.names))
        v = C.validate(spec)
        for axiom, ok, where in v.checks:
            rep.check(f"axiom.{axiom}", ok)
            if not ok and where is not None:
                rep.put(f"axiom.{axiom}.first_violation", where)
        if v.passed:
            split = C.reduced_split(spec)
            rep.put("reduced_dim", len(split.adapted.names) - 1)
        return rep
    _run(ctx, body)


@main.command("operad-dims")
@click.option("--preset", default=None)
@click.option("--file", "path", type=click.Path(exists=True, dir_okay=False), default=None)
@coalg_opt
@coalg_file_opt
@click.option("--max-arity", default=4, show_default=True, type=click.IntRange(1, 8))
@click.option("--expect", default=None, help="Expected dims, comma-separated.")
@order_opt
@dist_opt
@field_opt
@click.pass_context
def operad_dims(ctx, preset, path, coalgebra, coalgebra_file, max_arity, expect, order_kind, distinguished, field_name):
    """Dimensions from normal monomials of a Groebner basis."""
    def body():
        f = _field(field_name)
        c = _coalg_arg(coalgebra, coalgebra_file, f)
        p = _presentation(preset, path, f, c)
        order = _order(order_kind, distinguished, preset, p)
        d = GB.operad_dims(p, max_arity, order)
        rep = Report("operad-dims")
        rep.put("operad", p.name)
        rep.put("field", f.name)
        rep.put("order", repr(order))
        rep.put("dims", d)
        key = (preset or "").lower()
        spec = c if isinstance(c, C.CoalgebraSpec) else C.preset(c, f)
        if key == "nap":
            oracle = [TM.nap_dim_oracle(n, spec.dim) for n in range(1, max_arity + 1)]
            rep.put("oracle.source", "rooted-tree-enumeration")
            rep.put("oracle", oracle)
            rep.check("oracle.match", oracle == d)
        elif key == "bcact":
            red = C.reduced_split(spec).adapted.degrees[1:]
            oracle = [sum(TM.bcact_dim_oracle(n, red).values()) for n in range(1, max_arity + 1)]
            rep.put("oracle.source", "planted-forest-enumeration")
            rep.put("oracle", oracle)
            rep.check("oracle.match", oracle == d)
        if expect:
            want = _ints(expect)
            rep.put("expected", want)
            rep.check("expected.match", want == d[:len(want)])
        return rep
    _run(ctx, body)


@main.command("operad-gb")
@click.option("--preset", default=None)
@click.option("--file", "path", type=click.Path(exists=True, dir_okay=False), default=None)
@coalg_opt
@coalg_file_opt
@click.option("--max-weight", default=3, show_default=True, type=click.IntRange(1, 6))
@click.option("--probe-weight", default=4, show_default=True, type=click.IntRange(3, 6))
@click.option("--require-quadratic", is_flag=True, help="Fail unless the basis is quadratic.")
@click.option("--show/--no-show", default=True, help="List the basis elements.")
@order_opt
@dist_opt
@field_opt
@click.pass_context
def operad_gb(ctx, preset, path, coalgebra, coalgebra_file, max_weight, probe_weight, require_quadratic,
              show, order_kind, distinguished, field_name):
    """Truncated Groebner basis and the quadratic-basis certificate."""
    def body():
        f = _field(field_name)
        c = _coalg_arg(coalgebra, coalgebra_file, f)
        p = _presentation(preset, path, f, c)
        order = _order(order_kind, distinguished, preset, p)
        gb = GB.buchberger(p, order, max_weight)
        rep = Report("operad-gb")
        rep.put("operad", p.name)
        rep.put("field", f.name)
        rep.put("order", repr(order))
        rep.put("max_weight", max_weight)
        rep.put("size", len(gb.elements))
        ws = gb.weights()
        for w in sorted(set(ws)):
            rep.put(f"size.weight{w}", ws.count(w))
        if show:
            for k, e in enumerate(gb.as_elements(), 1):
                rep.put(f"element.{k}", format_terms(e.sorted_terms(order), p.sig, f))
        if p.quadratic:
            q = GB.is_quadratic_gb(p, order, probe_weight)
            rep.put("probe_weight", probe_weight)
            if require_quadratic:
                rep.check("quadratic", q)
            else:
                rep.put("quadratic", q)
        elif require_quadratic:
            rep.check("quadratic", False)
        return rep
    _run(ctx, body)


@main.command("operad-dual")
@click.option("--preset", default=None)
@click.option("--file", "path", type=click.Path(exists=True, dir_okay=False), default=None)
@coalg_opt
@coalg_file_opt
@click.option("--check-arity", default=0, show_default=True, type=click.IntRange(0, 6),
              help="Compare dims of the double dual with the original up to this arity.")
@field_opt
@click.pass_context
def operad_dual(ctx, preset, path, coalgebra, coalgebra_file, check_arity, field_name):
    """Koszul dual of a binary quadratic presentation."""
    def body():
        f = _field(field_name)
        c = _coalg_arg(coalgebra, coalgebra_file, f)
        p = _presentation(preset, path, f, c)
        d = GB.koszul_dual(p)
        rep = Report("operad-dual")
        rep.put("operad", p.name)
        rep.put("dual", d.name)
        rep.put("field", f.name)
        for g in d.generators:
            rep.put(f"generator.{g.name}", f"degree {g.degree} symmetry {g.symmetry}")
        order = MonomialOrder()
        for k, r in enumerate(d.shuffle_relations, 1):
            rep.put(f"relation.{k}", format_terms(sorted(r.items(), key=lambda t: order.key(t[0], d.sig), reverse=True),
                                                  d.sig, f))
        if check_arity:
            dd = GB.koszul_dual(d)
            a = GB.operad_dims(p, check_arity, _order(None, None, preset, p))
            b = GB.operad_dims(dd, check_arity)
            rep.put("dims", a)
            rep.put("dims.double_dual", b)
            rep.check("double_dual.match", a == b)
        return rep
    _run(ctx, body)


@main.command("operad-suboperad")
@click.option("--preset", default=None)
@click.option("--file", "path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--generators", required=True, help="Comma-separated generator names.")
@coalg_opt
@coalg_file_opt
@click.option("--max-arity", default=4, show_default=True, type=click.IntRange(1, 6))
@click.option("--expect", default=None, help="Expected dims, comma-separated.")
@order_opt
@dist_opt
@field_opt
@click.pass_context
def operad_suboperad(ctx, preset, path, generators, coalgebra, coalgebra_file, max_arity, expect,
                     order_kind, distinguished, field_name):
    """Dimensions of the suboperad generated by some generators."""
    def body():
        f = _field(field_name)
        c = _coalg_arg(coalgebra, coalgebra_file, f)
        p = _presentation(preset, path, f, c)
        order = _order(order_kind, distinguished, preset, p)
        gb = GB.buchberger(p, order, max(max_arity - 1, 1))
        subset = [x for x in generators.split(",") if x]
        d = [GB.suboperad_dims(gb, subset, n) for n in range(1, max_arity + 1)]
        rep = Report("operad-suboperad")
        rep.put("operad", p.name)
        rep.put("generators", subset)
        rep.put("field", f.name)
        rep.put("dims", d)
        if expect:
            want = _ints(expect)
            rep.put("expected", want)
            rep.check("expected.match", want == d[:len(want)])
        return rep
    _run(ctx, body)


@main.command("fdl-check")
@click.option("--preset", required=True, type=click.Choice(FD.FDL_PRESETS, case_sensitive=False))
@click.option("--coalgebra", default="discrete(2)", show_default=True)
@coalg_file_opt
@field_opt
@click.pass_context
def fdl_check(ctx, preset, coalgebra, coalgebra_file, field_name):
    """Weight-3 check of a filtered distributive law."""
    def body():
        f = _field(field_name)
        c = _coalg_arg(coalgebra, coalgebra_file, f)
        spec = FD.fdl_preset(preset, f, c)
        r = FD.check_weight3(spec)
        rep = Report("fdl-check")
        rep.put("law", spec.name)
        rep.put("field", f.name)
        rep.put("splitting", spec.splitting or "-")
        rep.put("dim_E4", r.dimE3)
        rep.put("dim_AB4", r.dimAB3)
        rep.check("weight3", r.passes)
        return rep
    _run(ctx, body)


@main.command("cacti-dims")
@coalg_opt
@coalg_file_opt
@click.option("--max-arity", default=4, show_default=True, type=click.IntRange(1, 6))
@field_opt
@click.pass_context
def cacti_dims(ctx, coalgebra, coalgebra_file, max_arity, field_name):
    """Based cacti: Groebner dims, planted-forest count and Perm o NAP series."""
    def body():
        f = _field(field_name)
        spec = _coalgebra(coalgebra, coalgebra_file, f)
        p = P.bcact(spec)
        d = GB.operad_dims(p, max_arity, P.certificate_order("bcact", p))
        ad = C.reduced_split(spec).adapted
        red = ad.degrees[1:]
        oracle = [sum(TM.bcact_dim_oracle(n, red).values()) for n in range(1, max_arity + 1)]
        perm = GB.operad_dims(P.perm(f), max_arity)
        napbar = GB.operad_dims(P.nap(ad, f, names=ad.names[1:], degrees=red), max_arity) if red else \
            [1] + [0] * (max_arity - 1)
        comp = FD.composite_dims(perm, napbar, max_arity)
        rep = Report("cacti-dims")
        rep.put("coalgebra", ",".join(spec.names))
        rep.put("field", f.name)
        rep.put("dims", d)
        rep.put("planted_forests", oracle)
        rep.put("perm_o_nap", comp)
        rep.check("match", d == oracle == comp)
        return rep
    _run(ctx, body)


_PAIRS = {"nap": ("nap", "nap!"), "as": ("as", "as"), "postlie": ("postlie", "comtrias"),
          "ctd": ("ctd", "ctd!"), "bcact": ("bcact", "bcact!"), "com": ("com", "lie"),
          "perm": ("perm", "prelie"), "zinb": ("zinb", "leib")}


@main.command("series-check")
@click.option("--pair", default=None, type=click.Choice(sorted(_PAIRS), case_sensitive=False))
@click.option("--dims", "dims_text", default=None, help="Dims of P, comma-separated.")
@click.option("--dual-dims", default=None, help="Dims of the dual, comma-separated.")
@click.option("--n", "N", default=6, show_default=True, type=click.IntRange(1, 8))
@coalg_opt
@field_opt
@click.pass_context
def series_check(ctx, pair, dims_text, dual_dims, N, coalgebra, field_name):
    """Koszul inversion f_dual(-f(-t)) = t on generating series."""
    def body():
        f = _field(field_name)
        rep = Report("series-check")
        if pair:
            a, b = _PAIRS[pair.lower()]
            pa = P.operad_preset(a, f, coalgebra)
            pb = P.operad_preset(b, f, coalgebra)
            da = GB.operad_dims(pa, N, P.certificate_order(a, pa))
            db = GB.operad_dims(pb, N, P.certificate_order(b, pb))
            rep.put("operad", pa.name)
            rep.put("dual", pb.name)
        elif dims_text and dual_dims:
            da, db = _ints(dims_text), _ints(dual_dims)
        else:
            raise InputError("give --pair, or both --dims and --dual-dims")
        rep.put("n", N)
        rep.put("dims", da[:N])
        rep.put("dims.dual", db[:N])
        rep.check("inversion", FD.check_inversion(da, db, N))
        return rep
    _run(ctx, body)


@main.command("groups-verify")
@click.option("--n", "n", default=4, show_default=True, type=click.IntRange(2, 6))
@click.option("--group", default="Z", show_default=True, help="Z, S<k> or C<k>.")
@click.option("--group-file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--window", default=3, show_default=True, type=click.IntRange(0, None),
              help="Exponent window for G = Z.")
@click.option("--compose-m", default=0, show_default=True, type=click.IntRange(0, 5),
              help="Also check the composition formulas for all arities 2..n and 2..m.")
@jobs_opt
@click.pass_context
def groups_verify(ctx, n, group, group_file, window, compose_m, jobs):
    """Relations of the partial-conjugation presentation via the free-product action."""
    def body():
        G = PC.loads_group(Path(group_file).read_text()) if group_file else PC.group_preset(group)
        sample = G.sample(window)
        rep = Report("groups-verify")
        rep.put("group", G.name)
        rep.put("n", n)
        rep.put("sample_size", len(sample))
        r = PC.verify_relations(n, G, sample, jobs=jobs)
        for fam in PC.FAMILIES:
            if fam == "weakened":
                continue
            rep.put(f"relation.{fam}.checked", r.checked[fam])
            rep.check(f"relation.{fam}", r.passes(fam))
            for k, msg in enumerate(r.failures.get(fam, []), 1):
                rep.put(f"relation.{fam}.failure{k}", msg)
        weak = r.passes("weakened")
        rep.put("control.weakened", "holds" if weak else "fails")
        if n >= 3:
            rep.check("control.detected", not weak)
        if compose_m:
            for a in range(2, n + 1):
                for b in range(2, compose_m + 1):
                    cr = PC.verify_composition_formulas(a, b, G, sample)
                    rep.put(f"composition.n{a}m{b}.checked", cr.checked)
                    rep.check(f"composition.n{a}m{b}", cr.ok)
                    for k, msg in enumerate(cr.failures, 1):
                        rep.put(f"composition.n{a}m{b}.failure{k}", msg)
        return rep
    _run(ctx, body)


def _matrix(text: str) -> list:
    try:
        rows = [[int(x) for x in r.split(",")] for r in text.split(";")]
    except ValueError:
        raise InputError(f"bad matrix {text!r}; use e.g. '0,0;0,1'") from None
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise InputError("the matrix p must be 2x2")
    return rows


@main.command("algebra-check")
@click.option("--p", "p_text", default="0,0;0,1", show_default=True,
              help="2x2 matrix for the second product of the two-point example.")
@field_opt
@click.pass_context
def algebra_check(ctx, p_text, field_name):
    """Check the based-cacti relations on the two-dimensional example algebra."""
    def body():
        f = _field(field_name)
        p = _matrix(p_text)
        r = TM.check_bcact_algebra(TM.example_algebra(p, f), C.discrete(2, f))
        rep = Report("algebra-check")
        rep.put("field", f.name)
        rep.put("p", p_text)
        rep.check("relations", r.passed)
        if r.violation:
            rep.put("violation", r.violation)
        return rep
    _run(ctx, body)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
