"""Command-line front end.

Every library operation is reachable from exactly one subcommand; see
:data:`REGISTRY`.  Output is deterministic: plain text by default, or a JSON
object ``{"op", "inputs", "result", "bounds"}`` with ``--format json``.
Exit status is 0 on success, 2 on invalid input and 1 on internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable

from . import grcoha, jordan, ktheory
from .jordan import InvalidJordanType, InvalidRows, JordanType
from .ktheory import CurveModel, NumClass
from .tautalg import chern, hopf, hpoly, series
from .tautalg.rings import Tensor, fraction_str


class CliError(ValueError):
    def __init__(self, arg: str, message: str):
        self.arg = arg
        super().__init__(f"{arg}: {message}")


# library operation -> "group sub" (or "group" for leaf commands)
REGISTRY: dict[str, str] = {
    "is_positive": "classes positive",
    "leq_standard": "classes leq",
    "euler_coh": "euler coh",
    "euler_higgs": "euler higgs",
    "slope": "slope",
    "twist": "twist",
    "dim_coh": "dims coh",
    "dim_higgs": "dims higgs",
    "dim_ext_stack": "dims ext",
    "rank_q_fibration": "dims qrank",
    "dim_q_correspondence": "dims qcorr",
    "vb_stack_rank": "dims vbrank",
    "total_class": "jordan total",
    "row_classes": "jordan rows",
    "rows_to_type": "jordan decode",
    "kernel_class": "jordan kernel",
    "preceq": "jordan preceq",
    "enumerate_rank0": "jordan enum",
    "enumerate_bounded": "jordan bounded",
    "downset": "jordan downset",
    "render_young": "jordan diagram",
    "poincare_coh_positive_rank": "series coh",
    "poincare_coh_torsion": "series torsion",
    "stratum_series": "series stratum",
    "downset_series": "series downset",
    "hpoly_mul": "hopf mul",
    "coproduct": "hopf coproduct",
    "verify_hopf": "hopf verify",
    "kunneth_total_chern": "hopf chern",
    "chern_to_chchar": "hopf ch",
    "twist_class": "hopf twist",
    "k_difference": "hopf kdiff",
    "fundamental_class": "gr fundamental",
    "leading_product": "gr product",
    "hmodule_act": "gr act",
    "strata_sheaf_classes": "gr sheaves",
    "generation_report": "gr generation",
}


# -- argument parsing helpers ---------------------------------------------------


def _class(text: str, arg: str) -> NumClass:
    try:
        return NumClass.parse(text)
    except ValueError as exc:
        raise CliError(arg, str(exc)) from None


def _classes(text: str, arg: str) -> list[NumClass]:
    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise CliError(arg, "expected a ';'-separated list of 'r,d' classes")
    return [_class(p, arg) for p in parts]


def _type(text: str, arg: str) -> JordanType:
    if text.strip() == "()":
        return JordanType(())
    try:
        return JordanType(tuple(_classes(text, arg)))
    except InvalidJordanType as exc:
        raise CliError(arg, str(exc)) from None


def _model(args) -> CurveModel:
    if args.genus is None:
        raise CliError("--genus", "this command needs the genus of the curve")
    if args.genus < 0:
        raise CliError("--genus", "must be >= 0")
    return CurveModel(args.genus)


def _nonneg(value, arg: str) -> int:
    if value is None:
        raise CliError(arg, "required")
    if value < 0:
        raise CliError(arg, "must be >= 0")
    return value


def _poly(text: str, model: CurveModel, arg: str) -> Tensor:
    try:
        return hpoly.parse_hpoly(text, model)
    except ValueError as exc:
        raise CliError(arg, str(exc)) from None


def _degrees(text: str, arg: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError(arg, f"expected comma-separated integers, got {text!r}") from None


# -- rendering ----------------------------------------------------------------


class Result:
    """A computed value with its text and JSON renderings."""

    def __init__(self, value, text: str, bounds: dict | None = None):
        self.value = value
        self.text = text
        self.bounds = bounds or {}


def _class_json(a: NumClass) -> list[int]:
    return [a.rank, a.degree]


def _rows_text(rows) -> str:
    return ";".join(f"{r.rank},{r.degree}" for r in rows)


def _bool(b: bool) -> Result:
    return Result(b, "true" if b else "false")


def _int(n: int) -> Result:
    return Result(n, str(n))


def _numclass(a: NumClass) -> Result:
    return Result(_class_json(a), str(a))


def _types(types, bounds=None) -> Result:
    return Result([str(t) for t in types], "\n".join(str(t) for t in types), bounds)


def _series(s: series.QSeries, bounds=None) -> Result:
    return Result(s.to_json(), str(s), bounds)


def _tensor(t: Tensor) -> Result:
    return Result(t.to_json(), str(t))


def _kunneth(k: chern.KunnethClass) -> dict:
    return {"rank": k.rank, "chern": k.chern.to_json()}


def _stratum_class(x: grcoha.StratumClass) -> Result:
    text = "\n".join(
        [
            f"type: {x.jordan_type}",
            f"rows: {_rows_text(jordan.row_classes(x.jordan_type, x.model))}",
            f"payload: {x.payload}",
            f"bm_top: {x.bm_top}",
            f"note: {x.tag}",
        ]
    )
    return Result(x.to_json(), text)


# -- handlers -------------------------------------------------------------------


def cmd_classes_positive(args):
    return _bool(ktheory.is_positive(_class(args.a, "--a")))


def cmd_classes_leq(args):
    return _bool(ktheory.leq_standard(_class(args.b, "--b"), _class(args.a, "--a")))


def cmd_euler_coh(args):
    return _int(ktheory.euler_coh(_class(args.a, "--a"), _class(args.b, "--b"), _model(args)))


def cmd_euler_higgs(args):
    return _int(ktheory.euler_higgs(_class(args.a, "--a"), _class(args.b, "--b"), _model(args)))


def cmd_slope(args):
    a = _class(args.a, "--a")
    try:
        s = ktheory.slope(a)
    except ktheory.UndefinedSlopeError as exc:
        raise CliError("--a", str(exc)) from None
    if s is ktheory.INFINITY:
        return Result("inf", "inf")
    return Result(fraction_str(s), fraction_str(s))


def cmd_twist(args):
    return _numclass(ktheory.twist(_class(args.a, "--a"), args.n))


def cmd_dims_coh(args):
    return _int(ktheory.dim_coh(_class(args.a, "--a"), _model(args)))


def cmd_dims_higgs(args):
    return _int(ktheory.dim_higgs(_class(args.a, "--a"), _model(args)))


def cmd_dims_ext(args):
    return _int(ktheory.dim_ext_stack(_class(args.a, "--a"), _class(args.b, "--b"), _model(args)))


def cmd_dims_qrank(args):
    return _int(ktheory.rank_q_fibration(args.line_degree, _class(args.a, "--a"), _class(args.b, "--b"), _model(args)))


def cmd_dims_qcorr(args):
    return _int(jordan.dim_q_correspondence(_classes(args.rows, "--rows"), _model(args)))


def cmd_dims_vbrank(args):
    return _int(jordan.vb_stack_rank(_type(args.type, "--type"), _model(args)))


def cmd_jordan_total(args):
    return _numclass(jordan.total_class(_type(args.type, "--type"), _model(args)))


def cmd_jordan_rows(args):
    rows = jordan.row_classes(_type(args.type, "--type"), _model(args))
    return Result([_class_json(r) for r in rows], _rows_text(rows))


def cmd_jordan_decode(args):
    try:
        t = jordan.rows_to_type(_classes(args.rows, "--rows"), _model(args))
    except InvalidRows as exc:
        raise CliError("--rows", str(exc)) from None
    return Result(str(t), str(t))


def cmd_jordan_kernel(args):
    if args.k < 1:
        raise CliError("--k", "must be >= 1")
    return _numclass(jordan.kernel_class(_type(args.type, "--type"), args.k, _model(args)))


def cmd_jordan_preceq(args):
    return _bool(jordan.preceq(_type(args.b, "--b"), _type(args.a, "--a"), _model(args)))


def cmd_jordan_enum(args):
    d = _nonneg(args.rank0, "--rank0")
    return _types(jordan.enumerate_rank0(d), {"exact": True})


def cmd_jordan_bounded(args):
    alpha = _class(args.a, "--a")
    if not ktheory.is_positive(alpha):
        raise CliError("--a", f"class {alpha} is not positive")
    if args.max_len < 1:
        raise CliError("--max-len", "must be >= 1")
    window = _nonneg(args.window, "--window")
    found = jordan.enumerate_bounded(alpha, args.max_len, window, _model(args))
    return _types(found, dict(found.bounds, exact=found.exact))


def cmd_jordan_downset(args):
    window = _nonneg(args.window, "--window")
    found = jordan.downset(_type(args.type, "--type"), window, _model(args))
    return _types(found, dict(found.bounds, exact=found.exact))


def cmd_jordan_diagram(args):
    fmt = "tex" if args.format == "tex" else "text"
    if args.symbolic is not None:
        if args.symbolic < 1:
            raise CliError("--symbolic", "must be >= 1")
        text = jordan.render_young(args.symbolic, fmt=fmt)
    elif args.type is not None:
        text = jordan.render_young(_type(args.type, "--type"), _model(args), fmt)
    else:
        raise CliError("--type", "give a Jordan type or --symbolic LENGTH")
    return Result(text, text)


def cmd_series_coh(args):
    n = _nonneg(args.N, "--N")
    return _series(series.poincare_coh_positive_rank(_model(args), n), {"N": n})


def cmd_series_torsion(args):
    n = _nonneg(args.N, "--N")
    d = _nonneg(args.d, "--d")
    return _series(series.poincare_coh_torsion(_model(args), d, n), {"N": n})


def cmd_series_stratum(args):
    n = _nonneg(args.N, "--N")
    return _series(grcoha.stratum_series(_type(args.type, "--type"), _model(args), n), {"N": n})


def cmd_series_downset(args):
    n = _nonneg(args.N, "--N")
    window = _nonneg(args.window, "--window")
    s, bounds, exact = grcoha.downset_series(_type(args.type, "--type"), window, _model(args), n)
    return _series(s, dict(bounds, N=n, exact=exact))


def cmd_hopf_mul(args):
    model = _model(args)
    return _tensor(hpoly.hpoly_mul(_poly(args.p, model, "--p"), _poly(args.q, model, "--q")))


def cmd_hopf_coproduct(args):
    model = _model(args)
    n = _nonneg(args.N, "--N")
    p = _poly(args.poly, model, "--poly")
    try:
        out = hopf.coproduct(p, _class(args.a1, "--a1"), _class(args.a2, "--a2"), model, n)
    except hopf.DegreeOverflowError as exc:
        raise CliError("--poly", str(exc)) from None
    r = _tensor(out)
    r.bounds = {"N": n}
    return r


def cmd_hopf_verify(args):
    model = _model(args)
    n = _nonneg(args.N, "--N")
    report = hopf.verify(model, n, _degrees(args.degrees, "--degrees"))
    text = f"generators: {report['generators']}\nchecks: {report['checks']}\nok: {'true' if report['ok'] else 'false'}"
    return Result(report, text, {"N": n})


def cmd_hopf_chern(args):
    model = _model(args)
    n = _nonneg(args.N, "--N")
    k = chern.kunneth_total_chern(_classes(args.classes, "--classes"), model, n)
    return Result(_kunneth(k), str(k.chern), {"N": n})


def _universal(args, model, n, arg="--a"):
    a = _class(getattr(args, arg.lstrip("-").replace("-", "_")), arg)
    return chern.kunneth_total_chern([a], model, n)


def cmd_hopf_ch(args):
    model = _model(args)
    n = _nonneg(args.N, "--N")
    ch = chern.chern_to_chchar(_universal(args, model, n), n)
    return Result(ch.to_json(), str(ch), {"N": n})


def cmd_hopf_twist(args):
    model = _model(args)
    n = _nonneg(args.N, "--N")
    k = chern.twist_class(_universal(args, model, n), args.by, n)
    return Result(_kunneth(k), str(k.chern), {"N": n})


def cmd_hopf_kdiff(args):
    model = _model(args)
    n = _nonneg(args.N, "--N")
    a, b = _class(args.a, "--a"), _class(args.b, "--b")
    if args.separate:
        ca = chern.kunneth_total_chern([a, NumClass(0, 0)], model, n)
        cb = chern.kunneth_total_chern([NumClass(0, 0), b], model, n)
    else:
        ca = chern.kunneth_total_chern([a], model, n)
        cb = chern.kunneth_total_chern([b], model, n)
    k = chern.k_difference(ca, cb, n)
    return Result(_kunneth(k), str(k.chern), {"N": n})


def cmd_gr_fundamental(args):
    model = _model(args)
    a = _class(args.a, "--a")
    try:
        gc = grcoha.fundamental_class(a, model)
    except ValueError as exc:
        raise CliError("--a", str(exc)) from None
    return Result({"alpha": _class_json(gc.alpha), "poly": gc.poly.to_json()}, f"{gc.alpha} {gc.poly}")


def _factors(args, model) -> list[grcoha.GenClass]:
    classes = _classes(args.factors, "--factors")
    polys = args.poly or []
    if polys and len(polys) != len(classes):
        raise CliError("--poly", f"give one --poly per factor ({len(classes)}) or none")
    out = []
    for i, a in enumerate(classes):
        try:
            gc = grcoha.fundamental_class(a, model)
        except ValueError as exc:
            raise CliError("--factors", str(exc)) from None
        if polys:
            gc = grcoha.GenClass(a, _poly(polys[i], model, "--poly"))
        out.append(gc)
    return out


def _product(args, model, n) -> grcoha.StratumClass:
    try:
        return grcoha.leading_product(_factors(args, model), model, n)
    except InvalidRows as exc:
        raise CliError("--factors", str(exc)) from None
    except hopf.DegreeOverflowError as exc:
        raise CliError("--poly", str(exc)) from None


def cmd_gr_product(args):
    model = _model(args)
    n = _nonneg(args.N, "--N")
    r = _stratum_class(_product(args, model, n))
    r.bounds = {"N": n}
    return r


def cmd_gr_act(args):
    model = _model(args)
    n = _nonneg(args.N, "--N")
    h = _poly(args.h, model, "--h")
    try:
        x = grcoha.hmodule_act(h, _product(args, model, n), model, n)
    except hopf.DegreeOverflowError as exc:
        raise CliError("--h", str(exc)) from None
    r = _stratum_class(x)
    r.bounds = {"N": n}
    return r


def cmd_gr_sheaves(args):
    model = _model(args)
    n = _nonneg(args.N, "--N")
    t = _type(args.type, "--type")
    classes = grcoha.strata_sheaf_classes(t, model, n)
    lines = []
    data = []
    for i, k in enumerate(classes, start=1):
        cls = k.numerical_class()
        lines.append(f"E_{i} {cls}: {k.chern}")
        data.append(dict(_kunneth(k), numerical_class=_class_json(cls)))
    return Result(data, "\n".join(lines), {"N": n})


def cmd_gr_generation(args):
    model = _model(args)
    n = _nonneg(args.N, "--N")
    d = _nonneg(args.d, "--d")
    report = grcoha.generation_report(d, model, n)
    lines = [
        f"{r['type']}: expected {r['expected']} generated {r['generated']} {'ok' if r['ok'] else 'MISMATCH'}"
        for r in report
    ]
    return Result(report, "\n".join(lines), {"N": n, "exact": True})


# -- parser -------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, *, genus=True, n=False):
    if genus:
        p.add_argument("--genus", type=int, help="genus g of the curve")
    if n:
        p.add_argument("--N", type=int, help="truncation order")
    p.add_argument("--format", choices=("text", "json", "tex"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="higgscoha", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)
    handlers: dict[str, Callable] = {}

    def leaf(parent, name, path, func, **kw):
        p = parent.add_parser(name, **kw)
        p.set_defaults(handler=func, path=path)
        handlers[path] = func
        return p

    def group(name, help_text):
        g = groups.add_parser(name, help=help_text)
        return g.add_subparsers(dest="sub", required=True)

    g = group("classes", "positivity and the standard order")
    p = leaf(g, "positive", "classes positive", cmd_classes_positive)
    p.add_argument("--a", required=True)
    _common(p, genus=False)
    p = leaf(g, "leq", "classes leq", cmd_classes_leq, help="is --b <= --a")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _common(p, genus=False)

    g = group("euler", "Euler forms")
    for name, func in (("coh", cmd_euler_coh), ("higgs", cmd_euler_higgs)):
        p = leaf(g, name, f"euler {name}", func)
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
        _common(p)

    p = leaf(groups, "slope", "slope", cmd_slope)
    p.add_argument("--a", required=True)
    _common(p, genus=False)
    p = leaf(groups, "twist", "twist", cmd_twist)
    p.add_argument("--a", required=True)
    p.add_argument("--n", type=int, required=True)
    _common(p, genus=False)

    g = group("dims", "stack dimensions")
    for name, func in (("coh", cmd_dims_coh), ("higgs", cmd_dims_higgs)):
        p = leaf(g, name, f"dims {name}", func)
        p.add_argument("--a", required=True)
        _common(p)
    p = leaf(g, "ext", "dims ext", cmd_dims_ext)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _common(p)
    p = leaf(g, "qrank", "dims qrank", cmd_dims_qrank)
    p.add_argument("--line-degree", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _common(p)
    p = leaf(g, "qcorr", "dims qcorr", cmd_dims_qcorr)
    p.add_argument("--rows", required=True)
    _common(p)
    p = leaf(g, "vbrank", "dims vbrank", cmd_dims_vbrank)
    p.add_argument("--type", required=True)
    _common(p)

    g = group("jordan", "Jordan types")
    for name, func in (("total", cmd_jordan_total), ("rows", cmd_jordan_rows)):
        p = leaf(g, name, f"jordan {name}", func)
        p.add_argument("--type", required=True)
        _common(p)
    p = leaf(g, "decode", "jordan decode", cmd_jordan_decode)
    p.add_argument("--rows", required=True)
    _common(p)
    p = leaf(g, "kernel", "jordan kernel", cmd_jordan_kernel)
    p.add_argument("--type", required=True)
    p.add_argument("--k", type=int, required=True)
    _common(p)
    p = leaf(g, "preceq", "jordan preceq", cmd_jordan_preceq, help="is --b below --a")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _common(p)
    p = leaf(g, "enum", "jordan enum", cmd_jordan_enum)
    p.add_argument("--rank0", type=int, required=True)
    _common(p, genus=False)
    p = leaf(g, "bounded", "jordan bounded", cmd_jordan_bounded)
    p.add_argument("--a", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--window", type=int, required=True)
    _common(p)
    p = leaf(g, "downset", "jordan downset", cmd_jordan_downset)
    p.add_argument("--type", required=True)
    p.add_argument("--window", type=int, default=0)
    _common(p)
    p = leaf(g, "diagram", "jordan diagram", cmd_jordan_diagram)
    p.add_argument("--type")
    p.add_argument("--symbolic", type=int)
    _common(p)

    g = group("series", "Poincare series")
    p = leaf(g, "coh", "series coh", cmd_series_coh)
    _common(p, n=True)
    p = leaf(g, "torsion", "series torsion", cmd_series_torsion)
    p.add_argument("--d", type=int, required=True)
    _common(p, n=True)
    p = leaf(g, "stratum", "series stratum", cmd_series_stratum)
    p.add_argument("--type", required=True)
    _common(p, n=True)
    p = leaf(g, "downset", "series downset", cmd_series_downset)
    p.add_argument("--type", required=True)
    p.add_argument("--window", type=int, default=0)
    _common(p, n=True)

    g = group("hopf", "tautological algebra and coproduct")
    p = leaf(g, "mul", "hopf mul", cmd_hopf_mul)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    _common(p)
    p = leaf(g, "coproduct", "hopf coproduct", cmd_hopf_coproduct)
    p.add_argument("--poly", required=True)
    p.add_argument("--a1", required=True)
    p.add_argument("--a2", required=True)
    _common(p, n=True)
    p = leaf(g, "verify", "hopf verify", cmd_hopf_verify)
    p.add_argument("--degrees", default="-1,0,1")
    _common(p, n=True)
    p = leaf(g, "chern", "hopf chern", cmd_hopf_chern)
    p.add_argument("--classes", required=True)
    _common(p, n=True)
    p = leaf(g, "ch", "hopf ch", cmd_hopf_ch)
    p.add_argument("--a", required=True)
    _common(p, n=True)
    p = leaf(g, "twist", "hopf twist", cmd_hopf_twist)
    p.add_argument("--a", required=True)
    p.add_argument("--by", type=int, required=True)
    _common(p, n=True)
    p = leaf(g, "kdiff", "hopf kdiff", cmd_hopf_kdiff)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--separate", action="store_true", help="independent generators for --a and --b")
    _common(p, n=True)

    g = group("gr", "associated-graded products")
    p = leaf(g, "fundamental", "gr fundamental", cmd_gr_fundamental)
    p.add_argument("--a", required=True)
    _common(p)
    for name, func in (("product", cmd_gr_product), ("act", cmd_gr_act)):
        p = leaf(g, name, f"gr {name}", func)
        p.add_argument("--factors", required=True, help="row classes, top row first")
        p.add_argument("--poly", action="append", help="one polynomial per factor, same order")
        if name == "act":
            p.add_argument("--h", required=True)
        _common(p, n=True)
    p = leaf(g, "sheaves", "gr sheaves", cmd_gr_sheaves)
    p.add_argument("--type", required=True)
    _common(p, n=True)
    p = leaf(g, "generation", "gr generation", cmd_gr_generation)
    p.add_argument("--d", type=int, required=True)
    _common(p, n=True)

    parser.set_defaults(handlers=handlers)
    return parser


def _inputs(args) -> dict:
    skip = {"handler", "handlers", "path", "group", "sub", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _jsonable(value):
    if isinstance(value, Fraction):
        return fraction_str(value)
    raise TypeError(f"not serializable: {type(value).__name__}")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if args.format == "json":
        payload = {"op": args.path, "inputs": _inputs(args), "result": result.value, "bounds": result.bounds}
        print(json.dumps(payload, sort_keys=True, default=_jsonable), file=stdout)
    else:
        print(result.text, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())
