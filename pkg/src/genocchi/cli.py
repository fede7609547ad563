"""Command-line front end.

Subcommands::

    divdiff   --f EXPR --nodes x0,x1,... [--hg]
    interp    --f EXPR --nodes x0,x1,... --at X [--M M] [--hg]
    quad      {simpson,composite,romberg} --f EXPR --a A --b B [--m M | --levels L] [--M4 M4]
    hg-volume --n N
    replay    --f EXPR --a A --b B [--N N]

Default output is a human-readable table.  ``--json`` switches to the
machine record: one ``key = value`` pair per line, floats with 17
significant digits, the first two lines naming the record and the tool
version.  Exit status: 0 ok, 1 a replay check failed, 2 usage or parse
error, 3 numerical failure.  ``GENOCCHI_TOL`` overrides the default
quadrature tolerance.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import __version__
from .errors import ExprSyntaxError, GenocchiError
from .expression import parse, to_oracle, to_text
from .hermite import hg_divided_difference
from .interpolation import lagrange_certificate, newton_eval, newton_fit, remainder
from .quadrature import composite_simpson, romberg, simpson
from .replay import replay
from .simplex import QuadratureConfig, integrate_simplex
from .tables import NodeList, build_table, top_difference

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    expr: Optional[str] = None
    a: Optional[float] = None
    b: Optional[float] = None
    nodes: Optional[tuple[float, ...]] = None
    at: Optional[float] = None
    method: Optional[str] = None
    m: Optional[int] = None
    levels: Optional[int] = None
    n: Optional[int] = None
    tol: Optional[float] = None
    M: Optional[float] = None
    hg: bool = False
    machine: bool = False

    def validate(self):
        sub = self.subcommand
        if sub in ("divdiff", "interp", "quad", "replay") and not self.expr:
            raise UsageError(f"{sub} needs --f")
        if sub in ("divdiff", "interp") and not self.nodes:
            raise UsageError(f"{sub} needs --nodes")
        if sub == "interp" and self.at is None:
            raise UsageError("interp needs --at")
        if sub in ("quad", "replay"):
            if self.a is None or self.b is None:
                raise UsageError(f"{sub} needs --a and --b")
            if sub == "replay" and not self.a < self.b:
                raise UsageError("replay needs a < b")
            if sub == "quad" and not self.a <= self.b:
                raise UsageError("quad needs a <= b")
        if sub == "quad":
            if self.method == "composite" and (self.m is None or self.m < 1):
                raise UsageError("composite needs --m >= 1")
            if self.method == "romberg" and (self.levels is None or self.levels < 1):
                raise UsageError("romberg needs --levels >= 1")
        if sub == "hg-volume" and (self.n is None or self.n < 0):
            raise UsageError("hg-volume needs --n >= 0")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.M is not None and not self.M >= 0:
            raise UsageError("derivative bound must be nonnegative")
        return self

    def quadrature(self) -> QuadratureConfig:
        if self.tol is not None:
            return QuadratureConfig(tol=self.tol)
        return QuadratureConfig.from_env()


def _float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return v


def _nodes(text: str) -> tuple[float, ...]:
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise argparse.ArgumentTypeError(f"bad node list: {text!r}")
    return tuple(_float(p) for p in parts)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="genocchi",
        description="Divided differences, certified interpolation and Simpson quadrature.",
        epilog="EXPR uses x as the variable, + - * / ^, parentheses, pi and "
               "sin cos exp log sqrt; e.g. \"1/(1+x^2)\" or \"sin(x)*exp(-x)\".",
    )
    p.add_argument("--version", action="version", version=f"genocchi {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", dest="machine", action="store_true",
                        help="machine-readable key = value record")
    common.add_argument("--tol", type=_float, help="quadrature tolerance (default 1e-9)")
    sub = p.add_subparsers(dest="subcommand", required=True)

    d = sub.add_parser("divdiff", parents=[common], help="divided-difference table")
    d.add_argument("--f", dest="expr", required=True)
    d.add_argument("--nodes", type=_nodes, required=True)
    d.add_argument("--hg", action="store_true", help="evaluate via the simplex integral")

    i = sub.add_parser("interp", parents=[common], help="Newton interpolation with certificate")
    i.add_argument("--f", dest="expr", required=True)
    i.add_argument("--nodes", type=_nodes, required=True)
    i.add_argument("--at", type=_float, required=True)
    i.add_argument("--M", type=_float, help="bound on |f^(n)|, n = number of nodes")
    i.add_argument("--hg", action="store_true", help="also evaluate the remainder integral")

    q = sub.add_parser("quad", parents=[common], help="Simpson, composite Simpson, Romberg")
    q.add_argument("method", choices=("simpson", "composite", "romberg"))
    q.add_argument("--f", dest="expr", required=True)
    q.add_argument("--a", type=_float, required=True)
    q.add_argument("--b", type=_float, required=True)
    q.add_argument("--m", type=int, help="panel count (composite)")
    q.add_argument("--levels", type=int, help="table rows (romberg)")
    q.add_argument("--M4", dest="M", type=_float, help="bound on |f''''| over [a, b]")

    v = sub.add_parser("hg-volume", parents=[common], help="volume of the standard simplex")
    v.add_argument("--n", type=int, required=True)

    r = sub.add_parser("replay", parents=[common], help="replay the Simpson error proof")
    r.add_argument("--f", dest="expr", required=True)
    r.add_argument("--a", type=_float, required=True)
    r.add_argument("--b", type=_float, required=True)
    r.add_argument("--N", dest="M", type=_float, help="bound on |F''''| over [-1, 1]")
    return p


def _glue_values(argv):
    # "--nodes -1,1" would otherwise read "-1,1" as an option
    out = []
    it = iter(argv)
    for arg in it:
        if arg in ("--nodes", "--a", "--b", "--at"):
            value = next(it, None)
            out.append(arg if value is None else f"{arg}={value}")
        else:
            out.append(arg)
    return out


def parse_args(argv: Sequence[str]) -> RunConfig:
    ns = _parser().parse_args(_glue_values(argv))
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**fields).validate()


# ------------------------------------------------------------------ output

def _fmt(v, machine):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g") if machine else format(v, ".10g")
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x, machine) for x in v) if machine else \
            "[" + ", ".join(_fmt(x, machine) for x in v) + "]"
    return str(v)


class Record:
    """Ordered key/value output shared by both modes."""

    def __init__(self, name, cfg: RunConfig):
        self.name = name
        self.items: list[tuple[str, object]] = []
        self.lines: list[str] = []
        self.machine = cfg.machine

    def put(self, key, value):
        self.items.append((key, value))

    def text(self, line=""):
        self.lines.append(line)

    def render(self) -> str:
        if self.machine:
            out = [f"record = genocchi.{self.name}", f"version = {__version__}"]
            out += [f"{k} = {_fmt(v, True)}" for k, v in self.items]
        else:
            out = list(self.lines)
            width = max((len(k) for k, _ in self.items), default=0)
            out += [f"{k.ljust(width)}  {_fmt(v, False)}" for k, v in self.items]
        return "\n".join(out) + "\n"


def _echo_expr(rec, cfg, e):
    rec.put("input.f", cfg.expr)
    rec.put("input.f_canonical", to_text(e))


def _certificate(rec, prefix, cert):
    if cert is None:
        rec.put(f"{prefix}.available", False)
        return
    rec.put(f"{prefix}.bound", cert.bound)
    rec.put(f"{prefix}.constant", cert.constant_name)
    rec.put(f"{prefix}.M", cert.M)
    rec.put(f"{prefix}.rigor", cert.rigor.value)


# --------------------------------------------------------------- commands

def _divdiff(cfg):
    e = parse(cfg.expr)
    nodes = NodeList(cfg.nodes)
    rec = Record("divdiff", cfg)
    _echo_expr(rec, cfg, e)
    rec.put("input.nodes", list(nodes.nodes))
    if cfg.hg:
        oracle = to_oracle(e, nodes.order)
        qcfg = cfg.quadrature()
        rec.put("input.tol", qcfg.tol)
        rec.text(f"Hermite-Genocchi divided difference of {to_text(e)}")
        rec.put("order", nodes.order)
        rec.put("value", hg_divided_difference(oracle, nodes, qcfg))
        return rec, EXIT_OK
    oracle = to_oracle(e, nodes.max_multiplicity() - 1)
    table = build_table(oracle, nodes)
    rec.text(f"divided differences of {to_text(e)} over sorted nodes "
             f"{_fmt(list(table.nodes.nodes), False)}")
    for k, row in enumerate(table.entries):
        rec.put(f"table.{k}", list(row))
    rec.put("order", table.order)
    rec.put("value", top_difference(table))
    return rec, EXIT_OK


def _interp(cfg):
    e = parse(cfg.expr)
    nodes = NodeList(cfg.nodes)
    n = len(nodes)
    oracle = to_oracle(e, n)
    p = newton_fit(oracle, nodes)
    x = cfg.at
    px = newton_eval(p, x)
    fx = oracle.value(x)
    rec = Record("interp", cfg)
    _echo_expr(rec, cfg, e)
    rec.put("input.nodes", list(nodes.nodes))
    rec.put("input.at", x)
    if cfg.M is not None:
        rec.put("input.M", cfg.M)
    rec.text(f"Newton interpolant of {to_text(e)} on {n} nodes")
    rec.put("newton.nodes", list(p.nodes.nodes))
    rec.put("newton.coeffs", list(p.coeffs))
    rec.put("P(x)", px)
    rec.put("f(x)", fx)
    rec.put("f(x)-P(x)", fx - px)
    if cfg.hg:
        rec.put("remainder_hg", remainder(oracle, nodes, x, cfg.quadrature()))
    _certificate(rec, "certificate", lagrange_certificate(oracle, nodes, x, cfg.M))
    return rec, EXIT_OK


def _quad(cfg):
    e = parse(cfg.expr)
    oracle = to_oracle(e, 4)
    a, b = cfg.a, cfg.b
    rec = Record(f"quad.{cfg.method}", cfg)
    _echo_expr(rec, cfg, e)
    rec.put("input.a", a)
    rec.put("input.b", b)
    if cfg.M is not None:
        rec.put("input.M4", cfg.M)
    if cfg.method == "romberg":
        rec.put("input.levels", cfg.levels)
        table = romberg(oracle, a, b, cfg.levels)
        rec.text(f"Romberg table for {to_text(e)} on [{_fmt(a, False)}, {_fmt(b, False)}]")
        for k, row in enumerate(table.entries):
            rec.put(f"T.{k}", list(row))
        rec.put("value", table.best)
        if cfg.levels >= 2:
            # column 1 of the last row is composite Simpson on 2^(L-2) panels
            panels = 2 ** (cfg.levels - 2)
            cs = composite_simpson(oracle, a, b, panels, cfg.M)
            rec.put("simpson_column.value", table[cfg.levels - 1][1])
            rec.put("simpson_column.panels", panels)
            _certificate(rec, "simpson_column.certificate", cs.certificate)
        return rec, EXIT_OK
    if cfg.method == "simpson":
        res = simpson(oracle, a, b, cfg.M)
    else:
        rec.put("input.m", cfg.m)
        res = composite_simpson(oracle, a, b, cfg.m, cfg.M)
    rec.text(f"{cfg.method} rule for {to_text(e)} on [{_fmt(a, False)}, {_fmt(b, False)}]")
    rec.put("value", res.value)
    rec.put("panels", res.panels)
    _certificate(rec, "certificate", res.certificate)
    return rec, EXIT_OK


def _hg_volume(cfg):
    qcfg = cfg.quadrature()
    rec = Record("hg-volume", cfg)
    rec.put("input.n", cfg.n)
    rec.put("input.tol", qcfg.tol)
    rec.text(f"volume of the standard simplex Sigma_{cfg.n}")
    value = integrate_simplex(lambda t: 1.0, qcfg, order=cfg.n)
    exact = 1.0 / math.factorial(cfg.n)
    rec.put("value", value)
    rec.put("exact", exact)
    rec.put("abs_error", abs(value - exact))
    return rec, EXIT_OK


def _replay(cfg):
    e = parse(cfg.expr)
    oracle = to_oracle(e, 4)
    qcfg = cfg.quadrature()
    report = replay(oracle, cfg.a, cfg.b, qcfg, cfg.M)
    rec = Record("replay", cfg)
    _echo_expr(rec, cfg, e)
    rec.put("input.a", cfg.a)
    rec.put("input.b", cfg.b)
    rec.put("input.tol", qcfg.tol)
    rec.text(f"proof replay for {to_text(e)} on [{_fmt(cfg.a, False)}, {_fmt(cfg.b, False)}]")
    rec.text()
    if not cfg.machine:
        width = max(len(c.name) for c in report.checks)
        rec.text(f"{'check'.ljust(width)}  {'lhs':>24}  {'rhs':>24}  {'tol':>8}  pass")
        for c in report.checks:
            rec.text(f"{c.name.ljust(width)}  {c.lhs:>24.16g}  {c.rhs:>24.16g}  "
                     f"{c.tolerance:>8.0e}  {'yes' if c.passed else 'NO'}")
        rec.text()
    rec.put("N", report.N)
    rec.put("N.rigor", report.N_rigor.value)
    rec.put("G(1)", report.G1)
    for key, value in report.diagnostics.items():
        rec.put(f"diagnostic.{key}", value)
    if cfg.machine:
        for j, c in enumerate(report.checks):
            rec.put(f"check.{j}.name", c.name)
            rec.put(f"check.{j}.relation", c.relation)
            rec.put(f"check.{j}.lhs", c.lhs)
            rec.put(f"check.{j}.rhs", c.rhs)
            rec.put(f"check.{j}.tolerance", c.tolerance)
            rec.put(f"check.{j}.pass", c.passed)
    rec.put("overall", report.overall)
    return rec, EXIT_OK if report.overall else EXIT_CHECK_FAILED


_COMMANDS = {"divdiff": _divdiff, "interp": _interp, "quad": _quad,
             "hg-volume": _hg_volume, "replay": _replay}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, ValueError) as exc:
        print(f"genocchi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        rec, status = _COMMANDS[cfg.subcommand](cfg)
    except ExprSyntaxError as exc:
        print(f"genocchi: syntax error in --f: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenocchiError as exc:
        print(f"genocchi: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except RecursionError:
        print("genocchi: numerical failure: recursion limit reached", file=sys.stderr)
        return EXIT_NUMERICAL
    sys.stdout.write(rec.render())
    return status


if __name__ == "__main__":
    sys.exit(main())
